import json

import pytest

from qblowup.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_cache_and_determinism(tmp_path, capsys):
    cache, r1, r2 = str(tmp_path / "c"), tmp_path / "r1.json", tmp_path / "r2.json"
    base = ["verify", "--family", "a1", "--order", "2", "--seeds", "2", "--jobs", "1", "--cache-dir", cache]
    code, out, _ = run(capsys, *base, "--report", str(r1))
    assert code == EXIT_OK
    assert "verify: 166/166 PASS  (cache hits 0, misses 166)" in out
    code, out, _ = run(capsys, *base, "--report", str(r2))
    assert code == EXIT_OK
    assert "(cache hits 166, misses 0)" in out
    assert r1.read_bytes() == r2.read_bytes()
    rep = json.loads(r1.read_text())
    assert rep["command"] == "verify" and rep["summary"]["status"] == "PASS"
    assert "meta" not in rep
    # a higher order changes every key: misses only on the new ones
    code, out, _ = run(capsys, "verify", "--family", "a1", "--order", "2", "--seeds", "3", "--jobs", "1",
                       "--cache-dir", cache)
    assert "(cache hits 166, misses 83)" in out


def test_verify_parallel_matches_serial(tmp_path, capsys):
    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--family", "a3-higgsed", "--seeds", "2", "--no-cache"]
    assert main(args + ["--jobs", "1", "--report", str(r1)]) == EXIT_OK
    assert main(args + ["--jobs", "2", "--report", str(r2)]) == EXIT_OK
    capsys.readouterr()
    assert r1.read_bytes() == r2.read_bytes()


def test_timestamp_lives_in_meta(tmp_path, capsys):
    r = tmp_path / "r.json"
    assert main(["verify", "--record", "A1#0", "--family", "a1", "--seeds", "1", "--no-cache", "--timestamp",
                 "--report", str(r)]) == EXIT_OK
    capsys.readouterr()
    assert "timestamp" in json.loads(r.read_text())["meta"]


@pytest.mark.parametrize("argv", [["verify", "--family", "b7"], ["verify", "--family", "a1", "--record", "A1#999"],
                                  ["verify", "--family", "a1", "--order", "2,2"], ["verify", "--order", "x"],
                                  ["verify", "--seeds", "0"], ["tau", "--n-range", "1,2"],
                                  ["tau", "--n-range", "0,0", "--order", "3", "--seeds", "1", "--no-cache"]])
def test_config_errors_exit_2(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_CONFIG
    assert err.startswith("error:")


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--algebra", "d5", "--seeds", "1")
    assert code == EXIT_OK
    code, out, _ = run(capsys, "orbits", "--algebra", "a2", "--json")
    assert code == EXIT_OK
    rep = json.loads(out[out.index("{"):])
    assert rep["results"]["total"] == 580
    assert rep["results"]["sizes"] == [4, 8, 12, 20, 48, 48, 80, 120, 120, 120]


def test_tau_and_convention(tmp_path, capsys):
    cache = str(tmp_path / "c")
    code, out, _ = run(capsys, "tau", "--seeds", "1", "--cache-dir", cache)
    assert code == EXIT_OK
    code, out, _ = run(capsys, "tau", "--check", "convention", "--seeds", "1", "--no-cache")
    assert code == EXIT_OK and "minus" in out
    code, _, _ = run(capsys, "tau", "--convention", "plus", "--relations", "B2", "--order", "2", "--seeds", "1",
                     "--no-cache")
    assert code == EXIT_FAIL


def test_expand_dump(tmp_path, capsys):
    code, out, _ = run(capsys, "expand", "f4", "--order", "1")
    assert code == EXIT_OK
    assert len([l for l in out.splitlines() if l and not l.startswith("#")]) == 2


def test_higgs_and_hypergeom(capsys):
    assert main(["higgs-check", "--seeds", "1", "--order", "1"]) == EXIT_OK
    assert main(["hypergeom-check", "--seeds", "1", "--order-y", "2"]) == EXIT_OK
    capsys.readouterr()


def test_cache_stats(tmp_path, capsys):
    code, out, _ = run(capsys, "cache-stats", "--cache-dir", str(tmp_path))
    assert code == EXIT_OK and "entries: 0" in out


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
