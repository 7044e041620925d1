"""The f-factor expression language used by the relation catalogs.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | factor
    factor  := atom ('^' power)?
    power   := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
    atom    := INT | 't' | 'y' | 'x' | 'q1' | 'q2' | 'gamma' | SYM
             | 'Q[' lin ']' | 'Qh[' lin ']' | 'Qq[' lin ']'
             | 'C[' rational (',' rational)* ']' | '(' expr ')'
    lin     := lterm (('+' | '-') lterm)*
    lterm   := item ('*' item)*        # at most one theta name per term
    item    := INT | SYM | THETA

``Q[lin]``, ``Qh[lin]`` and ``Qq[lin]`` are q1^{lin}, q1^{lin/2} and
q1^{lin/4}.  ``SYM`` is one of the record symbols ``h``, ``j1``, ``j4``
(bound at evaluation time); ``THETA`` is any theta/sigma unit name.
``C[...]`` is the coefficient-sum shorthand, resolved by the caller.
Rational literals are written as quotients, ``1/2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

from .exact import FractionalExponentError, Monomial, ParamPoint, QSeries, THETA_NAMES, rat

SYMBOLS = ("h", "j1", "j4")
VARIABLES = ("t", "y", "x")


class FExprSyntaxError(ValueError):
    def __init__(self, msg, text="", pos=0):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


# ---------------------------------------------------------------------------
# tree


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Base:
    name: str  # q1, q2, gamma


@dataclass(frozen=True)
class LinTerm:
    coef: int
    syms: Tuple[str, ...]
    theta: Optional[str]


@dataclass(frozen=True)
class Unit:
    kind: str  # Q, Qh, Qq
    lin: Tuple[LinTerm, ...]


@dataclass(frozen=True)
class CAtom:
    parities: Tuple[Fraction, ...]


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: Fraction


# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()\[\],]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FExprSyntaxError("unexpected character", text, pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise FExprSyntaxError(f"expected {value!r}, found {tok[1]!r}", self.text, tok[2])
        self.i += 1
        return tok

    def error(self, msg):
        raise FExprSyntaxError(msg, self.text, self.peek()[2])

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"trailing input {self.peek()[1]!r}")
        return e

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return Neg(self.unary())
        return self.factor()

    def factor(self):
        node = self.atom()
        if self.peek()[1] == "^":
            self.take()
            node = Pow(node, self.power())
        return node

    def _signed_int(self):
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, val, pos = self.take()
        if kind != "int":
            raise FExprSyntaxError("expected an integer", self.text, pos)
        return sign * int(val)

    def power(self):
        if self.peek()[1] == "(":
            self.take()
            num = self._signed_int()
            den = 1
            if self.peek()[1] == "/":
                self.take()
                den = self._signed_int()
            self.take(")")
            return Fraction(num, den)
        return Fraction(self._signed_int())

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return Num(Fraction(int(val)))
        if val == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if kind == "name":
            self.take()
            if val in VARIABLES:
                return Var(val)
            if val in ("q1", "q2", "gamma"):
                return Base(val)
            if val in SYMBOLS:
                return Sym(val)
            if val in ("Q", "Qh", "Qq"):
                self.take("[")
                lin = self.lin()
                self.take("]")
                return Unit(val, lin)
            if val == "C":
                self.take("[")
                ps = [self.rational()]
                while self.peek()[1] == ",":
                    self.take()
                    ps.append(self.rational())
                self.take("]")
                return CAtom(tuple(ps))
            raise FExprSyntaxError(f"unknown symbol {val!r}", self.text, pos)
        raise FExprSyntaxError(f"unexpected token {val!r}", self.text, pos)

    def rational(self):
        num = self._signed_int()
        den = 1
        if self.peek()[1] == "/":
            self.take()
            den = self._signed_int()
        return Fraction(num, den)

    def lin(self):
        terms = []
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        terms.append(self.lterm(sign))
        while self.peek()[1] in ("+", "-"):
            sign = 1 if self.take()[1] == "+" else -1
            terms.append(self.lterm(sign))
        return tuple(terms)

    def lterm(self, sign):
        coef = sign
        syms = []
        theta = None
        while True:
            kind, val, pos = self.take()
            if kind == "int":
                coef *= int(val)
            elif kind == "name" and val in SYMBOLS:
                syms.append(val)
            elif kind == "name" and val in THETA_NAMES:
                if theta is not None:
                    raise FExprSyntaxError("two theta names in one term", self.text, pos)
                theta = val
            else:
                raise FExprSyntaxError(f"bad linear-form item {val!r}", self.text, pos)
            if self.peek()[1] != "*":
                break
            self.take()
        return LinTerm(coef, tuple(sorted(syms)), theta)


def parse_fexpr(text: str):
    """Parse an f-expression into its tree."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printer


def _fmt_frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _fmt_lin(lin) -> str:
    out = []
    for i, t in enumerate(lin):
        items = []
        c = abs(t.coef)
        if c != 1 or (not t.syms and t.theta is None):
            items.append(str(c))
        items += list(t.syms)
        if t.theta:
            items.append(t.theta)
        s = "*".join(items)
        if t.coef < 0:
            out.append(("-" if i == 0 else " - ") + s)
        else:
            out.append(("" if i == 0 else " + ") + s)
    return "".join(out)


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def format_fexpr(node, parent: int = 0) -> str:
    """Canonical text; ``parse_fexpr(format_fexpr(t)) == t``."""
    if isinstance(node, Num):
        v = node.value
        if v.denominator != 1:
            return f"({v.numerator}/{v.denominator})" if parent > 0 else f"{v.numerator}/{v.denominator}"
        return str(v.numerator)
    if isinstance(node, (Var, Sym, Base)):
        return node.name
    if isinstance(node, Unit):
        return f"{node.kind}[{_fmt_lin(node.lin)}]"
    if isinstance(node, CAtom):
        return "C[" + ",".join(_fmt_frac(p) for p in node.parities) + "]"
    if isinstance(node, Neg):
        s = "-" + format_fexpr(node.arg, 3)
        return f"({s})" if parent > 1 else s
    if isinstance(node, Pow):
        e = node.exp
        es = str(e.numerator) if e.denominator == 1 else f"({e.numerator}/{e.denominator})"
        return format_fexpr(node.base, 4) + "^" + es
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = format_fexpr(node.left, p)
        right = format_fexpr(node.right, p + 1)
        s = f"{left} {node.op} {right}"
        return f"({s})" if p < parent else s
    raise TypeError(f"not an f-expression node: {node!r}")


# ---------------------------------------------------------------------------
# evaluation


class Laurent:
    """Monomial shift times a truncated power series.

    ``shift`` is the exponent vector (quarters, may be negative) and
    ``series`` a QSeries whose truncation is relative to the shift; the
    absolute truncation is ``shift + series.trunc``.
    """

    __slots__ = ("shift", "series")

    def __init__(self, shift, series: QSeries):
        self.shift = tuple(shift)
        self.series = series

    @classmethod
    def scalar(cls, vars, trunc, value):
        return cls((0,) * len(vars), QSeries.const(vars, trunc, value))

    @classmethod
    def monomial(cls, vars, trunc, exps, value=1):
        exps = tuple(exps)
        rel = tuple(T - e for T, e in zip(trunc, exps))
        return cls(exps, QSeries.const(vars, rel, value))

    def abs_trunc(self):
        return tuple(s + t for s, t in zip(self.shift, self.series.trunc))

    def _rebase(self, shift):
        d = tuple(a - b for a, b in zip(self.shift, shift))
        if any(x < 0 for x in d):
            raise ValueError("cannot rebase to a larger shift")
        tr = tuple(t + x for t, x in zip(self.series.trunc, d))
        s = QSeries(self.series.vars, tr, {tuple(k[i] + d[i] for i in range(len(d))): v
                                            for k, v in self.series.coeffs.items()})
        return s

    def __add__(self, other: "Laurent") -> "Laurent":
        sh = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        return Laurent(sh, self._rebase(sh) + other._rebase(sh))

    def __neg__(self):
        return Laurent(self.shift, -self.series)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        # relative truncations combine by min, exactly as for power series
        sh = tuple(a + b for a, b in zip(self.shift, other.shift))
        return Laurent(sh, self.series * other.series)

    def normalize(self) -> "Laurent":
        c = self.series.coeffs
        if not c:
            return self
        n = len(self.shift)
        m = tuple(min(k[i] for k in c) for i in range(n))
        if any(m):
            sh = tuple(a + b for a, b in zip(self.shift, m))
            tr = tuple(t - x for t, x in zip(self.series.trunc, m))
            s = QSeries(self.series.vars, tr, {tuple(k[i] - m[i] for i in range(n)): v for k, v in c.items()})
            return Laurent(sh, s)
        return self

    def invert(self) -> "Laurent":
        z = self.normalize()
        if z.series.constant_term() == 0:
            raise ZeroDivisionError("f-expression divides by a series without a unique leading term")
        sh = tuple(-a for a in z.shift)
        # absolute truncation is kept: relative trunc of the inverse
        return Laurent(sh, z.series.invert())

    def pow(self, k: int) -> "Laurent":
        if k < 0:
            return self.invert().pow(-k)
        out = Laurent((0,) * len(self.shift), self.series.one_like())
        for _ in range(k):
            out = out * self
        return out

    def to_series(self, vars, trunc) -> QSeries:
        coeffs = {}
        for k, v in self.series.coeffs.items():
            e = tuple(a + b for a, b in zip(k, self.shift))
            if any(x >= T for x, T in zip(e, trunc)):
                continue
            if any(x < 0 for x in e):
                raise ValueError(f"f-expression has a negative exponent {e} in this grading")
            coeffs[e] = v
        return QSeries(vars, trunc, coeffs)


class EvalEnv:
    """Everything needed to evaluate an f-expression.

    ``grading`` maps each of t, y, x to its exponent vector (quarters) in the
    expansion variables ``vars``; ``symbols`` binds h, j1, j4; ``resolve_c``
    maps a parity tuple to ``(scalar, exponent-vector)``.
    """

    def __init__(self, point: ParamPoint, vars: Sequence[str], trunc: Sequence[int],
                 grading: Dict[str, Sequence[int]], symbols: Optional[Dict[str, int]] = None,
                 resolve_c: Optional[Callable] = None, margin: int = 8):
        self.point = point
        self.vars = tuple(vars)
        self.trunc = tuple(trunc)
        self.work = tuple(t + margin for t in self.trunc)
        self.grading = {k: tuple(v) for k, v in grading.items()}
        self.symbols = dict(symbols or {})
        self.resolve_c = resolve_c


def lin_monomial(kind: str, lin, symbols) -> Monomial:
    """q1^{lin}, q1^{lin/2} or q1^{lin/4} as a Monomial in fourth-root units."""
    scale = {"Q": 4, "Qh": 2, "Qq": 1}[kind]
    items = []
    for t in lin:
        c = t.coef
        for s in t.syms:
            try:
                c *= symbols[s]
            except KeyError:
                raise KeyError(f"symbol {s!r} is not bound") from None
        items.append((t.theta or "q1", c * scale))
    return Monomial(items)


def _mono_of(node, env) -> Optional[Monomial]:
    if isinstance(node, Base):
        if node.name == "gamma":
            return Monomial((("q1", -2), ("q2", -2)))
        return Monomial.unit(node.name, 4)
    if isinstance(node, Unit):
        return lin_monomial(node.kind, node.lin, env.symbols)
    return None


def evaluate(node, env: EvalEnv) -> QSeries:
    """Evaluate to a QSeries in ``env.vars`` truncated at ``env.trunc``."""
    return _ev(node, env).to_series(env.vars, env.trunc)


def _ev(node, env: EvalEnv) -> Laurent:
    V, W = env.vars, env.work
    if isinstance(node, Num):
        return Laurent.scalar(V, W, rat(node.value))
    if isinstance(node, Sym):
        return Laurent.scalar(V, W, env.symbols[node.name])
    if isinstance(node, Var):
        return Laurent.monomial(V, W, env.grading[node.name])
    m = _mono_of(node, env)
    if m is not None:
        return Laurent.scalar(V, W, env.point.eval(m))
    if isinstance(node, CAtom):
        if env.resolve_c is None:
            raise ValueError("C[...] atom without a coefficient resolver")
        val, exps = env.resolve_c(node.parities)
        return Laurent.monomial(V, W, exps, val)
    if isinstance(node, Neg):
        return -_ev(node.arg, env)
    if isinstance(node, Pow):
        e = node.exp
        if isinstance(node.base, Var):
            g = env.grading[node.base.name]
            exps = []
            for x in g:
                v = x * e
                if v.denominator != 1:
                    raise FractionalExponentError(f"{node.base.name}^{e} leaves the quarter lattice")
                exps.append(int(v))
            return Laurent.monomial(V, W, exps)
        m = _mono_of(node.base, env)
        if m is not None:
            return Laurent.scalar(V, W, env.point.eval(m ** e))
        if e.denominator != 1:
            raise FractionalExponentError("only variables and units take fractional powers")
        return _ev(node.base, env).pow(int(e))
    if isinstance(node, BinOp):
        a = _ev(node.left, env)
        b = _ev(node.right, env)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return a * b.invert()
    raise TypeError(f"not an f-expression node: {node!r}")


def c_atoms(node) -> Tuple[Tuple[Fraction, ...], ...]:
    """All C[...] parity tuples occurring in the tree."""
    out = []

    def walk(n):
        if isinstance(n, CAtom):
            out.append(n.parities)
        elif isinstance(n, (Neg,)):
            walk(n.arg)
        elif isinstance(n, Pow):
            walk(n.base)
        elif isinstance(n, BinOp):
            walk(n.left)
            walk(n.right)

    walk(node)
    return tuple(out)


def symbols_used(node) -> Tuple[str, ...]:
    out = set()

    def walk(n):
        if isinstance(n, Sym):
            out.add(n.name)
        elif isinstance(n, Unit):
            for t in n.lin:
                out.update(t.syms)
        elif isinstance(n, Neg):
            walk(n.arg)
        elif isinstance(n, Pow):
            walk(n.base)
        elif isinstance(n, BinOp):
            walk(n.left)
            walk(n.right)

    walk(node)
    return tuple(sorted(out))


def evaluate_float(node, values, variables, symbols=None, resolve_c=None):
    """Evaluate with mpmath reals.

    ``values`` maps fourth-root units to positive reals (as in a
    ``FloatContext``), ``variables`` maps t, y, x to reals and ``resolve_c``
    returns the full value (t-powers included) of a C[...] atom.
    """
    import mpmath as mp

    symbols = dict(symbols or {})

    def mono(m: Monomial):
        r = mp.mpf(1)
        for u, e in m.items:
            r *= mp.mpf(values[u]) ** e
        return r

    def ev(n):
        if isinstance(n, Num):
            return mp.mpf(n.value.numerator) / n.value.denominator
        if isinstance(n, Sym):
            return mp.mpf(symbols[n.name])
        if isinstance(n, Var):
            return mp.mpf(variables[n.name])
        if isinstance(n, Base):
            if n.name == "gamma":
                return mono(Monomial((("q1", -2), ("q2", -2))))
            return mono(Monomial.unit(n.name, 4))
        if isinstance(n, Unit):
            return mono(lin_monomial(n.kind, n.lin, symbols))
        if isinstance(n, CAtom):
            if resolve_c is None:
                raise ValueError("C[...] atom without a coefficient resolver")
            return resolve_c(n.parities)
        if isinstance(n, Neg):
            return -ev(n.arg)
        if isinstance(n, Pow):
            e = n.exp
            return mp.power(ev(n.base), mp.mpf(e.numerator) / e.denominator)
        if isinstance(n, BinOp):
            a, b = ev(n.left), ev(n.right)
            if n.op == "+":
                return a + b
            if n.op == "-":
                return a - b
            return a * b if n.op == "*" else a / b
        raise TypeError(f"not an f-expression node: {n!r}")

    return ev(node)
