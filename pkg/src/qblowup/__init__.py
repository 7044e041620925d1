"""Exact verification of q-deformed blowup relations.

Subpackages and modules:

* ``exact``: monomials in fourth-root units, parameter points, truncated series
* ``qspecial``: q-Pochhammer symbols, c_n/g_n, q-Gamma, q-Barnes, theta
* ``partitions``, ``kernel``, ``nekrasov``: instanton partition functions
* ``coeffs``: the C/A coefficients and their identities
* ``fexpr``: the f-factor expression language used by the catalogs
* ``blowup``: the relation catalogs and the verifier
* ``weyl``: Weyl-group actions, orbits and characters
* ``tauqp6``: q-Painleve VI tau functions and bilinear relations
* ``cli``: command-line front end
"""

__version__ = "0.1.0"

from .kernel import BACKEND, available_backends  # noqa: E402,F401
__all__ = ["BACKEND", "available_backends", "__version__"]
