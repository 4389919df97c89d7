"""Rescaling autoequivalences of modules over the dual numbers, and derived endomorphism dimensions.

Derived homs between sums of ``B_n[s]`` are computed on the Koszul side:
``B_0[s]`` corresponds to a free ``K[q]`` generated in degree ``-s`` and
``B_n[s]`` (``n >= 1``) to ``K[q]/q^n``, resolved by two free generators
``y`` and ``x`` with ``Dx = q^n y``. Homs between such semi-free complexes
are finite-dimensional in each degree when ``deg q != 0``.
"""

from __future__ import annotations

from itertools import product

from ..errors import InvalidParameter, ZeroLambda
from ..linalg import default_field, rank
from .module import ADModule


def ind_phi_lambda(m: ADModule, lam, shift: int = 0) -> ADModule:
    """Restrict along ``eps -> lam * eps`` and then shift."""
    fld = m.field
    lam = fld(lam)
    if lam == 0:
        raise ZeroLambda("lambda must be invertible")
    out = m if lam == fld(1) else m.scale_epsilon(lam)
    return out.shift(shift) if shift else out


def _generators(summands, d: int):
    """Semi-free generators: list of degrees and differential entries ``(source, target, q-power)``."""
    g = 1 - d
    degs, edges = [], []
    for n, s in summands:
        if n < 0:
            raise InvalidParameter("n must be non-negative")
        if n == 0:
            degs.append(-s)
            continue
        a = n * (d - 1) + 1 - s
        degs += [a, a + n * g - 1]  # y, then x with Dx = q^n y
        edges.append((len(degs) - 1, len(degs) - 2, n))
    return degs, edges


def _hom_basis(degs, g, t):
    """Maps ``gamma -> q^e gamma'`` of degree ``t``."""
    out = []
    for src, tgt in product(range(len(degs)), repeat=2):
        num = t - degs[tgt] + degs[src]
        if num % g == 0 and num // g >= 0:
            out.append((src, tgt, num // g))
    return out


def _hom_differential(fld, degs, edges, g, t):
    """Matrix of ``phi -> D phi - (-1)^t phi D`` from degree ``t`` to ``t + 1``."""
    src_basis = _hom_basis(degs, g, t)
    tgt_basis = _hom_basis(degs, g, t + 1)
    where = {b: i for i, b in enumerate(tgt_basis)}
    m = fld.zeros((len(tgt_basis), len(src_basis)))
    sign = 1 if t % 2 == 0 else -1
    for col, (s, u, e) in enumerate(src_basis):
        for a, b, k in edges:
            if a == u:  # D after phi: q^e x' -> q^(e+k) y'
                m[where[(s, b, e + k)], col] += fld(1)
            if b == s:  # phi after D: x -> q^k y -> q^(k+e) phi(y)
                m[where[(a, u, e + k)], col] -= fld(sign)
    return fld.reduce(m), len(src_basis)


def _default_window(summands, d):
    g = abs(1 - d)
    shifts = [s for _, s in summands] or [0]
    spread = max(shifts) - min(shifts)
    return min(0, d, -spread) - 3 * g, max(0, d, spread) + 3 * g


def endo_algebra_dims(x, d: int, window=None, fld=None) -> dict:
    """Dimensions of ``Hom(X, X[t])`` in ``D(A_d)`` for ``X = ⊕ B_n[s]`` and ``t`` in ``window``.

    ``window`` is an inclusive pair of degrees; the default covers the
    spread of the shifts plus ``3|1-d|`` on either side.
    """
    if d == 0:
        raise InvalidParameter("the degree d of eps must be nonzero")
    if d == 1:
        raise InvalidParameter("deg q = 0 makes the hom spaces infinite-dimensional per degree")
    fld = fld or default_field()
    summands = [(int(n), int(s)) for n, s in x]
    lo, hi = window if window is not None else _default_window(summands, d)
    g = 1 - d
    degs, edges = _generators(summands, d)
    out = {}
    ranks = {}

    def rk(t):
        if t not in ranks:
            m, _ = _hom_differential(fld, degs, edges, g, t)
            ranks[t] = rank(fld, m) if m.size else 0
        return ranks[t]

    for t in range(min(lo, hi), max(lo, hi) + 1):
        dim = len(_hom_basis(degs, g, t))
        h = dim - rk(t) - rk(t - 1)
        if h:
            out[t] = h
    return out


def is_dual_numbers_like(x, d: int, window=None, fld=None) -> bool:
    """Whether the derived endomorphisms in the window look like ``A_d``: one class in degrees 0 and d."""
    return endo_algebra_dims(x, d, window, fld) == {0: 1, d: 1}


__all__ = ["endo_algebra_dims", "ind_phi_lambda", "is_dual_numbers_like"]
