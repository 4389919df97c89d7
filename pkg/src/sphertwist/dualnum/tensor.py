"""Truncated tensor products ``M ⊗ N`` of a right and a left module over the dual numbers.

The complex has ``levels`` copies of ``M ⊗_K N``. Copy ``j`` sits at total
shift ``j(1-d)``, and copy ``j`` maps to copy ``j-1`` by
``m ⊗ n -> m.eps ⊗ n + c_{j+1} m ⊗ eps.n`` with ``c_k = (-1)^(k(d+1))``.
One level is the plain tensor product over K.
"""

from __future__ import annotations

import numpy as np

from ..dg.homcx import ComplexOfGradedSpaces
from ..errors import InvalidParameter, SideMismatch
from ..linalg import rank
from .module import ADModule


def _sign(k: int) -> int:
    return 1 if k % 2 == 0 else -1


def level_sign(k: int, d: int) -> int:
    """Coefficient of the ``m ⊗ eps.n`` part of the map leaving copy ``k - 1``."""
    return _sign(k * (d + 1))


class TruncatedTensor(ComplexOfGradedSpaces):
    """Basis index ``(level, i, j)`` stands for ``m_i ⊗ n_j`` in copy ``level``."""

    def __init__(self, m: ADModule, n: ADModule, levels: int, degrees, differential):
        super().__init__(m.field, degrees, differential, check=True)
        self.left_factor, self.right_factor, self.levels = m, n, levels

    def index(self, level: int, i: int, j: int) -> int:
        a, b = self.left_factor.dim, self.right_factor.dim
        if not (0 <= level < self.levels and 0 <= i < a and 0 <= j < b):
            raise IndexError((level, i, j))
        return level * a * b + i * b + j

    def vector(self, level: int, terms) -> np.ndarray:
        """Vector with ``coef * m_i ⊗ n_j`` in copy ``level`` for each ``(coef, i, j)``."""
        fld = self.field
        v = fld.zeros(self.dim)
        for coef, i, j in terms:
            k = self.index(level, i, j)
            v[k] = fld.reduce(fld.array([v[k] + fld(coef)]))[0]
        return v


def truncated_tensor(m: ADModule, n: ADModule, levels: int) -> TruncatedTensor:
    if m.side != "right" or n.side != "left":
        raise SideMismatch("truncated_tensor takes a right module and a left module")
    if m.d != n.d or m.field != n.field:
        raise InvalidParameter("factors must share d and the field")
    if levels < 1:
        raise InvalidParameter("levels must be at least 1")
    fld, d = m.field, m.d
    a, b = m.dim, n.dim
    eye_a, eye_b = fld.eye(a), fld.eye(b)
    mdeg = m.degrees
    # (-1)^|m| in front of the second factor's differential, (-1)^(d|m|) in front of its eps
    koszul = fld.array(np.diag([_sign(int(k)) for k in mdeg])) if a else fld.zeros((0, 0))
    eps_sign = fld.array(np.diag([_sign(d * int(k)) for k in mdeg])) if a else fld.zeros((0, 0))
    inner = fld.reduce(np.kron(m.differential, eye_b) + np.kron(koszul, n.differential))
    x_part = fld.reduce(np.kron(m.epsilon, eye_b))
    y_part = fld.reduce(np.kron(eps_sign, n.epsilon))
    base_deg = (mdeg[:, None] + n.degrees[None, :]).reshape(-1)
    ab = a * b
    total = fld.zeros((levels * ab, levels * ab))
    degrees = np.zeros(levels * ab, dtype=np.int64)
    for j in range(levels):
        shift = j * (1 - d)
        sl = slice(j * ab, (j + 1) * ab)
        degrees[sl] = base_deg - shift
        total[sl, sl] = inner if shift % 2 == 0 else fld.reduce(-inner)
        if j:
            c = level_sign(j + 1, d)
            psi = fld.reduce(x_part + c * y_part)
            total[(j - 1) * ab : j * ab, sl] = psi
    return TruncatedTensor(m, n, levels, degrees, total)


def listed_classes(tt: TruncatedTensor, r: int, p: int) -> list[np.ndarray]:
    """Cohomology classes of ``B_r ⊗ C_p`` that witness the lower bound on its dimension.

    Both factors must be the unshifted modules built by ``make_B``/``make_C``,
    whose basis is ``1_0, eps_0, 1_1, eps_1, ...`` (just ``1`` when the index
    is 0).
    """
    d, top = tt.left_factor.d, tt.levels - 1

    def one(k):
        return 2 * k

    def eps(k):
        return 2 * k + 1

    if r == 0 and p == 0:
        return [tt.vector(level, [(1, 0, 0)]) for level in range(tt.levels)]
    if r == 0:
        return [tt.vector(0, [(1, 0, one(0))]), tt.vector(top, [(1, 0, eps(p - 1))])]
    if p == 0:
        return [tt.vector(0, [(1, one(0), 0)]), tt.vector(top, [(1, eps(r - 1), 0)])]
    c = -_sign(d) * level_sign(tt.levels, d)
    return [
        tt.vector(0, [(1, one(0), one(0))]),
        tt.vector(top, [(1, eps(0), eps(0))]),
        tt.vector(top, [(1, eps(0), one(0)), (c, one(0), eps(0))]),
        tt.vector(top, [(1, eps(r - 1), eps(p - 1))]),
    ]


def is_closed(c: ComplexOfGradedSpaces, v: np.ndarray) -> bool:
    return not np.any(c.apply(v) != 0)


def independent_classes(c: ComplexOfGradedSpaces, vectors) -> int:
    """Dimension of the span of ``vectors`` in cohomology (all must be cocycles)."""
    if not vectors:
        return 0
    fld = c.field
    vecs = np.stack(vectors, axis=1)
    bounds = c.differential
    return rank(fld, np.concatenate([bounds, vecs], axis=1)) - rank(fld, bounds)


__all__ = ["TruncatedTensor", "independent_classes", "is_closed", "level_sign", "listed_classes", "truncated_tensor"]
