"""Graded vector spaces, complexes of them, and hom complexes of twisted complexes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import AlgebraMismatch, InvariantViolation
from ..linalg import Field, PrimeField, extend_to_complement, nullspace, rank, solve, sparse_rank
from .objects import Morphism, TwistedComplex


@dataclass(frozen=True)
class GradedVectorSpace:
    dims: tuple  # sorted (degree, dim) pairs with dim > 0

    @classmethod
    def from_dict(cls, dims: dict) -> "GradedVectorSpace":
        return cls(tuple(sorted((int(k), int(v)) for k, v in dims.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.dims)

    @property
    def total(self) -> int:
        return sum(v for _, v in self.dims)


class ComplexOfGradedSpaces:
    """A finite complex given by a degree per basis vector and a differential.

    ``differential[i, j]`` is the coefficient of basis vector ``i`` in the
    image of basis vector ``j``; it is nonzero only when
    ``degrees[i] == degrees[j] + 1``.
    """

    def __init__(self, fld: Field, degrees, differential, check: bool = True):
        self.field = fld
        self.degrees = np.asarray(degrees, dtype=np.int64).reshape(-1)
        n = len(self.degrees)
        self.differential = differential if differential is not None else fld.zeros((n, n))
        if self.differential.shape != (n, n):
            raise ValueError("differential has the wrong shape")
        if check:
            self.check()

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def check(self) -> None:
        nz = np.nonzero(self.differential != 0)
        bad = self.degrees[nz[0]] != self.degrees[nz[1]] + 1
        if np.any(bad):
            raise InvariantViolation("differential is not of degree +1", int(self.degrees[nz[1][bad][0]]))
        if self.dim and np.any(self.field.matmul(self.differential, self.differential) != 0):
            k = int(np.nonzero(self.field.matmul(self.differential, self.differential) != 0)[1][0])
            raise InvariantViolation("d^2 != 0", int(self.degrees[k]))

    @cached_property
    def terms(self) -> GradedVectorSpace:
        vals, counts = np.unique(self.degrees, return_counts=True)
        return GradedVectorSpace.from_dict(dict(zip(vals.tolist(), counts.tolist())))

    def indices(self, n: int) -> np.ndarray:
        return np.nonzero(self.degrees == n)[0]

    def block(self, n: int) -> np.ndarray:
        """Matrix of the differential from degree ``n`` to degree ``n + 1``."""
        return self.differential[np.ix_(self.indices(n + 1), self.indices(n))]

    @cached_property
    def _ranks(self) -> dict:
        return {int(n): rank(self.field, self.block(int(n))) for n in np.unique(self.degrees)}

    def cohomology_dims(self) -> dict:
        out = {}
        for n, dim in self.terms.dims:
            h = dim - self._ranks.get(n, 0) - self._ranks.get(n - 1, 0)
            if h:
                out[n] = h
        return out

    def total_cohomology(self) -> int:
        return self.dim - 2 * sum(self._ranks.values())

    def cocycles(self, n: int) -> np.ndarray:
        """Kernel of the degree-``n`` differential, as full-length column vectors."""
        idx = self.indices(n)
        ker = nullspace(self.field, self.block(n)) if len(idx) else self.field.zeros((0, 0))
        out = self.field.zeros((self.dim, ker.shape[1]))
        out[idx] = ker
        return out

    def coboundaries(self, n: int) -> np.ndarray:
        """Image of the differential landing in degree ``n``, as full-length columns."""
        src = self.indices(n - 1)
        return self.differential[:, src]

    def cohomology_basis(self, n: int) -> np.ndarray:
        """Cocycle representatives of a basis of ``H^n``.

        Chosen greedily from the reduced-row-echelon kernel basis, so the
        choice is deterministic.
        """
        z = self.cocycles(n)
        b = self.coboundaries(n)
        keep = extend_to_complement(self.field, b, z)
        return z[:, keep]

    def is_coboundary(self, v: np.ndarray) -> bool:
        n_idx = np.nonzero(v != 0)[0]
        if len(n_idx) == 0:
            return True
        n = int(self.degrees[n_idx[0]])
        return solve(self.field, self.coboundaries(n), v) is not None

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.field.matmul(self.differential, v)


def cohomology_dims(c: ComplexOfGradedSpaces) -> dict:
    return c.cohomology_dims()


class HomComplex(ComplexOfGradedSpaces):
    """``Hom(x, y)`` with basis triples ``(target summand r, source summand s, algebra basis b)``."""

    def __init__(self, x: TwistedComplex, y: TwistedComplex, fld, degrees, differential, rows, cols, basis, index):
        super().__init__(fld, degrees, differential, check=False)
        self.source, self.target = x, y
        self.r, self.s, self.b = rows, cols, basis
        self.index = index

    def to_morphism(self, v: np.ndarray, degree: int) -> Morphism:
        fld = self.field
        m = fld.zeros((self.target.size, self.source.size, self.source.algebra.dim))
        m[self.r, self.s, self.b] = v
        return Morphism(self.source, self.target, degree, m)

    def from_matrix(self, m: np.ndarray) -> np.ndarray:
        """Coordinates of a morphism matrix; raises if it has components outside the basis."""
        v = m[self.r, self.s, self.b].copy() if self.dim else self.field.zeros(0)
        rest = m.copy()
        if self.dim:
            rest[self.r, self.s, self.b] = 0
        if np.any(rest != 0):
            raise ValueError("matrix is not in the span of the hom basis")
        return v

    def precompose_matrix(self, m: np.ndarray) -> np.ndarray:
        """Matrix of ``f -> f . m`` for an endomorphism matrix ``m`` of the source."""
        alg = self.source.algebra
        fld = self.field
        out = _zeros_acc(fld, self.dim)
        for beta, gamma, delta, c in alg.triples:
            J = np.nonzero(self.b == beta)[0]
            if not len(J):
                continue
            vals = m[self.s[J], :, gamma]  # (|J|, source size)
            jj, s0 = np.nonzero(vals != 0)
            if not len(jj):
                continue
            tgt = self.index[self.r[J][jj], s0, delta]
            np.add.at(out, (tgt, J[jj]), c * vals[jj, s0])
        return fld.reduce(out)

    def postcompose_matrix(self, m: np.ndarray) -> np.ndarray:
        """Matrix of ``f -> m . f`` for an endomorphism matrix ``m`` of the target."""
        alg = self.source.algebra
        fld = self.field
        out = _zeros_acc(fld, self.dim)
        for alpha, beta, delta, c in alg.triples:
            J = np.nonzero(self.b == beta)[0]
            if not len(J):
                continue
            vals = m[:, self.r[J], alpha]  # (target size, |J|)
            rr, jj = np.nonzero(vals != 0)
            if not len(rr):
                continue
            tgt = self.index[rr, self.s[J][jj], delta]
            np.add.at(out, (tgt, J[jj]), c * vals[rr, jj])
        return fld.reduce(out)

    def cohomology_morphisms(self, n: int) -> list[Morphism]:
        basis = self.cohomology_basis(n)
        return [self.to_morphism(basis[:, k], n) for k in range(basis.shape[1])]


def _zeros_acc(fld, n: int) -> np.ndarray:
    return np.zeros((n, n), dtype=np.int64) if isinstance(fld, PrimeField) else fld.zeros((n, n))


def _hom_data(x: TwistedComplex, y: TwistedComplex):
    if x.algebra is not y.algebra:
        raise AlgebraMismatch("hom between objects over different algebras")
    alg = x.algebra
    a, bsz = x.size, y.size
    mask = (alg.tgt[None, None, :] == y.vertices[:, None, None]) & (alg.src[None, None, :] == x.vertices[None, :, None])
    rows, cols, basis = np.nonzero(mask)
    nh = len(rows)
    index = np.full((bsz, a, alg.dim), -1, dtype=np.int64)
    index[rows, cols, basis] = np.arange(nh)
    degrees = alg.degrees[basis] + x.shifts[cols] - y.shifts[rows]
    parts = []
    if nh:
        parts += _left_entries(alg, y.delta, rows, cols, basis, index)
        parts += _right_entries(alg, x.delta, rows, cols, basis, degrees, index)
    if parts:
        tgt, src, val = (np.concatenate(z) for z in zip(*parts))
    else:
        tgt = src = val = np.zeros(0, dtype=np.int64)
    return rows, cols, basis, index, degrees, (tgt, src, val)


def _dense_differential(fld, nh: int, triplets) -> np.ndarray:
    tgt, src, val = triplets
    D = _zeros_acc(fld, nh)
    if len(tgt):
        np.add.at(D, (tgt, src), val)
        D = fld.reduce(D)
    return D


def hom_complex(x: TwistedComplex, y: TwistedComplex) -> HomComplex:
    """The complex of all homogeneous maps from ``x`` to ``y`` with ``D f = d_y f - (-1)^|f| f d_x``."""
    fld = x.algebra.field
    rows, cols, basis, index, degrees, triplets = _hom_data(x, y)
    D = _dense_differential(fld, len(rows), triplets)
    return HomComplex(x, y, fld, degrees, D, rows, cols, basis, index)


SPARSE_HOM_CUTOFF = 1500


def hom_total_dim(x: TwistedComplex, y: TwistedComplex) -> int:
    """Total dimension of the cohomology of ``Hom(x, y)``; large complexes go through sparse elimination."""
    fld = x.algebra.field
    rows, _, _, _, degrees, triplets = _hom_data(x, y)
    nh = len(rows)
    if nh <= SPARSE_HOM_CUTOFF:
        D = _dense_differential(fld, nh, triplets)
        return ComplexOfGradedSpaces(fld, degrees, D, check=False).total_cohomology()
    return nh - 2 * sparse_rank(fld, *triplets)


def _left_entries(alg, dy, rows, cols, basis, index):
    """``d_y . f``: component ``alpha`` of ``d_y[r', r]`` times basis ``beta`` at ``(r, s)``."""
    out = []
    used = np.nonzero(dy.reshape(-1, alg.dim).any(axis=0))[0] if dy.size else []
    for alpha in used:
        slab = dy[:, :, alpha]
        for _, beta, gamma, c in alg._by_left[int(alpha)]:
            J = np.nonzero(basis == beta)[0]
            if not len(J):
                continue
            vals = slab[:, rows[J]]  # (r', |J|)
            rr, jj = np.nonzero(vals != 0)
            if not len(rr):
                continue
            out.append((index[rr, cols[J][jj], gamma], J[jj], c * vals[rr, jj]))
    return out


def _right_entries(alg, dx, rows, cols, basis, degrees, index):
    """``-(-1)^|f| f . d_x``: basis ``beta`` at ``(r, s)`` times component ``alpha`` of ``d_x[s, s0]``."""
    out = []
    used = np.nonzero(dx.reshape(-1, alg.dim).any(axis=0))[0] if dx.size else []
    sign = np.where(degrees % 2 == 0, -1, 1)
    for alpha in used:
        slab = dx[:, :, alpha]
        for beta, _, gamma, c in alg._by_right[int(alpha)]:
            J = np.nonzero(basis == beta)[0]
            if not len(J):
                continue
            vals = slab[cols[J], :]  # (|J|, s0)
            jj, s0 = np.nonzero(vals != 0)
            if not len(jj):
                continue
            out.append((index[rows[J][jj], s0, gamma], J[jj], c * sign[J[jj]] * vals[jj, s0]))
    return out
