"""Row reduction, rank, kernels and linear solves over a :class:`Field`.

GF(p) goes through numba-compiled kernels; the rationals use a plain Python
elimination on ``Fraction`` object arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
from numba import njit

from .fields import Field, PrimeField

SPARSE_DENSITY_THRESHOLD = 0.25


@njit(cache=True)
def _inv_mod(a, p):
    t, new_t, r, new_r = 0, 1, p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


@njit(cache=True)
def _rref_mod_p(a, p, full):
    """In-place reduction of ``a``; returns pivot columns. ``full`` clears above pivots too."""
    m, n = a.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = -1
        for i in range(r, m):
            if a[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(c, n):
                tmp = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = tmp
        inv = _inv_mod(a[r, c], p)
        for j in range(c, n):
            a[r, j] = a[r, j] * inv % p
        start = 0 if full else r + 1
        for i in range(start, m):
            if i == r:
                continue
            f = a[i, c]
            if f != 0:
                for j in range(c, n):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[r] = c
        r += 1
    return pivots[:r]


def _rref_q(a: np.ndarray, full: bool) -> list[int]:
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = next((i for i in range(r, m) if a[i, c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r, c:] = a[r, c:] / a[r, c]
        rows = range(m) if full else range(r + 1, m)
        for i in rows:
            if i != r and a[i, c] != 0:
                a[i, c:] = a[i, c:] - a[i, c] * a[r, c:]
        pivots.append(c)
        r += 1
    return pivots


def rref(fld: Field, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns (input is not modified)."""
    a = np.array(m, dtype=fld.dtype, copy=True)
    if a.size == 0:
        return a, []
    if isinstance(fld, PrimeField):
        piv = _rref_mod_p(a, fld.p, True)
        return a, [int(c) for c in piv]
    return a, _rref_q(a, True)


def rank(fld: Field, m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    a = np.array(m, dtype=fld.dtype, copy=True)
    if isinstance(fld, PrimeField):
        # eliminating on the short side is cheaper
        if a.shape[0] > a.shape[1]:
            a = np.ascontiguousarray(a.T)
        return len(_rref_mod_p(a, fld.p, False))
    return len(_rref_q(a, False))


def nullspace(fld: Field, m: np.ndarray) -> np.ndarray:
    """Columns spanning the kernel of ``m``, in the standard free-variable basis."""
    rows, cols = m.shape
    r, piv = rref(fld, m)
    free = [c for c in range(cols) if c not in set(piv)]
    out = fld.zeros((cols, len(free)))
    one = fld(1)
    for k, f in enumerate(free):
        out[f, k] = one
        for i, c in enumerate(piv):
            out[c, k] = fld.reduce(-r[i, f]) if isinstance(fld, PrimeField) else -r[i, f]
    return out


def column_basis(fld: Field, m: np.ndarray) -> np.ndarray:
    """Pivot columns of ``m``: an independent spanning set of its column space."""
    _, piv = rref(fld, m)
    return m[:, piv]


def rank_kernel_image(fld: Field, m) -> tuple[int, np.ndarray, np.ndarray]:
    if isinstance(m, Matrix):
        fld, m = m.field, m.dense()
    m = np.asarray(m)
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    r, piv = rref(fld, m)
    kernel = nullspace(fld, m) if m.shape[1] else fld.zeros((0, 0))
    image = m[:, piv] if piv else fld.zeros((m.shape[0], 0))
    return len(piv), kernel, image


def solve(fld: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution ``x`` of ``a @ x = b`` (``b`` may be a matrix), or ``None``."""
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    rows, cols = a.shape
    aug = np.concatenate([np.asarray(a, dtype=fld.dtype), np.asarray(b, dtype=fld.dtype)], axis=1)
    r, piv = rref(fld, aug)
    if any(c >= cols for c in piv):
        return None
    x = fld.zeros((cols, b.shape[1]))
    for i, c in enumerate(piv):
        x[c] = r[i, cols:]
    return x[:, 0] if vec else x


def inverse(fld: Field, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve(fld, a, fld.eye(n))
    if x is None:
        raise ZeroDivisionError("matrix is singular")
    return x


def in_span(fld: Field, basis: np.ndarray, v: np.ndarray) -> bool:
    if basis.shape[1] == 0:
        return not np.any(v != 0)
    return solve(fld, basis, v) is not None


def extend_to_complement(fld: Field, sub: np.ndarray, vectors: np.ndarray) -> list[int]:
    """Indices of columns of ``vectors`` that extend ``sub`` to a basis of the joint span.

    Columns are taken greedily left to right, so the choice is deterministic.
    """
    stacked = np.concatenate([sub, vectors], axis=1)
    _, piv = rref(fld, stacked)
    k = sub.shape[1]
    return [c - k for c in piv if c >= k]


@dataclass(frozen=True)
class Matrix:
    """A field matrix that remembers whether it is stored sparsely.

    Sparse storage is a ``{(i, j): value}`` map, used when the fraction of
    nonzero entries is at most ``threshold``.
    """

    field: Field
    rows: int
    cols: int
    entries: object
    sparse: bool = False
    threshold: float = dc_field(default=SPARSE_DENSITY_THRESHOLD, compare=False)

    @classmethod
    def from_array(cls, fld: Field, a, threshold: float = SPARSE_DENSITY_THRESHOLD) -> "Matrix":
        a = fld.array(a)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows, cols = a.shape
        nnz = int(np.count_nonzero(a != 0)) if a.size else 0
        if a.size and nnz / a.size <= threshold:
            ents = {(int(i), int(j)): a[i, j] for i, j in zip(*np.nonzero(a != 0))}
            return cls(fld, rows, cols, ents, True, threshold)
        return cls(fld, rows, cols, a, False, threshold)

    def dense(self) -> np.ndarray:
        if not self.sparse:
            return self.entries
        out = self.field.zeros((self.rows, self.cols))
        for (i, j), v in self.entries.items():
            out[i, j] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return Matrix.from_array(self.field, self.field.matmul(self.dense(), other.dense()), self.threshold)
