"""Finite-dimensional graded algebras given by structure constants."""

from __future__ import annotations

from collections import defaultdict

import numpy as np
from scipy import sparse

from ..errors import InvariantViolation
from ..linalg import Field, PrimeField, rank


# matrices with at least this many rows or columns are multiplied in sparse form
SPARSE_CUTOFF = 48


class GradedAlgebra:
    """A basic graded algebra with zero differential.

    The basis must be adapted to a complete set of orthogonal idempotents:
    every basis element ``b`` lies in some ``e_w A e_v``. We read such an
    element as a morphism from vertex ``v`` to vertex ``w``, so the product
    ``x * y`` means "first ``y``, then ``x``".

    ``products`` maps index pairs ``(i, j)`` to coefficient vectors of
    ``basis[i] * basis[j]``; missing pairs multiply to zero.
    """

    def __init__(
        self,
        fld: Field,
        labels: list[str],
        degrees: list[int],
        products: dict,
        idempotents: list[int],
        pairing=None,
        cy_dimension: int | None = None,
        vertex_labels: list | None = None,
    ):
        self.field = fld
        self.labels = list(labels)
        self.degrees = np.array(degrees, dtype=np.int64)
        self.dim = len(self.labels)
        if len(set(self.labels)) != self.dim:
            raise ValueError("basis labels must be distinct")
        self.idempotents = list(idempotents)
        self.vertex_labels = list(vertex_labels) if vertex_labels is not None else [self.labels[i] for i in idempotents]
        self.cy_dimension = cy_dimension

        mult = fld.zeros((self.dim, self.dim, self.dim))
        for (i, j), vec in products.items():
            mult[i, j] = fld.array(vec)
        self.mult = mult
        self.triples = [
            (int(a), int(b), int(c), mult[a, b, c]) for a, b, c in zip(*np.nonzero(mult != 0))
        ]
        self._by_left = defaultdict(list)
        self._by_right = defaultdict(list)
        for t in self.triples:
            self._by_left[t[0]].append(t)
            self._by_right[t[1]].append(t)

        self._check_homogeneous()
        self._locate_basis()
        self._check_associative()
        self.pairing = None if pairing is None else fld.array(pairing)
        if self.pairing is not None:
            self._check_frobenius()

    # -- structure ---------------------------------------------------------
    @property
    def num_vertices(self) -> int:
        return len(self.idempotents)

    def vertex_index(self, label) -> int:
        for i, v in enumerate(self.vertex_labels):
            if v == label or str(v) == str(label):
                return i
        for i, b in enumerate(self.idempotents):
            if self.labels[b] == str(label):
                return i
        raise KeyError(label)

    def _check_homogeneous(self):
        for a, b, c, _ in self.triples:
            if self.degrees[a] + self.degrees[b] != self.degrees[c]:
                raise InvariantViolation(
                    f"product {self.labels[a]}*{self.labels[b]} is not homogeneous", int(self.degrees[c])
                )

    def _locate_basis(self):
        """Find source and target vertex of every basis element and check the unit."""
        fld = self.field
        one = fld(1)
        src = np.full(self.dim, -1, dtype=np.int64)
        tgt = np.full(self.dim, -1, dtype=np.int64)
        for v, e in enumerate(self.idempotents):
            if self.degrees[e] != 0:
                raise InvariantViolation("idempotents must have degree 0", int(self.degrees[e]))
            for b in range(self.dim):
                right = self.mult[b, e]
                left = self.mult[e, b]
                unit_b = fld.zeros(self.dim)
                unit_b[b] = one
                if np.array_equal(right, unit_b):
                    if src[b] >= 0:
                        raise InvariantViolation(f"{self.labels[b]} has two sources")
                    src[b] = v
                elif np.any(right != 0):
                    raise InvariantViolation(f"basis element {self.labels[b]} is not adapted to the idempotents")
                if np.array_equal(left, unit_b):
                    if tgt[b] >= 0:
                        raise InvariantViolation(f"{self.labels[b]} has two targets")
                    tgt[b] = v
                elif np.any(left != 0):
                    raise InvariantViolation(f"basis element {self.labels[b]} is not adapted to the idempotents")
        if np.any(src < 0) or np.any(tgt < 0):
            raise InvariantViolation("sum of idempotents is not a unit")
        self.src, self.tgt = src, tgt
        for v, e in enumerate(self.idempotents):
            if src[e] != v or tgt[e] != v:
                raise InvariantViolation("idempotents are not orthogonal")
        deg0 = [b for b in range(self.dim) if self.degrees[b] == 0 and b not in self.idempotents]
        if deg0:
            # minimisation treats degree-0 loops as scalars; keep the algebra basic
            raise InvariantViolation("degree-0 part must be spanned by the idempotents", 0)
        if np.any(self.degrees < 0):
            raise InvariantViolation("algebra must be non-negatively graded", int(self.degrees.min()))
        self.between = {}
        for b in range(self.dim):
            self.between.setdefault((int(src[b]), int(tgt[b])), []).append(b)

    def _check_associative(self):
        fld = self.field
        m = self.mult.reshape(self.dim, self.dim * self.dim)
        # (xy)z: sum_k mult[x,y,k] mult[k,z,w]
        left = fld.matmul(self.mult.reshape(self.dim * self.dim, self.dim), m)
        left = left.reshape(self.dim, self.dim, self.dim, self.dim)
        # x(yz): sum_k mult[y,z,k] mult[x,k,w]
        right = fld.matmul(self.mult.reshape(self.dim * self.dim, self.dim), self.mult.transpose(1, 0, 2).reshape(self.dim, self.dim * self.dim))
        right = right.reshape(self.dim, self.dim, self.dim, self.dim).transpose(2, 0, 1, 3)
        if not np.array_equal(left, right):
            x, y, z, _ = (int(i[0]) for i in np.nonzero(left != right))
            raise InvariantViolation(
                f"associativity fails on ({self.labels[x]}, {self.labels[y]}, {self.labels[z]})"
            )

    def _check_frobenius(self):
        p = self.pairing
        if p.shape != (self.dim, self.dim):
            raise InvariantViolation("pairing has the wrong shape")
        if rank(self.field, p) != self.dim:
            raise InvariantViolation("Frobenius pairing is degenerate")
        if self.cy_dimension is None:
            raise InvariantViolation("a Frobenius pairing needs its dimension d")
        for a, b in zip(*np.nonzero(p != 0)):
            if self.degrees[a] + self.degrees[b] != self.cy_dimension:
                raise InvariantViolation("pairing is not of internal degree -d", int(self.degrees[a] + self.degrees[b]))
        # invariance <xy, z> = <x, yz>
        fld = self.field
        lhs = fld.matmul(self.mult.reshape(self.dim * self.dim, self.dim), p).reshape(self.dim, self.dim, self.dim)
        rhs = fld.matmul(self.mult.reshape(self.dim * self.dim, self.dim), p.T).reshape(self.dim, self.dim, self.dim)
        # rhs[y,z,x] = <x, yz>
        rhs = rhs.transpose(2, 0, 1)
        if not np.array_equal(lhs, rhs):
            raise InvariantViolation("Frobenius pairing is not invariant")

    @property
    def is_graded_symmetric(self) -> bool:
        """True when the pairing is present and symmetric up to the Koszul sign."""
        if self.pairing is None:
            return False
        p = self.pairing
        signs = (-1) ** np.abs(np.outer(self.degrees, self.degrees) % 2)
        plain = np.array_equal(p, p.T)
        if isinstance(self.field, PrimeField):
            graded = np.array_equal(p, np.mod(signs * p.T, self.field.p))
        else:
            graded = np.array_equal(p, signs * p.T)
        return plain or graded

    # -- arithmetic on matrices of algebra elements --------------------------
    def element(self, combo: dict) -> np.ndarray:
        """Coefficient vector from ``{label: coeff}``."""
        out = self.field.zeros(self.dim)
        for lab, c in combo.items():
            out[self.labels.index(lab)] = self.field(c) if not isinstance(c, str) else self.field.parse(c)
        return out

    def mat_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product of matrices with algebra entries, shapes (r,k,dim) @ (k,c,dim)."""
        fld = self.field
        out = fld.zeros((a.shape[0], b.shape[1], self.dim))
        if a.shape[1] == 0 or out.size == 0:
            return out
        used_a = np.nonzero(a.reshape(-1, self.dim).any(axis=0))[0].tolist()
        used_b = set(np.nonzero(b.reshape(-1, self.dim).any(axis=0))[0].tolist())
        prime = isinstance(fld, PrimeField)
        if prime and max(a.shape[0], a.shape[1], b.shape[1]) >= SPARSE_CUTOFF:
            return self._sparse_mat_mul(a, b, used_a, used_b, out)
        for x in used_a:
            for _, y, z, c in self._by_left[x]:
                if y in used_b:
                    out[:, :, z] += c * (a[:, :, x] @ b[:, :, y])
                    if prime:
                        out[:, :, z] %= fld.p
        return out

    def _sparse_mat_mul(self, a, b, used_a, used_b, out):
        p = self.field.p
        sa = {x: sparse.csr_matrix(a[:, :, x]) for x in used_a}
        sb = {y: sparse.csr_matrix(b[:, :, y]) for y in used_b}
        acc = {}
        for x in used_a:
            for _, y, z, c in self._by_left[x]:
                if y in used_b:
                    term = sa[x] @ sb[y]
                    term.data = np.mod(term.data, p) * int(c) % p
                    acc[z] = term if z not in acc else acc[z] + term
        for z, m in acc.items():
            m = m.tocoo()
            out[m.row, m.col, z] = np.mod(m.data, p)
        return out

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product ``a * b`` of two algebra elements given as coefficient vectors."""
        fld = self.field
        out = fld.zeros(self.dim)
        nz_b = b != 0
        for x in np.nonzero(a != 0)[0].tolist():
            for _, y, z, c in self._by_left[x]:
                if nz_b[y]:
                    out[z] += c * a[x] * b[y]
        return fld.reduce(out)

    def outer_mul(self, col: np.ndarray, row: np.ndarray) -> np.ndarray:
        """``out[i, j] = col[i] * row[j]`` for vectors of algebra elements."""
        fld = self.field
        out = fld.zeros((col.shape[0], row.shape[0], self.dim))
        used_a = np.nonzero(col.any(axis=0))[0].tolist()
        used_b = set(np.nonzero(row.any(axis=0))[0].tolist())
        for x in used_a:
            for _, y, z, c in self._by_left[x]:
                if y in used_b:
                    out[:, :, z] += c * np.multiply.outer(col[:, x], row[:, y])
        return fld.reduce(out)

    def __repr__(self) -> str:
        return f"GradedAlgebra(dim={self.dim}, vertices={self.vertex_labels}, field={self.field})"
