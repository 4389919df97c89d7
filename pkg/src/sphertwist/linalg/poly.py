"""Univariate polynomials K[q] with a graded generator, and Smith normal form over them."""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field


@dataclass(frozen=True)
class Poly:
    """Sparse polynomial in q. ``terms`` is a tuple of ``(exponent, coeff)`` with
    strictly increasing exponents and no zero coefficients."""

    field: Field
    terms: tuple = ()
    gen_degree: int = 0

    @classmethod
    def make(cls, fld: Field, coeffs: dict, gen_degree: int = 0) -> "Poly":
        clean = []
        for e in sorted(coeffs):
            c = fld(coeffs[e])
            if e < 0:
                raise ValueError("negative exponent")
            if c != 0:
                clean.append((int(e), c))
        return cls(fld, tuple(clean), gen_degree)

    @classmethod
    def const(cls, fld: Field, c, gen_degree: int = 0) -> "Poly":
        return cls.make(fld, {0: c}, gen_degree)

    @classmethod
    def monomial(cls, fld: Field, e: int, c=1, gen_degree: int = 0) -> "Poly":
        return cls.make(fld, {e: c}, gen_degree)

    def _new(self, coeffs: dict) -> "Poly":
        return Poly.make(self.field, coeffs, self.gen_degree)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Degree in q; -1 for the zero polynomial."""
        return self.terms[-1][0] if self.terms else -1

    @property
    def low_degree(self) -> int:
        return self.terms[0][0] if self.terms else -1

    @property
    def lead(self):
        return self.terms[-1][1]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def internal_degree(self) -> int:
        """Internal degree of a monomial, ``e * deg(q)``."""
        if not self.is_monomial():
            raise ValueError("internal degree is only defined for monomials")
        return self.terms[0][0] * self.gen_degree

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def scale(self, c) -> "Poly":
        return self._new({e: v * c for e, v in self.terms})

    def __add__(self, other: "Poly") -> "Poly":
        out = self.as_dict()
        for e, v in other.terms:
            out[e] = out.get(e, 0) + v
        return self._new(out)

    def __neg__(self) -> "Poly":
        return self._new({e: -v for e, v in self.terms})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict = {}
        for e1, v1 in self.terms:
            for e2, v2 in other.terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return self._new(out)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = self.as_dict()
        quo: dict = {}
        d, inv = other.degree, self.field.inv(other.lead)
        while rem:
            top = max(rem)
            if top < d:
                break
            c = rem[top] * inv
            shift = top - d
            quo[shift] = quo.get(shift, 0) + c
            for e, v in other.terms:
                rem[e + shift] = rem.get(e + shift, 0) - c * v
            rem = {e: self.field(v) for e, v in rem.items() if self.field(v) != 0}
        return self._new(quo), self._new(rem)

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return divmod(other, self)[1].is_zero()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            cs = self.field.format(c)
            if e == 0:
                parts.append(cs)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                parts.append(mono if cs == "1" else f"{cs}*{mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class SmithForm:
    """``u @ m @ v == diag(diagonal)``; ``u_inv`` is kept for reading off generators."""

    u: list
    v: list
    u_inv: list
    diagonal: list
    rows: int
    cols: int


def _zero(fld, g):
    return Poly(fld, (), g)


def _one(fld, g):
    return Poly.const(fld, 1, g)


def identity_poly_matrix(fld: Field, n: int, gen_degree: int = 0) -> list:
    return [[_one(fld, gen_degree) if i == j else _zero(fld, gen_degree) for j in range(n)] for i in range(n)]


def poly_matmul(a: list, b: list, fld: Field, gen_degree: int = 0) -> list:
    n = len(a)
    k = len(b)
    m = len(b[0]) if b else 0
    out = [[_zero(fld, gen_degree) for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if a[i][t].is_zero():
                continue
            for j in range(m):
                if not b[t][j].is_zero():
                    out[i][j] = out[i][j] + a[i][t] * b[t][j]
    return out


def smith_normal_form_poly(m: list, fld: Field, gen_degree: int = 0) -> SmithForm:
    """Smith form over K[q] by Euclidean elimination.

    The pivot is the nonzero entry of least q-degree in the remaining block,
    ties going to the leftmost column and then the top row. For matrices whose
    entries are monomials this keeps every intermediate entry homogeneous.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = identity_poly_matrix(fld, rows, gen_degree)
    u_inv = identity_poly_matrix(fld, rows, gen_degree)
    v = identity_poly_matrix(fld, cols, gen_degree)

    def row_axpy(dst, src, c):  # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]
        for r in range(rows):  # inverse op on columns of u_inv: col_src -= c * col_dst
            u_inv[r][src] = u_inv[r][src] - u_inv[r][dst] * c

    def col_axpy(dst, src, c):  # col_dst += c * col_src
        for r in range(rows):
            a[r][dst] = a[r][dst] + a[r][src] * c
        for r in range(cols):
            v[r][dst] = v[r][dst] + v[r][src] * c

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]
            for r in range(rows):
                u_inv[r][i], u_inv[r][j] = u_inv[r][j], u_inv[r][i]

    def swap_cols(i, j):
        if i != j:
            for r in range(rows):
                a[r][i], a[r][j] = a[r][j], a[r][i]
            for r in range(cols):
                v[r][i], v[r][j] = v[r][j], v[r][i]

    def scale_row(i, c):
        a[i] = [x.scale(c) for x in a[i]]
        u[i] = [x.scale(c) for x in u[i]]
        ci = fld.inv(c)
        for r in range(rows):
            u_inv[r][i] = u_inv[r][i].scale(ci)

    t = 0
    while t < min(rows, cols):
        best = None
        for j in range(t, cols):
            for i in range(t, rows):
                e = a[i][j]
                if not e.is_zero() and (best is None or e.degree < best[0]):
                    best = (e.degree, i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, rows):
                if not a[i][t].is_zero():
                    q, r = divmod(a[i][t], a[t][t])
                    row_axpy(i, t, -q)
                    if not r.is_zero():
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, cols):
                if not a[t][j].is_zero():
                    q, r = divmod(a[t][j], a[t][t])
                    col_axpy(j, t, -q)
                    if not r.is_zero():
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if not a[t][t].divides(a[i][j])),
                None,
            )
            if bad is None:
                break
            row_axpy(t, bad, _one(fld, gen_degree))
        scale_row(t, fld.inv(a[t][t].lead))
        t += 1

    diagonal = [a[i][i] for i in range(min(rows, cols))]
    return SmithForm(u, v, u_inv, diagonal, rows, cols)
