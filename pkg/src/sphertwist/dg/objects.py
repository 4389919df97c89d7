"""One-sided twisted complexes over shifted vertex projectives.

An object is stored flat: a list of summands ``P_v[t]`` (vertex ``v``, total
shift ``t``) and a square matrix ``delta`` of algebra elements, where
``delta[j, i]`` is the component from summand ``i`` to summand ``j``. A
component between ``P_v[t]`` and ``P_w[t']`` lives in ``e_w A e_v`` and has
internal degree ``1 - t + t'``. The convolution differential is then left
multiplication by ``delta`` and the Maurer-Cartan equation is ``delta**2 = 0``.

The positional view (summands grouped into positions with maps ``alpha_ij``
for ``i < j``) is recovered by layering the support of ``delta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import AlgebraMismatch, InvariantViolation, MaurerCartanViolation, NotClosed, WrongDegree
from .algebra import GradedAlgebra


class TwistedComplex:
    """A twisted complex; immutable once built (arrays are made read-only)."""

    def __init__(self, algebra: GradedAlgebra, vertices, shifts, delta=None, positions=None, check: bool = True):
        fld = algebra.field
        self.algebra = algebra
        self.vertices = np.asarray(vertices, dtype=np.int64).reshape(-1)
        self.shifts = np.asarray(shifts, dtype=np.int64).reshape(-1)
        n = len(self.vertices)
        if len(self.shifts) != n:
            raise ValueError("vertices and shifts differ in length")
        if delta is None:
            delta = fld.zeros((n, n, algebra.dim))
        self.delta = fld.array(delta) if np.asarray(delta).dtype != fld.dtype else np.asarray(delta)
        if self.delta.shape != (n, n, algebra.dim):
            raise ValueError(f"delta has shape {self.delta.shape}, expected {(n, n, algebra.dim)}")
        self._positions = None if positions is None else np.asarray(positions, dtype=np.int64)
        for arr in (self.vertices, self.shifts, self.delta):
            arr.flags.writeable = False
        if check:
            self.check()

    # -- construction ------------------------------------------------------
    @classmethod
    def zero(cls, algebra: GradedAlgebra) -> "TwistedComplex":
        return cls(algebra, [], [])

    @classmethod
    def projective(cls, algebra: GradedAlgebra, v: int, shift: int = 0) -> "TwistedComplex":
        return cls(algebra, [v], [shift])

    # -- invariants --------------------------------------------------------
    def allowed_mask(self) -> np.ndarray:
        """Boolean (n, n, dim) mask of basis components that have the right degree."""
        alg = self.algebra
        v, t = self.vertices, self.shifts
        return (
            (alg.src[None, None, :] == v[None, :, None])
            & (alg.tgt[None, None, :] == v[:, None, None])
            & (alg.degrees[None, None, :] == 1 - t[None, :, None] + t[:, None, None])
        )

    def check(self) -> None:
        if self.size == 0:
            return
        alg = self.algebra
        j, i, b = np.nonzero(self.delta)
        ok = (
            (alg.src[b] == self.vertices[i])
            & (alg.tgt[b] == self.vertices[j])
            & (alg.degrees[b] == 1 - self.shifts[i] + self.shifts[j])
        )
        if not ok.all():
            k = int(np.argmin(ok))
            raise WrongDegree(
                f"component {alg.labels[b[k]]} from summand {i[k]} to {j[k]} has the wrong degree or endpoints"
            )
        sq = alg.mat_mul(self.delta, self.delta)
        if np.any(sq != 0):
            j, i, _ = (int(x[0]) for x in np.nonzero(sq != 0))
            raise MaurerCartanViolation(f"delta^2 != 0 between summands {i} and {j}", int(self.shifts[i]))

    # -- basic data --------------------------------------------------------
    @property
    def field(self):
        return self.algebra.field

    @property
    def size(self) -> int:
        return len(self.vertices)

    def is_zero(self) -> bool:
        return self.size == 0

    def summands(self) -> list[tuple[int, int]]:
        return list(zip(self.vertices.tolist(), self.shifts.tolist()))

    def to_json(self) -> dict:
        """Summands as ``[vertex label, shift]``; components as ``[target, source, [[basis label, coef], ...]]``."""
        alg = self.algebra
        fld = alg.field
        comps = []
        for j, i in zip(*np.nonzero(self.delta.any(axis=2))):
            terms = [[alg.labels[b], fld.format(self.delta[j, i, b])] for b in np.nonzero(self.delta[j, i])[0]]
            comps.append([int(j), int(i), terms])
        return {
            "field": fld.name,
            "summands": [[alg.vertex_labels[v], int(t)] for v, t in self.summands()],
            "differential": comps,
        }

    def support_key(self) -> tuple:
        """Sorted multiset of ``(vertex, shift)``; equal for isomorphic minimal objects."""
        return tuple(sorted(self.summands()))

    def is_minimal(self) -> bool:
        return not self.invertible_entries().any()

    def invertible_entries(self) -> np.ndarray:
        """Mask (n, n) of components that are nonzero scalar multiples of an idempotent."""
        if self.size == 0:
            return np.zeros((0, 0), dtype=bool)
        idem = np.asarray(self.algebra.idempotents)[self.vertices]
        coeff = self.delta[:, np.arange(self.size), idem]  # coeff[j, i] = coeff of e_{v_i} in delta[j, i]
        same = self.vertices[:, None] == self.vertices[None, :]
        return same & (coeff != 0)

    # -- positional view ---------------------------------------------------
    @cached_property
    def positions(self) -> np.ndarray:
        """Position of each summand; components only go from lower to higher positions."""
        if self._positions is not None:
            return self._positions
        n = self.size
        adj = self.delta.any(axis=2)  # adj[j, i]: i -> j
        # longest path to a sink, computed by repeated relaxation (Bellman-Ford style)
        depth = np.zeros(n, dtype=np.int64)
        for _ in range(n + 1):
            new = depth.copy()
            for j, i in zip(*np.nonzero(adj)):
                new[i] = max(new[i], depth[j] + 1)
            if np.array_equal(new, depth):
                return -depth
            depth = new
        raise InvariantViolation("differential has a cycle; no one-sided presentation exists")

    def position_shifts(self) -> np.ndarray:
        """Shift of each summand inside its position (``P_v[u]`` sits at position ``p`` with ``t = u - p``)."""
        return self.shifts + self.positions

    def alphas(self) -> dict:
        """``{(i, j): (rows, cols, block)}`` for positions ``i < j``."""
        pos = self.positions
        out = {}
        for i in sorted(set(pos.tolist())):
            for j in sorted(set(pos.tolist())):
                if i >= j:
                    continue
                cols = np.nonzero(pos == i)[0]
                rows = np.nonzero(pos == j)[0]
                block = self.delta[np.ix_(rows, cols)]
                if block.any():
                    out[(i, j)] = (rows, cols, block)
        return out

    def __repr__(self) -> str:
        parts = [f"P{self.algebra.vertex_labels[v]}[{t}]" for v, t in self.summands()]
        return f"TwistedComplex({', '.join(parts) or '0'})"

    def describe(self) -> str:
        return " + ".join(f"P{self.algebra.vertex_labels[v]}[{t}]" for v, t in self.summands()) or "0"


@dataclass(frozen=True, eq=False)
class Morphism:
    """A homogeneous morphism of degree ``degree`` between twisted complexes.

    ``matrix[r, s]`` is the algebra element from source summand ``s`` to
    target summand ``r``; its internal degree is ``degree - t_s + t_r``.
    """

    source: TwistedComplex
    target: TwistedComplex
    degree: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise AlgebraMismatch("morphism between objects over different algebras")
        shape = (self.target.size, self.source.size, self.source.algebra.dim)
        if self.matrix.shape != shape:
            raise ValueError(f"matrix has shape {self.matrix.shape}, expected {shape}")
        alg = self.source.algebra
        v, t = self.source.vertices, self.source.shifts
        w, u = self.target.vertices, self.target.shifts
        ok = (
            (alg.src[None, None, :] == v[None, :, None])
            & (alg.tgt[None, None, :] == w[:, None, None])
            & (alg.degrees[None, None, :] == self.degree - t[None, :, None] + u[:, None, None])
        )
        if np.any((self.matrix != 0) & ~ok):
            raise WrongDegree(f"morphism entries are not of degree {self.degree}")

    @property
    def algebra(self) -> GradedAlgebra:
        return self.source.algebra

    def differential(self) -> np.ndarray:
        """``D(f) = delta_N f - (-1)^n f delta_M``."""
        alg = self.algebra
        left = alg.mat_mul(self.target.delta, self.matrix)
        right = alg.mat_mul(self.matrix, self.source.delta)
        if self.degree % 2 == 0:
            return alg.field.reduce(left - right)
        return alg.field.reduce(left + right)

    def is_closed(self) -> bool:
        return not np.any(self.differential() != 0)

    def compose(self, first: "Morphism") -> "Morphism":
        """``self`` after ``first``."""
        if first.target is not self.source and first.target.support_key() != self.source.support_key():
            raise ValueError("morphisms are not composable")
        return Morphism(first.source, self.target, self.degree + first.degree, self.algebra.mat_mul(self.matrix, first.matrix))

    def components(self) -> dict:
        """Blocks by position: ``(k, l, q) -> matrix`` with ``q`` the degree of the block."""
        ps, pt = self.source.positions, self.target.positions
        out = {}
        for k in sorted(set(ps.tolist())):
            for l in sorted(set(pt.tolist())):
                cols = np.nonzero(ps == k)[0]
                rows = np.nonzero(pt == l)[0]
                block = self.matrix[np.ix_(rows, cols)]
                if block.any():
                    # p = q + l - k
                    out[(k, l, self.degree - l + k)] = block
        return out


def shift(x: TwistedComplex, n: int) -> TwistedComplex:
    """``x[n]``: every summand shifts by ``n``; the differential picks up ``(-1)^n``."""
    if n == 0:
        return x
    delta = x.delta if n % 2 == 0 else x.field.reduce(-x.delta)
    return TwistedComplex(x.algebra, x.vertices, x.shifts + n, delta, check=False)


def direct_sum(*objs: TwistedComplex) -> TwistedComplex:
    if not objs:
        raise ValueError("direct_sum needs at least one object")
    alg = objs[0].algebra
    for o in objs:
        if o.algebra is not alg:
            raise AlgebraMismatch("direct sum of objects over different algebras")
    return block_object(alg, [(o, None) for o in objs], {})


def block_object(alg: GradedAlgebra, parts, maps: dict, check: bool = True) -> TwistedComplex:
    """Assemble an object from blocks.

    ``parts`` lists ``(object, sign)`` pairs (sign ``None`` means keep the
    differential as is, ``-1`` negates it). ``maps[(a, b)]`` is a plain
    component matrix from part ``a`` to part ``b``.
    """
    fld = alg.field
    sizes = [p[0].size for p in parts]
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    n = int(offsets[-1])
    delta = fld.zeros((n, n, alg.dim))
    for k, (obj, sign) in enumerate(parts):
        sl = slice(offsets[k], offsets[k + 1])
        delta[sl, sl] = obj.delta if sign in (None, 1) else fld.reduce(-obj.delta)
    for (a, b), mat in maps.items():
        delta[offsets[b] : offsets[b + 1], offsets[a] : offsets[a + 1]] = mat
    verts = np.concatenate([p[0].vertices for p in parts]) if parts else []
    shifts = np.concatenate([p[0].shifts for p in parts]) if parts else []
    return TwistedComplex(alg, verts, shifts, delta, check=check)


def dg_cone(f: Morphism) -> TwistedComplex:
    """Cone of a closed degree-0 map: ``M[1] + N`` with differential ``[[-d_M, 0], [f, d_N]]``."""
    if f.degree != 0:
        raise WrongDegree(f"cone needs a degree-0 morphism, got degree {f.degree}")
    if not f.is_closed():
        raise NotClosed("cone of a morphism that is not closed")
    src = shift(f.source, 1)
    return block_object(f.algebra, [(src, None), (f.target, None)], {(0, 1): f.matrix})


def identity(x: TwistedComplex) -> Morphism:
    fld = x.field
    m = fld.zeros((x.size, x.size, x.algebra.dim))
    idem = np.asarray(x.algebra.idempotents)[x.vertices]
    m[np.arange(x.size), np.arange(x.size), idem] = fld(1)
    return Morphism(x, x, 0, m)


@dataclass(frozen=True)
class Convolution:
    """Explicit realisation of a twisted complex as a single dg-module.

    ``summands`` lists ``(vertex, total shift)`` and ``differential`` is the
    square-zero matrix acting by left multiplication.
    """

    summands: tuple
    differential: np.ndarray


def convolve(x: TwistedComplex) -> Convolution:
    x.check()
    return Convolution(tuple(x.summands()), x.delta)


def from_positions(alg: GradedAlgebra, positions: dict, alphas: dict) -> TwistedComplex:
    """Build from the positional view.

    ``positions[i]`` is a list of ``(vertex index, shift)``; ``alphas[(i, j)]``
    an array (len(pos j), len(pos i), dim) for ``i < j``.
    """
    order = sorted(positions)
    offsets = {}
    verts, shifts, pos = [], [], []
    for i in order:
        offsets[i] = len(verts)
        for v, u in positions[i]:
            verts.append(v)
            shifts.append(u - i)
            pos.append(i)
    n = len(verts)
    fld = alg.field
    delta = fld.zeros((n, n, alg.dim))
    for (i, j), block in alphas.items():
        if i not in positions or j not in positions:
            raise WrongDegree(f"alpha ({i},{j}) refers to an empty position")
        if i >= j:
            raise WrongDegree(f"alpha ({i},{j}) must go from a lower to a higher position")
        block = np.asarray(block)
        ri, ci = offsets[j], offsets[i]
        delta[ri : ri + len(positions[j]), ci : ci + len(positions[i])] = block
    return TwistedComplex(alg, verts, shifts, delta, positions=pos)
