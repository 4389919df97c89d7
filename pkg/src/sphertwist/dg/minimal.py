"""Gaussian elimination of contractible summands, and isomorphism testing of minimal objects."""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from ..linalg import PrimeField, rank
from .homcx import hom_complex
from .objects import Morphism, TwistedComplex, shift


def minimize(x: TwistedComplex) -> TwistedComplex:
    """Remove pairs of summands joined by an invertible component until none remain.

    Eliminating the component ``c * e_v`` from summand ``s`` to summand ``t``
    replaces the differential on the remaining summands by
    ``delta - delta[:, s] * c^-1 * delta[t, :]``; the result is homotopy
    equivalent to the input. The pivot with the smallest ``(s, t)`` goes
    first. The differential is kept as a sparse map from index pairs to
    algebra elements, since elimination touches few entries.
    """
    alg = x.algebra
    fld = alg.field
    if x.size == 0 or x.is_minimal():
        return x
    prime = isinstance(fld, PrimeField)
    verts = x.vertices.tolist()
    idem = [alg.idempotents[v] for v in verts]
    entries: dict[tuple[int, int], np.ndarray] = {}
    into = defaultdict(set)  # into[t] = sources with a component into t
    out_of = defaultdict(set)  # out_of[s] = targets of components leaving s
    for j, i in zip(*(a.tolist() for a in np.nonzero(x.delta.any(axis=2)))):
        entries[(j, i)] = x.delta[j, i].copy()
        into[j].add(i)
        out_of[i].add(j)

    def pivot_coeff(t, s):
        v = entries.get((t, s))
        if v is None or verts[s] != verts[t]:
            return 0
        return v[idem[s]]

    heap = [(i, j) for (j, i) in entries if pivot_coeff(j, i) != 0]
    heapq.heapify(heap)
    alive = [True] * x.size
    while heap:
        s, t = heapq.heappop(heap)
        if not (alive[s] and alive[t]):
            continue
        c = pivot_coeff(t, s)
        if c == 0:
            continue
        c_inv = fld.inv(c)
        col = [(j, entries[(j, s)]) for j in out_of[s] if j not in (s, t)]
        row = [(i, entries[(t, i)]) for i in into[t] if i not in (s, t)]
        for k in (s, t):
            alive[k] = False
            for i in into.pop(k, ()):
                entries.pop((k, i), None)
                out_of[i].discard(k)
            for j in out_of.pop(k, ()):
                entries.pop((j, k), None)
                into[j].discard(k)
        for j, a in col:
            for i, b in row:
                prod = alg.mul_vec(a, b)
                if not np.any(prod != 0):
                    continue
                new = entries.get((j, i), 0) - c_inv * prod
                if prime:
                    new = np.mod(new, fld.p)
                if np.any(new != 0):
                    entries[(j, i)] = new
                    into[j].add(i)
                    out_of[i].add(j)
                    if verts[i] == verts[j] and new[idem[i]] != 0:
                        heapq.heappush(heap, (i, j))
                elif (j, i) in entries:
                    del entries[(j, i)]
                    into[j].discard(i)
                    out_of[i].discard(j)
    keep = [k for k in range(x.size) if alive[k]]
    where = {k: n for n, k in enumerate(keep)}
    delta = fld.zeros((len(keep), len(keep), alg.dim))
    for (j, i), v in entries.items():
        delta[where[j], where[i]] = v
    return TwistedComplex(alg, x.vertices[keep], x.shifts[keep], delta)


@dataclass(frozen=True)
class ShiftIsomorphism:
    """``target`` is isomorphic to ``source[shift]`` via ``morphism: source[shift] -> target``."""

    shift: int
    morphism: Morphism


def _scalar_blocks(m: np.ndarray, src: TwistedComplex, tgt: TwistedComplex) -> list[np.ndarray]:
    """Idempotent coefficients of a degree-0 map, grouped by summand class ``(vertex, shift)``."""
    alg = src.algebra
    idem = np.asarray(alg.idempotents)
    blocks = []
    for key in sorted(set(src.summands())):
        cols = [i for i, k in enumerate(src.summands()) if k == key]
        rows = [j for j, k in enumerate(tgt.summands()) if k == key]
        e = idem[key[0]]
        blocks.append(m[np.ix_(rows, cols)][:, :, e])
    return blocks


def is_invertible_degree_zero(f: Morphism) -> bool:
    """A degree-0 map between minimal objects is invertible iff its idempotent part is.

    The remaining components have positive internal degree and so lie in a
    nilpotent ideal.
    """
    if f.degree != 0 or f.source.support_key() != f.target.support_key():
        return False
    fld = f.algebra.field
    return all(b.shape[0] == b.shape[1] and rank(fld, b) == b.shape[0] for b in _scalar_blocks(f.matrix, f.source, f.target))


def iso_up_to_shift(x: TwistedComplex, y: TwistedComplex, trials: int = 6, seed: int = 0) -> ShiftIsomorphism | None:
    """Find ``l`` with ``y ≅ x[l]``, together with an explicit closed invertible map.

    For minimal objects the summand multisets must agree after shifting,
    which pins down ``l``. The closed degree-0 maps then form a linear space;
    a random element of it is invertible as soon as any element is (the
    failure probability over GF(32003) is below ``(n/p)**trials``).
    """
    if not x.is_minimal():
        x = minimize(x)
    if not y.is_minimal():
        y = minimize(y)
    if x.algebra is not y.algebra or x.size != y.size:
        return None
    fld = x.field
    if x.size == 0:
        return ShiftIsomorphism(0, Morphism(x, y, 0, fld.zeros((0, 0, x.algebra.dim))))
    l = int(y.shifts.min() - x.shifts.min())
    xs = shift(x, l)
    if xs.support_key() != y.support_key():
        return None
    h = hom_complex(xs, y)
    z = h.cocycles(0)
    if z.shape[1] == 0:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        coeffs = fld.random(rng, z.shape[1], -50, 51) if not isinstance(fld, PrimeField) else fld.array(rng.integers(0, fld.p, size=z.shape[1]))
        v = fld.matmul(z, coeffs)
        f = h.to_morphism(v, 0)
        if is_invertible_degree_zero(f):
            if not f.is_closed():  # audit: the kernel solve must give a cocycle
                raise AssertionError("closed-map solve produced a non-closed map")
            return ShiftIsomorphism(l, f)
    return None


def isomorphic(x: TwistedComplex, y: TwistedComplex) -> bool:
    """Isomorphism with no shift."""
    r = iso_up_to_shift(x, y)
    return r is not None and r.shift == 0
