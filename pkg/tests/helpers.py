"""Shared builders for the test suites."""

import numpy as np

from sphertwist.dg import Morphism, direct_sum, hom_complex, shift
from sphertwist.dualnum import contractible_pair, make_B, random_degree_preserving, zero_module
from sphertwist.dualnum import direct_sum as module_sum
from sphertwist.linalg import rank
from sphertwist.spherical import twist_power
from sphertwist.zigzag import CANONICAL_GRAPHS, MultiGraph, build_zigzag, projective, projective_spherical

GRAPHS = {
    **CANONICAL_GRAPHS,
    "path3": MultiGraph.make([1, 2, 3], [[1, 2], [2, 3]]),
    "triangle": MultiGraph.make([1, 2, 3], [[1, 2], [2, 3], [1, 3]]),
}

_ALGEBRAS = {}


def algebra(name, fld=None):
    key = (name, None if fld is None else fld.name)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = build_zigzag(GRAPHS[name], fld)
    return _ALGEBRAS[key]


def spheres(alg):
    return {v: projective_spherical(alg, v) for v in alg.graph.vertices}


def random_object(alg, rng, twists=2, summands=1):
    """A sum of shifted projectives moved around by a few random twist powers."""
    verts = list(alg.graph.vertices)
    sph = spheres(alg)
    parts = []
    for _ in range(summands):
        x = projective(alg, verts[int(rng.integers(len(verts)))], int(rng.integers(-2, 3)))
        for _ in range(int(rng.integers(0, twists + 1))):
            v = verts[int(rng.integers(len(verts)))]
            x = twist_power(sph[v], int(rng.choice([-1, 1])), x)
        parts.append(x)
    return direct_sum(*parts) if len(parts) > 1 else parts[0]


def random_closed_map(x, y, rng, degree=0):
    """A random closed map of the given degree, or None when there is none."""
    h = hom_complex(x, y)
    z = h.cocycles(degree)
    if z.shape[1] == 0:
        return None
    fld = x.field
    v = fld.matmul(z, fld.array(rng.integers(-3, 4, size=z.shape[1])))
    return h.to_morphism(v, degree)


def induced_ranks(g, f):
    """Rank of ``f_*: H^n Hom(g, M) -> H^n Hom(g, N)`` for every n, computed on cocycles."""
    m, n = f.source, f.target
    x = direct_sum(m, n)
    fld = x.field
    big = fld.zeros((x.size, x.size, x.algebra.dim))
    big[m.size :, : m.size] = f.matrix
    h = hom_complex(g, x)
    post = h.postcompose_matrix(big)
    out = {}
    for deg in sorted(set(h.degrees.tolist())):
        z = h.cocycles(deg)
        b = h.coboundaries(deg)
        img = fld.matmul(post, z) if z.shape[1] else fld.zeros((h.dim, 0))
        both = np.concatenate([b, img], axis=1)
        out[deg] = (rank(fld, both) if both.size else 0) - (rank(fld, b) if b.size else 0)
    return out


def scrambled(summands, d, fld, rng, pads=2):
    """Sum of B_n[s], conjugated by a random degree-0 automorphism and padded with acyclic pieces."""
    parts = [make_B(n, s, d, fld) for n, s in summands]
    for _ in range(pads):
        deg = int(rng.integers(-4, 5))
        parts.append(contractible_pair(deg, d, fld, free=bool(rng.integers(2))))
    m = module_sum(*parts) if parts else zero_module(d, fld)
    if m.dim == 0:
        return m
    order = rng.permutation(m.dim)
    m = m.permute(order)
    return m.conjugate(random_degree_preserving(fld, m.degrees, rng))


__all__ = ["GRAPHS", "Morphism", "algebra", "induced_ranks", "random_closed_map", "random_object", "scrambled", "shift", "spheres"]
