"""Zig-zag algebras of finite multigraphs: the concrete model category.

Every vertex projective of a zig-zag algebra is 2-spherical, with the loop at
the vertex serving as a strictly square-zero degree-2 endomorphism.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .dg.algebra import GradedAlgebra
from .dg.objects import TwistedComplex
from .errors import LoopEdge, SchemaError
from .linalg import Field, default_field


@dataclass(frozen=True)
class MultiGraph:
    vertices: tuple
    edges: tuple  # tuple of (v, w) pairs, possibly repeated

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise SchemaError("duplicate vertex labels")
        vs = set(self.vertices)
        for v, w in self.edges:
            if v not in vs or w not in vs:
                raise SchemaError(f"edge ({v}, {w}) uses an unknown vertex")
            if v == w:
                raise LoopEdge(f"loop at vertex {v}")

    @classmethod
    def make(cls, vertices, edges) -> "MultiGraph":
        return cls(tuple(vertices), tuple((e[0], e[1]) for e in edges))

    def multiplicity(self, v, w) -> int:
        return sum(1 for e in self.edges if set(e) == {v, w} and v != w)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data) -> "MultiGraph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            vertices = data["vertices"]
            edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise SchemaError("graph JSON needs 'vertices' and 'edges'") from exc
        if not isinstance(vertices, list) or not isinstance(edges, list):
            raise SchemaError("'vertices' and 'edges' must be lists")
        for e in edges:
            if not isinstance(e, list) or len(e) != 2:
                raise SchemaError(f"bad edge {e!r}")
        return cls.make(vertices, edges)

    def canonical_key(self) -> tuple:
        """Invariant under relabelling: the least sorted edge list over vertex permutations."""
        n = len(self.vertices)
        index = {v: i for i, v in enumerate(self.vertices)}
        best = None
        for perm in itertools.permutations(range(n)):
            es = sorted(tuple(sorted((perm[index[v]], perm[index[w]]))) for v, w in self.edges)
            key = (n, tuple(es))
            if best is None or key < best:
                best = key
        return best


class ZigZagAlgebra(GradedAlgebra):
    """Zig-zag algebra of a multigraph; keeps the graph and named basis indices."""

    graph: MultiGraph

    def loop(self, v) -> int:
        return self.labels.index(f"l{v}")

    def idempotent(self, v) -> int:
        return self.labels.index(f"e{v}")


def build_zigzag(g: MultiGraph, fld: Field | None = None) -> ZigZagAlgebra:
    """Basis: idempotents ``e<v>``, arrows ``a<k>`` / ``a<k>*`` per edge, loops ``l<v>``.

    A round trip along the same edge equals the loop at its start; every other
    product of two positive-degree elements vanishes.
    """
    fld = fld or default_field()
    if not g.vertices:
        raise SchemaError("graph has no vertices")
    vidx = {v: i for i, v in enumerate(g.vertices)}
    labels, degrees, src, tgt = [], [], [], []
    for v in g.vertices:
        labels.append(f"e{v}")
        degrees.append(0)
        src.append(vidx[v])
        tgt.append(vidx[v])
    arrows = []
    for k, (v, w) in enumerate(g.edges):
        fwd, back = len(labels), len(labels) + 1
        labels += [f"a{k}", f"a{k}*"]
        degrees += [1, 1]
        src += [vidx[v], vidx[w]]
        tgt += [vidx[w], vidx[v]]
        arrows.append((fwd, back))
    loops = {}
    for v in g.vertices:
        loops[vidx[v]] = len(labels)
        labels.append(f"l{v}")
        degrees.append(2)
        src.append(vidx[v])
        tgt.append(vidx[v])

    dim = len(labels)
    unit = np.eye(dim, dtype=np.int64)
    products = {}
    for b in range(dim):
        products[(tgt[b], b)] = unit[b]  # e_w * b
        products[(b, src[b])] = unit[b]  # b * e_v
    for fwd, back in arrows:
        products[(back, fwd)] = unit[loops[src[fwd]]]  # there and back: loop at the start
        products[(fwd, back)] = unit[loops[src[back]]]
    pairing = np.zeros((dim, dim), dtype=np.int64)
    loop_idx = list(loops.values())
    for (x, y), vec in products.items():
        pairing[x, y] = vec[loop_idx].sum()

    alg = ZigZagAlgebra(
        fld,
        labels,
        degrees,
        products,
        idempotents=list(range(len(g.vertices))),
        pairing=pairing,
        cy_dimension=2,
        vertex_labels=list(g.vertices),
    )
    alg.graph = g
    return alg


def projective(alg: GradedAlgebra, v, shift: int = 0) -> TwistedComplex:
    return TwistedComplex.projective(alg, alg.vertex_index(v), shift)


def projective_spherical(alg: ZigZagAlgebra, v, shift: int = 0):
    """The vertex projective with its loop as the square-zero degree-2 endomorphism."""
    from .spherical import SphericalObject

    obj = projective(alg, v, shift)
    eps = alg.field.zeros((1, 1, alg.dim))
    eps[0, 0, alg.loop(v)] = alg.field(1)
    return SphericalObject.make(obj, 2, eps)


# -- corpora -------------------------------------------------------------------

CANONICAL_GRAPHS = {
    "edge": MultiGraph.make([1, 2], [[1, 2]]),
    "double-edge": MultiGraph.make([1, 2], [[1, 2], [1, 2]]),
    "disjoint-pair": MultiGraph.make([1, 2], []),
}


@dataclass(frozen=True)
class CorpusEntry:
    """A graph plus descriptors of the objects to use on it.

    Descriptors are ``("P", v)`` for a vertex projective and ``("T", v, w)``
    for the single twist of ``P_w`` along ``P_v``.
    """

    name: str
    graph: MultiGraph
    objects: tuple


def _objects_for(g: MultiGraph) -> tuple:
    objs = [("P", v) for v in g.vertices]
    objs += [("T", v, w) for v in g.vertices for w in g.vertices if v != w and g.multiplicity(v, w) > 0]
    return tuple(objs)


def corpus(seed: int = 0, max_vertices: int = 4, max_edges: int = 5, count: int = 10) -> list[CorpusEntry]:
    """Deterministic pseudo-random graphs, always starting with the three canonical ones."""
    rng = np.random.default_rng(seed)
    out = [CorpusEntry(name, g, _objects_for(g)) for name, g in CANONICAL_GRAPHS.items()]
    for i in range(count):
        n = int(rng.integers(1, max_vertices + 1))
        verts = list(range(1, n + 1))
        pairs = list(itertools.combinations(verts, 2))
        m = int(rng.integers(0, max_edges + 1)) if pairs else 0
        edges = [list(pairs[int(j)]) for j in rng.integers(0, len(pairs), size=m)] if pairs else []
        g = MultiGraph.make(verts, edges)
        out.append(CorpusEntry(f"random-{seed}-{i}", g, _objects_for(g)))
    return out


def all_multigraphs(max_vertices: int, max_edges: int) -> list[MultiGraph]:
    """Every loopless multigraph with 1..max_vertices vertices and at most
    ``max_edges`` edges, one per isomorphism class, in a fixed order."""
    seen = {}
    for n in range(1, max_vertices + 1):
        verts = list(range(1, n + 1))
        pairs = list(itertools.combinations(verts, 2))
        for m in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(range(len(pairs)), m) if pairs or m == 0 else []:
                g = MultiGraph.make(verts, [pairs[c] for c in combo])
                key = g.canonical_key()
                if key not in seen:
                    seen[key] = g
    return [seen[k] for k in sorted(seen)]


def edge_counts(g: MultiGraph) -> Counter:
    return Counter(tuple(sorted(e, key=str)) for e in g.edges)


__all__ = [
    "CANONICAL_GRAPHS",
    "CorpusEntry",
    "MultiGraph",
    "ZigZagAlgebra",
    "all_multigraphs",
    "build_zigzag",
    "corpus",
    "edge_counts",
    "projective",
    "projective_spherical",
]
