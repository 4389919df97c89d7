"""Corpus sweep of the inequality ``i(E,M) i(E,N) <= i(T_E^k M, N) + i(M, N)``."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .linalg import Field, default_field
from .spherical import SphericalObject, check_spherical, i_total, twist, twist_power
from .zigzag import MultiGraph, all_multigraphs, build_zigzag, projective_spherical

DEFAULT_EXPONENTS = (1, -1, 2, -2, 3, -3)


@dataclass(frozen=True)
class SweepConfig:
    max_vertices: int = 4
    max_edges: int = 5
    exponents: tuple = DEFAULT_EXPONENTS
    seed: int = 0
    # twisted objects T_{P_v}(P_w) are also used as E, not only as M and N
    twisted_sources: bool = False
    # keep only triples with i(E, M) == 0
    only_disjoint: bool = False

    def to_json(self) -> dict:
        return {
            "max_vertices": self.max_vertices,
            "max_edges": self.max_edges,
            "exponents": list(self.exponents),
            "seed": self.seed,
            "twisted_sources": self.twisted_sources,
            "only_disjoint": self.only_disjoint,
        }


@dataclass(frozen=True)
class Violation:
    graph: MultiGraph
    e: str
    m: str
    n: str
    k: int
    lhs: int
    rhs: int

    def to_json(self) -> dict:
        return {"graph": self.graph.to_json(), "E": self.e, "M": self.m, "N": self.n, "k": self.k, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class SweepSummary:
    config: SweepConfig
    graphs: int
    checks: int
    equalities: int
    max_lhs: int
    violations: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def line(self) -> str:
        return f"{self.checks} checks, {len(self.violations)} violations"

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "graphs": self.graphs,
            "checks": self.checks,
            "equalities": self.equalities,
            "max_lhs": self.max_lhs,
            "violations": [v.to_json() for v in self.violations],
        }


def object_pool(g: MultiGraph, fld: Field | None = None) -> list[tuple[str, SphericalObject]]:
    """Vertex projectives followed by the single twists ``T_{P_v}(P_w)`` along edges, all spherical."""
    alg = build_zigzag(g, fld)
    proj = {v: projective_spherical(alg, v) for v in g.vertices}
    pool = [(f"P{v}", proj[v]) for v in g.vertices]
    for v in g.vertices:
        for w in g.vertices:
            if v != w and g.multiplicity(v, w):
                sph = check_spherical(twist(proj[v], proj[w].obj), 2)
                if sph is None:  # cannot happen for twists of spherical objects
                    raise RuntimeError(f"T_P{v}(P{w}) failed the sphericity check")
                pool.append((f"T{v}(P{w})", sph))
    return pool


def _sweep_graph(g: MultiGraph, cfg: SweepConfig, fld: Field):
    pool = object_pool(g, fld)
    objs = [s.obj for _, s in pool]
    n_obj = len(pool)
    inter = np.array([[i_total(a, b) for b in objs] for a in objs])
    sources = range(n_obj) if cfg.twisted_sources else range(len(g.vertices))
    checks = equal = top = 0
    bad = []
    for e in sources:
        for m in range(n_obj):
            if cfg.only_disjoint and inter[e, m]:
                continue
            for k in cfg.exponents:
                moved = twist_power(pool[e][1], k, objs[m])
                for n in range(n_obj):
                    lhs = int(inter[e, m] * inter[e, n])
                    rhs = i_total(moved, objs[n]) + int(inter[m, n])
                    checks += 1
                    equal += lhs == rhs
                    top = max(top, lhs)
                    if lhs > rhs:
                        bad.append(Violation(g, pool[e][0], pool[m][0], pool[n][0], k, lhs, rhs))
    return checks, equal, top, bad


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SPHERTWIST_THREADS", "1")))
    except ValueError:
        return 1


def sweep(cfg: SweepConfig = SweepConfig(), fld: Field | None = None, graphs=None) -> SweepSummary:
    """Run every check; results are independent of the thread count."""
    fld = fld or default_field()
    graphs = list(graphs) if graphs is not None else all_multigraphs(cfg.max_vertices, cfg.max_edges)
    if cfg.seed:
        # the seed only permutes the processing order; the totals never depend on it
        order = np.random.default_rng(cfg.seed).permutation(len(graphs))
        graphs = [graphs[i] for i in order]
    with ThreadPoolExecutor(_threads()) as pool:
        results = list(pool.map(lambda g: _sweep_graph(g, cfg, fld), graphs))
    checks = sum(r[0] for r in results)
    equal = sum(r[1] for r in results)
    top = max((r[2] for r in results), default=0)
    bad = sorted((v for r in results for v in r[3]), key=lambda v: (v.graph.canonical_key(), v.e, v.m, v.n, v.k))
    return SweepSummary(cfg, len(graphs), checks, equal, top, tuple(bad))


__all__ = ["DEFAULT_EXPONENTS", "SweepConfig", "SweepSummary", "Violation", "object_pool", "sweep"]
