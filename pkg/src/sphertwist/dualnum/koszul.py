"""Koszul duality with K[q] and the classification of modules into B_n summands.

A module ``M`` goes to the free K[q]-complex ``M ⊗ K[q]`` (``deg q = 1 - d``)
with differential ``d ⊗ 1 + (-1)^((d+1)|m|) eps ⊗ q``. Its cohomology is a
direct sum of copies of ``K[q]`` and ``K[q]/q^n``, read off from a Smith form.
A torsion summand ``K[q]/q^n`` generated in degree ``a`` corresponds to
``B_n[n(d-1) + 1 - a]`` and a free summand generated in degree ``a`` to
``B_0[-a]``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from ..errors import InvariantViolation
from ..linalg import Poly, poly_matmul, smith_normal_form_poly
from .module import ADModule


@dataclass(frozen=True)
class KoszulComplex:
    """Free K[q]-module with basis in ``degrees`` and a differential over K[q].

    ``matrix[i][j]`` is the coefficient of basis ``i`` in the image of basis ``j``.
    """

    field: object
    gen_degree: int
    degrees: tuple
    matrix: tuple

    def check(self) -> None:
        sq = poly_matmul(self.matrix, self.matrix, self.field, self.gen_degree)
        for i, row in enumerate(sq):
            for j, e in enumerate(row):
                if not e.is_zero():
                    raise InvariantViolation("Koszul differential does not square to zero", self.degrees[j])

    def cohomology(self) -> "KoszulCohomology":
        return koszul_cohomology(self)

    @property
    def rank(self) -> int:
        return len(self.degrees)


@dataclass(frozen=True)
class KoszulCohomology:
    """``free`` lists generator degrees of ``K[q]`` summands; ``torsion`` lists ``(n, degree)``."""

    free: tuple
    torsion: tuple


@dataclass(frozen=True)
class DecompositionReport:
    summands: tuple  # sorted (n, shift) with repetition

    @property
    def compact(self) -> bool:
        return all(n != 0 for n, _ in self.summands)

    def multiplicities(self) -> list[tuple[int, int, int]]:
        """Sorted ``(n, shift, multiplicity)`` triples."""
        c = Counter(self.summands)
        return [(n, s, c[(n, s)]) for n, s in sorted(c, key=lambda k: (-k[0], -k[1]))]

    def to_json(self) -> dict:
        return {"summands": [list(t) for t in self.multiplicities()], "compact": self.compact}

    def format(self) -> str:
        body = ", ".join(f"({n},{s})x{m}" for n, s, m in self.multiplicities())
        return f"{body or 'empty'}; compact: {'true' if self.compact else 'false'}"

    def __eq__(self, other):
        if isinstance(other, DecompositionReport):
            return self.summands == other.summands
        return NotImplemented

    def __hash__(self):
        return hash(self.summands)


def koszul_dual(m: ADModule) -> KoszulComplex:
    fld, d = m.field, m.d
    g = 1 - d
    n = m.dim
    deg = m.degrees
    zero = Poly(fld, (), g)
    mat = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            coeffs = {}
            if m.differential[i, j] != 0:
                coeffs[0] = m.differential[i, j]
            if m.epsilon[i, j] != 0:
                theta = 1 if ((d + 1) * int(deg[j])) % 2 == 0 else -1
                coeffs[1] = coeffs.get(1, 0) + theta * m.epsilon[i, j]
            if coeffs:
                mat[i][j] = Poly.make(fld, coeffs, g)
    kc = KoszulComplex(fld, g, tuple(int(x) for x in deg), tuple(tuple(r) for r in mat))
    kc.check()
    return kc


def _homogeneous_degree(column, degrees, g) -> int:
    for k, e in enumerate(column):
        if not e.is_zero():
            if not e.is_monomial():
                raise InvariantViolation("Smith form lost homogeneity")
            return degrees[k] + e.terms[0][0] * g
    raise InvariantViolation("zero column in an invertible matrix")


def _cohomology_block(kc: KoszulComplex, rows: list[int], cols: list[int]):
    """Torsion generators and (kernel degrees, image-generator degrees) for one block."""
    g = kc.gen_degree
    sub = [[kc.matrix[i][j] for j in cols] for i in rows]
    sf = smith_normal_form_poly(sub, kc.field, g)
    rdeg = [kc.degrees[i] for i in rows]
    cdeg = [kc.degrees[j] for j in cols]
    r = sum(1 for e in sf.diagonal if not e.is_zero())
    torsion, image_gens = [], []
    for i in range(r):
        w_deg = _homogeneous_degree([sf.u_inv[k][i] for k in range(len(rows))], rdeg, g)
        image_gens.append(w_deg)
        f = sf.diagonal[i]
        if f.degree > 0:
            if not f.is_monomial():
                raise InvariantViolation(f"unexpected invariant factor {f}")
            torsion.append((f.degree, w_deg))
    kernel = [_homogeneous_degree([sf.v[k][j] for k in range(len(cols))], cdeg, g) for j in range(r, len(cols))]
    return torsion, kernel, image_gens


def koszul_cohomology(kc: KoszulComplex) -> KoszulCohomology:
    n = kc.rank
    idx = list(range(n))
    if kc.gen_degree != 0:
        torsion, kernel, image = _cohomology_block(kc, idx, idx)
    else:
        # deg q = 0: the complex splits by degree; treat each map M_k -> M_{k+1} separately
        torsion, kernel, image = [], [], []
        for k in sorted(set(kc.degrees)):
            src = [i for i in idx if kc.degrees[i] == k]
            tgt = [i for i in idx if kc.degrees[i] == k + 1]
            if tgt:
                t, ker, im = _cohomology_block(kc, tgt, src)
                torsion += t
                kernel += ker
                image += im
            else:
                kernel += [k] * len(src)
    free = Counter(kernel) - Counter(image)
    if sum((Counter(image) - Counter(kernel)).values()):
        raise InvariantViolation("image generators are not contained in the kernel")
    return KoszulCohomology(tuple(sorted(free.elements())), tuple(sorted(torsion)))


def decompose(m: ADModule) -> DecompositionReport:
    """Multiset of ``(n, shift)`` with ``m`` quasi-isomorphic to the sum of ``B_n[shift]``."""
    coh = koszul_dual(m).cohomology()
    d = m.d
    out = [(0, -a) for a in coh.free]
    out += [(n, n * (d - 1) + 1 - a) for n, a in coh.torsion]
    return DecompositionReport(tuple(sorted(out)))


def is_compact(m: ADModule) -> bool:
    return decompose(m).compact


def report_from_json(data) -> DecompositionReport:
    if isinstance(data, str):
        data = json.loads(data)
    out = []
    for n, s, mult in data["summands"]:
        out += [(int(n), int(s))] * int(mult)
    return DecompositionReport(tuple(sorted(out)))


def expected_report(summands) -> DecompositionReport:
    return DecompositionReport(tuple(sorted((int(n), int(s)) for n, s in summands)))


__all__ = [
    "DecompositionReport",
    "KoszulCohomology",
    "KoszulComplex",
    "decompose",
    "expected_report",
    "is_compact",
    "koszul_cohomology",
    "koszul_dual",
    "report_from_json",
]
