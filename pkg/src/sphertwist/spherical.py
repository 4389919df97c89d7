"""Spherical objects, their twists, and intersection numbers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dg import (
    HomComplex,
    Morphism,
    TwistedComplex,
    block_object,
    dg_cone,
    direct_sum,
    hom_complex,
    hom_total_dim,
    iso_up_to_shift,
    minimize,
    shift,
)
from .dualnum import ADModule
from .errors import (
    AlgebraMismatch,
    InvalidParameter,
    InvariantViolation,
    NoStrictRepresentative,
    NotClosed,
    NotDistinct,
    PreconditionFailed,
    ZeroPower,
)
from .linalg import solve


@dataclass(frozen=True)
class IntersectionProfile:
    per_degree: dict
    total: int

    @classmethod
    def from_dims(cls, dims: dict) -> "IntersectionProfile":
        dims = {int(k): int(v) for k, v in sorted(dims.items()) if v}
        return cls(dims, sum(dims.values()))

    def to_json(self) -> list:
        return [[k, v] for k, v in sorted(self.per_degree.items())]

    def __int__(self) -> int:
        return self.total


def intersection_number(m: TwistedComplex, n: TwistedComplex) -> IntersectionProfile:
    """Dimensions of ``Hom(m, n[p])`` for all ``p``."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("objects live over different algebras")
    return IntersectionProfile.from_dims(hom_complex(m, n).cohomology_dims())


def i_total(m: TwistedComplex, n: TwistedComplex) -> int:
    """Total dimension only; cheaper than the full profile."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("objects live over different algebras")
    return hom_total_dim(m, n)


@dataclass(frozen=True, eq=False)
class SphericalObject:
    """An object whose derived endomorphisms are ``K + K[-d]``, with a square-zero degree-``d`` cocycle ``eps``."""

    obj: TwistedComplex
    d: int
    eps: np.ndarray = field(repr=False)

    @classmethod
    def make(cls, obj: TwistedComplex, d: int, eps: np.ndarray, check: bool = True) -> "SphericalObject":
        if d == 0:
            raise InvalidParameter("d must be nonzero")
        out = cls(obj, d, np.asarray(eps))
        if check:
            out.validate()
        return out

    @property
    def algebra(self):
        return self.obj.algebra

    @property
    def eps_morphism(self) -> Morphism:
        return Morphism(self.obj, self.obj, self.d, self.eps)

    def validate(self) -> None:
        cy = getattr(self.algebra, "cy_dimension", None)
        if cy is not None and cy != self.d:
            raise PreconditionFailed(f"algebra has Calabi-Yau dimension {cy}, not {self.d}")
        dims = hom_complex(self.obj, self.obj).cohomology_dims()
        if dims != _sphere_dims(self.d):
            raise InvariantViolation(f"endomorphism dims {dims} differ from {_sphere_dims(self.d)}")
        f = self.eps_morphism
        if not f.is_closed():
            raise NotClosed("eps is not closed")
        if np.any(self.algebra.mat_mul(self.eps, self.eps) != 0):
            raise InvariantViolation("eps does not square to zero", self.d)
        h = hom_complex(self.obj, self.obj)
        if h.is_coboundary(h.from_matrix(self.eps)):
            raise InvariantViolation("eps is a coboundary", self.d)

    def shift(self, n: int) -> "SphericalObject":
        return SphericalObject(shift(self.obj, n), self.d, self.eps)

    def __repr__(self) -> str:
        return f"SphericalObject({self.obj.describe()}, d={self.d})"


def _sphere_dims(d: int) -> dict:
    return {0: 1, d: 1} if d != 0 else {0: 2}


def check_spherical(x: TwistedComplex, d: int, max_rounds: int = 4) -> SphericalObject | None:
    """Return ``x`` as a spherical object if its endomorphisms are ``K + K[-d]``.

    The degree-``d`` class is represented by a cocycle ``z``. If ``z**2`` is
    not already zero, corrections ``z + D h`` are sought by solving the
    linearised equation ``z Dh + Dh z = -z**2`` a few times.
    """
    h = hom_complex(x, x)
    if h.cohomology_dims() != _sphere_dims(d):
        return None
    alg = x.algebra
    fld = alg.field
    z = h.to_morphism(h.cohomology_basis(d)[:, 0], d).matrix
    bounds = h.coboundaries(d)
    for _ in range(max_rounds + 1):
        sq = alg.mat_mul(z, z)
        if not np.any(sq != 0):
            return SphericalObject.make(x, d, z, check=False)
        if bounds.shape[1] == 0:
            break
        h2 = hom_complex(x, x)
        cols = []
        for k in range(bounds.shape[1]):
            b = h.to_morphism(bounds[:, k], d).matrix
            cols.append(h2.from_matrix(fld.reduce(alg.mat_mul(z, b) + alg.mat_mul(b, z))))
        rhs = h2.from_matrix(fld.reduce(-sq))
        sol = solve(fld, np.stack(cols, axis=1), rhs)
        if sol is None:
            break
        z = fld.reduce(z + h.to_morphism(fld.matmul(bounds, sol), d).matrix)
    raise NoStrictRepresentative("no square-zero representative of the degree-d class was found")


# -- twists ---------------------------------------------------------------------


def _source_sum(alg, e: TwistedComplex, degrees) -> TwistedComplex:
    """``⊕ e[-p]`` over the given degrees."""
    if not len(degrees):
        return TwistedComplex.zero(alg)
    return direct_sum(*(shift(e, -int(p)) for p in degrees))


def evaluation(e: TwistedComplex, m: TwistedComplex) -> Morphism:
    """``ev: ⊕_p H^p(e, m) ⊗ e[-p] -> m`` built from a cohomology basis."""
    h = hom_complex(e, m)
    alg = e.algebra
    degs, blocks = [], []
    for p, dim in sorted(h.cohomology_dims().items()):
        basis = h.cohomology_basis(p)
        for k in range(basis.shape[1]):
            degs.append(p)
            blocks.append(h.to_morphism(basis[:, k], p).matrix)
    src = _source_sum(alg, e, degs)
    mat = np.concatenate(blocks, axis=1) if blocks else alg.field.zeros((m.size, 0, alg.dim))
    return Morphism(src, m, 0, mat)


def coevaluation(m: TwistedComplex, e: TwistedComplex) -> Morphism:
    """``m -> ⊕_q H^q(m, e)^* ⊗ e`` = ``⊕ e[q]``, built from a cohomology basis."""
    h = hom_complex(m, e)
    alg = e.algebra
    degs, blocks = [], []
    for q, dim in sorted(h.cohomology_dims().items()):
        basis = h.cohomology_basis(q)
        for k in range(basis.shape[1]):
            degs.append(q)
            blocks.append(h.to_morphism(basis[:, k], q).matrix)
    tgt = direct_sum(*(shift(e, int(q)) for q in degs)) if degs else TwistedComplex.zero(alg)
    mat = np.concatenate(blocks, axis=0) if blocks else alg.field.zeros((0, m.size, alg.dim))
    return Morphism(m, tgt, 0, mat)


def twist(e: SphericalObject, m: TwistedComplex) -> TwistedComplex:
    """``T_E(M)``: the minimized cone of the evaluation map."""
    return minimize(dg_cone(evaluation(e.obj, m)))


def inverse_twist(e: SphericalObject, m: TwistedComplex) -> TwistedComplex:
    """``T_E^{-1}(M)``: the minimized cone of the coevaluation, shifted by ``-1``."""
    return minimize(shift(dg_cone(coevaluation(m, e.obj)), -1))


def _precompose_eps(h: HomComplex, eps: np.ndarray, d: int) -> np.ndarray:
    """Matrix of ``f -> (-1)^(d|f|) f . eps`` on the hom complex ``Hom(E, N)``."""
    out = h.precompose_matrix(eps)
    if d % 2:
        odd = (h.degrees % 2) == 1
        out[:, odd] = h.field.reduce(-out[:, odd])
    return out


def twist_power_convolution(e: SphericalObject, k: int, n: TwistedComplex) -> TwistedComplex:
    """``T_E^k(N)`` for ``k >= 1`` as the convolution of ``k`` copies of ``Hom(E, N) ⊗ E`` over ``N``.

    Copy ``j`` sits at total shift ``1 + j(1-d)``. Copy ``0`` maps to ``N``
    by evaluation and copy ``j`` maps to copy ``j - 1`` by
    ``f ⊗ x -> f eps ⊗ x + c_{j+1} f ⊗ eps x`` with
    ``c_i = -(-1)^(i(d+1))`` (Koszul signs included).
    """
    E, d = e.obj, e.d
    alg = E.algebra
    fld = alg.field
    h = hom_complex(E, n)
    nh, a = h.dim, E.size
    if nh == 0:
        return n
    p = h.degrees
    # W = Hom(E, N) ⊗ E: copy i is E[-p_i]
    w_vert = np.tile(E.vertices, nh)
    w_shift = np.concatenate([E.shifts - int(pi) for pi in p])
    size = nh * a
    idem = np.asarray(alg.idempotents)[E.vertices]
    w_delta = fld.zeros((size, size, alg.dim))
    x_op = fld.zeros((size, size, alg.dim))
    y_op = fld.zeros((size, size, alg.dim))
    r_prime = _precompose_eps(h, e.eps, d)
    neg_eps = fld.reduce(-e.eps)
    neg_delta = fld.reduce(-E.delta)
    for i in range(nh):
        sl = slice(i * a, (i + 1) * a)
        w_delta[sl, sl] = E.delta if int(p[i]) % 2 == 0 else neg_delta
        y_op[sl, sl] = e.eps if (d * int(p[i])) % 2 == 0 else neg_eps
    diag = np.arange(a)
    for target, source in zip(*np.nonzero(h.differential != 0)):
        w_delta[target * a + diag, source * a + diag, idem] = h.differential[target, source]
    for target, source in zip(*np.nonzero(r_prime != 0)):
        x_op[target * a + diag, source * a + diag, idem] = r_prime[target, source]
    w = TwistedComplex(alg, w_vert, w_shift, w_delta, check=False)
    ev = fld.zeros((n.size, size, alg.dim))
    ev[h.r, np.arange(nh) * a + h.s, h.b] = fld(1)  # copy i evaluates the basis map h_i
    parts = [(n, None)]
    maps = {}
    for j in range(k):
        parts.append((shift(w, 1 + j * (1 - d)), None))
        if j == 0:
            maps[(1, 0)] = ev
        else:
            c = -(1 if (((j + 1) * (d + 1)) % 2 == 0) else -1)
            maps[(j + 1, j)] = fld.reduce(x_op + c * y_op)
    return minimize(block_object(alg, parts, maps))


def twist_power(e: SphericalObject, k: int, n: TwistedComplex, method: str = "convolution") -> TwistedComplex:
    """``T_E^k(N)``. Positive powers use the convolution unless ``method="iterate"``; negative powers iterate the inverse twist."""
    if k == 0:
        raise ZeroPower("the exponent must be nonzero")
    if method not in ("convolution", "iterate"):
        raise InvalidParameter(f"unknown method {method!r}")
    if k > 0 and method == "convolution":
        return twist_power_convolution(e, k, n)
    step = twist if k > 0 else inverse_twist
    out = n
    for _ in range(abs(k)):
        out = step(e, out)
    return out


@dataclass(frozen=True)
class InequalityCheck:
    lhs: int
    rhs: int
    holds: bool


def check_fundamental_inequality(e: SphericalObject, m: TwistedComplex, n: TwistedComplex, k: int) -> InequalityCheck:
    """``i(E, M) i(E, N) <= i(T_E^k M, N) + i(M, N)``."""
    if k == 0:
        raise ZeroPower("the exponent must be nonzero")
    lhs = i_total(e.obj, m) * i_total(e.obj, n)
    rhs = i_total(twist_power(e, k, m), n) + i_total(m, n)
    return InequalityCheck(lhs, rhs, lhs <= rhs)


# -- hom complexes as modules over the dual numbers --------------------------------


def rhom_as_ad_module(e: SphericalObject, n: TwistedComplex) -> ADModule:
    """``RHom(E, N)`` as a right module, ``eps`` acting by precomposition."""
    h = hom_complex(e.obj, n)
    fld = e.algebra.field
    return ADModule(fld, e.d, h.degrees, h.differential, _precompose_eps(h, e.eps, e.d), side="right")


def rhom_as_left_ad_module(e: SphericalObject, m: TwistedComplex) -> ADModule:
    """``RHom(M, E)`` as a left module, ``eps`` acting by postcomposition."""
    h = hom_complex(m, e.obj)
    fld = e.algebra.field
    return ADModule(fld, e.d, h.degrees, h.differential, h.postcompose_matrix(e.eps), side="left")


# -- distinguishing objects --------------------------------------------------------


@dataclass(frozen=True)
class SeparatingObject:
    obj: TwistedComplex
    profile1: IntersectionProfile
    profile2: IntersectionProfile
    branch: str  # "E1", "E2" or "cone"


def separating_source(e1: SphericalObject, e2: SphericalObject) -> Morphism:
    """``Z = E1[-d] ⊕ (Hom(E2, E1) ⊗ E2) -> E1``, with ``eps`` on the first summand."""
    alg = e1.algebra
    fld = alg.field
    ev = evaluation(e2.obj, e1.obj)
    eps_part = Morphism(shift(e1.obj, -e1.d), e1.obj, 0, e1.eps)
    src = direct_sum(eps_part.source, ev.source) if ev.source.size else eps_part.source
    mat = np.concatenate([eps_part.matrix, ev.matrix], axis=1) if ev.source.size else eps_part.matrix
    f = Morphism(src, e1.obj, 0, mat)
    if not f.is_closed():
        raise NotClosed("separating map is not closed")
    return f


def build_separating_object(e1: SphericalObject, e2: SphericalObject) -> SeparatingObject:
    """An object ``S`` with ``i(E1, S) > i(E2, S)``."""
    if iso_up_to_shift(e1.obj, e2.obj) is not None:
        raise NotDistinct("the two spherical objects agree up to shift")
    i12 = i_total(e1.obj, e2.obj)
    if i12 <= 1:
        s, branch = e1.obj, "E1"
    elif i12 >= 3:
        s, branch = e2.obj, "E2"
    else:
        s, branch = minimize(dg_cone(separating_source(e1, e2))), "cone"
    p1, p2 = intersection_number(e1.obj, s), intersection_number(e2.obj, s)
    if not p1.total > p2.total:
        raise InvariantViolation(f"separating object fails: {p1.total} <= {p2.total}")
    return SeparatingObject(s, p1, p2, branch)


@dataclass(frozen=True)
class DistinctnessReport:
    """Each flag is True when the corresponding condition says "distinct"."""

    no_shift_iso: bool
    compositions_miss_identity: bool
    eps_compositions_vanish: bool

    @property
    def agree(self) -> bool:
        return self.no_shift_iso == self.compositions_miss_identity == self.eps_compositions_vanish

    @property
    def distinct(self) -> bool:
        return self.no_shift_iso and self.agree


def _class_morphisms(h: HomComplex) -> list[Morphism]:
    out = []
    for p in sorted(h.cohomology_dims()):
        out += h.cohomology_morphisms(p)
    return out


def distinctness_criteria(e1: SphericalObject, e2: SphericalObject) -> DistinctnessReport:
    alg = e1.algebra
    fld = alg.field
    cond_i = iso_up_to_shift(e1.obj, e2.obj) is None
    h12, h21 = hom_complex(e1.obj, e2.obj), hom_complex(e2.obj, e1.obj)
    g12, g21 = _class_morphisms(h12), _class_morphisms(h21)
    # (ii): no composite E_i -> E_j -> E_i of total degree 0 is a nonzero multiple of [id]
    cond_ii = True
    for first, second, h_self in ((g12, g21, hom_complex(e1.obj, e1.obj)), (g21, g12, hom_complex(e2.obj, e2.obj))):
        for f in first:
            for g in second:
                if f.degree + g.degree != 0:
                    continue
                comp = g.compose(f)
                if not h_self.is_coboundary(h_self.from_matrix(comp.matrix)):
                    cond_ii = False
    # (iii): g eps_i and eps_j g are coboundaries for every class g: E_i -> E_j
    cond_iii = True
    for classes, h, src, tgt in ((g12, h12, e1, e2), (g21, h21, e2, e1)):
        for g in classes:
            for mat in (alg.mat_mul(g.matrix, src.eps), alg.mat_mul(tgt.eps, g.matrix)):
                if not h.is_coboundary(h.from_matrix(fld.reduce(mat))):
                    cond_iii = False
    return DistinctnessReport(cond_i, cond_ii, cond_iii)


__all__ = [
    "DistinctnessReport",
    "InequalityCheck",
    "IntersectionProfile",
    "SeparatingObject",
    "SphericalObject",
    "build_separating_object",
    "check_fundamental_inequality",
    "check_spherical",
    "coevaluation",
    "distinctness_criteria",
    "evaluation",
    "i_total",
    "intersection_number",
    "inverse_twist",
    "rhom_as_ad_module",
    "rhom_as_left_ad_module",
    "separating_source",
    "twist",
    "twist_power",
    "twist_power_convolution",
]
