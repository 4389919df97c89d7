"""Finite-dimensional dg-modules over the graded dual numbers ``K[eps]/eps^2``."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..dg.homcx import ComplexOfGradedSpaces, GradedVectorSpace
from ..errors import InvalidParameter, InvariantViolation, SchemaError
from ..linalg import Field, PrimeField, default_field, inverse, parse_field, rank

SIDES = ("right", "left")


def _neg(fld: Field, a: np.ndarray) -> np.ndarray:
    return fld.reduce(-a)


@dataclass(frozen=True, eq=False)
class ADModule:
    """A module given on a homogeneous basis.

    ``differential`` has degree +1 and ``epsilon`` degree ``d``; both act on
    column vectors. They satisfy ``differential @ epsilon == (-1)**d *
    epsilon @ differential``. For a left module ``epsilon`` is the action
    ``m -> eps.m``; for a right module it stores ``m -> (-1)**(d|m|) m.eps``,
    which obeys the same commutation rule.
    """

    field: Field
    d: int
    degrees: np.ndarray
    differential: np.ndarray
    epsilon: np.ndarray
    side: str = "right"

    def __post_init__(self):
        if self.d == 0:
            raise InvalidParameter("the degree d of eps must be nonzero")
        if self.side not in SIDES:
            raise InvalidParameter(f"side must be one of {SIDES}")
        object.__setattr__(self, "degrees", np.asarray(self.degrees, dtype=np.int64).reshape(-1))
        n = len(self.degrees)
        for name in ("differential", "epsilon"):
            m = getattr(self, name)
            if m.shape != (n, n):
                raise InvariantViolation(f"{name} has shape {m.shape}, expected {(n, n)}")
        self._check()

    def _check(self):
        fld, deg = self.field, self.degrees
        for name, shift, m in (("differential", 1, self.differential), ("epsilon", self.d, self.epsilon)):
            rows, cols = np.nonzero(m != 0)
            bad = deg[rows] != deg[cols] + shift
            if np.any(bad):
                raise InvariantViolation(f"{name} is not homogeneous of degree {shift}", int(deg[cols[bad][0]]))
        if self.dim == 0:
            return
        for name, a, b in (("differential", self.differential, self.differential), ("epsilon", self.epsilon, self.epsilon)):
            sq = fld.matmul(a, b)
            if np.any(sq != 0):
                raise InvariantViolation(f"{name}^2 != 0", int(deg[np.nonzero(sq != 0)[1][0]]))
        de = fld.matmul(self.differential, self.epsilon)
        ed = fld.matmul(self.epsilon, self.differential)
        diff = fld.reduce(de - ed) if self.d % 2 == 0 else fld.reduce(de + ed)
        if np.any(diff != 0):
            raise InvariantViolation("eps is not closed", int(deg[np.nonzero(diff != 0)[1][0]]))

    # -- basic data --------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def space(self) -> GradedVectorSpace:
        vals, counts = np.unique(self.degrees, return_counts=True)
        return GradedVectorSpace.from_dict(dict(zip(vals.tolist(), counts.tolist())))

    def complex(self) -> ComplexOfGradedSpaces:
        return ComplexOfGradedSpaces(self.field, self.degrees, self.differential, check=False)

    def cohomology_dims(self) -> dict:
        return self.complex().cohomology_dims()

    def total_cohomology(self) -> int:
        return self.complex().total_cohomology()

    # -- constructions -----------------------------------------------------
    def with_side(self, side: str) -> "ADModule":
        return ADModule(self.field, self.d, self.degrees, self.differential, self.epsilon, side)

    def shift(self, n: int) -> "ADModule":
        """``M[n]``: degrees drop by ``n`` and the differential picks up ``(-1)^n``."""
        diff = self.differential if n % 2 == 0 else _neg(self.field, self.differential)
        return ADModule(self.field, self.d, self.degrees - n, diff, self.epsilon, self.side)

    def conjugate(self, p: np.ndarray) -> "ADModule":
        """Transport the structure along an invertible degree-preserving map ``p``."""
        fld = self.field
        rows, cols = np.nonzero(p != 0)
        if np.any(self.degrees[rows] != self.degrees[cols]):
            raise InvalidParameter("conjugating map must preserve degrees")
        pinv = inverse(fld, p)
        return ADModule(
            fld,
            self.d,
            self.degrees,
            fld.matmul(fld.matmul(p, self.differential), pinv),
            fld.matmul(fld.matmul(p, self.epsilon), pinv),
            self.side,
        )

    def permute(self, order) -> "ADModule":
        order = np.asarray(order)
        return ADModule(
            self.field,
            self.d,
            self.degrees[order],
            self.differential[np.ix_(order, order)],
            self.epsilon[np.ix_(order, order)],
            self.side,
        )

    def scale_epsilon(self, lam) -> "ADModule":
        fld = self.field
        lam = fld(lam)
        return ADModule(fld, self.d, self.degrees, self.differential, fld.reduce(self.epsilon * lam), self.side)

    # -- serialisation -----------------------------------------------------
    def to_json(self) -> dict:
        fld = self.field
        dims = {int(k): int(v) for k, v in self.space.dims}
        idx = {k: np.nonzero(self.degrees == k)[0] for k in dims}

        def blocks(m, step):
            out = {}
            for k in sorted(dims):
                if k + step in dims:
                    blk = m[np.ix_(idx[k + step], idx[k])]
                    if np.any(blk != 0):
                        out[str(k)] = [[fld.format(x) for x in row] for row in blk]
            return out

        return {
            "d": self.d,
            "side": self.side,
            "field": fld.name,
            "dims": {str(k): v for k, v in sorted(dims.items())},
            "differential": blocks(self.differential, 1),
            "epsilon": blocks(self.epsilon, self.d),
        }

    @classmethod
    def from_json(cls, data, fld: Field | None = None) -> "ADModule":
        """Read the block format; basis vectors are ordered by degree."""
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise SchemaError("module JSON must be an object")
        try:
            d = int(data["d"])
            dims = {int(k): int(v) for k, v in data.get("dims", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad module header: {exc}") from exc
        if d == 0:
            raise InvalidParameter("the degree d of eps must be nonzero")
        if fld is None:
            fld = parse_field(data["field"]) if "field" in data else default_field()
        if any(v < 0 for v in dims.values()):
            raise SchemaError("negative dimension")
        order = sorted(k for k in dims if dims[k] > 0)
        offsets, degrees = {}, []
        for k in order:
            offsets[k] = len(degrees)
            degrees += [k] * dims[k]
        n = len(degrees)

        def read(key, step):
            m = fld.zeros((n, n))
            blocks = data.get(key, {})
            if not isinstance(blocks, dict):
                raise SchemaError(f"'{key}' must map degrees to matrices")
            for k, rows in blocks.items():
                try:
                    k = int(k)
                except ValueError as exc:
                    raise SchemaError(f"bad degree key {k!r}") from exc
                src, tgt = dims.get(k, 0), dims.get(k + step, 0)
                if not isinstance(rows, list) or len(rows) != tgt or any(not isinstance(r, list) or len(r) != src for r in rows):
                    raise SchemaError(f"'{key}' block at degree {k} must be {tgt}x{src}")
                try:
                    blk = [[fld.parse(x) for x in r] for r in rows]
                except ValueError as exc:
                    raise SchemaError(str(exc)) from exc
                for i, r in enumerate(blk):
                    for j, x in enumerate(r):
                        m[offsets[k + step] + i, offsets[k] + j] = x
            return m

        diff = read("differential", 1)
        eps = read("epsilon", d)
        return cls(fld, d, degrees, diff, eps, data.get("side", "right"))

    def __repr__(self) -> str:
        return f"ADModule(d={self.d}, dims={self.space.as_dict()}, side={self.side})"


def direct_sum(*mods: ADModule) -> ADModule:
    if not mods:
        raise InvalidParameter("direct_sum needs at least one module")
    fld, d, side = mods[0].field, mods[0].d, mods[0].side
    if any(m.d != d or m.side != side or m.field != fld for m in mods):
        raise InvalidParameter("summands must share field, d and side")
    n = sum(m.dim for m in mods)
    diff, eps = fld.zeros((n, n)), fld.zeros((n, n))
    off = 0
    for m in mods:
        sl = slice(off, off + m.dim)
        diff[sl, sl] = m.differential
        eps[sl, sl] = m.epsilon
        off += m.dim
    degs = np.concatenate([m.degrees for m in mods]) if n else np.zeros(0, dtype=np.int64)
    return ADModule(fld, d, degs, diff, eps, side)


def zero_module(d: int, fld: Field | None = None, side: str = "right") -> ADModule:
    fld = fld or default_field()
    return ADModule(fld, d, [], fld.zeros((0, 0)), fld.zeros((0, 0)), side)


def make_B(n: int, shift: int = 0, d: int = 2, fld: Field | None = None, side: str = "right") -> ADModule:
    """The n-step self-extension of K, shifted.

    Basis ``1_j`` (degree ``j(d-1)``) and ``eps_j`` (degree ``j(d-1)+d``) for
    ``j < n``, with ``eps 1_j = eps_j`` and ``d 1_j = eps_{j-1}``. Its
    cohomology is spanned by ``1_0`` and ``eps_{n-1}``. ``n = 0`` gives K.
    """
    fld = fld or default_field()
    if d == 0:
        raise InvalidParameter("the degree d of eps must be nonzero")
    if n < 0:
        raise InvalidParameter("n must be non-negative")
    if n == 0:
        base = ADModule(fld, d, [0], fld.zeros((1, 1)), fld.zeros((1, 1)), side)
        return base.shift(shift)
    degrees = []
    for j in range(n):
        degrees += [j * (d - 1), j * (d - 1) + d]
    diff, eps = fld.zeros((2 * n, 2 * n)), fld.zeros((2 * n, 2 * n))
    one = fld(1)
    for j in range(n):
        eps[2 * j + 1, 2 * j] = one
        if j:
            diff[2 * j - 1, 2 * j] = one
    return ADModule(fld, d, degrees, diff, eps, side).shift(shift)


def make_A(d: int, fld: Field | None = None) -> ADModule:
    """``A_d`` as a right module over itself."""
    return make_B(1, 0, d, fld)


def make_C(n: int, shift: int = 0, d: int = 2, fld: Field | None = None) -> ADModule:
    """Left-module version of :func:`make_B`."""
    return make_B(n, shift, d, fld, side="left")


def random_degree_preserving(fld: Field, degrees: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """A random invertible block-diagonal matrix (blocks = equal degrees)."""
    n = len(degrees)
    p = fld.zeros((n, n))
    for k in np.unique(degrees):
        idx = np.nonzero(degrees == k)[0]
        while True:
            if isinstance(fld, PrimeField):
                blk = fld.array(rng.integers(0, fld.p, size=(len(idx), len(idx))))
            else:
                blk = fld.random(rng, (len(idx), len(idx)), -3, 4)
            if rank(fld, blk) == len(idx):
                break
        p[np.ix_(idx, idx)] = blk
    return p


def contractible_pair(degree: int, d: int, fld: Field, side: str = "right", free: bool = False) -> ADModule:
    """An acyclic module: ``x -> dx`` with eps = 0, or its free version ``A_d (x -> dx)``."""
    one = fld(1)
    if not free:
        diff = fld.zeros((2, 2))
        diff[1, 0] = one
        return ADModule(fld, d, [degree, degree + 1], diff, fld.zeros((2, 2)), side)
    # basis x, dx, eps x, eps dx
    degs = [degree, degree + 1, degree + d, degree + d + 1]
    diff, eps = fld.zeros((4, 4)), fld.zeros((4, 4))
    diff[1, 0] = one
    sign = one if d % 2 == 0 else fld(-1)
    diff[3, 2] = sign  # d(eps x) = (-1)^d eps dx
    eps[2, 0] = one
    eps[3, 1] = one
    return ADModule(fld, d, degs, diff, eps, side)
