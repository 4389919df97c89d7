"""Ground fields: the rationals and prime fields GF(p).

Matrices are plain numpy arrays. Over GF(p) they are ``int64`` arrays holding
canonical representatives in ``[0, p)``; over the rationals they are object
arrays of :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sympy import isprime

DEFAULT_PRIME = 32003


class Field:
    """Common interface; concrete subclasses are :class:`PrimeField` and :class:`Rationals`."""

    dtype: object
    name: str

    def __call__(self, value):
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    # -- scalars -----------------------------------------------------------
    def parse(self, text) -> object:
        """Read a literal such as ``"12"`` or ``"3/7"`` (ints are accepted too)."""
        if isinstance(text, bool):
            raise ValueError("booleans are not field literals")
        if isinstance(text, int):
            return self(text)
        if not isinstance(text, str):
            raise ValueError(f"field literal must be a string, got {text!r}")
        try:
            return self(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad field literal {text!r}") from exc

    def format(self, x) -> str:
        return str(x)

    def inv(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == 0

    # -- arrays ------------------------------------------------------------
    def zeros(self, shape) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self(1)
        return out

    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def reduce(self, a: np.ndarray) -> np.ndarray:
        """Bring an array produced by ring operations back to canonical form."""
        return a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def random(self, rng: np.random.Generator, shape, low: int = -9, high: int = 10) -> np.ndarray:
        return self.array(rng.integers(low, high, size=shape))


class PrimeField(Field):
    """GF(p) with ``int64`` storage. Products stay below 2**63 for p < 2**31."""

    dtype = np.int64

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 2**31:
            raise ValueError("prime too large for int64 kernels")
        self.p = p
        self.name = f"GF:{p}"

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            num = value.numerator % self.p
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator vanishes mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, x) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def format(self, x) -> str:
        return str(int(x) % self.p)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def array(self, data) -> np.ndarray:
        arr = np.asarray(data)
        if arr.dtype == object:
            flat = [self(x) for x in arr.ravel()]
            return np.array(flat, dtype=np.int64).reshape(arr.shape)
        return np.mod(arr.astype(np.int64), self.p)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return np.mod(a, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[1:])
        # Entries are < p < 2**31, so a dot product over k terms fits in int64
        # as long as k * p**2 < 2**63; chunk the inner dimension otherwise.
        step = max(1, (2**62) // (self.p * self.p))
        if a.shape[-1] <= step:
            return np.mod(a @ b, self.p)
        out = self.zeros(a.shape[:-1] + b.shape[1:])
        for k in range(0, a.shape[-1], step):
            out = np.mod(out + a[..., k : k + step] @ b[k : k + step], self.p)
        return out


class Rationals(Field):
    """The rationals, stored as ``Fraction`` objects."""

    dtype = object
    name = "Q"

    def __call__(self, value) -> Fraction:
        if isinstance(value, (np.integer,)):
            value = int(value)
        return Fraction(value)

    def inv(self, x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def array(self, data) -> np.ndarray:
        arr = np.asarray(data, dtype=object)
        flat = [self(x) for x in arr.ravel()]
        out = np.empty(len(flat), dtype=object)
        out[:] = flat
        return out.reshape(arr.shape)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[1:])
        return a @ b


QQ = Rationals()


def parse_field(spec: str) -> Field:
    """``"Q"`` or ``"GF:p"``."""
    spec = spec.strip()
    if spec.upper() == "Q":
        return QQ
    if spec.upper().startswith("GF:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field {spec!r}; expected 'Q' or 'GF:p'")


def default_field() -> PrimeField:
    return PrimeField(DEFAULT_PRIME)
