"""The group generated by two spherical twists: classification, commutation, and ping-pong certificates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .dg import TwistedComplex, iso_up_to_shift
from .errors import (
    CertificateFailure,
    DNotGreaterThanOne,
    InvalidParameter,
    NotDistinct,
    PreconditionFailed,
    SizeCapExceeded,
    ZeroPower,
)
from .spherical import SphericalObject, build_separating_object, i_total, twist_power

DEFAULT_SIZE_CAP = 10_000
DEFAULT_WORD_LENGTH = 6


@dataclass(frozen=True)
class TwistWord:
    """Letters ``(generator, exponent)``; the rightmost letter acts first, as in function composition."""

    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((int(g), int(k)) for g, k in self.letters)
        for g, k in letters:
            if g not in (1, 2):
                raise InvalidParameter(f"generator index must be 1 or 2, got {g}")
            if k == 0:
                raise ZeroPower("letter exponents must be nonzero")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "TwistWord":
        """Read ``"1:2 2:-1"`` style words."""
        letters = []
        for tok in text.split():
            g, _, k = tok.partition(":")
            letters.append((int(g), int(k or 1)))
        return cls(tuple(letters))

    @property
    def is_reduced(self) -> bool:
        return all(a[0] != b[0] for a, b in zip(self.letters, self.letters[1:]))

    def reduced(self) -> "TwistWord":
        out: list[tuple[int, int]] = []
        for g, k in self.letters:
            if out and out[-1][0] == g:
                k += out.pop()[1]
                if k == 0:
                    continue
            out.append((g, k))
        return TwistWord(tuple(out))

    def inverse(self) -> "TwistWord":
        return TwistWord(tuple((g, -k) for g, k in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(f"T{g}^{k}" for g, k in self.letters) or "id"

    def to_json(self) -> list:
        return [list(x) for x in self.letters]


def _require_d(e1: SphericalObject, e2: SphericalObject) -> None:
    if e1.d != e2.d:
        raise InvalidParameter("spherical objects of different dimensions")
    if e1.d <= 1:
        raise DNotGreaterThanOne(f"the group-theoretic statements need d > 1, got d = {e1.d}")


def apply_word(w: TwistWord, m: TwistedComplex, gens: dict, size_cap: int = DEFAULT_SIZE_CAP) -> TwistedComplex:
    """Apply ``w`` to ``m``; ``gens`` maps generator index to spherical object."""
    out = m
    for g, k in reversed(w.letters):
        out = twist_power(gens[g], k, out, method="iterate" if k < 0 else "convolution")
        if out.size > size_cap:
            raise SizeCapExceeded(f"object grew to {out.size} summands after {w}")
    return out


@dataclass(frozen=True)
class PairClassification:
    kind: str  # "Commuting", "Braid" or "Free"
    intersection_number: int
    witness: dict

    def summary(self) -> str:
        if self.kind == "Commuting":
            return f"Commuting(ZxZ), l={self.witness['l']}"
        if self.kind == "Braid":
            return f"Braid(B3), l={self.witness['l']}"
        cert = self.witness["certificate"]
        status = "OK" if cert.certified else "FAILED"
        return f"Free(F2), certificate: {status}@len{cert.max_word_length}"

    def to_json(self) -> dict:
        wit = dict(self.witness)
        if "certificate" in wit:
            wit["certificate"] = wit["certificate"].summary_json()
        return {"kind": self.kind, "intersection_number": self.intersection_number, "witness": wit}


def classify_pair(
    e1: SphericalObject, e2: SphericalObject, max_word_length: int = DEFAULT_WORD_LENGTH, size_cap: int = DEFAULT_SIZE_CAP
) -> PairClassification:
    _require_d(e1, e2)
    if iso_up_to_shift(e1.obj, e2.obj) is not None:
        raise NotDistinct("the two spherical objects agree up to shift")
    i = i_total(e1.obj, e2.obj)
    gens = {1: e1, 2: e2}
    if i == 0:
        iso = iso_up_to_shift(e2.obj, apply_word(TwistWord(((1, 1),)), e2.obj, gens))
        if iso is None:
            raise CertificateFailure("T_E1(E2) is not a shift of E2")
        return PairClassification("Commuting", 0, {"l": iso.shift})
    if i == 1:
        iso = iso_up_to_shift(e2.obj, apply_word(TwistWord(((1, 1), (2, 1))), e1.obj, gens))
        if iso is None:
            raise CertificateFailure("T_E1 T_E2 (E1) is not a shift of E2")
        return PairClassification("Braid", 1, {"l": iso.shift})
    cert = pingpong_verify(e1, 1, e2, 1, max_word_length, size_cap)
    return PairClassification("Free", i, {"certificate": cert})


def commute_test(e1: SphericalObject, k1: int, e2: SphericalObject, k2: int) -> tuple[bool, str]:
    """Whether ``T_E1^k1 = T_E2^k2``: exactly when ``E2`` is a shift of ``E1`` and ``k1 = k2``."""
    if k1 == 0 or k2 == 0:
        raise ZeroPower("exponents must be nonzero")
    _require_d(e1, e2)
    iso = iso_up_to_shift(e1.obj, e2.obj)
    if iso is None:
        return False, "objects are not shifts of each other"
    if k1 != k2:
        return False, f"same object up to shift {iso.shift}, but exponents {k1} != {k2}"
    return True, f"E2 = E1[{iso.shift}] and equal exponents"


def braid_relation_check(e1: SphericalObject, e2: SphericalObject) -> bool:
    _require_d(e1, e2)
    out = apply_word(TwistWord(((1, 1), (2, 1))), e1.obj, {1: e1, 2: e2})
    return iso_up_to_shift(e2.obj, out) is not None


# -- ping-pong ------------------------------------------------------------------


@dataclass(frozen=True)
class PingPongStep:
    word: TwistWord
    size: int
    i_with_e1: int
    i_with_e2: int
    expected_set: int  # 1 or 2

    @property
    def lhs(self) -> int:
        """Intersection with the generator that did not act last (must be larger)."""
        return self.i_with_e2 if self.expected_set == 1 else self.i_with_e1

    @property
    def rhs(self) -> int:
        return self.i_with_e1 if self.expected_set == 1 else self.i_with_e2

    @property
    def in_w1(self) -> bool:
        return self.i_with_e2 > self.i_with_e1

    @property
    def in_w2(self) -> bool:
        return self.i_with_e1 > self.i_with_e2

    def to_json(self) -> dict:
        return {
            "word": self.word.to_json(),
            "size": self.size,
            "i_E1": self.i_with_e1,
            "i_E2": self.i_with_e2,
            "set": self.expected_set,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass(frozen=True)
class PingPongCertificate:
    max_word_length: int
    exponents: tuple
    seeds: tuple  # (i(S1,E1), i(S1,E2)), (i(S2,E1), i(S2,E2))
    steps: tuple = field(default=())
    aborted: tuple = field(default=())

    @property
    def certified(self) -> bool:
        return not self.aborted and all(s.lhs > s.rhs for s in self.steps)

    @property
    def word_count(self) -> int:
        return len(self.steps)

    def summary_json(self) -> dict:
        return {"max_word_length": self.max_word_length, "words": self.word_count, "certified": self.certified}

    def to_json(self) -> dict:
        return {
            "max_word_length": self.max_word_length,
            "exponents": list(self.exponents),
            "seeds": [list(s) for s in self.seeds],
            "steps": [s.to_json() for s in self.steps],
            "aborted": [w.to_json() for w in self.aborted],
            "verdict": "certified" if self.certified else "not certified",
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def _free_words(max_len: int):
    """Freely reduced words in ``a, a^-1, b, b^-1``, one list per length.

    A word is a tuple of ``(generator, signed power)`` syllables listed in
    the order they act. Each entry is ``(parent, word, generator, sign)``
    where ``word`` is ``parent`` followed by one more letter.
    """
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for word in frontier:
            for g, s in ((1, 1), (1, -1), (2, 1), (2, -1)):
                if word and word[-1][0] == g:
                    if (word[-1][1] > 0) != (s > 0):
                        continue  # would cancel
                    nxt.append((word, word[:-1] + ((g, word[-1][1] + s),), g, s))
                else:
                    nxt.append((word, word + ((g, s),), g, s))
        yield nxt
        frontier = [n[1] for n in nxt]


def pingpong_verify(
    e1: SphericalObject,
    k1: int,
    e2: SphericalObject,
    k2: int,
    max_word_length: int = DEFAULT_WORD_LENGTH,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> PingPongCertificate:
    """Check the ping-pong transitions for every freely reduced word in ``T1^{±k1}, T2^{±k2}``.

    The word ``w`` is applied to the seed ``S2`` (which has ``i(S2,E1) >
    i(S2,E2)``) when its first-acting letter is a power of ``T1`` and to ``S1``
    otherwise. After each letter the result must lie in the set indexed by
    the generator that acted last, and it must not be a shift of its seed.
    """
    if k1 == 0 or k2 == 0:
        raise ZeroPower("exponents must be nonzero")
    if max_word_length < 1:
        raise InvalidParameter("max_word_length must be at least 1")
    _require_d(e1, e2)
    i12 = i_total(e1.obj, e2.obj)
    if i12 < 2:
        kind = "commuting" if i12 == 0 else "braid"
        raise PreconditionFailed(f"i={i12}: {kind} case")
    s2 = build_separating_object(e1, e2).obj  # i(E1, S2) > i(E2, S2)
    s1 = build_separating_object(e2, e1).obj
    gens, exps = {1: e1, 2: e2}, {1: k1, 2: k2}
    previous = {(): None}
    steps, aborted = [], []
    for level in _free_words(max_word_length):
        current = {}
        for parent, word, g, s in level:
            if parent not in previous:
                continue  # an ancestor hit the size cap
            seed = s2 if word[0][0] == 1 else s1
            base = previous[parent] if parent else seed
            tw = TwistWord(tuple((gg, p * exps[gg]) for gg, p in reversed(word)))
            power = s * exps[g]
            obj = twist_power(gens[g], power, base, method="iterate" if power < 0 else "convolution")
            if obj.size > size_cap:
                aborted.append(tw)
                continue
            step = PingPongStep(tw, obj.size, i_total(obj, e1.obj), i_total(obj, e2.obj), 1 if g == 1 else 2)
            if not step.lhs > step.rhs:
                raise CertificateFailure(f"ping-pong transition fails for {tw}: {step.lhs} <= {step.rhs}", word=tw)
            if iso_up_to_shift(seed, obj) is not None:
                raise CertificateFailure(f"{tw} acts as a shift on its seed", word=tw)
            current[word] = obj
            steps.append(step)
        previous = current
    seeds = ((i_total(s1, e1.obj), i_total(s1, e2.obj)), (i_total(s2, e1.obj), i_total(s2, e2.obj)))
    steps.sort(key=lambda st: (sum(abs(k) for _, k in st.word.letters), st.word.to_json()))
    return PingPongCertificate(max_word_length, (k1, k2), seeds, tuple(steps), tuple(aborted))


__all__ = [
    "PairClassification",
    "PingPongCertificate",
    "PingPongStep",
    "TwistWord",
    "apply_word",
    "braid_relation_check",
    "classify_pair",
    "commute_test",
    "pingpong_verify",
]
