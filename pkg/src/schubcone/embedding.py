"""
Embedding W(D_n) into W(D_{n+2}) as the pointwise stabilizer of two indices
k1 < k2, and closed length formulas for the embedded involutions times the
reflections in eta_k1 -+ eta_k2.

With A = {1..k1-1}, B = {k1+1..k2-1}, C = {k2+1..n+2}, X^- = {-x : x in X}
and C^+- = C u C^-:

    (i)  l''(w~ s_{k1-k2}) = 2(k2-k1-1) + 4|w~(A) n B^-| + 4|w~(A) n A^-|
                             + 4|w~(A) n C^+-| + l(w) + 1
    (ii) l''(w~ s_{k1+k2}) = 2(k2-k1-1) + 4|w~(A) n A^-| + 4|w~(A) n B^-|
                             + 4|C| + l(w) + 1
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput
from .roots import Root, RootSystemSpec
from .weyl import (
    SignedPermutation, is_basic_involution, is_involution, length, reflection,
)

__all__ = [
    "EmbeddingSpec", "embed", "relabel", "lemma32_i", "lemma32_ii",
    "direct_length_i", "direct_length_ii", "CaseSplit", "theorem12_case_split",
]


@dataclass(frozen=True)
class EmbeddingSpec:
    n: int
    k1: int
    k2: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInput("n must be at least 2")
        if not 1 <= self.k1 < self.k2 <= self.n + 2:
            raise InvalidInput(f"need 1 <= k1 < k2 <= n + 2, got k1={self.k1}, k2={self.k2}")

    @property
    def A(self) -> frozenset[int]:
        return frozenset(range(1, self.k1))

    @property
    def B(self) -> frozenset[int]:
        return frozenset(range(self.k1 + 1, self.k2))

    @property
    def C(self) -> frozenset[int]:
        return frozenset(range(self.k2 + 1, self.n + 3))


def relabel(k: int, spec: EmbeddingSpec) -> int:
    """k -> k' skipping over k1 and k2."""
    if not 1 <= k <= spec.n:
        raise InvalidInput(f"index {k} out of range 1..{spec.n}")
    if k <= spec.k1 - 1:
        return k
    if k <= spec.k2 - 2:
        return k + 1
    return k + 2


def embed(w: SignedPermutation, spec: EmbeddingSpec) -> SignedPermutation:
    if w.family != "D" or w.n != spec.n:
        raise InvalidInput(f"{w!r} is not in W(D{spec.n})")
    images = list(range(1, spec.n + 3))
    for k in range(1, spec.n + 1):
        x = w(k)
        images[relabel(k, spec) - 1] = relabel(abs(x), spec) * (1 if x > 0 else -1)
    return SignedPermutation("D", tuple(images))


def _counts(w: SignedPermutation, spec: EmbeddingSpec):
    wt = embed(w, spec)
    image_a = {wt(a) for a in spec.A}
    neg = lambda xs: {-x for x in xs}  # noqa: E731
    return (wt, len(image_a & neg(spec.A)), len(image_a & neg(spec.B)),
            len(image_a & (set(spec.C) | neg(spec.C))))


def _check(w, spec):
    if not is_involution(w):
        raise InvalidInput(f"{w} is not an involution")


def lemma32_i(w: SignedPermutation, spec: EmbeddingSpec) -> int:
    _check(w, spec)
    _, a_minus, b_minus, c_pm = _counts(w, spec)
    return (2 * (spec.k2 - spec.k1 - 1) + 4 * b_minus + 4 * a_minus + 4 * c_pm
            + length(w) + 1)


def lemma32_ii(w: SignedPermutation, spec: EmbeddingSpec) -> int:
    _check(w, spec)
    _, a_minus, b_minus, _ = _counts(w, spec)
    return (2 * (spec.k2 - spec.k1 - 1) + 4 * a_minus + 4 * b_minus + 4 * len(spec.C)
            + length(w) + 1)


def _eta(spec: EmbeddingSpec, sign: int) -> Root:
    return Root.of(spec.n + 2, (spec.k1, 1), (spec.k2, sign))


def direct_length_i(w: SignedPermutation, spec: EmbeddingSpec) -> int:
    big = RootSystemSpec("D", spec.n + 2)
    return length(embed(w, spec) * reflection(big, _eta(spec, -1)))


def direct_length_ii(w: SignedPermutation, spec: EmbeddingSpec) -> int:
    big = RootSystemSpec("D", spec.n + 2)
    return length(embed(w, spec) * reflection(big, _eta(spec, 1)))


@dataclass(frozen=True)
class CaseSplit:
    w1: SignedPermutation
    w2: SignedPermutation
    case: str
    k: int
    k1: int
    k2: int
    formula: tuple[int, int]
    direct: tuple[int, int]

    @property
    def distinct(self) -> bool:
        return self.formula[0] != self.formula[1] and self.direct[0] != self.direct[1]

    @property
    def consistent(self) -> bool:
        return self.formula == self.direct

    def row(self) -> dict:
        return {
            "w1": self.w1.one_line(), "w2": self.w2.one_line(), "case": self.case,
            "k": self.k, "k1": self.k1, "k2": self.k2,
            "l1": self.direct[0], "l2": self.direct[1], "distinct": self.distinct,
        }


def _smaller_first(x: int, y: int) -> bool:
    """True when e_x < e_y: e_y - e_x is a sum of positive roots (signed indices)."""
    if (x < 0) != (y < 0):
        return x < 0
    return abs(x) > abs(y) if x > 0 else abs(x) < abs(y)


def theorem12_case_split(w1: SignedPermutation, w2: SignedPermutation) -> CaseSplit:
    """
    Pick (k1, k2) separating two distinct equal-length basic involutions.

    k is the first index where the images differ; the pair is ordered so the
    image of e_k under w1 is the smaller one, k1 = k + 1, and

    * opposite signs: k2 = n + 2, reflection eta_k1 - eta_k2,
    * both positive (images m1 > m2): k2 = m1 + 1, reflection eta_k1 - eta_k2,
    * both negative (images -m1, -m2, m2 > m1): k2 = m2 + 1, reflection eta_k1 + eta_k2.
    """
    if w1 == w2:
        raise InvalidInput("the two involutions must differ")
    for w in (w1, w2):
        if w.family != "D" or not is_basic_involution(w):
            raise InvalidInput(f"{w} is not a basic involution of type D")
    if w1.n != w2.n:
        raise InvalidInput("involutions of different ranks")
    if length(w1) != length(w2):
        raise InvalidInput("the case split applies to involutions of equal length")
    n = w1.n
    k = next(i for i in range(1, n + 1) if w1(i) != w2(i))
    if not _smaller_first(w1(k), w2(k)):
        w1, w2 = w2, w1
    x1, x2 = w1(k), w2(k)
    if (x1 < 0) != (x2 < 0):
        case, k2, second = "i", n + 2, False
    elif x1 > 0:
        case, k2, second = "ii", x1 + 1, False
    else:
        case, k2, second = "iii", abs(x2) + 1, True
    spec = EmbeddingSpec(n, k + 1, k2)
    formula = lemma32_ii if second else lemma32_i
    direct = direct_length_ii if second else direct_length_i
    return CaseSplit(w1, w2, case, k, spec.k1, spec.k2,
                     (formula(w1, spec), formula(w2, spec)),
                     (direct(w1, spec), direct(w2, spec)))
