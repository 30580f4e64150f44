"""
Weyl groups of classical type as groups of signed permutations.

An element is stored by its one-line notation w(1), ..., w(m) and extended
by w(-i) = -w(i).  Type A elements never carry signs; type D elements carry
an even number of them.

>>> w = from_one_line("D", [-2, 4, 1, -3])
>>> w.inverse()
SignedPermutation('D', (3, -1, -4, 2))
>>> length(w) == len(reduced_word(w))
True
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import InvalidInput, ParityViolation, ResourceLimit
from .roots import Root, RootSystemSpec, positive_roots, simple_roots

__all__ = [
    "SignedPermutation", "from_one_line", "parse_one_line", "identity",
    "multiply", "inverse", "apply", "act_on_root", "reflection",
    "simple_reflection", "word_product", "right_descents", "left_descents",
    "length", "inversion_length", "reduced_word", "all_reduced_words",
    "group_order", "enumerate_group", "involutions", "basic_involutions",
    "is_involution", "is_basic_involution", "support",
]

DEFAULT_WORD_CAP = 8
DEFAULT_GROUP_BUDGET = 25000


@dataclass(frozen=True)
class SignedPermutation:
    family: str
    images: tuple[int, ...]

    def __post_init__(self):
        m = len(self.images)
        if m == 0:
            raise InvalidInput("empty one-line notation")
        if sorted(abs(x) for x in self.images) != list(range(1, m + 1)):
            raise InvalidInput(f"{self.images} is not a signed permutation of 1..{m}")
        neg = sum(1 for x in self.images if x < 0)
        if self.family == "A" and neg:
            raise InvalidInput("type A elements cannot change signs")
        if self.family == "D" and neg % 2:
            raise ParityViolation(f"{self.images} has an odd number of negative images")
        RootSystemSpec(self.family, self.rank)
        object.__setattr__(self, "_hash", hash((self.family, self.images)))

    def __hash__(self):
        return self._hash

    @property
    def n(self) -> int:
        """Number of coordinates."""
        return len(self.images)

    @property
    def rank(self) -> int:
        return self.n - 1 if self.family == "A" else self.n

    @property
    def spec(self) -> RootSystemSpec:
        return RootSystemSpec(self.family, self.rank)

    def __call__(self, i: int) -> int:
        return self.images[i - 1] if i > 0 else -self.images[-i - 1]

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        return multiply(self, other)

    def inverse(self) -> SignedPermutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, 1))

    def one_line(self) -> str:
        return ",".join(map(str, self.images))

    def __str__(self):
        return f"[{self.one_line()}]"

    def __repr__(self):
        return f"SignedPermutation({self.family!r}, {self.images})"


def parse_one_line(text: str) -> tuple[int, ...]:
    """
    >>> parse_one_line("-2,4,1,-3")
    (-2, 4, 1, -3)
    """
    body = text.strip().strip("[]()")
    try:
        return tuple(int(tok) for tok in body.replace(" ", "").split(",") if tok)
    except ValueError as exc:
        raise InvalidInput(f"malformed one-line notation {text!r}") from exc


def from_one_line(family: str, images: Iterable[int] | str) -> SignedPermutation:
    if isinstance(images, str):
        images = parse_one_line(images)
    return SignedPermutation(family, tuple(int(x) for x in images))


def identity(spec: RootSystemSpec) -> SignedPermutation:
    return SignedPermutation(spec.family, tuple(range(1, spec.dim + 1)))


def _check_compatible(u: SignedPermutation, v: SignedPermutation):
    if u.family != v.family or u.n != v.n:
        raise InvalidInput(f"{u!r} and {v!r} live in different groups")


def multiply(u: SignedPermutation, v: SignedPermutation) -> SignedPermutation:
    """(u v)(i) = u(v(i))."""
    _check_compatible(u, v)
    return SignedPermutation(u.family, tuple(u(x) for x in v.images))


def inverse(w: SignedPermutation) -> SignedPermutation:
    inv = [0] * w.n
    for i, x in enumerate(w.images, 1):
        inv[abs(x) - 1] = i if x > 0 else -i
    return SignedPermutation(w.family, tuple(inv))


def apply(w: SignedPermutation, i: int) -> int:
    if i == 0 or abs(i) > w.n:
        raise InvalidInput(f"index {i} out of range")
    return w(i)


def act_on_root(w: SignedPermutation, alpha: Root) -> Root:
    """Send e_i to sign(w(i)) e_|w(i)|."""
    if alpha.dim != w.n:
        raise InvalidInput("root and element have different dimensions")
    out = [0] * w.n
    for i, c in enumerate(alpha.coeffs):
        if c:
            x = w.images[i]
            out[abs(x) - 1] += c if x > 0 else -c
    return Root(tuple(out))


def reflection(spec: RootSystemSpec, alpha: Root) -> SignedPermutation:
    """
    The signed permutation of s_alpha.

    >>> reflection(RootSystemSpec("D", 4), Root((0, 0, 1, 1)))
    SignedPermutation('D', (1, 2, -4, -3))
    """
    if alpha.dim != spec.dim:
        raise InvalidInput("root does not belong to this system")
    _, alpha = alpha.positive()
    if alpha not in positive_roots(spec):
        raise InvalidInput(f"{alpha} is not a root of {spec}")
    images = list(range(1, spec.dim + 1))
    sup = alpha.support()
    if len(sup) == 1:
        i = sup[0][0]
        images[i - 1] = -i
    else:
        (i, _), (j, c) = sup
        if c < 0:
            images[i - 1], images[j - 1] = j, i
        else:
            images[i - 1], images[j - 1] = -j, -i
    return SignedPermutation(spec.family, tuple(images))


@lru_cache(maxsize=None)
def simple_reflection(spec: RootSystemSpec, i: int) -> SignedPermutation:
    if not 1 <= i <= spec.rank:
        raise InvalidInput(f"simple reflection index {i} out of range 1..{spec.rank}")
    return reflection(spec, simple_roots(spec)[i - 1])


def word_product(spec: RootSystemSpec, word: Iterable[int]) -> SignedPermutation:
    w = identity(spec)
    for i in word:
        w = w * simple_reflection(spec, i)
    return w


def right_descents(w: SignedPermutation) -> list[int]:
    """Indices i with w(alpha_i) negative, i.e. l(w s_i) < l(w)."""
    return [i for i, a in enumerate(simple_roots(w.spec), 1)
            if not act_on_root(w, a).is_positive()]


def left_descents(w: SignedPermutation) -> list[int]:
    return right_descents(inverse(w))


@lru_cache(maxsize=200_000)
def length(w: SignedPermutation) -> int:
    """Coxeter length, by stripping right descents until the identity."""
    steps = 0
    while True:
        d = right_descents(w)
        if not d:
            return steps
        w = w * simple_reflection(w.spec, d[0])
        steps += 1


def _display_key(x: int, n: int) -> int:
    # positions in the order 1 < 2 < ... < n < -n < ... < -1
    return x if x > 0 else 2 * n + 1 + x


def inversion_length(w: SignedPermutation) -> int:
    """
    Closed signed-inversion count.

    e_a - e_b is positive exactly when a precedes b in the order
    1 < ... < n < -n < ... < -1, so l(w) counts the pairs i < j with
    w(i) after w(j), plus (types B, C, D) the pairs with w(i) after -w(j),
    plus (types B, C) the negative images.
    """
    n, im = w.n, w.images
    key = [_display_key(x, n) for x in im]
    count = sum(1 for i in range(n) for j in range(i + 1, n) if key[i] > key[j])
    if w.family != "A":
        count += sum(1 for i in range(n) for j in range(i + 1, n)
                     if key[i] > _display_key(-im[j], n))
    if w.family in ("B", "C"):
        count += sum(1 for x in im if x < 0)
    return count


@lru_cache(maxsize=100_000)
def reduced_word(w: SignedPermutation) -> tuple[int, ...]:
    """Canonical reduced word: repeatedly strip the smallest right descent."""
    letters = []
    while True:
        d = right_descents(w)
        if not d:
            return tuple(reversed(letters))
        letters.append(d[0])
        w = w * simple_reflection(w.spec, d[0])


def all_reduced_words(w: SignedPermutation, cap: int = DEFAULT_WORD_CAP) -> frozenset[tuple[int, ...]]:
    if length(w) > cap:
        raise ResourceLimit(f"l(w) = {length(w)} exceeds the reduced-word cap {cap}")
    memo: dict[SignedPermutation, set[tuple[int, ...]]] = {}

    def words(u):
        if u in memo:
            return memo[u]
        d = right_descents(u)
        if not d:
            out = {()}
        else:
            out = {p + (i,) for i in d
                   for p in words(u * simple_reflection(u.spec, i))}
        memo[u] = out
        return out

    return frozenset(words(w))


def group_order(spec: RootSystemSpec) -> int:
    m = spec.dim
    return {"A": math.factorial(m), "B": 2 ** m * math.factorial(m),
            "C": 2 ** m * math.factorial(m),
            "D": 2 ** (m - 1) * math.factorial(m)}[spec.family]


def enumerate_group(spec: RootSystemSpec, budget: int = DEFAULT_GROUP_BUDGET) -> Iterator[SignedPermutation]:
    """All elements, permutations in lexicographic order times sign patterns."""
    if group_order(spec) > budget:
        raise ResourceLimit(f"|W({spec})| = {group_order(spec)} exceeds budget {budget}")
    m = spec.dim
    signs = [(1,) * m] if spec.family == "A" else list(itertools.product((1, -1), repeat=m))
    if spec.family == "D":
        signs = [s for s in signs if s.count(-1) % 2 == 0]
    for perm in itertools.permutations(range(1, m + 1)):
        for s in signs:
            yield SignedPermutation(spec.family, tuple(p * e for p, e in zip(perm, s)))


def is_involution(w: SignedPermutation) -> bool:
    return all(w(x) == i for i, x in enumerate(w.images, 1))


def is_basic_involution(w: SignedPermutation) -> bool:
    return is_involution(w) and all(x != -i for i, x in enumerate(w.images, 1))


def involutions(spec: RootSystemSpec, budget: int = DEFAULT_GROUP_BUDGET) -> list[SignedPermutation]:
    return [w for w in enumerate_group(spec, budget) if is_involution(w)]


def basic_involutions(spec: RootSystemSpec, budget: int = DEFAULT_GROUP_BUDGET) -> list[SignedPermutation]:
    return [w for w in enumerate_group(spec, budget) if is_basic_involution(w)]


def support(w: SignedPermutation) -> tuple[Root, ...]:
    """
    Support of a basic involution, ordered by column.

    >>> [str(b) for b in support(from_one_line("D", [-6, 2, 5, 4, 3, -1]))]
    ['e1+e6', 'e3-e5']
    """
    if w.family not in ("B", "D"):
        raise InvalidInput("supports are defined for types B and D")
    if not is_basic_involution(w):
        raise InvalidInput(f"{w} is not a basic involution")
    out = []
    for i, x in enumerate(w.images, 1):
        j = abs(x)
        if j > i:
            out.append(Root.of(w.n, (i, 1), (j, -1 if x > 0 else 1)))
    return tuple(out)
