"""
Root systems of types A, B, C, D in epsilon-coordinates.

A root is an integer vector over the basis e1, ..., e_m of R^m, where m is the
rank for B, C, D and rank + 1 for A.

>>> [str(a) for a in simple_roots(RootSystemSpec("D", 4))]
['e1-e2', 'e2-e3', 'e3-e4', 'e3+e4']
>>> len(positive_roots(RootSystemSpec("D", 5)))
20
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidInput

__all__ = [
    "RootSystemSpec", "Root",
    "positive_roots", "simple_roots", "reflect",
    "row_of", "col_of", "row_set", "column_set", "parse_root", "root_sort_key",
]

FAMILIES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInput(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InvalidInput(f"rank must be a positive integer, got {self.rank!r}")
        if self.family == "D" and self.rank < 2:
            raise InvalidInput("type D needs rank >= 2")

    @property
    def dim(self) -> int:
        """Number of epsilon-coordinates."""
        return self.rank + 1 if self.family == "A" else self.rank

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True, order=True)
class Root:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not any(self.coeffs):
            raise InvalidInput("a root must be nonzero")
        object.__setattr__(self, "_hash", hash(self.coeffs))
        object.__setattr__(self, "_key", _sort_key(self.coeffs))

    def __hash__(self):
        return self._hash

    @classmethod
    def of(cls, dim: int, *entries: tuple[int, int]) -> Root:
        """Build from (1-based index, coefficient) pairs."""
        v = [0] * dim
        for i, c in entries:
            v[i - 1] += c
        return cls(tuple(v))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def is_positive(self) -> bool:
        return next(c for c in self.coeffs if c) > 0

    def __neg__(self) -> Root:
        return Root(tuple(-c for c in self.coeffs))

    def positive(self) -> tuple[int, Root]:
        """Return (sign, positive representative)."""
        return (1, self) if self.is_positive() else (-1, -self)

    def dot(self, other: Root) -> int:
        return sum(a * b for a, b in zip(self.coeffs, other.coeffs))

    def support(self) -> list[tuple[int, int]]:
        return [(i + 1, c) for i, c in enumerate(self.coeffs) if c]

    def __str__(self):
        out = []
        for i, c in self.support():
            sign = "-" if c < 0 else ("+" if out else "")
            mag = "" if abs(c) == 1 else str(abs(c))
            out.append(f"{sign}{mag}e{i}")
        return "".join(out)

    def __repr__(self):
        return f"Root({self})"

    def to_json(self) -> list[int]:
        return list(self.coeffs)


_TERM = re.compile(r"([+-]?)(\d*)e(\d+)")


def parse_root(text: str, dim: int) -> Root:
    """
    Parse strings such as ``"e1-e2"``, ``"e3+e4"`` or ``"2e1"``.

    >>> parse_root("e3+e4", 4)
    Root(e3+e4)
    """
    s = text.replace(" ", "")
    pos, v = 0, [0] * dim
    for m in _TERM.finditer(s):
        if m.start() != pos:
            break
        idx = int(m.group(3))
        if not 1 <= idx <= dim:
            raise InvalidInput(f"index e{idx} out of range for dimension {dim}")
        v[idx - 1] += (-1 if m.group(1) == "-" else 1) * int(m.group(2) or 1)
        pos = m.end()
    if pos != len(s) or not s:
        raise InvalidInput(f"cannot parse root {text!r}")
    return Root(tuple(v))


def _sort_key(coeffs):
    # (col, row) with rows ordered 2, 3, ..., n, -n, ..., -2, then the
    # one-coordinate roots of B/C last in their column
    sup = [(i + 1, c) for i, c in enumerate(coeffs) if c]
    i = sup[0][0]
    if len(sup) == 1:
        return (i, 2, 0)
    j, c = sup[1]
    return (i, 0, j) if c < 0 else (i, 1, -j)


def root_sort_key(alpha: Root):
    return alpha._key


@lru_cache(maxsize=None)
def positive_roots(spec: RootSystemSpec) -> tuple[Root, ...]:
    """All positive roots in the fixed column-then-row order."""
    m = spec.dim
    roots = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            roots.append(Root.of(m, (i, 1), (j, -1)))
            if spec.family != "A":
                roots.append(Root.of(m, (i, 1), (j, 1)))
        if spec.family == "B":
            roots.append(Root.of(m, (i, 1)))
        elif spec.family == "C":
            roots.append(Root.of(m, (i, 2)))
    return tuple(sorted(roots, key=root_sort_key))


@lru_cache(maxsize=None)
def simple_roots(spec: RootSystemSpec) -> tuple[Root, ...]:
    m, n = spec.dim, spec.rank
    out = [Root.of(m, (i, 1), (i + 1, -1)) for i in range(1, m)]
    if spec.family == "B":
        out.append(Root.of(m, (n, 1)))
    elif spec.family == "C":
        out.append(Root.of(m, (n, 2)))
    elif spec.family == "D":
        out.append(Root.of(m, (n - 1, 1), (n, 1)))
    return tuple(out)


def reflect(alpha: Root, beta: Root) -> Root:
    """
    s_alpha(beta) = beta - 2 (alpha, beta) / (alpha, alpha) alpha.

    >>> reflect(Root((1, -1, 0)), Root((0, 1, -1)))
    Root(e1-e3)
    """
    if alpha.dim != beta.dim:
        raise InvalidInput("roots of different dimensions")
    k = Fraction(2 * alpha.dot(beta), alpha.dot(alpha))
    out = [b - k * a for a, b in zip(alpha.coeffs, beta.coeffs)]
    if any(x.denominator != 1 for x in out):
        raise InvalidInput(f"{beta} is not mapped into the lattice by s_{alpha}")
    return Root(tuple(int(x) for x in out))


def _two_term(alpha: Root) -> tuple[int, int, int]:
    sup = alpha.support()
    if len(sup) != 2 or sup[0][1] != 1 or abs(sup[1][1]) != 1:
        raise InvalidInput(f"{alpha} is not a positive root of the form e_i +- e_j")
    (i, _), (j, c) = sup
    return i, j, c


def row_of(alpha: Root) -> int:
    """row(e_i - e_j) = j, row(e_i + e_j) = -j."""
    _, j, c = _two_term(alpha)
    return j if c < 0 else -j


def col_of(alpha: Root) -> int:
    """col(e_i +- e_j) = i."""
    return _two_term(alpha)[0]


def _check_rows_cols(spec: RootSystemSpec):
    if spec.family not in ("A", "D"):
        raise InvalidInput("rows and columns are defined for types A and D only")


def column_set(spec: RootSystemSpec, k: int) -> frozenset[Root]:
    _check_rows_cols(spec)
    if not 1 <= k <= spec.dim:
        raise InvalidInput(f"column index {k} out of range")
    return frozenset(a for a in positive_roots(spec) if col_of(a) == k)


def row_set(spec: RootSystemSpec, k: int) -> frozenset[Root]:
    _check_rows_cols(spec)
    if k == 0 or abs(k) > spec.dim:
        raise InvalidInput(f"row index {k} out of range")
    return frozenset(a for a in positive_roots(spec) if row_of(a) == k)
