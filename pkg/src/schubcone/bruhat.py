"""
Bruhat order on signed permutations.

Rows and columns of the 2n x 2n rook and rank matrices carry the labels
1, ..., n, -n, ..., -1 (top to bottom, left to right).  The rook of w sits
in column j and row w(j); the rank matrix counts rooks weakly south-west
of each cell.

Type D comparisons use the rank-matrix criterion with its parity condition
on empty rectangles; in types A, B and C entrywise rank comparison is
already the whole criterion.  ``bruhat_leq_subword`` is an independent check via
the subword property and serves every family.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import InvalidInput, ResourceLimit
from .weyl import (
    SignedPermutation, identity, is_involution, length, reduced_word,
    simple_reflection,
)

__all__ = [
    "labels", "position", "rook_matrix", "rank_matrix", "rank_at",
    "is_empty_rectangle", "bruhat_leq", "bruhat_leq_subword", "bruhat_interval",
    "strict_lower_rank", "involution_leq_star", "render_rook", "render_rank",
]

DEFAULT_SUBWORD_BUDGET = 64


def labels(n: int) -> list[int]:
    return list(range(1, n + 1)) + list(range(-n, 0))


def position(label: int, n: int) -> int:
    """0-based display position of a row or column label."""
    if label == 0 or abs(label) > n:
        raise InvalidInput(f"label {label} out of range for n = {n}")
    return label - 1 if label > 0 else 2 * n + label


@lru_cache(maxsize=50_000)
def _rook(w: SignedPermutation) -> np.ndarray:
    n = w.n
    x = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for j in labels(n):
        x[position(w(j), n), position(j, n)] = 1
    x.setflags(write=False)
    return x


def rook_matrix(w: SignedPermutation) -> np.ndarray:
    """0-1 matrix with (X_w)[w(j), j] = 1."""
    return _rook(w).copy()


@lru_cache(maxsize=50_000)
def _rank(w: SignedPermutation) -> np.ndarray:
    r = _rook(w)[::-1].cumsum(axis=0)[::-1].cumsum(axis=1)
    r.setflags(write=False)
    return r


def rank_matrix(w: SignedPermutation) -> np.ndarray:
    return _rank(w).copy()


def rank_at(r: np.ndarray, row_label: int, col_label: int) -> int:
    """Entry of a rank matrix by labels; label 0 means an empty strip."""
    n = r.shape[0] // 2
    if row_label == 0 or col_label == 0:
        return 0
    return int(r[position(row_label, n), position(col_label, n)])


def is_empty_rectangle(w: SignedPermutation, a: int, b: int) -> bool:
    """True iff no i in [+-n] has |i| >= b and |w(i)| >= a."""
    n = w.n
    if not (1 <= a <= n and 1 <= b <= n):
        raise InvalidInput(f"rectangle bounds ({a}, {b}) out of range 1..{n}")
    return not any(abs(w(i)) >= a for i in labels(n) if abs(i) >= b)


def _check_pair(v: SignedPermutation, w: SignedPermutation):
    if v.family != w.family or v.n != w.n:
        raise InvalidInput(f"{v!r} and {w!r} live in different groups")


def bruhat_leq(v: SignedPermutation, w: SignedPermutation) -> bool:
    """
    v <= w in Bruhat order.

    Type D goes through rank matrices: R_v <= R_w entrywise, and for every
    rectangle [-a, a] x [-b, b] empty for both elements on which the ranks at
    (-(a-1), b-1) agree, the ranks at (-(a-1), n) agree mod 2.  For A, B and
    C the entrywise rank comparison alone decides.
    """
    _check_pair(v, w)
    rv, rw = _rank(v), _rank(w)
    if (rv > rw).any():
        return False
    if v.family != "D":
        return True
    n = v.n
    for a in range(2, n + 1):
        for b in range(2, n + 1):
            if not (is_empty_rectangle(v, a, b) and is_empty_rectangle(w, a, b)):
                continue
            if rank_at(rv, -(a - 1), b - 1) != rank_at(rw, -(a - 1), b - 1):
                continue
            if (rank_at(rv, -(a - 1), n) - rank_at(rw, -(a - 1), n)) % 2:
                return False
    return True


@lru_cache(maxsize=20_000)
def _interval(w: SignedPermutation) -> frozenset[SignedPermutation]:
    spec = w.spec
    reach = {identity(spec)}
    for i in reduced_word(w):
        s = simple_reflection(spec, i)
        reach |= {u * s for u in reach if length(u * s) > length(u)}
    return frozenset(reach)


def bruhat_interval(w: SignedPermutation, budget: int = DEFAULT_SUBWORD_BUDGET) -> frozenset[SignedPermutation]:
    """All v <= w: products of reduced subwords of the canonical word of w."""
    if length(w) > budget:
        raise ResourceLimit(f"l(w) = {length(w)} exceeds subword budget {budget}")
    return _interval(w)


def bruhat_leq_subword(v: SignedPermutation, w: SignedPermutation,
                       budget: int = DEFAULT_SUBWORD_BUDGET) -> bool:
    _check_pair(v, w)
    return v in bruhat_interval(w, budget)


def strict_lower_rank(w: SignedPermutation) -> np.ndarray:
    """R*_w: entries with row position <= column position set to zero."""
    return np.tril(_rank(w), k=-1)


def involution_leq_star(sigma: SignedPermutation, tau: SignedPermutation) -> bool:
    _check_pair(sigma, tau)
    if not (is_involution(sigma) and is_involution(tau)):
        raise InvalidInput("both arguments must be involutions")
    return bool((strict_lower_rank(sigma) <= strict_lower_rank(tau)).all())


def _header(n: int, width: int) -> str:
    return " " * 3 + "".join(f"{x:>{width}}" for x in labels(n))


def render_rook(w: SignedPermutation) -> str:
    n, x = w.n, _rook(w)
    lines = [_header(n, 3)]
    for lab, row in zip(labels(n), x):
        lines.append(f"{lab:>3}" + "".join(f"{'⊗' if c else '·':>3}" for c in row))
    return "\n".join(lines)


def render_rank(r: np.ndarray) -> str:
    n = r.shape[0] // 2
    lines = [_header(n, 3)]
    for lab, row in zip(labels(n), r):
        lines.append(f"{lab:>3}" + "".join(f"{int(c):>3}" for c in row))
    return "\n".join(lines)
