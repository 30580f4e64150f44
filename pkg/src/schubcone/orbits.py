"""
Coadjoint orbit dimensions in the matrix model of so_{2n}.

so_{2n} is realized as the 2n x 2n matrices with x^T J + J x = 0, J the
antidiagonal unit matrix, so the Borel subalgebra is upper triangular and
the dual of its nilradical is identified with strictly lower triangular
matrices.  The coadjoint action is b.f = (b f b^{-1})_low, whose differential
at f is x -> (x f - f x)_low; an orbit dimension is the rank of that map.

With i' = 2n + 1 - i, root vectors are

    e_{e_i - e_j} = E_{i,j} - E_{j',i'},    e_{e_i + e_j} = E_{i,j'} - E_{j,i'},

and dual vectors are their transposes.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import InvalidInput
from .roots import Root, RootSystemSpec, positive_roots
from .weyl import SignedPermutation, is_basic_involution, support

__all__ = [
    "antidiagonal", "is_so", "root_vector", "dual_vector", "borel_basis",
    "nilradical_basis", "f_form", "exact_rank", "orbit_dim_B", "orbit_dim_U",
    "orbit_dims",
]


def antidiagonal(n: int) -> np.ndarray:
    return np.fliplr(np.eye(2 * n, dtype=np.int64))


def is_so(x: np.ndarray) -> bool:
    j = antidiagonal(x.shape[0] // 2)
    return not (x.T @ j + j @ x).any()


def _unit(n, i, j):
    m = np.zeros((2 * n, 2 * n), dtype=np.int64)
    m[i - 1, j - 1] = 1
    return m


def root_vector(alpha: Root) -> np.ndarray:
    sup = alpha.support()
    if len(sup) != 2 or sup[0][1] != 1 or abs(sup[1][1]) != 1:
        raise InvalidInput(f"{alpha} is not a positive root of type D")
    n = alpha.dim
    (i, _), (j, c) = sup
    bar = lambda k: 2 * n + 1 - k  # noqa: E731
    if c < 0:
        return _unit(n, i, j) - _unit(n, bar(j), bar(i))
    return _unit(n, i, bar(j)) - _unit(n, j, bar(i))


def dual_vector(alpha: Root) -> np.ndarray:
    return root_vector(alpha).T.copy()


def nilradical_basis(n: int) -> list[np.ndarray]:
    return [root_vector(a) for a in positive_roots(RootSystemSpec("D", n))]


def borel_basis(n: int) -> list[np.ndarray]:
    torus = [_unit(n, i, i) - _unit(n, 2 * n + 1 - i, 2 * n + 1 - i) for i in range(1, n + 1)]
    return torus + nilradical_basis(n)


def f_form(w: SignedPermutation) -> np.ndarray:
    """Sum of the dual root vectors over the support of a basic involution."""
    if w.family != "D" or not is_basic_involution(w):
        raise InvalidInput(f"{w} is not a basic involution of type D")
    f = np.zeros((2 * w.n, 2 * w.n), dtype=np.int64)
    for beta in support(w):
        f += dual_vector(beta)
    return f


def exact_rank(rows) -> int:
    """Rank over Q by Gaussian elimination on Fractions."""
    mat = [[Fraction(int(x)) for x in row] for row in rows]
    rank, ncols = 0, len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank]
        for r in range(rank + 1, len(mat)):
            if mat[r][col] != 0:
                k = mat[r][col] / p[col]
                mat[r] = [a - k * b for a, b in zip(mat[r], p)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def _tangent_rank(f: np.ndarray, basis: list[np.ndarray]) -> int:
    rows = [np.tril(x @ f - f @ x, k=-1).ravel() for x in basis]
    return exact_rank(rows)


def _check_form(f: np.ndarray):
    if f.ndim != 2 or f.shape[0] != f.shape[1] or f.shape[0] % 2:
        raise InvalidInput("a form must be a square matrix of even size")
    if np.triu(f).any():
        raise InvalidInput("a form must be strictly lower triangular")
    if not is_so(f):
        raise InvalidInput("a form must satisfy x^T J + J x = 0")


def orbit_dim_B(f: np.ndarray) -> int:
    _check_form(f)
    return _tangent_rank(f, borel_basis(f.shape[0] // 2))


def orbit_dim_U(f: np.ndarray) -> int:
    _check_form(f)
    return _tangent_rank(f, nilradical_basis(f.shape[0] // 2))


def orbit_dims(w: SignedPermutation) -> tuple[int, int]:
    """(dim of the B-orbit, dim of the U-orbit) of f_w."""
    f = f_form(w)
    return orbit_dim_B(f), orbit_dim_U(f)
