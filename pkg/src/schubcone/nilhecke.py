"""
The nil-Hecke ring over root fractions, the elements x_w, their coordinates
c_{w,v} in the delta basis, and Kostant-Kumar polynomials d_w.

Three independent routes compute c_{w,v}:

* the product x_{i_1} ... x_{i_l} in the ring (the main path),
* the signed sum over 0/1 sequences along a reduced word,
* the length recursion on the right or on the left.

A ``NilHecke`` instance owns the memo tables; use one per run.  Passing
``simple_indices`` restricts to the parabolic subsystem generated by those
simple roots, whose Weyl group is a subgroup of the ambient one and whose
positive roots are the ones in their span.

>>> from schubcone.roots import RootSystemSpec
>>> from schubcone.weyl import word_product
>>> ring = NilHecke(RootSystemSpec("A", 2))
>>> w = word_product(ring.spec, [1, 2, 1])
>>> print(ring.c_w(w))
-1 / ((e1-e2)*(e1-e3)*(e2-e3))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import InternalConsistencyError, InvalidInput, ResourceLimit
from .roots import Root, RootSystemSpec, positive_roots, simple_roots
from .symbolic import RootFraction, SparsePolynomial
from .weyl import (
    SignedPermutation, act_on_root, identity, inverse, left_descents, length,
    reduced_word, right_descents, simple_reflection,
)

__all__ = ["NilHeckeElement", "NilHecke", "subsystem_positive_roots"]

DEFAULT_SUBWORD_CAP = 8


@dataclass
class NilHeckeElement:
    """Finite sum of f_v delta_v with nonzero root-fraction coefficients."""

    spec: RootSystemSpec
    terms: dict[SignedPermutation, RootFraction] = field(default_factory=dict)

    def coefficient(self, v: SignedPermutation) -> RootFraction:
        return self.terms.get(v) or RootFraction.zero(self.spec.dim)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: NilHeckeElement) -> NilHeckeElement:
        out = dict(self.terms)
        for v, f in other.terms.items():
            s = out[v] + f if v in out else f
            if s.is_zero():
                out.pop(v, None)
            else:
                out[v] = s
        return NilHeckeElement(self.spec, out)

    def __neg__(self):
        return NilHeckeElement(self.spec, {v: -f for v, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: NilHeckeElement) -> NilHeckeElement:
        """f delta_v * g delta_w = f v(g) delta_{vw}."""
        if self.spec != other.spec:
            raise InvalidInput("elements of different nil-Hecke rings")
        groups: dict[SignedPermutation, list[RootFraction]] = {}
        for v, f in self.terms.items():
            for w, g in other.terms.items():
                groups.setdefault(v * w, []).append(f * g.weyl_act(v))
        out = {}
        for u, parts in groups.items():
            s = RootFraction.sum(parts, self.spec.dim)
            if not s.is_zero():
                out[u] = s
        return NilHeckeElement(self.spec, out)

    def __eq__(self, other):
        if not isinstance(other, NilHeckeElement):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"[{f}] d{v}" for v, f in sorted(
            self.terms.items(), key=lambda t: (length(t[0]), t[0].images)))


def subsystem_positive_roots(spec: RootSystemSpec, indices: Iterable[int]) -> tuple[Root, ...]:
    """Positive roots in the span of the chosen simple roots, in ambient order."""
    simple = simple_roots(spec)
    gens = [simple[i - 1] for i in indices]
    found = set(gens)
    frontier = list(gens)
    while frontier:
        beta = frontier.pop()
        for i in indices:
            gamma = act_on_root(simple_reflection(spec, i), beta)
            _, gamma = gamma.positive()
            if gamma not in found:
                found.add(gamma)
                frontier.append(gamma)
    return tuple(a for a in positive_roots(spec) if a in found)


class NilHecke:
    def __init__(self, spec: RootSystemSpec, simple_indices: Iterable[int] | None = None):
        self.spec = spec
        if simple_indices is None:
            simple_indices = range(1, spec.rank + 1)
        self.indices = tuple(sorted(set(simple_indices)))
        if not all(1 <= i <= spec.rank for i in self.indices):
            raise InvalidInput(f"simple indices {self.indices} out of range")
        self.positive_roots = subsystem_positive_roots(spec, self.indices)
        self.id = identity(spec)
        self._x: dict[SignedPermutation, NilHeckeElement] = {}
        self._rec: dict[tuple, RootFraction] = {}

    def clear(self):
        self._x.clear()
        self._rec.clear()

    # basic elements

    def _zero(self) -> RootFraction:
        return RootFraction.zero(self.spec.dim)

    def _one(self) -> RootFraction:
        return RootFraction.one(self.spec.dim)

    def _check_index(self, i: int):
        if i not in self.indices:
            raise InvalidInput(f"simple index {i} not in {self.indices}")

    def _check_element(self, w: SignedPermutation):
        if w.spec != self.spec:
            raise InvalidInput(f"{w!r} is not in W({self.spec})")
        if not set(reduced_word(w)) <= set(self.indices):
            raise InvalidInput(f"{w} is not in the parabolic subgroup {self.indices}")

    def delta(self, w: SignedPermutation, coeff: RootFraction | None = None) -> NilHeckeElement:
        self._check_element(w)
        return NilHeckeElement(self.spec, {w: coeff or self._one()})

    def x_gen(self, i: int) -> NilHeckeElement:
        """x_i = alpha_i^{-1} (delta_{s_i} - delta_id)."""
        self._check_index(i)
        f = RootFraction.inv_root(simple_roots(self.spec)[i - 1])
        return NilHeckeElement(self.spec, {simple_reflection(self.spec, i): f, self.id: -f})

    def mul(self, a: NilHeckeElement, b: NilHeckeElement) -> NilHeckeElement:
        return a * b

    def times_x(self, a: NilHeckeElement, i: int) -> NilHeckeElement:
        """a * x_i, coordinatewise: c'_u = -(c_{u s_i} + c_u) / u(alpha_i)."""
        self._check_index(i)
        s = simple_reflection(self.spec, i)
        alpha = simple_roots(self.spec)[i - 1]
        out = {}
        keys = set(a.terms) | {u * s for u in a.terms}
        for u in sorted(keys, key=lambda g: g.images):
            f, g = a.terms.get(u * s), a.terms.get(u)
            total = f + g if (f is not None and g is not None) else (f if g is None else g)
            if total.is_zero():
                continue
            out[u] = (-total).divide_by_root(act_on_root(u, alpha))
        return NilHeckeElement(self.spec, out)

    # x_w and its coordinates

    def x_of_word(self, word: Iterable[int]) -> NilHeckeElement:
        out = self.delta(self.id)
        for i in word:
            out = self.times_x(out, i)
        return out

    def x_of(self, w: SignedPermutation) -> NilHeckeElement:
        """x_w over the canonical reduced word, memoized along prefixes."""
        if w in self._x:
            return self._x[w]
        self._check_element(w)
        chain = []
        u = w
        while u not in self._x and not u.is_identity():
            i = reduced_word(u)[-1]
            chain.append((u, i))
            u = u * simple_reflection(self.spec, i)
        cur = self._x.get(u) or self.delta(self.id)
        self._x.setdefault(u, cur)
        for g, i in reversed(chain):
            cur = self.times_x(cur, i)
            self._x[g] = cur
        return cur

    def c_wv(self, w: SignedPermutation, v: SignedPermutation) -> RootFraction:
        return self.x_of(w).coefficient(v)

    def c_wv_subword(self, w: SignedPermutation, v: SignedPermutation,
                     cap: int = DEFAULT_SUBWORD_CAP, word: Iterable[int] | None = None) -> RootFraction:
        """
        (-1)^l sum over 0/1 sequences with s_{i_1}^{e_1} ... s_{i_l}^{e_l} = v of
        prod_j 1 / (s_{i_1}^{e_1} ... s_{i_j}^{e_j} alpha_{i_j}).
        """
        self._check_element(w)
        word = tuple(reduced_word(w) if word is None else word)
        if len(word) > cap:
            raise ResourceLimit(f"subword sum needs 2^{len(word)} terms, cap is length {cap}")
        simple = simple_roots(self.spec)
        total = self._zero()

        def walk(j, g, denominators):
            nonlocal total
            if j == len(word):
                if g == v:
                    term = RootFraction(SparsePolynomial.one(self.spec.dim),
                                        [(r, 1) for r in denominators])
                    total = total + term
                return
            i = word[j]
            for bit in (0, 1):
                h = g * simple_reflection(self.spec, i) if bit else g
                walk(j + 1, h, denominators + [act_on_root(h, simple[i - 1])])

        walk(0, self.id, [])
        return total if len(word) % 2 == 0 else -total

    def c_wv_recursive(self, w: SignedPermutation, v: SignedPermutation,
                       side: str = "right") -> RootFraction:
        """Length recursion: right descents (1b) or left descents (1c)."""
        if side not in ("right", "left"):
            raise InvalidInput("side must be 'right' or 'left'")
        key = (w, v, side)
        if key in self._rec:
            return self._rec[key]
        if w.is_identity():
            res = self._one() if v.is_identity() else self._zero()
        elif side == "right":
            i = min(right_descents(w))
            self._check_index(i)
            s = simple_reflection(self.spec, i)
            ws = w * s
            total = self.c_wv_recursive(ws, v, side) + self.c_wv_recursive(ws, v * s, side)
            res = (-total).divide_by_root(act_on_root(v, simple_roots(self.spec)[i - 1]))
        else:
            i = min(left_descents(w))
            self._check_index(i)
            s = simple_reflection(self.spec, i)
            sw = s * w
            total = self.c_wv_recursive(sw, s * v, side).weyl_act(s) - self.c_wv_recursive(sw, v, side)
            res = total.divide_by_root(simple_roots(self.spec)[i - 1])
        self._rec[key] = res
        return res

    # Kostant-Kumar polynomials

    def c_w(self, w: SignedPermutation) -> RootFraction:
        return self.c_wv(w, self.id)

    def d_w_factored(self, w: SignedPermutation) -> tuple[SparsePolynomial, tuple[Root, ...]]:
        """
        d_w as cofactor times a product of distinct positive roots.

        d_w = (-1)^l(w) c_w prod(positive roots) is a polynomial, so every
        root in the normalized denominator of c_w is a simple factor of that
        product; anything else signals an arithmetic bug.
        """
        c = self.c_w(w)
        den = c.den_dict()
        extra = [r for r, m in den.items() if m > 1 or r not in self.positive_roots]
        if extra or c.is_zero():
            raise InternalConsistencyError(f"d_w for {w} would keep the denominator {c.den}")
        cofactor = c.num if length(w) % 2 == 0 else -c.num
        return cofactor, tuple(r for r in self.positive_roots if r not in den)

    def d_w(self, w: SignedPermutation) -> SparsePolynomial:
        cofactor, roots = self.d_w_factored(w)
        out = cofactor
        for r in roots:
            out = out.mul_linear(r.coeffs)
        return out

    def root_product(self) -> SparsePolynomial:
        return SparsePolynomial.product_of_roots(self.spec.dim, self.positive_roots)
