"""
Exact sparse polynomials in e1, ..., e_m and fractions whose denominators
are products of positive roots.

Denominators never hold anything but positive roots, so cancellation only
ever needs exact division by a linear form.  A fraction is kept normalized:
no denominator root divides the numerator.  Since positive roots are
pairwise non-associate irreducibles, that form is unique.

>>> a1, a2 = Root((1, -1, 0)), Root((0, 1, -1))
>>> RootFraction.inv_root(a1) + RootFraction.inv_root(a2)
RootFraction((e1 - e3) / ((e1-e2)*(e2-e3)))
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable

from .errors import InvalidInput
from .roots import Root
from .weyl import SignedPermutation

__all__ = [
    "SparsePolynomial", "RootFraction", "divide_by_linear", "divides_root",
    "weyl_act", "normalize", "equals",
]


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _clean(Fraction(a) / b)


class SparsePolynomial:
    """Map from exponent tuples to nonzero rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: dict | None = None, _trusted: bool = False):
        self.nvars = nvars
        if _trusted:
            self.terms = terms
        else:
            self.terms = {}
            for e, c in (terms or {}).items():
                e = tuple(e)
                if len(e) != nvars:
                    raise InvalidInput(f"exponent {e} has wrong length for {nvars} variables")
                c = _clean(c)
                if c:
                    self.terms[e] = c
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {}, True)

    @classmethod
    def constant(cls, nvars, c):
        c = _clean(c)
        return cls(nvars, {(0,) * nvars: c} if c else {}, True)

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars, i):
        """The coordinate e_i, 1-based."""
        e = [0] * nvars
        e[i - 1] = 1
        return cls(nvars, {tuple(e): 1}, True)

    @classmethod
    def linear(cls, coeffs: Iterable[int]) -> SparsePolynomial:
        coeffs = tuple(coeffs)
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls(n, terms, True)

    @classmethod
    def product_of_roots(cls, nvars, roots: Iterable[Root]) -> SparsePolynomial:
        p = cls.one(nvars)
        for r in roots:
            p = p.mul_linear(r.coeffs)
        return p

    # arithmetic

    def _check(self, other):
        if self.nvars != other.nvars:
            raise InvalidInput("polynomials over different variable sets")

    def __add__(self, other):
        if isinstance(other, Rational):
            other = SparsePolynomial.constant(self.nvars, other)
        self._check(other)
        if len(self.terms) < len(other.terms):
            self, other = other, self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _clean(s)
            else:
                out.pop(e, None)
        return SparsePolynomial(self.nvars, out, True)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial(self.nvars, {e: -c for e, c in self.terms.items()}, True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q):
        q = _clean(q)
        if not q:
            return SparsePolynomial.zero(self.nvars)
        return SparsePolynomial(self.nvars,
                                {e: _clean(c * q) for e, c in self.terms.items()}, True)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return SparsePolynomial(self.nvars, {e: _clean(c) for e, c in out.items()}, True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SparsePolynomial.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def mul_linear(self, coeffs) -> SparsePolynomial:
        """Multiply by the linear form sum coeffs[i] e_{i+1}."""
        out: dict = {}
        for i, a in enumerate(coeffs):
            if not a:
                continue
            for e, c in self.terms.items():
                e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
                s = out.get(e2, 0) + a * c
                if s:
                    out[e2] = s
                else:
                    del out[e2]
        return SparsePolynomial(self.nvars, out, True)

    def substitute_signed(self, images) -> SparsePolynomial:
        """Substitute e_i -> sign(images[i]) e_|images[i]|."""
        n = self.nvars
        target = [abs(x) - 1 for x in images]
        neg = [i for i, x in enumerate(images) if x < 0]
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, k in enumerate(e):
                e2[target[i]] = k
            if sum(e[i] for i in neg) % 2:
                c = -c
            out[tuple(e2)] = c
        return SparsePolynomial(n, out, True)

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, point):
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x ** k
            total += t
        return _clean(total) if isinstance(total, Fraction) else total

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = SparsePolynomial.constant(self.nvars, other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # output

    def sorted_terms(self):
        """Terms by descending total degree, then descending lex exponent."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))

    def _render(self, var, power, times):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = times.join(var(i + 1) + power(k) for i, k in enumerate(e) if k)
            mag = abs(c)
            if mono:
                coef = "" if mag == 1 else f"{mag}{times}"
                body = coef + mono
            else:
                body = str(mag)
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self._render(lambda i: f"e{i}", lambda k: "" if k == 1 else f"^{k}", "*")

    def to_tex(self) -> str:
        return self._render(lambda i: rf"\varepsilon_{{{i}}}",
                            lambda k: "" if k == 1 else f"^{{{k}}}", " ")

    def __repr__(self):
        return f"SparsePolynomial({self})"

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [[list(e), str(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> SparsePolynomial:
        return cls(data["nvars"], {tuple(e): Fraction(c) for e, c in data["terms"]})


def divide_by_linear(p: SparsePolynomial, l) -> SparsePolynomial | None:
    """
    Exact quotient p / l for a nonzero linear form l, or None.

    Eliminates on a pivot variable of l: writing l = c x + r and grouping p
    by powers of x, the quotient is recovered top-down, and the leftover
    constant-in-x part must vanish.

    >>> e = [SparsePolynomial.variable(2, i) for i in (1, 2)]
    >>> divide_by_linear(e[0] * e[0] + e[0] * e[1], (1, 0))
    SparsePolynomial(e1 + e2)
    >>> divide_by_linear(e[0] + e[1], (1, 0)) is None
    True
    """
    coeffs = tuple(l.coeffs) if isinstance(l, Root) else tuple(l)
    n = p.nvars
    if len(coeffs) != n or not any(coeffs):
        raise InvalidInput("divisor must be a nonzero linear form in the same variables")
    if p.is_zero():
        return p
    nz = [i for i, c in enumerate(coeffs) if c]
    k = next((i for i in nz if abs(coeffs[i]) == 1), nz[0])
    c = coeffs[k]
    rest = [(i, coeffs[i]) for i in nz if i != k]

    # slices[d] maps exponents with e[k] = 0 to the coefficient of x_k^d
    slices: dict[int, dict] = {}
    for e, a in p.terms.items():
        d = e[k]
        key = e[:k] + (0,) + e[k + 1:]
        slices.setdefault(d, {})[key] = a
    top = max(slices)
    if top == 0:
        return None

    def times_rest(q: dict) -> dict:
        out: dict = {}
        for i, b in rest:
            for e, a in q.items():
                e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
                s = out.get(e2, 0) + a * b
                if s:
                    out[e2] = s
                else:
                    del out[e2]
        return out

    quotient: dict = {}
    q_prev: dict = {}
    for d in range(top, 0, -1):
        # c * Q_{d-1} = P_d - r * Q_d
        cur = dict(slices.get(d, {}))
        for e, a in times_rest(q_prev).items():
            s = cur.get(e, 0) - a
            if s:
                cur[e] = s
            else:
                cur.pop(e, None)
        q_d1 = {e: _exact_div(a, c) for e, a in cur.items()}
        for e, a in q_d1.items():
            quotient[e[:k] + (d - 1,) + e[k + 1:]] = a
        q_prev = q_d1
    if times_rest(q_prev) != slices.get(0, {}):
        return None
    return SparsePolynomial(n, {e: _clean(a) for e, a in quotient.items()}, True)


def divides_root(alpha: Root, p: SparsePolynomial) -> bool:
    return divide_by_linear(p, alpha) is not None


def _cancel(num: SparsePolynomial, den: dict, candidates) -> SparsePolynomial:
    """Divide num by candidate roots while possible, decrementing den in place."""
    if num.degree() <= 0:
        return num
    for r in candidates:
        while den.get(r):
            q = divide_by_linear(num, r)
            if q is None:
                break
            num = q
            den[r] -= 1
    return num


def _merge(den: dict) -> tuple[tuple[Root, int], ...]:
    return tuple(sorted(((r, m) for r, m in den.items() if m), key=lambda t: t[0]._key))


@lru_cache(maxsize=1 << 16)
def _signed_action(w: SignedPermutation, alpha: Root) -> tuple[int, Root]:
    from .weyl import act_on_root
    return act_on_root(w, alpha).positive()


class RootFraction:
    """num / prod(root ** mult) with positive roots in the denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: SparsePolynomial, den=(), _normalized: bool = False):
        d: dict[Root, int] = {}
        items = den.items() if isinstance(den, dict) else den
        sign = 1
        for r, m in items:
            s, r = r.positive()
            if s < 0 and m % 2:
                sign = -sign
            d[r] = d.get(r, 0) + m
        self.num = num if sign > 0 else -num
        self.den = _merge(d)
        if not _normalized:
            self._normalize()

    def _normalize(self):
        if self.num.is_zero():
            self.den = ()
            return
        num, den = self.num, []
        for r, m in self.den:
            while m:
                q = divide_by_linear(num, r)
                if q is None:
                    break
                num, m = q, m - 1
            if m:
                den.append((r, m))
        self.num, self.den = num, tuple(den)

    @classmethod
    def _make(cls, num: SparsePolynomial, den: dict) -> RootFraction:
        # den already holds positive roots and shares no factor with num
        out = object.__new__(cls)
        out.num, out.den = num, _merge(den)
        return out

    @classmethod
    def sum(cls, fractions, nvars: int) -> RootFraction:
        """Add many fractions over one common denominator."""
        # summands over the same denominator are added first; a merged
        # bucket may then share roots with its denominator, so renormalize it
        buckets: dict[tuple, list[SparsePolynomial]] = {}
        for f in fractions:
            if not f.is_zero():
                buckets.setdefault(f.den, []).append(f.num)
        fractions = []
        for den, nums in buckets.items():
            if len(nums) == 1:
                fractions.append(cls._make(nums[0], dict(den)))
                continue
            num = nums[0]
            for q in nums[1:]:
                num = num + q
            if not num.is_zero():
                fractions.append(cls(num, den))
        if not fractions:
            return cls.zero(nvars)
        if len(fractions) == 1:
            return fractions[0]
        lcm: dict[Root, int] = {}
        hits: dict[Root, int] = {}
        for f in fractions:
            for r, m in f.den:
                if m > lcm.get(r, 0):
                    lcm[r], hits[r] = m, 1
                elif m == lcm[r]:
                    hits[r] += 1
        num = SparsePolynomial.zero(nvars)
        for f in fractions:
            d = dict(f.den)
            n = f.num
            for r, m in lcm.items():
                for _ in range(m - d.get(r, 0)):
                    n = n.mul_linear(r.coeffs)
            num = num + n
        if num.is_zero():
            return cls.zero(nvars)
        # a root whose top multiplicity occurs in one summand only cannot cancel
        num = _cancel(num, lcm, [r for r, h in hits.items() if h > 1])
        return cls._make(num, lcm)

    @classmethod
    def zero(cls, nvars):
        return cls(SparsePolynomial.zero(nvars), (), True)

    @classmethod
    def one(cls, nvars):
        return cls(SparsePolynomial.one(nvars), (), True)

    @classmethod
    def from_poly(cls, p: SparsePolynomial):
        return cls(p, (), True)

    @classmethod
    def inv_root(cls, alpha: Root) -> RootFraction:
        return cls(SparsePolynomial.one(alpha.dim), ((alpha, 1),), True)

    @property
    def nvars(self):
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def den_dict(self) -> dict[Root, int]:
        return dict(self.den)

    def den_poly(self) -> SparsePolynomial:
        return SparsePolynomial.product_of_roots(
            self.nvars, (r for r, m in self.den for _ in range(m)))

    def __add__(self, other: RootFraction) -> RootFraction:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        d1, d2 = self.den_dict(), other.den_dict()
        lcm = dict(d1)
        for r, m in d2.items():
            lcm[r] = max(lcm.get(r, 0), m)
        n1, n2 = self.num, other.num
        for r, m in lcm.items():
            for _ in range(m - d1.get(r, 0)):
                n1 = n1.mul_linear(r.coeffs)
            for _ in range(m - d2.get(r, 0)):
                n2 = n2.mul_linear(r.coeffs)
        # a root with unequal multiplicities divides exactly one summand
        num = n1 + n2
        if num.is_zero():
            return RootFraction.zero(self.nvars)
        num = _cancel(num, lcm, [r for r, m in d1.items() if d2.get(r) == m])
        return RootFraction._make(num, lcm)

    def __neg__(self):
        return RootFraction(-self.num, self.den, True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        if isinstance(other, SparsePolynomial):
            other = RootFraction.from_poly(other)
        if self.is_zero() or other.is_zero():
            return RootFraction.zero(self.nvars)
        # roots shared by both denominators divide neither numerator
        d1, d2 = self.den_dict(), other.den_dict()
        den = dict(d1)
        for r, m in d2.items():
            den[r] = den.get(r, 0) + m
        n1 = _cancel(self.num, den, [r for r in d2 if r not in d1])
        n2 = _cancel(other.num, den, [r for r in d1 if r not in d2])
        return RootFraction._make(n1 * n2, den)

    __rmul__ = __mul__

    def scale(self, q) -> RootFraction:
        return RootFraction(self.num.scale(q), self.den, True)

    def divide_by_root(self, alpha: Root) -> RootFraction:
        """self / alpha for any (possibly negative) root alpha."""
        sign, r = alpha.positive()
        num = self.num if sign > 0 else -self.num
        den = self.den_dict()
        q = divide_by_linear(num, r)
        if q is not None:
            return RootFraction(q, den, True)
        den[r] = den.get(r, 0) + 1
        return RootFraction(num, den, True)

    def weyl_act(self, w: SignedPermutation) -> RootFraction:
        num = self.num.substitute_signed(w.images)
        den = {}
        for r, m in self.den:
            s, r2 = _signed_action(w, r)
            if s < 0 and m % 2:
                num = -num
            den[r2] = m
        return RootFraction._make(num, den)

    def equals(self, other: RootFraction) -> bool:
        return equals(self, other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RootFraction.from_poly(SparsePolynomial.constant(self.nvars, other))
        if not isinstance(other, RootFraction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def as_polynomial(self) -> SparsePolynomial | None:
        return None if self.den else self.num

    def __str__(self):
        if not self.den:
            return str(self.num)
        roots = "*".join(f"({r})" + (f"^{m}" if m > 1 else "") for r, m in self.den)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num} / ({roots})" if len(self.den) > 1 or self.den[0][1] > 1 else f"{num} / {roots}"

    def __repr__(self):
        return f"RootFraction({self})"

    def to_tex(self) -> str:
        if not self.den:
            return self.num.to_tex()
        roots = " ".join(
            "(" + RootFraction.from_poly(SparsePolynomial.linear(r.coeffs)).num.to_tex() + ")"
            + (f"^{{{m}}}" if m > 1 else "") for r, m in self.den)
        return rf"\frac{{{self.num.to_tex()}}}{{{roots}}}"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(),
                "den": [[str(r), m] for r, m in self.den]}


def normalize(f: RootFraction) -> RootFraction:
    return RootFraction(f.num, f.den)


def equals(f: RootFraction, g: RootFraction) -> bool:
    """Cross-multiplied comparison of normalized forms."""
    f, g = normalize(f), normalize(g)
    return f.num * g.den_poly() == g.num * f.den_poly()


def weyl_act(w: SignedPermutation, f: RootFraction) -> RootFraction:
    return f.weyl_act(w)
