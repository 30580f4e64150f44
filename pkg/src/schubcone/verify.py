"""
Named verification suites.

Each suite runs an exhaustive (or seeded, for the product-law sample) sweep
and returns a ``SuiteReport``: one case per element or pair, each with a
pass flag and a small JSON-able witness.  Cases are sorted by identifier
so that two runs with the same parameters serialize to the same bytes;
wall time is kept on the report but left out of the JSON unless asked for.

>>> report = suite_bruhat_oracle(RootSystemSpec("A", 2))
>>> report.passed, report.summary["failed"]
(True, 0)
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .bruhat import (
    bruhat_leq, bruhat_leq_subword, involution_leq_star, rank_matrix,
)
from .embedding import (
    EmbeddingSpec, direct_length_i, direct_length_ii, lemma32_i, lemma32_ii,
    theorem12_case_split,
)
from .errors import InvalidInput, ResourceLimit
from .nilhecke import NilHecke, NilHeckeElement
from .orbits import orbit_dims
from .roots import RootSystemSpec, column_set, positive_roots
from .symbolic import SparsePolynomial, divides_root
from .weyl import (
    SignedPermutation, all_reduced_words, basic_involutions, enumerate_group,
    involutions, length, reflection, support,
)

__all__ = [
    "Case", "SuiteReport", "SUITES", "run_suite", "run_many", "default_plan",
    "suite_theorem_nonred", "suite_lemma26", "suite_cwv_bruhat",
    "suite_xw_wellformed", "suite_three_routes", "suite_bruhat_oracle",
    "suite_orbit_dims", "suite_lemma32",
]

MAX_NONRED_RANK = 5
MAX_LEMMA26_RANK = 5


@dataclass(frozen=True)
class Case:
    case_id: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"id": self.case_id, "passed": self.passed, "witness": self.witness}


@dataclass
class SuiteReport:
    suite: str
    params: dict
    cases: list[Case]
    wall_time: float = 0.0

    def __post_init__(self):
        self.cases = sorted(self.cases, key=lambda c: c.case_id)

    @property
    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def summary(self) -> dict:
        failed = len(self.failures)
        return {"total": len(self.cases), "passed": len(self.cases) - failed, "failed": failed}

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "summary": self.summary,
            "cases": [c.to_dict() for c in self.cases],
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)

    def to_table(self, show: str = "failures") -> str:
        """Plain text; ``show`` is "failures" (default) or "all"."""
        params = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        s = self.summary
        head = (f"{self.suite} [{params}]  {'PASS' if self.passed else 'FAIL'}  "
                f"{s['passed']}/{s['total']} cases  {self.wall_time:.2f}s")
        rows = self.cases if show == "all" else self.failures
        lines = [head]
        width = max((len(c.case_id) for c in rows), default=0)
        for c in rows:
            w = json.dumps(c.witness, sort_keys=True)
            lines.append(f"  {'ok  ' if c.passed else 'FAIL'} {c.case_id:<{width}}  {w}")
        return "\n".join(lines)


def _timed(suite: str, params: dict, run: Callable[[], list[Case]]) -> SuiteReport:
    t0 = time.perf_counter()
    cases = run()
    return SuiteReport(suite, params, cases, time.perf_counter() - t0)


def _d(rank: int) -> RootSystemSpec:
    return RootSystemSpec("D", rank)


def _elements(spec: RootSystemSpec, length_cap: int | None) -> list[SignedPermutation]:
    g = list(enumerate_group(spec))
    if length_cap is not None:
        g = [w for w in g if length(w) <= length_cap]
    return sorted(g, key=lambda w: (length(w), w.images))


def _wid(w: SignedPermutation) -> str:
    return f"[{w.one_line()}]"


# Kostant-Kumar polynomials of basic involutions


def suite_theorem_nonred(rank: int, table: dict | None = None) -> SuiteReport:
    """
    d_w for every basic involution of D_rank, then pairwise distinctness.

    ``table`` replaces computed polynomials (keyed by element) and exists so
    the harness can be shown to catch a duplicate.  Ranks below 4 are run
    and reported but flagged as informational.
    """
    if rank > MAX_NONRED_RANK:
        raise ResourceLimit(f"theorem_nonred is budgeted for rank <= {MAX_NONRED_RANK}")
    spec = _d(rank)
    params = {"family": "D", "rank": rank, "informational": rank < 4,
              "injected": sorted(_wid(w) for w in (table or {}))}

    def run():
        ring = NilHecke(spec)
        polys = {}
        cases = []
        for w in basic_involutions(spec):
            p = (table or {}).get(w)
            if p is None:
                p = ring.d_w(w)
            polys[w] = p
            cases.append(Case(f"d_w {_wid(w)}", True,
                              {"length": length(w), "degree": p.degree(), "terms": len(p.terms)}))
        seen: dict[SparsePolynomial, SignedPermutation] = {}
        dupes = 0
        for w, p in polys.items():
            if p in seen:
                dupes += 1
                u = seen[p]
                cases.append(Case(f"pair {_wid(u)} {_wid(w)}", False,
                                  {"first": u.one_line(), "second": w.one_line(),
                                   "terms": len(p.terms)}))
            else:
                seen[p] = w
        cases.append(Case("distinct", dupes == 0, {"involutions": len(polys), "duplicates": dupes}))
        return cases

    return _timed("theorem_nonred", params, run)


def suite_lemma26(rank: int) -> SuiteReport:
    """Divisibility of d_w by the roots e1 -+ e_j against the support of w."""
    if rank > MAX_LEMMA26_RANK:
        raise ResourceLimit(f"lemma26 is budgeted for rank <= {MAX_LEMMA26_RANK}")
    spec = _d(rank)

    def run():
        ring = NilHecke(spec)
        col = column_set(spec, 1)
        cases = []
        for w in basic_involutions(spec):
            hit = [b for b in support(w) if b in col]
            d = ring.d_w(w)
            if not hit:
                missing = sorted(str(a) for a in col if not divides_root(a, d))
                cases.append(Case(f"{_wid(w)}", not missing,
                                  {"meets_column": None, "non_dividing": missing}))
            else:
                beta = hit[0]
                ok = len(hit) == 1 and not divides_root(beta, d)
                cases.append(Case(f"{_wid(w)}", ok,
                                  {"meets_column": str(beta), "divides": not ok}))
        return cases

    return _timed("lemma26", {"family": "D", "rank": rank}, run)


# nil-Hecke coefficients


def suite_cwv_bruhat(spec: RootSystemSpec, length_cap: int | None = None) -> SuiteReport:
    """
    c_{w,v} != 0 exactly when v <= w, and every denominator root alpha of
    c_{w,v} has s_alpha v <= w; one case per w over all v.
    """
    def run():
        ring = NilHecke(spec)
        group = _elements(spec, None)
        refl = {a: reflection(spec, a) for a in positive_roots(spec)}
        cases = []
        for w in _elements(spec, length_cap):
            x = ring.x_of(w)
            bad = None
            for v in group:
                c = x.coefficient(v)
                leq = bruhat_leq(v, w)
                if c.is_zero() == leq:
                    bad = {"v": v.one_line(), "nonzero": not c.is_zero(), "leq": leq}
                    break
                stray = [str(a) for a, _ in c.den if not bruhat_leq(refl[a] * v, w)]
                if stray:
                    bad = {"v": v.one_line(), "stray_denominator": stray}
                    break
            cases.append(Case(_wid(w), bad is None, bad or {"support": len(x.terms)}))
        return cases

    params = {"family": spec.family, "rank": spec.rank, "length_cap": length_cap}
    return _timed("cwv_bruhat", params, run)


def suite_xw_wellformed(spec: RootSystemSpec, length_cap: int = 5,
                        product_sample: int | None = None, seed: int = 0) -> SuiteReport:
    """
    x_w over every reduced word of w (l(w) <= length_cap) matches x_w over the
    canonical word; x_v x_w = x_{vw} when lengths add and 0 otherwise, over
    all pairs or a seeded sample of ``product_sample`` pairs.
    """
    def run():
        ring = NilHecke(spec)
        cases = []
        for w in _elements(spec, length_cap):
            ref = ring.x_of(w)
            words = sorted(all_reduced_words(w, cap=max(length_cap, 1)))
            bad = next((list(wd) for wd in words if ring.x_of_word(wd) != ref), None)
            cases.append(Case(f"words {_wid(w)}", bad is None,
                              {"words": len(words)} if bad is None else {"word": bad}))
        group = _elements(spec, None)
        if product_sample is None:
            pairs = [(v, w) for v in group for w in group]
        else:
            rng = random.Random(seed)
            pairs = [(rng.choice(group), rng.choice(group)) for _ in range(product_sample)]
        zero = NilHeckeElement(spec)
        for k, (v, w) in enumerate(pairs):
            vw = v * w
            adds = length(vw) == length(v) + length(w)
            expected = ring.x_of(vw) if adds else zero
            ok = ring.x_of(v) * ring.x_of(w) == expected
            cid = f"product {k:05d} {_wid(v)}*{_wid(w)}" if product_sample else \
                f"product {_wid(v)}*{_wid(w)}"
            cases.append(Case(cid, ok, {"lengths_add": adds}))
        return cases

    params = {"family": spec.family, "rank": spec.rank, "length_cap": length_cap,
              "product_sample": product_sample, "seed": seed}
    return _timed("xw_wellformed", params, run)


def suite_three_routes(spec: RootSystemSpec, length_cap: int = 8) -> SuiteReport:
    """Ring product, subword sum and both recursions agree on every c_{w,v}."""
    def run():
        ring = NilHecke(spec)
        group = _elements(spec, None)
        cases = []
        for w in _elements(spec, length_cap):
            x = ring.x_of(w)
            bad = None
            for v in group:
                c = x.coefficient(v)
                routes = {
                    "subword": ring.c_wv_subword(w, v, cap=length_cap),
                    "right": ring.c_wv_recursive(w, v, "right"),
                    "left": ring.c_wv_recursive(w, v, "left"),
                }
                off = sorted(k for k, f in routes.items() if f != c)
                if off:
                    bad = {"v": v.one_line(), "product": str(c), "disagree": off}
                    break
            cases.append(Case(_wid(w), bad is None, bad or {}))
        return cases

    params = {"family": spec.family, "rank": spec.rank, "length_cap": length_cap}
    return _timed("three_routes", params, run)


# Bruhat order


def suite_bruhat_oracle(spec: RootSystemSpec, length_cap: int | None = None) -> SuiteReport:
    """
    Rank-matrix test against the subword oracle for all v and all w with
    l(w) <= length_cap; for involutions, R <= R' exactly when the strictly
    lower parts compare.
    """
    def run():
        group = _elements(spec, None)
        cases = []
        for w in _elements(spec, length_cap):
            bad = next((v for v in group if bruhat_leq(v, w) != bruhat_leq_subword(v, w)), None)
            cases.append(Case(f"order {_wid(w)}", bad is None,
                              {} if bad is None else {"v": bad.one_line(),
                                                      "rank_test": bruhat_leq(bad, w)}))
        if spec.family in ("B", "D"):
            inv = involutions(spec)
            for s in inv:
                bad = next((t for t in inv if bool((rank_matrix(s) <= rank_matrix(t)).all())
                            != involution_leq_star(s, t)), None)
                cases.append(Case(f"star {_wid(s)}", bad is None,
                                  {} if bad is None else {"tau": bad.one_line()}))
        return cases

    params = {"family": spec.family, "rank": spec.rank, "length_cap": length_cap}
    return _timed("bruhat_oracle", params, run)


# orbits and embeddings


def suite_orbit_dims(rank: int) -> SuiteReport:
    """B-orbit dimension l(w) and U-orbit dimension l(w) - |Supp(w)|."""
    spec = _d(rank)

    def run():
        cases = []
        for w in basic_involutions(spec):
            b, u = orbit_dims(w)
            l, s = length(w), len(support(w))
            cases.append(Case(_wid(w), b == l and u == l - s,
                              {"dim_B": b, "dim_U": u, "length": l, "support": s}))
        return cases

    return _timed("orbit_dims", {"family": "D", "rank": rank}, run)


def suite_lemma32(rank: int) -> SuiteReport:
    """
    Closed length formulas against brute force in W(D_{rank+2}) for every
    basic involution and every k1 < k2, then the case split for every pair
    of distinct equal-length basic involutions.
    """
    spec = _d(rank)

    def run():
        cases = []
        basics = basic_involutions(spec)
        for w in basics:
            for k1, k2 in combinations(range(1, rank + 3), 2):
                e = EmbeddingSpec(rank, k1, k2)
                got = (lemma32_i(w, e), lemma32_ii(w, e))
                want = (direct_length_i(w, e), direct_length_ii(w, e))
                cases.append(Case(f"lengths {_wid(w)} k1={k1} k2={k2}", got == want,
                                  {"formula": list(got), "direct": list(want)}))
        for w1, w2 in combinations(basics, 2):
            if length(w1) != length(w2):
                continue
            split = theorem12_case_split(w1, w2)
            cases.append(Case(f"split {_wid(w1)} {_wid(w2)}",
                              split.distinct and split.consistent, split.row()))
        return cases

    return _timed("lemma32", {"family": "D", "rank": rank}, run)


# registry and plans


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "theorem_nonred": suite_theorem_nonred,
    "lemma26": suite_lemma26,
    "cwv_bruhat": suite_cwv_bruhat,
    "xw_wellformed": suite_xw_wellformed,
    "three_routes": suite_three_routes,
    "bruhat_oracle": suite_bruhat_oracle,
    "orbit_dims": suite_orbit_dims,
    "lemma32": suite_lemma32,
}

# suites that take a RootSystemSpec rather than a type-D rank
_SPEC_SUITES = {"cwv_bruhat", "xw_wellformed", "three_routes", "bruhat_oracle"}


def run_suite(name: str, family: str = "D", rank: int = 4, **kwargs) -> SuiteReport:
    if name not in SUITES:
        raise InvalidInput(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    if name in _SPEC_SUITES:
        return SUITES[name](RootSystemSpec(family, rank), **kwargs)
    if family != "D":
        raise InvalidInput(f"suite {name} is defined for family D only")
    return SUITES[name](rank, **kwargs)


def _run_request(req: tuple[str, dict]) -> SuiteReport:
    name, kwargs = req
    return run_suite(name, **kwargs)


def run_many(requests: list[tuple[str, dict]], jobs: int = 1) -> list[SuiteReport]:
    """Run independent suite requests, optionally in worker processes; order is kept."""
    if jobs <= 1 or len(requests) <= 1:
        return [_run_request(r) for r in requests]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_request, requests))


def default_plan(extended: bool = False) -> list[tuple[str, dict]]:
    """The default sweep over A2, A3, B2, D3, D4; ``extended`` adds D5."""
    plan: list[tuple[str, dict]] = []
    for fam, r in (("A", 2), ("A", 3), ("B", 2), ("D", 3)):
        plan.append(("bruhat_oracle", {"family": fam, "rank": r}))
        plan.append(("cwv_bruhat", {"family": fam, "rank": r}))
        plan.append(("three_routes", {"family": fam, "rank": r, "length_cap": 6}))
        plan.append(("xw_wellformed", {"family": fam, "rank": r, "length_cap": 5}))
    plan += [
        ("bruhat_oracle", {"family": "D", "rank": 4}),
        ("cwv_bruhat", {"family": "D", "rank": 4, "length_cap": 6}),
        ("three_routes", {"family": "D", "rank": 4, "length_cap": 5}),
        ("xw_wellformed", {"family": "D", "rank": 4, "length_cap": 5, "product_sample": 1000}),
        ("theorem_nonred", {"rank": 4}),
        ("lemma26", {"rank": 4}),
        ("orbit_dims", {"rank": 4}),
        ("lemma32", {"rank": 4}),
    ]
    if extended:
        plan += [("theorem_nonred", {"rank": 5}), ("lemma26", {"rank": 5}),
                 ("orbit_dims", {"rank": 5})]
    return plan

