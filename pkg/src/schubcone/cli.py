"""
Command line entry point.

    schubcone dw --family D --rank 4 --element=-2,4,1,-3
    schubcone dw "A 3 / 2,1,3"
    schubcone cwv --family A --rank 2 --word "s1 s2 s1"
    schubcone bruhat --family D --rank 4 --v=1,2,3,4 --w=-2,4,1,-3
    schubcone rank-matrix "D 4 / -2,4,1,-3"
    schubcone involutions --family D --rank 4 --basic
    schubcone verify --suite theorem_nonred --rank 4

Exit status: 0 on success, 1 on bad input or a computation error, 2 when a
verification suite fails.
"""

from __future__ import annotations

import argparse
import contextlib
import fcntl
import json
import os
import re
import sys
from pathlib import Path

from . import __version__
from .bruhat import bruhat_leq, rank_matrix, render_rank, render_rook, rook_matrix
from .errors import InvalidInput, ResourceLimit
from .nilhecke import NilHecke
from .roots import RootSystemSpec
from .symbolic import SparsePolynomial
from .weyl import (
    SignedPermutation, basic_involutions, from_one_line, identity, involutions,
    is_basic_involution, length, parse_one_line, reduced_word, support,
    word_product,
)

CACHE_ENV = "SCHUBCONE_CACHE"
EXIT_OK, EXIT_ERROR, EXIT_SUITE_FAILED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # usage errors count as bad input, keeping 2 for suite failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# input parsing

_TARGET = re.compile(r"^\s*([ABCD])\s*(\d+)\s*/\s*(.+?)\s*$")


def parse_target(text: str) -> tuple[str, int, str]:
    """Split "D 4 / -2,4,1,-3" into (family, rank, one-line)."""
    m = _TARGET.match(text)
    if not m:
        raise InvalidInput(f"expected 'FAMILY RANK / one-line', got {text!r}")
    return m.group(1), int(m.group(2)), m.group(3)


def resolve_element(family: str, rank: int, text: str) -> SignedPermutation:
    """
    Parse one-line notation, or "id".  Type A also accepts a permutation of
    1..rank, read as an element of S_rank (so "A 3 / 2,1,3" is s1 in A2).
    """
    spec = RootSystemSpec(family, rank)
    if text.strip().lower() in ("id", "e", "1"):
        return identity(spec)
    images = parse_one_line(text)
    if family == "A" and len(images) == rank and rank >= 2:
        return from_one_line("A", images)
    if len(images) != spec.dim:
        raise InvalidInput(f"{family}{rank} needs {spec.dim} images, got {len(images)}")
    return from_one_line(family, images)


def parse_word(text: str) -> list[int]:
    """ "s1 s2 s1", "1,2,1" and "s1s2s1" all give [1, 2, 1]."""
    toks = re.findall(r"s?\s*(\d+)", text)
    if not toks or re.sub(r"[s\d,\s]", "", text):
        raise InvalidInput(f"malformed word {text!r}")
    return [int(t) for t in toks]


def _element_args(args) -> SignedPermutation:
    if getattr(args, "target", None):
        family, rank, text = parse_target(args.target)
        return resolve_element(family, rank, text)
    if args.family is None or args.rank is None or args.element is None:
        raise InvalidInput("give 'FAMILY RANK / one-line' or --family, --rank and --element")
    return resolve_element(args.family, args.rank, args.element)


def _spec_args(args) -> RootSystemSpec:
    if args.family is None or args.rank is None:
        raise InvalidInput("--family and --rank are required")
    return RootSystemSpec(args.family, args.rank)


# cache


def cache_path(explicit: str | None) -> Path:
    if explicit:
        return Path(explicit)
    if os.environ.get(CACHE_ENV):
        return Path(os.environ[CACHE_ENV])
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "schubcone" / "dw.jsonl"


def cache_key(w: SignedPermutation) -> str:
    return f"{w.family} {w.rank} / {w.one_line()}"


@contextlib.contextmanager
def _locked(path: Path, mode: str, lock: int):
    with open(path, mode, encoding="utf-8") as fh:
        fcntl.flock(fh, lock)
        try:
            yield fh
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def cache_load(path: Path, key: str) -> dict | None:
    """Latest record for ``key`` written by this version; other versions are ignored."""
    if not path.exists():
        return None
    found = None
    with _locked(path, "r", fcntl.LOCK_SH) as fh:
        for line in fh:
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                continue
            if rec.get("key") == key and rec.get("version") == __version__:
                found = rec
    return found


def cache_store(path: Path, key: str, value: dict):
    path.parent.mkdir(parents=True, exist_ok=True)
    rec = {"key": key, "version": __version__, **value}
    with _locked(path, "a", fcntl.LOCK_EX) as fh:
        fh.write(json.dumps(rec, sort_keys=True) + "\n")


def compute_dw_record(w: SignedPermutation) -> dict:
    d = NilHecke(w.spec).d_w(w)
    return {"length": length(w), "reduced_word": list(reduced_word(w)), "d_w": d.to_json()}


def dw_record(w: SignedPermutation, path: Path | None) -> dict:
    key = cache_key(w)
    if path is not None:
        rec = cache_load(path, key)
        if rec is not None:
            return {k: rec[k] for k in ("length", "reduced_word", "d_w")}
    rec = compute_dw_record(w)
    if path is not None:
        cache_store(path, key, rec)
    return rec


# commands


def _emit_json(obj):
    print(json.dumps(obj, sort_keys=True))


def _word_str(word) -> str:
    return " ".join(f"s{i}" for i in word) or "(empty)"


def cmd_dw(args) -> int:
    w = _element_args(args)
    path = None if args.no_cache else cache_path(args.cache_path)
    rec = dw_record(w, path)
    d = SparsePolynomial.from_json(rec["d_w"])
    if args.json:
        _emit_json({"family": w.family, "rank": w.rank, "element": list(w.images),
                    "length": rec["length"], "reduced_word": rec["reduced_word"],
                    "d_w": rec["d_w"], "d_w_text": str(d)})
        return EXIT_OK
    print(f"w = [{w.one_line()}] in {w.spec}")
    print(f"length {rec['length']}, reduced word {_word_str(rec['reduced_word'])}")
    print(f"d_w = {d.to_tex() if args.tex else d}")
    return EXIT_OK


def cmd_cwv(args) -> int:
    spec = _spec_args(args)
    if args.word is not None:
        w = word_product(spec, parse_word(args.word))
    elif args.element is not None:
        w = resolve_element(spec.family, spec.rank, args.element)
    else:
        raise InvalidInput("give --word or --element")
    if w.spec != spec:
        spec = w.spec
    v = resolve_element(spec.family, spec.rank, args.v) if args.v else identity(spec)
    c = NilHecke(spec).c_wv(w, v)
    if args.json:
        _emit_json({"family": spec.family, "rank": spec.rank, "w": list(w.images),
                    "v": list(v.images), "c_wv": c.to_json(), "c_wv_text": str(c)})
    elif args.tex:
        print(c.to_tex())
    else:
        print(f"c(w={w.one_line()}, v={v.one_line()}) = {c}")
    return EXIT_OK


def cmd_bruhat(args) -> int:
    spec = _spec_args(args)
    v = resolve_element(spec.family, spec.rank, args.v)
    w = resolve_element(spec.family, spec.rank, args.w)
    leq = bruhat_leq(v, w)
    if args.json:
        out = {"v": list(v.images), "w": list(w.images), "leq": leq}
        if args.matrices:
            out["rank_v"] = rank_matrix(v).tolist()
            out["rank_w"] = rank_matrix(w).tolist()
        _emit_json(out)
        return EXIT_OK
    print(f"[{v.one_line()}] <= [{w.one_line()}]: {leq}")
    if args.matrices:
        print(f"R_v\n{render_rank(rank_matrix(v))}\nR_w\n{render_rank(rank_matrix(w))}")
    return EXIT_OK


def cmd_rank_matrix(args) -> int:
    w = _element_args(args)
    if args.json:
        _emit_json({"element": list(w.images), "rook": rook_matrix(w).tolist(),
                    "rank": rank_matrix(w).tolist()})
        return EXIT_OK
    if args.rook:
        print(render_rook(w))
        print()
    print(render_rank(rank_matrix(w)))
    return EXIT_OK


def cmd_involutions(args) -> int:
    spec = _spec_args(args)
    items = basic_involutions(spec) if args.basic else involutions(spec)
    rows = []
    for w in sorted(items, key=lambda u: (length(u), u.images)):
        sup = [str(b) for b in support(w)] if (spec.family in ("B", "D") and is_basic_involution(w)) else None
        rows.append({"element": list(w.images), "length": length(w), "support": sup})
    if args.json:
        _emit_json(rows)
        return EXIT_OK
    for r in rows:
        line = f"[{','.join(map(str, r['element']))}]  l={r['length']}"
        if r["support"] is not None:
            line += "  supp={" + ", ".join(r["support"]) + "}"
        print(line)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import default_plan, run_many

    if args.suite in (None, "all"):
        plan = default_plan(extended=args.extended)
    else:
        kw: dict = {}
        if args.family is not None:
            kw["family"] = args.family
        if args.rank is not None:
            kw["rank"] = args.rank
        if args.length_cap is not None:
            kw["length_cap"] = args.length_cap
        if args.product_sample is not None:
            kw["product_sample"] = args.product_sample
        plan = [(args.suite, kw)]
    reports = run_many(plan, jobs=args.jobs)
    if args.json:
        print(json.dumps([r.to_dict(timing=args.timing) for r in reports], sort_keys=True, indent=2))
    else:
        for r in reports:
            print(r.to_table(show="all" if args.show_all else "failures"))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_SUITE_FAILED


# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="schubcone", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, element=True, target=True):
        sp.add_argument("--family", choices=["A", "B", "C", "D"])
        sp.add_argument("--rank", type=int)
        if element:
            sp.add_argument("--element", help="one-line notation, e.g. --element=-2,4,1,-3")
        if target:
            sp.add_argument("target", nargs="?", help="'FAMILY RANK / one-line'")
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("dw", help="Kostant-Kumar polynomial d_w")
    common(sp)
    sp.add_argument("--tex", action="store_true")
    sp.add_argument("--cache-path")
    sp.add_argument("--no-cache", action="store_true")
    sp.set_defaults(func=cmd_dw)

    sp = sub.add_parser("cwv", help="coefficient c_{w,v} of x_w")
    common(sp, target=False)
    sp.add_argument("--word", help='reduced word such as "s1 s2 s1"')
    sp.add_argument("--v", help="one-line notation of v (default: identity)")
    sp.add_argument("--tex", action="store_true")
    sp.set_defaults(func=cmd_cwv)

    sp = sub.add_parser("bruhat", help="compare v <= w")
    common(sp, element=False, target=False)
    sp.add_argument("--v", required=True)
    sp.add_argument("--w", required=True)
    sp.add_argument("--matrices", action="store_true")
    sp.set_defaults(func=cmd_bruhat)

    sp = sub.add_parser("rank-matrix", help="rank matrix (and rook placement)")
    common(sp)
    sp.add_argument("--rook", action="store_true")
    sp.set_defaults(func=cmd_rank_matrix)

    sp = sub.add_parser("involutions", help="list (basic) involutions")
    common(sp, element=False, target=False)
    sp.add_argument("--basic", action="store_true")
    sp.set_defaults(func=cmd_involutions)

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp, element=False, target=False)
    sp.add_argument("--suite", help="suite name, or 'all' for the default plan")
    sp.add_argument("--length-cap", type=int)
    sp.add_argument("--product-sample", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--extended", action="store_true", help="add the D5 sweeps to the default plan")
    sp.add_argument("--timing", action="store_true", help="include wall time in JSON")
    sp.add_argument("--show-all", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return args.func(args)
    except (InvalidInput, ResourceLimit, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
