"""Command-line surface: define a GGS-group, compute with words, inspect
finite quotients, and run the lemma verification sweeps.

Exit codes: 0 success, 2 bad input or precondition, 3 verification
counterexample or failed cross-check, 4 resource guard tripped.
"""

import argparse
import json
import os
import sys

from . import lemmas
from .core import (DEFAULT_DEPTH_CAP, DEFAULT_LENGTH_CAP, format_vertex,
                   parse_group_spec, parse_vertex)
from .errors import CrossCheckError, InputError, ResourceLimitError
from .quotients import DEFAULT_LEAF_GUARD, level_quotient, maximal_subgroups_census
from .words import format_word, parse_word

# sweep sizes mirror the property-suite counts the checks were designed around
VERIFY_REGISTRY = (
    ("commutator-tuple", lambda group, seed, cfg: lemmas.sweep_commutator_tuple(group, seed)),
    ("derived-product", lambda group, seed, cfg: lemmas.sweep_derived_product(group, 100, seed)),
    ("split-case", lambda group, seed, cfg: lemmas.sweep_split_case(group, 1000, seed)),
    ("propagation", lambda group, seed, cfg: lemmas.sweep_propagation(group, 200, seed)),
    ("short-section", lambda group, seed, cfg: lemmas.sweep_short_section(group, 50, seed)),
    ("length-contraction", lambda group, seed, cfg: lemmas.sweep_length_contraction(group, 200, seed)),
    ("circulant", lambda group, seed, cfg: lemmas.sweep_circulant(group.p, seed)),
    ("interval-lemma", lambda group, seed, cfg: lemmas.sweep_interval(group.p, seed)),
    ("k-generator", lambda group, seed, cfg: lemmas.sweep_k_generator(group, seed)),
    ("infinite-order", lambda group, seed, cfg: lemmas.sweep_infinite_order(group, seed)),
    ("maximal-census", lambda group, seed, cfg: lemmas.sweep_maximal_census(
        group, seed, n=2, leaf_guard=cfg["quotient_guard"])),
    ("constant-model", lambda group, seed, cfg: lemmas.sweep_constant_model(group, seed)),
)
VERIFY_NAMES = tuple(name for name, _ in VERIFY_REGISTRY)


def _default_seed():
    raw = os.environ.get("GGSLAB_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"GGSLAB_SEED must be an integer, got {raw!r}")


def _common_flags(sub):
    sub.add_argument("--group", required=True, metavar="SPEC",
                     help="group spec, e.g. 'p=3;e=1,2'")
    sub.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub.add_argument("--seed", type=int, default=None,
                     help="sweep seed (default: GGSLAB_SEED or 0)")
    sub.add_argument("--length-cap", type=int, default=DEFAULT_LENGTH_CAP, metavar="N",
                     help="syllable cap for length certification")
    sub.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP, metavar="N",
                     help="recursion cap for word comparison")
    sub.add_argument("--quotient-guard", type=int, default=DEFAULT_LEAF_GUARD, metavar="N",
                     help="max leaf count for level quotients")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ggslab",
        description="GGS-groups on the p-adic tree: computation and lemma verification.")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("classify", help="defining-vector family and branch status")
    _common_flags(sp)

    sp = subs.add_parser("act", help="image of a vertex under a word")
    sp.add_argument("word")
    sp.add_argument("vertex", help="dot-separated letters in 1..p, empty for the root")
    _common_flags(sp)

    sp = subs.add_parser("section", help="section of a word at a vertex")
    sp.add_argument("word")
    sp.add_argument("vertex")
    _common_flags(sp)

    sp = subs.add_parser("equal", help="decide equality of two words in the group")
    sp.add_argument("word1")
    sp.add_argument("word2")
    _common_flags(sp)

    sp = subs.add_parser("length", help="certified syllable length, or unknown at the cap")
    sp.add_argument("word")
    _common_flags(sp)

    sp = subs.add_parser("abelianize", help="exponent-sum pair in G/G'")
    sp.add_argument("word")
    _common_flags(sp)

    sp = subs.add_parser("quotient", help="level-n congruence quotient order (census for n >= 2)")
    sp.add_argument("level", type=int)
    _common_flags(sp)

    sp = subs.add_parser("verify", help="run named lemma checks ('all' for every one)")
    sp.add_argument("checks", nargs="+", metavar="CHECK",
                    help="one of: " + ", ".join(VERIFY_NAMES) + ", all")
    _common_flags(sp)

    return parser


def _emit(args, data, text_lines):
    if args.json:
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_classify(args, group):
    data = {
        "p": group.p,
        "e": list(group.e),
        "lambda": group.lam,
        "family": group.family,
        "torsion": group.is_torsion,
        "branch": group.is_branch,
    }
    branch_line = f"branch = {str(group.is_branch).lower()}"
    if not group.is_branch:
        branch_line += " (weakly branch only: constant defining vector)"
    lines = [
        f"p = {group.p}",
        "e = " + ",".join(str(x) for x in group.e),
        f"lambda = {group.lam}",
        f"family = {group.family}",
        f"torsion = {str(group.is_torsion).lower()}",
        branch_line,
    ]
    _emit(args, data, lines)
    return 0


def cmd_act(args, group):
    g = group.element(parse_word(args.word, group.p))
    image = g.act(parse_vertex(args.vertex, group.p))
    out = format_vertex(image)
    _emit(args, {"vertex": out}, [out])
    return 0


def cmd_section(args, group):
    g = group.element(parse_word(args.word, group.p))
    sec = g.section(parse_vertex(args.vertex, group.p))
    out = format_word(sec.word)
    _emit(args, {"word": out}, [out])
    return 0


def cmd_equal(args, group):
    g = group.element(parse_word(args.word1, group.p))
    h = group.element(parse_word(args.word2, group.p))
    verdict = g.equals(h, depth_cap=args.depth_cap)
    _emit(args, {"equal": verdict}, [str(verdict).lower()])
    return 0


def cmd_length(args, group):
    g = group.element(parse_word(args.word, group.p))
    val = g.length(cap=args.length_cap, depth_cap=args.depth_cap)
    if val is None:
        _emit(args, {"length": None, "cap": args.length_cap},
              [f"unknown (cap={args.length_cap})"])
    else:
        _emit(args, {"length": val, "cap": args.length_cap}, [str(val)])
    return 0


def cmd_abelianize(args, group):
    g = group.element(parse_word(args.word, group.p))
    s, t = g.abelianize()
    _emit(args, {"a_exponent": s, "b_exponent": t}, [f"({s}, {t})"])
    return 0


def cmd_quotient(args, group):
    n = args.level
    quotient = level_quotient(group, n, leaf_guard=args.quotient_guard)
    if n >= 2:
        census = maximal_subgroups_census(group, n, leaf_guard=args.quotient_guard)
        data = dict(census)
        data["order"] = quotient.order
        lines = [f"level = {n}", f"order = {quotient.order}",
                 f"maximal subgroups = {census['count']}"]
        for rec in census["maximal"]:
            s, t = rec["functional"]
            lines.append(f"  functional ({s},{t}): index {rec['index']}, "
                         + ("normal" if rec["normal"] else "not normal"))
    else:
        data = {"p": group.p, "e": list(group.e), "n": n, "order": quotient.order}
        lines = [f"level = {n}", f"order = {quotient.order}"]
    _emit(args, data, lines)
    return 0


def cmd_verify(args, group, seed):
    names = list(args.checks)
    if "all" in names:
        names = list(VERIFY_NAMES)
    else:
        unknown = [n for n in names if n not in VERIFY_NAMES]
        if unknown:
            raise InputError("unknown check(s): " + ", ".join(sorted(unknown))
                             + "; valid: " + ", ".join(VERIFY_NAMES) + ", all")
    cfg = {"quotient_guard": args.quotient_guard}
    registry = dict(VERIFY_REGISTRY)
    reports = [registry[name](group, seed, cfg) for name in names]
    failures = sum(len(rep["counterexamples"]) for rep in reports)
    if args.json:
        print(json.dumps(reports, sort_keys=True, indent=2))
    else:
        for rep in reports:
            status = "FAIL" if rep["counterexamples"] else "pass"
            line = (f"{rep['lemma']}: {status} cases={rep['cases_run']} "
                    f"passed={rep['passed']} skipped={rep['skipped']}")
            if rep["counterexamples"]:
                line += f" counterexamples={len(rep['counterexamples'])}"
            if "note" in rep:
                line += f" ({rep['note']})"
            print(line)
    return 3 if failures else 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        seed = args.seed if args.seed is not None else _default_seed()
        group = parse_group_spec(args.group)
        if args.command == "classify":
            return cmd_classify(args, group)
        if args.command == "act":
            return cmd_act(args, group)
        if args.command == "section":
            return cmd_section(args, group)
        if args.command == "equal":
            return cmd_equal(args, group)
        if args.command == "length":
            return cmd_length(args, group)
        if args.command == "abelianize":
            return cmd_abelianize(args, group)
        if args.command == "quotient":
            return cmd_quotient(args, group)
        if args.command == "verify":
            return cmd_verify(args, group, seed)
        raise InputError(f"unknown command {args.command!r}")
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CrossCheckError as exc:
        print(f"cross-check failed: {exc}", file=sys.stderr)
        return 3
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
