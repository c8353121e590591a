"""Command-line front end.

Exit codes: 0 success, 1 malformed input (parse/reference/contract errors),
2 axiom violation, 3 combinatorial cap exceeded. Results go to stdout, traces
and diagnostics to stderr; identical inputs and flags produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .core import CapExceeded, Side, bit_indices, is_substitutable, satisfies_lad
from .da import deferred_acceptance
from .enumeration import AxiomViolation, compare_algorithms, mms_algorithm, stable_set
from .gen import GenConfig, random_market
from .matching import Matching, brute_force_stable_set
from .reduction import NotComparable, NotStable, reduce_profile, reduce_to_worker_optimal
from .cycles import find_cycles
from .serialize import (
    MarketFormatError,
    cycle_to_obj,
    dumps,
    market_to_obj,
    matching_to_obj,
    parse_market,
    parse_matching,
)


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise MarketFormatError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise MarketFormatError(f"{path} is not valid JSON: {e}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_matching(m: Matching, profile) -> str:
    parts = []
    for f in range(profile.n_firms):
        ws = "".join(profile.worker_names[w] for w in bit_indices(m.assign[f]))
        parts.append(f"{profile.firm_names[f]}:{ws or '-'}")
    return " ".join(parts)


def _cmd_validate(args) -> int:
    profile = parse_market(_load_json(args.market))
    failures = []
    for agent in profile.agents():
        sub = is_substitutable(profile, agent, args.cap)
        lad = satisfies_lad(profile, agent, args.cap)
        name = profile.name(agent)
        print(f"{name}: substitutable={'yes' if sub else 'NO'} lad={'yes' if lad else 'NO'}")
        if not sub:
            failures.append(f"{name} violates substitutability")
        if not lad:
            failures.append(f"{name} violates the law of aggregate demand")
    if failures:
        for line in failures:
            print(line, file=sys.stderr)
        return 2
    return 0


def _cmd_da(args) -> int:
    profile = parse_market(_load_json(args.market))
    side = Side.FIRM if args.proposing == "firms" else Side.WORKER
    m, trace = deferred_acceptance(profile, side)
    if args.trace:
        prop_names = profile.firm_names if side is Side.FIRM else profile.worker_names
        recv_names = profile.worker_names if side is Side.FIRM else profile.firm_names
        for t, rnd in enumerate(trace.rounds, start=1):
            offers = " ".join(
                f"{prop_names[p]}->{''.join(recv_names[r] for r in bit_indices(mask)) or '-'}"
                for p, mask in enumerate(rnd.proposals)
            )
            rejs = " ".join(f"{recv_names[r]}/{prop_names[p]}" for p, r in rnd.rejections) or "none"
            print(f"round {t}: {offers}; rejections: {rejs}", file=sys.stderr)
    _emit(dumps(matching_to_obj(m, profile)), None)
    return 0


def _cmd_enumerate(args) -> int:
    profile = parse_market(_load_json(args.market))
    matchings, trace = stable_set(profile)
    if args.trace:
        print(f"step 1: mu_F = {_fmt_matching(trace.mu_firm, profile)}", file=sys.stderr)
        print(f"step 1: mu_W = {_fmt_matching(trace.mu_worker, profile)}", file=sys.stderr)
        for step in trace.steps:
            for exp in step.expansions:
                cyc = "; ".join(
                    "".join(f"({profile.worker_names[w]},{profile.firm_names[f]})" for w, f in c.pairs)
                    for c in exp.cycles
                ) or "none"
                prod = ", ".join(_fmt_matching(m, profile) for m in exp.produced) or "none"
                print(
                    f"step {step.number}: expand {_fmt_matching(exp.source, profile)}"
                    f" | cycles: {cyc} | produced: {prod}",
                    file=sys.stderr,
                )
    _emit(dumps([matching_to_obj(m, profile) for m in matchings]), args.out)
    return 0


def _cmd_reduce(args) -> int:
    profile = parse_market(_load_json(args.market))
    mu = parse_matching(_load_json(args.mu), profile)
    if args.mu_tilde:
        reduced = reduce_profile(profile, mu, parse_matching(_load_json(args.mu_tilde), profile))
    else:
        reduced = reduce_to_worker_optimal(profile, mu)
    _emit(dumps(market_to_obj(reduced.materialized)), None)
    return 0


def _cmd_cycles(args) -> int:
    profile = parse_market(_load_json(args.market))
    mu = parse_matching(_load_json(args.mu), profile)
    reduced = reduce_to_worker_optimal(profile, mu)
    cycles = find_cycles(reduced)
    _emit(dumps([cycle_to_obj(c, profile) for c in cycles]), None)
    return 0


def _cmd_oracle(args) -> int:
    profile = parse_market(_load_json(args.market))
    matchings = brute_force_stable_set(profile)
    _emit(dumps([matching_to_obj(m, profile) for m in matchings]), None)
    return 0


def _cmd_mms(args) -> int:
    profile = parse_market(_load_json(args.market))
    matchings, _ = mms_algorithm(profile)
    _emit(dumps([matching_to_obj(m, profile) for m in matchings]), None)
    return 0


def _cmd_compare(args) -> int:
    profile = parse_market(_load_json(args.market))
    report = compare_algorithms(profile)
    obj = {
        "oracle": [matching_to_obj(m, profile) for m in report.oracle],
        "cycle_enumeration": [matching_to_obj(m, profile) for m in report.cycle_set],
        "truncation_enumeration": [matching_to_obj(m, profile) for m in report.truncation_set],
        "cycle_enumeration_matches_oracle": report.cycle_matches_oracle,
        "truncation_enumeration_matches_oracle": report.truncation_matches_oracle,
        "missing_from_truncation": [matching_to_obj(m, profile) for m in report.missing_from_truncation],
        "extra_in_truncation": [matching_to_obj(m, profile) for m in report.extra_in_truncation],
        "truncation_used_chained_rounds": report.truncation_trace.used_generic_step,
        "truncation_candidates": [
            {
                "step": c.step,
                "source": matching_to_obj(c.source, profile),
                "pair": [profile.firm_names[c.pair[0]], profile.worker_names[c.pair[1]]],
                "candidate": matching_to_obj(c.candidate, profile),
                "accepted": c.accepted,
                "failures": [
                    {
                        "worker": profile.worker_names[w],
                        "offered": sorted(profile.firm_names[f] for f in bit_indices(offered)),
                        "chosen": sorted(profile.firm_names[f] for f in bit_indices(chosen)),
                        "required": sorted(profile.firm_names[f] for f in bit_indices(required)),
                    }
                    for w, offered, chosen, required in c.failures
                ],
            }
            for c in report.truncation_trace.candidates
        ],
    }
    _emit(dumps(obj), None)
    return 0


def _cmd_gen(args) -> int:
    cfg = GenConfig(
        n_firms=args.firms,
        n_workers=args.workers,
        quota=args.quota,
        acceptability_prob=args.prob,
        seed=args.seed,
    )
    profile = random_market(cfg)
    _emit(dumps(market_to_obj(profile)), args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="manymatch",
        description="Stable matchings of many-to-many markets with set preferences.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="per-agent substitutability and LAD report")
    v.add_argument("market")
    v.add_argument("--cap", type=int, default=12, help="exhaustive-check cap (opposite side size)")
    v.set_defaults(func=_cmd_validate)

    d = sub.add_parser("da", help="deferred acceptance from one side")
    d.add_argument("market")
    d.add_argument("--proposing", choices=("firms", "workers"), required=True)
    d.add_argument("--trace", action="store_true", help="print rounds to stderr")
    d.set_defaults(func=_cmd_da)

    e = sub.add_parser("enumerate", help="the full stable set, via preference cycles")
    e.add_argument("market")
    e.add_argument("--trace", action="store_true", help="print steps and cycles to stderr")
    e.add_argument("--out", help="write the JSON result to a file instead of stdout")
    e.set_defaults(func=_cmd_enumerate)

    r = sub.add_parser("reduce", help="reduced profile between two stable matchings")
    r.add_argument("market")
    r.add_argument("--mu", required=True, help="matching JSON file (the Blair-better one)")
    r.add_argument("--mu-tilde", help="matching JSON file; defaults to the worker optimum")
    r.set_defaults(func=_cmd_reduce)

    c = sub.add_parser("cycles", help="all cycles of the profile reduced at --mu")
    c.add_argument("market")
    c.add_argument("--mu", required=True, help="matching JSON file")
    c.set_defaults(func=_cmd_cycles)

    o = sub.add_parser("oracle", help="brute-force stable set")
    o.add_argument("market")
    o.set_defaults(func=_cmd_oracle)

    m = sub.add_parser("mms", help="truncation-based enumeration (may miss matchings)")
    m.add_argument("market")
    m.set_defaults(func=_cmd_mms)

    cp = sub.add_parser("compare", help="cycle enumeration vs truncation vs oracle")
    cp.add_argument("market")
    cp.set_defaults(func=_cmd_compare)

    g = sub.add_parser("gen", help="random market with both axioms by construction")
    g.add_argument("--firms", type=int, required=True)
    g.add_argument("--workers", type=int, required=True)
    g.add_argument("--quota", type=int, default=1)
    g.add_argument("--prob", type=float, default=0.5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="write the market JSON to a file instead of stdout")
    g.set_defaults(func=_cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MarketFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (NotStable, NotComparable) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except AxiomViolation as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
