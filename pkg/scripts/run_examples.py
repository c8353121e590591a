#!/usr/bin/env python3
"""Walk the two shipped example markets end to end.

Prints the optimal matchings, every enumeration step with its cycles, the
final stable sets, and (for the second market) the comparison showing where
the truncation-based method stops early.
"""

from __future__ import annotations

import json
from pathlib import Path

from manymatch import bit_indices, compare_algorithms, parse_market, stable_set

MARKETS = Path(__file__).resolve().parent.parent / "markets"


def fmt(matching, profile) -> str:
    parts = []
    for f in range(profile.n_firms):
        ws = "".join(profile.worker_names[w] for w in bit_indices(matching.assign[f]))
        parts.append(f"{profile.firm_names[f]}:{ws or '-'}")
    return " ".join(parts)


def walk(name: str) -> None:
    profile = parse_market(json.loads((MARKETS / name).read_text()))
    print(f"== {name}: {profile.n_firms} firms, {profile.n_workers} workers")
    matchings, trace = stable_set(profile)
    print(f"  firm-optimal   {fmt(trace.mu_firm, profile)}")
    print(f"  worker-optimal {fmt(trace.mu_worker, profile)}")
    for step in trace.steps:
        for exp in step.expansions:
            cycles = "; ".join(
                "".join(f"({profile.worker_names[w]},{profile.firm_names[f]})" for w, f in c.pairs)
                for c in exp.cycles
            )
            print(f"  step {step.number}: expand {fmt(exp.source, profile)}")
            print(f"          cycles {cycles}")
            for m in exp.produced:
                print(f"          -> {fmt(m, profile)}")
    print(f"  stable set ({len(matchings)}):")
    for m in matchings:
        print(f"    {fmt(m, profile)}")


def compare(name: str) -> None:
    profile = parse_market(json.loads((MARKETS / name).read_text()))
    report = compare_algorithms(profile)
    print(f"== {name}: comparison")
    print(f"  oracle size {len(report.oracle)}, cycle enumeration {len(report.cycle_set)},"
          f" truncation {len(report.truncation_set)}")
    for m in report.missing_from_truncation:
        print(f"  truncation misses {fmt(m, profile)}")
    for c in report.truncation_trace.candidates:
        verdict = "accepted" if c.accepted else "rejected"
        pair = f"({profile.firm_names[c.pair[0]]},{profile.worker_names[c.pair[1]]})"
        print(f"  step {c.step} cut {pair}: candidate {fmt(c.candidate, profile)} {verdict}")


def main() -> None:
    walk("example1.json")
    print()
    walk("example2.json")
    print()
    compare("example2.json")


if __name__ == "__main__":
    main()
