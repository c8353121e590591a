"""Shared builders and the two worked example markets."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import pytest

import golden
from manymatch import Matching, Preference, Profile, bit_indices, firm, worker

MARKETS_DIR = Path(__file__).resolve().parent.parent / "markets"

_TOKEN = re.compile(r"[fw](\d+)")


def entries(row: str) -> tuple[int, ...]:
    """Parse the compact row form: 'w1w2,w3' -> (0b011, 0b100); '' -> ()."""
    if not row:
        return ()
    out = []
    for part in row.split(","):
        mask = 0
        for digits in _TOKEN.findall(part):
            mask |= 1 << (int(digits) - 1)
        out.append(mask)
    return tuple(out)


def build_profile(firm_rows: list[str], worker_rows: list[str]) -> Profile:
    return Profile(
        len(firm_rows),
        len(worker_rows),
        tuple(Preference(firm(i), entries(r)) for i, r in enumerate(firm_rows)),
        tuple(Preference(worker(i), entries(r)) for i, r in enumerate(worker_rows)),
    )


def build_matching(firm_rows: list[str], n_workers: int) -> Matching:
    masks = []
    for row in firm_rows:
        ranked = entries(row)
        masks.append(ranked[0] if ranked else 0)
    return Matching(tuple(masks), n_workers)


def compact_rows(profile: Profile) -> dict[str, str]:
    """Inverse of the compact form, keyed by agent name, for golden compares."""
    out = {}
    for names, prefs, partner_names in (
        (profile.firm_names, profile.firm_prefs, profile.worker_names),
        (profile.worker_names, profile.worker_prefs, profile.firm_names),
    ):
        for name, pref in zip(names, prefs):
            out[name] = ",".join(
                "".join(partner_names[i] for i in bit_indices(e)) for e in pref.ranked
            )
    return out


@dataclass(frozen=True)
class Example:
    profile: Profile
    mu_f: Matching
    mu_w: Matching
    others: dict


@pytest.fixture(scope="session")
def ex1() -> Example:
    profile = build_profile(golden.EX1_FIRM_ROWS, golden.EX1_WORKER_ROWS)
    return Example(
        profile,
        build_matching(golden.EX1_MU_F, 6),
        build_matching(golden.EX1_MU_W, 6),
        {
            "sigma1": build_matching(golden.EX1_SIGMA1_MATCHING, 6),
            "sigma2": build_matching(golden.EX1_SIGMA2_MATCHING, 6),
        },
    )


@pytest.fixture(scope="session")
def ex2() -> Example:
    profile = build_profile(golden.EX2_FIRM_ROWS, golden.EX2_WORKER_ROWS)
    return Example(
        profile,
        build_matching(golden.EX2_MU_F, 4),
        build_matching(golden.EX2_MU_W, 4),
        {"mu": build_matching(golden.EX2_MU, 4)},
    )
