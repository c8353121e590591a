"""Many-to-many deferred acceptance for substitutable set preferences."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Profile, Side, AgentId, bit_indices, choice, full_mask
from .matching import Matching


class NonTermination(Exception):
    """Defensive round guard tripped; cannot happen for valid substitutable input."""


@dataclass(frozen=True)
class DARound:
    """One simultaneous round: who proposed to whom, who is now held, who got cut.

    `proposals[p]` is the receiver mask proposer p offered to this round,
    `held[r]` the proposer mask receiver r keeps at the end of the round, and
    `rejections` the (proposer, receiver) pairs cut this round.
    """

    proposals: tuple[int, ...]
    held: tuple[int, ...]
    rejections: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class DATrace:
    proposing: Side
    rounds: tuple[DARound, ...]


def deferred_acceptance(profile: Profile, proposing: Side) -> tuple[Matching, DATrace]:
    """Batch deferred acceptance; returns the proposing side's optimal stable
    matching (for substitutable preferences).

    Each proposer keeps a permanent rejection set and offers to its choice of
    the not-yet-rejecting receivers; each receiver keeps its choice of the
    offers on the table plus whatever it already held, cutting the rest.
    Proposing is simultaneous each round, so the outcome is order-independent.
    Stops at the first round without a rejection.
    """
    receiving = proposing.opposite
    n_prop = profile.side_size(proposing)
    n_recv = profile.side_size(receiving)
    pool = full_mask(n_recv)
    rejected_by = [0] * n_prop  # receiver masks that cut each proposer
    held = [0] * n_recv  # proposer masks currently held
    rounds: list[DARound] = []
    limit = profile.n_firms * profile.n_workers * (1 << max(profile.n_firms, profile.n_workers)) + 1

    while True:
        if len(rounds) > limit:
            raise NonTermination(f"no fixed point after {limit} rounds")
        proposals = tuple(
            choice(profile, AgentId(proposing, p), pool & ~rejected_by[p])
            for p in range(n_prop)
        )
        offers = [0] * n_recv
        for p, mask in enumerate(proposals):
            for r in bit_indices(mask):
                offers[r] |= 1 << p
        rejections: list[tuple[int, int]] = []
        for r in range(n_recv):
            table = offers[r] | held[r]
            keep = choice(profile, AgentId(receiving, r), table)
            held[r] = keep
            for p in bit_indices(table & ~keep):
                rejections.append((p, r))
                rejected_by[p] |= 1 << r
        rejections.sort()
        rounds.append(DARound(proposals, tuple(held), tuple(rejections)))
        if not rejections:
            break

    if proposing is Side.FIRM:
        assign = rounds[-1].proposals
    else:
        assign = rounds[-1].held  # each firm holds a worker mask
    return Matching(tuple(assign), profile.n_workers), DATrace(proposing, tuple(rounds))
