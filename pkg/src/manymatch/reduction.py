"""Reduction of a profile between two comparable stable matchings.

The reduced profile keeps, for each agent, exactly the ranked sets compatible
with the band between the agent's two assigned sets; everything outside is
deleted by banning individual partners and dropping every set that contains a
banned partner. A per-agent banned mask therefore characterizes the whole
reduction, and materialized lists are one mask filter per ranked list.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import AgentId, Preference, Profile, Side, choice, firm, worker
from .da import deferred_acceptance
from .matching import Matching, stability, unanimous_blair_geq


class NotStable(Exception):
    """A matching handed to the reduction is not stable under the base profile."""


class NotComparable(Exception):
    """The two matchings are not unanimously Blair-comparable for the firms."""


@dataclass(frozen=True)
class ReducedProfile:
    """Base profile plus the per-agent banned partners and the surviving lists.

    For every agent a and pool S, choosing under `materialized` equals
    choosing under `base` from S minus a's banned partners (the reduction is
    a composition of single-partner truncations).
    """

    base: Profile
    mu: Matching
    mu_tilde: Matching
    banned_firm: tuple[int, ...]  # per firm: mask of banned workers
    banned_worker: tuple[int, ...]  # per worker: mask of banned firms
    materialized: Profile

    def banned(self, agent: AgentId) -> int:
        if agent.side is Side.FIRM:
            return self.banned_firm[agent.index]
        return self.banned_worker[agent.index]

    def choice_reduced(self, agent: AgentId, available: int) -> int:
        return choice(self.materialized, agent, available)


def _step12_banned(profile: Profile, agent: AgentId, top: int, bot: int) -> int:
    """Partners banned by the first two deletion steps, as single-partner tests.

    A stranger is banned when the agent would grab it alongside its better
    assigned set `top` (it sits in some set Blair-above top), or when the
    agent rejects it alongside its worse assigned set `bot` (every set holding
    it is Blair-below bot). The single-addition tests are equivalent to
    quantifying over all witness sets: any witness yields the single-addition
    fact by substitutability, and choice(top | {b}) resp. bot | {b} are
    themselves witnesses.
    """
    n = profile.opposite_size(agent.side)
    banned = 0
    for b in range(n):
        bit = 1 << b
        if not top & bit and choice(profile, agent, top | bit) & bit:
            banned |= bit
        elif not bot & bit and choice(profile, agent, bot | bit) == bot:
            banned |= bit
    return banned


def reduce_profile(profile: Profile, mu: Matching, mu_tilde: Matching) -> ReducedProfile:
    """Reduce `profile` to the band between stable matchings mu >=_F mu_tilde.

    Firms keep the sets between mu(f) (their better end) and mu_tilde(f);
    workers symmetrically between mu_tilde(w) and mu(w). A final pass restores
    mutual acceptability: whenever the singleton {w} did not survive on f's
    list, w's list drops every set containing f, and symmetrically. That pass
    is evaluated against the post-step-2 lists and needs no cascade, since it
    only ever removes singletons of the pair being processed.

    Rejects non-stable or non-comparable inputs: the enumeration machinery
    built on top silently depends on both hypotheses.
    """
    for name, m in (("mu", mu), ("mu_tilde", mu_tilde)):
        report = stability(profile, m)
        if not report.stable:
            raise NotStable(f"{name} is not stable: {report}")
    if not unanimous_blair_geq(profile, mu, mu_tilde, Side.FIRM):
        raise NotComparable("mu does not unanimously Blair-dominate mu_tilde for the firms")

    wv_mu = mu.worker_view()
    wv_mut = mu_tilde.worker_view()
    banned_f = [
        _step12_banned(profile, firm(f), top=mu.assign[f], bot=mu_tilde.assign[f])
        for f in range(profile.n_firms)
    ]
    banned_w = [
        _step12_banned(profile, worker(w), top=wv_mut[w], bot=wv_mu[w])
        for w in range(profile.n_workers)
    ]

    # Mutual-acceptability pass over the post-step-2 singleton survivors.
    alive_f = [profile.firm_prefs[f].singleton_mask() & ~banned_f[f] for f in range(profile.n_firms)]
    alive_w = [profile.worker_prefs[w].singleton_mask() & ~banned_w[w] for w in range(profile.n_workers)]
    for f in range(profile.n_firms):
        for w in range(profile.n_workers):
            if not alive_w[w] >> f & 1:
                banned_f[f] |= 1 << w
            if not alive_f[f] >> w & 1:
                banned_w[w] |= 1 << f

    materialized = Profile(
        profile.n_firms,
        profile.n_workers,
        tuple(_filtered(profile.firm_prefs[f], banned_f[f]) for f in range(profile.n_firms)),
        tuple(_filtered(profile.worker_prefs[w], banned_w[w]) for w in range(profile.n_workers)),
        profile.firm_names,
        profile.worker_names,
    )
    return ReducedProfile(
        profile, mu, mu_tilde, tuple(banned_f), tuple(banned_w), materialized
    )


def _filtered(pref: Preference, banned: int) -> Preference:
    return Preference(pref.owner, tuple(e for e in pref.ranked if not e & banned))


def reduce_to_worker_optimal(profile: Profile, mu: Matching) -> ReducedProfile:
    """Reduce between `mu` and the worker-optimal stable matching."""
    mu_w, _ = deferred_acceptance(profile, Side.WORKER)
    return reduce_profile(profile, mu, mu_w)
