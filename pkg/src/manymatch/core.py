"""Agents, partner sets, ranked set preferences, choice functions, and axioms.

A partner set is a plain int bitmask over the opposite side's agent indices
(bit i = agent i, so 0 is the empty set). Sides are capped at 64 agents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, NamedTuple

MAX_SIDE = 64
DEFAULT_CHECK_CAP = 12  # exhaustive axiom checks enumerate 2^n subsets


class CapExceeded(Exception):
    """An operation would exceed its configured combinatorial budget."""


class Side(Enum):
    FIRM = "firm"
    WORKER = "worker"

    @property
    def opposite(self) -> "Side":
        return Side.WORKER if self is Side.FIRM else Side.FIRM


class AgentId(NamedTuple):
    side: Side
    index: int


def firm(index: int) -> AgentId:
    return AgentId(Side.FIRM, index)


def worker(index: int) -> AgentId:
    return AgentId(Side.WORKER, index)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bit_indices(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Preference:
    """Strict ranking of one agent's acceptable partner sets, best first.

    The empty set is never stored: the list holds exactly the sets preferred
    to being unmatched, and "the choice is empty" is implicit when no entry
    fits the available pool.
    """

    owner: AgentId
    ranked: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(m <= 0 for m in self.ranked):
            raise ValueError(f"empty set in ranking of {self.owner}")
        if len(set(self.ranked)) != len(self.ranked):
            raise ValueError(f"duplicate set in ranking of {self.owner}")

    def singleton_mask(self) -> int:
        """Union of the entries that are single partners."""
        m = 0
        for e in self.ranked:
            if e & (e - 1) == 0:
                m |= e
        return m


@dataclass(frozen=True)
class Profile:
    """A full market: both sides' counts, preferences, and display names.

    Immutable after construction; every operation on it is a pure function,
    so profiles can be shared freely across threads.
    """

    n_firms: int
    n_workers: int
    firm_prefs: tuple[Preference, ...]
    worker_prefs: tuple[Preference, ...]
    firm_names: tuple[str, ...] = ()
    worker_names: tuple[str, ...] = ()
    _choice_cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.n_firms <= MAX_SIDE or not 0 <= self.n_workers <= MAX_SIDE:
            raise ValueError(f"side sizes must be between 0 and {MAX_SIDE}")
        if not self.firm_names:
            object.__setattr__(self, "firm_names", tuple(f"f{i + 1}" for i in range(self.n_firms)))
        if not self.worker_names:
            object.__setattr__(self, "worker_names", tuple(f"w{i + 1}" for i in range(self.n_workers)))
        if len(self.firm_prefs) != self.n_firms or len(self.worker_prefs) != self.n_workers:
            raise ValueError("one preference list required per agent")
        if len(self.firm_names) != self.n_firms or len(self.worker_names) != self.n_workers:
            raise ValueError("one name required per agent")
        for side, prefs, width in (
            (Side.FIRM, self.firm_prefs, self.n_workers),
            (Side.WORKER, self.worker_prefs, self.n_firms),
        ):
            for i, pref in enumerate(prefs):
                if pref.owner != AgentId(side, i):
                    raise ValueError(f"preference at {side.value} {i} owned by {pref.owner}")
                for entry in pref.ranked:
                    if entry >> width:
                        raise ValueError(f"{side.value} {i} ranks partners outside the market")

    def side_size(self, side: Side) -> int:
        return self.n_firms if side is Side.FIRM else self.n_workers

    def opposite_size(self, side: Side) -> int:
        return self.n_workers if side is Side.FIRM else self.n_firms

    def pref(self, agent: AgentId) -> Preference:
        prefs = self.firm_prefs if agent.side is Side.FIRM else self.worker_prefs
        return prefs[agent.index]

    def name(self, agent: AgentId) -> str:
        names = self.firm_names if agent.side is Side.FIRM else self.worker_names
        return names[agent.index]

    def agents(self) -> Iterator[AgentId]:
        for f in range(self.n_firms):
            yield AgentId(Side.FIRM, f)
        for w in range(self.n_workers):
            yield AgentId(Side.WORKER, w)


def choice(profile: Profile, agent: AgentId, available: int) -> int:
    """The agent's most preferred subset of `available`.

    With ranked-list preferences this is the first listed set contained in
    the pool, or 0 when none fits. Total: never raises.
    """
    key = (agent, available)
    got = profile._choice_cache.get(key, -1)
    if got < 0:
        got = 0
        for entry in profile.pref(agent).ranked:
            if entry & available == entry:
                got = entry
                break
        profile._choice_cache[key] = got
    return got


def _choice_table(profile: Profile, agent: AgentId, cap: int) -> list[int]:
    n = profile.opposite_size(agent.side)
    if n > cap:
        raise CapExceeded(f"exhaustive check over 2^{n} subsets exceeds cap {cap}")
    ranked = profile.pref(agent).ranked
    table = [0] * (1 << n)
    for avail in range(1 << n):
        for entry in ranked:
            if entry & avail == entry:
                table[avail] = entry
                break
    return table


def is_substitutable(profile: Profile, agent: AgentId, cap: int = DEFAULT_CHECK_CAP) -> bool:
    """Exhaustive substitutability check.

    A chosen partner must stay chosen when other partners leave the pool.
    Checked in the equivalent one-removal form (choice(S) minus x is contained
    in choice(S minus x) for every S and x), which chains down to the general
    subset form.
    """
    table = _choice_table(profile, agent, cap)
    for avail in range(len(table)):
        chosen = table[avail]
        for x in bit_indices(avail):
            bit = 1 << x
            if chosen & ~bit & ~table[avail & ~bit]:
                return False
    return True


def satisfies_lad(profile: Profile, agent: AgentId, cap: int = DEFAULT_CHECK_CAP) -> bool:
    """Law of aggregate demand: choice size is monotone in the pool.

    Checked in single-addition form (adding one available partner never
    shrinks the choice), equivalent to the subset form by chaining along any
    inclusion chain and exponentially cheaper.
    """
    n = profile.opposite_size(agent.side)
    table = _choice_table(profile, agent, cap)
    for avail in range(len(table)):
        size = table[avail].bit_count()
        for x in range(n):
            bit = 1 << x
            if not avail & bit and table[avail | bit].bit_count() < size:
                return False
    return True


def check_eq1(profile: Profile, agent: AgentId, cap: int = DEFAULT_CHECK_CAP) -> bool:
    """Diagnostic identity: choice(S | S') == choice(choice(S) | S') for all pairs.

    Holds whenever the agent is substitutable. Quadratic in the subset
    lattice, so keep the opposite side small.
    """
    table = _choice_table(profile, agent, cap)
    for s in range(len(table)):
        cs = table[s]
        for s2 in range(len(table)):
            if table[s | s2] != table[cs | s2]:
                return False
    return True


def blair_geq(profile: Profile, agent: AgentId, s1: int, s2: int) -> bool:
    """Blair order: s1 >= s2 when the agent offered both pools keeps exactly s1.

    This is a partial order: blair_geq(s1, s2) and blair_geq(s2, s1) may both
    be false.
    """
    return choice(profile, agent, s1 | s2) == s1


def truncate(pref: Preference, banned: AgentId) -> Preference:
    """Drop every ranked set containing `banned`, keeping the rest in order."""
    if banned.side is pref.owner.side:
        raise ValueError("can only truncate at an agent of the opposite side")
    bit = 1 << banned.index
    return Preference(pref.owner, tuple(e for e in pref.ranked if not e & bit))
