"""Canonical enumeration of small pointed models with legal frames.

Worlds are numbered ``w1..wn`` and carry valuations in non-decreasing order,
which prunes most permutation duplicates while keeping at least one
representative of every isomorphism class.  Knowledge relations range over all
set partitions (equivalence classes); belief relations over all KD45 frames,
parameterised by the set of worlds that are believed-possible somewhere, a
partition of that set into clusters, and an assignment of every other world
to one cluster.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator, Sequence

from ..kripke import EpistemicModel

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """The configured search budget ran out before an answer was reached."""

    def __init__(self, budget: int, what: str = "candidate models"):
        self.budget = budget
        super().__init__(f"search budget of {budget} {what} exceeded")


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """All partitions of ``items`` via restricted growth strings, in RGS order."""
    n = len(items)
    if n == 0:
        yield []
        return

    def grow(i: int, rgs: list[int], top: int):
        if i == n:
            blocks: list[list] = [[] for _ in range(top + 1)]
            for item, b in zip(items, rgs):
                blocks[b].append(item)
            yield blocks
            return
        for b in range(top + 2):
            rgs.append(b)
            yield from grow(i + 1, rgs, max(top, b))
            rgs.pop()

    yield from grow(1, [0], 0)


def equivalence_relations(worlds: Sequence[str]) -> Iterator[frozenset]:
    for blocks in set_partitions(worlds):
        yield frozenset((a, b) for blk in blocks for a in blk for b in blk)


def kd45_relations(worlds: Sequence[str]) -> Iterator[frozenset]:
    n = len(worlds)
    for mask in range(1, 1 << n):
        members = [w for i, w in enumerate(worlds) if mask >> i & 1]
        others = [w for i, w in enumerate(worlds) if not mask >> i & 1]
        for blocks in set_partitions(members):
            for choice in product(range(len(blocks)), repeat=len(others)):
                pairs = set()
                for blk in blocks:
                    pairs.update((a, b) for a in blk for b in blk)
                for w, bi in zip(others, choice):
                    pairs.update((w, b) for b in blocks[bi])
                yield frozenset(pairs)


def _valuations(atoms: Sequence[str]) -> list[frozenset[str]]:
    out = []
    for bits in range(1 << len(atoms)):
        out.append(frozenset(a for i, a in enumerate(atoms) if bits >> i & 1))
    return out


def enumerate_models(
    atoms: Iterable[str], max_worlds: int, budget: int = DEFAULT_BUDGET
) -> Iterator[EpistemicModel]:
    """Yield every canonical pointed model over ``atoms`` with at most ``max_worlds`` worlds.

    Order: world count, then valuation sequence, knowledge partition, belief
    frame and designated world.  Raises :class:`BudgetExceeded` once more than
    ``budget`` models have been produced.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    names = sorted(set(atoms))
    vals = _valuations(names)
    produced = 0
    for n in range(1, max_worlds + 1):
        worlds = tuple(f"w{i + 1}" for i in range(n))
        k_rels = list(equivalence_relations(worlds))
        b_rels = list(kd45_relations(worlds))
        for seq in combinations_with_replacement(range(len(vals)), n):
            valuation = {w: vals[s] for w, s in zip(worlds, seq)}
            for rk in k_rels:
                for rb in b_rels:
                    for d in worlds:
                        produced += 1
                        if produced > budget:
                            raise BudgetExceeded(budget)
                        yield EpistemicModel(worlds, rk, rb, valuation, d)
