"""Constructive families of pairwise non-isomorphic substructures.

Three constructions realize exponential counting bounds at finite scale:
compositions of n as fiber sizes inside a block order, 0/1 patterns as
marked points on a chain, and compositions as layer sizes of a stacked
antichain poset. Each family carries a decoder that recovers the index
object from the isomorphism type alone, so the counting argument can be
checked by machine: distinct indices decode from distinct members.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterator

from .catalogue import SIG_FIBERED, SIG_ORDER
from .errors import ParameterError
from .structures import (
    FiniteStructure,
    canonical_form,
    induced_substructure,
    signature,
)

SIG_MARKED_ORDER = signature(("leq", 2), ("mark", 1))

IndexObject = tuple[int, ...]


def compositions(n: int, max_part: int) -> Iterator[IndexObject]:
    """Yield compositions of n into parts of size at most max_part."""
    if n < 1:
        raise ParameterError(f"compositions need n >= 1, got {n}")
    if max_part < 1:
        raise ParameterError(f"max_part must be >= 1, got {max_part}")

    def rec(remaining: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for head in range(1, min(max_part, remaining) + 1):
            for tail in rec(remaining - head):
                yield (head,) + tail

    return rec(n)


@dataclass(frozen=True)
class WitnessFamily:
    """A scaffold structure, its distinguished members, and their indices.

    members[i] realizes indices[i]; index_decoder recovers indices[i] from
    members[i] using only isomorphism-invariant statistics, so it keeps
    working after any relabelling.
    """

    construction_id: str
    n: int
    scaffold: FiniteStructure
    members: tuple[FiniteStructure, ...]
    indices: tuple[IndexObject, ...]
    index_decoder: Callable[[FiniteStructure], IndexObject] = field(repr=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"witness family needs n >= 1, got {self.n}")
        if len(self.members) != len(self.indices):
            raise ParameterError(
                f"{len(self.members)} members but {len(self.indices)} indices"
            )

    def to_json_dict(self) -> dict:
        return {
            "construction": self.construction_id,
            "n": self.n,
            "indices": [list(ix) for ix in self.indices],
            "members": [m.to_json_dict() for m in self.members],
        }


@dataclass(frozen=True)
class CollisionReport:
    """Pairs of member positions whose canonical codes coincide."""

    construction_id: str
    n: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    def to_json_dict(self) -> dict:
        return {
            "construction": self.construction_id,
            "n": self.n,
            "collisions": [list(p) for p in self.pairs],
        }


def decode_composition(member: FiniteStructure) -> IndexObject:
    """Read fiber sizes along the block order of a composition member.

    Elements of one fiber share their weak predecessor count (the prefix
    sum of part sizes up to their block), and the counts of distinct
    fibers differ, so grouping by that count lists the parts in order.
    """
    prec = member.relation("prec")
    size = member.size
    below = [sum(1 for y in range(size) if (y, x) in prec) for x in range(size)]
    groups = Counter(below)
    return tuple(groups[r] for r in sorted(groups))


def decode_binary_pattern(member: FiniteStructure) -> IndexObject:
    """Read the 0/1 pattern off chain position: marked points decode to 0."""
    leq = member.relation("leq")
    mark = member.relation("mark")
    size = member.size
    rank = lambda x: sum(1 for y in range(size) if (y, x) in leq)
    chain = sorted(range(size), key=rank)
    return tuple(0 if (x,) in mark else 1 for x in chain)


def decode_antichain(member: FiniteStructure) -> IndexObject:
    """Count points per longest-chain-below statistic in a poset member.

    depth(x) is the number of elements in a longest chain strictly below
    x; layer i of the construction contributes exactly the points of
    depth i, so the counts per depth value recover the composition.
    """
    leq = member.relation("leq")
    size = member.size
    strictly_below = [
        [y for y in range(size) if y != x and (y, x) in leq] for x in range(size)
    ]
    depth = [0] * size
    for x in sorted(range(size), key=lambda v: len(strictly_below[v])):
        depth[x] = max((depth[y] + 1 for y in strictly_below[x]), default=0)
    groups = Counter(depth)
    return tuple(groups[i] for i in range(max(depth) + 1))


def _block_order(blocks: int, block_size: int) -> FiniteStructure:
    size = blocks * block_size
    blk = [e // block_size for e in range(size)]
    tuples = {(a, b) for a in range(size) for b in range(size) if blk[a] <= blk[b]}
    return FiniteStructure.build(SIG_FIBERED, size, {"prec": tuples})


def composition_witness(n: int, max_part: int) -> WitnessFamily:
    """One member per composition of n into parts of size at most max_part.

    The scaffold is a block order with n blocks of max_part points; the
    member for (a_0, ..., a_{k-1}) takes a_i points from block i. Its
    fiber sizes along the order are the composition, so distinct
    compositions yield non-isomorphic members.
    """
    if n < 1:
        raise ParameterError(f"composition_witness needs n >= 1, got {n}")
    if max_part < 1:
        raise ParameterError(f"max_part must be >= 1, got {max_part}")
    scaffold = _block_order(n, max_part)
    members = []
    indices = []
    for comp in compositions(n, max_part):
        subset = tuple(
            i * max_part + j for i, part in enumerate(comp) for j in range(part)
        )
        members.append(induced_substructure(scaffold, subset))
        indices.append(comp)
    return WitnessFamily(
        construction_id="composition",
        n=n,
        scaffold=scaffold,
        members=tuple(members),
        indices=tuple(indices),
        index_decoder=decode_composition,
    )


def binary_pattern_witness(n: int) -> WitnessFamily:
    """One member per 0/1 word of length n, as marked points on a chain.

    The scaffold is a 2n-point chain whose even positions are marked;
    the member for sigma takes point 2i when sigma(i) = 0 and point
    2i + 1 otherwise, so the i-th point of the member is marked exactly
    when sigma(i) = 0.
    """
    if n < 1:
        raise ParameterError(f"binary_pattern_witness needs n >= 1, got {n}")
    size = 2 * n
    leq = {(x, y) for x in range(size) for y in range(size) if x <= y}
    mark = {(2 * i,) for i in range(n)}
    scaffold = FiniteStructure.build(
        SIG_MARKED_ORDER, size, {"leq": leq, "mark": mark}
    )
    members = []
    indices = []
    for bits in product((0, 1), repeat=n):
        subset = tuple(2 * i + b for i, b in enumerate(bits))
        members.append(induced_substructure(scaffold, subset))
        indices.append(bits)
    return WitnessFamily(
        construction_id="binary_pattern",
        n=n,
        scaffold=scaffold,
        members=tuple(members),
        indices=tuple(indices),
        index_decoder=decode_binary_pattern,
    )


def antichain_witness(n: int) -> WitnessFamily:
    """One member per composition of n, as layers of stacked antichains.

    The scaffold stacks n antichains of width n; the first point of each
    layer is its anchor, and every point of a later layer lies above
    every earlier anchor. The member for (m_0, ..., m_{k-1}) takes m_i
    points of layer i including its anchor, so a point of layer i has
    exactly the i earlier anchors in a longest chain below it.
    """
    if n < 1:
        raise ParameterError(f"antichain_witness needs n >= 1, got {n}")
    size = n * n
    leq = {(x, x) for x in range(size)}
    for i in range(n):
        for j in range(i + 1, n):
            for t in range(n):
                leq.add((i * n, j * n + t))
    scaffold = FiniteStructure.build(SIG_ORDER, size, {"leq": leq})
    members = []
    indices = []
    for comp in compositions(n, n):
        subset = tuple(i * n + s for i, part in enumerate(comp) for s in range(part))
        members.append(induced_substructure(scaffold, subset))
        indices.append(comp)
    return WitnessFamily(
        construction_id="antichain",
        n=n,
        scaffold=scaffold,
        members=tuple(members),
        indices=tuple(indices),
        index_decoder=decode_antichain,
    )


_CONSTRUCTIONS: dict[str, Callable[..., WitnessFamily]] = {
    "composition": composition_witness,
    "binary_pattern": binary_pattern_witness,
    "antichain": antichain_witness,
}


def construction_ids() -> tuple[str, ...]:
    return tuple(_CONSTRUCTIONS)


def build_family(construction_id: str, n: int, max_part: int | None = None) -> WitnessFamily:
    """Dispatch by construction name; max_part applies to composition only."""
    if construction_id == "composition":
        return composition_witness(n, n if max_part is None else max_part)
    if max_part is not None:
        raise ParameterError(f"{construction_id!r} takes no max_part")
    if construction_id not in _CONSTRUCTIONS:
        raise ParameterError(f"unknown construction {construction_id!r}")
    return _CONSTRUCTIONS[construction_id](n)


def verify_pairwise_nonisomorphic(family: WitnessFamily, jobs: int = 1) -> CollisionReport:
    """Compare canonical codes of all members and report coinciding pairs."""
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            codes = list(pool.map(canonical_form, family.members, chunksize=8))
    else:
        codes = [canonical_form(m) for m in family.members]
    by_code: dict[bytes, list[int]] = {}
    for idx, code in enumerate(codes):
        by_code.setdefault(code, []).append(idx)
    pairs = []
    for group in by_code.values():
        pairs.extend(combinations(group, 2))
    pairs.sort()
    return CollisionReport(
        construction_id=family.construction_id,
        n=family.n,
        pairs=tuple(pairs),
    )
