"""Linearization of finite posets with small antichains.

Write V(a) for the set of elements incomparable to a. The construction
adds an arrow a -> b whenever b is a maximal element of V(a) and sets
a before b when a <= b or a -> b. That before relation is always
transitive, so quotienting by mutual before-ness yields a coarser
poset in which every element has strictly fewer incomparables.
Iterating collapses any poset of bounded width to a chain of
antichain classes compatible with the original order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .errors import DomainError, InternalInvariantError, ParameterError

Pair = tuple[int, int]


@dataclass(frozen=True)
class FinitePoset:
    """A reflexive, antisymmetric, transitive relation on {0..size-1}."""

    size: int
    leq: frozenset[Pair]

    def __post_init__(self) -> None:
        if self.size < 1:
            raise DomainError(f"poset size must be >= 1, got {self.size}")
        object.__setattr__(self, "leq", frozenset(self.leq))
        for pair in self.leq:
            if len(pair) != 2 or not all(
                isinstance(v, int) and 0 <= v < self.size for v in pair
            ):
                raise DomainError(f"bad pair {pair!r} for size {self.size}")
        for x in range(self.size):
            if (x, x) not in self.leq:
                raise DomainError(f"missing reflexive pair ({x}, {x})")
        for a, b in self.leq:
            if a != b and (b, a) in self.leq:
                raise DomainError(f"antisymmetry fails on ({a}, {b})")
        succ = self._succ_masks()
        for a in range(self.size):
            m = succ[a]
            while m:
                b = (m & -m).bit_length() - 1
                m &= m - 1
                if succ[b] & ~succ[a]:
                    raise DomainError(f"transitivity fails through ({a}, {b})")

    def _succ_masks(self) -> list[int]:
        succ = [0] * self.size
        for a, b in self.leq:
            succ[a] |= 1 << b
        return succ

    def less(self, a: int, b: int) -> bool:
        return a != b and (a, b) in self.leq

    def incomparable(self, a: int, b: int) -> bool:
        return a != b and (a, b) not in self.leq and (b, a) not in self.leq

    def incomparables(self, a: int) -> tuple[int, ...]:
        return tuple(b for b in range(self.size) if self.incomparable(a, b))

    def is_chain(self) -> bool:
        return all(
            not self.incomparable(a, b)
            for a, b in combinations(range(self.size), 2)
        )

    @classmethod
    def from_json_dict(cls, payload: dict) -> "FinitePoset":
        try:
            size = int(payload["size"])
            pairs = {(int(a), int(b)) for a, b in payload["leq"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed poset payload: {exc}") from None
        pairs.update((x, x) for x in range(size))
        return cls(size=size, leq=frozenset(pairs))

    def to_json_dict(self) -> dict:
        strict = sorted(p for p in self.leq if p[0] != p[1])
        return {"size": self.size, "leq": [list(p) for p in strict]}


def max_incomparability(p: FinitePoset) -> int:
    """Largest number of elements incomparable to a single element."""
    return max(len(p.incomparables(a)) for a in range(p.size))


def antichain_width(p: FinitePoset) -> int:
    """Maximum antichain size, as size minus a maximum chain matching."""
    n = p.size
    adj = [[b for b in range(n) if p.less(a, b)] for a in range(n)]
    match_right = [-1] * n

    def augment(a: int, seen: set[int]) -> bool:
        for b in adj[a]:
            if b in seen:
                continue
            seen.add(b)
            if match_right[b] == -1 or augment(match_right[b], seen):
                match_right[b] = a
                return True
        return False

    matched = sum(1 for a in range(n) if augment(a, set()))
    return n - matched


def triangle_step(p: FinitePoset) -> frozenset[Pair]:
    """The before relation: a before b when a <= b or b is maximal among
    the elements incomparable to a.

    Transitivity of the output holds for every poset; a violation means
    the implementation is broken, not the input.
    """
    tri = set(p.leq)
    for a in range(p.size):
        incs = p.incomparables(a)
        for b in incs:
            if not any(p.less(b, c) for c in incs):
                tri.add((a, b))
    succ = [0] * p.size
    for a, b in tri:
        succ[a] |= 1 << b
    for a in range(p.size):
        m = succ[a]
        while m:
            b = (m & -m).bit_length() - 1
            m &= m - 1
            if succ[b] & ~succ[a]:
                raise InternalInvariantError(
                    f"before relation not transitive through ({a}, {b})"
                )
    return frozenset(tri)


@dataclass(frozen=True)
class RoundRecord:
    """One collapse round: the before relation seen and the quotient shape."""

    round_index: int
    tri: tuple[Pair, ...]
    quotient_width: int
    quotient_incomparability: int

    def to_json_dict(self) -> dict:
        return {
            "round": self.round_index,
            "tri": [list(p) for p in self.tri],
            "quotient_width": self.quotient_width,
            "quotient_incomparability": self.quotient_incomparability,
        }


@dataclass(frozen=True)
class LinearizationResult:
    """Ordered antichain classes covering the domain, least class first."""

    classes: tuple[tuple[int, ...], ...]
    trace: tuple[RoundRecord, ...]

    def to_json_dict(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "trace": [r.to_json_dict() for r in self.trace],
        }


def _quotient(p: FinitePoset, tri: frozenset[Pair]) -> tuple[FinitePoset, list[list[int]]]:
    """Group mutually before-related elements and order the groups.

    Raises InternalInvariantError when the induced relation depends on
    the choice of representatives or fails to be a poset.
    """
    n = p.size
    cls = [-1] * n
    groups: list[list[int]] = []
    for a in range(n):
        if cls[a] != -1:
            continue
        members = [a]
        cls[a] = len(groups)
        for b in range(a + 1, n):
            if cls[b] == -1 and (a, b) in tri and (b, a) in tri:
                cls[b] = cls[a]
                members.append(b)
        groups.append(members)
    m = len(groups)
    qleq = {(i, i) for i in range(m)}
    for a, b in tri:
        if cls[a] != cls[b]:
            qleq.add((cls[a], cls[b]))
    for ca, cb in qleq:
        if ca == cb:
            continue
        for a in groups[ca]:
            for b in groups[cb]:
                if (a, b) not in tri:
                    raise InternalInvariantError(
                        f"quotient order ill-defined on classes {ca}, {cb}"
                    )
    try:
        quotient = FinitePoset(size=m, leq=frozenset(qleq))
    except DomainError as exc:
        raise InternalInvariantError(f"quotient is not a poset: {exc}") from None
    return quotient, groups


def linearize(p: FinitePoset) -> LinearizationResult:
    """Collapse a poset to an ordered partition into antichain classes."""
    current = p
    nodes: list[tuple[int, ...]] = [(i,) for i in range(p.size)]
    trace: list[RoundRecord] = []
    rounds = 0
    while not current.is_chain():
        rounds += 1
        if rounds > p.size:
            raise InternalInvariantError(
                f"no chain after {rounds - 1} rounds on {p.size} elements"
            )
        tri = triangle_step(current)
        quotient, groups = _quotient(current, tri)
        nodes = [
            tuple(sorted(x for g in group for x in nodes[g])) for group in groups
        ]
        trace.append(
            RoundRecord(
                round_index=rounds,
                tri=tuple(sorted(tri)),
                quotient_width=antichain_width(quotient),
                quotient_incomparability=max_incomparability(quotient),
            )
        )
        current = quotient
    below = [sum(1 for b in range(current.size) if current.less(b, a)) for a in range(current.size)]
    order = sorted(range(current.size), key=lambda a: below[a])
    classes = tuple(nodes[a] for a in order)
    return LinearizationResult(classes=classes, trace=tuple(trace))


def random_poset(
    size: int,
    max_width: int,
    seed: int,
    edge_probability: float | None = None,
    max_attempts: int = 1000,
) -> FinitePoset:
    """Random order: edges by probability on a shuffled layout, closed
    transitively, resampled until the width is at most max_width."""
    if size < 1:
        raise ParameterError(f"size must be >= 1, got {size}")
    if max_width < 1:
        raise ParameterError(f"max_width must be >= 1, got {max_width}")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        prob = edge_probability if edge_probability is not None else rng.uniform(0.2, 0.7)
        layout = list(range(size))
        rng.shuffle(layout)
        succ = [0] * size
        for i in range(size):
            for j in range(i + 1, size):
                if rng.random() < prob:
                    succ[layout[i]] |= 1 << layout[j]
        for i in reversed(range(size)):
            a = layout[i]
            m = succ[a]
            while m:
                b = (m & -m).bit_length() - 1
                m &= m - 1
                succ[a] |= succ[b]
        pairs = {(x, x) for x in range(size)}
        for a in range(size):
            m = succ[a]
            while m:
                b = (m & -m).bit_length() - 1
                m &= m - 1
                pairs.add((a, b))
        poset = FinitePoset(size=size, leq=frozenset(pairs))
        if antichain_width(poset) <= max_width:
            return poset
    raise ParameterError(
        f"no poset of size {size} and width <= {max_width} in {max_attempts} attempts"
    )


def exhaustive_posets(size: int) -> tuple[FinitePoset, ...]:
    """All posets on size elements up to isomorphism, for small sizes.

    Candidates are enumerated as transitively closed strict relations on
    a topologically sorted labelling, then deduplicated by canonical
    form, so each isomorphism class appears exactly once.
    """
    from .catalogue import SIG_ORDER
    from .structures import FiniteStructure, canonical_form

    if size < 1:
        raise ParameterError(f"size must be >= 1, got {size}")
    if size > 6:
        raise ParameterError(f"exhaustive enumeration capped at size 6, got {size}")
    slots = list(combinations(range(size), 2))
    seen: dict[bytes, FinitePoset] = {}
    for choice in range(1 << len(slots)):
        strict = {slots[i] for i in range(len(slots)) if choice >> i & 1}
        if any(
            (a, c) not in strict
            for a, b in strict
            for c in range(b + 1, size)
            if (b, c) in strict
        ):
            continue
        pairs = frozenset(strict | {(x, x) for x in range(size)})
        model = FiniteStructure.build(SIG_ORDER, size, {"leq": pairs})
        code = canonical_form(model)
        if code not in seen:
            seen[code] = FinitePoset(size=size, leq=pairs)
    return tuple(seen.values())
