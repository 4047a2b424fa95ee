"""Glueing linear order fragments into lines and circles.

Fragments are finite runs read off a hidden linear or circular order,
each in an arbitrary direction. Intersections of two such runs fall
into five shapes: empty, one shared run read the same way (head to
tail), one shared run read opposite ways, or two shared runs at the
ends, again aligned or reversed; anything else cannot come from one
ambient order. Glueing fixes a direction per fragment so all overlaps
align, chains overlaps into integer offsets, and reads a wrap-around
(a closed chain of overlaps shifting by one full period) as evidence
that the component is circular rather than linear.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Hashable, Iterable, Sequence

from .catalogue import sample_model
from .errors import (
    FragmentPairError,
    InconsistentFragmentsError,
    ParameterError,
)
from .structures import FiniteStructure

Element = Hashable

OVERLAP_TAGS = (
    "disjoint",
    "head-tail",
    "aligned-reversed",
    "double-wrap",
    "double-wrap-reversed",
)


@dataclass(frozen=True)
class OrderFragment:
    """A directed run of distinct elements, at least two long."""

    fragment_id: str
    elements: tuple[Element, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(self.elements) < 2:
            raise ParameterError(
                f"fragment {self.fragment_id!r} needs >= 2 elements"
            )
        if len(set(self.elements)) != len(self.elements):
            raise ParameterError(
                f"fragment {self.fragment_id!r} repeats an element"
            )

    def to_json_dict(self) -> dict:
        return {"id": self.fragment_id, "elements": list(self.elements)}


@dataclass(frozen=True)
class OverlapCase:
    """How two fragments intersect: a tag and the shared runs, read
    in the first fragment's direction."""

    tag: str
    segments: tuple[tuple[Element, ...], ...]

    def __post_init__(self) -> None:
        if self.tag not in OVERLAP_TAGS:
            raise ParameterError(f"unknown overlap tag {self.tag!r}")


@dataclass(frozen=True)
class GlueComponent:
    """One connected block of fragments with its recovered arrangement.

    Linear arrangements are stored as the smaller of the two reading
    directions; circular ones as the least rotation over both
    directions, so equal components compare equal as values.
    """

    kind: str
    arrangement: tuple[Element, ...]
    members: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("linear", "circular"):
            raise ParameterError(f"unknown component kind {self.kind!r}")

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "arrangement": list(self.arrangement),
            "members": list(self.members),
        }


def _order_key(x: Element):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        return (1, str(x))
    return (0, x)


def _seq_key(seq: Iterable[Element]) -> tuple:
    return tuple(_order_key(x) for x in seq)


def normalize_linear(seq: Sequence[Element]) -> tuple[Element, ...]:
    """The smaller reading direction of a linear arrangement."""
    fwd = tuple(seq)
    rev = tuple(reversed(fwd))
    return fwd if _seq_key(fwd) <= _seq_key(rev) else rev


def normalize_circular(seq: Sequence[Element]) -> tuple[Element, ...]:
    """The least rotation over both reading directions of a cycle."""
    fwd = tuple(seq)
    best = None
    for base in (fwd, tuple(reversed(fwd))):
        for shift in range(len(base)):
            cand = base[shift:] + base[:shift]
            if best is None or _seq_key(cand) < _seq_key(best):
                best = cand
    return best


def _end_runs(seq: tuple[Element, ...], shared: set[Element]) -> list[tuple[int, int]]:
    """Maximal runs of shared elements as (start, length) slices."""
    runs = []
    i = 0
    n = len(seq)
    while i < n:
        if seq[i] in shared:
            j = i
            while j < n and seq[j] in shared:
                j += 1
            runs.append((i, j - i))
            i = j
        else:
            i += 1
    return runs


def classify_overlap(f1: OrderFragment, f2: OrderFragment) -> OverlapCase:
    """Sort one pair of fragments into the five intersection shapes.

    Shapes that cannot arise from windows of a single ambient line or
    circle (a shared run interior to either fragment, or scrambled
    shared orders) raise FragmentPairError.
    """
    a, b = f1.elements, f2.elements
    shared = set(a) & set(b)
    if not shared:
        return OverlapCase(tag="disjoint", segments=())
    runs_a = _end_runs(a, shared)
    runs_b = _end_runs(b, shared)
    detail = f"fragments {f1.fragment_id!r}, {f2.fragment_id!r}"
    if len(runs_a) != len(runs_b) or len(runs_a) > 2:
        raise FragmentPairError(f"{detail}: shared runs do not pair up")

    def slice_of(seq, run):
        return seq[run[0]:run[0] + run[1]]

    def is_prefix(run):
        return run[0] == 0

    def is_suffix(seq, run):
        return run[0] + run[1] == len(seq)

    if len(runs_a) == 1:
        ra, rb = runs_a[0], runs_b[0]
        seg_a, seg_b = slice_of(a, ra), slice_of(b, rb)
        if seg_a == seg_b:
            if (is_suffix(a, ra) and is_prefix(rb)) or (
                is_prefix(ra) and is_suffix(b, rb)
            ):
                return OverlapCase(tag="head-tail", segments=(seg_a,))
        if seg_a == tuple(reversed(seg_b)):
            if (is_prefix(ra) and is_prefix(rb)) or (
                is_suffix(a, ra) and is_suffix(b, rb)
            ):
                return OverlapCase(tag="aligned-reversed", segments=(seg_a,))
        raise FragmentPairError(f"{detail}: shared run not at matching ends")

    pa, sa = runs_a
    pb, sb = runs_b
    if not (is_prefix(pa) and is_suffix(a, sa) and is_prefix(pb) and is_suffix(b, sb)):
        raise FragmentPairError(f"{detail}: shared runs not at both ends")
    pa_seq, sa_seq = slice_of(a, pa), slice_of(a, sa)
    pb_seq, sb_seq = slice_of(b, pb), slice_of(b, sb)
    if sa_seq == pb_seq and sb_seq == pa_seq:
        return OverlapCase(tag="double-wrap", segments=(pa_seq, sa_seq))
    if pa_seq == tuple(reversed(pb_seq)) and sa_seq == tuple(reversed(sb_seq)):
        return OverlapCase(tag="double-wrap-reversed", segments=(pa_seq, sa_seq))
    raise FragmentPairError(f"{detail}: end runs match in no direction")


_REVERSING_TAGS = ("aligned-reversed", "double-wrap-reversed")


def _offset_constraints(
    fa: tuple[Element, ...], fb: tuple[Element, ...], detail: str
) -> list[int]:
    """Offsets of fb relative to fa for same-direction overlapping runs.

    Each shared end run pins start(fb) - start(fa); a pair of runs at
    both ends pins two conflicting values, whose difference is one full
    trip around a circle.
    """
    shared = set(fa) & set(fb)
    runs_a = _end_runs(fa, shared)
    runs_b = _end_runs(fb, shared)
    deltas = []
    for ra in runs_a:
        seg = fa[ra[0]:ra[0] + ra[1]]
        hit = [rb for rb in runs_b if fb[rb[0]:rb[0] + rb[1]] == seg]
        if len(hit) != 1:
            raise InconsistentFragmentsError(
                f"{detail}: oriented runs fail to pair up"
            )
        deltas.append(ra[0] - hit[0][0])
    if not deltas:
        raise InconsistentFragmentsError(f"{detail}: no oriented overlap")
    return sorted(set(deltas))


def glue(fragments: Sequence[OrderFragment]) -> list[GlueComponent]:
    """Assemble fragments into linear or circular components.

    Fragments are nodes; intersecting pairs are edges carrying whether
    the two readings disagree. A direction per fragment is fixed by
    parity propagation (an odd cycle means no consistent choice), then
    run overlaps pin relative start offsets. Offset clashes around
    cycles all share one period: the circumference. Every element must
    land on exactly one position and every position on one element.
    """
    ids = [f.fragment_id for f in fragments]
    if len(set(ids)) != len(ids):
        raise ParameterError("duplicate fragment ids")
    n = len(fragments)
    edges: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            case = classify_overlap(fragments[i], fragments[j])
            if case.tag == "disjoint":
                continue
            parity = 1 if case.tag in _REVERSING_TAGS else 0
            edges[i].append((j, parity))
            edges[j].append((i, parity))

    components: list[GlueComponent] = []
    flip: dict[int, int] = {}
    for root in range(n):
        if root in flip:
            continue
        flip[root] = 0
        todo = [root]
        comp = [root]
        while todo:
            cur = todo.pop()
            for nxt, parity in edges[cur]:
                want = flip[cur] ^ parity
                if nxt not in flip:
                    flip[nxt] = want
                    comp.append(nxt)
                    todo.append(nxt)
                elif flip[nxt] != want:
                    raise InconsistentFragmentsError(
                        f"fragment {fragments[nxt].fragment_id!r} needs both "
                        "directions at once"
                    )
        components.append(_assemble(fragments, comp, flip, edges))
    components.sort(key=lambda c: c.members)
    return components


def _assemble(
    fragments: Sequence[OrderFragment],
    comp: list[int],
    flip: dict[int, int],
    edges: dict[int, list[tuple[int, int]]],
) -> GlueComponent:
    oriented = {
        i: tuple(reversed(fragments[i].elements))
        if flip[i]
        else fragments[i].elements
        for i in comp
    }
    offset: dict[int, int] = {comp[0]: 0}
    period = 0
    todo = [comp[0]]
    seen_edges = set()
    while todo:
        cur = todo.pop()
        for nxt, _ in edges[cur]:
            if (cur, nxt) in seen_edges:
                continue
            seen_edges.add((cur, nxt))
            seen_edges.add((nxt, cur))
            detail = (
                f"fragments {fragments[cur].fragment_id!r}, "
                f"{fragments[nxt].fragment_id!r}"
            )
            for delta in _offset_constraints(oriented[cur], oriented[nxt], detail):
                value = offset[cur] + delta
                if nxt not in offset:
                    offset[nxt] = value
                    todo.append(nxt)
                elif offset[nxt] != value:
                    period = gcd(period, abs(offset[nxt] - value))

    at_position: dict[int, Element] = {}
    position_of: dict[Element, int] = {}
    for i in comp:
        for k, x in enumerate(oriented[i]):
            pos = offset[i] + k
            if period:
                pos %= period
            if at_position.get(pos, x) != x or position_of.get(x, pos) != pos:
                raise InconsistentFragmentsError(
                    f"element {x!r} and position {pos} do not match up"
                )
            at_position[pos] = x
            position_of[x] = pos

    members = tuple(sorted(fragments[i].fragment_id for i in comp))
    if period:
        if len(at_position) != period:
            raise InconsistentFragmentsError(
                f"{len(at_position)} elements on a circle of {period} positions"
            )
        if period < 3:
            raise InconsistentFragmentsError(
                f"wrap-around over only {period} positions"
            )
        cycle = tuple(at_position[p] for p in range(period))
        return GlueComponent(
            kind="circular",
            arrangement=normalize_circular(cycle),
            members=members,
        )
    low, high = min(at_position), max(at_position)
    if len(at_position) != high - low + 1:
        raise InconsistentFragmentsError("line has uncovered positions")
    line = tuple(at_position[p] for p in range(low, high + 1))
    return GlueComponent(
        kind="linear",
        arrangement=normalize_linear(line),
        members=members,
    )


def emit_invariant_relation(component: GlueComponent) -> FiniteStructure:
    """The direction-free structure of a component's arrangement.

    Linear components give the betweenness structure of their line,
    circular ones the separation structure of their cycle; both tuple
    sets are unchanged under reversing (and, for cycles, rotating) the
    arrangement, so equal components emit equal structures.
    """
    n = len(component.arrangement)
    if component.kind == "linear":
        return sample_model("betweenness", n)
    return sample_model("separation", n)


def fragments_to_json_dict(fragments: Sequence[OrderFragment]) -> dict:
    return {"fragments": [f.to_json_dict() for f in fragments]}


def fragments_from_json_dict(payload: dict) -> tuple[OrderFragment, ...]:
    try:
        rows = payload["fragments"]
        out = tuple(
            OrderFragment(
                fragment_id=str(row["id"]),
                elements=tuple(row["elements"]),
            )
            for row in rows
        )
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"malformed fragments payload: {exc}") from None
    return out


def _next_overlap(rng: random.Random, prev_len: int) -> int:
    if prev_len <= 3:
        return 2
    return rng.randint(2, min(4, prev_len - 1))


def _window_spans(size: int, rng: random.Random, max_len: int) -> list[tuple[int, int]]:
    """Covering windows over 0..size-1: starts and ends both increase,
    consecutive windows share at least two positions."""
    spans = [(0, rng.randint(3, min(size, max_len)))]
    while spans[-1][1] < size:
        s_prev, e_prev = spans[-1]
        overlap = _next_overlap(rng, e_prev - s_prev)
        start = e_prev - overlap
        remaining = size - start
        if remaining <= max_len:
            length = remaining
        else:
            length = rng.randint(max(3, overlap + 1), max_len)
        spans.append((start, start + length))
    return spans


def _try_arc_spans(size: int, rng: random.Random, max_len: int) -> list[tuple[int, int]] | None:
    """One attempt at covering arcs: a single lap plus a final arc that
    wraps into the first one. None when the draw paints itself into a
    corner; the caller resamples."""
    arc_cap = min(max_len, size - 2)
    first_len = rng.randint(3, arc_cap)
    wrap = rng.randint(2, first_len - 1) if first_len > 3 else 2
    target = size + wrap
    spans = [(0, first_len)]
    while spans[-1][1] < target:
        s_prev, e_prev = spans[-1]
        overlap = _next_overlap(rng, e_prev - s_prev)
        start = e_prev - overlap
        remaining = target - start
        if remaining <= arc_cap:
            length = remaining
        else:
            hi = min(arc_cap, size - start)
            lo = max(3, overlap + 1)
            if hi < lo:
                return None
            length = rng.randint(lo, hi)
        spans.append((start, start + length))
        if len(spans) > size:
            return None
    if len(spans) < 2 or wrap >= spans[1][0]:
        return None
    if any(e > size for _, e in spans[:-1]):
        return None
    return spans


def sample_linear_fragments(
    size: int, seed: int, max_len: int = 12
) -> tuple[tuple[Element, ...], tuple[OrderFragment, ...]]:
    """A hidden shuffled line plus covering windows in random directions."""
    if size < 3:
        raise ParameterError(f"linear sampling needs size >= 3, got {size}")
    if max_len < 5:
        raise ParameterError(f"max_len must be >= 5, got {max_len}")
    rng = random.Random(seed)
    hidden = list(range(size))
    rng.shuffle(hidden)
    spans = _window_spans(size, rng, max_len)
    return tuple(hidden), _spans_to_fragments(hidden, spans, rng, wrap=0)


def sample_circular_fragments(
    size: int, seed: int, max_len: int = 12
) -> tuple[tuple[Element, ...], tuple[OrderFragment, ...]]:
    """A hidden shuffled cycle plus covering arcs in random directions.

    Arcs march once around the circle and the last one wraps into the
    first, so the overlap chain closes and the period equals size.
    Draws whose arcs nest (and so cannot come from window sampling)
    are rejected and retried.
    """
    if size < 8:
        raise ParameterError(f"circular sampling needs size >= 8, got {size}")
    if max_len < 5:
        raise ParameterError(f"max_len must be >= 5, got {max_len}")
    rng = random.Random(seed)
    hidden = list(range(size))
    rng.shuffle(hidden)
    circle = hidden + hidden
    for _ in range(200):
        spans = _try_arc_spans(size, rng, max_len)
        if spans is None:
            continue
        probes = [
            OrderFragment(fragment_id=f"p{i}", elements=tuple(circle[s:e]))
            for i, (s, e) in enumerate(spans)
        ]
        try:
            for i in range(len(probes)):
                for j in range(i + 1, len(probes)):
                    classify_overlap(probes[i], probes[j])
        except FragmentPairError:
            continue
        return tuple(hidden), _spans_to_fragments(circle, spans, rng, wrap=size)
    raise ParameterError(f"no valid arc covering of size {size} found")


def _spans_to_fragments(
    ground: list[Element],
    spans: list[tuple[int, int]],
    rng: random.Random,
    wrap: int,
) -> tuple[OrderFragment, ...]:
    windows = []
    for s, e in spans:
        seq = tuple(ground[s:e])
        if wrap and len(seq) > wrap:
            raise ParameterError("window longer than the circle")
        if rng.random() < 0.5:
            seq = tuple(reversed(seq))
        windows.append(seq)
    rng.shuffle(windows)
    return tuple(
        OrderFragment(fragment_id=f"f{i}", elements=seq)
        for i, seq in enumerate(windows)
    )
