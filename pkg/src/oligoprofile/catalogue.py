"""Catalogue of finite samplers for classical oligomorphic structures.

Each entry bundles a sampler (finite model of a given size), an optional
closed-form predictor for the number of n-point substructure classes, a
saturation rule saying how large a sample realises every n-point class, and
a dedup key for subsets (see below). Entry identifiers are stable strings
used by the CLI: pure_set, dlo, betweenness, circular, separation,
local_order, fibered_order:k, tree_c.

Relation conventions. Samplers evaluate their defining formula literally on
every tuple, repeated coordinates included, so degenerate tuples land in the
tuple set whenever the formula says so. The derived ternary/quaternary
relations over a chain x0 < x1 < ... are:

  betweenness  B(x,y,z)   iff x<=y<=z or z<=y<=x
  circular     C(x,y,z)   iff x<=y<=z or z<=x<=y or y<=z<=x
  separation   S(x,y,z,t) iff (C(x,y,z) and C(y,z,t) and C(z,t,x) and C(t,x,y))
                            or (C(t,z,y) and C(z,y,x) and C(y,x,t) and C(x,t,z))

local_order is the circulant tournament on an odd cycle: R(x,y) iff
(y-x) mod N lies in {1..(N-1)/2}. fibered_order:k is a chain of blocks of
size k with a reflexive comparability holding within blocks both ways and
across blocks forward. tree_c puts the canonical ternary branching relation
C(x;y,z) (meet(y,z) strictly below meet(x,y) = meet(x,z)) on the leaves of
a universal binary tree, see _universal_tree_depths.

Subset keys. profile() enumerates every n-subset of a sampled model; the
entry's subset_key maps a sorted subset to a hashable key such that subsets
with equal keys induce substructures with equal canonical codes. Keys only
serve to collapse duplicate canonicalisation work; counting still happens
on canonical codes of per-key representatives. For the order reducts the
induced literal structure of a sorted subset is independent of the subset
(the defining formulas only compare arguments), so the key is constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ParameterError
from .growth import tree_count
from .profiles import compositions_count
from .structures import FiniteStructure, Signature, signature

SIG_SET = Signature(())
SIG_ORDER = signature(("leq", 2))
SIG_BETWEENNESS = signature(("btw", 3))
SIG_CIRCULAR = signature(("cyc", 3))
SIG_SEPARATION = signature(("sep", 4))
SIG_TOURNAMENT = signature(("arc", 2))
SIG_FIBERED = signature(("prec", 2))
SIG_TREE = signature(("branch", 3))


@dataclass(frozen=True)
class CatalogueEntry:
    """One structure family: sampler, predictor, saturation and dedup data.

    sampler(size) returns a FiniteStructure; its domain size equals the
    requested size except for tree_c, where the parameter indexes a
    universal tree and the domain is its leaf set (documented there).
    predictor(n) gives the expected number of n-point classes, None when no
    closed form is part of the family. subset_key_factory(model) returns a
    key function over sorted subsets, or None for literal-encoding dedup.
    """

    entry_id: str
    sig: Signature
    sampler: Callable[[int], FiniteStructure]
    predictor: Callable[[int], int] | None
    saturation_rule: Callable[[int], int]
    subset_key_factory: Callable[[FiniteStructure], Callable[[tuple[int, ...]], object]] | None


def _chain_leq(n: int) -> set[tuple[int, int]]:
    return {(i, j) for i in range(n) for j in range(i, n)}


def _sample_pure_set(size: int) -> FiniteStructure:
    if size < 0:
        raise ParameterError(f"pure_set needs size >= 0, got {size}")
    return FiniteStructure.build(SIG_SET, size)


def _sample_dlo(size: int) -> FiniteStructure:
    if size < 1:
        raise ParameterError(f"dlo needs size >= 1, got {size}")
    return FiniteStructure.build(SIG_ORDER, size, {"leq": _chain_leq(size)})


def _sample_betweenness(size: int) -> FiniteStructure:
    if size < 1:
        raise ParameterError(f"betweenness needs size >= 1, got {size}")
    tuples = {
        (x, y, z)
        for x in range(size)
        for y in range(size)
        for z in range(size)
        if x <= y <= z or z <= y <= x
    }
    return FiniteStructure.build(SIG_BETWEENNESS, size, {"btw": tuples})


def _cyc(x: int, y: int, z: int) -> bool:
    return x <= y <= z or z <= x <= y or y <= z <= x


def _sample_circular(size: int) -> FiniteStructure:
    if size < 1:
        raise ParameterError(f"circular needs size >= 1, got {size}")
    tuples = {
        (x, y, z)
        for x in range(size)
        for y in range(size)
        for z in range(size)
        if _cyc(x, y, z)
    }
    return FiniteStructure.build(SIG_CIRCULAR, size, {"cyc": tuples})


def _sep(x: int, y: int, z: int, t: int) -> bool:
    return (_cyc(x, y, z) and _cyc(y, z, t) and _cyc(z, t, x) and _cyc(t, x, y)) or (
        _cyc(t, z, y) and _cyc(z, y, x) and _cyc(y, x, t) and _cyc(x, t, z)
    )


def _sample_separation(size: int) -> FiniteStructure:
    if size < 1:
        raise ParameterError(f"separation needs size >= 1, got {size}")
    rng = range(size)
    tuples = {(x, y, z, t) for x in rng for y in rng for z in rng for t in rng if _sep(x, y, z, t)}
    return FiniteStructure.build(SIG_SEPARATION, size, {"sep": tuples})


def _sample_local_order(size: int) -> FiniteStructure:
    if size < 3 or size % 2 == 0:
        raise ParameterError(f"local_order needs an odd size >= 3, got {size}")
    half = (size - 1) // 2
    tuples = {
        (x, y)
        for x in range(size)
        for y in range(size)
        if 1 <= (y - x) % size <= half
    }
    return FiniteStructure.build(SIG_TOURNAMENT, size, {"arc": tuples})


def _make_fibered_sampler(k: int) -> Callable[[int], FiniteStructure]:
    def sample(size: int) -> FiniteStructure:
        if size < 1:
            raise ParameterError(f"fibered_order:{k} needs size >= 1, got {size}")
        blk = [e // k for e in range(size)]
        tuples = {(a, b) for a in range(size) for b in range(size) if blk[a] <= blk[b]}
        return FiniteStructure.build(SIG_FIBERED, size, {"prec": tuples})

    return sample


def _universal_leaf_count(s: int) -> int:
    return 1 if s <= 1 else _universal_leaf_count(s - 1) + _universal_leaf_count(s // 2)


def _universal_tree_depths(s: int) -> list[list[int]]:
    """Pairwise meet depths for the leaves of the universal tree U_s.

    U_1 is a leaf and U_s joins U_{s-1} (left) with U_{s//2} (right). Every
    binary tree shape with at most s leaves embeds into U_s as a leaf subset
    with all meets distinct: a shape with n <= s leaves splits at the root
    into sides of a and n-a leaves with a >= ceil(n/2) on one side, so the
    larger side fits U_{s-1} and the smaller fits U_{s//2} by induction.
    Leaves are indexed left to right; matrix entry [i][j] is the depth of
    the lowest common ancestor (root depth 0).
    """
    n = _universal_leaf_count(s)
    md = [[0] * n for _ in range(n)]

    def fill(width: int, off: int, depth: int) -> int:
        if width <= 1:
            return 1
        nl = fill(width - 1, off, depth + 1)
        nr = fill(width // 2, off + nl, depth + 1)
        for i in range(off, off + nl):
            row = md[i]
            for j in range(off + nl, off + nl + nr):
                row[j] = depth
                md[j][i] = depth
        return nl + nr

    fill(s, 0, 0)
    return md


def _branch_tuples(md: list[list[int]], leaves: Sequence[int]) -> set[tuple[int, int, int]]:
    """C(x;y,z) on the given leaves: meet(y,z) strictly below meet(x,y) = meet(x,z).

    Meets of two leaves sit on a common root path, so strictly-below reduces
    to a depth comparison, and the two shallower of the three pairwise meets
    of distinct leaves always coincide. With repeated coordinates the meet
    of a leaf with itself is the leaf, which lies strictly below any proper
    meet; the formula then reduces to the equality pattern.
    """
    out = set()
    idx = range(len(leaves))
    for i in idx:
        for j in idx:
            for l in idx:
                x, y, z = leaves[i], leaves[j], leaves[l]
                if j == l:
                    if i != j:
                        out.add((i, j, l))
                    continue
                if i == j or i == l:
                    continue
                dyz = md[y][z]
                dxy = md[x][y]
                if dyz > dxy and dxy == md[x][z]:
                    out.add((i, j, l))
    return out


def _sample_tree(param: int) -> FiniteStructure:
    """Leaves of the universal tree U_param with the branching relation.

    The domain size is the leaf count of U_param (1, 2, 3, 5, 7, 10, 13,
    18, 23, 30, ... for param = 1, 2, ...), not param itself: a complete
    binary tree deep enough for every n-leaf shape would need 2**(n-1)
    leaves, while U_n realises the same shapes with polynomially few.
    """
    if param < 1:
        raise ParameterError(f"tree_c needs size >= 1, got {param}")
    md = _universal_tree_depths(param)
    leaves = list(range(len(md)))
    return FiniteStructure.build(SIG_TREE, len(md), {"branch": _branch_tuples(md, leaves)})


def _const_key_factory(model: FiniteStructure) -> Callable[[tuple[int, ...]], object]:
    def key(subset: tuple[int, ...]) -> object:
        return ()

    return key


def _local_order_key_factory(model: FiniteStructure) -> Callable[[tuple[int, ...]], object]:
    # Gap vector around the cycle, minimised over rotations: translation is
    # an automorphism of the circulant, so equal keys give isomorphic
    # induced tournaments.
    n = model.size

    def key(subset: tuple[int, ...]) -> object:
        k = len(subset)
        if k <= 1:
            return ()
        gaps = tuple(subset[i + 1] - subset[i] for i in range(k - 1)) + (
            n - subset[-1] + subset[0],
        )
        best = gaps
        for r in range(1, k):
            rot = gaps[r:] + gaps[:r]
            if rot < best:
                best = rot
        return best

    return key


def _make_fibered_key_factory(k: int):
    def factory(model: FiniteStructure) -> Callable[[tuple[int, ...]], object]:
        def key(subset: tuple[int, ...]) -> object:
            runs = []
            prev = None
            for e in subset:
                b = e // k
                if b == prev:
                    runs[-1] += 1
                else:
                    runs.append(1)
                    prev = b
            return tuple(runs)

        return key

    return factory


def _tree_key_factory(model: FiniteStructure) -> Callable[[tuple[int, ...]], object]:
    # Consecutive meet depths determine every pairwise meet depth for leaves
    # in left-to-right order (range minima), and the induced relation only
    # compares depths, so the dense rank pattern is enough. A reversed
    # pattern is the mirror image, hence isomorphic; keep the smaller.
    size = model.size
    param = next(s for s in range(1, 64) if _universal_leaf_count(s) == size)
    md = _universal_tree_depths(param)

    def key(subset: tuple[int, ...]) -> object:
        k = len(subset)
        if k <= 1:
            return ()
        depths = [md[subset[i]][subset[i + 1]] for i in range(k - 1)]
        rank = {d: r for r, d in enumerate(sorted(set(depths)))}
        pat = tuple(rank[d] for d in depths)
        rev = pat[::-1]
        return min(pat, rev)

    return key


def _rule_desk(n: int) -> int:
    return 2 * n + 3


ENTRY_IDS = (
    "pure_set",
    "dlo",
    "betweenness",
    "circular",
    "separation",
    "local_order",
    "fibered_order:k",
    "tree_c",
)


def _fibered_entry(k: int) -> CatalogueEntry:
    if k < 1:
        raise ParameterError(f"fibered_order block size must be >= 1, got {k}")
    return CatalogueEntry(
        entry_id=f"fibered_order:{k}",
        sig=SIG_FIBERED,
        sampler=_make_fibered_sampler(k),
        predictor=lambda n, _k=k: compositions_count(n, _k),
        saturation_rule=lambda n, _k=k: _k * n,
        subset_key_factory=_make_fibered_key_factory(k),
    )


_BASE_ENTRIES = {
    "pure_set": CatalogueEntry(
        "pure_set", SIG_SET, _sample_pure_set, lambda n: 1, _rule_desk, _const_key_factory
    ),
    "dlo": CatalogueEntry(
        "dlo", SIG_ORDER, _sample_dlo, lambda n: 1, _rule_desk, _const_key_factory
    ),
    "betweenness": CatalogueEntry(
        "betweenness", SIG_BETWEENNESS, _sample_betweenness, lambda n: 1, _rule_desk,
        _const_key_factory,
    ),
    "circular": CatalogueEntry(
        "circular", SIG_CIRCULAR, _sample_circular, lambda n: 1, _rule_desk, _const_key_factory
    ),
    "separation": CatalogueEntry(
        "separation", SIG_SEPARATION, _sample_separation, lambda n: 1, _rule_desk,
        _const_key_factory,
    ),
    "local_order": CatalogueEntry(
        "local_order", SIG_TOURNAMENT, _sample_local_order, None, _rule_desk,
        _local_order_key_factory,
    ),
    "tree_c": CatalogueEntry(
        "tree_c", SIG_TREE, _sample_tree, tree_count, lambda n: n, _tree_key_factory
    ),
}


def get_entry(entry_id: str) -> CatalogueEntry:
    """Resolve a stable identifier, including parametric fibered_order:k."""
    if entry_id in _BASE_ENTRIES:
        return _BASE_ENTRIES[entry_id]
    if entry_id.startswith("fibered_order:"):
        raw = entry_id.split(":", 1)[1]
        try:
            k = int(raw)
        except ValueError:
            raise ParameterError(f"bad fibered_order block size {raw!r}") from None
        return _fibered_entry(k)
    raise ParameterError(f"unknown catalogue entry {entry_id!r}")


def list_entry_ids() -> tuple[str, ...]:
    return ENTRY_IDS


def default_sweep_ids() -> tuple[str, ...]:
    """Concrete entries used by catalogue-wide sweeps and scripts."""
    return (
        "pure_set",
        "dlo",
        "betweenness",
        "circular",
        "separation",
        "local_order",
        "fibered_order:2",
        "fibered_order:3",
        "tree_c",
    )


def sample_model(entry: CatalogueEntry | str, size: int) -> FiniteStructure:
    if isinstance(entry, str):
        entry = get_entry(entry)
    return entry.sampler(size)


def age_predictor(entry: CatalogueEntry | str, n: int) -> int | None:
    """Closed-form class count for n-point substructures, if the family has one."""
    if isinstance(entry, str):
        entry = get_entry(entry)
    if n < 1:
        raise ParameterError(f"predictor needs n >= 1, got {n}")
    if entry.predictor is None:
        return None
    return entry.predictor(n)
