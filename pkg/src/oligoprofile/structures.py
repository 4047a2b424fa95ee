"""Finite relational structures and exact isomorphism machinery.

A structure is a finite domain {0..size-1} plus one tuple set per relation
symbol. Everything downstream (catalogue samplers, profile counting, witness
families, glue output) speaks this type, so the operations here are kept
small and exact:

  * induced_substructure: restrict to a subset, reindexed by position,
  * structure_encoding: a deterministic byte serialisation of the literal
    structure (length-prefixed varints, tuples in sorted order),
  * canonical_form: the minimum encoding over a refinement-pruned set of
    relabellings; two structures get the same code iff they are isomorphic,
  * is_isomorphic: direct backtracking search, deliberately independent of
    canonical_form so the two paths can cross-check each other in tests.

Canonicalisation strategy: start from iterated colour refinement (colours
are derived only from isomorphism-invariant data, so they are stable across
relabellings), then branch on the first non-singleton colour class,
individualising one vertex at a time and refining again. Leaves of the
search are discrete colourings, i.e. relabellings; the canonical code is the
byte-wise minimum of their encodings. Branches whose chosen vertex is
swapped onto an already-explored one by a transposition automorphism are
skipped; this keeps highly symmetric inputs (pure antichains, unmarked sets)
linear instead of factorial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InvalidSubsetError, ParameterError, SignatureMismatchError

CanonicalCode = bytes


@dataclass(frozen=True)
class Signature:
    """Ordered relation symbols with arities; order fixes encoding layout."""

    relations: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.relations]
        if len(set(names)) != len(names):
            raise ParameterError(f"duplicate relation names in signature: {names}")
        for name, arity in self.relations:
            if not isinstance(name, str) or not name:
                raise ParameterError(f"relation name must be a nonempty string, got {name!r}")
            if arity < 1:
                raise ParameterError(f"relation {name!r} has arity {arity}, expected >= 1")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.relations)

    def index(self, name: str) -> int:
        for i, (other, _) in enumerate(self.relations):
            if other == name:
                return i
        raise ParameterError(f"no relation named {name!r} in signature")

    def arity(self, name: str) -> int:
        return self.relations[self.index(name)][1]


def signature(*relations: tuple[str, int]) -> Signature:
    return Signature(tuple(relations))


@dataclass(frozen=True)
class FiniteStructure:
    """Immutable finite structure over domain {0..size-1}."""

    signature: Signature
    size: int
    relations: tuple[frozenset[tuple[int, ...]], ...]

    def __post_init__(self):
        if self.size < 0:
            raise ParameterError(f"size must be >= 0, got {self.size}")
        if len(self.relations) != len(self.signature.relations):
            raise ParameterError(
                f"{len(self.relations)} tuple sets for "
                f"{len(self.signature.relations)} relation symbols"
            )
        for (name, arity), tuples in zip(self.signature.relations, self.relations):
            for t in tuples:
                if len(t) != arity:
                    raise ParameterError(f"tuple {t} in {name!r} has wrong arity (want {arity})")
                if any(not (0 <= x < self.size) for x in t):
                    raise ParameterError(f"tuple {t} in {name!r} out of range for size {self.size}")

    @classmethod
    def build(
        cls,
        sig: Signature,
        size: int,
        tuples: Mapping[str, Iterable[Sequence[int]]] | None = None,
    ) -> "FiniteStructure":
        tuples = tuples or {}
        unknown = set(tuples) - set(sig.names)
        if unknown:
            raise ParameterError(f"tuples given for unknown relations: {sorted(unknown)}")
        rels = tuple(
            frozenset(tuple(t) for t in tuples.get(name, ())) for name, _ in sig.relations
        )
        return cls(sig, size, rels)

    def relation(self, name: str) -> frozenset[tuple[int, ...]]:
        return self.relations[self.signature.index(name)]

    def relabel(self, perm: Sequence[int]) -> "FiniteStructure":
        """Apply a bijection old -> new given as perm[old] = new."""
        if sorted(perm) != list(range(self.size)):
            raise ParameterError(f"perm {perm} is not a bijection on {self.size} elements")
        rels = tuple(
            frozenset(tuple(perm[x] for x in t) for t in tuples) for tuples in self.relations
        )
        return FiniteStructure(self.signature, self.size, rels)

    def to_json_dict(self) -> dict:
        return {
            "signature": [[name, arity] for name, arity in self.signature.relations],
            "size": self.size,
            "tuples": {
                name: sorted([list(t) for t in tuples])
                for (name, _), tuples in zip(self.signature.relations, self.relations)
            },
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "FiniteStructure":
        try:
            sig = Signature(tuple((str(n), int(a)) for n, a in data["signature"]))
            size = int(data["size"])
            tuples = {str(k): [tuple(int(x) for x in t) for t in v] for k, v in data["tuples"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed structure JSON: {exc}") from exc
        return cls.build(sig, size, tuples)


def induced_substructure(model: FiniteStructure, subset: Sequence[int]) -> FiniteStructure:
    """Restrict model to subset; element i of the result is subset[i].

    The subset must consist of distinct elements of the model. Tuples are
    kept exactly when all entries lie in the subset, then reindexed.
    """
    if len(set(subset)) != len(subset):
        raise InvalidSubsetError(f"subset {subset} has repeated elements")
    if any(not (0 <= x < model.size) for x in subset):
        raise InvalidSubsetError(f"subset {subset} out of range for size {model.size}")
    pos = {x: i for i, x in enumerate(subset)}
    k = len(subset)
    rels = []
    for (_, arity), tuples in zip(model.signature.relations, model.relations):
        if k ** arity <= len(tuples):
            kept = frozenset(
                tuple(pos[x] for x in t)
                for t in itertools.product(subset, repeat=arity)
                if t in tuples
            )
        else:
            kept = frozenset(
                tuple(pos[x] for x in t) for t in tuples if all(x in pos for x in t)
            )
        rels.append(kept)
    return FiniteStructure(model.signature, k, tuple(rels))


# Encoding: unsigned LEB128 varints, layout
#   [#relations] [arity...] [size] then per relation [#tuples] [entries...]
# with tuples in lexicographic order. Within one signature, equal bytes
# mean equal structures.


def _emit(buf: bytearray, x: int) -> None:
    while True:
        b = x & 0x7F
        x >>= 7
        if x:
            buf.append(b | 0x80)
        else:
            buf.append(b)
            return


def _encode_labelled(
    size: int,
    arities: tuple[int, ...],
    rel_tuples: tuple[tuple[tuple[int, ...], ...], ...],
    perm: Sequence[int] | None,
) -> bytes:
    buf = bytearray()
    _emit(buf, len(arities))
    for a in arities:
        _emit(buf, a)
    _emit(buf, size)
    for tuples in rel_tuples:
        if perm is None:
            mapped = sorted(tuples)
        else:
            mapped = sorted(tuple(perm[x] for x in t) for t in tuples)
        _emit(buf, len(mapped))
        for t in mapped:
            for x in t:
                _emit(buf, x)
    return bytes(buf)


def structure_encoding(s: FiniteStructure) -> bytes:
    """Deterministic byte serialisation of the literal (labelled) structure."""
    arities = tuple(a for _, a in s.signature.relations)
    rel_tuples = tuple(tuple(tuples) for tuples in s.relations)
    return _encode_labelled(s.size, arities, rel_tuples, None)


def _refine(size: int, rels: list[tuple[int, tuple[tuple[int, ...], ...]]], colors: list[int]) -> list[int]:
    """Iterated colour refinement; colour ids are renumbered by sorted key
    so they depend only on isomorphism-invariant data."""
    while True:
        occ: list[list] = [[] for _ in range(size)]
        for ridx, (_, tuples) in enumerate(rels):
            for t in tuples:
                key = tuple(colors[x] for x in t)
                for posn, x in enumerate(t):
                    occ[x].append((ridx, posn, key))
        for lst in occ:
            lst.sort()
        keys = [(colors[v], tuple(occ[v])) for v in range(size)]
        order = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [order[k] for k in keys]
        if new == colors:
            return colors
        colors = new


def _is_transposition_automorphism(
    u: int,
    v: int,
    rels: list[tuple[int, tuple[tuple[int, ...], ...]]],
    rel_sets: list[frozenset[tuple[int, ...]]],
) -> bool:
    for (_, tuples), tset in zip(rels, rel_sets):
        for t in tuples:
            if u in t or v in t:
                mapped = tuple(v if x == u else u if x == v else x for x in t)
                if mapped not in tset:
                    return False
    return True


def canonical_form(s: FiniteStructure) -> CanonicalCode:
    """Canonical byte code: equal codes iff isomorphic (same signature).

    Minimum encoding over the leaves of an individualisation-refinement
    search. Every step uses only invariant data, so the set of candidate
    relabellings is the same for isomorphic structures, and the code is a
    lossless encoding, so distinct codes separate non-isomorphic ones.
    """
    size = s.size
    arities = tuple(a for _, a in s.signature.relations)
    rels = [(a, tuple(tuples)) for (_, a), tuples in zip(s.signature.relations, s.relations)]
    if size <= 1:
        return _encode_labelled(size, arities, tuple(t for _, t in rels), None)
    rel_sets = [frozenset(t) for _, t in rels]
    rel_tuples = tuple(t for _, t in rels)
    best: bytes | None = None

    def search(colors: list[int]) -> None:
        nonlocal best
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = -1
        for c in sorted(counts):
            if counts[c] > 1:
                target = c
                break
        if target < 0:
            code = _encode_labelled(size, arities, rel_tuples, colors)
            if best is None or code < best:
                best = code
            return
        members = [v for v in range(size) if colors[v] == target]
        branched: list[int] = []
        for v in members:
            if any(_is_transposition_automorphism(v, w, rels, rel_sets) for w in branched):
                continue
            branched.append(v)
            split = [c * 2 + 1 for c in colors]
            split[v] = colors[v] * 2
            search(_refine(size, rels, split))

    search(_refine(size, rels, [0] * size))
    assert best is not None
    return best


def _same_signature(a: FiniteStructure, b: FiniteStructure) -> None:
    if a.signature != b.signature:
        raise SignatureMismatchError(
            f"signatures differ: {a.signature.relations} vs {b.signature.relations}"
        )


def is_isomorphic(a: FiniteStructure, b: FiniteStructure) -> bool:
    """Backtracking isomorphism test (independent of canonical_form).

    Vertices are matched in an order chosen by refinement colours; a partial
    map is rejected as soon as a fully mapped tuple of either side fails to
    correspond. Raises SignatureMismatchError on different signatures.
    """
    _same_signature(a, b)
    if a.size != b.size:
        return False
    if any(len(ta) != len(tb) for ta, tb in zip(a.relations, b.relations)):
        return False
    size = a.size
    if size == 0:
        return True
    rels_a = [(ar, tuple(t)) for (_, ar), t in zip(a.signature.relations, a.relations)]
    rels_b = [(ar, tuple(t)) for (_, ar), t in zip(b.signature.relations, b.relations)]
    col_a = _refine(size, rels_a, [0] * size)
    col_b = _refine(size, rels_b, [0] * size)
    if sorted(col_a) != sorted(col_b):
        return False

    by_vertex_a: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(size)]
    for ridx, (_, tuples) in enumerate(rels_a):
        for t in tuples:
            for x in set(t):
                by_vertex_a[x].append((ridx, t))
    sets_b = [frozenset(t) for _, t in rels_b]
    by_vertex_b: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(size)]
    for ridx, (_, tuples) in enumerate(rels_b):
        for t in tuples:
            for x in set(t):
                by_vertex_b[x].append((ridx, t))
    sets_a = [frozenset(t) for _, t in rels_a]

    order = sorted(range(size), key=lambda v: (col_a[v], v))
    fwd: dict[int, int] = {}
    rev: dict[int, int] = {}

    def consistent(v: int, w: int) -> bool:
        for ridx, t in by_vertex_a[v]:
            if all(x in fwd for x in t):
                if tuple(fwd[x] for x in t) not in sets_b[ridx]:
                    return False
        for ridx, t in by_vertex_b[w]:
            if all(x in rev for x in t):
                if tuple(rev[x] for x in t) not in sets_a[ridx]:
                    return False
        return True

    def extend(i: int) -> bool:
        if i == size:
            return True
        v = order[i]
        for w in range(size):
            if w in rev or col_b[w] != col_a[v]:
                continue
            fwd[v] = w
            rev[w] = v
            if consistent(v, w) and extend(i + 1):
                return True
            del fwd[v]
            del rev[w]
        return False

    return extend(0)
