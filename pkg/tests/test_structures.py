"""Encoding, canonical forms and isomorphism on small structures."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oligoprofile.errors import (
    InvalidSubsetError,
    ParameterError,
    SignatureMismatchError,
)
from oligoprofile.structures import (
    FiniteStructure,
    Signature,
    canonical_form,
    induced_substructure,
    is_isomorphic,
    signature,
    structure_encoding,
)

from oracles import brute_canonical, brute_isomorphic

SIG_EDGE = signature(("edge", 2))
SIG_MIXED = signature(("mark", 1), ("edge", 2))
SIG_TERNARY = signature(("rel", 3))


def chain(n):
    return FiniteStructure.build(SIG_EDGE, n, {"edge": {(i, i + 1) for i in range(n - 1)}})


@st.composite
def small_structures(draw):
    sig = draw(st.sampled_from((SIG_EDGE, SIG_MIXED, SIG_TERNARY)))
    max_size = 3 if sig is SIG_TERNARY else 5
    size = draw(st.integers(min_value=1, max_value=max_size))
    rels = {}
    for name, arity in sig.relations:
        universe = list(itertools.product(range(size), repeat=arity))
        rels[name] = draw(st.sets(st.sampled_from(universe)))
    return FiniteStructure.build(sig, size, rels)


@st.composite
def structure_with_permutation(draw):
    s = draw(small_structures())
    perm = draw(st.permutations(range(s.size)))
    return s, tuple(perm)


def test_signature_rejects_duplicate_names():
    with pytest.raises(ParameterError):
        signature(("r", 2), ("r", 3))


def test_signature_rejects_bad_arity():
    with pytest.raises(ParameterError):
        signature(("r", 0))


def test_signature_lookup():
    sig = signature(("a", 1), ("b", 3))
    assert sig.names == ("a", "b")
    assert sig.index("b") == 1
    assert sig.arity("b") == 3
    with pytest.raises(ParameterError):
        sig.index("c")


def test_build_rejects_wrong_arity_tuple():
    with pytest.raises(ParameterError):
        FiniteStructure.build(SIG_EDGE, 2, {"edge": {(0, 1, 1)}})


def test_build_rejects_out_of_range():
    with pytest.raises(ParameterError):
        FiniteStructure.build(SIG_EDGE, 2, {"edge": {(0, 2)}})


def test_build_rejects_unknown_relation():
    with pytest.raises(ParameterError):
        FiniteStructure.build(SIG_EDGE, 2, {"arc": {(0, 1)}})


def test_relabel_moves_tuples():
    s = chain(3)
    r = s.relabel((2, 0, 1))
    assert r.relation("edge") == frozenset({(2, 0), (0, 1)})


def test_relabel_rejects_non_bijection():
    with pytest.raises(ParameterError):
        chain(3).relabel((0, 0, 2))


def test_induced_keeps_inner_tuples():
    # 0 <= 1 <= 2 as a reflexive chain, restricted to its ends
    leq = {(i, j) for i in range(3) for j in range(i, 3)}
    s = FiniteStructure.build(signature(("leq", 2)), 3, {"leq": leq})
    sub = induced_substructure(s, (0, 2))
    assert sub.size == 2
    assert sub.relation("leq") == frozenset({(0, 0), (0, 1), (1, 1)})


def test_induced_reindexes_by_position():
    sub = induced_substructure(chain(4), (3, 2))
    assert sub.relation("edge") == frozenset({(1, 0)})


def test_induced_rejects_repeats_and_range():
    with pytest.raises(InvalidSubsetError):
        induced_substructure(chain(3), (1, 1))
    with pytest.raises(InvalidSubsetError):
        induced_substructure(chain(3), (0, 3))


def test_json_round_trip():
    s = FiniteStructure.build(SIG_MIXED, 3, {"mark": {(0,)}, "edge": {(0, 1), (2, 1)}})
    assert FiniteStructure.from_json_dict(s.to_json_dict()) == s


def test_from_json_rejects_garbage():
    with pytest.raises(ParameterError):
        FiniteStructure.from_json_dict({"size": 2})


def test_encoding_orders_signature_then_tuples():
    a = FiniteStructure.build(SIG_EDGE, 2, {"edge": {(0, 1)}})
    b = FiniteStructure.build(SIG_EDGE, 2, {"edge": {(1, 0)}})
    assert structure_encoding(a) != structure_encoding(b)
    assert structure_encoding(a) == structure_encoding(a)


def test_canonical_form_on_singletons():
    bare = FiniteStructure.build(signature(("mark", 1)), 1)
    marked = FiniteStructure.build(signature(("mark", 1)), 1, {"mark": {(0,)}})
    assert canonical_form(bare) != canonical_form(marked)


@given(structure_with_permutation())
def test_canonical_form_is_relabel_invariant(pair):
    s, perm = pair
    assert canonical_form(s) == canonical_form(s.relabel(perm))


def test_canonical_partition_matches_brute_partition_exhaustively():
    """All binary structures on 3 points, grouped by code vs by brute minimum.

    The two codes need not be byte-equal, but they must induce the same
    partition into isomorphism classes.
    """
    pool = []
    pairs = list(itertools.product(range(3), repeat=2))
    for bits in range(2 ** len(pairs)):
        edges = {p for i, p in enumerate(pairs) if bits >> i & 1}
        pool.append(FiniteStructure.build(SIG_EDGE, 3, {"edge": edges}))
    by_fast = {}
    by_brute = {}
    for idx, s in enumerate(pool):
        by_fast.setdefault(canonical_form(s), set()).add(idx)
        by_brute.setdefault(brute_canonical(s), set()).add(idx)
    assert sorted(map(sorted, by_fast.values())) == sorted(map(sorted, by_brute.values()))
    assert len(by_fast) == 104


@given(structure_with_permutation())
def test_is_isomorphic_accepts_relabellings(pair):
    s, perm = pair
    assert is_isomorphic(s, s.relabel(perm))


@given(small_structures(), small_structures())
@settings(max_examples=60)
def test_iso_agreement_between_all_three_tests(a, b):
    if a.signature != b.signature:
        return
    expected = brute_isomorphic(a, b)
    assert is_isomorphic(a, b) == expected
    assert (canonical_form(a) == canonical_form(b)) == expected


def test_is_isomorphic_rejects_signature_mismatch():
    a = FiniteStructure.build(SIG_EDGE, 1)
    b = FiniteStructure.build(SIG_TERNARY, 1)
    with pytest.raises(SignatureMismatchError):
        is_isomorphic(a, b)


def test_non_isomorphic_same_counts():
    # same number of edges, different degree multiset
    a = FiniteStructure.build(SIG_EDGE, 4, {"edge": {(0, 1), (1, 2), (2, 3)}})
    b = FiniteStructure.build(SIG_EDGE, 4, {"edge": {(0, 1), (0, 2), (0, 3)}})
    assert not is_isomorphic(a, b)
    assert canonical_form(a) != canonical_form(b)
