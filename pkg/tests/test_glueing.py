"""Fragment classification, assembly, and invariant-relation emission."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oligoprofile.catalogue import sample_model
from oligoprofile.errors import (
    FragmentPairError,
    InconsistentFragmentsError,
    ParameterError,
)
from oligoprofile.glueing import (
    OVERLAP_TAGS,
    GlueComponent,
    OrderFragment,
    classify_overlap,
    emit_invariant_relation,
    fragments_from_json_dict,
    fragments_to_json_dict,
    glue,
    normalize_circular,
    normalize_linear,
    sample_circular_fragments,
    sample_linear_fragments,
)


def frag(fid, els):
    return OrderFragment(fragment_id=fid, elements=tuple(els))


def test_fragment_validation():
    with pytest.raises(ParameterError):
        frag("x", [1])
    with pytest.raises(ParameterError):
        frag("x", [1, 2, 1])


def test_tag_inventory():
    assert OVERLAP_TAGS == (
        "disjoint",
        "head-tail",
        "aligned-reversed",
        "double-wrap",
        "double-wrap-reversed",
    )


@pytest.mark.parametrize(
    "a, b, tag",
    [
        ([1, 2], [3, 4], "disjoint"),
        ([1, 2, 3], [3, 4, 5], "head-tail"),
        ([1, 2, 3, 4], [3, 4, 5, 6], "head-tail"),
        ([1, 2, 3, 4], [2, 1, 9, 8], "aligned-reversed"),
        ([1, 2, 3], [5, 4, 3], "aligned-reversed"),
        ([1, 2, 3, 4], [4, 5, 6, 1], "double-wrap"),
        ([1, 2, 3, 4], [1, 6, 5, 4], "double-wrap-reversed"),
        ([1, 2], [2, 1], "aligned-reversed"),
    ],
)
def test_classification_examples(a, b, tag):
    fa, fb = frag("a", a), frag("b", b)
    assert classify_overlap(fa, fb).tag == tag
    assert classify_overlap(fb, fa).tag == tag


@pytest.mark.parametrize(
    "a, b",
    [
        ([1, 2, 3, 4, 5], [2, 3, 4]),  # overlap buried in the middle
        ([1, 2, 3], [2, 9]),
        ([1, 2, 3, 4], [1, 2, 4, 3]),
        ([1, 2, 3, 4, 5], [1, 2, 9, 4, 5]),
    ],
)
def test_unclassifiable_pairs_raise(a, b):
    with pytest.raises(FragmentPairError):
        classify_overlap(frag("a", a), frag("b", b))


def test_classification_reports_shared_segments():
    case = classify_overlap(frag("a", [1, 2, 3]), frag("b", [3, 4, 5]))
    assert case.segments == ((3,),)


def test_glue_single_fragment():
    comps = glue([frag("a", [4, 2, 9])])
    assert len(comps) == 1
    assert comps[0].kind == "linear"
    assert comps[0].arrangement == normalize_linear((4, 2, 9))
    assert comps[0].members == ("a",)


def test_glue_two_windows_one_line():
    comps = glue([frag("a", [1, 2, 3]), frag("b", [3, 4, 5])])
    assert [c.arrangement for c in comps] == [(1, 2, 3, 4, 5)]
    assert comps[0].kind == "linear"


def test_glue_flips_reversed_window():
    comps = glue([frag("a", [1, 2, 3]), frag("b", [5, 4, 3])])
    assert comps[0].arrangement == (1, 2, 3, 4, 5)


def test_glue_three_arcs_close_a_circle():
    comps = glue([frag("a", [1, 2, 3]), frag("b", [3, 4, 5]), frag("c", [5, 6, 1])])
    assert comps[0].kind == "circular"
    assert comps[0].arrangement == (1, 2, 3, 4, 5, 6)
    assert comps[0].members == ("a", "b", "c")


def test_glue_double_wrap_pair_closes_a_circle():
    comps = glue([frag("a", [1, 2, 3]), frag("b", [3, 4, 1])])
    assert comps[0].kind == "circular"
    assert comps[0].arrangement == (1, 2, 3, 4)


def test_glue_keeps_disjoint_components_apart():
    comps = glue([frag("a", [7, 8, 9]), frag("b", [1, 2, 3])])
    assert [c.members for c in comps] == [("a",), ("b",)]
    assert [c.arrangement for c in comps] == [(7, 8, 9), (1, 2, 3)]


def test_glue_rejects_duplicate_ids():
    with pytest.raises(ParameterError):
        glue([frag("a", [1, 2]), frag("a", [2, 3])])


def test_glue_detects_orientation_conflict():
    fragments = [frag("a", [1, 2, 3]), frag("b", [3, 4, 5]), frag("c", [5, 6, 3])]
    with pytest.raises(InconsistentFragmentsError):
        glue(fragments)


def test_identical_windows_merge():
    comps = glue([frag("a", [1, 2, 3]), frag("b", [1, 2, 3])])
    assert [c.arrangement for c in comps] == [(1, 2, 3)]


def test_normalize_linear_prefers_lexicographic_direction():
    assert normalize_linear((5, 4, 3)) == (3, 4, 5)
    assert normalize_linear((3, 4, 5)) == (3, 4, 5)


def test_normalize_circular_minimizes_over_rotations_and_flips():
    ring = (3, 1, 2)
    assert normalize_circular(ring) == (1, 2, 3)
    assert normalize_circular((1, 3, 2)) == (1, 2, 3)


def test_normalize_handles_mixed_element_types():
    assert normalize_linear(("b", 2, "a")) == ("a", 2, "b")
    arrangement = normalize_circular(("x", 1, "y", 2))
    assert set(arrangement) == {"x", "y", 1, 2}


def test_fragments_json_round_trip():
    fragments = (frag("a", [1, 2, 3]), frag("b", ["x", "y"]))
    payload = fragments_to_json_dict(fragments)
    assert payload["fragments"][0] == {"id": "a", "elements": [1, 2, 3]}
    assert fragments_from_json_dict(payload) == fragments


def test_emitted_linear_relation_is_betweenness():
    comps = glue([frag("a", [1, 2, 3]), frag("b", [3, 4, 5])])
    emitted = emit_invariant_relation(comps[0])
    assert emitted == sample_model("betweenness", 5)


def test_emitted_circular_relation_is_separation():
    comps = glue([frag("a", [1, 2, 3]), frag("b", [3, 4, 5]), frag("c", [5, 6, 1])])
    emitted = emit_invariant_relation(comps[0])
    assert emitted == sample_model("separation", 6)
    sep = emitted.relation("sep")
    assert (0, 1, 2, 3) in sep
    assert (0, 2, 1, 3) not in sep


def test_emission_ignores_direction_and_rotation():
    base = GlueComponent(kind="circular", arrangement=(1, 2, 3, 4), members=("a",))
    flipped = GlueComponent(kind="circular", arrangement=(4, 3, 2, 1), members=("a",))
    rotated = GlueComponent(kind="circular", arrangement=(2, 3, 4, 1), members=("a",))
    assert emit_invariant_relation(base) == emit_invariant_relation(flipped)
    assert emit_invariant_relation(base) == emit_invariant_relation(rotated)
    line = GlueComponent(kind="linear", arrangement=(1, 2, 3), members=("a",))
    reversed_line = GlueComponent(kind="linear", arrangement=(3, 2, 1), members=("a",))
    assert emit_invariant_relation(line) == emit_invariant_relation(reversed_line)


def test_glue_is_idempotent_on_recovered_arrangement():
    comps = glue([frag("a", [1, 2, 3, 4]), frag("b", [4, 5, 6, 7])])
    again = glue([frag("w", comps[0].arrangement)])
    assert again[0].arrangement == comps[0].arrangement


@given(st.integers(min_value=3, max_value=60), st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=40, deadline=None)
def test_linear_sampling_recovers_the_hidden_line(size, seed):
    hidden, fragments = sample_linear_fragments(size, seed)
    comps = glue(fragments)
    assert len(comps) == 1
    assert comps[0].kind == "linear"
    assert comps[0].arrangement == normalize_linear(hidden)


@given(st.integers(min_value=8, max_value=60), st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=40, deadline=None)
def test_circular_sampling_recovers_the_hidden_ring(size, seed):
    hidden, fragments = sample_circular_fragments(size, seed)
    comps = glue(fragments)
    assert len(comps) == 1
    assert comps[0].kind == "circular"
    assert comps[0].arrangement == normalize_circular(hidden)


def test_sampled_pairs_always_classify():
    rng = random.Random(5)
    for _ in range(15):
        size = rng.randrange(8, 40)
        _, fragments = sample_circular_fragments(size, rng.getrandbits(32))
        elems = [set(f.elements) for f in fragments]
        for i in range(len(fragments)):
            for j in range(i + 1, len(fragments)):
                case = classify_overlap(fragments[i], fragments[j])
                if elems[i] & elems[j]:
                    assert case.tag in OVERLAP_TAGS[1:]
                else:
                    assert case.tag == "disjoint"


def test_component_json_shape():
    comps = glue([frag("a", [1, 2, 3])])
    data = comps[0].to_json_dict()
    assert data == {"kind": "linear", "arrangement": [1, 2, 3], "members": ["a"]}
