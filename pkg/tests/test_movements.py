from random import Random

import pytest

from polyconduche.categories import OmegaFunctor, truncate
from polyconduche.errors import Stale
from polyconduche.fixtures import chain3_extension, eh_extension, path2_category
from polyconduche.movements import (
    BACKWARD,
    DISTINCT,
    FORWARD,
    UNKNOWN,
    WITNESS,
    SearchBounds,
    apply_movement,
    enumerate_movements,
    equivalent,
    extend_functor,
    movement_graph_dot,
    reduce,
)
from polyconduche.terms import check_term, generator_multiset, random_term
from polyconduche.words import tokenize


def term(extension, text):
    return check_term(extension, tokenize(text))


def outputs(extension, t, direction="both"):
    return [
        apply_movement(t, m).serialize()
        for m in enumerate_movements(extension, t, direction)
    ]


def test_generator_pair_has_only_insertions():
    ext = eh_extension()
    t = term(ext, "((c:a)*0(c:b))")
    moves = enumerate_movements(ext, t)
    assert len(moves) == 12
    assert all(m.direction == BACKWARD and m.case in (2, 3) for m in moves)
    # three occurrences, two sides, two levels
    assert "((i:id_star)*1((c:a)*0(c:b)))" in outputs(ext, t)
    assert "(((c:a)*0(i:id_star))*0(c:b))" in outputs(ext, t)


def test_unit_removal_forward():
    ext = eh_extension()
    t = term(ext, "((i:id_star)*1(c:a))")
    forward = enumerate_movements(ext, t, FORWARD)
    assert [m.case for m in forward] == [2]
    assert apply_movement(t, forward[0]).serialize() == "(c:a)"


def test_associativity_both_ways():
    ext = chain3_extension()
    left_nested = term(ext, "(((c:a)*0(c:b))*0(c:d))")
    fwd = [m for m in enumerate_movements(ext, left_nested, FORWARD) if m.case == 1]
    assert len(fwd) == 1
    rotated = apply_movement(left_nested, fwd[0])
    assert rotated.serialize() == "((c:a)*0((c:b)*0(c:d)))"
    back = [m for m in enumerate_movements(ext, rotated, BACKWARD) if m.case == 1]
    assert apply_movement(rotated, back[0]).serialize() == left_nested.serialize()


def test_base_composite_merge_and_split():
    ext = eh_extension()
    t = term(ext, "((i:id_star)*0(i:id_star))")
    merges = [m for m in enumerate_movements(ext, t, FORWARD) if m.case == 4]
    assert len(merges) == 1
    merged = apply_movement(t, merges[0])
    assert merged.serialize() == "(i:id_star)"
    splits = [m for m in enumerate_movements(ext, merged, BACKWARD) if m.case == 4]
    assert [apply_movement(merged, m).serialize() for m in splits] == [
        "((i:id_star)*0(i:id_star))"
    ]


def test_interchange_round_trip():
    ext = eh_extension()
    t = term(ext, "(((c:a)*1(c:b))*0((c:a)*1(c:b)))")
    fwd = [m for m in enumerate_movements(ext, t, FORWARD) if m.case == 5]
    assert len(fwd) == 1
    swapped = apply_movement(t, fwd[0])
    assert swapped.serialize() == "(((c:a)*0(c:a))*1((c:b)*0(c:b)))"
    back = [m for m in enumerate_movements(ext, swapped, BACKWARD) if m.case == 5]
    assert t.serialize() in [apply_movement(swapped, m).serialize() for m in back]


def test_apply_rejects_stale_movement():
    ext = eh_extension()
    t = term(ext, "((c:a)*0(c:b))")
    other = term(ext, "((c:b)*0(c:a))")
    movement = enumerate_movements(ext, t)[0]
    with pytest.raises(Stale):
        apply_movement(other, movement)


def test_inverted_movement_round_trips():
    ext = eh_extension()
    t = term(ext, "((c:a)*0(c:b))")
    for movement in enumerate_movements(ext, t):
        stepped = apply_movement(t, movement)
        back = apply_movement(stepped, movement.inverted())
        assert back.word == t.word


def test_enumeration_is_deterministic():
    ext = eh_extension()
    t = term(ext, "(((c:a)*1(c:b))*0(i:id_star))")
    first = [m.to_json() for m in enumerate_movements(ext, t)]
    second = [m.to_json() for m in enumerate_movements(ext, t)]
    assert first == second


@pytest.mark.parametrize("seed", range(12))
def test_movement_outputs_are_well_formed(seed):
    # splicing never re-parses, so re-check every output against the parser
    ext = eh_extension() if seed % 2 else chain3_extension()
    t = random_term(ext, Random(seed), 5)
    for movement in enumerate_movements(ext, t):
        out = apply_movement(t, movement)
        parsed = check_term(ext, out.word)
        assert (parsed.src, parsed.tgt) == (t.src, t.tgt)
        assert parsed.size == out.size
        assert generator_multiset(parsed) == generator_multiset(t)


def test_reduce_strips_units_and_merges():
    ext = eh_extension()
    t = term(ext, "(((i:id_star)*0(i:id_star))*1((c:a)*1((c:b)*1(i:id_star))))")
    reduced = reduce(ext, t)
    assert reduced.serialize() == "((c:a)*1(c:b))"


def test_reduce_fixed_point():
    ext = eh_extension()
    t = term(ext, "((c:a)*0(c:b))")
    assert reduce(ext, t).word == t.word


def test_equivalent_equal_words():
    ext = eh_extension()
    t = term(ext, "((c:a)*0(c:b))")
    outcome = equivalent(ext, t, t)
    assert outcome.verdict == WITNESS
    assert outcome.witness.steps == []


def test_equivalent_distinct_boundary():
    ext = chain3_extension()
    outcome = equivalent(ext, term(ext, "(c:a)"), term(ext, "(c:b)"))
    assert outcome.verdict == DISTINCT
    assert outcome.reason == "boundary"


def test_equivalent_distinct_multiset():
    ext = eh_extension()
    outcome = equivalent(ext, term(ext, "(c:a)"), term(ext, "(c:b)"))
    assert outcome.verdict == DISTINCT
    assert outcome.reason == "generator-multiset"


def test_equivalent_unit_padding():
    ext = eh_extension()
    u = term(ext, "((i:id_star)*1(c:a))")
    v = term(ext, "((c:a)*0(i:id_star))")
    outcome = equivalent(ext, u, v)
    assert outcome.verdict == WITNESS
    replay = u
    for movement in outcome.witness.steps:
        replay = apply_movement(replay, movement)
    assert replay.word == v.word


def test_equivalent_association_normal_form():
    # dimension-zero extensions settle without any search
    ext = chain3_extension()
    u = term(ext, "(((c:a)*0(c:b))*0(c:d))")
    v = term(ext, "((c:a)*0((c:b)*0(c:d)))")
    outcome = equivalent(ext, u, v, SearchBounds(max_steps=0))
    assert outcome.verdict == WITNESS
    replay = u
    for movement in outcome.witness.steps:
        replay = apply_movement(replay, movement)
    assert replay.word == v.word


def test_equivalent_starved_is_unknown():
    ext = eh_extension()
    u = term(ext, "((c:a)*0(c:b))")
    v = term(ext, "((c:b)*0(c:a))")
    outcome = equivalent(ext, u, v, SearchBounds(max_steps=1))
    assert outcome.verdict == UNKNOWN
    assert outcome.reason == "step-cap"


def test_search_bounds_from_env(monkeypatch):
    monkeypatch.setenv("POLYCONDUCHE_MAX_VISITED", "1234")
    assert SearchBounds.from_env().max_visited == 1234
    monkeypatch.delenv("POLYCONDUCHE_MAX_VISITED")
    assert SearchBounds.from_env().max_visited == 200_000


def test_extend_functor_folds_into_target():
    cat = path2_category()
    base = truncate(cat, 0)
    from polyconduche.terms import restriction_extension

    ext = restriction_extension(cat, 1, ["f", "g"])
    inclusion = OmegaFunctor(base, cat, {0: {o: o for o in base.cells[0]}})
    phi = {"f": "f", "g": "g"}
    t = term(ext, "((c:g)*0(c:f))")
    assert extend_functor(ext, cat, inclusion, phi, t) == "gf"
    assert extend_functor(ext, cat, inclusion, phi, term(ext, "(i:y)")) == "1y"


def test_dot_export_mentions_center_and_backward_edge():
    ext = eh_extension()
    t = term(ext, "((c:a)*0(c:b))")
    dot = movement_graph_dot(ext, t)
    assert dot.startswith("digraph")
    assert '"((c:a)*0(c:b))"' in dot
    assert '-> "((c:a)*0(c:b))" [label="case 2"]' in dot
