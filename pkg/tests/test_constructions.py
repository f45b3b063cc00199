import pytest

from polyconduche.categories import (
    OmegaFunctor,
    compose_functors,
    identity_functor,
    inflate,
    validate_category,
    validate_functor,
)
from polyconduche.conduche import PASS, check_conduche
from polyconduche.constructions import pullback, slice_1cat
from polyconduche.errors import SchemaError, UnknownObject
from polyconduche.fixtures import (
    arrow_category,
    collapse_functor,
    idem_category,
    path2_category,
)
from polyconduche.polygraphs import check_basis, indecomposables, transfer_basis


def test_pullback_of_collapse_with_itself_squares_the_arrow():
    result = pullback(collapse_functor(), collapse_functor())
    apex = result.apex
    assert apex.cells[0] == ["x|x", "x|y", "y|x", "y|y"]
    assert apex.cells[1] == ["1x|1x", "1x|1y", "1y|1x", "1y|1y", "u|u"]
    assert apex.src[1]["u|u"] == "x|x"
    assert apex.tgt[1]["u|u"] == "y|y"
    assert apex.ids[0]["x|y"] == "1x|1y"
    assert validate_category(apex).ok
    assert validate_functor(result.proj1).ok
    assert validate_functor(result.proj2).ok


def test_pullback_projections_recover_the_components():
    result = pullback(collapse_functor(), collapse_functor())
    assert result.proj1.apply("x|y") == "x"
    assert result.proj2.apply("x|y") == "y"
    assert result.proj1.apply("u|u") == "u"
    assert result.proj2.apply("1y|1x") == "1x"


def test_pullback_composes_componentwise():
    apex = pullback(collapse_functor(), collapse_functor()).apex
    assert apex.compose("u|u", "1x|1x", 0) == "u|u"
    assert apex.compose("1y|1y", "u|u", 0) == "u|u"
    assert not apex.composable("u|u", "u|u", 0)


def test_pullback_needs_a_common_target():
    with pytest.raises(SchemaError):
        pullback(collapse_functor(), identity_functor(arrow_category()))


def test_pullback_needs_matching_source_dimensions():
    arrow = arrow_category()
    flat = identity_functor(arrow)
    tall = OmegaFunctor(inflate(arrow, 2), arrow, {})
    with pytest.raises(SchemaError):
        pullback(flat, tall)


def test_pullback_mediates_a_cone_uniquely():
    arrow = arrow_category()
    result = pullback(collapse_functor(), collapse_functor())
    h = identity_functor(arrow)
    mediating = OmegaFunctor(
        arrow,
        result.apex,
        {
            0: {"x": "x|x", "y": "y|y"},
            1: {"1x": "1x|1x", "1y": "1y|1y", "u": "u|u"},
        },
    )
    assert validate_functor(mediating).ok
    assert compose_functors(result.proj1, mediating) == h
    assert compose_functors(result.proj2, mediating) == h
    # Both projections together pin every value, so no other functor fits.
    for level in range(2):
        for cell in arrow.cells[level]:
            fitting = [
                pair
                for pair in result.apex.cells[level]
                if result.proj1.maps[level][pair] == h.apply(cell)
                and result.proj2.maps[level][pair] == h.apply(cell)
            ]
            assert fitting == [mediating.maps[level][cell]]


def test_pullback_of_a_conduche_projection_stays_conduche():
    path2 = path2_category()
    _, projection = slice_1cat(path2, "z")
    assert check_conduche(projection).verdict == PASS
    into_path2 = OmegaFunctor(
        arrow_category(),
        path2,
        {0: {"x": "x", "y": "y"}, 1: {"1x": "1x", "1y": "1y", "u": "f"}},
    )
    assert validate_functor(into_path2).ok
    result = pullback(projection, into_path2)
    assert validate_category(result.apex).ok
    assert check_conduche(result.proj2).verdict == PASS


def test_slice_of_path2_at_its_sink():
    sliced, projection = slice_1cat(path2_category(), "z")
    assert sliced.cells[0] == ["1z", "g", "gf"]
    assert sliced.cells[1] == [
        "1z|1z",
        "g|1z",
        "gf|1z",
        "1y|g",
        "f|g",
        "1x|gf",
    ]
    assert sliced.src[1]["g|1z"] == "g"
    assert sliced.tgt[1]["g|1z"] == "1z"
    assert sliced.src[1]["f|g"] == "gf"
    assert sliced.ids[0]["g"] == "1y|g"
    assert validate_category(sliced).ok
    assert validate_functor(projection).ok


def test_slice_composition_pastes_triangles():
    sliced, _ = slice_1cat(path2_category(), "z")
    assert sliced.compose("g|1z", "f|g", 0) == "gf|1z"
    assert sliced.compose("gf|1z", "1x|gf", 0) == "gf|1z"


def test_slice_projection_forgets_the_anchor():
    _, projection = slice_1cat(path2_category(), "z")
    assert projection.maps[0] == {"1z": "z", "g": "y", "gf": "x"}
    assert projection.apply("f|g") == "f"
    assert projection.apply("g|1z") == "g"


def test_slice_at_an_object_with_no_incoming_arrows():
    sliced, projection = slice_1cat(arrow_category(), "x")
    assert sliced.cells == {0: ["1x"], 1: ["1x|1x"]}
    assert validate_category(sliced).ok
    assert projection.apply("1x") == "x"


def test_slice_rejects_unknown_objects():
    with pytest.raises(UnknownObject):
        slice_1cat(arrow_category(), "nope")


def test_slice_rejects_higher_dimensions():
    with pytest.raises(SchemaError):
        slice_1cat(idem_category(), "o")


def test_slice_of_a_free_category_is_free_on_edge_triangles():
    sliced, projection = slice_1cat(path2_category(), "z")
    assert indecomposables(sliced, 1) == {"f|g", "g|1z"}
    transferred = transfer_basis(projection, {0: ["x", "y", "z"], 1: ["f", "g"]})
    assert transferred[1] == ["f|g", "g|1z"]
    assert check_basis(sliced, 1, transferred[1]).verdict == "Basis"
