"""Designation grammar, breakdown resolution, and document codes."""

from __future__ import annotations

import random
import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import genlib
from essencekit import (
    Aspect,
    AspectChain,
    BreakdownNode,
    BreakdownTree,
    DesignationError,
    MultiAspectDesignation,
    check_at_least_one_unambiguous,
    format_designation,
    format_document_designation,
    loads_dcc_table,
    parse_designation,
    parse_document_designation,
    resolve,
)
from essencekit.designation import BUILTIN_DCC_TABLE

EXAMPLE = "=F1 / -12-N4-DN18 / +M13"

PARSE_ERROR_CODES = frozenset(
    {"EMPTY_INPUT", "BAD_PREFIX", "BAD_SEGMENT", "MIXED_CHAIN", "DUPLICATE_ASPECT"})


def parse_code(text: str) -> str:
    with pytest.raises(DesignationError) as err:
        parse_designation(text)
    return err.value.code


def test_parse_three_aspect_example():
    d = parse_designation(EXAMPLE)
    assert [(c.aspect, c.segments) for c in d.chains] == [
        (Aspect.FUNCTION, ("F1",)),
        (Aspect.PRODUCT, ("12", "N4", "DN18")),
        (Aspect.LOCATION, ("M13",)),
    ]
    assert format_designation(d) == EXAMPLE


def test_parse_single_chain():
    d = parse_designation("=A1")
    assert d.chains == (AspectChain(Aspect.FUNCTION, ("A1",)),)


def test_parse_multi_segment_chain():
    d = parse_designation("+M13+A1+12")
    assert d.chains[0].segments == ("M13", "A1", "12")


def test_whitespace_around_separator_is_optional():
    tight = parse_designation("=F1/-12-N4-DN18/+M13")
    wide = parse_designation("=F1   /   -12-N4-DN18 /+M13")
    assert tight == wide == parse_designation(EXAMPLE)


def test_error_codes_by_input():
    cases = {
        "": "EMPTY_INPUT",
        "F1": "BAD_PREFIX",
        " =F1": "BAD_PREFIX",
        "=F1 /": "BAD_PREFIX",
        "/=F1": "BAD_PREFIX",
        "=": "BAD_SEGMENT",
        "=f1": "BAD_SEGMENT",
        "=F1 ": "BAD_SEGMENT",
        "=F1 x": "BAD_SEGMENT",
        "=F1x": "BAD_SEGMENT",
        "=F1\t/ +M13": "BAD_SEGMENT",
        "=F1-N4": "MIXED_CHAIN",
        "-12=F1": "MIXED_CHAIN",
        "=F1/=F2": "DUPLICATE_ASPECT",
        "=F1 / =F1": "DUPLICATE_ASPECT",
        "=F1 / -12 / -N4": "DUPLICATE_ASPECT",
    }
    for text, code in cases.items():
        assert parse_code(text) == code, text


def test_error_reports_column():
    with pytest.raises(DesignationError) as err:
        parse_designation(" =F1")
    assert "column 1" in err.value.message
    with pytest.raises(DesignationError) as err:
        parse_designation("=F1-N4")
    assert "column 4" in err.value.message


def test_format_reorders_to_canonical_aspect_order():
    d = parse_designation("+M13 / =F1")
    assert format_designation(d) == "=F1 / +M13"


def test_equality_is_aspect_keyed():
    a = parse_designation("+M13 / =F1")
    b = parse_designation("=F1 / +M13")
    assert a == b
    assert hash(a) == hash(b)
    assert a != parse_designation("=F1")
    assert parse_designation("=F1") != parse_designation("=F2")


def test_chain_str_uses_prefix():
    chain = AspectChain(Aspect.PRODUCT, ("12", "N4"))
    assert str(chain) == "-12-N4"


def test_chain_rejects_bad_segments():
    for segments in ((), ("",), ("f1",), ("F 1",), ("Ф1",)):
        with pytest.raises(DesignationError) as err:
            AspectChain(Aspect.FUNCTION, segments)
        assert err.value.code == "BAD_SEGMENT"


def test_designation_needs_chains():
    with pytest.raises(DesignationError) as err:
        MultiAspectDesignation(chains=())
    assert err.value.code == "EMPTY_INPUT"
    with pytest.raises(DesignationError) as err:
        MultiAspectDesignation(chains=(
            AspectChain(Aspect.FUNCTION, ("A",)),
            AspectChain(Aspect.FUNCTION, ("B",))))
    assert err.value.code == "DUPLICATE_ASPECT"


segments_st = st.lists(
    st.text(alphabet=string.ascii_uppercase + string.digits,
            min_size=1, max_size=4),
    min_size=1, max_size=4).map(tuple)


@st.composite
def designations(draw):
    aspects = draw(st.lists(
        st.sampled_from(tuple(Aspect)), unique=True, min_size=1, max_size=3))
    return MultiAspectDesignation(chains=tuple(
        AspectChain(aspect=a, segments=draw(segments_st)) for a in aspects))


@given(designations())
def test_parse_inverts_format(d):
    assert parse_designation(format_designation(d)) == d


@given(designations())
def test_format_is_idempotent_canonical_form(d):
    text = format_designation(d)
    assert format_designation(parse_designation(text)) == text


@given(designations(), st.sampled_from(["/", " /", "/ ", "    /  "]))
def test_separator_spacing_is_immaterial(d, sep):
    loose = format_designation(d).replace(" / ", sep)
    assert parse_designation(loose) == d


@settings(max_examples=300)
@given(st.text(max_size=24))
def test_parser_is_total_over_text(text):
    try:
        parse_designation(text)
    except DesignationError as err:
        assert err.code in PARSE_ERROR_CODES


# Breakdown trees and resolution


def product_tree() -> BreakdownTree:
    return BreakdownTree(aspect=Aspect.PRODUCT, roots=(
        BreakdownNode("12", (
            BreakdownNode("N4", (BreakdownNode("DN18"),)),)),
        BreakdownNode("13", (
            BreakdownNode("N4", (BreakdownNode("DN18"),)),)),
    ))


def function_tree() -> BreakdownTree:
    return BreakdownTree(aspect=Aspect.FUNCTION, roots=(
        BreakdownNode("F1", (BreakdownNode("F2"), BreakdownNode("F3"))),))


def test_tree_paths_depth_first():
    assert function_tree().paths() == (("F1",), ("F1", "F2"), ("F1", "F3"))


def test_duplicate_siblings_rejected():
    with pytest.raises(DesignationError) as err:
        BreakdownTree(aspect=Aspect.FUNCTION,
                      roots=(BreakdownNode("A"), BreakdownNode("A")))
    assert err.value.code == "DUPLICATE_SIBLING"
    with pytest.raises(DesignationError) as err:
        BreakdownNode("A", (BreakdownNode("B"), BreakdownNode("B")))
    assert err.value.code == "DUPLICATE_SIBLING"


def test_node_segment_validated():
    with pytest.raises(DesignationError) as err:
        BreakdownNode("a1")
    assert err.value.code == "BAD_SEGMENT"


def test_resolve_unique_full_path():
    matches = resolve(product_tree(), AspectChain(Aspect.PRODUCT, ("12", "N4", "DN18")))
    assert matches == (("12", "N4", "DN18"),)


def test_resolve_ambiguous_suffix():
    matches = resolve(product_tree(), AspectChain(Aspect.PRODUCT, ("N4", "DN18")))
    assert matches == (("12", "N4", "DN18"), ("13", "N4", "DN18"))


def test_resolve_absent_suffix():
    assert resolve(product_tree(), AspectChain(Aspect.PRODUCT, ("Z9",))) == ()
    assert resolve(product_tree(), AspectChain(Aspect.PRODUCT, ("DN18", "N4"))) == ()


def test_resolve_wrong_aspect():
    with pytest.raises(DesignationError) as err:
        resolve(product_tree(), AspectChain(Aspect.FUNCTION, ("F1",)))
    assert err.value.code == "ASPECT_MISMATCH"


def test_resolve_matches_suffix_oracle_on_random_trees():
    rng = random.Random(4810)
    for _ in range(120):
        aspect = rng.choice(list(Aspect))
        tree = genlib.random_tree(rng, aspect)
        paths = genlib.enumerate_paths(tree)
        assert sorted(tree.paths()) == sorted(paths)
        for _ in range(6):
            chain = genlib.random_chain(rng, aspect, paths)
            matches = resolve(tree, chain)
            assert len(matches) == genlib.suffix_count(paths, chain.segments)
            for path in matches:
                assert path in paths
                assert path[-len(chain.segments):] == chain.segments


def test_unambiguity_check_pass_and_fail():
    trees = {Aspect.FUNCTION: function_tree(), Aspect.PRODUCT: product_tree()}
    ok = check_at_least_one_unambiguous(trees, parse_designation("=F1 / -DN18"))
    assert ok.ok
    assert [r.count for r in ok.resolutions] == [1, 2]
    assert [r.unambiguous for r in ok.resolutions] == [True, False]

    ambiguous = check_at_least_one_unambiguous(trees, parse_designation("-N4-DN18"))
    assert not ambiguous.ok

    absent = check_at_least_one_unambiguous(trees, parse_designation("=Z9"))
    assert not absent.ok
    assert absent.resolutions[0].count == 0


def test_unambiguity_check_needs_trees():
    trees = {Aspect.FUNCTION: function_tree()}
    with pytest.raises(DesignationError) as err:
        check_at_least_one_unambiguous(trees, parse_designation("=F1 / +M13"))
    assert err.value.code == "MISSING_TREE"


# Document designations


def test_parse_document_designation():
    doc = parse_document_designation("=F1&MCA")
    assert format_designation(doc.system) == "=F1"
    assert doc.dcc == "MCA"
    assert doc.area == "M"
    assert doc.document_class == "CA"
    assert doc.table_ref == "builtin"
    assert format_document_designation(doc) == "=F1&MCA"
    assert str(doc) == "=F1&MCA"


def test_builtin_dcc_table_labels():
    assert BUILTIN_DCC_TABLE.area_label("A") == "overall management"
    assert BUILTIN_DCC_TABLE.area_label("M") == "mechanical engineering"
    assert BUILTIN_DCC_TABLE.area_label("X") is None
    assert BUILTIN_DCC_TABLE.class_label("CA") == (
        "contractual and nontechnical documents")
    assert BUILTIN_DCC_TABLE.class_label("ZZ") is None


def test_document_designation_error_codes():
    def code_of(text: str) -> str:
        with pytest.raises(DesignationError) as err:
            parse_document_designation(text)
        return err.value.code

    assert code_of("=F1") == "NO_AMPERSAND"
    assert code_of("=F1&MC") == "MALFORMED_DCC"
    assert code_of("=F1&MCAA") == "MALFORMED_DCC"
    assert code_of("=F1&mca") == "MALFORMED_DCC"
    assert code_of("=F1&MCA&X") == "MALFORMED_DCC"
    assert code_of("=F1&XCA") == "UNKNOWN_TECHNICAL_AREA"
    assert code_of("F1&MCA") == "BAD_PREFIX"
    assert code_of("&MCA") == "EMPTY_INPUT"


def test_only_area_letter_is_validated():
    doc = parse_document_designation("=F1&MZZ")
    assert doc.area == "M"
    assert BUILTIN_DCC_TABLE.class_label(doc.document_class) is None


def test_custom_dcc_table():
    table = loads_dcc_table(
        '{"name": "plant", "areas": {"X": "process engineering"}}')
    doc = parse_document_designation("=F1&XCA", table=table)
    assert doc.table_ref == "plant"
    with pytest.raises(DesignationError) as err:
        parse_document_designation("=F1&MCA", table=table)
    assert err.value.code == "UNKNOWN_TECHNICAL_AREA"


def test_loads_dcc_table_errors():
    def code_of(text: str) -> str:
        with pytest.raises(DesignationError) as err:
            loads_dcc_table(text)
        return err.value.code

    assert code_of("{nope") == "PARSE_ERROR"
    assert code_of('["A"]') == "SCHEMA_ERROR"
    assert code_of('{"areas": {}}') == "SCHEMA_ERROR"
    assert code_of('{"areas": {"AA": "double"}}') == "SCHEMA_ERROR"
    assert code_of('{"areas": {"A": ""}}') == "SCHEMA_ERROR"
    assert code_of('{"areas": {"A": "ok"}, "classes": {"C": "short"}}') == (
        "SCHEMA_ERROR")
    assert code_of('{"name": "", "areas": {"A": "ok"}}') == "SCHEMA_ERROR"


def test_loads_dcc_table_defaults():
    table = loads_dcc_table('{"areas": {"A": "general"}}')
    assert table.name == "custom"
    assert table.classes == {}
