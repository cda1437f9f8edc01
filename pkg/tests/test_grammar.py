import pytest

from gfmwe.grammar import (
    CHUNKS,
    GrammarError,
    LinearizationError,
    T,
    Tree,
    dump_grammar,
    enumerate_trees,
    linearize,
    load_grammar,
    parse_tree,
    unk,
    validate_tree,
)

MINIMAL = 'cat N ;\nfun apple_N : N ;\nlin eng apple_N = "apple" ;\n'


def test_minimal_grammar():
    g = load_grammar(MINIMAL)
    assert g.categories == ("N",)
    assert list(g.functions) == ["apple_N"]
    assert list(g.concretes["eng"]) == ["apple_N"]
    assert g.start == "N"


def test_statements_may_share_a_line():
    g = load_grammar('cat N; fun apple_N : N; lin eng apple_N = "apple"')
    assert g == load_grammar(MINIMAL)


@pytest.mark.parametrize(
    "src, msg",
    [
        (MINIMAL + 'lin eng pear_N = "pear" ;', "undeclared function pear_N"),
        ("cat N ;\nfun f : N -> Q ;", "undeclared category Q"),
        (MINIMAL + 'lin eng apple_N = "apfel" ;', "duplicate rule"),
        ("cat N ;\ncat N ;", "duplicate category"),
        ("cat N ;\nfun f : N -> N ;\nlin eng f = $0 $0 ;", "exactly once"),
        ("cat N ;\nfun f : N -> N -> N ;\nlin eng f = $0 ;", "exactly once"),
        ('cat N ;\nfun a : N ;\nlin eng a = "a b" ;', "whitespace"),
        ("cat N ;\nfun a : N ;\nlin eng a = ;", "empty yield"),
        ("cat N ;\nchunkcats NP ;", "undeclared category NP"),
        ("cat N ;\nfun Chunks : N ;", "reserved"),
        ("cat A ; cat B ;\nfun f : A -> B ; fun g : B -> A ;\nlin eng f = $0 ; lin eng g = $0 ;", "cycle"),
        ("cat N ;\nfrobnicate N ;", "unknown statement"),
        ("cat N ;\nfun f : N N ;", "malformed type"),
    ],
)
def test_load_errors(src, msg):
    with pytest.raises(GrammarError, match=msg):
        load_grammar(src)


def test_error_carries_line_number():
    with pytest.raises(GrammarError) as e:
        load_grammar('cat N ;\n-- comment\nlin eng nope = "x" ;\n')
    assert e.value.line == 3
    assert str(e.value).startswith("line 3:")


def test_comments_and_quoted_semicolons():
    g = load_grammar('cat N ; -- a category\nfun semi_N : N ;\nlin eng semi_N = ";" ; -- odd token\n')
    assert linearize(T("semi_N"), g, "eng") == [";"]


def test_toy_grammar_shape(toy):
    assert set(toy.chunk_categories) == {"NP", "VP", "AP", "Adv"}
    assert toy.start == "Utt"
    assert set(toy.languages) == {"eng", "swe", "fre"}


def test_dump_load_idempotent(toy):
    once = load_grammar(dump_grammar(toy))
    assert once == toy
    assert load_grammar(dump_grammar(once)) == once


def test_validate_tree(toy):
    assert validate_tree(T("apple_N"), toy)
    v = validate_tree(T("ConsNomCN", T("apple_N")), toy)
    assert not v and v.path == ()
    assert validate_tree(T("glass_of_CN", T("water_NP")), toy)
    v = validate_tree(T("UttS", T("DetCN", T("a_Det"), T("water_NP"))), toy)
    assert not v and v.path == (0,)
    v = validate_tree(T("DetCN", T("a_Det"), T("UseN", T("warm_A"))), toy)
    assert not v and v.path == (1, 0)
    assert not validate_tree(T("no_such_fun"), toy)


def test_validate_chunk_trees(toy):
    assert validate_tree(Tree(CHUNKS, (T("i_NP"), unk("foo"))), toy)
    assert not validate_tree(Tree(CHUNKS, (T("ConsNomCN"),)), toy)


def test_linearize(toy):
    assert linearize(T("apple_N"), toy, "eng") == ["apple"]
    assert linearize(T("where_go_QCl", T("X_NP")), toy, "swe") == ["vart", "gick", "X"]
    # argument reordering
    cn = T("AdjCN", T("PositA", T("red_A")), T("UseN", T("car_N")))
    assert linearize(cn, toy, "eng") == ["red", "car"]
    assert linearize(cn, toy, "fre") == ["voiture", "rouge"]


def test_linearize_missing_rule(toy):
    with pytest.raises(LinearizationError, match="where_go_QCl.*eng"):
        linearize(T("where_go_QCl", T("X_NP")), toy, "eng")


@pytest.mark.parametrize(
    "text",
    [
        "apple_N",
        "(Cons_sCN Leben_N (UseN Mittel_N))",
        '(Chunks i_NP (UnkChunk "wine") (UnkChunk "a \\"q\\""))',
        "(UttQS (QDir where_Adv go_V X_NP))",
    ],
)
def test_tree_text_roundtrip(text):
    assert str(parse_tree(text)) == text


def test_parenthesized_leaves_read_as_leaves():
    assert parse_tree("(glass_of_CN (water_NP))") == T("glass_of_CN", T("water_NP"))


@pytest.mark.parametrize("bad", ["", "(", "(f a", "f g", "(UnkChunk x)", ")"])
def test_tree_syntax_errors(bad):
    with pytest.raises(ValueError):
        parse_tree(bad)


def test_enumerate_depth_one_is_lexicon(toy):
    assert {t.fun for t in enumerate_trees(toy, 1)} == {f.name for f in toy.lexical_functions()}


def test_enumerate_monotone_and_well_typed(toy):
    d2 = set(enumerate_trees(toy, 2))
    d3 = enumerate_trees(toy, 3)
    assert d2 <= set(d3)
    assert all(t.depth() <= 3 and validate_tree(t, toy) for t in d3)
