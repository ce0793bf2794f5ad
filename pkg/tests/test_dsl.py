from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from m2rank.dsl import ast
from m2rank.dsl.ast import to_text
from m2rank.dsl.evaluator import EvalError, Evaluator, evaluate
from m2rank.dsl.lexer import Kind, LexError, tokenize
from m2rank.dsl.parser import ParseError, parse, parse_tokens
from m2rank.identities import build_catalog
from m2rank.series import dissect, equal_to_order

# -- lexer ----------------------------------------------------------------------


def kinds(src):
    return [t.kind for t in tokenize(src)][:-1]


def test_tokenize_examples():
    assert kinds("q^3") == [Kind.Q, Kind.CARET, Kind.INT]
    toks = tokenize("poch(-q^3; q^6; inf)")
    assert [t.kind for t in toks[:4]] == [Kind.IDENT, Kind.LPAREN, Kind.MINUS, Kind.Q]
    assert toks[0].text == "poch"
    assert Kind.INF in [t.kind for t in toks]
    with pytest.raises(LexError) as err:
        tokenize("@")
    assert err.value.offset == 0


def test_tokens_tile_the_input():
    src = " P0(3)+  sigma(1 ,0,3)"
    for t in tokenize(src)[:-1]:
        assert src[t.start:t.end] == t.text
        assert not t.text.isspace()


def test_non_ascii_is_rejected_with_byte_offset():
    with pytest.raises(LexError) as err:
        tokenize("q + é")
    assert err.value.offset == 4


# -- parser ---------------------------------------------------------------------


def test_parse_examples():
    assert parse("P0(3)") == ast.PZero(3)
    assert parse("poch(-q^3; q^6; inf) / poch(q^2; q^6; inf)") == ast.Div(
        ast.PochInf(-1, 3, 6), ast.PochInf(1, 2, 6)
    )
    assert parse("dissect(mult(), 3, 1)") == ast.Dissect(ast.Multiplier(), 3, 1)


def test_parse_precedence_and_sugar():
    assert parse("1 + 2 * q^-2") == ast.Add(ast.Const(1), ast.Mul(ast.Const(2), ast.Mono(1, -2)))
    assert parse("-q^2") == ast.Neg(ast.Mono(1, 2))
    assert parse("(q)^2") == ast.Pow(ast.Mono(1, 1), 2)
    assert parse("poch(q, -q^2; q^3; 4)") == ast.Mul(ast.PochFin(1, 1, 3, 4), ast.PochFin(-1, 2, 3, 4))
    assert parse("poch(1; q; inf)") == ast.PochInf(1, 0, 1)


@pytest.mark.parametrize(
    "src,fragment",
    [
        ("sigma(1, 2)", "sigma"),
        ("sigma(1, 2, 3, 4)", "sigma"),
        ("S2(1)", "S2"),
        ("poch(q; q)", "poch"),
        ("nope(1)", "unknown function"),
        ("g(1, 3", "unclosed call to g"),
    ],
)
def test_parse_errors_name_the_problem(src, fragment):
    with pytest.raises(ParseError) as err:
        parse(src)
    assert fragment in str(err.value)
    assert 0 <= err.value.offset <= len(src)


def test_parse_error_carries_expected_set():
    with pytest.raises(ParseError) as err:
        parse("1 +")
    assert err.value.offset == 3
    assert "q" in err.value.expected


def test_parse_spans():
    src = "1 + poch(q; q; inf)"
    node = parse(src)
    assert node.span == (0, len(src))
    assert node.right.span == (4, len(src))
    assert node.left.span == (0, 1)


# -- evaluator ------------------------------------------------------------------


def test_eval_examples():
    one = evaluate("poch(q;q;inf) * 1/poch(q;q;inf)", 10)
    assert one.terms() == [(0, 1)]
    lhs = build_catalog()["THM3-D1"].lhs_expr
    assert evaluate(lhs, 60).coeff(0) == 1
    assert evaluate("S2(1,3) + S2(5,3)", 100).is_zero()


def test_eval_reaches_requested_order_through_laurent_factors():
    out = evaluate("q^-5 * poch(q; q; inf)", 20)
    assert out.prec == 21
    assert out.coeff(-5) == 1


def test_eval_errors_carry_spans():
    src = "1 + sigma(3, 0, 3)"
    with pytest.raises(EvalError) as err:
        evaluate(src, 10)
    assert err.value.span == (4, len(src))
    with pytest.raises(EvalError) as err:
        evaluate("1 / (q - q)", 5)
    assert err.value.span == (0, 11)
    with pytest.raises(EvalError):
        evaluate("1 / 2", 5)


def test_eval_memo_is_shared():
    ev = Evaluator()
    evaluate("mult() * mult()", 30, ev)
    assert (ast.Multiplier(), 31) in ev.memo


# -- properties -----------------------------------------------------------------

signs = st.sampled_from([1, -1])
small = st.integers(min_value=-9, max_value=9)
pos = st.integers(min_value=1, max_value=9)

leaves = st.one_of(
    st.builds(ast.Const, st.integers(min_value=0, max_value=99)),
    st.builds(ast.Mono, st.just(1), small),
    st.builds(ast.PochInf, signs, small, pos),
    st.builds(ast.PochFin, signs, small, pos, st.integers(min_value=0, max_value=9)),
    st.builds(ast.BigP, signs, small, pos),
    st.builds(ast.PZero, pos),
    st.builds(ast.Theta, signs, small, pos),
    st.builds(ast.SigmaAB, small, small, pos),
    st.builds(ast.Sigma0B, small, pos),
    st.builds(ast.S2, small, pos),
    st.builds(ast.G, small, pos),
    st.builds(ast.RankGF, small, pos),
    st.just(ast.Multiplier()),
)


def _dissect(child, ell, d):
    return ast.Dissect(child, ell, d % ell)


def _extend(children):
    return st.one_of(
        st.builds(ast.Add, children, children),
        st.builds(ast.Sub, children, children),
        st.builds(ast.Mul, children, children),
        st.builds(ast.Div, children, children),
        st.builds(ast.Pow, children, st.integers(min_value=0, max_value=5)),
        st.builds(ast.Neg, children),
        st.builds(_dissect, children, pos, st.integers(min_value=0, max_value=8)),
        st.builds(ast.SubPow, children, pos),
    )


trees = st.recursive(leaves, _extend, max_leaves=12)


@settings(max_examples=200, deadline=None)
@given(trees)
def test_print_parse_roundtrip(tree):
    text = to_text(tree)
    assert parse(text) == tree
    assert to_text(parse(text)) == text


def test_printer_handles_nodes_outside_the_parser_image():
    assert evaluate(to_text(ast.Mono(-3, 2)), 4).terms() == [(2, -3)]
    assert evaluate(to_text(ast.Const(-7)), 2).terms() == [(0, -7)]


product_leaves = st.one_of(
    st.builds(ast.PochInf, signs, st.integers(min_value=1, max_value=6), pos),
    st.builds(ast.PochFin, signs, st.integers(min_value=0, max_value=6), pos, st.integers(min_value=0, max_value=5)),
    st.builds(ast.Theta, signs, st.integers(min_value=0, max_value=4), st.integers(min_value=5, max_value=9)),
    st.builds(ast.Mono, st.just(1), st.integers(min_value=0, max_value=5)),
    st.builds(ast.Const, st.integers(min_value=0, max_value=5)),
)
products = st.recursive(
    product_leaves,
    lambda ch: st.one_of(st.builds(ast.Mul, ch, ch), st.builds(ast.Add, ch, ch), st.builds(ast.Sub, ch, ch)),
    max_leaves=6,
)


@settings(max_examples=60, deadline=None)
@given(products, st.sampled_from([2, 3, 5, 7]), st.integers(min_value=0, max_value=6))
def test_dissect_commutes_with_evaluation(f, ell, d):
    d %= ell
    order = 25
    lhs = evaluate(ast.Dissect(f, ell, d), order)
    rhs = dissect(evaluate(f, ell * order + d), ell, d)
    ok, mm = equal_to_order(lhs, rhs, order)
    assert ok, mm


ALPHABET = b"q^*/+-(),;0123456789 poch P0 theta sigma S2 g rankgf mult dissect subpow inf @#\xff"


def test_fuzz_only_raises_lex_or_parse_errors():
    rng = random.Random(1000)
    for i in range(1000):
        n = rng.randint(0, 80)
        if i % 2:
            data = bytes(rng.randrange(256) for _ in range(n))
        else:
            data = bytes(rng.choice(ALPHABET) for _ in range(n))
        try:
            parse_tokens(tokenize(data))
        except (LexError, ParseError) as exc:
            assert 0 <= exc.offset <= len(data)


def test_deep_nesting_is_a_parse_error():
    with pytest.raises(ParseError):
        parse("(" * 1000)
    with pytest.raises(ParseError):
        parse("-" * 5000 + "1")
