"""Parser: precedence, associativity, statement forms, errors, spans."""

import pytest

from conftest import corpus_sources
from rjanus.parser import ParseError, parse, parse_expression, tokenize
from rjanus.syntax import (
    ArrayAssign,
    Binop,
    Call,
    Const,
    If,
    Index,
    Loop,
    ModOp,
    ScalarAssign,
    Seq,
    Skip,
    Uncall,
    Var,
    same_expr,
    same_stmt,
)


def B(op, l, r):
    return Binop(op=op, left=l, right=r)


def test_precedence_mul_over_add():
    e = parse_expression("1 + 2 * 3")
    assert same_expr(e, B("+", Const(value=1), B("*", Const(value=2), Const(value=3))))


def test_precedence_ladder():
    # || < && < | < & < comparisons < additive < multiplicative
    e = parse_expression("a || b && c | d & e < f + g * h")
    assert e.op == "||"
    assert e.right.op == "&&"
    assert e.right.right.op == "|"
    assert e.right.right.right.op == "&"
    assert e.right.right.right.right.op == "<"
    assert e.right.right.right.right.right.op == "+"
    assert e.right.right.right.right.right.right.op == "*"


def test_left_associativity():
    e = parse_expression("10 - 4 - 3")
    assert same_expr(e, B("-", B("-", Const(value=10), Const(value=4)), Const(value=3)))


def test_parens_override():
    e = parse_expression("(1 + 2) * 3")
    assert e.op == "*"
    assert e.left.op == "+"


def test_equality_spellings_normalize():
    assert same_expr(parse_expression("x == 1"), parse_expression("x = 1"))
    assert parse_expression("x == 1").op == "="


def test_xor_is_additive_level():
    e = parse_expression("a ^ b + c")
    # Same precedence, left-associative.
    assert e.op == "+"
    assert e.left.op == "^"


def test_negative_literal_primary():
    assert same_expr(parse_expression("-5"), Const(value=-5))
    e = parse_expression("1 - -5")
    assert same_expr(e, B("-", Const(value=1), Const(value=-5)))


def test_int32_range_enforced():
    parse_expression("2147483647")
    parse_expression("-2147483648")
    with pytest.raises(ParseError):
        parse_expression("2147483648")
    with pytest.raises(ParseError):
        parse_expression("-2147483649")


def test_index_expression():
    e = parse_expression("a[i + 1]")
    assert isinstance(e, Index)
    assert e.name == "a"
    assert same_expr(e.index, B("+", Var(name="i"), Const(value=1)))


def test_assignment_forms():
    p = parse("x += 1\ny -= x\nz ^= 3\na[0] += x")
    items = []
    s = p.main
    while isinstance(s, Seq):
        items.append(s.first)
        s = s.rest
    items.append(s)
    assert isinstance(items[0], ScalarAssign) and items[0].op is ModOp.PLUS
    assert isinstance(items[1], ScalarAssign) and items[1].op is ModOp.MINUS
    assert isinstance(items[2], ScalarAssign) and items[2].op is ModOp.XOR
    assert isinstance(items[3], ArrayAssign)


def test_seq_is_right_comb():
    p = parse("x += 1 y += 2 z += 3")
    assert isinstance(p.main, Seq)
    assert isinstance(p.main.first, ScalarAssign)
    assert isinstance(p.main.rest, Seq)
    assert isinstance(p.main.rest.rest, ScalarAssign)


def test_if_and_loop_shapes():
    p = parse("if x = 0 then skip else y += 1 fi x = 0")
    assert isinstance(p.main, If)
    assert isinstance(p.main.then, Skip)
    p = parse("from i = 0 do x += 1 loop i += 1 until i = 3")
    assert isinstance(p.main, Loop)


def test_call_uncall_and_procedures():
    p = parse("call f\nuncall f\n\nprocedure f\n x += 1")
    assert isinstance(p.main.first, Call)
    assert isinstance(p.main.rest, Uncall)
    assert p.proc_names() == ["f"]


def test_duplicate_procedure_rejected():
    with pytest.raises(ParseError, match="duplicate"):
        parse("skip\nprocedure f\nskip\nprocedure f\nskip")


def test_strict_grammar_requires_procedure():
    parse("skip", strict_grammar=False)
    with pytest.raises(ParseError, match="procedure"):
        parse("skip", strict_grammar=True)


def test_comments_and_whitespace():
    p = parse("// leading comment\nx += 1 // trailing\n// done")
    assert isinstance(p.main, ScalarAssign)


def test_parse_errors_have_spans():
    try:
        parse("x +=")
    except ParseError as e:
        assert e.diagnostic.severity == "error"
        assert e.diagnostic.span.line >= 1
    else:
        pytest.fail("expected ParseError")
    with pytest.raises(ParseError):
        parse("x := 1")
    with pytest.raises(ParseError):
        parse("if x then skip fi x")  # missing else
    with pytest.raises(ParseError):
        parse("$")


def test_spans_point_into_source():
    src = "x += 1\ny += 2"
    p = parse(src)
    second = p.main.rest
    assert src[second.span.start:second.span.end] == "y += 2"
    assert second.span.line == 2


def test_keywords_not_identifiers():
    with pytest.raises(ParseError):
        parse("skip += 1")
    with pytest.raises(ParseError):
        parse_expression("do")


def test_tokenize_tracks_lines():
    toks = tokenize("x\n  y")
    assert toks[0].span.line == 1
    assert toks[1].span.line == 2
    assert toks[1].span.col == 3


@pytest.mark.parametrize("name,src", corpus_sources())
def test_corpus_parses(name, src):
    p = parse(src)
    assert p.main is not None


def test_same_stmt_ignores_spans():
    a = parse("x += 1").main
    b = parse("  x   +=   1").main
    assert same_stmt(a, b)
