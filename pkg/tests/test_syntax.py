import pytest

from krust import Category, run_source
from krust.corpus import load_corpus
from krust.syntax import LexError, ParseError, parse_source, pretty, tokenize
from krust.syntax import nodes as n
from krust.syntax.productions import ALL_PRODUCTIONS, productions


def kinds(source):
    return [repr(t) for t in tokenize(source)][:-1]


def test_tokenize_let_mut():
    assert kinds("let mut y = 0;") == ["let", "mut", "ident(y)", "=", "int(0)", ";"]


def test_line_comment_is_dropped():
    assert kinds("x+y // return x+y;") == ["ident(x)", "+", "ident(y)"]


def test_unterminated_string():
    with pytest.raises(LexError):
        tokenize('let s = "abc')


def test_token_spans_are_one_based():
    toks = tokenize("let x = 1;\n  x = 2;")
    assert (toks[0].span.line, toks[0].span.col) == (1, 1)
    second_x = toks[5]
    assert second_x.text == "x"
    assert (second_x.span.line, second_x.span.col) == (2, 3)


def test_longest_punctuation_wins():
    assert kinds("a<=b..=c") == ["ident(a)", "<=", "ident(b)", "..=", "ident(c)"]


def test_function_with_tail_expression():
    prog = parse_source("fn foo(x:i32, y:i32) -> i32 { x+y }")
    (fn,) = prog.items
    assert isinstance(fn, n.Function)
    assert fn.params == (("x", n.prim("i32")), ("y", n.prim("i32")))
    assert fn.ret == n.prim("i32")
    assert fn.body.stmts == ()
    assert fn.body.tail == n.BinOp("+", n.Ident("x"), n.Ident("y"))


def test_struct_trailing_comma():
    (decl,) = parse_source("struct Point{ x: i32, y: i32, }").items
    assert isinstance(decl, n.StructDecl)
    assert [f for f, _ in decl.fields] == ["x", "y"]


def test_missing_expression():
    with pytest.raises(ParseError) as info:
        parse_source("fn main() { let x = ; }")
    assert info.value.span.line == 1


def test_item_order_preserved():
    prog = parse_source("fn b() {} struct S { a: i32 } fn main() {}")
    assert [type(i).__name__ for i in prog.items] == ["Function", "StructDecl", "Function"]


def test_negative_array_length_rejected():
    with pytest.raises(ParseError):
        parse_source("fn main() { let a: [i32; -1]; }")


@pytest.mark.parametrize("src", [
    "fn f(a: i32, a: i32) {} fn main() {}",
    "struct S { a: i32, a: bool } fn main() {}",
])
def test_duplicate_names_parse_but_do_not_load(src):
    # distinctness is checked when the item is defined, like other name clashes
    parse_source(src)
    outcome = run_source(src)
    assert outcome.status == "semantic_error"
    assert outcome.diagnostic.category is Category.DuplicateDefinition


@pytest.mark.parametrize("target, kind", [
    ("x = 1;", n.Ident),
    ("a[0] = 1;", n.Index),
    ("*p = 1;", n.Deref),
    ("s.f = 1;", n.FieldAccess),
])
def test_assignment_forms(target, kind):
    prog = parse_source("fn main() { " + target + " }")
    stmt = prog.items[0].body.stmts[0]
    assert isinstance(stmt, n.Assign)
    assert isinstance(stmt.target, kind)


def test_other_assignment_targets_rejected():
    with pytest.raises(ParseError):
        parse_source("fn main() { (x) = 1; }")


def test_precedence():
    prog = parse_source("fn main() { let v = 1 + 2 * 3 == 7 && true; }")
    init = prog.items[0].body.stmts[0].init
    assert init.op == "&&"
    assert init.lhs.op == "=="
    assert init.lhs.lhs.op == "+"
    assert init.lhs.lhs.rhs.op == "*"


def test_statement_span_points_at_line():
    prog = parse_source("fn main() {\n  let x = 9;\n  x = 10;\n}")
    assign = prog.items[0].body.stmts[1]
    assert assign.span.line == 3


@pytest.mark.parametrize("entry", load_corpus(), ids=lambda e: e.name)
def test_corpus_round_trip(entry):
    prog = parse_source(entry.source)
    again = parse_source(pretty(prog))
    assert again == prog


def test_production_names_are_known():
    for entry in load_corpus():
        assert productions(parse_source(entry.source)) <= ALL_PRODUCTIONS
