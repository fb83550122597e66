import pytest

from krust import Category, run_source
from krust.semantics.machine import Continue, Done, Failed, load_program, step
from krust.semantics.operators import get_type
from krust.state import BoolV, IntV, KrustError, StructInstV
from krust.syntax import nodes as n
from krust.syntax import parse_source

POINT = "struct Point { x: i32, y: i32, }\n"


def main(body, prelude=""):
    return run_source(prelude + "fn main() {\n" + body + "\n}\n")


def error(body, prelude=""):
    out = main(body, prelude)
    assert out.diagnostic is not None, out.output
    return out.diagnostic.category


def printed(body, prelude=""):
    out = main(body, prelude)
    assert out.ok, out.diagnostic
    return out.output


# -- loading ---------------------------------------------------------------

def test_helper_defined_after_main_is_callable():
    out = run_source('fn main() { println!("{}", helper()); }\nfn helper() -> i32 { 7 }')
    assert out.output == "7\n"


def test_lone_main_is_bound_at_location_zero():
    cfg = load_program(parse_source("fn main(){}"))
    assert cfg.genv == {"main": 0}
    assert type(cfg.store[0]).__name__ == "ClosureV"


def test_two_mains():
    out = run_source("fn main(){} fn main(){}")
    assert out.diagnostic.category is Category.DuplicateDefinition


def test_missing_main():
    out = run_source("fn helper(){}")
    assert out.status == "semantic_error"
    assert out.diagnostic.category is Category.MissingMain


def test_step_tags_declaration():
    cfg = load_program(parse_source("fn main() { let a = 1; }"))
    tags = []
    while True:
        r = step(cfg)
        if type(r) is not Continue:
            break
        tags.append(r.tag)
    assert type(r) is Done
    assert "Declaration-of-Immutable-Variable" in tags


def test_step_reports_unbound():
    cfg = load_program(parse_source("fn main() { let a = c; }"))
    while True:
        r = step(cfg)
        if type(r) is not Continue:
            break
    assert type(r) is Failed
    assert r.diagnostic.category is Category.UnboundIdentifier
    assert r.diagnostic.line == 1


# -- declarations, lookup, assignment --------------------------------------

def test_assign_to_immutable():
    out = main("let x = 9;\nx = 10;")
    assert out.diagnostic.category is Category.AssignToImmutable
    assert out.diagnostic.line == 3


def test_copy_of_primitive():
    assert printed('let a = 1; let b = a; println!("{} {}", a, b);') == "1 1\n"


def test_shadowing():
    assert printed('let x = 1; let x = 2; println!("{}", x);') == "2\n"


def test_uninitialized_read():
    assert error("let z: bool; let w = !z;") is Category.UninitializedRead


def test_plain_assignment():
    assert printed('let mut y = 0; y = 5; println!("{}", y);') == "5\n"


def test_assignment_type_mismatch():
    assert error("let mut y: i32 = 0; y = true;") is Category.TypeMismatch


def test_assign_while_mutably_borrowed():
    assert error("let mut x3 = 1; let p3 = &mut x3; x3 = 2;") is Category.BorrowConflict


def test_compound_assignment():
    assert printed('let mut y = 3; y += 4; y *= 2; println!("{}", y);') == "14\n"


def test_declared_type_mismatch():
    assert error("let x: bool = 1;") is Category.TypeMismatch


def test_literal_adopts_declared_type():
    assert printed('let x: u8 = 200; println!("{}", x);') == "200\n"


# -- arrays ----------------------------------------------------------------

def test_array_write_then_read():
    assert printed('let mut a: [i32; 3] = [0; 3]; a[1] = 7; println!("{}", a[1]);') == "7\n"


def test_array_out_of_bounds():
    out = main("let a = [1, 2, 3];\nlet v = a[3];")
    assert out.status == "runtime_error"
    assert out.diagnostic.category is Category.IndexOutOfBounds


def test_immutable_array_write():
    assert error("let a = [1, 2, 3]; a[0] = 5;") is Category.AssignToImmutable


def test_array_element_type():
    assert error("let mut a = [1, 2, 3]; a[0] = true;") is Category.TypeMismatch


# -- references ------------------------------------------------------------

def test_write_through_exclusive_reference():
    assert printed('let mut x3 = 1; let p3 = &mut x3; *p3 = 2; println!("{}", x3);') == "2\n"


def test_mutable_borrow_of_immutable():
    assert error("let x1 = 1; let y = &mut x1;") is Category.MutBorrowOfImmutable


def test_second_mutable_borrow():
    assert error("let mut x3 = 1; let p3 = &mut x3; let p4 = &mut x3;") is Category.BorrowConflict


def test_mutable_borrow_of_shared():
    assert error("let mut x = 1; let p = &x; let q = &mut x;") is Category.BorrowConflict


def test_many_shared_borrows():
    assert printed('let x = 1; let p = &x; let q = &x; println!("{} {}", *p, *q);') == "1 1\n"


def test_lifetime_too_short():
    src = "let mut x;\n{\n  let y = 1;\n  x = &y;\n}"
    out = main(src)
    assert out.diagnostic.category is Category.LifetimeError
    assert out.diagnostic.line == 5


def test_dereference_read():
    assert printed('let x1 = 1; let p1 = &x1; println!("{}", *p1);') == "1\n"


def test_dereference_of_plain_variable():
    assert error("let k: i32 = 3; let v = *k;") is Category.NotAReference


def test_chained_dereference():
    assert printed('let x = 4; let q = &x; let v = *q; println!("{}", v);') == "4\n"


def test_write_through_shared_reference():
    assert error("let x1 = 1; let p1 = &x1; *p1 = 2;") is Category.WriteThroughSharedRef
    assert error("let mut x2 = 1; let p2 = &x2; *p2 = 2;") is Category.WriteThroughSharedRef


def test_borrow_released_at_block_end():
    body = 'let mut x = 1;\n{ let p = &mut x; *p = 5; }\nlet q = &mut x; *q = 6; println!("{}", x);'
    assert printed(body) == "6\n"


# -- functions -------------------------------------------------------------

FOO = "fn foo(x:i32, y:i32) -> i32 {\n  x+y // return x+y;\n}\n"
GCD = """fn gcd(a: i32, b : i32) -> i32 {
    if a!=b {
        if a>b { return gcd(a-b, b); }
        else   { return gcd(a, b-a); }
    }else { return a; }
}
"""


def test_function_call():
    assert printed('println!("{}", foo(1,2));', FOO) == "3\n"


def test_tail_expression_is_a_return():
    prog = parse_source(FOO)
    cfg = load_program(parse_source(FOO + "fn main(){}"))
    closure = cfg.store[cfg.genv["foo"]]
    body = closure.body
    assert isinstance(body.stmts[-1], n.Return)
    assert body.tail is None
    assert prog.items[0].body.tail is not None  # the source AST keeps the tail


def test_missing_return_type_is_unit():
    cfg = load_program(parse_source("fn g() { } fn main(){}"))
    assert cfg.store[cfg.genv["g"]].ret == n.UNIT


def test_arity_mismatch():
    assert error("let v = foo(1);", FOO) is Category.ArityMismatch


def test_recursive_gcd_counts_calls():
    src = GCD + 'fn main() { println!("{}", gcd(6, 4)); }'
    out = run_source(src, time_enabled=True)
    assert out.output == "2\n"
    assert out.config.time["gcd"] == 3


def test_return_skips_trailing_statements():
    prelude = 'fn f() -> i32 { return 1; println!("unreachable"); }\n'
    assert printed('println!("{}", f());', prelude) == "1\n"


def test_implicit_unit_return_mismatch():
    assert error("let v = f();", "fn f() -> i32 { }\n") is Category.TypeMismatch


def test_argument_type_mismatch():
    assert error("let v = foo(true, 2);", FOO) is Category.TypeMismatch


def test_main_returns_to_empty_configuration():
    out = run_source("fn main() { let x = 1; }")
    assert out.ok
    assert out.config.kont == [] and out.config.fstack == []


def test_nested_function_item():
    assert printed('fn inner() -> i32 { 5 }\nprintln!("{}", inner());') == "5\n"


# -- structs ---------------------------------------------------------------

def test_struct_fields_are_bound():
    out = main("let p = Point {x:1, y:2};", POINT)
    assert out.ok
    assert printed('let p = Point {x:1, y:2}; println!("{} {}", p.x, p.y);', POINT) == "1 2\n"


def test_struct_missing_field():
    assert error("let p = Point {x:1};", POINT) is Category.TypeMismatch


def test_struct_duplicate_field():
    out = main("let p = Point {x:1, y:2, x:3};", POINT)
    assert out.status == "semantic_error"
    assert "more than once" in out.diagnostic.message or "duplicate" in out.diagnostic.message


def test_struct_field_type():
    assert error("let p = Point {x:true, y:2};", POINT) is Category.TypeMismatch


def test_use_after_move():
    body = 'let p = Point {x:1, y:2};\n{\nlet mut q = p;\nq.x = 2;\nprintln!("{}", p.x);\n}'
    out = main(body, POINT)
    assert out.diagnostic.category is Category.UseAfterMove
    assert out.diagnostic.line == 7


def test_moved_into_owner_is_usable():
    body = 'let p = Point {x:1, y:2}; let mut q = p; q.x = 2; println!("{}", q.x);'
    assert printed(body, POINT) == "2\n"


def test_move_from_moved_source():
    body = "let p = Point {x:1, y:2}; let q = p; let r = p;"
    assert error(body, POINT) is Category.UseAfterMove


def test_owner_gone_after_block():
    body = "let p = Point {x:1, y:2};\n{ let mut q = p; }\nlet v = q.x;"
    assert error(body, POINT) is Category.UnboundIdentifier


def test_immutable_field_write():
    assert error("let p = Point {x:1, y:2}; p.x = 5;", POINT) is Category.AssignToImmutable


def test_unknown_field():
    assert error("let p = Point {x:1, y:2}; let v = p.z;", POINT) is Category.UnboundIdentifier


def test_struct_type_of_value():
    assert get_type(StructInstV("Point")) == n.NamedType("Point")


# -- operators -------------------------------------------------------------

def test_arithmetic():
    assert printed('println!("{}", 1 + 2);') == "3\n"


def test_overflow():
    out = main("let m: i32 = 2147483647; let v = m + 1;")
    assert out.status == "runtime_error"
    assert out.diagnostic.category is Category.Overflow


def test_divide_by_zero():
    assert error("let z = 0; let v = 1 / z;") is Category.DivideByZero


def test_short_circuit():
    assert printed('let z = 0; let b = false && (1 / z == 0); println!("{}", b);') == "false\n"
    assert printed('let z = 0; let b = true || (1 / z == 0); println!("{}", b);') == "true\n"


def test_mixed_operand_types():
    assert error("let v = 1 + true;") is Category.TypeMismatch


def test_get_type():
    assert get_type(IntV(5, "i32")) == n.prim("i32")
    assert get_type(BoolV(True)) == n.prim("bool")


# -- control ---------------------------------------------------------------

def test_while_counts_down():
    out = main('let mut x: i32 = 10;\nwhile x > 0 {\n x = x - 1;\n}\nprintln!("{}", x);')
    assert out.output == "0\n"


def test_for_range():
    assert printed('let mut s = 0; for i in 0..3 { s = s + i; } println!("{}", s);') == "3\n"


def test_non_bool_condition():
    assert error("if 1 {}") is Category.TypeMismatch


def test_if_else():
    assert printed('let x = 3; if x > 2 { println!("big"); } else { println!("small"); }') == "big\n"


def test_loop_exits_by_return():
    prelude = "fn f() -> i32 { let mut i = 0; loop { i = i + 1; if i == 4 { return i; } } }\n"
    assert printed('println!("{}", f());', prelude) == "4\n"


def test_empty_block():
    assert main("{}").ok


def test_step_budget():
    out = run_source("fn main() { let mut x = 0; while true { x = 1; } }", max_steps=1000)
    assert out.status == "timeout"


# -- println ---------------------------------------------------------------

@pytest.mark.parametrize("body, text", [
    ('println!("{}", 5);', "5\n"),
    ('println!("x={} y={}", 1, 2);', "x=1 y=2\n"),
    ('println!("{} {} {}", true, \'c\', "s");', "true c s\n"),
    ('println!("{}", 1.5);', "1.5\n"),
    ('println!("plain");', "plain\n"),
])
def test_println(body, text):
    assert printed(body) == text


def test_println_arity():
    assert error('println!("{}");') is Category.ArityMismatch


def test_run_classification():
    assert main("let x = 9;\nx = 10;").status == "semantic_error"
    assert main("let a = [1, 2, 3]; let i: usize = 5; let v = a[i];").status == "runtime_error"


def test_error_in_stepped_config_keeps_machine_intact():
    cfg = load_program(parse_source("fn main() { let x = 1; x = 2; }"))
    while True:
        r = step(cfg)
        if type(r) is not Continue:
            break
    assert type(r) is Failed
    assert cfg.kont  # the failing computation is still visible
    with pytest.raises(KrustError):
        raise KrustError(Category.Stuck, "x")
