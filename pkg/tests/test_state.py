import pytest

from krust import run_source
from krust.semantics.machine import Continue, load_program, step
from krust.state import (
    BOTTOM, CELL_NAMES, Category, Diagnostic, IntV, allocate, allocate_array,
    fresh_configuration, render_cell,
)
from krust.syntax import nodes as n
from krust.syntax import parse_source

I32 = n.prim("i32")


def test_fresh_configuration():
    cfg = fresh_configuration()
    assert cfg.next_loc == 0
    assert cfg.store == {}
    assert cfg == fresh_configuration()


def test_first_allocation_is_zero():
    cfg = fresh_configuration()
    assert allocate(cfg, I32, False) == 0
    assert cfg.next_loc == 1
    assert cfg.store[0] is BOTTOM
    assert cfg.mut_type[0] == 0
    assert cfg.borrow[0] is None and cfg.ref[0] is None and cfg.ref_type[0] is None
    assert cfg.moved[0] == 0


def test_mutable_allocation_flag():
    cfg = fresh_configuration()
    loc = allocate(cfg, I32, True)
    assert cfg.mut_type[loc] == 1


def test_first_local_of_main_is_location_one():
    prog = parse_source("fn main() {\n    let mut x: i32 = 10;\n}")
    cfg = load_program(prog)
    while "x" not in cfg.env:
        assert type(step(cfg)) is Continue
    assert cfg.env["x"] == 1


def test_array_allocation_advances_by_length():
    cfg = fresh_configuration()
    allocate(cfg, None, False)  # stands in for main
    base = allocate_array(cfg, I32, 3, True)
    assert base == 1
    assert cfg.next_loc == 4
    assert all(cfg.store[base + i] is BOTTOM for i in range(3))
    assert cfg.type_env[base] == n.ArrayType(I32, 3)


def test_consecutive_arrays_are_disjoint():
    cfg = fresh_configuration()
    a = allocate_array(cfg, I32, 2, False)
    b = allocate_array(cfg, I32, 3, False)
    assert (a, b) == (0, 2)
    assert cfg.next_loc == 5


def test_empty_array_still_reserves_its_base():
    cfg = fresh_configuration()
    a = allocate_array(cfg, I32, 0, False)
    b = allocate(cfg, I32, False)
    assert a != b
    assert cfg.next_loc == 2


def test_empty_array_index_errors():
    out = run_source("fn main() { let a: [i32; 0] = []; let i: usize = 0; let x = a[i]; }")
    assert out.diagnostic.category is Category.IndexOutOfBounds


def test_negative_array_length():
    with pytest.raises(ValueError):
        allocate_array(fresh_configuration(), I32, -1, False)


def test_render_empty_env():
    assert render_cell(fresh_configuration(), "env") == "<env> </env>"


def test_render_store_and_mut_type():
    cfg = fresh_configuration()
    allocate(cfg, None, False)
    loc = allocate(cfg, I32, True)
    cfg.env["x"] = loc
    cfg.store[loc] = IntV(9, "i32")
    assert render_cell(cfg, "env") == "<env> x |-> 1 </env>"
    assert render_cell(cfg, "store") == "<store> 0 |-> ⊥ 1 |-> 9 </store>"
    assert render_cell(cfg, "mutType") == "<mutType> 0 |-> 0 1 |-> 1 </mutType>"
    assert render_cell(cfg, "typeEnv") == "<typeEnv> 0 |-> ⊥ 1 |-> i32 </typeEnv>"
    assert render_cell(cfg, "nextLoc") == "<nextLoc> 2 </nextLoc>"


def test_every_cell_renders():
    cfg = fresh_configuration()
    for name in CELL_NAMES:
        text = render_cell(cfg, name)
        assert text.startswith(f"<{name}>") and text.endswith(f"</{name}>")


def test_unknown_cell():
    with pytest.raises(ValueError):
        render_cell(fresh_configuration(), "heap")


def test_diagnostic_text_names_category_and_line():
    d = Diagnostic(Category.AssignToImmutable, "cannot assign twice", n.Span(3, 3))
    assert d.line == 3
    assert str(d) == "AssignToImmutable: line 3: cannot assign twice"
    assert Diagnostic(Category.Stuck, "x").line is None
