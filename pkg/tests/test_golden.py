"""Walk-through listings: one file per annotated line, other error lines commented out."""

import time
from pathlib import Path

import pytest

from krust import Category, parse_source, run, run_source

GOLDEN = Path(__file__).parent / "golden"

# file -> (category or None for success, line)
EXPECTED = {
    "mutability_line03.rs": (Category.AssignToImmutable, 3),
    "ownership_line10.rs": (Category.UseAfterMove, 10),
    "ownership_line12.rs": (Category.UnboundIdentifier, 12),
    "borrowing_line05.rs": (Category.WriteThroughSharedRef, 5),
    "borrowing_line06.rs": (Category.MutBorrowOfImmutable, 6),
    "borrowing_line11.rs": (Category.WriteThroughSharedRef, 11),
    "borrowing_line15.rs": (Category.BorrowConflict, 15),
    "borrowing_line16.rs": (None, 16),
    "borrowing_line17.rs": (Category.BorrowConflict, 17),
    "lifetime_line05.rs": (Category.LifetimeError, 5),
    "lifetime_line08.rs": (None, 8),
}


def check_listing(name):
    """Returns a problem description, or None when the listing behaves as annotated."""
    category, line = EXPECTED[name]
    source = (GOLDEN / name).read_text()
    out = run_source(source)
    if category is None:
        if not out.ok:
            return f"expected success, got {out.diagnostic}"
        return None
    if out.diagnostic is None:
        return f"expected {category} at line {line}, program succeeded"
    if out.diagnostic.category is not category or out.diagnostic.line != line:
        return f"expected {category} at line {line}, got {out.diagnostic}"
    return None


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_listing(name):
    assert check_listing(name) is None


def test_every_golden_listing_has_an_expectation():
    listings = sorted(p.name for p in GOLDEN.glob("*_line*.rs"))
    assert listings == sorted(EXPECTED)


def test_write_through_exclusive_reference_updates_target():
    # x3 leaves scope when main returns, so watch it while the program runs
    seen = []

    def watch(cfg, tag):
        loc = cfg.env.get("x3")
        if loc is not None:
            seen.append(cfg.store[loc])

    out = run(parse_source((GOLDEN / "borrowing_line16.rs").read_text()), observer=watch)
    assert out.ok
    assert str(seen[-1]) == "2"


def test_all_listings_under_a_second():
    start = time.perf_counter()
    for name in EXPECTED:
        assert check_listing(name) is None
    assert time.perf_counter() - start < 1.0
