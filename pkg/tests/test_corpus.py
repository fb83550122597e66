import pytest

from krust import parse_source, run_source
from krust.corpus import check_entry, lint, load_corpus
from krust.semantics.machine import CORE_RULES
from krust.syntax.productions import ALL_PRODUCTIONS, productions

ENTRIES = load_corpus()


def test_corpus_size():
    assert len(ENTRIES) >= 25


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
def test_entry_matches_annotation(entry):
    assert check_entry(entry) == []


def test_lint_is_clean():
    assert lint() == []


def test_every_class_is_represented():
    assert {e.expect for e in ENTRIES} == {"accept", "reject", "panic"}


def test_every_grammar_production_is_used():
    used = set()
    for e in ENTRIES:
        used |= productions(parse_source(e.source))
    assert ALL_PRODUCTIONS - used == set()


def test_every_core_rule_fires():
    fired = set()
    for e in ENTRIES:
        fired |= set(run_source(e.source, trace=True).trace)
    assert len(CORE_RULES) == 24
    assert CORE_RULES - fired == set()


def test_lint_detects_drift(tmp_path):
    (tmp_path / "x.rs").write_text('//@ expect: accept\n//@ stdout: 2\nfn main() { println!("{}", 1); }\n')
    (problem,) = lint(tmp_path)
    assert problem.startswith("x.rs: expected stdout")


def test_header_requires_expect(tmp_path):
    (tmp_path / "x.rs").write_text("fn main() {}\n")
    with pytest.raises(ValueError):
        load_corpus(tmp_path)
