"""The bundled golden corpus and its header annotations.

Each program starts with comment lines such as::

    //@ expect: panic
    //@ error: IndexOutOfBounds
    //@ stdout: 1
    //@ stdout: 2

``expect`` is one of accept, reject or panic. The ``stdout`` lines, in order,
are the complete expected output (none means no output). ``error`` optionally
names the diagnostic category.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from ..semantics.run import OK, PARSE_ERROR, RUNTIME_ERROR, SEMANTIC_ERROR, Outcome, run_source

CORPUS_DIR = Path(__file__).resolve().parent
EXPECT_STATUS = {
    "accept": (OK,),
    "reject": (SEMANTIC_ERROR, PARSE_ERROR),
    "panic": (RUNTIME_ERROR,),
}


@dataclass
class Entry:
    path: Path
    source: str
    expect: str
    stdout: List[str] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def name(self) -> str:
        return self.path.name

    @property
    def expected_output(self) -> str:
        return "".join(line + "\n" for line in self.stdout)


def parse_header(path: Path) -> Entry:
    source = path.read_text(encoding="utf-8")
    expect = None
    stdout: List[str] = []
    error = None
    for line in source.splitlines():
        if not line.startswith("//@"):
            continue
        key, _, value = line[3:].partition(":")
        key = key.strip()
        value = value[1:] if value.startswith(" ") else value
        if key == "expect":
            expect = value.strip()
        elif key == "stdout":
            stdout.append(value)
        elif key == "error":
            error = value.strip()
        else:
            raise ValueError(f"{path.name}: unknown annotation `{key}`")
    if expect not in EXPECT_STATUS:
        raise ValueError(f"{path.name}: missing or invalid `//@ expect:` annotation")
    return Entry(path, source, expect, stdout, error)


def load_corpus(directory=None) -> List[Entry]:
    root = Path(directory) if directory is not None else CORPUS_DIR
    return [parse_header(p) for p in sorted(root.glob("*.rs"))]


def check_entry(entry: Entry, outcome: Optional[Outcome] = None) -> List[str]:
    """Problems with ``entry`` relative to its annotations; empty when it conforms."""
    if outcome is None:
        outcome = run_source(entry.source)
    problems = []
    if outcome.status not in EXPECT_STATUS[entry.expect]:
        problems.append(f"expected {entry.expect}, got {outcome.status}"
                        + (f" ({outcome.diagnostic})" if outcome.diagnostic else ""))
    if entry.error is not None and (outcome.diagnostic is None or str(outcome.diagnostic.category) != entry.error):
        got = outcome.diagnostic.category if outcome.diagnostic else "no diagnostic"
        problems.append(f"expected error {entry.error}, got {got}")
    if entry.expect != "reject" and outcome.output != entry.expected_output:
        problems.append(f"expected stdout {entry.expected_output!r}, got {outcome.output!r}")
    return problems


def lint(directory=None) -> List[str]:
    """One line per non-conforming corpus program."""
    out = []
    for entry in load_corpus(directory):
        for problem in check_entry(entry):
            out.append(f"{entry.name}: {problem}")
    return out
