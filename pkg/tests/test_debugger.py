import io
from pathlib import Path

from krust.runner import DebugSession
from krust.runner.cli import main
from krust.runner.debugger import repl
from krust.syntax import parse_source

GOLDEN = Path(__file__).parent / "golden"
WHILE = (GOLDEN / "while_countdown.rs").read_text()

TRANSCRIPT = [
    "<env> x |-> 1 </env>",
    "<typeEnv> 1 |-> i32 </typeEnv>",
    "<mutType> 1 |-> 1 </mutType>",
    "<store> 1 |-> 9 </store>",
]


def session():
    return DebugSession(parse_source(WHILE))


def test_scripted_transcript_via_cli(capsys):
    code = main(["debug", str(GOLDEN / "while_countdown.rs"), "--script", str(GOLDEN / "while_countdown.dbg")])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-4:] == TRANSCRIPT


def test_transcript_via_session():
    s = session()
    out = io.StringIO()
    repl(s, (GOLDEN / "while_countdown.dbg").read_text().splitlines(), out)
    assert out.getvalue().splitlines()[-4:] == TRANSCRIPT


def test_breakpoint_reports_line_and_steps():
    s = session()
    s.execute("break 3")
    (first,) = s.execute("run")
    assert first.startswith("breakpoint at line 3 after ")
    steps = int(first.split()[-2])
    assert steps == s.steps == len(s.history)


def test_run_to_completion():
    s = session()
    assert s.execute("run") == ["program finished"]
    assert s.finished
    assert s.execute("step") == ["program is not running"]
    assert s.execute("print env") == ["<env> </env>"]


def test_step_prints_rule_names():
    s = session()
    lines = s.execute("step 3")
    assert [line.split("] ")[0] for line in lines] == ["[1", "[2", "[3"]
    assert s.steps == 3


def test_step_zero_shows_position():
    s = session()
    s.execute("step 1")
    before = s.steps
    (where,) = s.execute("step 0")
    assert s.steps == before
    assert where


def test_error_is_reported():
    s = DebugSession(parse_source("fn main() {\n let x = 1;\n x = 2;\n}"))
    assert s.execute("run")[0].startswith("error: AssignToImmutable: line 3")
    assert s.diagnostic is not None


def test_print_all_and_unknown_cell():
    s = session()
    assert len(s.execute("print all")) == 14
    assert s.execute("print heap")[0].startswith("error:")


def test_unknown_command_shows_help():
    s = session()
    lines = s.execute("jump 4")
    assert lines[0] == "unknown command: jump 4"
    assert any(line.strip().startswith("step") for line in lines)


def test_quit_stops_reading():
    s = session()
    out = io.StringIO()
    repl(s, ["quit", "step"], out)
    assert out.getvalue() == ""
    assert s.steps == 0
