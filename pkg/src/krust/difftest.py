"""Differential testing of the interpreter against a reference compiler."""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Set

from .semantics.run import OK, PARSE_ERROR, RUNTIME_ERROR, SEMANTIC_ERROR, TIMEOUT, run_source

DEFAULT_COMPILE_CMD = "rustc --edition 2021 -C overflow-checks=on -C debuginfo=0 {src} -o {bin}"
MANIFEST_NAME = "known_divergences.txt"
PANIC_STATUS = 101

COMPILE_REJECT = "compile_reject"
RAN = "ran"


class HarnessError(Exception):
    """The harness itself failed (missing toolchain, scratch I/O); not a verdict."""


@dataclass(frozen=True)
class ToolchainConfig:
    compile_cmd: str = DEFAULT_COMPILE_CMD
    run_timeout: float = 10.0
    compile_timeout: float = 120.0
    workdir: Optional[str] = None

    def __post_init__(self):
        for ph in ("{src}", "{bin}"):
            if self.compile_cmd.count(ph) != 1:
                raise ValueError(f"compile command must contain {ph} exactly once: {self.compile_cmd!r}")

    @classmethod
    def from_file(cls, path: str) -> "ToolchainConfig":
        """Read ``key = value`` lines (compile_cmd, run_timeout, compile_timeout, workdir)."""
        values: Dict[str, str] = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise ValueError(f"{path}:{lineno}: expected key = value")
                values[key.strip()] = value.strip()
        unknown = set(values) - {"compile_cmd", "run_timeout", "compile_timeout", "workdir"}
        if unknown:
            raise ValueError(f"{path}: unknown keys {sorted(unknown)}")
        kwargs = {}
        if "compile_cmd" in values:
            kwargs["compile_cmd"] = values["compile_cmd"]
        for key in ("run_timeout", "compile_timeout"):
            if key in values:
                kwargs[key] = float(values[key])
        if values.get("workdir"):
            kwargs["workdir"] = values["workdir"]
        return cls(**kwargs)


@dataclass(frozen=True)
class ObservedBehavior:
    phase: str
    stdout: bytes = b""
    exit_status: Optional[int] = None
    timed_out: bool = False

    def summary(self) -> str:
        if self.timed_out:
            return "timed_out"
        if self.phase == COMPILE_REJECT:
            return COMPILE_REJECT
        return f"ran status={self.exit_status} stdout={self.stdout!r}"


@dataclass(frozen=True)
class Verdict:
    kind: str  # "Agree" or "Mismatch"
    dimension: Optional[str] = None  # phase, stdout or exit_status
    interpreter: Optional[ObservedBehavior] = None
    reference: Optional[ObservedBehavior] = None

    @property
    def agree(self) -> bool:
        return self.kind == "Agree"


def observe_interpreter(path, max_steps: Optional[int] = None) -> ObservedBehavior:
    source = Path(path).read_text(encoding="utf-8")
    outcome = run_source(source, max_steps=max_steps)
    if outcome.status in (SEMANTIC_ERROR, PARSE_ERROR):
        return ObservedBehavior(COMPILE_REJECT)
    out = outcome.output.encode("utf-8")
    if outcome.status == TIMEOUT:
        return ObservedBehavior(RAN, out, None, timed_out=True)
    if outcome.status == RUNTIME_ERROR:
        return ObservedBehavior(RAN, out, PANIC_STATUS)
    assert outcome.status == OK
    return ObservedBehavior(RAN, out, 0)


def _command(template: str, src: str, binary: str) -> List[str]:
    return [tok.replace("{src}", src).replace("{bin}", binary) for tok in shlex.split(template)]


def observe_reference(path, cfg: ToolchainConfig) -> ObservedBehavior:
    src = os.path.abspath(path)
    try:
        scratch = tempfile.TemporaryDirectory(prefix="krust-diff-", dir=cfg.workdir)
    except OSError as err:
        raise HarnessError(f"cannot create scratch directory: {err}") from err
    with scratch as tmp:
        binary = os.path.join(tmp, "prog")
        try:
            comp = subprocess.run(_command(cfg.compile_cmd, src, binary), cwd=tmp,
                                  capture_output=True, timeout=cfg.compile_timeout)
        except FileNotFoundError as err:
            raise HarnessError(f"toolchain not found: {err}") from err
        except subprocess.TimeoutExpired as err:
            raise HarnessError(f"compile timed out after {cfg.compile_timeout}s") from err
        if comp.returncode != 0:
            return ObservedBehavior(COMPILE_REJECT)
        if not os.path.exists(binary):
            raise HarnessError("compiler reported success but produced no binary")
        try:
            proc = subprocess.run([binary], cwd=tmp, capture_output=True, timeout=cfg.run_timeout)
        except subprocess.TimeoutExpired as err:
            return ObservedBehavior(RAN, err.stdout or b"", None, timed_out=True)
        return ObservedBehavior(RAN, proc.stdout, proc.returncode)


def compare(i: ObservedBehavior, r: ObservedBehavior) -> Verdict:
    dim = _differing_dimension(i, r)
    if dim is None:
        return Verdict("Agree", None, i, r)
    return Verdict("Mismatch", dim, i, r)


def _differing_dimension(i: ObservedBehavior, r: ObservedBehavior) -> Optional[str]:
    if i.timed_out or r.timed_out:
        return None if i.timed_out and r.timed_out else "phase"
    if i.phase != r.phase:
        return "phase"
    if i.phase == COMPILE_REJECT:
        return None
    if i.stdout != r.stdout:
        return "stdout"
    if (i.exit_status == 0) != (r.exit_status == 0):
        return "exit_status"
    return None


@dataclass
class Record:
    path: str
    verdict: Optional[Verdict]
    known_divergence: bool = False
    error: Optional[str] = None

    @property
    def label(self) -> str:
        if self.error is not None:
            return "HarnessError"
        if self.verdict.agree:
            return "Agree"
        return "KnownDivergence" if self.known_divergence else "Mismatch"

    def tsv(self) -> str:
        v = self.verdict
        dim = v.dimension if v is not None and v.dimension else "-"
        if self.error is not None:
            return "\t".join([self.path, self.label, "-", self.error.replace("\t", " "), "-"])
        isum = v.interpreter.summary() if v.interpreter else "-"
        rsum = v.reference.summary() if v.reference else "-"
        return "\t".join([self.path, self.label, dim, isum, rsum])


@dataclass
class Report:
    records: List[Record] = field(default_factory=list)

    def count(self, label: str) -> int:
        return sum(1 for r in self.records if r.label == label)

    @property
    def agree(self) -> int:
        return self.count("Agree")

    @property
    def mismatch(self) -> int:
        return self.count("Mismatch")

    @property
    def known_divergence(self) -> int:
        return self.count("KnownDivergence")

    @property
    def harness_error(self) -> int:
        return self.count("HarnessError")

    def summary(self) -> str:
        return (f"agree={self.agree} mismatch={self.mismatch} "
                f"known_divergence={self.known_divergence} harness_error={self.harness_error}")

    def to_tsv(self) -> str:
        return "".join(r.tsv() + "\n" for r in self.records)


def load_manifest(corpus: Path) -> Set[str]:
    path = corpus / MANIFEST_NAME
    if not path.exists():
        return set()
    names = set()
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            names.add(line)
    return names


def _observe_pair(path: Path, cfg: ToolchainConfig, max_steps: Optional[int]) -> Record:
    try:
        ref = observe_reference(path, cfg)
    except HarnessError as err:
        return Record(path.name, None, error=str(err))
    mine = observe_interpreter(path, max_steps)
    return Record(path.name, compare(mine, ref))


def run_corpus(corpus, cfg: ToolchainConfig, parallelism: int = 1,
               max_steps: Optional[int] = None) -> Report:
    """Compare every ``*.rs`` file of ``corpus``; records come back in sorted path order."""
    root = Path(corpus)
    if not root.is_dir():
        raise ValueError(f"corpus directory not found: {corpus}")
    files = sorted(root.glob("*.rs"))
    if not files:
        raise ValueError(f"no *.rs files in {corpus}")
    known = load_manifest(root)
    if parallelism <= 1:
        records = [_observe_pair(p, cfg, max_steps) for p in files]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            records = list(pool.map(lambda p: _observe_pair(p, cfg, max_steps), files))
    for rec in records:
        rec.known_divergence = rec.path in known
    return Report(records)
