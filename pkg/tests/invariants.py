"""Engine invariants checked after every step of a run.

``check_program`` returns a list of violation strings; an empty list means
every property held on every step.
"""

from krust import parse_source, run
from krust.semantics import machine
from krust.semantics.operators import get_type
from krust.state import BOTTOM, CODE_VALUES
from krust.syntax import nodes as n

LOCATION_CELLS = ("store", "type_env", "mut_type", "borrow", "ref", "ref_type", "moved")


def _array_spans(cfg):
    """element location -> element type, for every allocated array."""
    elems = {}
    for base, ty in cfg.type_env.items():
        if type(ty) is n.ArrayType:
            for i in range(ty.length):
                elems[base + i] = ty.elem
    return elems


def _live_refs(cfg, target):
    return [r for r, t in cfg.ref.items()
            if t == target and r not in cfg.dead and cfg.moved.get(r) == 0]


class StepChecker:
    """Observer for ``run``; compares each configuration with the previous one."""

    def __init__(self):
        self.violations = []
        self.prev_next_loc = 0
        self.prev_depth = None
        self.steps = 0

    def fail(self, tag, msg):
        if len(self.violations) < 20:
            self.violations.append(f"step {self.steps} ({tag}): {msg}")

    def __call__(self, cfg, tag):
        self.steps += 1
        self.next_loc(cfg, tag)
        self.domains(cfg, tag)
        self.references(cfg, tag)
        self.types(cfg, tag)
        self.borrows(cfg, tag)
        self.frames(cfg, tag)

    def next_loc(self, cfg, tag):
        if cfg.next_loc < self.prev_next_loc:
            self.fail(tag, f"nextLoc went from {self.prev_next_loc} to {cfg.next_loc}")
        self.prev_next_loc = cfg.next_loc

    def domains(self, cfg, tag):
        for cell in LOCATION_CELLS:
            for loc in getattr(cfg, cell):
                if not 0 <= loc < cfg.next_loc:
                    self.fail(tag, f"{cell} has location {loc} outside [0, {cfg.next_loc})")

    def references(self, cfg, tag):
        for l1, l2 in cfg.ref.items():
            if (l2 is None) != (cfg.ref_type.get(l1) is None):
                self.fail(tag, f"ref/refType disagree at {l1}")
            if l2 is not None and not l1 > l2:
                self.fail(tag, f"ref {l1} -> {l2} violates L1 > L2")

    def types(self, cfg, tag):
        elems = _array_spans(cfg)

        def type_of_loc(loc):
            return elems[loc] if loc in elems else cfg.type_env.get(loc)

        for loc, value in cfg.store.items():
            if value is BOTTOM or isinstance(value, CODE_VALUES):
                continue
            if loc in elems:
                declared = elems[loc]
            else:
                declared = cfg.type_env.get(loc)
            if declared is None:
                continue
            actual = get_type(value, type_of_loc)
            if actual != declared:
                self.fail(tag, f"store({loc}) = {value} has type {actual}, declared {declared}")

    def borrows(self, cfg, tag):
        for target, flag in cfg.borrow.items():
            if flag is None:
                continue
            live = _live_refs(cfg, target)
            if flag == 1:
                excl = [r for r in live if cfg.ref_type[r] == 1]
                if len(excl) != 1:
                    self.fail(tag, f"borrow({target}) = 1 but live exclusive refs are {excl}")
            elif flag == 0:
                bad = [r for r in live if cfg.ref_type[r] != 0]
                if bad:
                    self.fail(tag, f"borrow({target}) = 0 but {bad} are exclusive")

    def frames(self, cfg, tag):
        depth = len(cfg.fstack)
        if self.prev_depth is not None:
            delta = depth - self.prev_depth
            expected = 1 if tag == "Function-Call" else -1 if tag == "Return" else 0
            if delta != expected:
                self.fail(tag, f"fstack depth changed by {delta}, expected {expected}")
        self.prev_depth = depth


class MoveWatch:
    """Wraps the struct field accessors; a successful access through a moved owner is a violation."""

    def __init__(self, monkeypatch):
        self.violations = []
        self.accesses = 0
        read, write = machine.struct_field_read, machine.struct_field_write

        def owner_moved(cfg, var):
            loc = cfg.lookup_loc(var)
            return loc is not None and cfg.moved.get(loc) == 1

        def checked_read(cfg, var, field, span=None):
            moved_before = owner_moved(cfg, var)
            value = read(cfg, var, field, span)
            self.accesses += 1
            if moved_before:
                self.violations.append(f"read {var}.{field} after move")
            return value

        def checked_write(cfg, var, field, value, span=None, init=False):
            moved_before = owner_moved(cfg, var)
            write(cfg, var, field, value, span, init=init)
            self.accesses += 1
            if moved_before:
                self.violations.append(f"write {var}.{field} after move")

        monkeypatch.setattr(machine, "struct_field_read", checked_read)
        monkeypatch.setattr(machine, "struct_field_write", checked_write)


def check_program(source, max_steps=200_000):
    checker = StepChecker()
    out = run(parse_source(source), max_steps=max_steps, observer=checker)
    problems = list(checker.violations)
    if out.status == "ok":
        cfg = out.config
        if cfg.fstack or cfg.kont:
            problems.append("finished with a non-empty fstack or kont")
    return problems, out


def outcome_key(out):
    return (out.status, str(out.diagnostic), out.output, out.steps, tuple(out.trace))
