"""Single-tape Turing machines: a reference interpreter and a
compilation to monomer rules.

The compiled form keeps the tape as a rigid row of monomers, one cell
per monomer.  The head is not a separate monomer: the cell currently
under the head carries a combined state ``h.q.sym``; all other cells
carry ``t.sym``.  Each transition becomes one rule per possible
neighbouring symbol, plus a growth rule that appends a blank cell when
the head walks off either end.  Exactly one rule is applicable at any
time, so the simulation is deterministic and takes one event per machine
step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..model import Bond, Configuration
from ..rules import RuleSet, make_rule
from .program import Program

BLANK = "_"


@dataclass
class TMSpec:
    """Deterministic machine: delta[(state, symbol)] = (state', symbol',
    'L'|'R').  Halts on reaching accept or reject."""
    start: str
    accept: str
    reject: str
    delta: dict = field(default_factory=dict)

    @property
    def halting(self) -> set[str]:
        return {self.accept, self.reject}

    def alphabet(self) -> set[str]:
        syms = {BLANK}
        for (_, a), (_, a2, _) in self.delta.items():
            syms.add(a)
            syms.add(a2)
        return syms

    def states(self) -> set[str]:
        qs = {self.start, self.accept, self.reject}
        for (q, _), (q2, _, _) in self.delta.items():
            qs.add(q)
            qs.add(q2)
        return qs


@dataclass
class TMResult:
    accepted: bool
    steps: int
    tape: dict          # cell index -> symbol (blanks omitted)
    head: int
    state: str


def run_machine(tm: TMSpec, tape_input: str, max_steps: int = 100_000) -> TMResult:
    """Reference interpreter on a two-way infinite tape."""
    tape = {i: s for i, s in enumerate(tape_input) if s != BLANK}
    head = 0
    q = tm.start
    steps = 0
    while q not in tm.halting:
        if steps >= max_steps:
            raise RuntimeError(f"no halt within {max_steps} steps")
        sym = tape.get(head, BLANK)
        if (q, sym) not in tm.delta:
            raise RuntimeError(f"machine stuck: no transition for {(q, sym)}")
        q, sym2, mv = tm.delta[(q, sym)]
        if sym2 == BLANK:
            tape.pop(head, None)
        else:
            tape[head] = sym2
        head += 1 if mv == "R" else -1
        steps += 1
    return TMResult(q == tm.accept, steps, tape, head, q)


def _cell(sym: str) -> str:
    return f"t.{sym}"


def _head(q: str, sym: str) -> str:
    return f"h.{q}.{sym}"


def emit_tm_rules(rules: list, tm: TMSpec, alphabet, fwd: str = "+x") -> None:
    """Append the rules simulating ``tm`` on a rigid row of tape cells.
    ``fwd`` is the direction of increasing cell index.  The machine must
    never move left of cell 0: the tape can only grow at the far end."""
    for (q, sym), (q2, sym2, mv) in sorted(tm.delta.items()):
        if mv == "R":
            # head hands itself to the next cell
            for nxt in sorted(alphabet):
                rules.append(make_rule(
                    _head(q, sym), _cell(nxt), "r", fwd,
                    _cell(sym2), _head(q2, nxt), "r", fwd))
            rules.append(make_rule(
                _head(q, sym), None, "n", fwd,
                _cell(sym2), _head(q2, BLANK), "r", fwd))
        else:
            for nxt in sorted(alphabet):
                rules.append(make_rule(
                    _cell(nxt), _head(q, sym), "r", fwd,
                    _head(q2, nxt), _cell(sym2), "r", fwd))
            rules.append(make_rule(
                None, _head(q, sym), "n", fwd,
                _head(q2, BLANK), _cell(sym2), "r", fwd))


def turing_machine(tm: TMSpec, tape_input: str,
                   extra_symbols=()) -> Program:
    """Compile a machine plus input into a monomer program.

    The terminal configuration holds the final tape with the halted head
    state embedded in the head cell.
    """
    alphabet = tm.alphabet() | set(tape_input) | set(extra_symbols)
    rules = []
    emit_tm_rules(rules, tm, alphabet)
    initial = Configuration()
    cells = tape_input if tape_input else BLANK
    for i, sym in enumerate(cells):
        state = _head(tm.start, sym) if i == 0 else _cell(sym)
        initial.add_monomer((i, 0), state)
        if i:
            initial.set_bond((i - 1, 0), (i, 0), Bond.RIGID)
    return Program("tm", RuleSet(rules), initial,
                   metadata={"input": tape_input})


def terminal_to_result(tm: TMSpec, config: Configuration) -> TMResult:
    """Decode a halted compiled machine back to tape/state/head."""
    head = None
    state = None
    tape = {}
    for (x, y), s in sorted(config.monomers.items()):
        if s.startswith("h."):
            _, q, sym = s.split(".", 2)
            head, state = x, q
            if sym != BLANK:
                tape[x] = sym
        else:
            sym = s.split(".", 1)[1]
            if sym != BLANK:
                tape[x] = sym
    assert head is not None and state in tm.halting
    return TMResult(state == tm.accept, -1, tape, head, state)
