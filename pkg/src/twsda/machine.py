"""Machine descriptions: transition tables, wildcard rows, validation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .tree import ROOT_LABEL, GammaTree, format_action

LAMBDA = "λ"
END = "⋗"

ANCESTRIES = ("-", "l", "r")
FLAGS = ("-", "+")


class TransitionKey(NamedTuple):
    """Fully concrete lookup key of the transition function."""

    state: str
    symbol: str  # input symbol, LAMBDA or END
    ancestry: str
    has_left: str
    has_right: str
    label: str  # tree symbol or ROOT_LABEL


@dataclass
class TransitionRow:
    """One table entry before wildcard expansion.

    `ancestry`, `has_left`, `has_right` and `label` may be '*'.  `origin`
    is a source line number when the row came from a machine file.
    """

    state: str
    symbol: str
    ancestry: str
    has_left: str
    has_right: str
    label: str
    target: str
    action: tuple
    origin: int | None = None

    @property
    def specificity(self) -> int:
        return sum(f != "*" for f in (self.ancestry, self.has_left, self.has_right, self.label))

    def describe(self) -> str:
        where = f" (line {self.origin})" if self.origin is not None else ""
        return (
            f"{self.state} {self.symbol} ({self.ancestry},{self.has_left},"
            f"{self.has_right}) {self.label} -> {self.target} "
            f"{format_action(self.action)}{where}"
        )


class SpecificityConflict(ValueError):
    """Two overlapping rows of equal specificity disagree."""

    def __init__(self, key: TransitionKey, first: TransitionRow, second: TransitionRow):
        self.key = key
        self.first = first
        self.second = second
        super().__init__(
            f"rows [{first.describe()}] and [{second.describe()}] both match "
            f"{tuple(key)} with equal specificity but different outcomes"
        )


def expand_rows(rows: Iterable[TransitionRow], tree_alphabet: Iterable[str]):
    """Expand wildcard rows into a concrete transition table.

    A more specific row (more concrete fields) overrides a more general one
    on the keys they share; two equally specific rows that disagree on a
    key conflict unless an even more specific row decides that key.  The
    result is independent of row order.  Only consistent keys are
    generated: the root is exactly the ⊥-labeled node, so ancestry '-'
    pairs only with label ⊥.
    """
    labels = tuple(tree_alphabet) + (ROOT_LABEL,)
    table: dict[TransitionKey, tuple[str, tuple]] = {}
    chosen: dict[TransitionKey, TransitionRow] = {}
    conflicts: dict[TransitionKey, tuple[TransitionRow, TransitionRow]] = {}
    for row in rows:
        ancs = ANCESTRIES if row.ancestry == "*" else (row.ancestry,)
        hls = FLAGS if row.has_left == "*" else (row.has_left,)
        hrs = FLAGS if row.has_right == "*" else (row.has_right,)
        labs = labels if row.label == "*" else (row.label,)
        rhs = (row.target, row.action)
        for anc in ancs:
            for lab in labs:
                if (anc == "-") != (lab == ROOT_LABEL):
                    continue
                for hl in hls:
                    for hr in hrs:
                        key = TransitionKey(row.state, row.symbol, anc, hl, hr, lab)
                        prev = chosen.get(key)
                        if prev is None or row.specificity > prev.specificity:
                            chosen[key] = row
                            table[key] = rhs
                            conflicts.pop(key, None)
                        elif row.specificity == prev.specificity and table[key] != rhs:
                            conflicts.setdefault(key, (prev, row))
    if conflicts:
        key = min(conflicts)
        raise SpecificityConflict(key, *conflicts[key])
    return table


@dataclass(frozen=True, eq=False)
class Machine:
    """A deterministic tree-walking-storage machine.

    Immutable after construction; safe to share across concurrent runs.
    `initial_tree`/`initial_pointer` override the default single-root
    starting storage (used by the left-quotient combinator); runs always
    clone the initial tree.
    """

    name: str
    states: tuple[str, ...]
    input_alphabet: tuple[str, ...]
    tree_alphabet: tuple[str, ...]
    transitions: dict
    start: str
    accepting: frozenset
    real_time: bool
    non_erasing: bool
    initial_tree: GammaTree | None = None
    initial_pointer: str = ""

    def replace(self, **changes) -> "Machine":
        fields = {
            "name": self.name,
            "states": self.states,
            "input_alphabet": self.input_alphabet,
            "tree_alphabet": self.tree_alphabet,
            "transitions": self.transitions,
            "start": self.start,
            "accepting": self.accepting,
            "real_time": self.real_time,
            "non_erasing": self.non_erasing,
            "initial_tree": self.initial_tree,
            "initial_pointer": self.initial_pointer,
        }
        fields.update(changes)
        return Machine(**fields)


def machine_from_rows(
    name: str,
    input_alphabet: Iterable[str],
    tree_alphabet: Iterable[str],
    start: str,
    accepting: Iterable[str],
    rows: Iterable[TransitionRow],
    real_time: bool,
    non_erasing: bool,
    initial_tree: GammaTree | None = None,
    initial_pointer: str = "",
) -> Machine:
    """Build a Machine, collecting states in first-appearance order."""
    rows = list(rows)
    states: list[str] = [start]
    for row in rows:
        for st in (row.state, row.target):
            if st not in states:
                states.append(st)
    for st in accepting:
        if st not in states:
            states.append(st)
    return Machine(
        name=name,
        states=tuple(states),
        input_alphabet=tuple(input_alphabet),
        tree_alphabet=tuple(tree_alphabet),
        transitions=expand_rows(rows, tree_alphabet),
        start=start,
        accepting=frozenset(accepting),
        real_time=real_time,
        non_erasing=non_erasing,
        initial_tree=initial_tree,
        initial_pointer=initial_pointer,
    )


# -- validation --------------------------------------------------------------

DETERMINISM_CONFLICT = "determinism-conflict"
REAL_TIME_VIOLATION = "real-time-violation"
NON_ERASING_VIOLATION = "non-erasing-violation"
UNKNOWN_STATE = "unknown-state"
UNKNOWN_SYMBOL = "unknown-symbol"
BAD_INITIAL_CONFIG = "bad-initial-config"


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def validate(machine: Machine) -> list[Violation]:
    """Diagnose a machine; an empty list means it is well put together.

    Reports λ/symbol determinism conflicts, λ rules in real-time machines,
    pops in non-erasing machines, and references to unknown states or
    symbols.  Dynamic properties (actions staying legal along every run)
    are enforced by the simulator instead.
    """
    out: list[Violation] = []
    states = set(machine.states)
    inputs = set(machine.input_alphabet)
    labels = set(machine.tree_alphabet) | {ROOT_LABEL}

    if machine.start not in states:
        out.append(Violation(UNKNOWN_STATE, f"start state {machine.start!r} not among states"))
    for st in sorted(machine.accepting):
        if st not in states:
            out.append(Violation(UNKNOWN_STATE, f"accepting state {st!r} not among states"))
    if ROOT_LABEL in machine.tree_alphabet:
        out.append(Violation(UNKNOWN_SYMBOL, f"tree alphabet may not contain the reserved root label {ROOT_LABEL}"))

    lambda_slots = set()
    symbol_slots = {}
    for key in machine.transitions:
        if key.symbol == LAMBDA:
            lambda_slots.add((key.state, key.ancestry, key.has_left, key.has_right, key.label))
        else:
            symbol_slots.setdefault(
                (key.state, key.ancestry, key.has_left, key.has_right, key.label), []
            ).append(key.symbol)

    for key in sorted(machine.transitions):
        target, action = machine.transitions[key]
        if key.state not in states:
            out.append(Violation(UNKNOWN_STATE, f"transition from unknown state {key.state!r}"))
        if target not in states:
            out.append(Violation(UNKNOWN_STATE, f"transition to unknown state {target!r}"))
        if key.symbol not in inputs and key.symbol not in (LAMBDA, END):
            out.append(Violation(UNKNOWN_SYMBOL, f"transition reads unknown symbol {key.symbol!r}"))
        if key.label not in labels:
            out.append(Violation(UNKNOWN_SYMBOL, f"transition keyed on unknown tree symbol {key.label!r}"))
        if action[0] == "push" and action[1] not in machine.tree_alphabet:
            out.append(Violation(UNKNOWN_SYMBOL, f"push of unknown tree symbol {action[1]!r}"))
        if key.symbol == LAMBDA and machine.real_time:
            out.append(
                Violation(REAL_TIME_VIOLATION, f"λ rule {tuple(key)} in a machine flagged realtime")
            )
        if action[0] == "pop" and machine.non_erasing:
            out.append(
                Violation(NON_ERASING_VIOLATION, f"pop rule {tuple(key)} in a machine flagged nonerasing")
            )

    for slot in sorted(lambda_slots):
        symbols = symbol_slots.get(slot)
        if symbols:
            state, anc, hl, hr, label = slot
            out.append(
                Violation(
                    DETERMINISM_CONFLICT,
                    f"state {state!r} at ({anc},{hl},{hr})/{label} has both a λ rule "
                    f"and rules on {sorted(symbols)}",
                )
            )

    if machine.initial_tree is not None:
        tree = machine.initial_tree
        try:
            tree.check_invariants()
        except AssertionError as exc:
            out.append(Violation(BAD_INITIAL_CONFIG, f"initial tree is inconsistent: {exc}"))
        else:
            for path in tree.paths():
                if path and tree.label_at(path) not in machine.tree_alphabet:
                    out.append(
                        Violation(
                            BAD_INITIAL_CONFIG,
                            f"initial tree node '{path}' labeled {tree.label_at(path)!r} "
                            "outside the tree alphabet",
                        )
                    )
        if not tree.has(machine.initial_pointer):
            out.append(
                Violation(
                    BAD_INITIAL_CONFIG,
                    f"initial pointer '{machine.initial_pointer or 'λ'}' not in the initial tree",
                )
            )
    elif machine.initial_pointer:
        out.append(
            Violation(BAD_INITIAL_CONFIG, "initial pointer given without an initial tree")
        )
    return out
