"""Closure operations on machines: complement, regular intersection, quotient."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .machine import (
    ANCESTRIES,
    END,
    FLAGS,
    LAMBDA,
    Machine,
    TransitionKey,
    validate,
)
from .simulate import Configuration, EndmarkerInInput, step
from .tree import ROOT_LABEL, STAY, WellFormednessViolation


class NotRealTime(ValueError):
    """The operation relies on the machine halting within |w|+1 steps."""


class AlphabetMismatch(ValueError):
    """Two combined acceptors read different alphabets."""


class PrefixKillsMachine(ValueError):
    """The machine halted or aborted while consuming the quotient prefix."""


# -- deterministic finite automata --------------------------------------------


@dataclass(frozen=True)
class Dfa:
    """A total DFA used as the regular side of products and as an oracle."""

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transition: dict
    start: str
    accepting: frozenset

    def __post_init__(self):
        for q in self.states:
            for sym in self.alphabet:
                if (q, sym) not in self.transition:
                    raise ValueError(f"transition not total: missing ({q!r}, {sym!r})")


def dfa_run(dfa: Dfa, word: Sequence[str]) -> bool:
    state = dfa.start
    for sym in word:
        state = dfa.transition[(state, sym)]
    return state in dfa.accepting


# -- complement ----------------------------------------------------------------


def _consistent_shapes(tree_alphabet):
    for anc in ANCESTRIES:
        labels = (ROOT_LABEL,) if anc == "-" else tuple(tree_alphabet)
        for label in labels:
            for hl in FLAGS:
                for hr in FLAGS:
                    yield anc, hl, hr, label


def complement(machine: Machine) -> Machine:
    """Machine accepting exactly the words `machine` does not accept.

    Real time makes every run halt by itself, so it suffices to route every
    undefined lookup into a sink state that consumes the rest of the input,
    and then to flip which states accept.  Assumes runs of `machine` never
    abort on an illegal action, which holds for all shipped machines.
    """
    if not machine.real_time:
        raise NotRealTime("complement is defined for real-time machines")
    sink = "sink"
    while sink in machine.states:
        sink += "+"
    transitions = dict(machine.transitions)
    for state in machine.states + (sink,):
        for sym in machine.input_alphabet + (END,):
            for anc, hl, hr, label in _consistent_shapes(machine.tree_alphabet):
                key = TransitionKey(state, sym, anc, hl, hr, label)
                if key not in transitions:
                    transitions[key] = (sink, STAY)
    accepting = frozenset(set(machine.states) - machine.accepting) | {sink}
    result = Machine(
        name=f"non-{machine.name}",
        states=machine.states + (sink,),
        input_alphabet=machine.input_alphabet,
        tree_alphabet=machine.tree_alphabet,
        transitions=transitions,
        start=machine.start,
        accepting=accepting,
        real_time=True,
        non_erasing=machine.non_erasing,
        initial_tree=machine.initial_tree,
        initial_pointer=machine.initial_pointer,
    )
    assert not validate(result)
    return result


# -- intersection with a regular language --------------------------------------


def intersect_regular(machine: Machine, dfa: Dfa) -> Machine:
    """Product machine accepting L(machine) ∩ L(dfa).

    The DFA advances on consumed input symbols only: λ moves and the
    endmarker leave its component unchanged.
    """
    if sorted(machine.input_alphabet) != sorted(dfa.alphabet):
        raise AlphabetMismatch(
            f"machine reads {sorted(machine.input_alphabet)}, "
            f"DFA reads {sorted(dfa.alphabet)}"
        )

    def pair(q: str, p: str) -> str:
        return f"{q}&{p}"

    transitions = {}
    for key in machine.transitions:
        target, action = machine.transitions[key]
        for p in dfa.states:
            p2 = dfa.transition[(p, key.symbol)] if key.symbol in dfa.alphabet else p
            new_key = TransitionKey(
                pair(key.state, p), key.symbol, key.ancestry,
                key.has_left, key.has_right, key.label,
            )
            transitions[new_key] = (pair(target, p2), action)
    result = Machine(
        name=f"{machine.name}&dfa",
        states=tuple(pair(q, p) for q in machine.states for p in dfa.states),
        input_alphabet=machine.input_alphabet,
        tree_alphabet=machine.tree_alphabet,
        transitions=transitions,
        start=pair(machine.start, dfa.start),
        accepting=frozenset(
            pair(q, p) for q in machine.accepting for p in dfa.accepting
        ),
        real_time=machine.real_time,
        non_erasing=machine.non_erasing,
        initial_tree=machine.initial_tree,
        initial_pointer=machine.initial_pointer,
    )
    assert not validate(result)
    return result


# -- left quotient by a fixed word ---------------------------------------------


def left_quotient(machine: Machine, prefix: Sequence[str], budget=None) -> Machine:
    """Machine accepting { u | prefix·u ∈ L(machine) }.

    Runs `machine` over `prefix` (without ever offering the endmarker) and
    freezes the reached configuration as the new machine's starting state
    and storage.  Raises PrefixKillsMachine when the machine halts or
    aborts before the prefix is consumed: every quotient word would be
    rejected anyway, and no single frozen configuration can express that.
    """
    for sym in prefix:
        if sym in (END, LAMBDA):
            raise EndmarkerInInput(f"prefix may not contain {sym!r}")
        if sym not in machine.input_alphabet:
            raise ValueError(f"symbol {sym!r} not in the input alphabet")
    if budget is None:
        if not machine.real_time:
            raise ValueError("machine is not real-time: pass an explicit step budget")
        budget = len(prefix)

    # The loop stops before the prefix is exhausted, so the stepper never
    # offers the endmarker: it belongs after the quotient word instead.
    config = Configuration(machine, prefix)
    steps = 0
    while config.pos < len(prefix):
        if steps >= budget:
            raise ValueError(f"prefix not consumed within {budget} steps")
        try:
            advanced = step(machine, config)
        except WellFormednessViolation as exc:
            raise PrefixKillsMachine(f"machine aborted inside the prefix: {exc}")
        if advanced is None:
            raise PrefixKillsMachine(
                f"machine halted in state {config.state!r} after consuming "
                f"{config.pos} of {len(prefix)} prefix symbols"
            )
        steps += 1

    shown = "".join(prefix) if all(len(s) == 1 for s in prefix) else "|".join(prefix)
    result = machine.replace(
        name=f"{machine.name}-after-{shown or 'λ'}",
        start=config.state,
        initial_tree=config.tree,
        initial_pointer=config.path,
    )
    assert not validate(result)
    return result
