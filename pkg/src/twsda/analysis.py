"""Counting helpers, equivalence classes, shape predicates, cross-checks.

Everything here is exact integer or combinatorial work; no floating point
enters any reported value.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .machine import END, Machine
from .oracles import LanguageOracle
from .simulate import run
from .tree import GammaTree, TreeNode, WellFormednessViolation, action_is_legal


class BudgetExceeded(RuntimeError):
    """An enumeration visited more words than the caller allowed."""


# -- exact sequences and bounds ------------------------------------------------


def fibonacci(i: int) -> int:
    """The i-th Fibonacci number with f(1) = f(2) = 1."""
    if i < 1:
        raise ValueError("defined for i >= 1")
    a, b = 1, 1
    for _ in range(i - 1):
        a, b = b, a + b
    return a


def catalan(n: int) -> int:
    """The n-th Catalan number via the exact quotient recurrence.

    C(0) = 1 and C(k+1) = (4k+2)·C(k)/(k+2); the division is always exact.
    """
    if n < 0:
        raise ValueError("defined for n >= 0")
    c = 1
    for k in range(n):
        num = (4 * k + 2) * c
        assert num % (k + 2) == 0
        c = num // (k + 2)
    return c


def expo_moves(level: int) -> int:
    """Tour moves spent growing a complete binary tree from level 1 to `level`."""
    if level < 1:
        raise ValueError("defined for level >= 1")
    return 2 ** (level + 2) - 4 * level - 4


def fib_moves(level: int) -> int:
    """Tour moves spent growing a Fibonacci tree from level 1 to `level`."""
    if level < 1:
        raise ValueError("defined for level >= 1")
    return 2 * fibonacci(level + 4) - 4 * level - 6


def class_upper_bound(state_count: int, tree_symbol_count: int, ell: int) -> int:
    """Cap on the ℓ-equivalence classes a real-time machine can separate.

    Equals 2^(p·2^ℓ) for p = log2(states) + 4·(2 + log2(tree symbols + 1)),
    computed exactly as (states · 2^8 · (symbols+1)^4)^(2^ℓ).
    """
    if state_count < 1 or tree_symbol_count < 1 or ell < 1:
        raise ValueError("all arguments must be >= 1")
    base = state_count * 256 * (tree_symbol_count + 1) ** 4
    return base ** (2 ** ell)


# -- equivalence classes -------------------------------------------------------


def _extensions(alphabet: Sequence[str], ell: int) -> list[str]:
    out = [""]
    for length in range(1, ell + 1):
        out.extend("".join(p) for p in itertools.product(alphabet, repeat=length))
    return out


def l_equivalent(
    oracle: LanguageOracle, w1: str, w2: str, ell: int, extension_alphabet: Sequence[str]
) -> bool:
    """Whether no extension of length at most ℓ (λ included) separates w1, w2.

    ℓ = 0 is allowed as a degenerate case and compares membership only.
    """
    if ell < 0:
        raise ValueError("ell must be >= 0")
    member = oracle.membership
    return all(
        member(w1 + u) == member(w2 + u) for u in _extensions(extension_alphabet, ell)
    )


@dataclass(frozen=True)
class ClassPartition:
    ell: int
    classes: tuple[tuple[str, ...], ...]

    @property
    def count(self) -> int:
        return len(self.classes)


def count_classes(
    oracle: LanguageOracle,
    sample: Iterable[str],
    ell: int,
    extension_alphabet: Sequence[str],
) -> ClassPartition:
    """Partition `sample` into ℓ-equivalence classes with respect to `oracle`.

    Words are grouped by their membership signature over all extensions of
    length at most ℓ, so two words share a class exactly when they are
    ℓ-equivalent.  The class count lower-bounds the number of classes of
    the whole language.
    """
    exts = _extensions(extension_alphabet, ell)
    member = oracle.membership
    groups: dict[tuple, list[str]] = {}
    for word in sample:
        sig = tuple(member(word + u) for u in exts)
        groups.setdefault(sig, []).append(word)
    classes = sorted(
        (tuple(sorted(ws, key=lambda w: (len(w), w))) for ws in groups.values()),
        key=lambda c: (len(c[0]), c[0]),
    )
    return ClassPartition(ell, tuple(classes))


# -- tree shapes ---------------------------------------------------------------


def _complete_shape(node: TreeNode | None, level: int) -> bool:
    if node is None:
        return level == 0
    return (
        level >= 1
        and _complete_shape(node.left, level - 1)
        and _complete_shape(node.right, level - 1)
    )


def is_complete_binary(tree: GammaTree, level: int) -> bool:
    """Whether the tree is complete of the given level (level 0 is empty)."""
    if level == 0:
        return False  # a stored tree always has its root
    return _complete_shape(tree.root, level)


def _fib_shape(node: TreeNode | None, level: int) -> bool:
    if node is None:
        return level == 0
    if level == 1:
        return node.left is None and node.right is None
    if level < 1:
        return False
    return _fib_shape(node.left, level - 1) and _fib_shape(node.right, level - 2)


def is_fibonacci_tree(tree: GammaTree, level: int) -> bool:
    """Whether the tree has the recursive Fibonacci shape of the given level."""
    if level == 0:
        return False
    return _fib_shape(tree.root, level)


# -- exhaustive machine checks -------------------------------------------------


@dataclass(frozen=True)
class Mismatch:
    word: str
    machine_accepts: bool
    oracle_accepts: bool

    def __str__(self) -> str:
        return (
            f"word={self.word or 'λ'} machine="
            f"{'ACCEPT' if self.machine_accepts else 'REJECT'} oracle="
            f"{'ACCEPT' if self.oracle_accepts else 'REJECT'}"
        )


class _PrefixWalker:
    """Steps one real-time machine through the tree of input prefixes.

    Structural edits are undone on backtrack, so advancing or retreating
    by one symbol is O(1).  After the machine halts inside a prefix, the
    walker only counts depth: a deterministic machine that halted rejects
    every extension.
    """

    __slots__ = ("trans", "accepting", "tree", "node", "state", "dead", "_undo")

    def __init__(self, machine: Machine):
        if not machine.real_time:
            raise ValueError("prefix walking requires a real-time machine")
        self.trans = machine.transitions
        self.accepting = machine.accepting
        if machine.initial_tree is not None:
            self.tree = machine.initial_tree.clone()
            self.node = self.tree.node_at(machine.initial_pointer)
        else:
            self.tree = GammaTree()
            self.node = self.tree.root
        self.state = machine.start
        self.dead = 0
        self._undo: list = []

    def push(self, sym: str) -> None:
        if self.dead:
            self.dead += 1
            return
        node = self.node
        hit = self.trans.get(
            (
                self.state,
                sym,
                node.side,
                "-" if node.left is None else "+",
                "-" if node.right is None else "+",
                node.label,
            )
        )
        if hit is None:
            self.dead = 1
            return
        target, action = hit
        try:
            new_node, record = self.tree.apply_undoable(node, action)
        except WellFormednessViolation:
            self.dead = 1  # an aborted run also rejects every extension
            return
        self._undo.append((self.state, node, record))
        self.state = target
        self.node = new_node

    def pop(self) -> None:
        if self.dead:
            self.dead -= 1
            return
        state, node, record = self._undo.pop()
        self.tree.undo(record)
        self.state = state
        self.node = node

    def accepts_now(self) -> bool:
        """Would the endmarker arriving here leave the machine accepting?"""
        if self.dead:
            return False
        node = self.node
        hit = self.trans.get(
            (
                self.state,
                END,
                node.side,
                "-" if node.left is None else "+",
                "-" if node.right is None else "+",
                node.label,
            )
        )
        if hit is None:
            return False
        target, action = hit
        return target in self.accepting and action_is_legal(node, action)


def _require_char_symbols(machine: Machine) -> None:
    if any(len(s) != 1 for s in machine.input_alphabet):
        raise ValueError("prefix enumeration expects single-character symbols")


def _prefix_dfs(symbols, max_len, push, pop, visit):
    """Depth-first walk over all words up to `max_len`, with backtracking.

    `visit(word)` runs once per word, in length-then-lexicographic order
    along each branch, and returns whether the subtree below the word
    should be explored; `push`/`pop` advance and retreat the caller's
    machine state by one symbol.
    """
    if not visit("") or max_len == 0:
        return
    word: list[str] = []
    iterators = [iter(symbols)]
    while iterators:
        sym = next(iterators[-1], None)
        if sym is None:
            iterators.pop()
            if word:
                word.pop()
                pop()
            continue
        push(sym)
        word.append(sym)
        if visit("".join(word)) and len(word) < max_len:
            iterators.append(iter(symbols))
        else:
            word.pop()
            pop()


def cross_check(
    machine: Machine,
    oracle: LanguageOracle,
    max_len: int,
    budget: int | None = None,
    run_budget: int | float | None = None,
) -> list[Mismatch]:
    """Compare machine and oracle on every word up to `max_len`.

    For real-time machines the walk backtracks over the prefix tree
    instead of running each word from scratch.  A subtree is skipped only
    when the machine has already halted inside the prefix (so it rejects
    every extension) and the oracle's `viable_prefix` says no extension is
    ever a member; the two sides are then guaranteed to agree on the whole
    subtree.  `budget` caps the number of prefixes visited.  Machines with
    λ moves are checked word by word and need `run_budget`.
    """
    if sorted(machine.input_alphabet) != sorted(oracle.alphabet):
        raise ValueError(
            f"alphabets differ: machine {sorted(machine.input_alphabet)}, "
            f"oracle {sorted(oracle.alphabet)}"
        )
    _require_char_symbols(machine)
    symbols = sorted(machine.input_alphabet)
    if not machine.real_time:
        member = oracle.membership
        mismatches = []
        for visited, word in enumerate(_all_words(symbols, max_len)):
            if budget is not None and visited >= budget:
                raise BudgetExceeded(f"visited more than {budget} words")
            got = run(machine, word, budget=run_budget).accepted
            if got != member(word):
                mismatches.append(Mismatch(word, got, member(word)))
        return mismatches
    walker = _PrefixWalker(machine)
    viable = oracle.viable_prefix
    member = oracle.membership
    mismatches: list[Mismatch] = []
    visited = 0

    def visit(word: str) -> bool:
        nonlocal visited
        visited += 1
        if budget is not None and visited > budget:
            raise BudgetExceeded(f"visited more than {budget} prefixes")
        machine_accepts = walker.accepts_now()
        if machine_accepts != member(word):
            mismatches.append(Mismatch(word, machine_accepts, member(word)))
        return not (walker.dead and viable is not None and not viable(word))

    _prefix_dfs(symbols, max_len, walker.push, walker.pop, visit)
    return mismatches


def _all_words(symbols: Sequence[str], max_len: int):
    yield ""
    for length in range(1, max_len + 1):
        for parts in itertools.product(symbols, repeat=length):
            yield "".join(parts)


def enumerate_accepted(
    machine: Machine,
    max_len: int,
    budget: int | None = None,
    run_budget: int | float | None = None,
) -> list[str]:
    """All accepted words of length at most `max_len`, shortest first.

    Prefixes a real-time machine has died inside are skipped wholesale;
    `budget` caps the number of prefixes visited.  Machines with λ moves
    are run word by word and need `run_budget`.
    """
    _require_char_symbols(machine)
    symbols = sorted(machine.input_alphabet)
    if not machine.real_time:
        accepted = []
        for visited, word in enumerate(_all_words(symbols, max_len)):
            if budget is not None and visited >= budget:
                raise BudgetExceeded(f"visited more than {budget} words")
            if run(machine, word, budget=run_budget).accepted:
                accepted.append(word)
        return accepted
    walker = _PrefixWalker(machine)
    accepted: list[str] = []
    visited = 0

    def visit(word: str) -> bool:
        nonlocal visited
        visited += 1
        if budget is not None and visited > budget:
            raise BudgetExceeded(f"visited more than {budget} prefixes")
        if walker.accepts_now():
            accepted.append(word)
        return not walker.dead

    _prefix_dfs(symbols, max_len, walker.push, walker.pop, visit)
    accepted.sort(key=lambda w: (len(w), w))
    return accepted


def machines_agree(
    first: Machine, second: Machine, max_len: int, budget: int | None = None
) -> list[str]:
    """Words up to `max_len` on which the two machines disagree.

    Subtrees where both machines have halted are skipped: two halted
    deterministic machines reject every extension alike.
    """
    if sorted(first.input_alphabet) != sorted(second.input_alphabet):
        raise ValueError("machines have different alphabets")
    _require_char_symbols(first)
    symbols = sorted(first.input_alphabet)
    a, b = _PrefixWalker(first), _PrefixWalker(second)
    differ: list[str] = []
    visited = 0

    def push(sym: str) -> None:
        a.push(sym)
        b.push(sym)

    def pop() -> None:
        a.pop()
        b.pop()

    def visit(word: str) -> bool:
        nonlocal visited
        visited += 1
        if budget is not None and visited > budget:
            raise BudgetExceeded(f"visited more than {budget} prefixes")
        if a.accepts_now() != b.accepts_now():
            differ.append(word)
        return not (a.dead and b.dead)

    _prefix_dfs(symbols, max_len, push, pop, visit)
    return differ


def machine_oracle(machine: Machine, budget=None) -> LanguageOracle:
    """Wrap a machine as a membership predicate (one fresh run per word)."""

    def member(word: str) -> bool:
        return run(machine, word, budget=budget).accepted

    return LanguageOracle(machine.name, tuple(machine.input_alphabet), member)
