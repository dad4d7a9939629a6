"""Line-oriented machine description files.

Grammar ('#' starts a comment, blank lines ignored):

    alphabet: <sym> ...
    tree-symbols: <sym> ...
    start: <state>
    accept: <state> ...
    realtime: true|false
    nonerasing: true|false
    initial-pointer: <path over l/r>          (optional)
    initial-tree: (<label> <tree> <tree>)      (optional, '.' = no child)
    trans <state> <in> (<anc>,<hl>,<hr>) <label> -> <state> <action>

`<in>` is an alphabet symbol, `lambda`, or `END`; `<anc>` one of - l r *;
`<hl>`/`<hr>` one of - + *; `<label>` a tree symbol, `ROOT`, or `*`; the
action one of up, stay, down-l, down-r, pop, or `push <sym> l|r`.  A `*`
expands to every consistent concrete value; on overlap, rows with more
concrete fields win, and equally specific disagreeing rows are an error.

Symbols are whitespace-separated tokens.  A few non-ASCII symbols have
fixed ASCII spellings used in files and spaced word arguments:

    dot → •   cent → ¢   b0 → ⊳   b1 → ▷   b2 → ▶
    alpha0..alpha3 → 0..3   aprime → A   bprime → B
"""
from __future__ import annotations

from dataclasses import dataclass

from .machine import (
    END,
    LAMBDA,
    Machine,
    SpecificityConflict,
    TransitionRow,
    expand_rows,
    machine_from_rows,
    validate,
)
from .tree import DOWN_L, DOWN_R, GammaTree, POP, ROOT_LABEL, STAY, UP, push

FILE_TO_SYMBOL = {
    "dot": "•",
    "cent": "¢",
    "b0": "⊳",
    "b1": "▷",
    "b2": "▶",
    "alpha0": "0",
    "alpha1": "1",
    "alpha2": "2",
    "alpha3": "3",
    "aprime": "A",
    "bprime": "B",
}
SYMBOL_TO_FILE = {v: k for k, v in FILE_TO_SYMBOL.items()}

RESERVED_TOKENS = {"lambda", "END", "ROOT", "*", "->", "trans", "."}

_DIRECTIVES = (
    "alphabet",
    "tree-symbols",
    "start",
    "accept",
    "realtime",
    "nonerasing",
    "initial-pointer",
    "initial-tree",
)


@dataclass(frozen=True)
class Diagnostic:
    line: int | None
    kind: str
    message: str

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{where}{self.kind}: {self.message}"


class MachineFileError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


def resolve_symbol(token: str) -> str:
    return FILE_TO_SYMBOL.get(token, token)


def render_symbol(symbol: str) -> str:
    return SYMBOL_TO_FILE.get(symbol, symbol)


def parse_word(text: str):
    """A word argument: spaced symbol tokens, or one character per symbol.

    'λ' (or an empty string) is the empty word.  In the spaced form the
    ASCII spellings above are applied per token; multi-character tokens
    that are not spellings are taken as whole symbols.
    """
    if text in ("", "λ", "lambda"):
        return ""
    if any(c.isspace() for c in text):
        symbols = [resolve_symbol(t) for t in text.split()]
        if all(len(s) == 1 for s in symbols):
            return "".join(symbols)
        return tuple(symbols)
    return text


def format_word(word) -> str:
    return "".join(word) if word else "λ"


def _parse_action(tokens: list[str]):
    plain = {"up": UP, "stay": STAY, "down-l": DOWN_L, "down-r": DOWN_R, "pop": POP}
    if len(tokens) == 1 and tokens[0] in plain:
        return plain[tokens[0]]
    if len(tokens) == 3 and tokens[0] == "push" and tokens[2] in ("l", "r"):
        return push(resolve_symbol(tokens[1]), tokens[2])
    raise ValueError(f"bad action {' '.join(tokens)!r}")


def _format_action(action: tuple) -> str:
    if action[0] == "push":
        return f"push {render_symbol(action[1])} {action[2]}"
    return action[0]


def parse_machine(text: str, name: str = "machine") -> Machine:
    """Parse a machine file; raises MachineFileError with every problem found.

    The returned machine always passes `validate`.
    """
    problems: list[Diagnostic] = []
    directives: dict[str, tuple[int, str]] = {}
    trans_lines: list[tuple[int, list[str]]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.split(maxsplit=1)[0] == "trans":
            trans_lines.append((lineno, line.split()))
            continue
        head, sep, rest = line.partition(":")
        if sep == ":" and head in _DIRECTIVES:
            if head in directives:
                problems.append(Diagnostic(lineno, "syntax", f"duplicate directive {head!r}"))
            else:
                directives[head] = (lineno, rest.strip())
        else:
            problems.append(Diagnostic(lineno, "syntax", f"unrecognized line {line!r}"))

    for required in _DIRECTIVES[:6]:
        if required not in directives:
            problems.append(Diagnostic(None, "syntax", f"missing directive {required!r}"))
    if problems:
        raise MachineFileError(problems)

    def symbols_of(directive: str) -> list[str]:
        lineno, rest = directives[directive]
        out = []
        for token in rest.split():
            if token in RESERVED_TOKENS:
                problems.append(
                    Diagnostic(lineno, "syntax", f"{token!r} is reserved and cannot be a symbol")
                )
                continue
            symbol = resolve_symbol(token)
            if symbol in out:
                problems.append(
                    Diagnostic(lineno, "syntax", f"symbol {token!r} declared twice")
                )
                continue
            out.append(symbol)
        return out

    alphabet = symbols_of("alphabet")
    tree_symbols = symbols_of("tree-symbols")
    if ROOT_LABEL in tree_symbols:
        problems.append(Diagnostic(directives["tree-symbols"][0], "syntax", "ROOT label is implicit"))
    start = directives["start"][1].strip()
    if not start or len(start.split()) != 1:
        problems.append(
            Diagnostic(directives["start"][0], "syntax", "start takes exactly one state")
        )
        start = start.split()[0] if start else "?"
    accepting = directives["accept"][1].split()

    flags = {}
    for key in ("realtime", "nonerasing"):
        lineno, rest = directives[key]
        if rest not in ("true", "false"):
            problems.append(Diagnostic(lineno, "syntax", f"{key} must be true or false"))
            rest = "true"
        flags[key] = rest == "true"

    initial_tree = None
    initial_pointer = ""
    if "initial-tree" in directives:
        lineno, rest = directives["initial-tree"]
        try:
            initial_tree = GammaTree.from_snapshot(
                rest, resolve=lambda t: ROOT_LABEL if t == "ROOT" else resolve_symbol(t)
            )
        except ValueError as exc:
            problems.append(Diagnostic(lineno, "syntax", str(exc)))
    if "initial-pointer" in directives:
        lineno, rest = directives["initial-pointer"]
        pointer = "" if rest == "." else rest
        if set(pointer) - {"l", "r"}:
            problems.append(Diagnostic(lineno, "syntax", f"bad pointer path {rest!r}"))
        else:
            initial_pointer = pointer

    alphaset = set(alphabet)
    labelset = set(tree_symbols)
    rows: list[TransitionRow] = []
    for lineno, tokens in trans_lines:
        if len(tokens) < 8 or tokens[5] != "->":
            problems.append(
                Diagnostic(
                    lineno,
                    "syntax",
                    "expected: trans <state> <in> (<anc>,<hl>,<hr>) <label> -> <state> <action>",
                )
            )
            continue
        _, state, in_tok, type_tok, label_tok, _, target = tokens[:7]
        if in_tok == "lambda":
            symbol = LAMBDA
        elif in_tok == "END":
            symbol = END
        else:
            symbol = resolve_symbol(in_tok)
            if symbol not in alphaset:
                problems.append(
                    Diagnostic(lineno, "unknown-symbol", f"input symbol {in_tok!r} not in alphabet")
                )
                continue
        if not (type_tok.startswith("(") and type_tok.endswith(")")):
            problems.append(Diagnostic(lineno, "syntax", f"bad node type {type_tok!r}"))
            continue
        fields = type_tok[1:-1].split(",")
        if (
            len(fields) != 3
            or fields[0] not in ("-", "l", "r", "*")
            or fields[1] not in ("-", "+", "*")
            or fields[2] not in ("-", "+", "*")
        ):
            problems.append(Diagnostic(lineno, "syntax", f"bad node type {type_tok!r}"))
            continue
        if label_tok == "ROOT":
            label = ROOT_LABEL
        elif label_tok == "*":
            label = "*"
        else:
            label = resolve_symbol(label_tok)
            if label not in labelset:
                problems.append(
                    Diagnostic(lineno, "unknown-symbol", f"tree symbol {label_tok!r} not declared")
                )
                continue
        try:
            action = _parse_action(tokens[7:])
        except ValueError as exc:
            problems.append(Diagnostic(lineno, "syntax", str(exc)))
            continue
        if action[0] == "push" and action[1] not in labelset:
            problems.append(
                Diagnostic(lineno, "unknown-symbol", f"push of undeclared tree symbol {tokens[8]!r}")
            )
            continue
        rows.append(
            TransitionRow(state, symbol, fields[0], fields[1], fields[2], label, target, action, lineno)
        )

    mentioned = {start} | {row.state for row in rows} | {row.target for row in rows}
    for state in accepting:
        if state not in mentioned:
            problems.append(
                Diagnostic(
                    directives["accept"][0],
                    "unknown-state",
                    f"accepting state {state!r} appears in no transition",
                )
            )
    for row in rows:
        if not expand_rows([row], tree_symbols):
            problems.append(
                Diagnostic(
                    row.origin,
                    "inconsistent-shape",
                    "row matches no node: the root is exactly the ROOT-labeled node",
                )
            )
    if problems:
        raise MachineFileError(problems)

    try:
        expand_rows(rows, tree_symbols)
    except SpecificityConflict as exc:
        raise MachineFileError([Diagnostic(exc.second.origin, "specificity-conflict", str(exc))])

    machine = machine_from_rows(
        name,
        alphabet,
        tree_symbols,
        start,
        accepting,
        rows,
        real_time=flags["realtime"],
        non_erasing=flags["nonerasing"],
        initial_tree=initial_tree,
        initial_pointer=initial_pointer,
    )
    violations = validate(machine)
    if violations:
        raise MachineFileError([Diagnostic(None, v.kind, v.message) for v in violations])
    return machine


def export_machine(machine: Machine) -> str:
    """Deterministic file form; reparsing yields a structurally equal machine.

    Wildcards are not reconstructed: every concrete table entry becomes one
    line.  Accepting states mentioned in no transition are dropped: the
    file format derives states from usage, and such states are unreachable
    anyway.
    """
    mentioned = {machine.start}
    for key, (target, _) in machine.transitions.items():
        mentioned.add(key.state)
        mentioned.add(target)
    out = [
        "alphabet: " + " ".join(render_symbol(s) for s in machine.input_alphabet),
        "tree-symbols: " + " ".join(render_symbol(s) for s in machine.tree_alphabet),
        f"start: {machine.start}",
        "accept: " + " ".join(sorted(machine.accepting & mentioned)),
        f"realtime: {'true' if machine.real_time else 'false'}",
        f"nonerasing: {'true' if machine.non_erasing else 'false'}",
    ]
    if machine.initial_tree is not None:
        if machine.initial_pointer:
            out.append(f"initial-pointer: {machine.initial_pointer}")
        out.append(
            "initial-tree: "
            + machine.initial_tree.snapshot(
                render=lambda lab: "ROOT" if lab == ROOT_LABEL else render_symbol(lab)
            )
        )
    def symbol_token(symbol: str) -> str:
        if symbol == LAMBDA:
            return "lambda"
        if symbol == END:
            return "END"
        return render_symbol(symbol)

    def label_token(label: str) -> str:
        return "ROOT" if label == ROOT_LABEL else render_symbol(label)

    keys = sorted(
        machine.transitions,
        key=lambda k: (k.state, symbol_token(k.symbol), k.ancestry,
                       k.has_left, k.has_right, label_token(k.label)),
    )
    for key in keys:
        target, action = machine.transitions[key]
        out.append(
            f"trans {key.state} {symbol_token(key.symbol)} "
            f"({key.ancestry},{key.has_left},{key.has_right}) {label_token(key.label)} "
            f"-> {target} {_format_action(action)}"
        )
    return "\n".join(out) + "\n"
