"""Direct membership predicates for the witness languages.

Each oracle is a total predicate on words, written straight from the
language definition and independent of any machine.  Oracles used in
exhaustive machine cross-checks also expose `viable_prefix`: whether some
extension of a word (of any length) belongs to the language.  That lets
the checker skip subtrees where a halted machine and a hopeless prefix
are guaranteed to keep agreeing.

Words are plain strings; every symbol is one character:

    a b $            letters and padding
    ¢                separator before a skimmed stretch
    ⊳ ▷ ▶            query markers of the three dictionary/palindrome languages
    0 1 2 3          the four block symbols with two-letter images
    A B              primed letters
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

CENT = "¢"
MARK = "⊳"
MARK1 = "▷"
MARK2 = "▶"

BLOCK_IMAGE = {"0": "aa", "1": "ab", "2": "ba", "3": "bb"}
PRIMED_IMAGE = {"0": "AA", "1": "AB", "2": "BA", "3": "BB"}
UNPRIME = {"A": "a", "B": "b"}


@dataclass(frozen=True)
class LanguageOracle:
    """A named alphabet plus a total membership predicate."""

    name: str
    alphabet: tuple[str, ...]
    membership: Callable[[str], bool]
    viable_prefix: Callable[[str], bool] | None = None

    def __call__(self, word: str) -> bool:
        return self.membership(word)


def pair_expand(word: str) -> str | None:
    """Image under the block homomorphism 0↦aa, 1↦ab, 2↦ba, 3↦bb."""
    try:
        return "".join(BLOCK_IMAGE[c] for c in word)
    except KeyError:
        return None


def pair_encode(word: str) -> str | None:
    """Preimage under the block homomorphism, for even words over {a, b}."""
    if len(word) % 2 or any(c not in "ab" for c in word):
        return None
    rev = {v: k for k, v in BLOCK_IMAGE.items()}
    return "".join(rev[word[i : i + 2]] for i in range(0, len(word), 2))


def unprime(word: str) -> str | None:
    """Image of a primed word under A↦a, B↦b."""
    try:
        return "".join(UNPRIME[c] for c in word)
    except KeyError:
        return None


def prime_expand(word: str) -> str:
    """Image under 0↦AA, 1↦AB, 2↦BA, 3↦BB and identity on other symbols."""
    return "".join(PRIMED_IMAGE.get(c, c) for c in word)


# -- unary languages ----------------------------------------------------------


def oracle_expo() -> LanguageOracle:
    def member(w: str) -> bool:
        n = len(w)
        return n >= 1 and n & (n - 1) == 0 and set(w) <= {"a"}

    return LanguageOracle("expo", ("a",), member, viable_prefix=lambda w: True)


@lru_cache(maxsize=None)
def _fib_upto(limit: int) -> frozenset:
    fibs = []
    x, y = 1, 1
    while x <= limit:
        fibs.append(x)
        x, y = y, x + y
    return frozenset(fibs)


def oracle_fib() -> LanguageOracle:
    def member(w: str) -> bool:
        n = len(w)
        return n % 2 == 0 and n > 0 and n // 2 in _fib_upto(n) and set(w) <= {"a"}

    return LanguageOracle("fib", ("a",), member, viable_prefix=lambda w: True)


def oracle_cub() -> LanguageOracle:
    def member(w: str) -> bool:
        if set(w) - {"a"}:
            return False
        n = len(w)
        k = round(n ** (1 / 3)) if n else 0
        return any(c * c * c == n for c in (k - 1, k, k + 1))

    return LanguageOracle("cub", ("a",), member, viable_prefix=lambda w: True)


# -- dictionary languages with counted padding --------------------------------


def _parse_padded_blocks(body: str):
    """Split x1 $^|x1| x2 $^|x2| ... into the xi, or None if malformed.

    Blocks are non-empty words over {a, b}, each followed by exactly as
    many $ as it has letters.
    """
    xs = []
    i = 0
    n = len(body)
    while i < n:
        j = i
        while j < n and body[j] in "ab":
            j += 1
        if j == i:
            return None  # $ where a letter run should start
        length = j - i
        if body[j : j + length] != "$" * length or (
            j + length < n and body[j + length] == "$"
        ):
            return None
        xs.append(body[i:j])
        i = j + length
    return xs


def _parse_padded_prefix(body: str):
    """Like `_parse_padded_blocks` for a word that may stop mid-block.

    Returns (fixed_xs, still_open): the blocks whose letters are already
    decided, and whether the last block is unfinished.  None means no
    extension can repair the body.
    """
    xs = []
    i = 0
    n = len(body)
    while i < n:
        j = i
        while j < n and body[j] in "ab":
            j += 1
        if j == i:
            return None  # $ where a letter run should start
        length = j - i
        if j == n:
            return xs, True  # still writing letters; the block is not fixed yet
        pad = 0
        while j + pad < n and body[j + pad] == "$":
            pad += 1
        if pad > length:
            return None  # one $ too many
        if pad < length:
            if j + pad < n:
                return None  # a letter arrived before the padding was complete
            xs.append(body[i:j])
            return xs, True  # mid-$ run; the block's letters are fixed
        xs.append(body[i:j])
        i = j + pad
    return xs, False


def _prefix_free_order(xs: Iterable[str]) -> bool:
    """No word is a proper prefix of an earlier one."""
    xs = list(xs)
    for i, later in enumerate(xs):
        for earlier in xs[:i]:
            if later != earlier and earlier.startswith(later):
                return False
    return True


def _padded_dictionary_oracle(name: str, marker: str, query_matches) -> LanguageOracle:
    """Membership for x1 $^|x1| ... xk $^|xk| <marker> y languages."""

    def member(w: str) -> bool:
        if w.count(marker) != 1:
            return False
        body, _, y = w.partition(marker)
        xs = _parse_padded_blocks(body)
        if xs is None or not _prefix_free_order(xs):
            return False
        return query_matches(xs, y)

    return LanguageOracle(name, ("a", "b", "$", marker), member)


def oracle_lp() -> LanguageOracle:
    def query(xs, y):
        return all(c in "ab" for c in y) and y in xs

    def viable(w: str) -> bool:
        if w.count(MARK) > 1:
            return False
        if MARK in w:
            body, _, y = w.partition(MARK)
            xs = _parse_padded_blocks(body)
            if xs is None or not _prefix_free_order(xs):
                return False
            if any(c not in "ab" for c in y):
                return False
            return any(x.startswith(y) for x in xs)
        parsed = _parse_padded_prefix(w)
        if parsed is None:
            return False
        xs, _ = parsed
        return _prefix_free_order(xs)

    oracle = _padded_dictionary_oracle("lp", MARK, query)
    return LanguageOracle(oracle.name, oracle.alphabet, oracle.membership, viable)


def oracle_lp_hat() -> LanguageOracle:
    """As `oracle_lp` with a skimmed {a,b,$}* stretch between ¢ and ▷."""

    def member(w: str) -> bool:
        if w.count(CENT) != 1:
            return False
        body, _, tail = w.partition(CENT)
        if tail.count(MARK1) != 1:
            return False
        z, _, y = tail.partition(MARK1)
        if any(c not in "ab$" for c in z) or any(c not in "ab" for c in y):
            return False
        xs = _parse_padded_blocks(body)
        return xs is not None and _prefix_free_order(xs) and y in xs

    def viable(w: str) -> bool:
        if w.count(CENT) > 1 or w.count(MARK1) > 1:
            return False
        if CENT not in w:
            if MARK1 in w:
                return False
            parsed = _parse_padded_prefix(w)
            return parsed is not None and _prefix_free_order(parsed[0])
        body, _, tail = w.partition(CENT)
        xs = _parse_padded_blocks(body)
        if xs is None or not _prefix_free_order(xs) or not xs:
            return False  # with no inserted word, no query can ever match
        if MARK1 not in tail:
            return all(c in "ab$" for c in tail)
        z, _, y = tail.partition(MARK1)
        if any(c not in "ab$" for c in z) or any(c not in "ab" for c in y):
            return False
        return any(x.startswith(y) for x in xs)

    return LanguageOracle("lp-hat", ("a", "b", "$", CENT, MARK1), member, viable)


def oracle_mi_hat() -> LanguageOracle:
    """Membership for x ¢ v $ v^R ▶ with x over {a,b,$} and v over {a,b}."""

    def member(w: str) -> bool:
        if not w.endswith(MARK2) or w.count(MARK2) != 1 or w.count(CENT) != 1:
            return False
        x, _, tail = w.partition(CENT)
        if any(c not in "ab$" for c in x):
            return False
        tail = tail[:-1]
        i = 0
        while i < len(tail) and tail[i] in "ab":
            i += 1
        v, rest = tail[:i], tail[i:]
        return rest == "$" + v[::-1]

    def viable(w: str) -> bool:
        if w.count(CENT) == 0:
            return MARK2 not in w and all(c in "ab$" for c in w)
        x, _, tail = w.partition(CENT)
        if any(c not in "ab$" for c in x) or CENT in tail:
            return False
        if MARK2 in tail:
            return member(w)  # nothing may follow the closing marker
        i = 0
        while i < len(tail) and tail[i] in "ab":
            i += 1
        v, rest = tail[:i], tail[i:]
        if not rest:
            return True  # still reading v
        return rest[0] == "$" and v[::-1].startswith(rest[1:])

    return LanguageOracle("mi-hat", ("a", "b", "$", CENT, MARK2), member, viable)


# -- separator-style dictionary language and the primed/block variants --------


def oracle_lh() -> LanguageOracle:
    """Membership for x1 $ x2 $ ... $ xk ⊳ y with reversed block images.

    The xi here are $-separated (possibly empty) words over {a, b}; the
    query y is a word over the block symbols, and membership requires some
    xj with xj reversed equal to the image of y.
    """

    def member(w: str) -> bool:
        if w.count(MARK) != 1:
            return False
        body, _, y = w.partition(MARK)
        if any(c not in "ab$" for c in body):
            return False
        image = pair_expand(y)
        if image is None:
            return False
        xs = body.split("$") if body else [""]
        return any(x[::-1] == image for x in xs)

    return LanguageOracle("lh", ("a", "b", "$", MARK, "0", "1", "2", "3"), member)


def oracle_lh_tilde() -> LanguageOracle:
    """Counted-padding dictionary where y's block image must match an xi."""

    def query(xs, y):
        image = pair_expand(y)
        return image is not None and image in xs

    oracle = _padded_dictionary_oracle("lh-tilde", MARK, query)
    return LanguageOracle(
        "lh-tilde", ("a", "b", "$", MARK, "0", "1", "2", "3"), oracle.membership
    )


def oracle_lp_tilde() -> LanguageOracle:
    """Counted-padding dictionary where y is primed and unprimed to match."""

    def query(xs, y):
        image = unprime(y)
        return image is not None and image in xs

    oracle = _padded_dictionary_oracle("lp-tilde", MARK, query)
    return LanguageOracle(
        "lp-tilde", ("a", "b", "$", MARK, "A", "B"), oracle.membership
    )


def oracle_union_witness() -> LanguageOracle:
    """Union of the skimmed dictionary and palindrome languages."""
    lp_hat = oracle_lp_hat()
    mi_hat = oracle_mi_hat()

    def member(w: str) -> bool:
        return lp_hat.membership(w) or mi_hat.membership(w)

    return LanguageOracle(
        "union-witness", ("a", "b", "$", CENT, MARK1, MARK2), member
    )


def lh_class_sample(ell: int) -> list[str]:
    """One probe word per subset of the length-2ℓ words over {a, b}.

    The word for subset {v1, ..., vk} is $v1$v2...$vk⊳ with the vi in
    sorted order; extending it with encoded queries separates any two
    distinct subsets, so the family realizes 2^(2^(2ℓ)) equivalence
    classes.
    """
    letters = ["a", "b"]
    words = [""]
    for _ in range(2 * ell):
        words = [w + c for w in words for c in letters]
    samples = []
    for mask in range(1 << len(words)):
        chosen = [w for i, w in enumerate(words) if mask >> i & 1]
        samples.append("".join("$" + v for v in chosen) + MARK)
    return samples


ORACLES: dict[str, Callable[[], LanguageOracle]] = {
    "expo": oracle_expo,
    "fib": oracle_fib,
    "cub": oracle_cub,
    "lh": oracle_lh,
    "lp": oracle_lp,
    "lp-hat": oracle_lp_hat,
    "mi-hat": oracle_mi_hat,
    "lh-tilde": oracle_lh_tilde,
    "lp-tilde": oracle_lp_tilde,
    "union-witness": oracle_union_witness,
}
