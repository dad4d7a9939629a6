"""Witness-language predicates, homomorphisms, and viability soundness."""
import itertools

import pytest

from twsda.oracles import (
    ORACLES,
    lh_class_sample,
    oracle_lh,
    oracle_lh_tilde,
    oracle_lp,
    oracle_lp_tilde,
    oracle_mi_hat,
    oracle_union_witness,
    pair_encode,
    pair_expand,
    prime_expand,
    unprime,
)


def words_over(alphabet, max_len):
    for length in range(max_len + 1):
        for parts in itertools.product(alphabet, repeat=length):
            yield "".join(parts)


def test_block_homomorphism():
    assert pair_expand("0123") == "aaabbabb"
    assert pair_expand("") == ""
    assert pair_expand("x") is None
    assert pair_encode("aaabbabb") == "0123"
    assert pair_encode("aab") is None
    assert unprime("AB") == "ab"
    assert unprime("a") is None
    assert prime_expand("1a$2") == "ABa$BA"


@pytest.mark.parametrize(
    "word, member",
    [
        ("⊳", False),
        ("a$⊳a", True),
        ("ab$$b$⊳ab", True),
        ("ab$$b$⊳b", True),
        ("ab$$b$⊳a", False),
        ("ab$$a$⊳a", False),  # "a" after "ab" violates the order condition
        ("a$ab$$⊳ab", True),  # extending an earlier word is allowed
        ("a$a$⊳a", True),  # duplicates are allowed
        ("a$aa$$a$⊳a", False),
        ("ab$b$⊳b", False),  # short padding
        ("a$$⊳a", False),  # long padding
        ("$a$⊳a", False),  # padding before any letter
        ("ab$$⊳", False),  # empty query never matches
        ("a$⊳$", False),
    ],
)
def test_lp_membership(word, member):
    assert oracle_lp().membership(word) is member


@pytest.mark.parametrize(
    "word, member",
    [
        ("a$¢bb$a▷a", True),
        ("a$¢▷a", True),
        ("a$¢▷b", False),
        ("a$▷a", False),  # ¢ required
        ("¢▷", False),
        ("¢ab$▷", False),
        ("ab$$¢$$▷ab", True),
        ("a$¢¢▷a", False),  # a second ¢ is not part of any member
    ],
)
def test_lp_hat_membership(word, member):
    assert ORACLES["lp-hat"]().membership(word) is member


@pytest.mark.parametrize(
    "word, member",
    [
        ("¢ab$ba▶", True),
        ("¢ab$ab▶", False),
        ("a$b¢$▶", True),
        ("¢$▶", True),
        ("▶", False),
        ("¢a$a▶", True),
        ("¢a$a", False),  # closing marker missing
        ("¢a$a▶▶", False),
        ("b¢a¢a▶", False),
    ],
)
def test_mi_hat_membership(word, member):
    assert oracle_mi_hat().membership(word) is member


@pytest.mark.parametrize(
    "word, member",
    [
        ("⊳", True),  # the empty insert matches the empty query
        ("ba⊳1", True),  # image of '1' is ab; reversed insert ba matches
        ("ab⊳1", False),
        ("aa$bb⊳3", True),
        ("aa$bb⊳0", True),
        ("aa$bb⊳1", False),
        ("$aa⊳", True),  # the leading $ contributes an empty insert
        ("aa⊳", False),
        ("⊳a", False),  # query must use block symbols
    ],
)
def test_lh_membership(word, member):
    assert oracle_lh().membership(word) is member


def test_lh_tilde_and_lp_tilde():
    lh_t = oracle_lh_tilde().membership
    lp_t = oracle_lp_tilde().membership
    assert lh_t("ab$$⊳1")  # h(1) = ab
    assert not lh_t("ab$$⊳2")
    assert lp_t("ab$$⊳AB")  # unprimed AB = ab
    assert not lp_t("ab$$⊳BA")
    assert not lp_t("ab$$⊳ab")  # query must be primed


def test_preimage_relation_structured():
    """Words map into the primed language exactly when their encoded form
    is in the block language."""
    lh_t = oracle_lh_tilde().membership
    lp_t = oracle_lp_tilde().membership
    for w in words_over(("a", "$", "⊳", "0"), 8):
        assert lh_t(w) == lp_t(prime_expand(w)), w
    for w in words_over(("b", "$", "⊳", "1", "3"), 6):
        assert lh_t(w) == lp_t(prime_expand(w)), w


def test_union_witness():
    u = oracle_union_witness().membership
    assert u("a$¢▷a") and u("¢ab$ba▶")
    assert not u("¢ab$ab▶") and not u("▷")


def test_lh_class_sample_shape():
    sample = lh_class_sample(1)
    assert len(sample) == 16
    assert "⊳" in sample
    assert "$aa$ab$ba$bb⊳" in sample
    member = oracle_lh().membership
    assert all(member(w) for w in sample)


@pytest.mark.parametrize(
    "name, member_len, word_len, ext_len",
    [("lp", 9, 5, 4), ("lp-hat", 8, 5, 4), ("mi-hat", 8, 5, 4)],
)
def test_viable_prefix_is_sound(name, member_len, word_len, ext_len):
    """Every prefix of every member is viable, and no short extension of a
    non-viable word is a member.

    Pruning in the exhaustive cross-check is sound exactly as long as
    these two directions hold, so the bounds here are kept as wide as a
    few seconds allow.
    """
    oracle = ORACLES[name]()
    member, viable = oracle.membership, oracle.viable_prefix
    alphabet = oracle.alphabet
    seen_member = seen_nonviable = 0
    for w in words_over(alphabet, member_len):
        if member(w):
            seen_member += 1
            for i in range(len(w) + 1):
                assert viable(w[:i]), (w, w[:i])
    extensions = list(words_over(alphabet, ext_len))
    for w in words_over(alphabet, word_len):
        if not viable(w):
            seen_nonviable += 1
            for u in extensions:
                assert not member(w + u), (w, u)
    assert seen_member > 0 and seen_nonviable > 0


@pytest.mark.parametrize("name", ["expo", "fib", "cub"])
def test_unary_oracles(name):
    oracle = ORACLES[name]()
    lengths = [n for n in range(0, 130) if oracle.membership("a" * n)]
    expected = {
        "expo": [1, 2, 4, 8, 16, 32, 64, 128],
        "fib": [2, 4, 6, 10, 16, 26, 42, 68, 110],
        "cub": [0, 1, 8, 27, 64, 125],
    }[name]
    assert lengths == expected
    assert all(oracle.viable_prefix("a" * n) for n in (0, 3, 17))
