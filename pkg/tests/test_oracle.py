import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regsep.core import DyckAlphabet, RleWord, UPWord, make_vass, up_normalize
from regsep.fixtures import (
    empty_vass,
    lasso_automaton,
    random_vass,
    worked_example,
)
from regsep.oracle import (
    WrongAlphabet,
    accepted_word,
    check_lasso_evidence,
    dyck_members,
    dyck_witness,
    fuzz_accepted_words,
    is_empty,
    member_dyck,
    member_lang,
    member_p,
    member_s,
    member_s_bruteforce,
    random_up_words,
    s_bound,
)

from s_equivalence import compare_lengths, weight_vectors

D1 = DyckAlphabet(1)
D2 = DyckAlphabet(2)


def W(text):
    return UPWord.parse(text)


# ---------------------------------------------------------------- Dyck and P


@pytest.mark.parametrize(
    "word, expected",
    [("@ a1 A1", True), ("@ a1^2 A1^3", False), ("a1 @ A1 a1", True), ("@ a1", True), ("@ A1", False)],
)
def test_member_dyck_examples(word, expected):
    assert member_dyck(W(word), 1).verdict is expected


def test_member_dyck_evidence():
    rep = member_dyck(W("@ a1^2 A1^3"), 1)
    assert rep.evidence == {"coordinate": 1, "position": 5}


def test_member_dyck_second_pair():
    assert not member_dyck(W("a1 @ a2 A2 A2"), 2).verdict
    assert member_dyck(W("a2 @ A1 a1 a1"), 2).verdict is False
    assert member_dyck(W("a1 a2 @ A1 A2 a1 a2"), 2).verdict


def test_member_p_examples():
    assert member_p(W("@ A1"), 1, 0).verdict
    for k in range(4):
        assert not member_p(W("@ a1 A1"), 1, k).verdict
    w = W("a1^3 A1^4 @ a1 A1")
    assert not member_p(w, 1, 2).verdict
    assert member_p(w, 1, 3).verdict
    assert member_p(w, 1, 3).evidence == {"position": 7, "max_before": 3}


def test_wrong_alphabet():
    with pytest.raises(WrongAlphabet):
        member_dyck(W("@ a2"), 1)
    with pytest.raises(WrongAlphabet):
        member_lang(worked_example(), W("@ a2"))


def test_long_runs_are_scanned_arithmetically():
    big = 10**30
    w = UPWord(RleWord((("a1", big), ("A1", big + 1))), RleWord.of("a1"))
    assert not member_dyck(w, 1).verdict
    assert member_p(w, 1, big).verdict and not member_p(w, 1, big - 1).verdict


@given(st.integers(0, 10**6), st.integers(1, 2), st.integers(0, 6))
def test_dyck_words_are_never_in_p(seed, i, k):
    for w in random_up_words(D2, 10, seed=seed):
        if member_dyck(w, 2).verdict:
            assert not member_p(w, i, k, 2).verdict


# ---------------------------------------------------------------- S


def test_member_s_examples():
    assert member_s(W("@ A1"), (1,), 0).verdict
    assert member_s(W("@ a1 A1 A1"), (1,), 1).verdict
    assert not member_s(W("@ a1 A1 A1"), (1,), 0).verdict
    for k in range(5):
        assert not member_s(W("@ a1 A1"), (1,), k).verdict


def test_member_s_evidence():
    rep = member_s(W("a1^4 @ a1 A1 A1"), (1,), 1)
    assert rep.verdict
    assert rep.evidence == {"drift": -1, "max_infix": 1, "tail_start": 4, "block": 3}


def test_s_bound_rejects_negative_weights():
    with pytest.raises(ValueError):
        s_bound(W("@ A1"), (-1,))


def test_s_bound_is_prefix_independent():
    assert s_bound(W("a1^9 @ a1^2 A1^3"), (1,)) == s_bound(W("@ a1^2 A1^3"), (1,)) == 2


def test_s_matches_brute_force_on_short_words():
    total = 0
    for lu in range(0, 6):
        for lv in range(1, 6):
            checked, bad = compare_lengths(1, lu, lv, weight_vectors(1, 3), 4)
            assert bad == []
            total += checked
    for lu in range(0, 3):
        for lv in range(1, 3):
            checked, bad = compare_lengths(2, lu, lv, weight_vectors(2, 3), 4)
            assert bad == []
            total += checked
    assert total > 0


letters2 = st.sampled_from(D2.letters)


@settings(max_examples=300)
@given(
    st.lists(letters2, max_size=8),
    st.lists(letters2, min_size=1, max_size=8),
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.integers(0, 4),
)
def test_s_matches_brute_force_on_random_words(u, v, x, k):
    w = UPWord(RleWord.of(*u), RleWord.of(*v))
    assert member_s(w, x, k).verdict == member_s_bruteforce(w, x, k)


@given(st.integers(0, 10**6), st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(0, 5))
def test_s_words_are_never_dyck(seed, x, k):
    for w in random_up_words(D2, 10, seed=seed):
        if member_s(w, x, k).verdict:
            assert not member_dyck(w, 2).verdict


# ---------------------------------------------------------------- languages


def test_is_empty_examples():
    unreachable = make_vass(0, D1, ["s", "f"], "s", ["f"], [("s", "a1", (), "s")])
    assert is_empty(unreachable)
    assert not is_empty(worked_example())
    drain = make_vass(1, D1, ["q"], "q", ["q"], [("q", "A1", (-1,), "q")])
    assert is_empty(drain)
    assert is_empty(empty_vass(1, 2))


def test_silent_cycles_do_not_accept():
    silent = make_vass(0, D1, ["q"], "q", ["q"], [("q", None, (), "q")])
    assert is_empty(silent)


def test_member_lang_examples(fixture_vass):
    rep = member_lang(fixture_vass, W("@ a1^2 A1^3"))
    assert rep.verdict
    assert check_lasso_evidence(fixture_vass, W("@ a1^2 A1^3"), rep.evidence["stem"], rep.evidence["cycle"])
    assert not member_lang(fixture_vass, W("@ a1 A1")).verdict
    for w in dyck_members(1, 20, seed=3):
        assert not member_lang(fixture_vass, w).verdict


def test_member_lang_needs_the_pumped_counter(fixture_vass):
    # q2 can only spend what q0 stored, so a period losing three per round dies
    assert member_lang(fixture_vass, W("@ a1^5 A1^6")).verdict
    assert member_lang(fixture_vass, W("A1 @ a1 A1^2")).verdict
    assert not member_lang(fixture_vass, W("@ a1^3 A1")).verdict
    assert not member_lang(fixture_vass, W("@ a1")).verdict


def test_member_lang_with_binary_size_labels():
    big = 10**12
    V = make_vass(0, D1, ["q"], "q", ["q"], [("q", RleWord((("a1", big),)), (), "q")])
    assert member_lang(V, W("@ a1")).verdict
    assert member_lang(V, UPWord(RleWord((("a1", 3),)), RleWord((("a1", big),)))).verdict


def test_member_lang_on_the_dyck_acceptor(d1):
    for w in dyck_members(1, 10, seed=1):
        assert member_lang(d1, w).verdict
    assert not member_lang(d1, W("@ A1")).verdict


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.lists(st.sampled_from(D1.letters), max_size=4),
       st.lists(st.sampled_from(D1.letters), min_size=1, max_size=4), st.integers(0, 3))
def test_member_lang_ignores_presentation(seed, u, v, extra):
    V = random_vass(seed, states=3, dimension=1, transitions=5)
    pu, pv = RleWord.of(*u), RleWord.of(*v)
    # u·v^ω written four ways
    copies = RleWord.of(*(v * extra))
    forms = [UPWord(pu, pv), UPWord(pu + copies, pv), UPWord(pu, pv + copies + pv), up_normalize(pu, pv)]
    verdicts = {member_lang(V, w).verdict for w in forms}
    assert len(verdicts) == 1


def _bounded_lasso(V, depth=12, cap=16):
    """Search runs of at most ``depth`` transitions that close a repeatable accepting loop."""
    start = (V.initial, (0,) * V.dimension)

    def closes(path):
        configs, ts = path
        last = configs[-1]
        for i in range(len(configs) - 1):
            c = configs[i]
            if c[0] != last[0] or any(a < b for a, b in zip(last[1], c[1])):
                continue
            seg = ts[i:]
            if any(V.transitions[t].source in V.finals for t in seg) and any(
                V.transitions[t].word.length for t in seg
            ):
                return True
        return False

    stack = [([start], [])]
    while stack:
        configs, ts = stack.pop()
        if ts and closes((configs, ts)):
            return True
        if len(ts) == depth:
            continue
        q, c = configs[-1]
        for idx in V.outgoing.get(q, ()):
            t = V.transitions[idx]
            nxt = tuple(a + d for a, d in zip(c, t.update))
            if any(a < 0 or a > cap for a in nxt):
                continue
            stack.append((configs + [(t.target, nxt)], ts + [idx]))
    return False


@pytest.mark.parametrize("seed", range(40))
def test_is_empty_agrees_with_bounded_search(seed):
    states = 2 + seed % 3
    dimension = seed % 3
    V = random_vass(seed, states=states, dimension=dimension, transitions=4 + seed % 3)
    assert is_empty(V) == (not _bounded_lasso(V))


def test_accepted_word_and_dyck_witness(fixture_vass, d1):
    w = accepted_word(fixture_vass)
    assert w is not None and member_lang(fixture_vass, w).verdict
    assert accepted_word(empty_vass()) is None
    assert dyck_witness(fixture_vass) is None
    found = dyck_witness(d1)
    assert found is not None and member_dyck(found, 1).verdict


# ---------------------------------------------------------------- fuzzing


def test_fuzz_examples(fixture_vass):
    assert fuzz_accepted_words(empty_vass(), 5) == []
    words = fuzz_accepted_words(fixture_vass, 10, bound=8, seed=0)
    assert words
    assert all(member_lang(fixture_vass, w).verdict for w in words)
    assert any("a1" in str(w) for w in words)


def test_fuzz_single_lasso():
    A = lasso_automaton("a1", "A1 A1")
    assert fuzz_accepted_words(A, 5, seed=2) == [W("a1 @ A1")]


def test_dyck_members_are_members():
    for w in dyck_members(2, 15, seed=5):
        assert member_dyck(w, 2).verdict
