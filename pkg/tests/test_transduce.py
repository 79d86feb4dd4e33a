import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regsep.core import DyckAlphabet, NamedAlphabet, RleWord, UPWord, make_vass, up_normalize
from regsep.fixtures import dyck_acceptor, empty_vass, random_vass, worked_example
from regsep.oracle import (
    fuzz_accepted_words,
    is_empty,
    member_dyck,
    member_lang,
    random_up_words,
)
from regsep.transduce import (
    AlphabetMismatch,
    ZeroDimension,
    apply_inverse_to_vass,
    encode_update,
    identity_transducer,
    inverse,
    pad_dimension,
    reduce_to_dyck,
    vass_to_transducer,
)

D1 = DyckAlphabet(1)
D2 = DyckAlphabet(2)


@pytest.mark.parametrize(
    "update, runs",
    [
        ((-3, 1), (("A1", 3), ("a2", 1))),
        ((0, 0), (("a1", 1), ("A1", 1))),
        ((2,), (("a1", 2),)),
        ((0, -5), (("A2", 5),)),
    ],
)
def test_encode_update(update, runs):
    assert encode_update(update).runs == runs


def test_encode_update_keeps_binary_size():
    assert encode_update((10**18,)).runs == (("a1", 10**18),)


def test_transducer_of_a_vass():
    T = vass_to_transducer(worked_example())
    assert len(T.edges) == 6
    assert T.output_alphabet == D1
    assert [str(e.out) for e in T.edges[:3]] == ["a1", "a1 A1", "a1 A1"]
    with pytest.raises(ZeroDimension):
        vass_to_transducer(empty_vass(1, 0))


def test_inverse_is_an_involution(fixture_vass):
    T = vass_to_transducer(fixture_vass)
    assert inverse(inverse(T)) == T
    assert inverse(T).input_alphabet == T.output_alphabet


def _control_lasso(V, rng, length=5):
    """Random control-state lasso of V, ignoring counters."""
    q = V.initial
    path = []
    for _ in range(rng.randint(0, length)):
        opts = V.outgoing.get(q, [])
        if not opts:
            return None
        idx = rng.choice(opts)
        path.append(idx)
        q = V.transitions[idx].target
    cut = rng.randint(0, len(path))
    stem, cycle = path[:cut], path[cut:]
    if not cycle or V.transitions[cycle[-1]].target != V.transitions[cycle[0]].source:
        return None
    return stem, cycle


def _feasible_forever(V, stem, cycle):
    c = [0] * V.dimension
    for t in stem + cycle:
        c = [a + d for a, d in zip(c, V.transitions[t].update)]
        if min(c, default=0) < 0:
            return False
    effect = [0] * V.dimension
    for t in cycle:
        effect = [a + d for a, d in zip(effect, V.transitions[t].update)]
    return min(effect, default=0) >= 0


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_outputs_are_dyck_exactly_on_counter_runs(seed):
    rng = random.Random(seed)
    V = random_vass(seed, states=2, dimension=2, n=1, transitions=5, max_update=2)
    T = vass_to_transducer(V)
    for _ in range(20):
        lasso = _control_lasso(V, rng)
        if lasso is None:
            continue
        stem, cycle = lasso
        out = lambda ts: RleWord(tuple(r for t in ts for r in T.edges[t].out.runs))  # noqa: E731
        w = up_normalize(out(stem), out(cycle))
        assert member_dyck(w, 2).verdict == _feasible_forever(V, stem, cycle)


def _same_on_samples(A, B, alphabet, seed):
    words = random_up_words(alphabet, 25, max_len=4, seed=seed)
    words += fuzz_accepted_words(A, 5, seed=seed, attempts=30)
    for w in words:
        assert member_lang(A, w).verdict == member_lang(B, w).verdict, str(w)


def test_identity_transduction(fixture_vass):
    V = apply_inverse_to_vass(identity_transducer(D1), fixture_vass)
    _same_on_samples(fixture_vass, V, D1, 0)


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_identity_transduction_on_random_vass(seed):
    V1 = random_vass(seed, states=3, dimension=1, transitions=5)
    V = apply_inverse_to_vass(identity_transducer(D1), V1)
    _same_on_samples(V1, V, D1, seed)


def test_identity_on_named_letters():
    sigma = NamedAlphabet(("x", "y"))
    V1 = make_vass(0, sigma, ["p"], "p", ["p"], [("p", "x y", (), "p")])
    V = apply_inverse_to_vass(identity_transducer(sigma), V1)
    assert not is_empty(V)
    assert member_lang(V, UPWord(RleWord(), RleWord.of("x", "y"))).verdict
    assert not member_lang(V, UPWord(RleWord(), RleWord.of("x"))).verdict


def test_empty_input_gives_empty_output():
    assert is_empty(apply_inverse_to_vass(identity_transducer(D1), empty_vass(1, 1)))
    T = vass_to_transducer(dyck_acceptor(1))
    assert is_empty(apply_inverse_to_vass(T, empty_vass(1, 2)))


def test_alphabets_must_agree():
    with pytest.raises(AlphabetMismatch):
        apply_inverse_to_vass(identity_transducer(D2), worked_example())
    with pytest.raises(AlphabetMismatch):
        reduce_to_dyck(worked_example(), dyck_acceptor(2))


def test_reduce_fixture_against_d1(fixture_vass, d1):
    V, n = reduce_to_dyck(fixture_vass, d1)
    assert n == 1 and V.alphabet == D1
    assert (len(V.states), len(V.transitions)) == (30, 62)


def test_reduction_against_the_dyck_acceptor_keeps_the_language(fixture_vass, d1):
    # the D_1 acceptor's transducer rewrites each letter to itself
    V, _ = reduce_to_dyck(fixture_vass, d1)
    _same_on_samples(fixture_vass, V, D1, 7)


def test_zero_dimensional_right_side_is_padded(fixture_vass):
    B = make_vass(0, D1, ["b"], "b", ["b"], [("b", "A1", (), "b")])
    V, n = reduce_to_dyck(fixture_vass, B)
    assert n == 1 and V.dimension == fixture_vass.dimension
    assert pad_dimension(B).dimension == 1
    # every output of the padded acceptor is (a1 A1)^ω, a Dyck word
    w = UPWord(RleWord(), RleWord.of("a1", "A1"))
    assert member_lang(V, w).verdict
