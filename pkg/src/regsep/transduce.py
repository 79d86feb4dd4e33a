"""Büchi transducers with word blocks, and the reduction to the Dyck language.

A VASS over Σ is turned into a transducer that rewrites each transition's
label into the Dyck encoding of its counter update.  Pushing the words of
a second VASS through that transducer gives a VASS over Σ_n whose
separability from D_n is the original separability question.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    EPSILON,
    BuchiVass,
    DyckAlphabet,
    RegsepError,
    RleWord,
    Transition,
    bar_letter,
    make_vass,
    pos_letter,
)


class ZeroDimension(RegsepError):
    pass


class AlphabetMismatch(RegsepError):
    pass


@dataclass(frozen=True)
class TEdge:
    source: object
    inp: RleWord
    out: RleWord
    target: object


@dataclass(frozen=True)
class BuchiTransducer:
    states: tuple
    initial: object
    finals: frozenset
    edges: tuple
    input_alphabet: object
    output_alphabet: object


def encode_update(update) -> RleWord:
    """``+h`` on counter i becomes ``a_i^h``, ``-h`` becomes ``A_i^h``; zero becomes ``a1 A1``."""
    runs = []
    for i, h in enumerate(update):
        if h > 0:
            runs.append((pos_letter(i + 1), h))
        elif h < 0:
            runs.append((bar_letter(i + 1), -h))
    if not runs:
        runs = [(pos_letter(1), 1), (bar_letter(1), 1)]
    return RleWord(tuple(runs))


def vass_to_transducer(V: BuchiVass) -> BuchiTransducer:
    if V.dimension < 1:
        raise ZeroDimension("pad the VASS with an idle counter first")
    edges = tuple(TEdge(t.source, t.word, encode_update(t.update), t.target) for t in V.transitions)
    return BuchiTransducer(
        V.states, V.initial, V.finals, edges, V.alphabet, DyckAlphabet(V.dimension)
    )


def inverse(T: BuchiTransducer) -> BuchiTransducer:
    edges = tuple(TEdge(e.source, e.out, e.inp, e.target) for e in T.edges)
    return BuchiTransducer(
        T.states, T.initial, T.finals, edges, T.output_alphabet, T.input_alphabet
    )


def identity_transducer(alphabet, letters=None) -> BuchiTransducer:
    letters = letters if letters is not None else alphabet.letters
    edges = tuple(TEdge("i", RleWord.of(a), RleWord.of(a), "i") for a in letters)
    return BuchiTransducer(("i",), "i", frozenset({"i"}), edges, alphabet, alphabet)


def _match(owed: RleWord, w: RleWord):
    """Consume ``w`` against ``owed``.

    Returns ``(side, rest)``: side ``"owed"`` when ``w`` was a prefix of
    ``owed`` (rest still owed), ``"new"`` when ``owed`` was a prefix of ``w``
    (rest is the unmatched tail of ``w``), or None when they disagree.
    """
    if w.length <= owed.length:
        prefix = owed.take(w.length)
        return ("owed", owed.drop(w.length)) if prefix == w else None
    prefix = w.take(owed.length)
    return ("new", w.drop(owed.length)) if prefix == owed else None


def apply_inverse_to_vass(T: BuchiTransducer, V1: BuchiVass) -> BuchiVass:
    """VASS for the outputs of ``T`` on words of ``L(V1)``.

    States are ``(qT, qV, buffer, phase)``.  The buffer holds letters read by
    one side and not yet by the other: ``("V", w)`` when V1 is ahead and
    ``("T", w)`` when the transducer is.  V1 moves carry V1's update and read
    nothing; transducer moves read the transducer's output.  The phase
    cycles through: V1 final, transducer final, nonempty output, nonempty
    input, and the states in phase 4 are final.
    """
    if T.input_alphabet != V1.alphabet:
        raise AlphabetMismatch("transducer input must be over the VASS alphabet")
    zero = tuple([0] * V1.dimension)
    t_out: dict = {}
    for e in T.edges:
        t_out.setdefault(e.source, []).append(e)
    v_out = V1.outgoing
    init = (T.initial, V1.initial, None, 0)
    seen = {init}
    order = [init]
    queue = [init]
    ts = []

    def advance_phase(p, qt, qv, output=False, inp=False):
        p = 0 if p == 4 else p
        if p == 0 and qv in V1.finals:
            p = 1
        if p == 1 and qt in T.finals:
            p = 2
        if p == 2 and output:
            p = 3
        if p == 3 and inp:
            p = 4
        return p

    def add(src, word, update, tgt):
        if tgt not in seen:
            seen.add(tgt)
            order.append(tgt)
            queue.append(tgt)
        ts.append(Transition(src, word, update, tgt))

    while queue:
        state = queue.pop(0)
        qt, qv, buf, ph = state
        side = buf[0] if buf else None
        if side in (None, "T"):
            for idx in v_out.get(qv, ()):
                t = V1.transitions[idx]
                if side is None:
                    nbuf = ("V", t.word) if t.word else None
                else:
                    m = _match(buf[1], t.word)
                    if m is None:
                        continue
                    kind, rest = m
                    if not rest:
                        nbuf = None
                    else:
                        nbuf = ("T", rest) if kind == "owed" else ("V", rest)
                nph = advance_phase(ph, qt, qv, inp=bool(t.word))
                add(state, EPSILON, tuple(t.update), (qt, t.target, nbuf, nph))
        if side in (None, "V"):
            for e in t_out.get(qt, ()):
                if side is None:
                    nbuf = ("T", e.inp) if e.inp else None
                else:
                    m = _match(buf[1], e.inp)
                    if m is None:
                        continue
                    kind, rest = m
                    if not rest:
                        nbuf = None
                    else:
                        nbuf = ("V", rest) if kind == "owed" else ("T", rest)
                nph = advance_phase(ph, qt, qv, output=bool(e.out))
                add(state, e.out, zero, (e.target, qv, nbuf, nph))
    finals = frozenset(s for s in order if s[3] == 4)
    return BuchiVass(V1.dimension, T.output_alphabet, tuple(order), init, finals, tuple(ts))


def pad_dimension(V: BuchiVass) -> BuchiVass:
    """Add one counter that no transition touches."""
    ts = [(t.source, t.word, tuple(t.update) + (0,), t.target) for t in V.transitions]
    return make_vass(V.dimension + 1, V.alphabet, V.states, V.initial, V.finals, ts)


def reduce_to_dyck(V1: BuchiVass, V2: BuchiVass) -> tuple:
    """``(V, n)`` with V over Σ_n; V1, V2 separable iff V and D_n are."""
    if V1.alphabet != V2.alphabet:
        raise AlphabetMismatch("both VASS must share an alphabet")
    if V2.dimension == 0:
        V2 = pad_dimension(V2)
    T = vass_to_transducer(V2)
    return apply_inverse_to_vass(T, V1), V2.dimension
