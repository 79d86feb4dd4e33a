"""Semantic checks on ultimately periodic words.

These are deliberately independent of the separability machinery: Dyck,
P and S membership are decided by arithmetic on prefix sums, and language
membership goes through a product with the lasso of the word followed by
an emptiness check.
"""
from __future__ import annotations

import bisect
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (
    BuchiVass,
    Configuration,
    DyckAlphabet,
    RegsepError,
    RleWord,
    Transition,
    UPWord,
    ensure_progress,
    step,
    up_normalize,
)
from .karpmiller import DEFAULT_KM_BUDGET, KarpMillerGraph, build_km, lift_to_node, run_transitions
from .pump import build_vbar, split_runs


class WrongAlphabet(RegsepError):
    pass


@dataclass(frozen=True)
class MembershipReport:
    verdict: bool
    evidence: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict


# ---------------------------------------------------------------- prefix scans


def _weighted_runs(word: RleWord, weight) -> list:
    return [(weight(letter), c) for letter, c in word.runs]


def _scan(runs, start: int, best: int):
    """Walk weighted runs from balance ``start``.

    Returns ``(end, best, hit)`` where ``hit`` is the letter offset of the
    first negative prefix (or None) and ``best`` the running maximum before it.
    """
    bal = start
    off = 0
    for wt, c in runs:
        if wt < 0 and bal + wt * c < 0:
            need = bal // (-wt) + 1  # letters until the balance drops below zero
            return bal + wt * need, best, off + need
        bal += wt * c
        if bal > best:
            best = bal
        off += c
    return bal, best, None


def _first_negative(w: UPWord, weight) -> tuple:
    """``(position, max_before)`` of the first negative prefix, or ``(None, sup)``."""
    ur = _weighted_runs(w.prefix, weight)
    vr = _weighted_runs(w.period, weight)
    lu, lv = w.prefix.length, w.period.length
    bal, best, hit = _scan(ur, 0, 0)
    if hit is not None:
        return hit, best
    drift = sum(wt * c for wt, c in vr)
    # lowest prefix balance inside one period, relative to its start
    low, run_bal = 0, 0
    for wt, c in vr:
        run_bal += wt * c
        low = min(low, run_bal)
    if drift >= 0:
        _, best2, hit = _scan(vr, bal, best)
        if hit is not None:
            return lu + hit, best2
        _, best2, _ = _scan(vr, bal + drift, best2)
        return None, best2
    j = 0 if bal + low < 0 else (bal + low) // (-drift) + 1
    if j > 0:
        # the first copy already attained the largest values before the crossing
        _, best, _ = _scan(vr, bal, best)
    start = bal + j * drift
    _, best, hit = _scan(vr, start, best)
    return lu + j * lv + hit, best


def _coordinate_weight(alphabet: DyckAlphabet, i: int):
    def weight(letter):
        idx, sign = alphabet.coordinate(letter)
        return sign if idx == i else 0

    return weight


def member_dyck(w: UPWord, n: int) -> MembershipReport:
    alphabet = DyckAlphabet(n)
    _check_letters(w, alphabet)
    for i in range(n):
        pos, _ = _first_negative(w, _coordinate_weight(alphabet, i))
        if pos is not None:
            return MembershipReport(False, {"coordinate": i + 1, "position": pos})
    return MembershipReport(True, {})


def member_p(w: UPWord, i: int, k: int, n: int | None = None) -> MembershipReport:
    """Some prefix goes negative on pair ``i`` (1-based) while earlier prefixes stay ≤ k."""
    n = n or max(i, _max_index(w))
    alphabet = DyckAlphabet(n)
    _check_letters(w, alphabet)
    pos, best = _first_negative(w, _coordinate_weight(alphabet, i - 1))
    if pos is None:
        return MembershipReport(False, {"sup_before": best})
    return MembershipReport(best <= k, {"position": pos, "max_before": best})


def _max_index(w: UPWord) -> int:
    out = 1
    for letter in w.alphabet_letters():
        if len(letter) > 1 and letter[1:].isdigit():
            out = max(out, int(letter[1:]))
    return out


def _check_letters(w: UPWord, alphabet) -> None:
    for letter in w.alphabet_letters():
        if letter not in alphabet:
            raise WrongAlphabet(f"letter {letter!r} is not in the alphabet")


# ---------------------------------------------------------------- S membership


def _x_weight(x: Sequence[int]):
    alphabet = DyckAlphabet(len(x))
    table = {a: s * x[i] for a, (i, s) in ((a, alphabet.coordinate(a)) for a in alphabet.letters)}

    def weight(letter):
        v = table.get(letter)
        if v is None:
            alphabet.coordinate(letter)  # raises UnknownLetter
        return v

    return weight


def s_bound(w: UPWord, x: Sequence[int]):
    """Smallest ``k`` with ``w ∈ S(x, k)``, or None when no ``k`` works.

    Only the period matters: with negative drift every suffix splits into
    negative blocks, and the largest infix weight of the periodic tail is
    attained inside two consecutive periods.
    """
    if any(v < 0 for v in x):
        raise ValueError("weights must be nonnegative")
    weight = _x_weight(x)
    vr = _weighted_runs(w.period, weight)
    drift = sum(wt * c for wt, c in vr)
    if drift >= 0:
        return None
    best = 0
    low = 0
    bal = 0
    r = len(vr)
    for j, (wt, c) in enumerate(vr + vr):
        bal += wt * c
        if bal - low > best:
            best = bal - low
        if j < r - 1 and bal < low:
            low = bal  # infixes may start anywhere in the first period
    return best


def member_s(w: UPWord, x: Sequence[int], k: int) -> MembershipReport:
    m = s_bound(w, x)
    weight = _x_weight(x)
    drift = sum(weight(letter) * c for letter, c in w.period.runs)
    if m is None:
        return MembershipReport(False, {"drift": drift})
    return MembershipReport(
        m <= k,
        {"drift": drift, "max_infix": m, "tail_start": w.prefix.length, "block": w.period.length},
    )


def letter_weights(word: RleWord, x: Sequence[int]) -> list:
    weight = _x_weight(x)
    return [weight(letter) for letter in word.letters()]


def s_threshold_bruteforce(U: np.ndarray, Vp: np.ndarray) -> np.ndarray:
    """Windowed brute force over expanded letter weights, batched.

    ``U`` has shape ``(B, lu)`` and ``Vp`` shape ``(B, lv)``.  For every split
    point ``t`` the suffix is accepted when a first block from ``t`` to some
    ``e0`` past the prefix is negative and blocks of one or two periods from
    ``e0`` are negative; its cost is the largest infix weight in a window of
    ``lu + 4 lv`` letters.  Returns the least cost, or -1 when no split works.
    """
    B, lu = U.shape
    lv = Vp.shape[1]
    L = lu + lv
    W = lu + 4 * lv
    T = L + W + 2 * lv + 2
    reps = -(-(T - lu) // lv)
    seq = np.concatenate([U, np.tile(Vp, (1, reps))], axis=1)[:, :T]
    P = np.zeros((B, T + 1), dtype=np.int64)
    np.cumsum(seq, axis=1, out=P[:, 1:])
    INF = np.iinfo(np.int64).max
    result = np.full(B, INF, dtype=np.int64)
    # blk[:, e]: a negative block of one or two periods starts at e
    ends = np.arange(T + 1 - 2 * lv)
    blk = (P[:, ends + lv] < P[:, ends]) | (P[:, ends + 2 * lv] < P[:, ends])
    for t in range(L):
        win = P[:, t:t + W + 1]
        run_min = np.minimum.accumulate(win, axis=1)
        cost = (win - run_min).max(axis=1)
        lo = max(lu, t + 1)
        first = P[:, lo:t + W + 1] < P[:, t:t + 1]
        ok = (first & blk[:, lo:t + W + 1]).any(axis=1)
        result = np.where(ok & (cost < result), cost, result)
    return np.where(result == INF, -1, result)


def member_s_bruteforce(w: UPWord, x: Sequence[int], k: int) -> bool:
    U = np.array([letter_weights(w.prefix, x)], dtype=np.int64).reshape(1, -1)
    Vp = np.array([letter_weights(w.period, x)], dtype=np.int64).reshape(1, -1)
    th = int(s_threshold_bruteforce(U, Vp)[0])
    return th >= 0 and th <= k


# ---------------------------------------------------------------- language membership


class _Lasso:
    """Positions ``0 .. |u|+|v|-1`` of ``u·v^ω`` with run-wise advancing."""

    def __init__(self, w: UPWord):
        self.w = w
        self.lu = w.prefix.length
        self.lv = w.period.length
        self.runs = list(w.prefix.runs) + list(w.period.runs)
        self.starts = []
        pos = 0
        for _, c in self.runs:
            self.starts.append(pos)
            pos += c
        self.total = pos
        letters = {letter for letter, _ in w.period.runs}
        self.unary = next(iter(letters)) if len(letters) == 1 else None

    def advance(self, p: int, word: RleWord):
        for letter, c in word.runs:
            while c > 0:
                if p >= self.lu and self.unary is not None:
                    if letter != self.unary:
                        return None
                    p = self.lu + (p - self.lu + c) % self.lv
                    c = 0
                    break
                j = bisect.bisect_right(self.starts, p) - 1
                run_letter, run_len = self.runs[j]
                if run_letter != letter:
                    return None
                take = min(c, self.starts[j] + run_len - p)
                p += take
                c -= take
                if p == self.total:
                    p = self.lu
        return p


def lasso_product(V: BuchiVass, w: UPWord) -> tuple:
    """``(P, origin)``: V synchronised with the lasso of ``w``; ``origin`` maps back to V."""
    lasso = _Lasso(w)
    init = (V.initial, 0)
    states = [init]
    seen = {init}
    ts = []
    origin = []
    queue = [init]
    outgoing = V.outgoing
    while queue:
        q, p = queue.pop(0)
        for idx in outgoing.get(q, ()):
            t = V.transitions[idx]
            p2 = lasso.advance(p, t.word)
            if p2 is None:
                continue
            tgt = (t.target, p2)
            if tgt not in seen:
                seen.add(tgt)
                states.append(tgt)
                queue.append(tgt)
            ts.append(Transition((q, p), t.word, t.update, tgt))
            origin.append(idx)
    finals = frozenset(s for s in states if s[0] in V.finals)
    P = BuchiVass(V.dimension, V.alphabet, tuple(states), init, finals, tuple(ts))
    return P, tuple(origin)


def _progress_origin(V: BuchiVass, Vp: BuchiVass, idx: int) -> int:
    return idx if Vp is V else idx // 2


def profile_lasso(km: KarpMillerGraph, profile) -> tuple:
    """Concrete ``(stem, cycle)`` in ``km.vass`` for a profile."""
    from .separability import euler_circuit

    sigma = euler_circuit(km, profile.multiplicity(), profile.anchor)
    cycle = [km.edges[e].transition for e in sigma]

    def repeatable(config, run):
        return run_transitions(km.vass, cycle, config) is not None

    stem, _ = lift_to_node(km, profile.anchor, repeatable)
    return tuple(stem), tuple(cycle)


def _lasso_word(V: BuchiVass, stem, cycle) -> UPWord:
    u = RleWord(tuple(r for t in stem for r in V.transitions[t].word.runs))
    v = RleWord(tuple(r for t in cycle for r in V.transitions[t].word.runs))
    return up_normalize(u, v)


def member_lang(V: BuchiVass, w: UPWord, budget: int = DEFAULT_KM_BUDGET) -> MembershipReport:
    from .separability import has_profile

    _check_letters(w, V.alphabet)
    Vp = ensure_progress(V)
    P, origin = lasso_product(Vp, w)
    km = build_km(P, budget)
    prof = has_profile(km)
    if prof is None:
        return MembershipReport(False, {"product_states": len(P.states)})
    stem, cycle = profile_lasso(km, prof)
    back = lambda ts: tuple(_progress_origin(V, Vp, origin[t]) for t in ts)  # noqa: E731
    return MembershipReport(True, {"stem": back(stem), "cycle": back(cycle)})


def check_lasso_evidence(V: BuchiVass, w: UPWord, stem, cycle) -> bool:
    """Re-check an accepting lasso of ``V`` over ``w`` by simulation."""
    c = run_transitions(V, stem)
    if c is None or not cycle:
        return False
    c2 = run_transitions(V, cycle, c)
    if c2 is None or c2.state != c.state or any(a < b for a, b in zip(c2.counters, c.counters)):
        return False
    if not any(V.transitions[t].source in V.finals for t in cycle):
        return False
    chain = [V.transitions[t] for t in list(stem) + list(cycle)]
    if any(a.target != b.source for a, b in zip(chain, chain[1:])):
        return False
    return _lasso_word(V, stem, cycle) == w.normalized()


def is_empty(V: BuchiVass, budget: int = DEFAULT_KM_BUDGET) -> bool:
    from .separability import has_profile

    return has_profile(build_km(ensure_progress(V), budget)) is None


def accepted_word(V: BuchiVass, budget: int = DEFAULT_KM_BUDGET):
    """Some UP word of ``L(V)``, or None."""
    from .separability import has_profile

    Vp = ensure_progress(V)
    km = build_km(Vp, budget)
    prof = has_profile(km)
    if prof is None:
        return None
    stem, cycle = profile_lasso(km, prof)
    return _lasso_word(Vp, stem, cycle)


def dyck_witness(A: BuchiVass, budgets=None):
    """A word of ``L(A) ∩ D_n``, or None; balances are checked at every run boundary."""
    budget = budgets.km if budgets is not None else DEFAULT_KM_BUDGET
    split, _ = split_runs(ensure_progress(A))
    tracked = build_vbar(split)
    # keep the letters so that acceptance still demands infinitely many of them
    labelled = BuchiVass(
        tracked.dimension,
        tracked.alphabet,
        tracked.states,
        tracked.initial,
        tracked.finals,
        tuple(
            Transition(t.source, s.word, t.update, t.target)
            for t, s in zip(tracked.transitions, split.transitions)
        ),
    )
    return accepted_word(labelled, budget)


# ---------------------------------------------------------------- fuzzing


def _enabled(V: BuchiVass, c: Configuration) -> list:
    out = []
    for idx in V.outgoing.get(c.state, ()):
        upd = V.transitions[idx].update
        if all(a + b >= 0 for a, b in zip(c.counters, upd)):
            out.append(idx)
    return out


def _find_cycle(V: BuchiVass, c: Configuration, bound: int, rng: random.Random, limit: int):
    """Transition sequence from ``c`` back to its state: visits a final, reads a letter,
    nonnegative effect, executable.  Randomised DFS with an exploration limit."""
    budget = [limit]

    def dfs(cur: Configuration, path: list, final_seen: bool, letter_seen: bool):
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        if path and cur.state == c.state and final_seen and letter_seen:
            if all(a >= b for a, b in zip(cur.counters, c.counters)):
                return list(path)
        if len(path) >= bound:
            return None
        opts = _enabled(V, cur)
        rng.shuffle(opts)
        for idx in opts:
            t = V.transitions[idx]
            nxt = step(V, cur, idx)
            path.append(idx)
            got = dfs(
                nxt,
                path,
                final_seen or t.source in V.finals,
                letter_seen or not t.word.is_empty,
            )
            path.pop()
            if got is not None:
                return got
        return None

    return dfs(c, [], False, False)


def fuzz_accepted_words(
    V: BuchiVass,
    count: int,
    bound: int = 8,
    seed: int = 0,
    budget: int = DEFAULT_KM_BUDGET,
    attempts: int | None = None,
) -> list:
    """Up to ``count`` distinct words of ``L(V)`` found by random lasso search.

    Each word is confirmed with :func:`member_lang` before it is returned.
    """
    rng = random.Random(seed)
    out: list = []
    seen: set = set()
    attempts = attempts if attempts is not None else 40 * count
    for _ in range(attempts):
        if len(out) >= count:
            break
        c = Configuration(V.initial, tuple([0] * V.dimension))
        stem = []
        for _ in range(rng.randint(0, bound)):
            opts = _enabled(V, c)
            if not opts:
                break
            idx = rng.choice(opts)
            c = step(V, c, idx)
            stem.append(idx)
        cycle = _find_cycle(V, c, bound, rng, limit=2000)
        if cycle is None:
            continue
        word = _lasso_word(V, stem, cycle)
        if word in seen:
            continue
        seen.add(word)
        if member_lang(V, word, budget).verdict:
            out.append(word)
    return out


def random_up_words(alphabet: DyckAlphabet, count: int, max_len: int = 6, seed: int = 0) -> list:
    rng = random.Random(seed)
    letters = alphabet.letters
    out = []
    for _ in range(count):
        u = RleWord.of(*[rng.choice(letters) for _ in range(rng.randint(0, max_len))])
        v = RleWord.of(*[rng.choice(letters) for _ in range(rng.randint(1, max_len))])
        out.append(up_normalize(u, v))
    return out


def dyck_members(n: int, count: int, seed: int = 0, max_len: int = 6) -> list:
    """Random UP words in D_n: a Dyck prefix followed by a nonnegative-drift period."""
    rng = random.Random(seed)
    alphabet = DyckAlphabet(n)
    out = []
    while len(out) < count:
        for w in random_up_words(alphabet, 4 * count, max_len, rng.randrange(1 << 30)):
            if member_dyck(w, n).verdict and w not in out:
                out.append(w)
                if len(out) >= count:
                    break
    return out


def member_atom(w: UPWord, atom, n: int) -> bool:
    """Membership in one P or S atom of a cover."""
    if hasattr(atom, "i"):
        return member_p(w, atom.i, atom.k, n).verdict
    return member_s(w, atom.x, atom.k).verdict


def member_cover(w: UPWord, cover, n: int) -> bool:
    return any(member_atom(w, a, n) for a in cover)
