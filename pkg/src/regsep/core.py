"""Alphabets, run-length encoded words, Büchi VASS and ultimately periodic words.

Everything here is immutable.  Words are kept as runs ``(letter, count)`` and
no function in this module expands them, so counts may be arbitrarily large.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Sequence, Union

State = Hashable
Balance = tuple  # tuple[int, ...]


class RegsepError(Exception):
    """Base class for all errors raised by this package."""


class UnknownLetter(RegsepError):
    """A word mentions a letter outside the alphabet."""


class CounterUnderflow(RegsepError):
    """A transition would drive a counter below zero."""

    def __init__(self, index: int):
        super().__init__(f"counter {index} would become negative")
        self.index = index


class BrokenChain(RegsepError):
    """Consecutive transitions do not share an endpoint."""


class EmptyPeriod(RegsepError):
    """An ultimately periodic word needs a nonempty period."""


class InvalidVass(RegsepError):
    """Raised by :meth:`BuchiVass.checked` when :func:`validate` reports problems."""


# ---------------------------------------------------------------- alphabets


def pos_letter(i: int) -> str:
    return f"a{i}"


def bar_letter(i: int) -> str:
    return f"A{i}"


@dataclass(frozen=True)
class DyckAlphabet:
    """Letters ``a1..an`` and their partners ``A1..An`` (capital means barred)."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a Dyck alphabet needs n >= 1")

    @cached_property
    def letters(self) -> tuple:
        return tuple(pos_letter(i) for i in range(1, self.n + 1)) + tuple(
            bar_letter(i) for i in range(1, self.n + 1)
        )

    @cached_property
    def _coord(self) -> dict:
        table = {}
        for i in range(self.n):
            table[pos_letter(i + 1)] = (i, 1)
            table[bar_letter(i + 1)] = (i, -1)
        return table

    def coordinate(self, letter: str) -> tuple:
        """Return ``(index, sign)`` for a letter; raises UnknownLetter."""
        try:
            return self._coord[letter]
        except KeyError:
            raise UnknownLetter(letter) from None

    def partner(self, letter: str) -> str:
        i, sign = self.coordinate(letter)
        return bar_letter(i + 1) if sign > 0 else pos_letter(i + 1)

    def __contains__(self, letter) -> bool:
        return letter in self._coord


@dataclass(frozen=True)
class NamedAlphabet:
    letters: tuple = ()

    def __contains__(self, letter) -> bool:
        return letter in self.letters


Alphabet = Union[DyckAlphabet, NamedAlphabet]


# ---------------------------------------------------------------- words

_TOKEN = re.compile(r"\s*([A-Za-z_][0-9]*)(?:\^([0-9]+))?\s*")


@dataclass(frozen=True)
class RleWord:
    """A finite word stored as runs.  Adjacent equal letters are merged on construction."""

    runs: tuple = ()

    def __post_init__(self):
        merged: list = []
        for letter, count in self.runs:
            count = int(count)
            if count <= 0:
                raise ValueError(f"run count must be positive, got {count}")
            if merged and merged[-1][0] == letter:
                merged[-1] = (letter, merged[-1][1] + count)
            else:
                merged.append((letter, count))
        object.__setattr__(self, "runs", tuple(merged))

    @classmethod
    def of(cls, *letters: str) -> "RleWord":
        return cls(tuple((a, 1) for a in letters))

    @classmethod
    def parse(cls, text: str) -> "RleWord":
        """Parse ``"a1^2 A1^3"`` (spaces optional, ``^`` gives a run count)."""
        runs = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse word at {text[pos:]!r}")
            runs.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
            pos = m.end()
        return cls(tuple(runs))

    @property
    def length(self) -> int:
        return sum(c for _, c in self.runs)

    @property
    def is_empty(self) -> bool:
        return not self.runs

    def __bool__(self) -> bool:
        return bool(self.runs)

    def __add__(self, other: "RleWord") -> "RleWord":
        return RleWord(self.runs + other.runs)

    def power(self, k: int) -> "RleWord":
        if k < 0:
            raise ValueError("negative power")
        if k == 0 or not self.runs:
            return RleWord()
        if len(self.runs) == 1:
            a, c = self.runs[0]
            return RleWord(((a, c * k),))
        return RleWord(self.runs * k)

    def letters(self) -> Iterator[str]:
        """Expanded letters.  Only meant for short words (tests, brute force)."""
        for a, c in self.runs:
            for _ in range(c):
                yield a

    def letter_set(self) -> set:
        return {a for a, _ in self.runs}

    def take(self, n: int) -> "RleWord":
        """First ``n`` letters (or the whole word if shorter)."""
        out = []
        for a, c in self.runs:
            if n <= 0:
                break
            out.append((a, min(c, n)))
            n -= c
        return RleWord(tuple(out))

    def drop(self, n: int) -> "RleWord":
        out = []
        for a, c in self.runs:
            if n >= c:
                n -= c
                continue
            out.append((a, c - n))
            n = 0
        return RleWord(tuple(out))

    def first_letter(self):
        return self.runs[0][0] if self.runs else None

    def last_letter(self):
        return self.runs[-1][0] if self.runs else None

    def strip_prefix(self, prefix: "RleWord"):
        """Return the rest if ``prefix`` is a prefix of this word, else None."""
        if prefix.length > self.length:
            return None
        if self.take(prefix.length) != prefix:
            return None
        return self.drop(prefix.length)

    def __str__(self) -> str:
        if not self.runs:
            return "ε"
        return " ".join(a if c == 1 else f"{a}^{c}" for a, c in self.runs)

    def to_json(self) -> list:
        return [[a, c] for a, c in self.runs]


EPSILON = RleWord()


def balance(w: RleWord, alphabet: DyckAlphabet) -> Balance:
    """Per-pair difference ``#a_i - #abar_i``, straight from the run counts."""
    return balance_of_runs(w.runs, alphabet)


def balance_of_runs(runs: Iterable, alphabet: DyckAlphabet) -> Balance:
    out = [0] * alphabet.n
    for letter, count in runs:
        i, sign = alphabet.coordinate(letter)
        out[i] += sign * count
    return tuple(out)


def vec_add(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(c: int, a: Sequence[int]) -> tuple:
    return tuple(c * x for x in a)


def vec_zero(n: int) -> tuple:
    return (0,) * n


# ---------------------------------------------------------------- VASS


@dataclass(frozen=True)
class Transition:
    source: State
    word: RleWord
    update: tuple
    target: State

    def __str__(self) -> str:
        upd = ",".join(f"{x:+d}" for x in self.update)
        return f"{self.source} --{self.word}|({upd})--> {self.target}"


@dataclass(frozen=True)
class Configuration:
    state: State
    counters: tuple


@dataclass(frozen=True)
class BuchiVass:
    """Finite control with integer counter updates; ``dimension == 0`` is a Büchi automaton.

    A run is accepting when it visits ``finals`` infinitely often and reads
    infinitely many letters.
    """

    dimension: int
    alphabet: Alphabet
    states: tuple
    initial: State
    finals: frozenset
    transitions: tuple

    @cached_property
    def outgoing(self) -> dict:
        table: dict = {q: [] for q in self.states}
        for idx, t in enumerate(self.transitions):
            table.setdefault(t.source, []).append(idx)
        return table

    @cached_property
    def max_label_length(self) -> int:
        return max((t.word.length for t in self.transitions), default=0)

    @property
    def is_dyck(self) -> bool:
        return isinstance(self.alphabet, DyckAlphabet)

    def checked(self) -> "BuchiVass":
        problems = validate(self)
        if problems:
            raise InvalidVass("; ".join(str(p) for p in problems))
        return self


@dataclass(frozen=True)
class Diagnostic:
    code: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}" if self.detail else self.code


def validate(V: BuchiVass) -> list:
    """One diagnostic per violated structural invariant; empty list means well formed."""
    out = []
    states = set(V.states)
    if V.dimension < 0:
        out.append(Diagnostic("NegativeDimension", str(V.dimension)))
    if len(states) != len(V.states):
        out.append(Diagnostic("DuplicateState"))
    if V.initial not in states:
        out.append(Diagnostic("UnknownInitialState", str(V.initial)))
    for q in sorted(map(str, set(V.finals) - states)):
        out.append(Diagnostic("UnknownFinalState", q))
    for idx, t in enumerate(V.transitions):
        for end in (t.source, t.target):
            if end not in states:
                out.append(Diagnostic("UnknownEndpoint", f"transition {idx}: {end}"))
        if len(t.update) != V.dimension:
            out.append(
                Diagnostic("ArityMismatch", f"transition {idx}: {len(t.update)} != {V.dimension}")
            )
        for letter in t.word.letter_set():
            if letter not in V.alphabet:
                out.append(Diagnostic("UnknownLetter", f"transition {idx}: {letter}"))
    return out


def make_vass(
    dimension: int,
    alphabet: Alphabet,
    states: Iterable,
    initial: State,
    finals: Iterable,
    transitions: Iterable,
) -> BuchiVass:
    """Convenience constructor; transitions may be ``(src, word, update, tgt)`` tuples.

    ``word`` may be an RleWord, a string in the inline syntax, or None for ε.
    """
    ts = []
    for t in transitions:
        if isinstance(t, Transition):
            ts.append(t)
            continue
        src, word, update, tgt = t
        if word is None:
            word = EPSILON
        elif isinstance(word, str):
            word = RleWord.parse(word) if word not in ("", "ε") else EPSILON
        ts.append(Transition(src, word, tuple(int(x) for x in update), tgt))
    return BuchiVass(dimension, alphabet, tuple(states), initial, frozenset(finals), tuple(ts))


def step(V: BuchiVass, c: Configuration, t: Union[Transition, int]) -> Configuration:
    if isinstance(t, int):
        t = V.transitions[t]
    if t.source != c.state:
        raise BrokenChain(f"transition starts at {t.source}, configuration is at {c.state}")
    counters = vec_add(c.counters, t.update)
    for i, x in enumerate(counters):
        if x < 0:
            raise CounterUnderflow(i)
    return Configuration(t.target, counters)


@dataclass(frozen=True)
class SimResult:
    config: Configuration
    word: RleWord
    balance: Balance | None


def initial_configuration(V: BuchiVass) -> Configuration:
    return Configuration(V.initial, vec_zero(V.dimension))


def simulate_prefix(V: BuchiVass, ts: Sequence, start: Configuration | None = None) -> SimResult:
    """Fold :func:`step` over ``ts`` from the initial configuration."""
    c = start if start is not None else initial_configuration(V)
    runs: list = []
    for t in ts:
        if isinstance(t, int):
            t = V.transitions[t]
        c = step(V, c, t)
        runs.extend(t.word.runs)
    w = RleWord(tuple(runs))
    bal = balance(w, V.alphabet) if V.is_dyck else None
    return SimResult(c, w, bal)


# ---------------------------------------------------------------- UP words


def _rotate_right(v: RleWord, m: int) -> RleWord:
    """Move the last ``m`` letters of ``v`` to the front."""
    n = v.length
    return v.drop(n - m) + v.take(n - m)


def primitive_root(v: RleWord) -> RleWord:
    """Shortest ``z`` with ``v = z^k``.  Works on cyclic runs, so counts stay symbolic."""
    if not v:
        raise EmptyPeriod()
    runs = list(v.runs)
    if len(runs) == 1:
        return RleWord(((runs[0][0], 1),))
    # cyclic run sequence: merge the last run into the first when letters agree
    cyc = runs[:]
    if cyc[0][0] == cyc[-1][0]:
        a, c = cyc.pop()
        cyc[0] = (a, cyc[0][1] + c)
    r = len(cyc)
    for s in range(1, r + 1):
        if r % s:
            continue
        if all(cyc[i] == cyc[(i + s) % r] for i in range(r)):
            p = sum(c for _, c in cyc[:s])
            return v.take(p)
    return v  # unreachable: s = r always matches


@dataclass(frozen=True)
class UPWord:
    """The infinite word ``prefix · period^ω``."""

    prefix: RleWord
    period: RleWord

    def __post_init__(self):
        if not self.period:
            raise EmptyPeriod()

    @classmethod
    def parse(cls, text: str) -> "UPWord":
        """Inline syntax ``"a1^2 A1^3 @ a1 A1"``; the part after ``@`` is the period."""
        if "@" not in text:
            raise ValueError("an ultimately periodic word needs '@' between prefix and period")
        left, right = text.split("@", 1)
        return cls(RleWord.parse(left), RleWord.parse(right))

    def normalized(self) -> "UPWord":
        return up_normalize(self.prefix, self.period)

    def take(self, n: int) -> RleWord:
        """First ``n`` letters, with period repetitions computed arithmetically."""
        if n <= self.prefix.length:
            return self.prefix.take(n)
        rest = n - self.prefix.length
        q, r = divmod(rest, self.period.length)
        return self.prefix + self.period.power(q) + self.period.take(r)

    def letters(self, limit: int) -> list:
        return list(self.take(limit).letters())

    def alphabet_letters(self) -> set:
        return self.prefix.letter_set() | self.period.letter_set()

    def __str__(self) -> str:
        u = "" if not self.prefix else str(self.prefix) + " "
        return f"{u}@ {self.period}"


def up_normalize(u: RleWord, v: RleWord) -> UPWord:
    """Canonical representative: primitive period, prefix rotated into the period."""
    if not v:
        raise EmptyPeriod()
    v = primitive_root(v)
    while u and u.last_letter() == v.last_letter():
        a, cu = u.runs[-1]
        if len(v.runs) == 1:
            u = u.take(u.length - cu)
            continue
        m = min(cu, v.runs[-1][1])
        u = u.take(u.length - m)
        v = _rotate_right(v, m)
    return UPWord(u, v)


# ---------------------------------------------------------------- progress


def _has_silent_final_cycle(V: BuchiVass) -> bool:
    silent: dict = {}
    for t in V.transitions:
        if t.word.is_empty:
            silent.setdefault(t.source, []).append(t.target)
    for f in V.finals:
        stack, seen = list(silent.get(f, ())), set()
        while stack:
            q = stack.pop()
            if q == f:
                return True
            if q in seen:
                continue
            seen.add(q)
            stack.extend(silent.get(q, ()))
    return False


def ensure_progress(V: BuchiVass) -> BuchiVass:
    """Equivalent VASS in which every accepting run reads infinitely many letters.

    Returned unchanged when no ε-only cycle passes through a final state.
    Otherwise states become ``(q, flag)``: the flag is raised by reading a
    letter and lowered when leaving a final state with the flag up; the
    finals are ``(f, 1)``.
    """
    if not _has_silent_final_cycle(V):
        return V
    states = tuple((q, b) for q in V.states for b in (0, 1))
    ts = []
    for t in V.transitions:
        for b in (0, 1):
            base = 0 if (t.source in V.finals and b == 1) else b
            nb = 1 if not t.word.is_empty else base
            ts.append(Transition((t.source, b), t.word, t.update, (t.target, nb)))
    finals = frozenset((f, 1) for f in V.finals)
    return BuchiVass(V.dimension, V.alphabet, states, (V.initial, 0), finals, tuple(ts))
