"""Small VASS used by tests, scripts and the CLI demos."""
from __future__ import annotations

from .core import BuchiVass, DyckAlphabet, bar_letter, make_vass, pos_letter


def worked_example() -> BuchiVass:
    """Inseparable from D_1 although disjoint from it.

    q0 pumps a counter, q2 spends it on a1 and refunds it on A1, and every
    return to the final state q1 reads one extra A1.
    """
    return make_vass(
        1,
        DyckAlphabet(1),
        ["q0", "q1", "q2"],
        "q0",
        ["q1"],
        [
            ("q0", None, (1,), "q0"),
            ("q0", None, (0,), "q1"),
            ("q1", None, (0,), "q2"),
            ("q2", "a1", (-1,), "q2"),
            ("q2", "A1", (1,), "q2"),
            ("q2", "A1", (0,), "q1"),
        ],
    )


def dyck_acceptor(n: int = 1):
    """One state, one counter per letter pair; accepts exactly D_n."""
    ts = []
    for i in range(1, n + 1):
        up = tuple(1 if j == i else 0 for j in range(1, n + 1))
        down = tuple(-x for x in up)
        ts.append(("d", pos_letter(i), up, "d"))
        ts.append(("d", bar_letter(i), down, "d"))
    return make_vass(n, DyckAlphabet(n), ["d"], "d", ["d"], ts)


def counter_loop():
    """Single state with one ε loop adding one to the only counter."""
    return make_vass(1, DyckAlphabet(1), ["q"], "q", ["q"], [("q", None, (1,), "q")])


def lasso_automaton(prefix: str, period: str, n: int = 1):
    """Deterministic 0-dimensional automaton accepting exactly prefix·period^ω."""
    from .core import RleWord

    u, v = RleWord.parse(prefix), RleWord.parse(period)
    states = ["s", "c"]
    ts = [("s", u, (), "c"), ("c", v, (), "c")]
    return make_vass(0, DyckAlphabet(n), states, "s", ["c"], ts)


def empty_vass(n: int = 1, dimension: int = 0):
    """One final state and no transitions, so no infinite run exists."""
    return make_vass(dimension, DyckAlphabet(n), ["e"], "e", ["e"], [])


def star_then_bars(n: int = 1):
    """a1^* followed by A1^ω, as a 0-dimensional automaton."""
    a, abar = pos_letter(1), bar_letter(1)
    ts = [("p", a, (), "p"), ("p", abar, (), "b"), ("b", abar, (), "b")]
    return make_vass(0, DyckAlphabet(n), ["p", "b"], "p", ["b"], ts)


def random_vass(seed: int, states: int = 3, dimension: int = 1, n: int = 1, transitions: int = 6,
                max_update: int = 1, max_count: int = 2, final_prob: float = 0.4):
    """Seeded random Büchi VASS over the Dyck alphabet with ``n`` letter pairs.

    Each transition reads ε or one run of a random letter.  At least one
    state is final.
    """
    import random

    rng = random.Random(seed)
    alphabet = DyckAlphabet(n)
    names = [f"s{i}" for i in range(states)]
    finals = [q for q in names if rng.random() < final_prob] or [rng.choice(names)]
    ts = []
    for _ in range(transitions):
        src, tgt = rng.choice(names), rng.choice(names)
        if rng.random() < 0.25:
            word = None
        else:
            word = f"{rng.choice(alphabet.letters)}^{rng.randint(1, max_count)}"
        update = tuple(rng.randint(-max_update, max_update) for _ in range(dimension))
        ts.append((src, word, update, tgt))
    return make_vass(dimension, alphabet, names, names[0], finals, ts)
