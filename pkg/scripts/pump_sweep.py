"""Check the pump sandwich on many random VASS and print a summary table."""
import argparse

from regsep.core import DyckAlphabet
from regsep.fixtures import random_vass
from regsep.karpmiller import BudgetExceeded
from regsep.oracle import fuzz_accepted_words, member_lang, member_p, random_up_words
from regsep.pump import build_pump


def sweep(seeds, words_per_vass, dimension):
    rows = []
    for seed in seeds:
        V = random_vass(seed, states=3, dimension=dimension)
        try:
            pa = build_pump(V)
        except BudgetExceeded:
            rows.append((seed, None, 0, 0, 0))
            continue
        words = fuzz_accepted_words(V, words_per_vass // 2, seed=seed, attempts=4 * words_per_vass)
        words += random_up_words(DyckAlphabet(1), words_per_vass - len(words), seed=seed)
        lost = bad = 0
        for w in words:
            in_pump = member_lang(pa.pump_v, w).verdict
            in_v = member_lang(V, w).verdict
            if in_pump and not in_v:
                bad += 1
            if in_v and not in_pump:
                lost += 1
                bad += not member_p(w, 1, pa.k, 1).verdict
        rows.append((seed, pa.k, len(words), lost, bad))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=30)
    ap.add_argument("--words", type=int, default=20)
    ap.add_argument("--dimension", type=int, default=1)
    args = ap.parse_args()
    rows = sweep(range(args.seeds), args.words, args.dimension)
    print("seed   k  words  dropped-by-pump  violations")
    for seed, k, n, lost, bad in rows:
        ks = "budget" if k is None else str(k)
        print(f"{seed:4d} {ks:>3} {n:6d} {lost:16d} {bad:11d}")
    print(f"total violations: {sum(r[4] for r in rows)}")


if __name__ == "__main__":
    main()
