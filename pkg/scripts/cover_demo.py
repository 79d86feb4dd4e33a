"""Compute separator covers for a few Dyck-disjoint automata and spot-check them."""
from regsep.fixtures import lasso_automaton, star_then_bars
from regsep.oracle import dyck_members, fuzz_accepted_words, member_cover
from regsep.separability import basic_separator_cover

DEMOS = {
    "A1^w": lasso_automaton("", "A1"),
    "(a1 A1 A1)^w": lasso_automaton("", "a1 A1^2"),
    "a1* A1^w": star_then_bars(),
    "A1 a1^w": lasso_automaton("A1", "a1"),
}


def main():
    members = dyck_members(1, 30, seed=0)
    for name, A in DEMOS.items():
        cover = basic_separator_cover(A)
        words = fuzz_accepted_words(A, 10, seed=1)
        inside = sum(member_cover(w, cover, 1) for w in words)
        leaks = sum(member_cover(w, cover, 1) for w in members)
        print(f"{name:14} cover {list(cover)}")
        print(f"{'':14} {inside}/{len(words)} sampled words covered, {leaks}/{len(members)} Dyck words hit")


if __name__ == "__main__":
    main()
