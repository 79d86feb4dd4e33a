"""Run the bundled inseparable example through every stage and print what each produces."""
import time

from regsep.fixtures import dyck_acceptor, worked_example
from regsep.oracle import member_lang, member_s
from regsep.separability import analyse, decide_pair, flower_witness_word, path_word
from regsep.transduce import reduce_to_dyck


def main():
    V = worked_example()
    an = analyse(V, stop_at_dual=False)
    km = an.km
    print(f"pump constant {an.pump.k}; KM(pump) has {len(km.nodes)} nodes, {len(km.edges)} edges")
    for p, cd, system, outcome in an.results:
        kind = "solution x" if hasattr(outcome, "x") else "dual y"
        vec = outcome.x if hasattr(outcome, "x") else outcome.y
        print(f"profile {list(p.edges)}: {len(cd.cycles)} primitive cycles, rows {list(system.A)}, "
              f"b {list(system.b)}, {kind} = {list(vec)}")
    verdict = decide_pair(V, dyck_acceptor(1))
    f = verdict.flower
    print(f"verdict: {type(verdict).__name__}")
    print(f"flower at node {km.nodes[f.anchor]}: "
          f"alpha {path_word(km, f.alpha)}, beta {path_word(km, f.beta)}, gamma {path_word(km, f.gamma)}")
    for k in range(3):
        w = flower_witness_word(km, f, k)
        outside = not any(member_s(w, (x,), k).verdict for x in (1, 2, 3))
        print(f"k={k}: {w} in L(V): {member_lang(V, w).verdict}; outside S(x,{k}) for x<=3: {outside}")
    start = time.perf_counter()
    R, n = reduce_to_dyck(V, dyck_acceptor(1))
    print(f"general reduction: {len(R.states)} states, {len(R.transitions)} transitions over "
          f"{n} letter pair(s), built in {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
