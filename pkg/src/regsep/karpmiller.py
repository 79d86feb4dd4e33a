"""Karp–Miller graphs of Büchi VASS.

The graph is obtained from a breadth-first Karp–Miller tree (transitions in
declaration order, acceleration against every ancestor on the tree path)
by merging tree nodes that carry the same extended configuration.  A tree
node whose configuration was already expanded elsewhere becomes a leaf.  Every
tree node remembers its parent, the transition that created it and the
accelerations applied, which is enough to turn a graph path back into a
concrete run of the VASS (:func:`lift_tree_path`).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import BuchiVass, Configuration, CounterUnderflow, RegsepError, State, step


class BudgetExceeded(RegsepError):
    def __init__(self, count: int, what: str = "Karp-Miller nodes"):
        super().__init__(f"budget exceeded: more than {count} {what}")
        self.count = count


class UnliftablePath(RegsepError):
    pass


class _Omega:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "w"

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()

DEFAULT_KM_BUDGET = 50_000


def is_omega(x) -> bool:
    return x is OMEGA


def ext_add(counters: Sequence, delta: Sequence[int]) -> tuple:
    return tuple(OMEGA if c is OMEGA else c + d for c, d in zip(counters, delta))


def ext_leq(a: Sequence, b: Sequence) -> bool:
    """Componentwise order on ℕ ∪ {ω}."""
    for x, y in zip(a, b):
        if y is OMEGA:
            continue
        if x is OMEGA or x > y:
            return False
    return True


def covers(node_counters: Sequence, concrete: Sequence[int]) -> bool:
    return ext_leq(concrete, node_counters)


def fmt_counter(x) -> str:
    return "w" if x is OMEGA else str(x)


@dataclass(frozen=True)
class KMNode:
    state: State
    counters: tuple

    def __str__(self) -> str:
        inner = ",".join([str(self.state)] + [fmt_counter(c) for c in self.counters])
        return f"({inner})"

    @property
    def omega_coords(self) -> frozenset:
        return frozenset(i for i, c in enumerate(self.counters) if c is OMEGA)


@dataclass(frozen=True)
class KMEdge:
    source: int
    transition: int
    target: int


@dataclass(frozen=True)
class TreeNode:
    node: int  # graph node index
    parent: int | None
    transition: int | None
    accelerations: tuple = ()  # (ancestor tree index, accelerated coordinates)
    depth: int = 0


@dataclass(frozen=True)
class KarpMillerGraph:
    vass: BuchiVass
    nodes: tuple
    edges: tuple
    finals: frozenset
    tree: tuple
    first_tree: tuple  # graph node -> first tree node carrying it
    initial: int = 0
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def index_of(self, node: KMNode) -> int:
        return self._index[node]

    def edge_update(self, e: int) -> tuple:
        return self.vass.transitions[self.edges[e].transition].update

    def edge_word(self, e: int):
        return self.vass.transitions[self.edges[e].transition].word

    @property
    def out_edges(self) -> dict:
        table = getattr(self, "_out", None)
        if table is None:
            table = {i: [] for i in range(len(self.nodes))}
            for idx, e in enumerate(self.edges):
                table[e.source].append(idx)
            object.__setattr__(self, "_out", table)
        return table

    def dump(self) -> str:
        lines = [f"nodes {len(self.nodes)}"]
        for i, n in enumerate(self.nodes):
            mark = " final" if i in self.finals else ""
            mark += " initial" if i == self.initial else ""
            lines.append(f"  {i}: {n}{mark}")
        lines.append(f"edges {len(self.edges)}")
        for e in self.edges:
            t = self.vass.transitions[e.transition]
            lines.append(f"  {e.source} -t{e.transition}[{t.word}|{tuple(t.update)}]-> {e.target}")
        return "\n".join(lines)


def _accelerate(counters: list, state, path: list, tree: list, nodes: list) -> list:
    """Raise coordinates to ω against dominated ancestors until nothing changes."""
    accel = []
    changed = True
    while changed:
        changed = False
        for anc in path:
            a = nodes[tree[anc].node]
            if a.state != state or not ext_leq(a.counters, counters):
                continue
            raised = tuple(
                i for i, (x, y) in enumerate(zip(a.counters, counters))
                if x is not OMEGA and y is not OMEGA and x < y
            )
            if raised:
                for i in raised:
                    counters[i] = OMEGA
                accel.append((anc, raised))
                changed = True
    return accel


def build_km(V: BuchiVass, budget: int = DEFAULT_KM_BUDGET) -> KarpMillerGraph:
    if budget < 1:
        raise ValueError("budget must be at least 1")
    root = KMNode(V.initial, tuple([0] * V.dimension))
    nodes = [root]
    index = {root: 0}
    tree = [TreeNode(0, None, None)]
    first_tree = [0]
    edges: list = []
    edge_seen: set = set()
    queue = deque([0])
    expanded: set = set()
    outgoing = V.outgoing

    def ancestors(ti: int) -> list:
        out = []
        while ti is not None:
            out.append(ti)
            ti = tree[ti].parent
        return out

    while queue:
        ti = queue.popleft()
        tn = tree[ti]
        node = nodes[tn.node]
        # each extended configuration is expanded once, at its shallowest occurrence
        if tn.node in expanded:
            continue
        expanded.add(tn.node)
        path = ancestors(ti)
        for tidx in outgoing.get(node.state, ()):
            t = V.transitions[tidx]
            if any(c is not OMEGA and c + d < 0 for c, d in zip(node.counters, t.update)):
                continue
            counters = list(ext_add(node.counters, t.update))
            accel = _accelerate(counters, t.target, path, tree, nodes)
            child = KMNode(t.target, tuple(counters))
            gi = index.get(child)
            if gi is None:
                gi = len(nodes)
                nodes.append(child)
                index[child] = gi
                first_tree.append(len(tree))
            key = (tn.node, tidx, gi)
            if key not in edge_seen:
                edge_seen.add(key)
                edges.append(KMEdge(*key))
            tree.append(TreeNode(gi, ti, tidx, tuple(accel), tn.depth + 1))
            if len(tree) > budget:
                raise BudgetExceeded(budget)
            queue.append(len(tree) - 1)

    finals = frozenset(i for i, n in enumerate(nodes) if n.state in V.finals)
    return KarpMillerGraph(
        V, tuple(nodes), tuple(edges), finals, tuple(tree), tuple(first_tree), 0, index
    )


def km_max_finite(km: KarpMillerGraph) -> int:
    return max((c for n in km.nodes for c in n.counters if c is not OMEGA), default=0)


# ---------------------------------------------------------------- lifting


def tree_path(km: KarpMillerGraph, ti: int) -> list:
    """Tree indices from the root down to ``ti``."""
    out = []
    while ti is not None:
        out.append(ti)
        ti = km.tree[ti].parent
    return out[::-1]


def lift_tree_path(km: KarpMillerGraph, ti: int, repeat: int) -> list:
    """Transition indices realizing the tree path to ``ti``.

    At every accelerated tree node the concrete segment since the witnessing
    ancestor is replayed ``repeat`` extra times, which pumps the raised
    coordinates.
    """
    seq: list = []
    pos: dict = {}
    for tj in tree_path(km, ti):
        tn = km.tree[tj]
        if tn.transition is not None:
            seq.append(tn.transition)
        for anc, _coords in tn.accelerations:
            seg = seq[pos[anc]:]
            seq.extend(seg * repeat)
        pos[tj] = len(seq)
    return seq


def run_transitions(V: BuchiVass, ts: Iterable[int], start: Configuration | None = None):
    """Simulate; returns the reached configuration or None on underflow."""
    c = start if start is not None else Configuration(V.initial, tuple([0] * V.dimension))
    try:
        for t in ts:
            c = step(V, c, t)
    except CounterUnderflow:
        return None
    return c


def lift_to_node(
    km: KarpMillerGraph,
    node: int,
    accept: Callable[[Configuration, list], bool] | None = None,
    max_repeat: int = 1 << 12,
) -> tuple:
    """Concrete run from the initial configuration to ``node``.

    Tries growing repetition counts on every tree occurrence of ``node``
    until the run executes and ``accept(config, run)`` holds.  Returns
    ``(run, config)``.
    """
    occurrences = [km.first_tree[node]] + [
        i for i, tn in enumerate(km.tree) if tn.node == node and i != km.first_tree[node]
    ]
    repeat = 0
    while repeat <= max_repeat:
        for ti in occurrences:
            run = lift_tree_path(km, ti, repeat)
            c = run_transitions(km.vass, run)
            if c is not None and covers(km.nodes[node].counters, c.counters) and (
                accept is None or accept(c, run)
            ):
                return run, c
        repeat = 1 if repeat == 0 else repeat * 2
    raise UnliftablePath(f"no concrete run found for node {km.nodes[node]}")
