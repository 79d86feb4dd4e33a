"""Balance tracking and the pumpable product.

``build_vbar`` turns letters into counters: the extra coordinates of the
balance-tracking VASS hold the running balance of the word read so far,
so its runs are exactly the runs of ``V`` whose word is a Dyck prefix.
``build_pump`` restricts ``V`` to the control structure of the
Karp–Miller graph of that VASS.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    EPSILON,
    BuchiVass,
    RegsepError,
    RleWord,
    Transition,
    UPWord,
    balance,
    up_normalize,
)
from .karpmiller import (
    DEFAULT_KM_BUDGET,
    OMEGA,
    KarpMillerGraph,
    UnliftablePath,
    build_km,
    km_max_finite,
    lift_to_node,
    run_transitions,
)


class NotDyckAlphabet(RegsepError):
    pass


class NotAnAcceptingRun(RegsepError):
    pass


def split_runs(V: BuchiVass) -> tuple:
    """Chain every multi-run label into single-run transitions.

    The update is applied on the first piece.  Returns ``(V', origin)``
    where ``origin[j]`` is the index in ``V`` of the transition that
    piece ``j`` came from.  Fresh intermediate states are never final.
    """
    states = list(V.states)
    ts = []
    origin = []
    zero = tuple([0] * V.dimension)
    for idx, t in enumerate(V.transitions):
        if len(t.word.runs) <= 1:
            ts.append(t)
            origin.append(idx)
            continue
        prev = t.source
        for j, run in enumerate(t.word.runs):
            last = j == len(t.word.runs) - 1
            nxt = t.target if last else ("~", idx, j)
            if not last:
                states.append(nxt)
            ts.append(Transition(prev, RleWord((run,)), t.update if j == 0 else zero, nxt))
            origin.append(idx)
            prev = nxt
    if len(ts) == len(V.transitions):
        return V, tuple(origin)
    W = BuchiVass(V.dimension, V.alphabet, tuple(states), V.initial, V.finals, tuple(ts))
    return W, tuple(origin)


def build_vbar(V: BuchiVass) -> BuchiVass:
    if not V.is_dyck:
        raise NotDyckAlphabet("balance tracking needs a Dyck alphabet")
    ts = tuple(
        Transition(t.source, EPSILON, tuple(t.update) + balance(t.word, V.alphabet), t.target)
        for t in V.transitions
    )
    return BuchiVass(V.dimension + V.alphabet.n, V.alphabet, V.states, V.initial, V.finals, ts)


@dataclass(frozen=True)
class PumpArtifacts:
    source: BuchiVass  # V after run splitting; vbar and pump_v refer to it
    origin: tuple  # source transition -> transition of the caller's V
    vbar: BuchiVass
    km_vbar: KarpMillerGraph
    pump_v: BuchiVass
    pump_origin: tuple  # pump_v transition -> source transition
    k: int

    def original_transition(self, pump_t: int) -> int:
        return self.origin[self.pump_origin[pump_t]]


def build_pump(V: BuchiVass, budget: int = DEFAULT_KM_BUDGET) -> PumpArtifacts:
    if not V.is_dyck:
        raise NotDyckAlphabet("pumping needs a Dyck alphabet")
    source, origin = split_runs(V)
    vbar = build_vbar(source)
    km = build_km(vbar, budget)
    ts = []
    pump_origin = []
    for e in km.edges:
        t = source.transitions[e.transition]
        ts.append(Transition(km.nodes[e.source], t.word, t.update, km.nodes[e.target]))
        pump_origin.append(e.transition)
    finals = frozenset(km.nodes[i] for i in km.finals)
    pump_v = BuchiVass(V.dimension, V.alphabet, km.nodes, km.nodes[0], finals, tuple(ts))
    return PumpArtifacts(source, origin, vbar, km, pump_v, tuple(pump_origin), km_max_finite(km))


# ---------------------------------------------------------------- prefix exchange


@dataclass(frozen=True)
class PrefixWitness:
    point: int  # lasso position (prefix then one cycle pass) where the exchange happens
    omega: frozenset  # balance coordinates (0-based) that are ω on the eventual cycle
    w0: RleWord
    w0_prime: RleWord
    prefix_run: tuple  # pump_v transitions reading w0'
    suffix_run: tuple  # pump_v transitions of the prefix after ``point``
    cycle: tuple  # pump_v transitions of the lasso period
    word: UPWord  # w0'·w1 as an ultimately periodic word


def _graph_path(km: KarpMillerGraph, run: list, end: int):
    """Edges of the graph labelled by ``run`` from the initial node to ``end``, or None."""
    by_label: dict = {}
    for idx, e in enumerate(km.edges):
        by_label.setdefault((e.source, e.transition), []).append(idx)
    layers = [{km.initial: None}]
    for t in run:
        nxt: dict = {}
        for node in layers[-1]:
            for ei in by_label.get((node, t), ()):
                nxt.setdefault(km.edges[ei].target, ei)
        if not nxt:
            return None
        layers.append(nxt)
    if end not in layers[-1]:
        return None
    path = []
    node = end
    for layer in reversed(layers[1:]):
        ei = layer[node]
        path.append(ei)
        node = km.edges[ei].source
    return path[::-1]


def _word_of(V: BuchiVass, ts) -> RleWord:
    runs = []
    for t in ts:
        runs.extend(V.transitions[t].word.runs)
    return RleWord(tuple(runs))


def pump_prefix_witness(pa: PumpArtifacts, lasso: tuple, k: int) -> PrefixWitness:
    """Exchange the prefix of an accepting pump_v lasso for a boosted Dyck prefix.

    ``lasso`` is ``(prefix, cycle)`` as pump_v transition indices.  The
    exchange point is the first lasso position whose node is already ω on
    every balance coordinate that is ω along the cycle.  The new prefix
    reaches the same node, is a Dyck prefix, dominates the old balance and
    exceeds ``max(old, 0) + k`` on those coordinates.
    """
    prefix, cycle = (tuple(x) for x in lasso)
    P = pa.pump_v
    _check_lasso(P, prefix, cycle)
    d = pa.source.dimension
    n = pa.source.alphabet.n
    km = pa.km_vbar
    start_node = P.transitions[cycle[0]].source
    omega = frozenset(i for i in range(n) if start_node.counters[d + i] is OMEGA)
    path = list(prefix) + list(cycle)
    nodes = [P.initial] + [P.transitions[t].target for t in path]
    point = next(
        p for p, node in enumerate(nodes) if all(node.counters[d + i] is OMEGA for i in omega)
    )
    # the lasso may only settle during its first cycle pass; unroll that far
    w0 = _word_of(P, path[:point])
    b0 = balance(w0, P.alphabet)
    c0 = run_transitions(P, path[:point])
    if c0 is None:
        raise NotAnAcceptingRun("prefix underflows")
    target = km.index_of(nodes[point])

    def good(config, run):
        # the old suffix must stay executable from the new configuration
        if any(a < b for a, b in zip(config.counters[:d], c0.counters)):
            return False
        bal = config.counters[d:]
        if any(bal[i] < b0[i] for i in range(n)):
            return False
        if any(bal[i] < max(b0[i], 0) + k for i in omega):
            return False
        return _graph_path(km, run, target) is not None

    try:
        run, _ = lift_to_node(km, target, good)
    except UnliftablePath as exc:
        raise NotAnAcceptingRun(str(exc)) from exc
    prefix_run = tuple(_graph_path(km, run, target))
    w0p = _word_of(pa.source, run)
    rest = path[point:len(prefix)] if point <= len(prefix) else ()
    if point <= len(prefix):
        cyc = cycle
        suffix = tuple(rest)
    else:
        # rotate the cycle so that it starts at the exchange point
        off = point - len(prefix)
        cyc = tuple(cycle[off:]) + tuple(cycle[:off])
        suffix = ()
    word = up_normalize(w0p + _word_of(P, suffix), _word_of(P, cyc))
    return PrefixWitness(point, omega, w0, w0p, prefix_run, suffix, cyc, word)


def _check_lasso(P: BuchiVass, prefix, cycle) -> None:
    if not cycle:
        raise NotAnAcceptingRun("empty cycle")
    at = P.initial
    for t in list(prefix) + list(cycle):
        tr = P.transitions[t]
        if tr.source != at:
            raise NotAnAcceptingRun("lasso transitions do not chain")
        at = tr.target
    if at != P.transitions[cycle[0]].source:
        raise NotAnAcceptingRun("cycle does not close")
    if not any(P.transitions[t].source in P.finals for t in cycle):
        raise NotAnAcceptingRun("cycle avoids final states")
    if all(P.transitions[t].word.is_empty for t in cycle):
        raise NotAnAcceptingRun("cycle reads no letters")
    eff = [0] * P.dimension
    for t in cycle:
        for i, x in enumerate(P.transitions[t].update):
            eff[i] += x
    if any(x < 0 for x in eff):
        raise NotAnAcceptingRun("cycle has negative counter effect")
