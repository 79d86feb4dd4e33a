"""Profiles, per-profile inequality systems, flowers and the decision procedure.

A profile is a set of edges of a Karp–Miller graph that a single cycle
through a final node can use exactly, with nonnegative counter effect.
For each profile the balances of its simple cycles and of one complete
cycle give a system ``A x <= b``.  A solution ``x`` yields a separator
``S(x, k)``; an infeasibility certificate yields three cycles (a flower)
whose words escape every such separator.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx
import numpy as np

from .core import (
    BuchiVass,
    DyckAlphabet,
    InvalidVass,
    RegsepError,
    RleWord,
    UPWord,
    balance,
    ensure_progress,
    up_normalize,
    vec_add,
)
from .karpmiller import (
    DEFAULT_KM_BUDGET,
    KarpMillerGraph,
    UnliftablePath,
    build_km,
    lift_to_node,
    run_transitions,
)
from .pump import PumpArtifacts, build_pump
from .ratlp import Certificate, feasible, scale_to_integers, simplex_feasible, verify_certificate

DEFAULT_PROFILE_CAP = 200_000


class CapExceeded(RegsepError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"profile enumeration needs {count} candidate subsets, cap is {cap}")
        self.count = count
        self.cap = cap


class InternalInvariantViolation(RegsepError):
    pass


class InvalidDual(RegsepError):
    pass


class NotCyclesAtAnchor(RegsepError):
    pass


class NotDisjointFromDyck(RegsepError):
    def __init__(self, witness):
        super().__init__(f"language meets the Dyck language, e.g. {witness}")
        self.witness = witness


@dataclass(frozen=True)
class Budgets:
    km: int = DEFAULT_KM_BUDGET
    profile_cap: int = DEFAULT_PROFILE_CAP


# ---------------------------------------------------------------- edge data


def edge_balance(km: KarpMillerGraph, e: int) -> tuple:
    cache = km.__dict__.setdefault("_bal_cache", {})
    if e not in cache:
        cache[e] = balance(km.edge_word(e), km.vass.alphabet)
    return cache[e]


def path_balance(km: KarpMillerGraph, edges: Sequence[int]) -> tuple:
    out = tuple([0] * km.vass.alphabet.n)
    for e in edges:
        out = vec_add(out, edge_balance(km, e))
    return out


def path_effect(km: KarpMillerGraph, edges: Sequence[int]) -> tuple:
    out = tuple([0] * km.vass.dimension)
    for e in edges:
        out = vec_add(out, km.edge_update(e))
    return out


def path_word(km: KarpMillerGraph, edges: Sequence[int]) -> RleWord:
    runs = []
    for e in edges:
        runs.extend(km.edge_word(e).runs)
    return RleWord(tuple(runs))


def is_cycle_at(km: KarpMillerGraph, edges: Sequence[int], node: int) -> bool:
    if not edges:
        return False
    at = node
    for e in edges:
        if km.edges[e].source != at:
            return False
        at = km.edges[e].target
    return at == node


# ---------------------------------------------------------------- profiles


@dataclass(frozen=True)
class Profile:
    edges: tuple  # sorted KM edge indices
    witness: tuple  # integer circulation aligned with ``edges``
    anchor: int  # a final node touched by the edges

    def multiplicity(self) -> dict:
        return dict(zip(self.edges, self.witness))

    def nodes(self, km: KarpMillerGraph) -> frozenset:
        return frozenset(
            v for e in self.edges for v in (km.edges[e].source, km.edges[e].target)
        )


def _circulation(km: KarpMillerGraph, edges: Sequence[int], force: int | None = None):
    """Rational circulation on ``edges`` with nonnegative counter effect.

    Every edge is used at least once, or only ``force`` is when given.
    """
    edges = list(edges)
    ne = len(edges)
    # lower bounds are shifted out: x = low + y with y >= 0
    low = [1 if force is None or e == force else 0 for e in edges]
    nodes = sorted({v for e in edges for v in (km.edges[e].source, km.edges[e].target)})
    # a coordinate finite on every touched node is exact there, so circulations are neutral on it
    relevant = set()
    for v in nodes:
        relevant |= km.nodes[v].omega_coords
    A_ub, b_ub = [], []
    for i in sorted(relevant):
        row = [-km.edge_update(e)[i] for e in edges]
        A_ub.append(row)
        b_ub.append(-sum(a * l for a, l in zip(row, low)))
    A_eq, b_eq = [], []
    for v in nodes:
        row = [0] * ne
        for j, e in enumerate(edges):
            if km.edges[e].source == v:
                row[j] += 1
            if km.edges[e].target == v:
                row[j] -= 1
        A_eq.append(row)
        b_eq.append(-sum(a * l for a, l in zip(row, low)))
    y = simplex_feasible(A_ub, b_ub, A_eq, b_eq, ncols=ne)
    if y is None:
        return None
    return tuple(a + l for a, l in zip(y, low))


def _strongly_connected(km: KarpMillerGraph, edges: Sequence[int]) -> bool:
    out: dict = {}
    inc: dict = {}
    for e in edges:
        s, t = km.edges[e].source, km.edges[e].target
        out.setdefault(s, []).append(t)
        inc.setdefault(t, []).append(s)
    nodes = set(out) | set(inc)
    if set(out) != nodes or set(inc) != nodes:
        return False
    root = next(iter(sorted(nodes)))
    for adj in (out, inc):
        seen = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            for w in adj.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != nodes:
            return False
    return True


def _components(km: KarpMillerGraph, alive=None) -> list:
    """SCCs (sorted by least node) with their internal edges, skipping edgeless ones."""
    alive = range(len(km.edges)) if alive is None else alive
    g = nx.DiGraph()
    g.add_nodes_from(range(len(km.nodes)))
    for e in alive:
        g.add_edge(km.edges[e].source, km.edges[e].target)
    out = []
    for comp in nx.strongly_connected_components(g):
        inner = sorted(
            e for e in alive if km.edges[e].source in comp and km.edges[e].target in comp
        )
        if inner:
            out.append((min(comp), frozenset(comp), inner))
    out.sort(key=lambda c: c[0])
    return [(comp, inner) for _, comp, inner in out]


def _make_profile(km, edges, x) -> Profile:
    w = scale_to_integers(x)
    touched = {v for e in edges for v in (km.edges[e].source, km.edges[e].target)}
    anchor = min(v for v in touched if v in km.finals)
    return Profile(tuple(edges), w, anchor)


def enumerate_profiles(km: KarpMillerGraph, cap: int = DEFAULT_PROFILE_CAP) -> list:
    """All profiles, per final-touching component, by increasing size."""
    comps = [(c, inner) for c, inner in _components(km) if c & km.finals]
    total = sum((1 << len(inner)) - 1 for _, inner in comps)
    if total > cap:
        raise CapExceeded(total, cap)
    found = []
    for comp, inner in comps:
        for size in range(1, len(inner) + 1):
            for subset in itertools.combinations(inner, size):
                if not any(
                    km.edges[e].source in km.finals or km.edges[e].target in km.finals
                    for e in subset
                ):
                    continue
                if not _strongly_connected(km, subset):
                    continue
                x = _circulation(km, subset)
                if x is not None:
                    found.append(_make_profile(km, subset, x))
    return found


_FLOAT_SAFE = 1 << 40


def _omega_coords(km: KarpMillerGraph, comp) -> list:
    """Coordinates that are ω on the component; all its cycles are neutral elsewhere."""
    v = next(iter(comp))
    return sorted(km.nodes[v].omega_coords) if km.vass.dimension else []


def _single_coordinate_support(km: KarpMillerGraph, comp, inner, i: int):
    """Edges of the component on some circulation with nonnegative effect on ``i``.

    With one relevant coordinate a circulation decomposes into cycles, so an
    edge qualifies iff the component has a positive cycle or some cycle
    through the edge has weight zero.  Longest paths by Floyd–Warshall.
    Returns None when weights are too large for exact float arithmetic.
    """
    nodes = sorted(comp)
    pos = {v: j for j, v in enumerate(nodes)}
    n = len(nodes)
    D = np.full((n, n), -np.inf)
    for e in inner:
        w = km.edge_update(e)[i]
        if abs(w) > _FLOAT_SAFE // max(1, n):
            return None
        a, b = pos[km.edges[e].source], pos[km.edges[e].target]
        D[a, b] = max(D[a, b], w)
    for k in range(n):
        D = np.maximum(D, D[:, k:k + 1] + D[k:k + 1, :])
    if np.any(np.diag(D) > 0):
        return list(inner)
    out = []
    for e in inner:
        a, b = pos[km.edges[e].source], pos[km.edges[e].target]
        back = 0.0 if a == b else D[b, a]
        if km.edge_update(e)[i] + back >= 0:
            out.append(e)
    return out


def _component_support(km: KarpMillerGraph, comp, inner) -> list:
    coords = _omega_coords(km, comp)
    if not coords:
        return list(inner)
    if len(coords) == 1:
        got = _single_coordinate_support(km, comp, inner, coords[0])
        if got is not None:
            return got
    covered: set = set()
    for e in inner:
        if e in covered:
            continue
        x = _circulation(km, inner, force=e)
        if x is not None:
            covered.update(f for f, v in zip(inner, x) if v > 0)
    return [e for e in inner if e in covered]


def has_profile(km: KarpMillerGraph):
    """Some profile, or None, without enumerating subsets.

    Edges that lie on no nonnegative circulation of their component are
    discarded until every remaining component is covered by one; any
    remaining component with a final node then carries a profile.
    """
    found = maximal_profiles(km, first_only=True)
    return found[0] if found else None


def maximal_profiles(km: KarpMillerGraph, first_only: bool = False) -> list:
    """The largest profile of every component that carries one.

    Every profile is contained in one of these, since the union of two
    profiles in one component is again a profile.
    """
    alive = set(range(len(km.edges)))
    while True:
        keep = set()
        for comp, inner in _components(km, sorted(alive)):
            keep.update(_component_support(km, comp, inner))
        if keep == alive:
            break
        alive = keep
    out = []
    for comp, inner in _components(km, sorted(alive)):
        if comp & km.finals:
            x = _circulation(km, inner)
            if x is None:
                raise InternalInvariantViolation("covered component has no circulation")
            out.append(_make_profile(km, inner, x))
            if first_only:
                break
    return out


# ---------------------------------------------------------------- cycles


@dataclass(frozen=True)
class Cycle:
    edges: tuple
    start: int
    balance: tuple
    effect: tuple


def primitive_cycles(km: KarpMillerGraph, edges: Sequence[int]) -> list:
    """Simple cycles of the sub-multigraph, each rotated to start at its least edge."""
    es = sorted(set(edges))
    out_by_node: dict = {}
    for e in es:
        out_by_node.setdefault(km.edges[e].source, []).append(e)
    found = []
    for e0 in es:
        s0, t0 = km.edges[e0].source, km.edges[e0].target
        if t0 == s0:
            found.append((e0,))
            continue
        # paths t0 -> s0 over larger edges without repeating nodes
        stack = [(t0, [e0], {s0, t0})]
        while stack:
            v, path, seen = stack.pop()
            for e in out_by_node.get(v, ()):
                if e <= e0:
                    continue
                w = km.edges[e].target
                if w == s0:
                    found.append(tuple(path + [e]))
                elif w not in seen:
                    stack.append((w, path + [e], seen | {w}))
    found.sort()
    return [
        Cycle(c, km.edges[c[0]].source, path_balance(km, c), path_effect(km, c)) for c in found
    ]


def euler_circuit(km: KarpMillerGraph, multiplicity: dict, start: int) -> tuple:
    """Hierholzer on the multigraph using edge ``e`` exactly ``multiplicity[e]`` times."""
    remaining = dict(multiplicity)
    out: dict = {}
    for e in sorted(remaining):
        out.setdefault(km.edges[e].source, []).append(e)
    ptr = {v: 0 for v in out}
    stack = [(start, None)]
    circuit = []
    while stack:
        v, _ = stack[-1]
        lst = out.get(v, [])
        while ptr.get(v, 0) < len(lst) and remaining[lst[ptr[v]]] == 0:
            ptr[v] += 1
        if ptr.get(v, 0) < len(lst):
            e = lst[ptr[v]]
            remaining[e] -= 1
            stack.append((km.edges[e].target, e))
        else:
            _, e = stack.pop()
            if e is not None:
                circuit.append(e)
    if any(remaining.values()):
        raise InternalInvariantViolation("circulation is not connected")
    return tuple(reversed(circuit))


@dataclass(frozen=True)
class CycleData:
    profile: Profile
    cycles: tuple  # primitive cycles
    sigma: tuple  # Euler circuit of the witness
    power: int  # K
    sigma_c: tuple  # sigma repeated K times
    r: tuple
    insertion: tuple  # position in sigma_c where each primitive cycle is inserted


def _counts(edges: Sequence[int]) -> dict:
    c: dict = {}
    for e in edges:
        c[e] = c.get(e, 0) + 1
    return c


def _cycle_multiplicities(km: KarpMillerGraph, sigma: tuple, cycles: list) -> tuple:
    """``(r, K)`` with every r_i >= 1 and sigma^K splitting into r_i copies of cycle i.

    K is the least power covering one copy of every cycle; the leftover is a
    nonnegative circulation on the profile, peeled into simple cycles.
    """
    sc = _counts(sigma)
    once: dict = {}
    for c in cycles:
        for e in c.edges:
            once[e] = once.get(e, 0) + 1
    K = max(1, max(-(-once.get(e, 0) // sc[e]) for e in sc))
    rest = {e: K * sc[e] - once.get(e, 0) for e in sc}
    index = {c.edges: i for i, c in enumerate(cycles)}
    r = [1] * len(cycles)
    out: dict = {}
    for e in sorted(sc):
        out.setdefault(km.edges[e].source, []).append(e)
    while True:
        start = next((e for e in sorted(rest) if rest[e] > 0), None)
        if start is None:
            break
        # walk along leftover edges until a node repeats; the loop is simple
        walk = [start]
        pos = {km.edges[start].source: 0}
        v = km.edges[start].target
        while v not in pos:
            pos[v] = len(walk)
            e = next(e for e in out[v] if rest[e] > 0)
            walk.append(e)
            v = km.edges[e].target
        loop = walk[pos[v]:]
        low = min(range(len(loop)), key=lambda j: loop[j])
        key = tuple(loop[low:] + loop[:low])
        i = index.get(key)
        if i is None:
            raise InternalInvariantViolation("leftover cycle is not primitive")
        take = min(rest[e] for e in loop)
        r[i] += take
        for e in loop:
            rest[e] -= take
    return tuple(r), K


def complete_cycle(km: KarpMillerGraph, profile: Profile) -> CycleData:
    sigma = euler_circuit(km, profile.multiplicity(), profile.anchor)
    cycles = primitive_cycles(km, profile.edges)
    r, K = _cycle_multiplicities(km, sigma, cycles)
    sigma_c = sigma * K
    insertion = []
    for c in cycles:
        pos = next((p for p, e in enumerate(sigma_c) if km.edges[e].source == c.start), None)
        if pos is None:
            raise InternalInvariantViolation("complete cycle misses a primitive cycle start")
        insertion.append(pos)
    cd = CycleData(profile, tuple(cycles), sigma, K, sigma_c, r, tuple(insertion))
    _check_decomposition(km, cd)
    return cd


def _check_decomposition(km, cd: CycleData) -> None:
    lhs = _counts(cd.sigma_c)
    rhs: dict = {}
    for ri, c in zip(cd.r, cd.cycles):
        for e in c.edges:
            rhs[e] = rhs.get(e, 0) + ri
    if lhs != rhs:
        raise InternalInvariantViolation("edge multiset identity fails")


def with_insertions(km: KarpMillerGraph, cd: CycleData, z: Sequence[int]) -> tuple:
    """The complete cycle with each primitive cycle ``i`` inserted ``z_i - r_i`` extra times."""
    extra: dict = {}
    for i, (zi, ri) in enumerate(zip(z, cd.r)):
        if zi < ri:
            raise ValueError("z must dominate r")
        extra.setdefault(cd.insertion[i], []).extend(cd.cycles[i].edges * (zi - ri))
    out = []
    for p, e in enumerate(cd.sigma_c):
        out.extend(extra.get(p, ()))
        out.append(e)
    return tuple(out)


# ---------------------------------------------------------------- systems


@dataclass(frozen=True)
class IneqSystem:
    A: tuple
    b: tuple


def build_system(km: KarpMillerGraph, cd: CycleData) -> IneqSystem:
    rows = [c.balance for c in cd.cycles] + [path_balance(km, cd.sigma_c)]
    b = tuple([0] * len(cd.cycles) + [-1])
    return IneqSystem(tuple(tuple(r) for r in rows), b)


@dataclass(frozen=True)
class ProfileSolution:
    x: tuple


@dataclass(frozen=True)
class Dual:
    y: tuple


def profile_verdict(system: IneqSystem):
    res = feasible([list(r) for r in system.A], list(system.b), ncols=len(system.A[0]))
    if isinstance(res, Certificate):
        y = scale_to_integers(res.y)
        if not verify_certificate(system.A, system.b, y) or y[-1] <= 0:
            raise InternalInvariantViolation("certificate does not verify")
        return Dual(y)
    return ProfileSolution(scale_to_integers(res.x))


# ---------------------------------------------------------------- flowers


@dataclass(frozen=True)
class Flower:
    anchor: int
    alpha: tuple
    beta: tuple
    gamma: tuple
    y_hat: tuple = ()
    M: int = 0
    s: tuple = ()
    N: int = 0
    t: tuple = ()


def build_flower(km: KarpMillerGraph, cd: CycleData, y: Sequence[int]) -> Flower:
    system = build_system(km, cd)
    if not verify_certificate(system.A, system.b, y):
        raise InvalidDual(str(tuple(y)))
    m = len(cd.cycles)
    y = [int(v) for v in scale_to_integers(y)]
    r = cd.r
    y_hat = tuple(y[i] + y[m] * r[i] for i in range(m))
    M = max(1, max(-(-2 * r[i] // y_hat[i]) for i in range(m)))
    s = tuple(M * y_hat[i] - r[i] for i in range(m))
    N = max(1, max(-(-(s[i] + 2 * r[i]) // r[i]) for i in range(m)))
    t = tuple(N * r[i] - s[i] - r[i] for i in range(m))
    alpha = cd.sigma_c
    beta = with_insertions(km, cd, s)
    gamma = with_insertions(km, cd, t)
    return Flower(km.edges[cd.sigma_c[0]].source, alpha, beta, gamma, y_hat, M, s, N, t)


def _parallel(v: Sequence[int], base: Sequence[int]) -> bool:
    """``v`` is a rational multiple of ``base``."""
    if all(x == 0 for x in v):
        return True
    if all(x == 0 for x in base):
        return False
    j = next(i for i, x in enumerate(base) if x != 0)
    c = Fraction(v[j], base[j])
    return all(Fraction(x) == c * b for x, b in zip(v, base))


def flower_conditions(km: KarpMillerGraph, f: Flower) -> dict:
    if f.anchor not in km.finals:
        raise NotCyclesAtAnchor("anchor is not final")
    for name in ("alpha", "beta", "gamma"):
        if not is_cycle_at(km, getattr(f, name), f.anchor):
            raise NotCyclesAtAnchor(f"{name} is not a cycle at the anchor")
    abg = f.alpha + f.beta + f.gamma
    return {
        "internal": all(x >= 0 for x in path_effect(km, abg)),
        "prefix_balance": all(x >= 0 for x in path_balance(km, f.alpha + f.beta)),
        "parallel": _parallel(path_balance(km, abg), path_balance(km, f.alpha)),
    }


def verify_flower(km: KarpMillerGraph, f: Flower) -> bool:
    return all(flower_conditions(km, f).values())


def flower_witness(km: KarpMillerGraph, f: Flower, k: int) -> tuple:
    """``(word, stem, period)``: a concrete run reaching the anchor, then the repeated petals.

    ``stem`` and ``period`` are transition indices of ``km.vass``.
    """
    period_edges = f.alpha * (k + 1) + f.beta * (k + 1) + f.gamma * (k + 1)
    period = [km.edges[e].transition for e in period_edges]
    V = km.vass

    def repeatable(config, run):
        # the period has nonnegative effect, so running it once suffices
        return run_transitions(V, period, config) is not None

    try:
        stem, _ = lift_to_node(km, f.anchor, repeatable)
    except UnliftablePath:
        raise
    u = RleWord(tuple(r for t in stem for r in V.transitions[t].word.runs))
    v = path_word(km, period_edges)
    return up_normalize(u, v), tuple(stem), tuple(period)


def flower_witness_word(km: KarpMillerGraph, f: Flower, k: int) -> UPWord:
    return flower_witness(km, f, k)[0]


# ---------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class PAtom:
    i: int  # 1-based letter pair
    k: int

    def __str__(self) -> str:
        return f"P({self.i},{self.k})"


@dataclass(frozen=True)
class SAtom:
    x: tuple
    k: int

    def __str__(self) -> str:
        return f"S(({','.join(map(str, self.x))}),{self.k})"


@dataclass
class Analysis:
    """Everything computed on the way to a verdict, for reports and tests."""

    vass: BuchiVass
    pump: PumpArtifacts | None = None
    km: KarpMillerGraph | None = None
    profiles: list = field(default_factory=list)
    results: list = field(default_factory=list)  # (profile, CycleData, IneqSystem, outcome)
    exhaustive: bool = True  # False when only maximal profiles were examined
    cover_route: str = "pump"  # "direct" when the cover comes from KM(V) itself


@dataclass(frozen=True)
class Separable:
    cover: tuple
    analysis: Analysis | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Inseparable:
    profile: Profile
    system: IneqSystem
    certificate: tuple
    flower: Flower
    analysis: Analysis | None = field(default=None, compare=False, repr=False)


def analyse(V: BuchiVass, budgets: Budgets = Budgets(), stop_at_dual: bool = True) -> Analysis:
    if not V.is_dyck:
        raise InvalidVass("a Dyck alphabet is required")
    V0 = ensure_progress(V)
    pa = build_pump(V0, budgets.km)
    km = build_km(pa.pump_v, budgets.km)
    try:
        an = Analysis(V, pa, km, enumerate_profiles(km, budgets.profile_cap))
    except CapExceeded as exc:
        # a dual on a maximal profile still proves inseparability
        an = Analysis(V, pa, km, maximal_profiles(km), exhaustive=False)
        _examine(an, stop_at_dual=True)
        if not any(isinstance(r[3], Dual) for r in an.results):
            raise exc
        return an
    _examine(an, stop_at_dual)
    return an


def _examine(an: Analysis, stop_at_dual: bool) -> None:
    for p in an.profiles:
        cd = complete_cycle(an.km, p)
        system = build_system(an.km, cd)
        outcome = profile_verdict(system)
        an.results.append((p, cd, system, outcome))
        if stop_at_dual and isinstance(outcome, Dual):
            break


def decide(V: BuchiVass, budgets: Budgets = Budgets()):
    an = analyse(V, budgets)
    km = an.km
    for p, cd, system, outcome in an.results:
        if isinstance(outcome, Dual):
            f = build_flower(km, cd, outcome.y)
            if not verify_flower(km, f):
                raise InternalInvariantViolation("constructed flower fails verification")
            return Inseparable(p, system, outcome.y, f, an)
    direct = direct_cover(V, budgets)
    if direct is not None:
        an.cover_route = "direct"
        return Separable(direct, an)
    h = max(1, an.pump.pump_v.max_label_length)
    atoms = []
    for p, cd, system, outcome in an.results:
        atom = SAtom(tuple(outcome.x), len(p.nodes(km)) * h)
        if atom not in atoms:
            atoms.append(atom)
    atoms.extend(PAtom(i, an.pump.k) for i in range(1, V.alphabet.n + 1))
    return Separable(tuple(atoms), an)


def direct_cover(V: BuchiVass, budgets: Budgets = Budgets()):
    """S atoms from the profiles of KM(V) itself, or None if one of them has a dual.

    Every accepting run ends inside a profile of KM(V), so when all their
    systems are solvable the S atoms alone cover L(V).  An empty tuple
    means L(V) is empty.
    """
    Vp = ensure_progress(V)
    km = build_km(Vp, budgets.km)
    try:
        profiles = enumerate_profiles(km, budgets.profile_cap)
    except CapExceeded:
        return None
    h = max(1, Vp.max_label_length)
    atoms = []
    for p in profiles:
        outcome = profile_verdict(build_system(km, complete_cycle(km, p)))
        if isinstance(outcome, Dual):
            return None
        atom = SAtom(tuple(outcome.x), len(p.nodes(km)) * h)
        if atom not in atoms:
            atoms.append(atom)
    return tuple(atoms)


def is_dyck_acceptor(V2: BuchiVass, alphabet) -> bool:
    """Structurally the one-state acceptor of D_n over ``alphabet``."""
    if not isinstance(alphabet, DyckAlphabet) or V2.alphabet != alphabet:
        return False
    n = alphabet.n
    if V2.dimension != n or len(V2.states) != 1 or V2.finals != frozenset(V2.states):
        return False
    seen = set()
    for t in V2.transitions:
        if len(t.word.runs) != 1 or t.word.runs[0][1] != 1:
            return False
        letter = t.word.runs[0][0]
        idx, sign = alphabet.coordinate(letter)
        expected = tuple(sign if j == idx else 0 for j in range(n))
        if tuple(t.update) != expected:
            return False
        seen.add(letter)
    return len(seen) == 2 * n and len(V2.transitions) == 2 * n


def _nonempty(V: BuchiVass, budget: int) -> bool:
    return has_profile(build_km(ensure_progress(V), budget)) is not None


def decide_pair(V1: BuchiVass, V2: BuchiVass, budgets: Budgets = Budgets()):
    if not _nonempty(V1, budgets.km) or not _nonempty(V2, budgets.km):
        return Separable(())
    if is_dyck_acceptor(V2, V1.alphabet):
        return decide(V1, budgets)
    from .transduce import reduce_to_dyck

    V, _n = reduce_to_dyck(V1, V2)
    return decide(V, budgets)


def basic_separator_cover(A: BuchiVass, budgets: Budgets = Budgets()) -> tuple:
    """P/S atoms covering the language of a Dyck-disjoint automaton."""
    from .oracle import dyck_witness

    w = dyck_witness(A, budgets)
    if w is not None:
        raise NotDisjointFromDyck(w)
    if A.dimension != 0:
        raise InvalidVass("basic separator covers are for 0-dimensional automata")
    verdict = decide(A, budgets)
    if isinstance(verdict, Inseparable):
        raise NotDisjointFromDyck(verdict.flower)
    return verdict.cover
