"""Command-line surface: JSON instances, reports, dumps and membership queries.

Exit codes: 0 separable / member, 1 inseparable / non-member, 2 budget
exceeded, 3 input error, 4 automaton not disjoint from the Dyck language.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .core import (
    BuchiVass,
    DyckAlphabet,
    InvalidVass,
    NamedAlphabet,
    RegsepError,
    RleWord,
    Transition,
    UPWord,
    validate,
)
from .karpmiller import DEFAULT_KM_BUDGET, BudgetExceeded, build_km
from .oracle import member_dyck, member_lang, member_p, member_s
from .pump import build_pump
from .ratlp import verify_certificate
from .separability import (
    DEFAULT_PROFILE_CAP,
    Budgets,
    CapExceeded,
    Flower,
    Inseparable,
    NotDisjointFromDyck,
    PAtom,
    SAtom,
    analyse,
    basic_separator_cover,
    build_system,
    complete_cycle,
    decide_pair,
    verify_flower,
)

EXIT_SEPARABLE = 0
EXIT_INSEPARABLE = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3
EXIT_NOT_DISJOINT = 4

BUDGET_ENV = "REGSEP_BUDGET_KM"


class InputError(RegsepError):
    pass


# ---------------------------------------------------------------- instances


def _int(v) -> int:
    if isinstance(v, bool):
        raise InputError(f"not an integer: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError:
            raise InputError(f"not an integer: {v!r}") from None
    raise InputError(f"not an integer: {v!r}")


def _word(doc) -> RleWord:
    if doc is None:
        return RleWord(())
    if isinstance(doc, str):
        return RleWord.parse(doc)
    runs = []
    for item in doc:
        if not isinstance(item, (list, tuple)) or len(item) != 2 or not isinstance(item[0], str):
            raise InputError(f"bad word run: {item!r}")
        runs.append((item[0], _int(item[1])))
    try:
        return RleWord(tuple(runs))
    except (ValueError, RegsepError) as exc:
        raise InputError(str(exc)) from None


def parse_instance(doc: dict) -> BuchiVass:
    """InstanceFile document to a validated BuchiVass."""
    try:
        dim = _int(doc["dimension"])
        alpha = doc["alphabet"]
        if "dyck" in alpha:
            alphabet = DyckAlphabet(_int(alpha["dyck"]))
        else:
            alphabet = NamedAlphabet(tuple(alpha["letters"]))
        states = tuple(doc["states"])
        ts = tuple(
            Transition(t["from"], _word(t.get("word")), tuple(_int(u) for u in t["update"]), t["to"])
            for t in doc["transitions"]
        )
        V = BuchiVass(dim, alphabet, states, doc["initial"], frozenset(doc["finals"]), ts)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed instance: {exc!r}") from None
    problems = validate(V)
    if problems:
        raise InputError("; ".join(str(p) for p in problems))
    return V


def _update_json(u: int):
    # beyond double precision integers travel as decimal strings
    return u if abs(u) < (1 << 53) else str(u)


def print_instance(V: BuchiVass) -> dict:
    """BuchiVass to an InstanceFile document; non-string states are renamed by str()."""
    names = {}
    for q in V.states:
        name = q if isinstance(q, str) else str(q)
        if name in names.values():
            name = f"{name}#{len(names)}"
        names[q] = name
    if isinstance(V.alphabet, DyckAlphabet):
        alpha = {"dyck": V.alphabet.n}
    else:
        alpha = {"letters": list(V.alphabet.letters)}
    return {
        "dimension": V.dimension,
        "alphabet": alpha,
        "states": [names[q] for q in V.states],
        "initial": names[V.initial],
        "finals": [names[q] for q in V.states if q in V.finals],
        "transitions": [
            {
                "from": names[t.source],
                "to": names[t.target],
                "word": t.word.to_json(),
                "update": [_update_json(u) for u in t.update],
            }
            for t in V.transitions
        ],
    }


def load_instance(path) -> BuchiVass:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    return parse_instance(doc)


# ---------------------------------------------------------------- reports


def atom_json(a) -> dict:
    if isinstance(a, PAtom):
        return {"P": {"i": a.i, "k": a.k}}
    return {"S": {"x": list(a.x), "k": a.k}}


def atom_from_json(doc):
    if "P" in doc:
        return PAtom(_int(doc["P"]["i"]), _int(doc["P"]["k"]))
    return SAtom(tuple(_int(v) for v in doc["S"]["x"]), _int(doc["S"]["k"]))


def verdict_report(verdict) -> dict:
    if isinstance(verdict, Inseparable):
        f = verdict.flower
        doc = {
            "verdict": "inseparable",
            "profile": {"edges": list(verdict.profile.edges)},
            "system": {
                "A": [list(r) for r in verdict.system.A],
                "b": list(verdict.system.b),
            },
            "farkas_y": list(verdict.certificate),
            "flower": {
                "anchor": f.anchor,
                "alpha": list(f.alpha),
                "beta": list(f.beta),
                "gamma": list(f.gamma),
            },
        }
        an = verdict.analysis
        if an is not None:
            doc["instance"] = print_instance(an.vass)
            doc["exhaustive"] = an.exhaustive
        return doc
    doc = {"verdict": "separable", "cover": [atom_json(a) for a in verdict.cover]}
    return doc


def verify_report(doc: dict, V: BuchiVass | None = None, budgets: Budgets = Budgets()) -> bool:
    """Re-check an inseparable report; separable reports carry nothing to re-check.

    The Farkas vector is checked against the embedded system.  With an
    instance (given or embedded) the profile, its system and the flower are
    recomputed on the Karp–Miller graph of the pumped VASS.
    """
    if doc.get("verdict") != "inseparable":
        return doc.get("verdict") == "separable"
    A = [tuple(_int(v) for v in row) for row in doc["system"]["A"]]
    b = [_int(v) for v in doc["system"]["b"]]
    y = [_int(v) for v in doc["farkas_y"]]
    ncols = len(A[0]) if A else 0
    if not verify_certificate(A, b, y, ncols):
        return False
    if V is None and "instance" in doc:
        V = parse_instance(doc["instance"])
    if V is None:
        return True
    from .core import ensure_progress

    pa = build_pump(ensure_progress(V), budgets.km)
    km = build_km(pa.pump_v, budgets.km)
    edges = tuple(_int(e) for e in doc["profile"]["edges"])
    if any(e < 0 or e >= len(km.edges) for e in edges):
        return False
    from .separability import _circulation, _make_profile, _strongly_connected

    x = _circulation(km, edges)
    if x is None or not _strongly_connected(km, edges):
        return False
    profile = _make_profile(km, edges, x)
    system = build_system(km, complete_cycle(km, profile))
    # rows may come in any order
    mine = sorted(tuple(r) + (c,) for r, c in zip(system.A, system.b))
    theirs = sorted(tuple(r) + (c,) for r, c in zip(A, b))
    if mine != theirs:
        return False
    fd = doc["flower"]
    f = Flower(
        _int(fd["anchor"]),
        tuple(_int(e) for e in fd["alpha"]),
        tuple(_int(e) for e in fd["beta"]),
        tuple(_int(e) for e in fd["gamma"]),
        (), 0, (), 0, (),
    )
    return verify_flower(km, f)


def load_report(path, V: BuchiVass | None = None) -> dict:
    """Read a ReportFile; inseparable reports must re-verify."""
    doc = json.loads(Path(path).read_text())
    if not verify_report(doc, V):
        raise InputError(f"{path}: report does not re-verify")
    return doc


def _text_report(doc: dict) -> str:
    if doc["verdict"] == "separable":
        lines = ["separable", "cover:"]
        for a in doc["cover"]:
            lines.append(f"  {atom_from_json(a)}")
        if not doc["cover"]:
            lines.append("  (empty)")
    else:
        lines = ["inseparable", f"profile edges: {doc['profile']['edges']}", "system:"]
        for row, c in zip(doc["system"]["A"], doc["system"]["b"]):
            lines.append(f"  {row} x <= {c}")
        lines.append(f"farkas y: {doc['farkas_y']}")
        f = doc["flower"]
        lines.append(f"flower at {f['anchor']}: alpha={f['alpha']} beta={f['beta']} gamma={f['gamma']}")
    for key in ("seconds", "km_budget", "profile_cap"):
        if key in doc:
            lines.append(f"{key}: {doc[key]}")
    return "\n".join(lines)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------- commands


def _budgets(args) -> Budgets:
    km = getattr(args, "km_budget", None)
    if km is None:
        env = os.environ.get(BUDGET_ENV)
        km = int(env) if env else DEFAULT_KM_BUDGET
    cap = getattr(args, "profile_cap", None) or DEFAULT_PROFILE_CAP
    return Budgets(km, cap)


def _report_out(doc: dict, args, started: float, budgets: Budgets) -> None:
    doc["seconds"] = round(time.perf_counter() - started, 3)
    doc["km_budget"] = budgets.km
    doc["profile_cap"] = budgets.profile_cap
    if getattr(args, "text", False):
        _emit(_text_report(doc), args.out)
    else:
        _emit(json.dumps(doc, indent=2), args.out)


def cmd_decide(args) -> int:
    started = time.perf_counter()
    budgets = _budgets(args)
    V1 = load_instance(args.file1)
    V2 = load_instance(args.file2)
    verdict = decide_pair(V1, V2, budgets)
    _report_out(verdict_report(verdict), args, started, budgets)
    return EXIT_INSEPARABLE if isinstance(verdict, Inseparable) else EXIT_SEPARABLE


def cmd_cover(args) -> int:
    started = time.perf_counter()
    budgets = _budgets(args)
    A = load_instance(args.file)
    try:
        cover = basic_separator_cover(A, budgets)
    except NotDisjointFromDyck as exc:
        w = exc.witness
        print(f"not disjoint from the Dyck language; witness: {w}", file=sys.stderr)
        _emit(json.dumps({"verdict": "not-disjoint", "witness": str(w)}), args.out)
        return EXIT_NOT_DISJOINT
    doc = {"verdict": "separable", "cover": [atom_json(a) for a in cover]}
    _report_out(doc, args, started, budgets)
    return EXIT_SEPARABLE


def cmd_km(args) -> int:
    budgets = _budgets(args)
    V = load_instance(args.file)
    _emit(build_km(V, budgets.km).dump(), args.out)
    return 0


def cmd_pump(args) -> int:
    budgets = _budgets(args)
    V = load_instance(args.file)
    pa = build_pump(V, budgets.km)
    P = pa.pump_v
    lines = [f"pump constant k = {pa.k}", f"states {len(P.states)}"]
    for i, q in enumerate(P.states):
        mark = " final" if q in P.finals else ""
        mark += " initial" if q == P.initial else ""
        lines.append(f"  {i}: {q}{mark}")
    lines.append(f"transitions {len(P.transitions)}")
    index = {q: i for i, q in enumerate(P.states)}
    for t in P.transitions:
        lines.append(f"  {index[t.source]} -[{t.word}|{tuple(t.update)}]-> {index[t.target]}")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_profiles(args) -> int:
    budgets = _budgets(args)
    V = load_instance(args.file)
    an = analyse(V, budgets, stop_at_dual=False)
    head = f"profiles {len(an.profiles)}"
    if not an.exhaustive:
        head += f" (incomplete: profile cap {budgets.profile_cap} reached, maximal profiles only)"
    lines = [head]
    for p, cd, system, outcome in an.results:
        kind = "solution" if hasattr(outcome, "x") else "dual"
        vec = outcome.x if kind == "solution" else outcome.y
        lines.append(
            f"  edges {list(p.edges)} anchor {p.anchor} cycles {len(cd.cycles)} {kind} {list(vec)}"
        )
    _emit("\n".join(lines), args.out)
    return 0 if an.exhaustive else EXIT_BUDGET


def _parse_set(text: str, n: int | None):
    if text == "lang":
        return ("lang",)
    if text == "dyck":
        return ("dyck",)
    parts = text.split(":")
    try:
        if parts[0] == "P" and len(parts) == 3:
            return ("P", int(parts[1]), int(parts[2]))
        if parts[0] == "S" and len(parts) == 3:
            return ("S", tuple(int(v) for v in parts[1].split(",")), int(parts[2]))
    except ValueError:
        pass
    raise InputError(f"bad --set value: {text!r}")


def cmd_member(args) -> int:
    try:
        w = UPWord.parse(args.word)
    except (ValueError, RegsepError) as exc:
        raise InputError(f"bad word: {exc}") from None
    what = _parse_set(args.set, None)
    if what[0] == "lang":
        if not args.file:
            raise InputError("--set lang needs an instance file")
        V = load_instance(args.file)
        report = member_lang(V, w, _budgets(args).km)
    else:
        n = None
        if args.file:
            V = load_instance(args.file)
            if isinstance(V.alphabet, DyckAlphabet):
                n = V.alphabet.n
        if what[0] == "dyck":
            report = member_dyck(w, n if n is not None else _letter_pairs(w))
        elif what[0] == "P":
            report = member_p(w, what[1], what[2], n)
        else:
            report = member_s(w, what[1], what[2])
    if args.verbose:
        print(json.dumps({"member": report.verdict, "evidence": _plain(report.evidence)}))
    return 0 if report.verdict else 1


def _letter_pairs(w: UPWord) -> int:
    idx = [int(a[1:]) for a in w.alphabet_letters()]
    return max(idx, default=1)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="regsep", description="Regular separability of Büchi VASS")
    sub = ap.add_subparsers(dest="command", required=True)

    def budget_opts(p, profiles=False):
        p.add_argument("--km-budget", "--budget", dest="km_budget", type=int, default=None)
        if profiles:
            p.add_argument("--profile-cap", type=int, default=None)
        p.add_argument("--out", default=None)

    def format_opts(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--json", action="store_true", default=True)
        g.add_argument("--text", action="store_true")

    p = sub.add_parser("decide", help="decide separability of two instances")
    p.add_argument("file1")
    p.add_argument("file2")
    budget_opts(p, profiles=True)
    format_opts(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("cover", help="basic separator cover of a Dyck-disjoint automaton")
    p.add_argument("file")
    budget_opts(p, profiles=True)
    format_opts(p)
    p.set_defaults(func=cmd_cover)

    for name, fn, helptext in (
        ("km", cmd_km, "dump the Karp-Miller graph"),
        ("pump", cmd_pump, "dump the pumped VASS"),
        ("profiles", cmd_profiles, "list profiles of the pumped VASS"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        budget_opts(p, profiles=name == "profiles")
        p.set_defaults(func=fn)

    p = sub.add_parser("member", help="membership of an ultimately periodic word")
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--word", required=True)
    p.add_argument("--set", default="lang")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--km-budget", dest="km_budget", type=int, default=None)
    p.set_defaults(func=cmd_member)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    try:
        return args.func(args)
    except (BudgetExceeded, CapExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, InvalidVass) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RegsepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
