"""Exact feasibility of ``A x <= b, x >= 0`` over the rationals.

:func:`feasible` runs Fourier–Motzkin elimination and returns either a
solution or a Farkas certificate ``y >= 0`` with ``y^T A >= 0`` and
``y^T b < 0``.  Every derived inequality remembers the nonnegative
combination of input rows it came from, so an infeasible row *is* the
certificate.

:func:`simplex_feasible` is a phase-one simplex (Bland's rule) over
Fractions.  It handles equality rows and is used for flow systems whose
variable count makes elimination impractical.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .core import RegsepError


class DimensionMismatch(RegsepError):
    pass


class NegativeEntry(RegsepError):
    pass


@dataclass(frozen=True)
class Solution:
    x: tuple


@dataclass(frozen=True)
class Certificate:
    y: tuple


def _frac_matrix(A) -> list:
    return [[Fraction(v) for v in row] for row in A]


def _check_shape(A, b, ncols=None):
    m = len(A)
    if len(b) != m:
        raise DimensionMismatch(f"{m} rows but b has length {len(b)}")
    widths = {len(r) for r in A}
    if len(widths) > 1:
        raise DimensionMismatch("ragged matrix")
    n = widths.pop() if widths else (ncols or 0)
    if ncols is not None and m and n != ncols:
        raise DimensionMismatch(f"expected {ncols} columns, got {n}")
    return m, n


def verify_solution(A, b, x) -> bool:
    if any(Fraction(v) < 0 for v in x):
        return False
    for row, bi in zip(A, b):
        if sum(Fraction(a) * Fraction(v) for a, v in zip(row, x)) > Fraction(bi):
            return False
    return True


def verify_certificate(A, b, y, ncols: int | None = None) -> bool:
    """True iff ``y >= 0``, ``y^T A >= 0`` and ``y^T b < 0`` hold exactly."""
    m, n = _check_shape(A, b, ncols)
    if len(y) != m:
        raise DimensionMismatch(f"y has length {len(y)}, expected {m}")
    y = [Fraction(v) for v in y]
    if any(v < 0 for v in y):
        return False
    for j in range(n):
        if sum(y[i] * Fraction(A[i][j]) for i in range(m)) < 0:
            return False
    return sum(y[i] * Fraction(b[i]) for i in range(m)) < 0


def scale_to_integers(x: Sequence) -> tuple:
    """Multiply by the lcm of the denominators."""
    fr = [Fraction(v) for v in x]
    if any(v < 0 for v in fr):
        raise NegativeEntry(str(x))
    ell = 1
    for v in fr:
        ell = lcm(ell, v.denominator)
    return tuple(int(v * ell) for v in fr)


# ---------------------------------------------------------------- elimination


@dataclass
class _Row:
    coef: list  # Fractions, one per variable
    rhs: Fraction
    combo: list  # multipliers over the m + n starting rows

    def key(self):
        return (tuple(self.coef), self.rhs)


def _normalize(row: _Row) -> _Row:
    # scale so the first nonzero coefficient has magnitude one
    pivot = next((c for c in row.coef if c != 0), None)
    if pivot is None:
        return row
    s = abs(pivot)
    return _Row([c / s for c in row.coef], row.rhs / s, [c / s for c in row.combo])


def feasible(A, b, ncols: int | None = None):
    """Solve ``A x <= b`` with ``x >= 0``; returns Solution or Certificate.

    Variables are eliminated in ascending index order.  The solution is
    recovered by back substitution, always taking the smallest admissible
    value, so it is deterministic and small.
    """
    m, n = _check_shape(A, b, ncols)
    A = _frac_matrix(A)
    b = [Fraction(v) for v in b]
    total = m + n
    rows = []
    for i in range(m):
        combo = [Fraction(0)] * total
        combo[i] = Fraction(1)
        rows.append(_Row(A[i][:], b[i], combo))
    for j in range(n):
        coef = [Fraction(0)] * n
        coef[j] = Fraction(-1)
        combo = [Fraction(0)] * total
        combo[m + j] = Fraction(1)
        rows.append(_Row(coef, Fraction(0), combo))

    stages = []  # rows mentioning x_j at the time x_j is eliminated
    for j in range(n):
        pos = [r for r in rows if r.coef[j] > 0]
        neg = [r for r in rows if r.coef[j] < 0]
        rest = [r for r in rows if r.coef[j] == 0]
        stages.append((pos, neg))
        new_rows = list(rest)
        for p in pos:
            for q in neg:
                sp = 1 / p.coef[j]
                sq = 1 / (-q.coef[j])
                coef = [sp * a + sq * c for a, c in zip(p.coef, q.coef)]
                coef[j] = Fraction(0)
                new_rows.append(
                    _Row(coef, sp * p.rhs + sq * q.rhs, [sp * a + sq * c for a, c in zip(p.combo, q.combo)])
                )
        rows = _dedupe(new_rows)
        bad = _first_contradiction(rows)
        if bad is not None:
            return Certificate(_certificate_from(bad, m))
    bad = _first_contradiction(rows)
    if bad is not None:
        return Certificate(_certificate_from(bad, m))

    x = [Fraction(0)] * n
    for j in reversed(range(n)):
        pos, neg = stages[j]
        lo = Fraction(0)
        hi = None
        for r in neg:
            rest = r.rhs - sum(r.coef[l] * x[l] for l in range(j + 1, n))
            lo = max(lo, rest / r.coef[j])
        for r in pos:
            rest = r.rhs - sum(r.coef[l] * x[l] for l in range(j + 1, n))
            ub = rest / r.coef[j]
            hi = ub if hi is None else min(hi, ub)
        if hi is not None and hi < lo:
            raise AssertionError("back substitution failed; elimination is inconsistent")
        x[j] = lo
    return Solution(tuple(x))


def _dedupe(rows: list) -> list:
    seen = {}
    out = []
    for r in rows:
        r = _normalize(r)
        if all(c == 0 for c in r.coef) and r.rhs >= 0:
            continue  # 0 <= nonnegative carries no information
        k = r.key()
        if k in seen:
            continue
        seen[k] = True
        out.append(r)
    return out


def _first_contradiction(rows: list):
    for r in rows:
        if all(c == 0 for c in r.coef) and r.rhs < 0:
            return r
    return None


def _certificate_from(row: _Row, m: int) -> tuple:
    # only the multipliers of the m given rows are reported
    return tuple(row.combo[:m])


# ---------------------------------------------------------------- simplex


def simplex_feasible(A_ub=(), b_ub=(), A_eq=(), b_eq=(), ncols: int | None = None):
    """Phase-one simplex for ``A_ub x <= b_ub, A_eq x = b_eq, x >= 0``.

    Returns a feasible basic solution (tuple of Fractions) or None.
    """
    A_ub = _frac_matrix(A_ub)
    A_eq = _frac_matrix(A_eq)
    n = ncols
    for M in (A_ub, A_eq):
        if M:
            n = len(M[0])
    if n is None:
        raise DimensionMismatch("cannot infer the number of columns")
    if len(b_ub) != len(A_ub) or len(b_eq) != len(A_eq):
        raise DimensionMismatch("right-hand side length")

    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq
    # columns: x (n), slacks (m_ub), artificials (one per row that needs one)
    rows = []
    rhs = []
    for i in range(m_ub):
        row = A_ub[i] + [Fraction(0)] * m_ub
        row[n + i] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(b_ub[i]))
    for i in range(m_eq):
        rows.append(A_eq[i] + [Fraction(0)] * m_ub)
        rhs.append(Fraction(b_eq[i]))
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    width = n + m_ub
    basis = []
    art_cols = []
    for i in range(m):
        if i < m_ub and rows[i][n + i] == 1:
            basis.append(n + i)
        else:
            col = width + len(art_cols)
            art_cols.append(col)
            basis.append(col)
    total = width + len(art_cols)
    tab = []
    for i in range(m):
        row = rows[i] + [Fraction(0)] * len(art_cols)
        if basis[i] >= width:
            row[basis[i]] = Fraction(1)
        tab.append(row)
    art = set(art_cols)
    # objective: minimise the sum of artificials, written as reduced costs
    cost = [Fraction(0)] * total
    for i in range(m):
        if basis[i] in art:
            for c in range(total):
                cost[c] -= tab[i][c]
    for c in art_cols:
        cost[c] += 1  # basic artificials end up with reduced cost zero
    while True:
        enter = next((c for c in range(total) if cost[c] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break  # unbounded direction cannot occur in phase one
        _pivot(tab, rhs, cost, leave, enter)
        basis[leave] = enter
    infeas = sum(rhs[i] for i in range(m) if basis[i] in art)
    if infeas > 0:
        return None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = rhs[i]
    return tuple(x)


def _pivot(tab, rhs, cost, r, c):
    p = tab[r][c]
    row = [v / p for v in tab[r]]
    tab[r] = row
    rhs[r] = rhs[r] / p
    nz = [(k, v) for k, v in enumerate(row) if v]
    for i in range(len(tab)):
        if i != r:
            f = tab[i][c]
            if f != 0:
                ti = tab[i]
                for k, v in nz:
                    ti[k] -= f * v
                rhs[i] -= f * rhs[r]
    f = cost[c]
    if f != 0:
        for k, v in nz:
            cost[k] -= f * v
