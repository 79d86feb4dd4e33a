"""Independent feasibility oracle for small systems ``A x <= b, x >= 0``.

A nonempty polyhedron inside the nonnegative orthant has a vertex, and
every vertex is the unique solution of some n tight constraints.  So the
system is feasible iff one of those square subsystems has a unique
solution satisfying everything.  Plain Gaussian elimination over Fractions.
"""
from fractions import Fraction
from itertools import combinations


def _solve_square(M, rhs):
    n = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * c for a, c in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def oracle_feasible(A, b, n):
    rows = [list(r) for r in A] + [[-1 if j == i else 0 for j in range(n)] for i in range(n)]
    rhs = list(b) + [0] * n
    if n == 0:
        return all(v >= 0 for v in b)
    for pick in combinations(range(len(rows)), n):
        x = _solve_square([rows[i] for i in pick], [rhs[i] for i in pick])
        if x is None:
            continue
        if all(sum(Fraction(a) * v for a, v in zip(r, x)) <= c for r, c in zip(rows, rhs)):
            return True
    return False
