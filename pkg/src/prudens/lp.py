"""Exact rational linear programming by two-phase tableau simplex.

Problems are in standard equality form: maximize c.x subject to A x = b,
x >= 0, with every entry a Fraction.  Bland's smallest-index rule is used
for both the entering and leaving choice, so the solver cannot cycle and
is deterministic.  Results carry certificates that re-verify by plain
substitution: a feasible optimal point, or a Farkas witness y with
y.A <= 0 and y.b > 0 for infeasible systems.
"""

from dataclasses import dataclass
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class LPProblem:
    """maximize objective.x  s.t.  rows[k].x == rhs[k] for all k,  x >= 0."""

    objective: list
    rows: list
    rhs: list

    def check(self):
        n = len(self.objective)
        if len(self.rows) != len(self.rhs):
            raise ValueError("row/rhs count mismatch")
        for row in self.rows:
            if len(row) != n:
                raise ValueError("row width mismatch")


@dataclass
class LPResult:
    status: str           # "optimal" | "infeasible" | "unbounded"
    x: list = None        # optimal point (status == "optimal")
    value: Fraction = None
    farkas: list = None   # infeasibility witness (status == "infeasible")

    def verify(self, problem):
        """Re-check the certificate by substitution."""
        if self.status == "optimal":
            if any(v < 0 for v in self.x):
                return False
            for row, b in zip(problem.rows, problem.rhs):
                if sum(r * v for r, v in zip(row, self.x)) != b:
                    return False
            obj = sum(c * v for c, v in zip(problem.objective, self.x))
            return obj == self.value
        if self.status == "infeasible":
            y = self.farkas
            n = len(problem.objective)
            for j in range(n):
                if sum(y[k] * problem.rows[k][j]
                       for k in range(len(problem.rows))) > 0:
                    return False
            return sum(y[k] * problem.rhs[k]
                       for k in range(len(problem.rhs))) > 0
        return False


def _pivot(a, zrow, basis, r, c, last):
    """In-place Gauss-Jordan step on row r, column c (rhs at index last)."""
    row = a[r]
    piv = row[c]
    if piv != 1:
        inv = ONE / piv
        for j in range(last + 1):
            if row[j]:
                row[j] *= inv
    hot = [j for j in range(last + 1) if row[j]]
    for other in a:
        if other is row:
            continue
        f = other[c]
        if f:
            for j in hot:
                other[j] -= f * row[j]
    f = zrow[c]
    if f:
        for j in hot:
            zrow[j] -= f * row[j]
    basis[r] = c


def _iterate(a, zrow, basis, ncols, last):
    """Bland-rule simplex until optimal or unbounded."""
    m = len(a)
    while True:
        enter = -1
        for j in range(ncols):
            if zrow[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best_n = best_d = None  # best ratio as exact pair, compared crosswise
        for r in range(m):
            coef = a[r][enter]
            if coef > 0:
                num = a[r][last]
                if leave < 0:
                    better = True
                else:
                    lhs = num * best_d
                    rhs = best_n * coef
                    better = lhs < rhs or (lhs == rhs
                                           and basis[r] < basis[leave])
                if better:
                    best_n, best_d, leave = num, coef, r
        if leave < 0:
            return "unbounded"
        _pivot(a, zrow, basis, leave, enter, last)


def _rebuild_zrow(a, basis, costs, ncols, last):
    zrow = [-c for c in costs] + [ZERO]
    for r, row in enumerate(a):
        cb = costs[basis[r]]
        if cb:
            for j in range(ncols):
                if row[j]:
                    zrow[j] += cb * row[j]
            zrow[ncols] += cb * row[last]
    # squeeze the z row to tableau width
    out = [ZERO] * (last + 1)
    for j in range(ncols):
        out[j] = zrow[j]
    out[last] = zrow[ncols]
    return out


def solve(problem):
    """Two-phase exact simplex for an LPProblem in standard form."""
    problem.check()
    n = len(problem.objective)
    m = len(problem.rows)
    a = []
    for r, (row, b) in enumerate(zip(problem.rows, problem.rhs)):
        flip = b < 0
        body = [-v if flip else Fraction(v) for v in row]
        body += [ONE if k == r else ZERO for k in range(m)]
        body.append(-b if flip else Fraction(b))
        a.append(body)
    last = n + m
    basis = [n + r for r in range(m)]

    # phase 1: maximize -(sum of artificials); initial basis is artificial
    costs1 = [ZERO] * n + [Fraction(-1)] * m
    zrow = _rebuild_zrow(a, basis, costs1, n + m, last)
    status = _iterate(a, zrow, basis, n + m, last)
    assert status == "optimal"  # phase-1 objective is bounded above by 0
    if zrow[last] < 0:  # artificial mass left: infeasible
        y = [ONE - zrow[n + k] for k in range(m)]
        for k, b in enumerate(problem.rhs):
            if b < 0:
                y[k] = -y[k]
        return LPResult(status="infeasible", farkas=y)

    # drive zero-level artificials out of the basis, drop redundant rows
    r = 0
    while r < len(a):
        if basis[r] >= n:
            piv = next((j for j in range(n) if a[r][j] != 0), None)
            if piv is None:
                del a[r]
                del basis[r]
                continue
            _pivot(a, zrow, basis, r, piv, last)
        r += 1

    # phase 2 on structural columns
    costs2 = list(problem.objective)
    zrow = _rebuild_zrow(a, basis, costs2, n, last)
    status = _iterate(a, zrow, basis, n, last)
    if status == "unbounded":
        return LPResult(status="unbounded")
    x = [ZERO] * n
    for r, j in enumerate(basis):
        x[j] = a[r][last]
    value = sum(c * v for c, v in zip(problem.objective, x))
    return LPResult(status="optimal", x=x, value=value)
