"""Independent brute-force oracles for differential testing.

Everything here recomputes results from first principles (tree walks,
exhaustive enumeration, vertex enumeration, symbolic limits) and shares no
decision logic with the library implementations it checks.
"""

import itertools
from fractions import Fraction

import sympy


def tree_walk_payoff(game, profile, i):
    """Payoff by literal recursive descent through the history tree."""
    def descend(h):
        if h in game.payoffs:
            return game.payoffs[h][i]
        profile_here = tuple(s.choices[game.h_index[h]] for s in profile)
        return descend(h + (profile_here,))
    return descend(())


def terminal_of(game, profile):
    h = ()
    while h not in game.payoffs:
        h = h + (tuple(s.choices[game.h_index[h]] for s in profile),)
    return h


def allows_by_path(game, s, h):
    """s allows h iff some completion of the profile realizes h as a prefix."""
    n = len(game.players)
    others = [game.strategies(j) for j in range(n)]
    others[s.player] = (s,)
    for profile in itertools.product(*others):
        z = terminal_of(game, profile)
        if z[:len(h)] == h:
            return True
    return False


def realization_equivalent(game, s, t):
    n = len(game.players)
    co = [game.strategies(j) for j in range(n) if j != s.player]
    for rest in itertools.product(*co):
        profile_s = list(rest)
        profile_s.insert(s.player, s)
        profile_t = list(rest)
        profile_t.insert(t.player, t)
        if terminal_of(game, tuple(profile_s)) != terminal_of(game, tuple(profile_t)):
            return False
    return True


def naive_expected_payoff(game, i, r, h, mass_of):
    """Textbook conditional expectation: enumerate co-profiles allowing h.

    ``mass_of`` maps a co-profile (tuple of strategies) to its prior mass;
    the result is the unnormalized sum, like the library's convention.
    """
    co_players = [j for j in range(len(game.players)) if j != i]
    total = None
    for co in itertools.product(*(game.strategies(j) for j in co_players)):
        if not _co_allows(game, i, co, h):
            continue
        profile = list(co)
        profile.insert(i, r)
        u = tree_walk_payoff(game, tuple(profile), i)
        term = u * mass_of(co)
        total = term if total is None else total + term
    return total


def _co_allows(game, i, co, h):
    for s_i in game.strategies(i):
        profile = list(co)
        profile.insert(i, s_i)
        z = terminal_of(game, tuple(profile))
        if z[:len(h)] == h:
            return True
    return False


# -- exact linear algebra ------------------------------------------------

def solve_linear(rows, rhs):
    """Gaussian elimination over Fractions; None if singular/inconsistent."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(v) for v in row] + [Fraction(b)]
         for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((k for k in range(r, m) if a[k][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for k in range(m):
            if k != r and a[k][c] != 0:
                f = a[k][c]
                a[k] = [v - f * w for v, w in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for k in range(r, m):
        if a[k][n] != 0:
            return None  # inconsistent
    if len(pivots) < n:
        return None  # underdetermined: not a vertex candidate
    x = [Fraction(0)] * n
    for row_idx, c in enumerate(pivots):
        x[c] = a[row_idx][n]
    return x


# -- dominance by vertex enumeration -------------------------------------

def vertex_weakly_dominated(game, Q, i, s):
    """Decide weak dominance of s w.r.t. Q by enumerating the vertices of
    the weak-inequality polytope and checking for positive total slack."""
    q_i = list(Q.part(i))
    co_players = [j for j in range(len(game.players)) if j != i]
    co_profiles = list(itertools.product(*(Q.part(j) for j in co_players)))
    k = len(q_i)

    def payoff(r, co):
        profile = list(co)
        profile.insert(i, r)
        return tree_walk_payoff(game, tuple(profile), i)

    d = [[payoff(r, co) - payoff(s, co) for r in q_i] for co in co_profiles]

    # constraint rows (as linear forms over sigma): sigma_r >= 0, d.sigma >= 0
    forms = []
    for r in range(k):
        forms.append([Fraction(1) if j == r else Fraction(0)
                      for j in range(k)])
    forms.extend([list(row) for row in d])
    objective = [sum(col, Fraction(0)) for col in zip(*d)] if d else \
        [Fraction(0)] * k

    best = Fraction(0)
    for tight in itertools.combinations(range(len(forms)), k - 1):
        rows = [[Fraction(1)] * k] + [forms[t] for t in tight]
        rhs = [Fraction(1)] + [Fraction(0)] * len(tight)
        x = solve_linear(rows, rhs)
        if x is None:
            continue
        if any(v < 0 for v in x):
            continue
        if any(sum(f * v for f, v in zip(form, x)) < 0 for form in forms):
            continue
        value = sum(o * v for o, v in zip(objective, x))
        if value > best:
            best = value
    return best > 0


def brute_iterated_admissibility(game):
    """IA decided entirely by the vertex-enumeration dominance oracle."""
    from prudens.game import ProductRestriction
    current = [list(game.strategies(i)) for i in range(len(game.players))]
    steps = [ProductRestriction(current)]
    while True:
        Q = ProductRestriction(current)
        nxt = []
        changed = False
        for i in range(len(game.players)):
            keep = [s for s in current[i]
                    if not vertex_weakly_dominated(game, Q, i, s)]
            changed = changed or len(keep) != len(current[i])
            nxt.append(keep)
        steps.append(ProductRestriction(nxt))
        current = nxt
        if not changed:
            return steps


# -- symbolic conditional systems ----------------------------------------

def sympy_value(mass, eps):
    return sum((sympy.Rational(c.numerator, c.denominator) * eps ** k
                for k, c in enumerate(mass.coeffs)), sympy.Integer(0))


def sympy_standard_part(expr, eps):
    return sympy.limit(expr, eps, 0, "+")


def sympy_cautiously_believes(belief, h, event_ids):
    """Def-style check with symbolic division and limits."""
    eps = sympy.Symbol("eps", positive=True)
    ev = belief.family.event_for_history(h)
    inter = event_ids & ev
    if not inter:
        return False
    comp = sum((sympy_value(belief.prior[c], eps) for c in ev - event_ids),
               sympy.Integer(0))
    for coid in inter:
        single = sympy_value(belief.prior[coid], eps)
        if sympy_standard_part(sympy.simplify(comp / single), eps) != 0:
            return False
    return True


def sympy_conditional(belief, event_ids, subset_ids, eps):
    """Normalized conditional probability as an exact symbolic expression."""
    num = sum((sympy_value(belief.prior[c], eps)
               for c in subset_ids & event_ids), sympy.Integer(0))
    den = sum((sympy_value(belief.prior[c], eps) for c in event_ids),
              sympy.Integer(0))
    return sympy.simplify(num / den)


def sympy_chain_rule_holds(belief):
    """Chain rule for the normalized conditionals of a prior system."""
    eps = sympy.Symbol("eps", positive=True)
    events = [ev for ev, _ in belief.family.events]
    for c_ev in events:
        for d_ev in events:
            if d_ev == c_ev or not d_ev <= c_ev:
                continue
            for coid in d_ev:
                lhs = sympy_conditional(belief, c_ev, frozenset([coid]), eps)
                rhs = (sympy_conditional(belief, d_ev, frozenset([coid]), eps)
                       * sympy_conditional(belief, c_ev, d_ev, eps))
                if sympy.simplify(lhs - rhs) != 0:
                    return False
    return True
