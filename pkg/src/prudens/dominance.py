"""Admissibility: weak dominance tests, iterated elimination, justifiers.

Two dual routes decide admissibility exactly, and each returns an object
that re-verifies by substitution:

* ``weakly_dominated`` searches for a dominating mixture by maximizing
  total slack over the weak-inequality polytope (dominated iff the
  optimum is positive);
* ``justifying_full_support_measure`` searches for a measure with support
  exactly the co-player restriction against which the strategy maximizes
  expected payoff among all own strategies, by maximizing the minimum
  mass (one exists iff the optimum is positive).

On restrictions arising from iterated elimination the two answers are
complementary; the test suite exercises that equivalence instance by
instance rather than assuming it.

Co-player profiles with identical payoff columns are interchangeable in
both problems, so the solvers work over distinct columns (with measures
spread back uniformly within each group) and try pure-strategy dominance
and a unique-best-response filter before setting up any tableau.
"""

from fractions import Fraction

from . import lp
from .best_reply import best_replies_to_measure


class DominanceError(Exception):
    pass


class MixedStrategy:
    """A mixture over one player's strategies, in canonical order."""

    __slots__ = ("player", "weights")

    def __init__(self, player, weights):
        self.player = player
        self.weights = {s: Fraction(w) for s, w in weights.items() if w}
        if any(w < 0 for w in self.weights.values()):
            raise DominanceError("negative mixture weight")
        if sum(self.weights.values()) != 1:
            raise DominanceError("mixture weights must sum to 1")

    def support(self):
        return set(self.weights)

    def __repr__(self):
        return "MixedStrategy(p%d, %d-point support)" % (
            self.player, len(self.weights))


# -- engine (id-based) -------------------------------------------------

class _Columns:
    """Distinct payoff columns of player i over a co-player restriction."""

    __slots__ = ("co_ids", "groups", "value")

    def __init__(self, form, i, q_sets):
        sets = {j: set(q_sets[j]) for j in range(form.n)}
        self.co_ids = sorted(form.co_restriction(i, sets))
        payoff = form.payoff[i]
        count = form.counts[i]
        grouped = {}
        order = []
        for coid in self.co_ids:
            key = tuple(payoff[r][coid] for r in range(count))
            if key not in grouped:
                grouped[key] = []
                order.append(key)
            grouped[key].append(coid)
        self.groups = [grouped[key] for key in order]
        self.value = [[key[r] for key in order] for r in range(count)]


def _columns(form, i, q_sets, cols):
    return cols if cols is not None else _Columns(form, i, q_sets)


def dominating_mixture_ids(form, q_sets, i, sid, cols=None):
    """A mixture on Q_i weakly dominating sid against Q_{-i}, or None.

    Maximizes the total dominance slack subject to the weak inequalities;
    sid is dominated exactly when the optimum is positive.
    """
    if sid not in q_sets[i]:
        raise DominanceError("strategy must belong to its own restriction")
    cols = _columns(form, i, q_sets, cols)
    q_i = sorted(q_sets[i])
    value = cols.value
    own = value[sid]
    ngroups = len(own)

    # pure dominance needs no tableau
    for r in q_i:
        if r == sid:
            continue
        other = value[r]
        if all(other[g] >= own[g] for g in range(ngroups)) \
                and any(other[g] > own[g] for g in range(ngroups)):
            return {r: Fraction(1)}
    # a strict unique best response against some column is undominated
    for g in range(ngroups):
        target = own[g]
        if all(value[r][g] < target for r in q_i if r != sid):
            return None
    if len(q_i) == 1:
        return None

    zero, one = lp.ZERO, lp.ONE
    # columns: sigma weights over Q_i, then one slack per distinct column
    rows = [[one] * len(q_i) + [zero] * ngroups]
    rhs = [one]
    for g in range(ngroups):
        row = [value[r][g] for r in q_i]
        row += [-one if g == j else zero for j in range(ngroups)]
        rows.append(row)
        rhs.append(own[g])
    objective = [zero] * len(q_i) + [one] * ngroups
    result = lp.solve(lp.LPProblem(objective, rows, rhs))
    if result.status != "optimal":
        raise DominanceError("slack LP must be solvable, got %s" % result.status)
    if result.value <= 0:
        return None
    return {r: result.x[k] for k, r in enumerate(q_i) if result.x[k]}


def mixture_dominates_ids(form, q_sets, i, sid, mixture, cols=None):
    """Substitution check: weak inequality everywhere, strict somewhere."""
    cols = _columns(form, i, q_sets, cols)
    payoff = form.payoff[i]
    strict = False
    items = list(mixture.items())
    for coid in cols.co_ids:
        mixed = sum((w * payoff[r][coid] for r, w in items), Fraction(0))
        own = payoff[sid][coid]
        if mixed < own:
            return False
        if mixed > own:
            strict = True
    return strict


def justifier_ids(form, q_sets, i, sid, cols=None):
    """A measure with support exactly Q_{-i} against which sid maximizes
    expected payoff over all own strategies, or None.

    Found by maximizing the minimum mass m over distinct payoff columns
    (substituting nu_g = m + w_g turns strict positivity into the sign of
    the optimum), then spreading each column's mass uniformly over the
    co-profiles it aggregates.
    """
    cols = _columns(form, i, q_sets, cols)
    value = cols.value
    own = value[sid]
    ngroups = len(own)
    others = [r for r in range(form.counts[i]) if r != sid]
    zero, one = lp.ZERO, lp.ONE

    # columns: m, then w_g per distinct column, then one slack per rival
    rows = [[Fraction(ngroups)] + [one] * ngroups + [zero] * len(others)]
    rhs = [one]
    for j, r in enumerate(others):
        diff = [own[g] - value[r][g] for g in range(ngroups)]
        row = [sum(diff, Fraction(0))]
        row += diff
        row += [-one if j == k else zero for k in range(len(others))]
        rows.append(row)
        rhs.append(zero)
    objective = [one] + [zero] * (ngroups + len(others))
    result = lp.solve(lp.LPProblem(objective, rows, rhs))
    if result.status == "infeasible":
        return None
    if result.status != "optimal":
        raise DominanceError("justifier LP cannot be unbounded")
    if result.value <= 0:
        return None
    m = result.x[0]
    measure = {}
    for g, members in enumerate(cols.groups):
        share = (m + result.x[1 + g]) / len(members)
        for coid in members:
            measure[coid] = share
    return measure


def measure_justifies_ids(form, q_sets, i, sid, measure, cols=None):
    """Substitution check: exact support, total mass 1, argmax membership."""
    cols = _columns(form, i, q_sets, cols)
    if sorted(c for c, p in measure.items() if p) != cols.co_ids:
        return False
    if any(p < 0 for p in measure.values()):
        return False
    if sum(measure.values()) != 1:
        return False
    return sid in best_replies_to_measure(form, i, measure)


def iterated_elimination_ids(form):
    """Maximal simultaneous deletion of weakly dominated strategies.

    Returns (steps, certificates): ``steps[n]`` is the per-player tuple of
    surviving ids after n rounds, including one confirming round equal to
    its predecessor; ``certificates[(n, i, sid)]`` is the dominating
    mixture that removed sid at round n.
    """
    current = [tuple(range(form.counts[i])) for i in range(form.n)]
    steps = [tuple(current)]
    certificates = {}
    n = 0
    while True:
        n += 1
        q_sets = [frozenset(part) for part in current]
        nxt = []
        changed = False
        for i in range(form.n):
            cols = _Columns(form, i, q_sets)
            keep = []
            for sid in current[i]:
                mixture = dominating_mixture_ids(form, q_sets, i, sid, cols)
                if mixture is None:
                    keep.append(sid)
                else:
                    if not mixture_dominates_ids(form, q_sets, i, sid,
                                                 mixture, cols):
                        raise DominanceError(
                            "dominating mixture failed substitution check")
                    certificates[(n, i, sid)] = mixture
                    changed = True
            if not keep:
                raise DominanceError(
                    "elimination emptied a strategy set")  # cannot happen
            nxt.append(tuple(keep))
        steps.append(tuple(nxt))
        current = nxt
        if not changed:
            return steps, certificates


# -- public surface ----------------------------------------------------

def _q_sets_from_restriction(form, Q):
    out = []
    for i in range(form.n):
        out.append(frozenset(form.index[i][s] for s in Q.part(i)))
    return out


def weakly_dominated(game, Q, i, s):
    """A MixedStrategy on Q_i dominating s with respect to Q, or None."""
    form = game.strategic_form()
    q_sets = _q_sets_from_restriction(form, Q)
    mixture = dominating_mixture_ids(form, q_sets, i, form.index[i][s])
    if mixture is None:
        return None
    if not mixture_dominates_ids(form, q_sets, i, form.index[i][s], mixture):
        raise DominanceError("dominating mixture failed substitution check")
    return MixedStrategy(i, {form.strats[i][r]: w
                             for r, w in mixture.items()})


def justifying_full_support_measure(game, Q, i, s):
    """A measure on co-profiles with support exactly Q_{-i} making s a
    best reply among all of S_i, or None when no such measure exists."""
    form = game.strategic_form()
    q_sets = _q_sets_from_restriction(form, Q)
    sid = form.index[i][s]
    measure = justifier_ids(form, q_sets, i, sid)
    if measure is None:
        return None
    if not measure_justifies_ids(form, q_sets, i, sid, measure):
        raise DominanceError("justifier failed substitution check")
    return {form.co_profile_strategies(i, coid): p
            for coid, p in measure.items()}
