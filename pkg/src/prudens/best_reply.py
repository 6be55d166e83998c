"""Conditional expected payoffs and the two best-reply correspondences.

All comparisons at a fixed history share the belief's (positive)
normalizing factor, so conditional values from a prior-generated system
are kept unnormalized; argmax sets are invariant to the common scaling.

``sequential_best_replies`` requires the h-replacement of a strategy to be
conditionally optimal at every history.  ``weak_sequential_best_replies``
requires the strategy itself to be optimal at the histories it allows;
it never separates behaviorally equivalent strategies.
"""

from fractions import Fraction

from .hyperreal import Hyperreal


class BestReplyError(Exception):
    pass


class StrategyDisallowsHistory(BestReplyError):
    pass


class ReplyAnalysis:
    """Per-history conditional argmax sets for one (belief, player) pair."""

    def __init__(self, form, belief, i):
        self.form = form
        self.belief = belief
        self.i = i
        self._values = {}
        self._argmax = {}

    def _value_row(self, h_idx):
        if h_idx in self._values:
            return self._values[h_idx]
        form, i = self.form, self.i
        event = form.co_allow[i][h_idx]
        masses = self.belief.conditional_ids(event)
        payoff = form.payoff[i]
        out = {}
        if self.belief.standard:
            for sid in form.allow[i][h_idx]:
                row = payoff[sid]
                total = Fraction(0)
                for coid, p in masses.items():
                    if p:
                        total += row[coid] * p
                out[sid] = total
        else:
            bound = self.belief.degree_bound
            for sid in form.allow[i][h_idx]:
                row = payoff[sid]
                acc = [Fraction(0)] * (bound + 1)
                width = 0
                for coid, mass in masses.items():
                    u = row[coid]
                    if u:
                        coeffs = mass.coeffs
                        if len(coeffs) > width:
                            width = len(coeffs)
                        for d, c in enumerate(coeffs):
                            if c:
                                acc[d] += u * c
                out[sid] = Hyperreal(acc[:width], bound)
        self._values[h_idx] = out
        return out

    def value(self, sid, h_idx):
        row = self._value_row(h_idx)
        if sid not in row:
            raise StrategyDisallowsHistory(
                "strategy does not allow the conditioning history")
        return row[sid]

    def argmax_ids(self, h_idx):
        if h_idx not in self._argmax:
            row = self._value_row(h_idx)
            best = None
            for v in row.values():
                if best is None or v > best:
                    best = v
            self._argmax[h_idx] = frozenset(
                sid for sid, v in row.items() if v == best)
        return self._argmax[h_idx]

    def sequential_ids(self):
        form, i = self.form, self.i
        out = []
        histories = range(len(form.game.nonterminal))
        for sid in range(form.counts[i]):
            if all(form.replacement(i, k, sid) in self.argmax_ids(k)
                   for k in histories):
                out.append(sid)
        return out

    def weak_sequential_ids(self):
        form, i = self.form, self.i
        out = []
        for sid in range(form.counts[i]):
            if all(sid in self.argmax_ids(k)
                   for k in form.allowed_hist[i][sid]):
                out.append(sid)
        return out


def expected_payoff(game, belief, i, r, h):
    """Conditional expected payoff of strategy r at history h.

    Unnormalized (common positive factor) for prior-generated systems,
    normalized for explicit standard systems.  r must allow h.
    """
    form = belief.family.form
    analysis = ReplyAnalysis(form, belief, i)
    if h not in game.h_index:
        raise BestReplyError("unknown nonterminal history %r" % (h,))
    return analysis.value(form.index[i][r], game.h_index[h])


def sequential_best_replies(game, belief, i):
    """Strategies whose h-replacement is conditionally optimal at every h."""
    form = belief.family.form
    analysis = ReplyAnalysis(form, belief, i)
    return tuple(form.strats[i][sid] for sid in analysis.sequential_ids())


def weak_sequential_best_replies(game, belief, i):
    """Strategies optimal at every history they allow."""
    form = belief.family.form
    analysis = ReplyAnalysis(form, belief, i)
    return tuple(form.strats[i][sid] for sid in analysis.weak_sequential_ids())


def best_replies_to_measure(form, i, measure):
    """Ids of strategies maximizing expected payoff against a standard
    measure (coid -> Fraction) over all of the player's strategies."""
    best = None
    arg = []
    payoff = form.payoff[i]
    support = [(coid, p) for coid, p in measure.items() if p]
    for sid in range(form.counts[i]):
        row = payoff[sid]
        total = Fraction(0)
        for coid, p in support:
            total += row[coid] * p
        if best is None or total > best:
            best = total
            arg = [sid]
        elif total == best:
            arg.append(sid)
    return frozenset(arg)
