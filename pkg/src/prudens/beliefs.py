"""Conditional belief systems about co-player behavior, and belief operators.

Two representations are used.  A :class:`PriorCNPS` is generated by a
single full-support unconditional measure with values in Q[e]; its
conditionals are restrictions of the prior, kept unnormalized (every
operator below only needs ratio or argmax comparisons, which share the
positive normalizing factor).  An :class:`ExplicitCPS` is an explicit
per-event array of standard (rational-valued) measures; nothing ties its
entries together until the chain rule is validated.

Conditioning events are the sets of co-player profiles allowing each
history.  Two histories inducing the same set share one event; operators
quantify over distinct events.
"""

import warnings
from fractions import Fraction

from .hyperreal import Hyperreal, ratio_st_is_zero


class BeliefError(Exception):
    pass


class IncompleteTable(BeliefError):
    """An explicit system is missing some conditioning event."""


class UnknownHistory(BeliefError):
    pass


class VacuousEventWarning(UserWarning):
    """Cautious belief queried at a history that contradicts the event."""


def _mass_infinitely_greater(x, y):
    """Whether mass x exceeds every natural multiple of mass y.

    Both masses come from the same system, so they share a type.  For
    rational masses only a zero can be infinitely less likely.
    """
    if isinstance(x, Hyperreal):
        if x.is_zero():
            return False
        return y.is_zero() or x.leading_degree() < y.leading_degree()
    return x > 0 and y == 0


def _mass_ratio_st_is_zero(num, den):
    if isinstance(den, Hyperreal):
        return ratio_st_is_zero(num, den)
    if den == 0:
        raise ZeroDivisionError("ratio against zero mass")
    return num == 0


class ConditioningFamily:
    """The distinct conditioning events of one player, with their histories."""

    def __init__(self, game, owner, form=None):
        self.game = game
        self.owner = owner
        self.form = form if form is not None else game.strategic_form()
        self.events = self.form.events[owner]  # [(frozenset coids, h indices)]

    def event_for_history(self, h):
        try:
            k = self.game.h_index[h]
        except KeyError:
            raise UnknownHistory("no such nonterminal history: %r" % (h,))
        return self.form.co_allow[self.owner][k]

    def profiles(self, ids):
        return [self.form.co_profile_strategies(self.owner, coid)
                for coid in sorted(ids)]


class PriorCNPS:
    """Belief system generated by conditioning a full-support prior.

    ``prior`` maps each co-profile id to a positive Hyperreal; the values
    sum to exactly 1.  Conditionals are plain restrictions.
    """

    standard = False

    def __init__(self, family, prior):
        self.family = family
        self.prior = dict(prior)
        form, i = family.form, family.owner
        if set(self.prior) != set(range(len(form.co_profiles[i]))):
            raise BeliefError("prior must cover every co-player profile")
        total = None
        for coid, mass in self.prior.items():
            if not isinstance(mass, Hyperreal):
                raise BeliefError("prior values must be Hyperreal")
            if not mass > 0:
                raise BeliefError("prior must have full support")
            total = mass if total is None else total + mass
        if total != 1:
            raise BeliefError("prior masses must sum to 1, got %s" % total)
        self.degree_bound = next(iter(self.prior.values())).degree_bound

    @classmethod
    def from_profile_map(cls, game, owner, mapping):
        family = ConditioningFamily(game, owner)
        form = family.form
        prior = {}
        for co_profile, mass in mapping.items():
            ids = tuple(form.index[j][s]
                        for j, s in zip(form.co_players[owner], co_profile))
            prior[form.co_index[owner][ids]] = mass
        return cls(family, prior)

    def conditional_ids(self, event_ids):
        return {coid: self.prior[coid] for coid in event_ids}

    def conditional(self, h):
        """Unnormalized conditional at h: the prior restricted to the
        co-profiles allowing h, keyed by co-profile (tuple of strategies).

        Callers compare ratios or argmax sets, never normalizing; the
        missing factor is the event's total prior mass, shared by every
        entry."""
        form, i = self.family.form, self.family.owner
        ev = self.family.event_for_history(h)
        return {form.co_profile_strategies(i, coid): self.prior[coid]
                for coid in sorted(ev)}

    def mass_within(self, event_ids, subset_ids):
        total = Hyperreal.zero(self.degree_bound)
        for coid in subset_ids:
            if coid in event_ids:
                total = total + self.prior[coid]
        return total

    def singleton_mass(self, event_ids, coid):
        if coid not in event_ids:
            return Hyperreal.zero(self.degree_bound)
        return self.prior[coid]

    def to_json(self):
        form, i = self.family.form, self.family.owner
        return {
            "kind": "cnps-prior",
            "player": form.game.players[i],
            "degree_bound": self.degree_bound,
            "co_players": [form.game.players[j] for j in form.co_players[i]],
            "prior": [
                {"profile": [s.name() for s in
                             form.co_profile_strategies(i, coid)],
                 "mass": self.prior[coid].render()}
                for coid in sorted(self.prior)],
        }


class ExplicitCPS:
    """Explicit array of standard conditional measures, one per event."""

    standard = True

    def __init__(self, family, table):
        self.family = family
        self.table = {frozenset(ev): dict(dist) for ev, dist in table.items()}
        events = [ev for ev, _ in family.events]
        for ev in events:
            if ev not in self.table:
                raise IncompleteTable("missing conditioning event")
        for ev, dist in self.table.items():
            total = Fraction(0)
            for coid, p in dist.items():
                p = Fraction(p)
                if p < 0:
                    raise BeliefError("negative probability")
                if p > 0 and coid not in ev:
                    raise BeliefError(
                        "measure puts weight outside its conditioning event")
                dist[coid] = p
                total += p
            if total != 1:
                raise BeliefError("conditional measure must sum to 1")

    @classmethod
    def by_conditioning(cls, family, measure):
        """Condition one measure (coid -> Fraction) on every event it can reach.

        Raises BeliefError if some event has zero mass; callers supply a
        fallback table for those (see the procedures module).
        """
        table = {}
        for ev, _ in family.events:
            total = sum((measure.get(c, Fraction(0)) for c in ev), Fraction(0))
            if total == 0:
                raise BeliefError("event has zero prior mass")
            table[ev] = {c: measure.get(c, Fraction(0)) / total
                         for c in ev if measure.get(c, Fraction(0)) > 0}
        return cls(family, table)

    def conditional_ids(self, event_ids):
        return dict(self.table[frozenset(event_ids)])

    def conditional(self, h):
        """The stored (normalized) conditional measure at h, keyed by
        co-profile."""
        form, i = self.family.form, self.family.owner
        ev = self.family.event_for_history(h)
        dist = self.table[ev]
        return {form.co_profile_strategies(i, coid): p
                for coid, p in sorted(dist.items())}

    def mass_within(self, event_ids, subset_ids):
        dist = self.table[frozenset(event_ids)]
        return sum((dist.get(coid, Fraction(0)) for coid in subset_ids),
                   Fraction(0))

    def singleton_mass(self, event_ids, coid):
        return self.table[frozenset(event_ids)].get(coid, Fraction(0))

    def support(self, event_ids):
        dist = self.table[frozenset(event_ids)]
        return frozenset(c for c, p in dist.items() if p > 0)

    def to_json(self):
        form, i = self.family.form, self.family.owner
        game = form.game
        out = {"kind": "cps", "player": game.players[i],
               "co_players": [game.players[j] for j in form.co_players[i]],
               "events": []}
        for ev, h_idxs in self.family.events:
            dist = self.table[ev]
            out["events"].append({
                "histories": [
                    _path_text(game.nonterminal[k]) for k in h_idxs],
                "distribution": [
                    {"profile": [s.name() for s in
                                 form.co_profile_strategies(i, coid)],
                     "mass": str(dist.get(coid, Fraction(0)))}
                    for coid in sorted(ev)],
            })
        return out


def _path_text(h):
    from .game import format_path
    return format_path(h)


# -- chain rule --------------------------------------------------------

def validate_chain_rule(cps):
    """Exhaustive chain-rule check over nested event pairs and singletons.

    For rational-valued conditional measures, checking singleton events E
    suffices: both sides of the identity are additive in E, so equality on
    singletons extends to every subset of D.  Returns (ok, violations)
    where each violation is (coid, D, C, lhs, rhs).
    """
    events = [ev for ev, _ in cps.family.events]
    for ev in events:
        if frozenset(ev) not in cps.table:
            raise IncompleteTable("missing conditioning event")
    violations = []
    for c_ev in events:
        for d_ev in events:
            if d_ev == c_ev or not d_ev <= c_ev:
                continue
            d_in_c = cps.mass_within(c_ev, d_ev)
            for coid in d_ev:
                lhs = cps.singleton_mass(c_ev, coid)
                rhs = cps.singleton_mass(d_ev, coid) * d_in_c
                if lhs != rhs:
                    violations.append((coid, d_ev, c_ev, lhs, rhs))
    return (not violations), violations


# -- belief operators --------------------------------------------------

def _event_ids(belief, E):
    """Normalize an event to a frozenset of co-profile ids."""
    if isinstance(E, frozenset) and all(isinstance(x, int) for x in E):
        return E
    form, i = belief.family.form, belief.family.owner
    ids = set()
    for co_profile in E:
        if isinstance(co_profile, int):
            ids.add(co_profile)
            continue
        key = tuple(form.index[j][s]
                    for j, s in zip(form.co_players[i], co_profile))
        ids.add(form.co_index[i][key])
    return frozenset(ids)


def cautiously_believes(belief, h, E):
    """Every profile of E consistent with h is infinitely more likely
    than the complement of E, under the conditional at h."""
    ev = belief.family.event_for_history(h)
    return _cautious_at_event(belief, ev, _event_ids(belief, E),
                              warn_vacuous=True)


def _cautious_at_event(belief, ev, e_ids, warn_vacuous=False):
    inter = e_ids & ev
    if not inter:
        if warn_vacuous:
            warnings.warn("event is contradicted at this history; cautious "
                          "belief is reported false", VacuousEventWarning,
                          stacklevel=3)
        return False
    comp = belief.mass_within(ev, ev - e_ids)
    for coid in inter:
        if not _mass_infinitely_greater(belief.singleton_mass(ev, coid), comp):
            return False
    return True


def c_strongly_believes(belief, E):
    """Cautious belief in E at every history not yet contradicting E.

    Computed in the direct form and in the intersection form (conditional
    mass of the complement intersected with the event first); the two must
    agree, and disagreement would indicate a defect in the mass accounting.
    """
    e_ids = _event_ids(belief, E)
    direct = all(_cautious_at_event(belief, ev, e_ids)
                 for ev, _ in belief.family.events if e_ids & ev)
    ix = c_strongly_believes_intersection_form(belief, e_ids)
    if direct != ix:
        raise BeliefError("belief operator forms disagree")
    return direct


def c_strongly_believes_intersection_form(belief, E):
    e_ids = _event_ids(belief, E)
    for ev, _ in belief.family.events:
        inter = e_ids & ev
        if not inter:
            continue
        comp = belief.mass_within(ev, (frozenset(ev) - e_ids) & ev)
        for coid in inter:
            single = belief.singleton_mass(ev, coid)
            if not _mass_infinitely_greater(single, comp):
                return False
    return True


def strongly_believes(belief, E):
    """Conditional probability exactly 1 on E wherever E is not contradicted."""
    e_ids = _event_ids(belief, E)
    for ev, _ in belief.family.events:
        inter = e_ids & ev
        if not inter:
            continue
        if belief.mass_within(ev, inter) != belief.mass_within(ev, ev):
            return False
    return True


def weakly_believes(belief, h, E):
    """Standard part of the conditional probability of E equals 1."""
    ev = belief.family.event_for_history(h)
    e_ids = _event_ids(belief, E)
    comp = belief.mass_within(ev, ev - e_ids)
    total = belief.mass_within(ev, ev)
    return _mass_ratio_st_is_zero(comp, total)
