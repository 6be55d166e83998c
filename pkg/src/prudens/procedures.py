"""Solution procedures with machine-checked traces.

Three procedures are computed: iterated admissibility, and the two
belief-based cautious procedures (one justifying strategies by
conditional non-standard systems built from a full-support prior, one by
explicit standard conditional systems with a support condition per
history).  The belief-based step sets are decided through iterated
admissibility; what makes the trace trustworthy is the audit attached to
every entry:

* each surviving (step, player, strategy) triple stores a justifying
  belief, rebuilt from scratch out of exact LP solutions and then
  re-verified against the membership conditions themselves (belief
  validity, the cautious strong-belief ladder or the per-history support
  condition, and best-reply membership);
* each eliminated triple stores a dominating mixture that re-verifies by
  substitution, which certifies that no justifying belief can exist.

A verified trace is therefore an instance-level proof that the three
procedures coincide step by step on the given game; any verification
failure raises and is surfaced as an :class:`EquivalenceViolation`.

Justifying priors are assembled on an infinitesimal ladder: with
admissible-at-every-earlier-round measures nu_0, ..., nu_{n-1} (supports
shrinking with the round), the prior weighs nu_ell by e^ell and gives
nu_0 the complementary weight 1 - e - ... - e^{n-1}, so the masses sum to
exactly 1 without dividing polynomials.  Best-reply membership is checked
with the weak sequential correspondence (optimality at every history the
strategy allows); see the package docs for why the strict replacement
form cannot support the step equalities.
"""

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import best_reply, dominance
from .beliefs import (BeliefError, ConditioningFamily, ExplicitCPS, PriorCNPS,
                      c_strongly_believes, validate_chain_rule)
from .game import format_path
from .hyperreal import Hyperreal


class ProcedureError(Exception):
    pass


class WitnessVerificationFailed(ProcedureError):
    """A constructed witness failed its independent re-verification."""


class EquivalenceViolation(ProcedureError):
    """The procedures disagreed, or an audit entry failed, on one game."""

    def __init__(self, msg, step=None, player=None, strategy=None):
        super().__init__(msg)
        self.step = step
        self.player = player
        self.strategy = strategy


PR_CNPS = "pr-cnps"
PR_CPS = "pr-cps"
IA = "ia"


@dataclass
class WitnessRecord:
    step: int
    player: int
    strategy: object
    belief: object
    checks: list = field(default_factory=list)

    def verified(self):
        return all(ok for _, ok in self.checks)


@dataclass
class ExclusionRecord:
    step: int
    player: int
    strategy: object
    mixture: dict
    checks: list = field(default_factory=list)

    def verified(self):
        return all(ok for _, ok in self.checks)


@dataclass
class ProcedureTrace:
    procedure: str
    game: object
    steps: list                 # ProductRestriction per step, 0..N+1
    fixpoint: int               # N: first index where the sequence is constant
    witnesses: dict = field(default_factory=dict)
    exclusions: dict = field(default_factory=dict)
    reduced: bool = False
    timings: dict = field(default_factory=dict)

    def step_sizes(self):
        return [st.sizes() for st in self.steps]

    def all_verified(self):
        return (all(w.verified() for w in self.witnesses.values())
                and all(x.verified() for x in self.exclusions.values()))

    def to_json(self, include_timings=False):
        game = self.game
        out = {
            "procedure": self.procedure,
            "reduced": self.reduced,
            "players": list(game.players),
            "fixpoint": self.fixpoint,
            "steps": [
                {game.players[i]: [s.name() for s in st.part(i)]
                 for i in range(len(game.players))}
                for st in self.steps],
            "witnesses": [
                {"step": rec.step,
                 "player": game.players[rec.player],
                 "strategy": rec.strategy.name(),
                 "belief": rec.belief.to_json() if rec.belief else None,
                 "checks": [{"name": name, "ok": ok}
                            for name, ok in rec.checks]}
                for rec in self._ordered(self.witnesses)],
            "exclusions": [
                {"step": rec.step,
                 "player": game.players[rec.player],
                 "strategy": rec.strategy.name(),
                 "mixture": {s.name(): str(w)
                             for s, w in sorted(rec.mixture.items(),
                                                key=lambda kv: kv[0].name())},
                 "checks": [{"name": name, "ok": ok}
                            for name, ok in rec.checks]}
                for rec in self._ordered(self.exclusions)],
        }
        if include_timings:
            out["timings"] = dict(self.timings)
        return out

    def _ordered(self, table):
        return [table[key] for key in sorted(
            table, key=lambda k: (k[0], k[1], k[2].choices))]


class _Run:
    """Shared machinery for one game: elimination steps, justifier cache."""

    def __init__(self, form):
        self.form = form
        t0 = time.perf_counter()
        self.steps, self.certificates = dominance.iterated_elimination_ids(form)
        self.elimination_seconds = time.perf_counter() - t0
        self.fixpoint = len(self.steps) - 2
        self.degree_bound = self.fixpoint + 1
        self._justifiers = {}
        self._columns = {}

    def _level_columns(self, i, level):
        key = (i, level)
        if key not in self._columns:
            q_sets = [frozenset(part) for part in self.steps[level]]
            self._columns[key] = dominance._Columns(self.form, i, q_sets)
        return self._columns[key]

    def co_event(self, i, level):
        """Co-profiles of i consistent with the round-``level`` survivors."""
        return frozenset(self._level_columns(i, level).co_ids)

    def justifier(self, i, sid, level):
        """Measure with support exactly the level's co-survivors against
        which sid is a best reply among all own strategies."""
        key = (i, sid, level)
        if key not in self._justifiers:
            q_sets = [frozenset(part) for part in self.steps[level]]
            cols = self._level_columns(i, level)
            measure = dominance.justifier_ids(self.form, q_sets, i, sid, cols)
            if measure is not None and not dominance.measure_justifies_ids(
                    self.form, q_sets, i, sid, measure, cols):
                raise WitnessVerificationFailed(
                    "justifier failed substitution check")
            self._justifiers[key] = measure
        return self._justifiers[key]

    def required_justifier(self, i, sid, level):
        measure = self.justifier(i, sid, level)
        if measure is None:
            raise WitnessVerificationFailed(
                "no justifier with support at round %d for %r"
                % (level, self.form.strats[i][sid]))
        return measure

    def witness_steps(self):
        """Steps carrying witnesses: 1..N+1 (one past stabilization, so the
        final witnesses honor the full ladder of surviving sets)."""
        return range(1, self.fixpoint + 2)


def _exclusion_records(run, trace):
    form = run.form
    for (n, i, sid), mixture in run.certificates.items():
        strategy = form.strats[i][sid]
        q_sets = [frozenset(part) for part in run.steps[n - 1]]
        ok = dominance.mixture_dominates_ids(form, q_sets, i, sid, mixture)
        rec = ExclusionRecord(
            step=n, player=i, strategy=strategy,
            mixture={form.strats[i][r]: w for r, w in mixture.items()},
            checks=[("dominance-substitution", ok)])
        if not ok:
            raise WitnessVerificationFailed(
                "stored dominating mixture failed substitution")
        trace.exclusions[(n, i, strategy)] = rec


def _restrictions(run):
    return [run.form.restriction_from_ids(step) for step in run.steps]


def iterated_admissibility(game):
    """Maximal iterated deletion of weakly dominated strategies.

    The trace records one confirming step beyond the fixpoint, and a
    dominating-mixture certificate for every eliminated strategy.
    """
    return _iterated_admissibility(_Run(game.strategic_form()), game)


def _iterated_admissibility(run, game, reduced=False):
    trace = ProcedureTrace(IA, game, _restrictions(run), run.fixpoint,
                           reduced=reduced)
    trace.timings["elimination_seconds"] = run.elimination_seconds
    _exclusion_records(run, trace)
    return trace


# -- prior-generated (non-standard) witnesses ---------------------------

def _ladder_prior(run, i, sid, step):
    """Assemble the step-n justifying prior from the per-round justifiers.

    nu_ell has support exactly the round-(n-1-ell) co-survivors; the
    prior is nu_0 weighted by 1 - e - ... - e^{n-1} plus e^ell nu_ell,
    which sums to 1 exactly and keeps full support.
    """
    form = run.form
    bound = run.degree_bound
    measures = [run.required_justifier(i, sid, step - 1 - ell)
                for ell in range(step)]
    n_co = len(form.co_profiles[i])
    prior = {}
    for coid in range(n_co):
        coeffs = [Fraction(0)] * step
        base = measures[0].get(coid, Fraction(0))
        coeffs[0] = base
        for ell in range(1, step):
            coeffs[ell] = measures[ell].get(coid, Fraction(0)) - base
        prior[coid] = Hyperreal(coeffs, bound)
    return prior


def _verify_cnps_witness(run, family, belief, i, sid, step):
    checks = []
    ok_support = all(belief.prior[coid] > 0 for coid in belief.prior)
    total = Hyperreal.zero(belief.degree_bound)
    for mass in belief.prior.values():
        total = total + mass
    checks.append(("prior-full-support", ok_support))
    checks.append(("prior-sums-to-1", total == 1))
    for m in range(step):
        ok = c_strongly_believes(belief, run.co_event(i, m))
        checks.append(("c-strong-belief-in-round-%d-survivors" % m, ok))
    analysis = best_reply.ReplyAnalysis(run.form, belief, i)
    checks.append(("weak-sequential-best-reply",
                   sid in analysis.weak_sequential_ids()))
    return checks


def prudent_rationalizability_cnps(game):
    """The cautious procedure with non-standard justifying priors.

    Step sets coincide with iterated admissibility; every survivor's
    stored prior is re-verified against the membership conditions and
    every eliminated strategy carries a dominance certificate.
    """
    return _pr_cnps(_Run(game.strategic_form()), game)


def _pr_cnps(run, game, reduced=False):
    form = run.form
    t0 = time.perf_counter()
    trace = ProcedureTrace(PR_CNPS, game, _restrictions(run), run.fixpoint,
                           reduced=reduced)
    _exclusion_records(run, trace)
    families = [ConditioningFamily(game, i, form) for i in range(form.n)]
    for n in run.witness_steps():
        for i in range(form.n):
            for sid in run.steps[n][i]:
                prior = _ladder_prior(run, i, sid, n)
                try:
                    belief = PriorCNPS(families[i], prior)
                except BeliefError as exc:
                    raise WitnessVerificationFailed(str(exc))
                checks = _verify_cnps_witness(run, families[i], belief,
                                              i, sid, n)
                strategy = form.strats[i][sid]
                rec = WitnessRecord(n, i, strategy, belief, checks)
                trace.witnesses[(n, i, strategy)] = rec
                if not rec.verified():
                    raise WitnessVerificationFailed(
                        "witness for %r at step %d failed: %s"
                        % (strategy, n,
                           [name for name, ok in checks if not ok]))
    trace.timings["witness_seconds"] = time.perf_counter() - t0
    trace.timings["elimination_seconds"] = run.elimination_seconds
    return trace


# -- explicit standard witnesses ----------------------------------------

def _cps_witness_table(run, family, i, sid, step, cache):
    """Conditioning of the round-(n-1) justifier, falling back to the
    previous step's witness at events its support cannot reach."""
    key = (i, sid, step)
    if key in cache:
        return cache[key]
    form = run.form
    measure = run.required_justifier(i, sid, step - 1)
    fallback = None
    table = {}
    for ev, _ in family.events:
        total = sum((measure.get(c, Fraction(0)) for c in ev), Fraction(0))
        if total > 0:
            table[ev] = {c: measure[c] / total
                         for c in ev if measure.get(c, Fraction(0)) > 0}
        else:
            if fallback is None:
                if step < 2:
                    raise WitnessVerificationFailed(
                        "full-support justifier missed an event")
                fallback = _cps_witness_table(run, family, i, sid,
                                              step - 1, cache)
            table[ev] = dict(fallback[ev])
    cache[key] = table
    return table


def _verify_cps_witness(run, family, belief, i, sid, step):
    checks = []
    ok, violations = validate_chain_rule(belief)
    checks.append(("chain-rule", ok and not violations))
    survivors = run.co_event(i, step - 1)
    ok_support = True
    for ev, _ in family.events:
        required = survivors & ev
        if required and belief.support(ev) != required:
            ok_support = False
            break
    checks.append(("support-matches-surviving-co-profiles", ok_support))
    analysis = best_reply.ReplyAnalysis(run.form, belief, i)
    checks.append(("weak-sequential-best-reply",
                   sid in analysis.weak_sequential_ids()))
    return checks


def prudent_rationalizability_cps(game):
    """The cautious procedure with explicit standard conditional systems.

    Witnesses condition a justifier supported on the previous step's
    survivors and are re-verified against the chain rule, the support
    condition at every history, and best-reply membership.
    """
    return _pr_cps(_Run(game.strategic_form()), game)


def _pr_cps(run, game, reduced=False):
    form = run.form
    t0 = time.perf_counter()
    trace = ProcedureTrace(PR_CPS, game, _restrictions(run), run.fixpoint,
                           reduced=reduced)
    _exclusion_records(run, trace)
    families = [ConditioningFamily(game, i, form) for i in range(form.n)]
    cache = {}
    for n in run.witness_steps():
        for i in range(form.n):
            for sid in run.steps[n][i]:
                table = _cps_witness_table(run, families[i], i, sid, n, cache)
                try:
                    belief = ExplicitCPS(families[i], table)
                except BeliefError as exc:
                    raise WitnessVerificationFailed(str(exc))
                checks = _verify_cps_witness(run, families[i], belief,
                                             i, sid, n)
                strategy = form.strats[i][sid]
                rec = WitnessRecord(n, i, strategy, belief, checks)
                trace.witnesses[(n, i, strategy)] = rec
                if not rec.verified():
                    raise WitnessVerificationFailed(
                        "witness for %r at step %d failed: %s"
                        % (strategy, n,
                           [name for name, ok in checks if not ok]))
    trace.timings["witness_seconds"] = time.perf_counter() - t0
    trace.timings["elimination_seconds"] = run.elimination_seconds
    return trace


# -- cross-verification --------------------------------------------------

def verify_equivalences(game):
    """Run all three procedures and machine-check their agreement.

    Returns a report of per-step sizes, the fixpoint index, and audit
    counts.  Raises EquivalenceViolation (carrying the first offending
    step and strategy) if the step sets disagree or any stored witness or
    exclusion certificate fails verification.
    """
    form = game.strategic_form()
    try:
        run = _Run(form)
        ia = _iterated_admissibility(run, game)
        cnps = _pr_cnps(run, game)
        cps = _pr_cps(run, game)
    except (WitnessVerificationFailed, dominance.DominanceError) as exc:
        raise EquivalenceViolation(str(exc))
    traces = {IA: ia, PR_CNPS: cnps, PR_CPS: cps}
    for name, trace in traces.items():
        if len(trace.steps) != len(ia.steps):
            raise EquivalenceViolation("step count mismatch in %s" % name)
        for n, (a, b) in enumerate(zip(ia.steps, trace.steps)):
            if a != b:
                raise EquivalenceViolation(
                    "step %d sets differ between ia and %s" % (n, name),
                    step=n)
        for key, rec in trace.witnesses.items():
            if not rec.verified():
                raise EquivalenceViolation(
                    "unverified witness", step=key[0], player=key[1],
                    strategy=key[2])
        for key, rec in trace.exclusions.items():
            if not rec.verified():
                raise EquivalenceViolation(
                    "unverified exclusion", step=key[0], player=key[1],
                    strategy=key[2])
    return {
        "fixpoint": run.fixpoint,
        "step_sizes": ia.step_sizes(),
        "witnesses": {name: len(trace.witnesses)
                      for name, trace in traces.items()},
        "exclusions": len(ia.exclusions),
        "all_verified": all(trace.all_verified()
                            for trace in traces.values()),
        "traces": traces,
    }


def sophistication_index(game, i, trace, h):
    """The deepest step whose surviving co-profiles remain consistent
    with history h (well defined: step 0 is consistent with every h)."""
    form = game.strategic_form()
    k = game.h_index[h]
    event = form.co_allow[i][k]
    best = 0
    for m in range(trace.fixpoint + 1):
        sets = {j: set(form.index[j][s] for s in trace.steps[m].part(j))
                for j in range(form.n)}
        if form.co_restriction(i, sets) & event:
            best = m
    return best


def reduced_variants(game):
    """The elimination pair over behavioral-equivalence classes.

    Runs iterated admissibility and the prior-based cautious procedure on
    class representatives, using the weak sequential correspondence; the
    traces' step sets must agree, and all witnesses are audited as in the
    full runs.
    """
    rform = game.reduced_form()
    run = _Run(rform)
    ia = _iterated_admissibility(run, game, reduced=True)
    try:
        pr = _pr_cnps(run, game, reduced=True)
    except WitnessVerificationFailed as exc:
        raise EquivalenceViolation(str(exc))
    for n, (a, b) in enumerate(zip(ia.steps, pr.steps)):
        if a != b:
            raise EquivalenceViolation(
                "reduced step %d sets differ" % n, step=n)
    return ia, pr
