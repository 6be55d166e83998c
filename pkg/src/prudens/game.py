"""Finite multistage games with observed actions.

A game is a finite prefix-closed tree of histories, where a history is a
sequence of action profiles (one action per player per stage; inactive
players hold a singleton "wait" action so every stage is a full product).
Terminal histories carry exact rational payoffs.

Strategies are complete contingent plans: one action at every nonterminal
history, including histories the strategy itself precludes.
"""

import itertools
from fractions import Fraction


class GameError(Exception):
    pass


class SizeLimit(GameError):
    """A strategy set or profile space exceeds the configured cap."""


def format_path(h):
    """Render a history as ``/`` (root) or ``/(a,b)/(c,d)``."""
    if not h:
        return "/"
    return "".join("/(" + ",".join(profile) + ")" for profile in h)


class Strategy:
    """A complete plan for one player.

    ``choices[k]`` is the action taken at the k-th nonterminal history in
    the owning game's canonical history order.
    """

    __slots__ = ("player", "choices")

    def __init__(self, player, choices):
        self.player = player
        self.choices = tuple(choices)

    def __eq__(self, other):
        return (isinstance(other, Strategy)
                and self.player == other.player
                and self.choices == other.choices)

    def __hash__(self):
        return hash((self.player, self.choices))

    def name(self):
        return ",".join(self.choices)

    def __repr__(self):
        return "Strategy(p%d:%s)" % (self.player, self.name())


class ProductRestriction:
    """A product set Q = Q_1 x ... x Q_n of per-player strategy subsets."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = tuple(tuple(p) for p in parts)

    def __eq__(self, other):
        return (isinstance(other, ProductRestriction)
                and tuple(map(frozenset, self.parts))
                == tuple(map(frozenset, other.parts)))

    def __hash__(self):
        return hash(tuple(map(frozenset, self.parts)))

    def part(self, i):
        return self.parts[i]

    def sizes(self):
        return tuple(len(p) for p in self.parts)

    def is_empty(self):
        return any(not p for p in self.parts)

    def __repr__(self):
        return "ProductRestriction(sizes=%s)" % (self.sizes(),)


class Game:
    """Immutable game tree with derived strategy machinery.

    ``actions`` maps each nonterminal history to a tuple (per player, in
    player order) of nonempty action tuples; ``payoffs`` maps each terminal
    history to a tuple of Fractions.  Invariants are checked on
    construction: the tree is prefix closed, every stage is the full
    product of the per-player action sets, and terminal/nonterminal
    histories partition the tree.
    """

    def __init__(self, players, actions, payoffs, strategy_cap=10 ** 6):
        self.players = tuple(players)
        if not self.players:
            raise GameError("a game needs at least one player")
        self.actions = {tuple(map(tuple, h)): tuple(tuple(acts) for acts in per)
                        for h, per in actions.items()}
        self.payoffs = {tuple(map(tuple, h)): tuple(Fraction(v) for v in per)
                        for h, per in payoffs.items()}
        self.strategy_cap = strategy_cap
        self._validate()
        ordering = sorted(self.actions, key=self._history_sort_key)
        self.nonterminal = tuple(ordering)
        self.terminal = tuple(sorted(self.payoffs, key=self._history_sort_key))
        self.h_index = {h: k for k, h in enumerate(self.nonterminal)}
        self._strategies = {}
        self._form = None

    # -- construction checks -------------------------------------------

    def _history_sort_key(self, h):
        key = [len(h)]
        for depth, profile in enumerate(h):
            prefix = h[:depth]
            per = self.actions[prefix]
            key.append(tuple(per[i].index(profile[i]) for i in range(len(self.players))))
        return tuple(key)

    def _validate(self):
        n = len(self.players)
        if () not in self.actions:
            raise GameError("the root history must be nonterminal")
        overlap = set(self.actions) & set(self.payoffs)
        if overlap:
            raise GameError("history is both terminal and nonterminal: %s"
                            % format_path(sorted(overlap)[0]))
        everything = set(self.actions) | set(self.payoffs)
        for h, per in self.actions.items():
            if len(per) != n:
                raise GameError("action sets at %s must cover every player"
                                % format_path(h))
            for i, acts in enumerate(per):
                if not acts:
                    raise GameError("empty action set for %s at %s"
                                    % (self.players[i], format_path(h)))
                if len(set(acts)) != len(acts):
                    raise GameError("duplicate action for %s at %s"
                                    % (self.players[i], format_path(h)))
        for h in everything:
            if h and h[:-1] not in self.actions:
                raise GameError("history %s has no parent" % format_path(h))
            for depth, profile in enumerate(h):
                per = self.actions[h[:depth]]
                if len(profile) != n or any(
                        profile[i] not in per[i] for i in range(n)):
                    raise GameError("profile %r not feasible on the way to %s"
                                    % (profile, format_path(h)))
        for h, per in self.actions.items():
            for a in itertools.product(*per):
                child = h + (a,)
                if child not in everything:
                    raise GameError("missing child %s" % format_path(child))
        for z, per in self.payoffs.items():
            if len(per) != n:
                raise GameError("payoff vector at %s must cover every player"
                                % format_path(z))

    # -- basic structure ------------------------------------------------

    @property
    def is_static(self):
        return len(self.nonterminal) == 1

    def is_history(self, h):
        return h in self.actions or h in self.payoffs

    def is_terminal(self, h):
        return h in self.payoffs

    def action_sets(self, h):
        return self.actions[h]

    def payoff(self, z, i):
        return self.payoffs[z][i]

    def children(self, h):
        per = self.actions[h]
        return [h + (a,) for a in itertools.product(*per)]

    # -- strategies ------------------------------------------------------

    def strategy_count(self, i):
        count = 1
        for h in self.nonterminal:
            count *= len(self.actions[h][i])
        return count

    def strategies(self, i):
        """All complete plans of player i, in canonical lexicographic order."""
        if i not in self._strategies:
            count = self.strategy_count(i)
            if count > self.strategy_cap:
                raise SizeLimit("player %s has %d strategies (cap %d)"
                                % (self.players[i], count, self.strategy_cap))
            per_h = [self.actions[h][i] for h in self.nonterminal]
            self._strategies[i] = tuple(
                Strategy(i, choices) for choices in itertools.product(*per_h))
        return self._strategies[i]

    def full_restriction(self):
        return ProductRestriction([self.strategies(i)
                                   for i in range(len(self.players))])

    def action_of(self, s, h):
        return s.choices[self.h_index[h]]

    def path(self, profile):
        """The unique terminal history induced by a full strategy profile."""
        if isinstance(profile, dict):
            profile = tuple(profile[i] for i in range(len(self.players)))
        h = ()
        while h in self.actions:
            k = self.h_index[h]
            a = tuple(s.choices[k] for s in profile)
            h = h + (a,)
        return h

    def payoff_of_profile(self, profile, i):
        return self.payoffs[self.path(profile)][i]

    def allows(self, s, h):
        """Whether strategy s does not prevent history h from being reached."""
        for depth in range(len(h)):
            prefix = h[:depth]
            if prefix in self.payoffs:
                return False
            if s.choices[self.h_index[prefix]] != h[depth][s.player]:
                return False
        return True

    def strategies_allowing(self, h):
        """Per-player allow sets S_i(h), whose product is S(h)."""
        if not self.is_history(h):
            raise GameError("unknown history %s" % format_path(h))
        return ProductRestriction(
            [tuple(s for s in self.strategies(i) if self.allows(s, h))
             for i in range(len(self.players))])

    def allowed_histories(self, s):
        """H_i(s): the nonterminal histories that s allows."""
        return tuple(h for h in self.nonterminal if self.allows(s, h))

    def replacement_strategy(self, s, h):
        """The minimal modification of s that allows h.

        Redirects s toward h at every strict prefix of h and keeps s's
        choice everywhere else.
        """
        if not self.is_history(h):
            raise GameError("unknown history %s" % format_path(h))
        choices = list(s.choices)
        for depth in range(len(h)):
            prefix = h[:depth]
            choices[self.h_index[prefix]] = h[depth][s.player]
        return Strategy(s.player, choices)

    def behaviorally_equivalent(self, s, t):
        """Same allowed histories and same choices on them.

        Equivalent to inducing the same terminal history against every
        co-player profile.
        """
        if s.player != t.player:
            raise GameError("strategies belong to different players")
        hs = self.allowed_histories(s)
        if hs != self.allowed_histories(t):
            return False
        return all(s.choices[self.h_index[h]] == t.choices[self.h_index[h]]
                   for h in hs)

    def reduce_strategies(self, i):
        """Partition of S_i into behavioral-equivalence classes.

        Each class lists its members in canonical order; the first member
        (lexicographically least plan) is the class representative.
        """
        groups = {}
        for s in self.strategies(i):
            hs = self.allowed_histories(s)
            key = (hs, tuple(s.choices[self.h_index[h]] for h in hs))
            groups.setdefault(key, []).append(s)
        return sorted(groups.values(),
                      key=lambda cls: self.strategies(i).index(cls[0]))

    def strategic_form(self):
        if self._form is None:
            self._form = StrategicForm(
                self, [list(self.strategies(i))
                       for i in range(len(self.players))])
        return self._form

    def reduced_form(self):
        reps = [[cls[0] for cls in self.reduce_strategies(i)]
                for i in range(len(self.players))]
        return StrategicForm(self, reps)


class StrategicForm:
    """Index-based tables for a game restricted to given strategy lists.

    Strategies are referred to by their index in the per-player list;
    co-player profiles of player i by their index in ``co_profiles[i]``.
    Built once per analysis run, this carries everything the solvers need:
    payoffs against co-profiles, allow sets per history, conditioning
    events, allowed-history lists and replacement indices.

    Built from class representatives (``Game.reduced_form``) the same
    tables describe the reduced game; replacement indices are then
    unavailable, since redirecting a plan can leave the representative set.
    """

    PROFILE_CAP = 500_000

    def __init__(self, game, strat_lists):
        self.game = game
        n = self.n = len(game.players)
        self.strats = [list(lst) for lst in strat_lists]
        self.index = [{s: k for k, s in enumerate(lst)} for lst in self.strats]
        self.counts = [len(lst) for lst in self.strats]
        total = 1
        for c in self.counts:
            total *= c
        if total > self.PROFILE_CAP:
            raise SizeLimit("profile space %d exceeds cap %d"
                            % (total, self.PROFILE_CAP))

        self.co_players = [tuple(j for j in range(n) if j != i)
                           for i in range(n)]
        self.co_profiles = [list(itertools.product(
            *(range(self.counts[j]) for j in self.co_players[i])))
            for i in range(n)]
        self.co_index = [{co: k for k, co in enumerate(cos)}
                         for cos in self.co_profiles]

        # payoff[i][sid][coid], filled by one sweep over full profiles
        self.payoff = [[[None] * len(self.co_profiles[i])
                        for _ in range(self.counts[i])] for i in range(n)]
        for ids in itertools.product(*(range(c) for c in self.counts)):
            profile = tuple(self.strats[j][ids[j]] for j in range(n))
            pv = game.payoffs[game.path(profile)]
            for i in range(n):
                co = tuple(ids[j] for j in self.co_players[i])
                self.payoff[i][ids[i]][self.co_index[i][co]] = pv[i]

        # allow sets and conditioning events
        self.allow = [[frozenset(
            sid for sid, s in enumerate(self.strats[i])
            if game.allows(s, h)) for h in game.nonterminal]
            for i in range(n)]
        self.co_allow = []
        for i in range(n):
            per_h = []
            for k, h in enumerate(game.nonterminal):
                allowed = [self.allow[j][k] for j in self.co_players[i]]
                per_h.append(frozenset(
                    self.co_index[i][co]
                    for co in itertools.product(*allowed)))
            self.co_allow.append(per_h)

        # distinct conditioning events, tagged with the inducing histories
        self.events = []
        for i in range(n):
            seen = {}
            order = []
            for k in range(len(game.nonterminal)):
                ev = self.co_allow[i][k]
                if ev not in seen:
                    seen[ev] = []
                    order.append(ev)
                seen[ev].append(k)
            self.events.append([(ev, tuple(seen[ev])) for ev in order])

        self.allowed_hist = [
            [tuple(k for k in range(len(game.nonterminal))
                   if sid in self.allow[i][k])
             for sid in range(self.counts[i])]
            for i in range(n)]

        self._replacement = None

    def replacement(self, i, h_idx, sid):
        """Index of the h-replacement of strategy sid (full form only)."""
        if self._replacement is None:
            full = all(self.counts[i] == self.game.strategy_count(i)
                       for i in range(self.n))
            if not full:
                raise GameError("replacements are defined on full strategy "
                                "sets only")
            self._replacement = [
                [dict() for _ in self.game.nonterminal]
                for _ in range(self.n)]
        cache = self._replacement[i][h_idx]
        if sid not in cache:
            h = self.game.nonterminal[h_idx]
            rep = self.game.replacement_strategy(self.strats[i][sid], h)
            cache[sid] = self.index[i][rep]
        return cache[sid]

    def co_profile_strategies(self, i, coid):
        ids = self.co_profiles[i][coid]
        return tuple(self.strats[j][ids[k]]
                     for k, j in enumerate(self.co_players[i]))

    def co_restriction(self, i, sets):
        """Co-profile ids whose components all lie in the given id sets.

        ``sets`` maps co-player index j to a set of j-strategy ids.
        """
        out = []
        for coid, ids in enumerate(self.co_profiles[i]):
            if all(ids[k] in sets[j]
                   for k, j in enumerate(self.co_players[i])):
                out.append(coid)
        return frozenset(out)

    def restriction_from_ids(self, id_sets):
        return ProductRestriction(
            [tuple(self.strats[i][sid] for sid in sorted(id_sets[i]))
             for i in range(self.n)])
