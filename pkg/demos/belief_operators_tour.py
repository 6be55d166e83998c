"""A tour of the belief operators on a three-plan co-player.

Builds the ladder prior (1 - e - e^2, e, e^2) over co-player plans a, b,
c and shows how cautious belief is relative to the event: {a} and {a, b}
are cautiously believed, but the superset {a, c} is not, because c is not
infinitely more likely than the excluded b.  Also contrasts weak, strong
and cautious strong belief on the same prior.
"""

from prudens import (c_strongly_believes, cautiously_believes, corpus, dsl,
                     strongly_believes, weakly_believes)
from prudens.beliefs import PriorCNPS
from prudens.hyperreal import Hyperreal

game = dsl.load(corpus.resolve("remark_nonmonotone.seqgame"))
bob = {s.name(): (s,) for s in game.strategies(1)}

D = 4
e = Hyperreal.epsilon(D)
e2 = Hyperreal.epsilon(D, power=2)
belief = PriorCNPS.from_profile_map(game, 0, {
    bob["a"]: Hyperreal.one(D) - e - e2,
    bob["b"]: e,
    bob["c"]: e2,
})

root = ()
for label in ("a", "b", "c"):
    print("prior mass on %s: %s" % (label, belief.conditional(root)[bob[label]]))

events = {
    "{a}": {bob["a"]},
    "{a,b}": {bob["a"], bob["b"]},
    "{a,c}": {bob["a"], bob["c"]},
    "{a,b,c}": {bob["a"], bob["b"], bob["c"]},
}
print("\n%-10s %-9s %-7s %-7s %s" % ("event", "cautious", "weak",
                                     "strong", "cautious-strong"))
for label, ev in events.items():
    print("%-10s %-9s %-7s %-7s %s" % (
        label,
        cautiously_believes(belief, root, ev),
        weakly_believes(belief, root, ev),
        strongly_believes(belief, ev),
        c_strongly_believes(belief, ev)))

print("\nnote {a} is held but its superset {a,c} is not: caution is "
      "relative to the event.")
