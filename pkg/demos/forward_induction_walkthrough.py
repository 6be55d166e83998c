"""Walk through cautious forward induction in the outside-option game.

Player 1 can take a sure payoff or enter a battle of the sexes.  Entering
and then playing the low-payoff coordination is weakly dominated by
staying out, so a cautious player 2 who sees entry concludes the entrant
is going for the high-payoff outcome and accommodates; entering then
becomes strictly better than the outside option.  The script prints the
elimination trace and inspects a stored justifying belief.
"""

from prudens import corpus, dsl, prudent_rationalizability_cnps

game = dsl.load(corpus.resolve("bos_outside_option.seqgame"))
trace = prudent_rationalizability_cnps(game)

print("players:", ", ".join(game.players))
for n, step in enumerate(trace.steps):
    cells = "; ".join(
        "%s: {%s}" % (game.players[i],
                      ", ".join(s.name() for s in step.part(i)))
        for i in range(len(game.players)))
    print("step %d  %s" % (n, cells))
print("fixpoint after %d rounds" % trace.fixpoint)

print("\neliminations and their certificates:")
for (n, i, s), rec in sorted(trace.exclusions.items(),
                             key=lambda kv: kv[0][0]):
    mix = " + ".join("%s*%s" % (w, t.name())
                     for t, w in rec.mixture.items())
    print("  round %d: %s's %s is dominated by %s"
          % (n, game.players[i], s.name(), mix))

final = trace.fixpoint + 1
survivor = trace.steps[-1].part(0)[0]
rec = trace.witnesses[(final, 0, survivor)]
print("\njustifying prior for %s's surviving plan %s:"
      % (game.players[0], survivor.name()))
for row in rec.belief.to_json()["prior"]:
    print("  %-12s mass %s" % (",".join(row["profile"]), row["mass"]))
print("checks:", ", ".join("%s=%s" % (k, v) for k, v in rec.checks))
