"""Command-line front end.

    prudens ia|pr-cnps|pr-cps|verify|reduced <files...> [--format json|table]
    prudens fuzz --seed N --count N [--jobs N] [--out-dir DIR]
    prudens fmt <files...> [--write]

Exit status: 0 success, 2 usage problems, 3 parse diagnostics, 4 a
cross-check violation (the offending game is written next to the report).
File arguments that do not exist are also resolved against the bundled
corpus (or ``$PRUDENS_CORPUS``); ``verify`` with no files runs the whole
corpus.  Reports are deterministic for a fixed (input, configuration,
seed); ``--timings`` adds wall-clock fields at the cost of that.
"""

import argparse
import json
import multiprocessing
import sys
from collections import Counter

from . import corpus, dsl, generator, procedures, shrink
from .dsl import GameDocError
from .game import SizeLimit

SCHEMA = 1


def _emit(report, fmt, table_renderer):
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        table_renderer(report)


def _load_games(paths, cap):
    if cap is None:
        cap = 10 ** 6
    for name in paths:
        path = corpus.resolve(name)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            print("cannot read %s: %s" % (name, exc), file=sys.stderr)
            raise SystemExit(2)
        try:
            doc = dsl.parse(text)
            game = dsl.elaborate(doc, strategy_cap=cap)
        except GameDocError as exc:
            print("%s: %s" % (path, exc), file=sys.stderr)
            raise SystemExit(3)
        yield str(path), doc, game


def _trace_entry(path, trace, timings):
    entry = {"file": path, "trace": trace.to_json(include_timings=timings)}
    entry["all_verified"] = trace.all_verified()
    return entry


def _print_trace_table(report):
    for entry in report["results"]:
        trace = entry["trace"]
        print("== %s [%s]" % (entry["file"], trace["procedure"]))
        for n, step in enumerate(trace["steps"]):
            cells = "; ".join("%s: %s" % (p, " | ".join(step[p]))
                              for p in trace["players"])
            print("  step %d: %s" % (n, cells))
        print("  fixpoint N=%d  witnesses=%d  exclusions=%d  verified=%s"
              % (trace["fixpoint"], len(trace["witnesses"]),
                 len(trace["exclusions"]), entry["all_verified"]))


def _cmd_procedure(args, runner, reduced=False):
    results = []
    status = 0
    for path, _doc, game in _load_games(args.files, args.max_strategies):
        if reduced:
            ia, pr = procedures.reduced_variants(game)
            results.append(_trace_entry(path, ia, args.timings))
            results.append(_trace_entry(path, pr, args.timings))
        else:
            results.append(_trace_entry(path, runner(game), args.timings))
    report = {"schema": SCHEMA, "command": args.command, "results": results}
    _emit(report, args.format, _print_trace_table)
    return status


def _cmd_verify(args):
    files = args.files or [str(p) for p in corpus.corpus_paths()]
    results = []
    status = 0
    for path, _doc, game in _load_games(files, args.max_strategies):
        try:
            rep = procedures.verify_equivalences(game)
        except procedures.EquivalenceViolation as exc:
            results.append({"file": path, "ok": False, "error": str(exc)})
            status = 4
            continue
        entry = {
            "file": path,
            "ok": True,
            "fixpoint": rep["fixpoint"],
            "step_sizes": [list(s) for s in rep["step_sizes"]],
            "witnesses": rep["witnesses"],
            "exclusions": rep["exclusions"],
            "all_verified": rep["all_verified"],
        }
        results.append(entry)
    report = {"schema": SCHEMA, "command": "verify", "results": results}

    def table(rep):
        for entry in rep["results"]:
            if entry["ok"]:
                print("%-50s N=%d sizes=%s verified=%s"
                      % (entry["file"], entry["fixpoint"],
                         "".join(str(tuple(s)) for s in entry["step_sizes"]),
                         entry["all_verified"]))
            else:
                print("%-50s VIOLATION: %s" % (entry["file"], entry["error"]))

    _emit(report, args.format, table)
    return status


def _fuzz_seed(seed, index):
    return seed * 1_000_003 + index


def _fuzz_one(task):
    seed, index, bounds = task
    doc = generator.generate_random_game(_fuzz_seed(seed, index), **bounds)
    game = dsl.elaborate(doc)
    entry = {
        "index": index,
        "players": len(game.players),
        "histories": len(game.nonterminal),
    }
    try:
        rep = procedures.verify_equivalences(game)
        entry["fixpoint"] = rep["fixpoint"]
    except procedures.ProcedureError as exc:
        entry["error"] = str(exc)
    return entry


def _violation_predicate(game):
    try:
        procedures.verify_equivalences(game)
    except procedures.ProcedureError:
        return True
    return False


def _cmd_fuzz(args):
    bounds = {
        "max_players": args.players,
        "max_histories": args.histories,
        "max_actions": args.actions,
        "max_strategies": args.max_strategies
        if args.max_strategies is not None else 6,
    }
    tasks = [(args.seed, index, bounds) for index in range(args.count)]
    if args.jobs > 1:
        with multiprocessing.Pool(args.jobs) as pool:
            entries = list(pool.imap(_fuzz_one, tasks, chunksize=16))
    else:
        entries = [_fuzz_one(task) for task in tasks]

    histogram = Counter()
    players = Counter()
    violations = []
    for entry in entries:
        players[entry["players"]] += 1
        if "error" in entry:
            violations.append(entry)
        else:
            histogram[entry["fixpoint"]] += 1

    written = []
    for entry in violations:
        doc = generator.generate_random_game(
            _fuzz_seed(args.seed, entry["index"]), **bounds)
        small = shrink.shrink_document(doc, _violation_predicate)
        out = "%s/counterexample-%d-%d.seqgame" % (
            args.out_dir, args.seed, entry["index"])
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(dsl.serialize(small))
        written.append(out)

    report = {
        "schema": SCHEMA,
        "command": "fuzz",
        "seed": args.seed,
        "count": args.count,
        "bounds": {k: bounds[k] for k in sorted(bounds)},
        "fixpoint_histogram": {str(k): v
                               for k, v in sorted(histogram.items())},
        "players_histogram": {str(k): v for k, v in sorted(players.items())},
        "violations": [{"index": e["index"], "error": e["error"]}
                       for e in violations],
        "counterexamples": written,
    }

    def table(rep):
        print("fuzz seed=%d count=%d" % (rep["seed"], rep["count"]))
        print("fixpoint histogram: %s" % rep["fixpoint_histogram"])
        print("players histogram: %s" % rep["players_histogram"])
        if rep["violations"]:
            for v, path in zip(rep["violations"], rep["counterexamples"]):
                print("VIOLATION at index %d: %s -> %s"
                      % (v["index"], v["error"], path))
        else:
            print("no violations")

    _emit(report, args.format, table)
    return 4 if violations else 0


def _cmd_fmt(args):
    status = 0
    for name in args.files:
        path = corpus.resolve(name)
        try:
            doc = dsl.parse(path.read_text(encoding="utf-8"))
        except OSError as exc:
            print("cannot read %s: %s" % (name, exc), file=sys.stderr)
            return 2
        except GameDocError as exc:
            print("%s: %s" % (path, exc), file=sys.stderr)
            return 3
        text = dsl.serialize(doc)
        if args.write:
            path.write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    return status


def build_parser():
    parser = argparse.ArgumentParser(
        prog="prudens",
        description="exact cautious-reasoning solver for finite sequential "
                    "games")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_files=True, files_optional=False):
        if needs_files:
            nargs = "*" if files_optional else "+"
            p.add_argument("files", nargs=nargs,
                           help=".seqgame files (bare names resolve against "
                                "the corpus)")
        p.add_argument("--format", choices=("json", "table"), default="table")
        p.add_argument("--max-strategies", type=int, default=None,
                       help="strategy-count cap (fuzz: generator bound, "
                            "default 6; otherwise enumeration cap)")
        p.add_argument("--timings", action="store_true",
                       help="include wall-clock fields (non-deterministic)")

    p = sub.add_parser("ia", help="iterated admissibility trace")
    common(p)
    p = sub.add_parser("pr-cnps",
                       help="cautious procedure, non-standard priors")
    common(p)
    p = sub.add_parser("pr-cps",
                       help="cautious procedure, explicit standard systems")
    common(p)
    p = sub.add_parser("verify",
                       help="run all procedures and cross-check (default: "
                            "whole corpus)")
    common(p, files_optional=True)
    p = sub.add_parser("reduced",
                       help="reduced-strategy variants (equivalence classes)")
    common(p)

    p = sub.add_parser("fuzz", help="random-game differential campaign")
    common(p, needs_files=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--players", type=int, default=3)
    p.add_argument("--histories", type=int, default=12)
    p.add_argument("--actions", type=int, default=3)
    p.add_argument("--out-dir", default=".")

    p = sub.add_parser("fmt", help="canonical reformatting")
    p.add_argument("files", nargs="+")
    p.add_argument("--write", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    runners = {
        "ia": procedures.iterated_admissibility,
        "pr-cnps": procedures.prudent_rationalizability_cnps,
        "pr-cps": procedures.prudent_rationalizability_cps,
    }
    try:
        if args.command in runners:
            return _cmd_procedure(args, runners[args.command])
        if args.command == "reduced":
            return _cmd_procedure(args, None, reduced=True)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "fuzz":
            return _cmd_fuzz(args)
        if args.command == "fmt":
            return _cmd_fmt(args)
    except SystemExit as exc:
        return exc.code
    except SizeLimit as exc:
        print(str(exc), file=sys.stderr)
        return 2
    parser.error("unknown command")


if __name__ == "__main__":
    sys.exit(main())
