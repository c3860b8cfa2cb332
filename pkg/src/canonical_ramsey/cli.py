"""Command-line interface.

Every report is a few prose lines followed by ``key=value`` lines. Exit
status: 0 found / success, 1 proven absent or verdict false, 2 inconclusive,
64 usage error. All randomness comes from ``--seed`` (default 0).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import constructions, crg, proofs, store
from .core import ColoringError, EdgeColoring, as_vertex_set
from .detectors import CliqueWitness, Kind, classify_clique, find_clique, find_ordered_canonical
from .search import PatternQuery, compute_number, exists_avoiding, verify_avoids

EXIT_OK, EXIT_FALSE, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fmt(seq) -> str:
    return ",".join(str(x) for x in seq)


class Report:
    def __init__(self):
        self.prose: list[str] = []
        self.kv: list[tuple[str, object]] = []

    def say(self, line: str):
        self.prose.append(line)

    def put(self, key: str, value):
        if isinstance(value, (list, tuple)):
            value = _fmt(value)
        self.kv.append((key, value))

    def witness(self, w: CliqueWitness, prefix: str = ""):
        self.put(prefix + "kind", w.kind.value)
        self.put(prefix + "vertices", w.vertices)
        if w.color is not None:
            self.put(prefix + "color", w.color)
        if w.ordering is not None:
            self.put(prefix + "ordering", w.ordering)
        if w.levels is not None:
            self.put(prefix + "levels", w.levels)

    def emit(self, out):
        for line in self.prose:
            print(line, file=out)
        for k, v in self.kv:
            print(f"{k}={v}", file=out)


def _add_query(p: argparse.ArgumentParser):
    p.add_argument("--forbid-mono", type=int)
    p.add_argument("--forbid-lexical", type=int)
    p.add_argument("--forbid-rainbow", type=int)
    p.add_argument("--forbid-orderable", type=int)
    p.add_argument("--forbid-ordered-canonical", type=int)
    p.add_argument("--max-colors", type=int)


def _query(args) -> PatternQuery:
    try:
        return PatternQuery(args.forbid_mono, args.forbid_lexical, args.forbid_rainbow,
                            args.forbid_orderable, args.forbid_ordered_canonical, args.max_colors)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(path: str) -> EdgeColoring:
    try:
        chi, _ = crg.read(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return chi


def _vertices(chi: EdgeColoring, arg) -> tuple[int, ...]:
    if arg is None:
        return tuple(chi.vertices)
    try:
        return as_vertex_set(chi, arg)
    except ColoringError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands --------------------------------------------------------------


def cmd_detect(args, rep: Report) -> int:
    chi = _load(args.input)
    if args.vertices is not None:
        S = _vertices(chi, args.vertices)
        if len(S) < 2:
            raise UsageError("--vertices needs at least 2 vertices")
        flags = classify_clique(chi, S)
        rep.say(f"set {_fmt(S)} carries: {', '.join(k.value for k in flags) or 'nothing'}")
        rep.put("kinds", [k.value for k in flags])
        if args.kind is None:
            return EXIT_OK
        if args.kind == "ordered-canonical":
            hit = next((flags[k] for k in (Kind.MONOCHROMATIC, Kind.RAINBOW, Kind.LOWER_LEXICAL, Kind.UPPER_LEXICAL) if k in flags), None)
        else:
            hit = flags.get(Kind(args.kind))
        rep.put("holds", int(hit is not None))
        if hit is not None:
            rep.witness(hit)
        return EXIT_OK if hit is not None else EXIT_FALSE
    if args.kind is None or args.size is None:
        raise UsageError("detect needs --kind and --size (or --vertices)")
    if not 2 <= args.size <= chi.n:
        raise UsageError(f"--size {args.size} out of range 2..{chi.n}")
    if args.kind == "ordered-canonical":
        w = find_ordered_canonical(chi, args.size)
    else:
        w = find_clique(chi, Kind(args.kind), args.size)
    rep.put("found", int(w is not None))
    if w is None:
        rep.say(f"no {args.kind} clique of size {args.size}")
        return EXIT_FALSE
    rep.say(f"{w.kind.value} clique of size {args.size} found")
    if w.ordering is not None:
        rep.say("ordering " + " ".join(map(str, w.ordering)) + " with levels " + " ".join(map(str, w.levels)))
    rep.witness(w)
    return EXIT_OK


def cmd_construct(args, rep: Report, out) -> int:
    what = args.what
    try:
        if what in ("mono", "rainbow", "lexical", "random", "delta-good") and args.n is None:
            raise UsageError(f"construct {what} needs --n")
        if what == "mono":
            chi = constructions.mono_coloring(args.n)
        elif what == "rainbow":
            chi = constructions.rainbow_coloring(args.n)
        elif what == "lexical":
            chi = constructions.lexical_coloring(args.n)
        elif what == "random":
            if args.colors is None:
                raise UsageError("construct random needs --colors")
            chi = constructions.random_coloring(args.n, args.colors, args.seed)
        elif what == "delta-good":
            if args.delta is None:
                raise UsageError("construct delta-good needs --delta")
            chi = constructions.random_delta_good(args.n, args.delta, args.seed)
        elif what == "product":
            if not (args.outer and args.inner):
                raise UsageError("construct product needs --outer and --inner")
            chi = constructions.product(_load(args.outer), _load(args.inner))
        else:
            if not args.base:
                raise UsageError("construct iterated-product needs --base")
            chi = constructions.iterated_product(_load(args.base), args.times)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    comments = [f"provenance construct {what}"]
    if not args.out:
        # stdout carries only the crg text so it can be piped
        out.write(crg.dumps(chi, comments))
        return EXIT_OK
    crg.write(args.out, chi, comments)
    rep.say(f"constructed {what} coloring on {chi.n} vertices with {chi.color_count} colors")
    rep.put("n", chi.n)
    rep.put("colors", chi.color_count)
    rep.put("out", args.out)
    return EXIT_OK


def _result_line(label, status, value, nodes, seconds) -> str:
    return f"RESULT {label} {status} {value} {nodes} {seconds:.3f}"


def cmd_search_number(args, rep: Report) -> int:
    q = _query(args)
    if args.cap < 2:
        raise UsageError("--cap must be at least 2")
    outc = compute_number(q, args.cap, args.node_budget, args.time_budget, args.jobs)
    rep.say(_result_line(q.label(), outc.status, outc.value, outc.nodes_explored, outc.wall_time))
    rep.put("query", q.label())
    rep.put("status", outc.status)
    rep.put("value", outc.value)
    rep.put("nodes", outc.nodes_explored)
    rep.put("witness_n", outc.extremal_witness.n)
    for n, status, nodes in outc.per_n:
        rep.put(f"n{n}", f"{status}:{nodes}")
    if args.out:
        crg.write(args.out, outc.extremal_witness, [f"query {q.label()}", "provenance search"])
        rep.put("out", args.out)
    return EXIT_OK if outc.status == "exact" else EXIT_INCONCLUSIVE


def cmd_exists(args, rep: Report) -> int:
    q = _query(args)
    if args.n < 1:
        raise UsageError("--n must be positive")
    res = exists_avoiding(args.n, q, args.node_budget, args.time_budget, args.jobs)
    rep.say(_result_line(q.label(), res.status, args.n, res.nodes, res.seconds))
    rep.put("query", q.label())
    rep.put("n", args.n)
    rep.put("status", res.status)
    rep.put("nodes", res.nodes)
    if res.witness is not None and args.out:
        crg.write(args.out, res.witness, [f"query {q.label()}", "provenance search"])
        rep.put("out", args.out)
    return {"found": EXIT_OK, "absent": EXIT_FALSE}.get(res.status, EXIT_INCONCLUSIVE)


def cmd_verify(args, rep: Report) -> int:
    chi = _load(args.input)
    q = _query(args)
    ok, w = verify_avoids(chi, q)
    rep.say(f"coloring on {chi.n} vertices {'avoids' if ok else 'does not avoid'} {q.label()}")
    rep.put("query", q.label())
    rep.put("avoids", int(ok))
    if w is not None:
        rep.witness(w, "violation_")
    elif not ok:
        rep.put("violation_kind", "too_many_colors")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_find_rainbow(args, rep: Report) -> int:
    chi = _load(args.input)
    V = _vertices(chi, args.vertices)
    if args.r < 2:
        raise UsageError("--r must be at least 2")
    if len(V) < 3 * args.r:
        raise UsageError(f"need at least 3r = {3 * args.r} vertices, have {len(V)}")
    res = proofs.sample_extract_rainbow(chi, V, args.r, args.special, args.seed, args.tries, args.jobs)
    rep.put("special", "none" if res.special is None else res.special)
    rep.put("success", int(res.success))
    rep.put("tries_used", res.tries_used)
    if res.best is not None:
        rep.put("best_x", res.best.x)
        rep.put("best_y", res.best.y)
        rep.put("best_z", res.best.z)
    if res.success:
        rep.say(f"rainbow set of size {len(res.witness.vertices)} after {res.tries_used} samples")
        rep.put("sample", res.sample)
        rep.witness(res.witness)
        return EXIT_OK
    rep.say(f"no qualifying sample in {res.tries_used} tries (not a proof of absence)")
    return EXIT_INCONCLUSIVE


def cmd_extract(args, rep: Report) -> int:
    chi = _load(args.input)
    try:
        if args.which == "claim1":
            res = proofs.claim1_extract(chi, args.u, args.v, args.i, args.j, args.m)
        elif args.which == "claim2":
            res = proofs.claim2_extract(chi, args.u, args.v, args.l, args.r)
        else:
            res = proofs.extract_orderable_or_rainbow(chi, args.o, args.r, args.thresholds, args.seed, args.tries)
    except (ValueError, ColoringError) as exc:
        raise UsageError(str(exc)) from None
    rep.prose.extend(res.trace)
    if res.reason:
        rep.say(res.reason)
    rep.put("outcome", res.outcome)
    if res.witness is not None:
        rep.witness(res.witness)
    return {proofs.FOUND: EXIT_OK, proofs.UNMET: EXIT_FALSE}.get(res.outcome, EXIT_INCONCLUSIVE)


def cmd_count_structures(args, rep: Report) -> int:
    chi = _load(args.input)
    S = _vertices(chi, args.vertices)
    if not S:
        raise UsageError("vertex set is empty")
    special = args.special if args.special is not None else proofs.heavy_color(chi, S)
    c = proofs.count_structures(chi, S, special)
    rep.say(f"{len(S)} vertices, special color {special}")
    rep.put("special", "none" if special is None else special)
    rep.put("x", c.x)
    rep.put("y", c.y)
    rep.put("z", c.z)
    return EXIT_OK


def cmd_store(args, rep: Report) -> int:
    root = Path(args.store)
    if args.action == "add":
        if not args.input:
            raise UsageError("store add needs --in")
        chi = _load(args.input)
        q = _query(args)
        try:
            entry = store.add(root, chi, q, args.provenance, args.name)
        except ValueError as exc:
            rep.say(str(exc))
            rep.put("added", 0)
            return EXIT_FALSE
        rep.say(f"stored {entry.path}")
        rep.put("added", 1)
        rep.put("path", entry.path)
        return EXIT_OK
    found = store.entries(root) if root.is_dir() else []
    stale = [e for e in found if e.stale]
    for e in found:
        label = e.query.label() if e.query else "?"
        rep.say(f"{e.path.name} n={e.coloring.n} query={label} provenance={e.provenance}"
                + (" STALE" if e.stale else ""))
    rep.put("entries", len(found))
    if args.action == "check":
        rep.put("stale", len(stale))
        return EXIT_FALSE if stale else EXIT_OK
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="crg", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("detect", help="find or classify cliques")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--kind", choices=[k.value for k in Kind] + ["ordered-canonical"])
    d.add_argument("--size", type=int)
    d.add_argument("--vertices", type=_ints)

    c = sub.add_parser("construct", help="generate colorings")
    c.add_argument("what", choices=["mono", "rainbow", "lexical", "random", "delta-good", "product", "iterated-product"])
    c.add_argument("--n", type=int)
    c.add_argument("--colors", type=int)
    c.add_argument("--delta", type=int)
    c.add_argument("--outer")
    c.add_argument("--inner")
    c.add_argument("--base")
    c.add_argument("--times", type=int, default=1)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out")

    for name in ("search-number", "exists"):
        s = sub.add_parser(name, help="exact search")
        _add_query(s)
        if name == "search-number":
            s.add_argument("--cap", type=int, required=True)
        else:
            s.add_argument("--n", type=int, required=True)
        s.add_argument("--node-budget", type=int)
        s.add_argument("--time-budget", type=float)
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--out")

    v = sub.add_parser("verify", help="check that a coloring avoids a pattern bundle")
    v.add_argument("--in", dest="input", required=True)
    _add_query(v)

    f = sub.add_parser("find-rainbow", help="sample-and-prune rainbow finder")
    f.add_argument("--in", dest="input", required=True)
    f.add_argument("--r", type=int, required=True)
    f.add_argument("--vertices", type=_ints)
    f.add_argument("--special", type=int)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--tries", type=int, default=100)
    f.add_argument("--jobs", type=int, default=1)

    e = sub.add_parser("extract", help="run a constructive proof step")
    esub = e.add_subparsers(dest="which", required=True, parser_class=_Parser)
    e1 = esub.add_parser("claim1")
    e2 = esub.add_parser("claim2")
    e3 = esub.add_parser("orderable-or-rainbow")
    for q in (e1, e2, e3):
        q.add_argument("--in", dest="input", required=True)
    for q in (e1, e2):
        q.add_argument("--u", type=int, required=True)
        q.add_argument("--v", type=int, required=True)
    e1.add_argument("--i", type=int, required=True)
    e1.add_argument("--j", type=int, required=True)
    e1.add_argument("--m", type=int, required=True)
    e2.add_argument("--l", type=int, required=True)
    e2.add_argument("--r", type=int, required=True)
    e3.add_argument("--o", type=int, required=True)
    e3.add_argument("--r", type=int, required=True)
    e3.add_argument("--thresholds", type=_ints)
    e3.add_argument("--seed", type=int, default=0)
    e3.add_argument("--tries", type=int, default=50)

    cs = sub.add_parser("count-structures", help="count same-color edge pairs and special edges")
    cs.add_argument("--in", dest="input", required=True)
    cs.add_argument("--vertices", type=_ints)
    cs.add_argument("--special", type=int)

    st = sub.add_parser("store", help="verified witness store")
    st.add_argument("action", choices=["add", "list", "check"])
    st.add_argument("--store", required=True)
    st.add_argument("--in", dest="input")
    st.add_argument("--provenance", default="manual", choices=["search", "product", "manual"])
    st.add_argument("--name")
    _add_query(st)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    rep = Report()
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s: %(message)s", stream=err)
        handlers = {
            "detect": cmd_detect,
            "search-number": cmd_search_number,
            "exists": cmd_exists,
            "verify": cmd_verify,
            "find-rainbow": cmd_find_rainbow,
            "extract": cmd_extract,
            "count-structures": cmd_count_structures,
            "store": cmd_store,
        }
        if args.command == "construct":
            code = cmd_construct(args, rep, out)
        else:
            code = handlers[args.command](args, rep)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    rep.emit(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
