"""Command line replay harness: run streams, generate workloads, summarize metrics."""

from __future__ import annotations

import argparse
import sys
from collections.abc import Iterable
from fractions import Fraction
from pathlib import Path

from . import oracles
from .audit import LEVELS, Auditor, Overlays
from .density import DensityMonitor
from .engines import ENGINES, CapacityError, DuplicateEdgeError, MissingEdgeError, make_engine
from .params import MODES, ParameterError, derive_parameters
from .report import (
    MetricsRow,
    metrics_csv,
    read_metrics_csv,
    render_figures,
    summarize,
    summary_json,
)
from .workload import KINDS, generate_workload

EXIT_OK, EXIT_USAGE, EXIT_AUDIT = 0, 1, 2


class StreamError(ValueError):
    """A stream line that cannot be parsed or applied."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_line(text: str, line: int, n: int) -> tuple[str, tuple] | None:
    """Return (op, args) for one stream line, or None for blanks and comments."""
    tokens = text.split()
    if not tokens or tokens[0].startswith("#"):
        return None

    def vertex(tok: str) -> int:
        if not tok.isdecimal() or not tok.isascii():
            raise StreamError(line, f"bad vertex id {tok!r}")
        v = int(tok)
        if v >= n:
            raise StreamError(line, f"vertex {v} outside [0, {n})")
        return v

    op = tokens[0]
    if op in ("+", "-"):
        if len(tokens) != 3:
            raise StreamError(line, f"'{op}' takes two vertex ids")
        u, v = vertex(tokens[1]), vertex(tokens[2])
        if u == v:
            raise StreamError(line, f"self-loop at {u}")
        return op, (u, v)
    if op == "?":
        if len(tokens) < 2:
            raise StreamError(line, "'?' needs a query verb")
        verb, rest = tokens[1], tokens[2:]
        if verb in ("density", "subgraph", "match"):
            if rest:
                raise StreamError(line, f"'? {verb}' takes no arguments")
            return verb, ()
        if verb in ("color", "matvec"):
            if len(rest) != 1:
                raise StreamError(line, f"'? {verb}' takes one vertex id")
            return verb, (vertex(rest[0]),)
        raise StreamError(line, f"unknown query {verb!r}")
    raise StreamError(line, f"unknown operation {op!r}")


class Session:
    """One engine with its density monitor, overlays and auditor."""

    def __init__(self, engine_name: str, params, audit: str = "off"):
        self.params = params
        self.engine = make_engine(engine_name, params)
        self.monitor = DensityMonitor(self.engine)
        self.overlays = None
        if params.theta == 1 and params.b == 1:
            self.overlays = Overlays(self.engine)
            # Stream edges carry no weights: A is the 0/1 adjacency matrix
            # and x_j = j + 1.
            for j in range(params.n_capacity):
                self.overlays.matvec.set_x(j, j + 1)
        self.auditor = Auditor(self.engine, audit, self.overlays, self.monitor)
        self.rows: list[MetricsRow] = []
        self.queries = 0

    def update(self, op: str, u: int, v: int) -> list[str]:
        engine = self.engine
        trace = engine.insert_edge(u, v) if op == "+" else engine.delete_edge(u, v)
        self.rows.append(MetricsRow(
            len(self.rows) + 1, op, trace.chain_length, trace.arcs_touched,
            trace.bucket_moves, self.monitor.index.max_degree,
            self.monitor.density_estimate(), trace.recourse,
        ))
        return self.auditor.after_update(trace)

    def query(self, verb: str, args: tuple) -> str:
        self.queries += 1
        if verb == "density":
            return str(self.monitor.density_estimate())
        if verb == "subgraph":
            found = self.monitor.extract_dense_subgraph()
            members = sorted(found.vertices)
            got = oracles.induced_density(self.engine.edges, members)
            return f"{got}\t{','.join(map(str, members))}"
        if self.overlays is None:
            raise LookupError(f"'? {verb}' needs the additive_log mode (theta=1, b=1)")
        if verb == "match":
            return str(self.overlays.matching.size())
        if verb == "color":
            return str(self.overlays.coloring.color_of(args[0]))
        return str(self.overlays.matvec.query(args[0]))


def replay(session: Session, lines: Iterable[str], out=None) -> tuple[int, str]:
    """Feed stream lines to a session; return (exit code, message)."""
    out = out or sys.stdout
    n = session.params.n_capacity
    for number, text in enumerate(lines, 1):
        try:
            parsed = parse_line(text, number, n)
            if parsed is None:
                continue
            op, args = parsed
            if op in ("+", "-"):
                problems = session.update(op, *args)
                if problems:
                    return EXIT_AUDIT, f"line {number}: audit violation: {problems[0]}"
            else:
                out.write(f"{number}\t{op}\t{session.query(op, args)}\n")
        except StreamError as exc:
            return EXIT_USAGE, str(exc)
        except (DuplicateEdgeError, MissingEdgeError, CapacityError, LookupError) as exc:
            msg = exc.args[0] if exc.args else str(exc)
            return EXIT_USAGE, f"line {number}: {msg}"
    return EXIT_OK, ""


def _params_json(p) -> dict:
    return {
        "theta": p.theta, "eta": str(p.eta), "b": p.b, "lambda": str(p.lam),
        "gamma": str(p.gamma), "epsilon": None if p.epsilon is None else str(p.epsilon),
        "n_capacity": p.n_capacity,
    }


def _cmd_run(args) -> int:
    try:
        params = derive_parameters(args.mode, args.capacity, epsilon=args.epsilon)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.workload:
        text = generate_workload(args.workload, args.seed, args.size, n=args.capacity)
        lines = text.splitlines()
    elif args.stream == "-":
        lines = sys.stdin.read().splitlines()
    elif args.stream:
        try:
            lines = Path(args.stream).read_text().splitlines()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        print("error: give a stream file, '-', or --workload", file=sys.stderr)
        return EXIT_USAGE

    session = Session(args.engine, params, args.audit)
    code, message = replay(session, lines)
    status = {EXIT_OK: "ok", EXIT_USAGE: "stream_error", EXIT_AUDIT: "audit_violation"}[code]
    engine = session.engine
    summary = summarize(
        session.rows,
        engine=args.engine, mode=args.mode, seed=args.seed, status=status,
        parameters=_params_json(params), queries=session.queries,
        total_flips=engine.total_flips, final_edges=len(engine.edges),
        audit=session.auditor.summary(),
    )
    if message:
        summary["error"] = message
    if args.metrics:
        Path(args.metrics).write_text(metrics_csv(session.rows))
    if args.summary:
        Path(args.summary).write_text(summary_json(summary))
    if args.figures:
        render_figures(session.rows, args.figures)
    if message:
        print(message, file=sys.stderr)
    return code


def _cmd_generate(args) -> int:
    text = generate_workload(args.kind, args.seed, args.size, n=args.capacity, m=args.edges,
                             query_every=args.query_every)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_report(args) -> int:
    try:
        rows = read_metrics_csv(Path(args.metrics).read_text())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = summary_json(summarize(rows))
    if args.summary:
        Path(args.summary).write_text(text)
    else:
        sys.stdout.write(text)
    if args.figures:
        render_figures(rows, args.figures)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynorient", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replay an update stream through an engine")
    run.add_argument("stream", nargs="?", help="stream file, or '-' for stdin")
    run.add_argument("--engine", choices=sorted(ENGINES), default="basic")
    run.add_argument("--mode", choices=MODES, default="additive_log")
    run.add_argument("--epsilon", type=Fraction, default=None,
                     help="accuracy for eps_density, e.g. 1/2 or 0.5")
    run.add_argument("--capacity", type=int, default=64, help="vertex ids lie in [0, capacity)")
    run.add_argument("--audit", choices=LEVELS, default="off")
    run.add_argument("--metrics", metavar="OUT.csv")
    run.add_argument("--summary", metavar="OUT.json")
    run.add_argument("--seed", type=int, default=0, help="seed for --workload")
    run.add_argument("--workload", choices=KINDS, help="generate the stream instead of reading one")
    run.add_argument("--size", type=int, default=1000, help="updates for --workload")
    run.add_argument("--figures", metavar="DIR", help="also write PNG plots of the metrics")
    run.set_defaults(func=_cmd_run)

    gen = sub.add_parser("generate", help="write a deterministic workload stream")
    gen.add_argument("kind", choices=KINDS)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--size", type=int, default=1000)
    gen.add_argument("--capacity", type=int, default=16)
    gen.add_argument("--edges", type=int, default=None,
                     help="edge target (random_gnm), clique size (clique_flood), "
                          "background edges (adversarial_hub)")
    gen.add_argument("--query-every", type=int, default=0)
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=_cmd_generate)

    rep = sub.add_parser("report", help="summarize a metrics CSV")
    rep.add_argument("metrics")
    rep.add_argument("--summary", metavar="OUT.json")
    rep.add_argument("--figures", metavar="DIR")
    rep.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for audit violations.
        return EXIT_USAGE if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
