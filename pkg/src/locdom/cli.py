"""Command-line front end.

Subcommands: solve, verify, kernelize, lift, generate, stats, audit. Exit
codes are a stable contract: 0 for success/YES, 1 for a verified NO or a
failed verification, 2 for usage, parse, or I/O errors. File formats are
the ones defined by the library modules (edge lists, solution and
modulator files, JSON traces/layouts/reports). ``stats`` emits
tab-separated metrics and, when given an output directory, renders the
histograms to PNG files next to a copy of the table.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path
from typing import Optional, Sequence

from .errors import LocdomError
from .graph import (
    Graph,
    connected_components,
    induced_subgraph,
    is_connected,
    parse_graph,
    serialize_graph,
    twin_classes,
)
from .lds import (
    Instance,
    is_locating_dominating,
    read_solution,
    solve_exact,
    write_solution,
)
from .modulators import (
    CLIQUE,
    CLUSTER,
    clique_modulator_2approx,
    cluster_modulator_3approx,
    read_modulator,
)
from .cluster_kernel import kernelize_clique, kernelize_cluster, lift_cluster_solution
from .maxleaf_kernel import host_decomposition, kernelize_maxleaf, lift_maxleaf_solution
from .layout import layout_from_json
from .reductions import (
    CliqueInstance,
    audit_observations,
    build_clique_reduction,
    build_or_composition_clique,
    build_or_composition_vc,
    parse_hypergraph,
)
from .trace import trace_from_json, trace_to_json

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _read_graph(path: str) -> Graph:
    return parse_graph(_read_text(path))


def _read_vertex_set(path: str) -> list[int]:
    values: list[int] = []
    count = None
    for raw in _read_text(path).splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if count is None:
            count = int(line)
        else:
            values.append(int(line))
    if count is None or len(values) != count:
        raise LocdomError(f"malformed vertex-set file {path}")
    return values


def _cmd_solve(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    code = solve_exact(g, limit=args.budget)
    if code is None:
        print(f"NO: no locating-dominating set of size <= {args.budget}")
        return EXIT_NO
    print(f"optimum {len(code)}")
    text = write_solution(code)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    code = read_solution(_read_text(args.solution))
    ok, witness = is_locating_dominating(g, code)
    if ok:
        print(f"valid locating-dominating set of size {len(code)}")
        return EXIT_OK
    print(f"invalid: {witness.kind} {witness.vertices}")
    return EXIT_NO


def _cmd_kernelize(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    inst = Instance(g, args.budget)
    if args.param == "cluster":
        mod = (
            read_modulator(_read_text(args.modulator), CLUSTER, g)
            if args.modulator
            else None
        )
        out, trace, report = kernelize_cluster(inst, mod)
    elif args.param == "clique":
        mod = (
            read_modulator(_read_text(args.modulator), CLIQUE, g)
            if args.modulator
            else None
        )
        out, trace, report = kernelize_clique(inst, mod)
    else:
        host = _read_vertex_set(args.host) if args.host else None
        out, trace, report = kernelize_maxleaf(inst, host, args.max_leaf)
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{prefix}.kernel.gr").write_text(serialize_graph(out.graph), encoding="utf-8")
    Path(f"{prefix}.trace.json").write_text(trace_to_json(trace), encoding="utf-8")
    Path(f"{prefix}.report.json").write_text(report.to_json(), encoding="utf-8")
    for line in report.summary_lines():
        print(line)
    print(f"kernel budget {out.budget}")
    return EXIT_OK


def _cmd_lift(args: argparse.Namespace) -> int:
    trace = trace_from_json(_read_text(args.trace))
    code = read_solution(_read_text(args.solution))
    kernel_n = len(trace.kernel_labels)
    if trace.no_instance or any(not 0 <= v < kernel_n for v in code):
        print("error: solution file does not match the trace's kernel", file=sys.stderr)
        return EXIT_USAGE
    try:
        if trace.kind == "maxleaf":
            lifted = lift_maxleaf_solution(trace, code)
        else:
            lifted = lift_cluster_solution(trace, code)
    except LocdomError as exc:
        print(f"lift failed: {exc}", file=sys.stderr)
        return EXIT_NO
    text = write_solution(lifted)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"lifted solution size {len(lifted)}", file=sys.stderr)
    return EXIT_OK


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.construction == "clique-reduction":
        h = _read_graph(args.inputs[0])
        graph, budget, layout = build_clique_reduction(CliqueInstance(h, args.k))
    else:
        instances = [parse_hypergraph(_read_text(p)) for p in args.inputs]
        if args.variant == "vc":
            graph, budget, layout = build_or_composition_vc(instances)
        else:
            graph, budget, layout = build_or_composition_clique(instances)
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{prefix}.gr").write_text(serialize_graph(graph), encoding="utf-8")
    Path(f"{prefix}.layout.json").write_text(layout.to_json(), encoding="utf-8")
    print(f"generated {graph.n} vertices, {graph.edge_count()} edges, budget {budget}")
    return EXIT_OK


def _path_census(g: Graph) -> list[int]:
    lengths: list[int] = []
    for comp in connected_components(g):
        if len(comp) < 2:
            continue
        sub, _ = induced_subgraph(g, comp)
        lengths.extend(len(p) for p in host_decomposition(sub).paths)
    return sorted(lengths)


def _stats_rows(g: Graph) -> list[tuple[str, str]]:
    rows = [
        ("vertices", str(g.n)),
        ("edges", str(g.edge_count())),
        ("components", str(len(connected_components(g)))),
    ]
    histogram = Counter()
    for cls in twin_classes(g).classes:
        histogram[(len(cls), cls.kind or "-")] += 1
    for (size, kind), count in sorted(histogram.items()):
        rows.append((f"twin-classes[size={size},kind={kind}]", str(count)))
    rows.append(("cluster-modulator-size", str(len(cluster_modulator_3approx(g)))))
    rows.append(("clique-modulator-size", str(len(clique_modulator_2approx(g)))))
    census = _path_census(g)
    rows.append(("subdivision-paths", str(len(census))))
    for length, count in sorted(Counter(census).items()):
        rows.append((f"paths[length={length}]", str(count)))
    return rows


def _render_figures(g: Graph, out_dir: Path) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written: list[Path] = []

    def bar_chart(counter: Counter, title: str, xlabel: str, name: str) -> None:
        fig, ax = plt.subplots(figsize=(5, 3.2))
        keys = sorted(counter)
        ax.bar([str(k) for k in keys], [counter[k] for k in keys], color="#4878a8")
        ax.set_title(title)
        ax.set_xlabel(xlabel)
        ax.set_ylabel("count")
        fig.tight_layout()
        target = out_dir / name
        fig.savefig(target, dpi=150)
        plt.close(fig)
        written.append(target)

    bar_chart(
        Counter(g.degree(v) for v in range(g.n)),
        "Degree distribution",
        "degree",
        "degree_histogram.png",
    )
    bar_chart(
        Counter(len(c) for c in twin_classes(g).classes),
        "Twin class sizes",
        "class size",
        "twin_class_sizes.png",
    )
    bar_chart(
        Counter(_path_census(g)),
        "Subdivision path lengths",
        "path length",
        "path_lengths.png",
    )
    return written


def _cmd_stats(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    rows = _stats_rows(g)
    table = "\n".join(f"{key}\t{value}" for key, value in rows) + "\n"
    sys.stdout.write(table)
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "stats.tsv").write_text(table, encoding="utf-8")
        for path in _render_figures(g, out_dir):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def _cmd_audit(args: argparse.Namespace) -> int:
    layout = layout_from_json(_read_text(args.layout))
    code = read_solution(_read_text(args.solution))
    report = audit_observations(layout, code)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_NO


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locdom",
        description="Locating-dominating sets: solve, kernelize, lift, generate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact minimum locating-dominating set")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a solution file against a graph")
    p.add_argument("graph")
    p.add_argument("solution")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("kernelize", help="run a kernelization and write kernel+trace")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--param", choices=["cluster", "clique", "maxleaf"], required=True)
    p.add_argument("--modulator", default=None, help="vertex-set file overriding the approximation")
    p.add_argument("--host", default=None, help="host vertex-set file (maxleaf only)")
    p.add_argument("--max-leaf", type=int, default=None, help="known max leaf number for the size report")
    p.add_argument("--out", required=True, help="output prefix")
    p.set_defaults(func=_cmd_kernelize)

    p = sub.add_parser("lift", help="lift a kernel solution through a trace")
    p.add_argument("trace")
    p.add_argument("solution")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("generate", help="generate hardness-construction instances")
    p.add_argument("construction", choices=["clique-reduction", "or-composition"])
    p.add_argument("inputs", nargs="+", help="source graph / hypergraph files")
    p.add_argument("-k", type=int, default=2, help="clique size (clique-reduction)")
    p.add_argument("--variant", choices=["vc", "clique"], default="vc")
    p.add_argument("--out", required=True, help="output prefix")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("stats", help="structural statistics, optionally with figures")
    p.add_argument("graph")
    p.add_argument("--out-dir", default=None, help="write stats.tsv and PNG histograms here")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("audit", help="run the gadget lower-bound audit on a solution")
    p.add_argument("layout")
    p.add_argument("solution")
    p.set_defaults(func=_cmd_audit)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (LocdomError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
