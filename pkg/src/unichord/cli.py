"""Command-line front end.

Subcommands: recognize, color, decompose, gen, oracle, verify-coloring,
bench.  All machine output is UTF-8 JSON with sorted keys unless a DOT or
text format is selected; identical command, inputs and seed produce
byte-identical output.  Exit codes: 0 success, 1 I/O or parse errors,
2 "not in class" from color.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from . import coloring as coloring_mod
from . import compose as compose_mod
from . import oracle as oracle_mod
from . import recognizer as recognizer_mod
from .errors import (BoundExceededError, GraphError, NotInClassError, ParseError,
                     PreconditionError)
from .graphs import Graph, components, emit_graph, load_graph, named_graph
from .splitters import f_k


def _detect_format(path: str, text: str) -> str:
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return "json"
    return "dimacs"


def _read_graph(path: str) -> Graph:
    text = Path(path).read_text(encoding="utf-8")
    return load_graph(text, _detect_format(path, text))


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_recognize(args) -> int:
    g = _read_graph(args.file)
    limits = oracle_mod.Limits(unichord_max_n=args.oracle_max_n)
    verdict = recognizer_mod.recognize(g, limits)
    _emit(verdict.to_json(), args.out)
    return 0


def cmd_color(args) -> int:
    g = _read_graph(args.file)
    verdict = recognizer_mod.recognize(g)
    if not verdict.long_unichord_free:
        payload = {"error": "not in class", "witness": None}
        if verdict.witness is not None:
            payload["witness"] = verdict.witness.to_json()
        _emit(payload, args.out)
        return 2
    cfg = coloring_mod.ColorConfig(checked=args.checked,
                                   exact_max_n=args.exact_max_n)
    result = coloring_mod.color(g, cfg)
    omega = result.trace.get("omega")
    payload = {
        "colors": result.palette_size,
        "omega": omega,
        "bound": f_k(3, omega),
        "assignment": {str(v): c for v, c in sorted(result.assignment.items())},
        "trace": _trace_summary(result.trace),
    }
    _emit(payload, args.out)
    return 0


def _trace_summary(trace: dict) -> dict:
    out = {"strategy": trace.get("strategy")}
    if trace.get("strategy") == "peel":
        out["level3_pieces"] = len(trace["level3"])
        out["level2_pieces"] = sum(len(t["level2"]) for t in trace["level3"])
        out["piece_sizes"] = [len(t["piece"]) for t in trace["level3"]]
    return out


def cmd_decompose(args) -> int:
    g = _read_graph(args.file)
    trees = [recognizer_mod.build_tree(g.induced(c)) for c in components(g)]
    if args.format == "dot":
        _write(_to_dot(trees), args.out)
    else:
        _emit({"components": [t.to_json() for t in trees]}, args.out)
    return 0


def _to_dot(trees) -> str:
    lines = ["digraph decomposition {", '  node [shape=box, fontname="monospace"];']
    counter = [0]

    def emit(node, parent_id):
        nid = counter[0]
        counter[0] += 1
        if node.rule == "leaf":
            label = f"leaf: {node.leaf_class}\\nn={node.graph.n} m={node.graph.m}"
        else:
            label = f"{node.rule}\\nn={node.graph.n} m={node.graph.m}"
        lines.append(f'  n{nid} [label="{label}"];')
        if parent_id is not None:
            lines.append(f"  n{parent_id} -> n{nid};")
        for ch in node.children:
            emit(ch, nid)

    for t in trees:
        emit(t.root, None)
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_gen(args) -> int:
    if args.name == "compose":
        if not args.spec:
            raise ParseError("gen compose needs a SPEC file")
        spec = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        g = _gen_from_spec(spec, args.seed)
    else:
        g = _gen_named(args.name)
    fmt = "dimacs" if args.format == "text" else "json"
    _write(emit_graph(g, fmt), args.out)
    return 0


def _gen_named(name: str) -> Graph:
    if ":" in name:
        base, _, num = name.partition(":")
        return named_graph(base, int(num))
    return named_graph(name)


def _gen_from_spec(spec: dict, seed: int) -> Graph:
    import random

    kind = spec.get("kind")
    rng = random.Random(seed)
    if kind == "corpus":
        return compose_mod.compose_instance(
            seed, spec.get("n", 100),
            ops=tuple(spec.get("ops", ["amalgam", "cutvertex", "universal"])),
            base_size=spec.get("base_size", 30),
            max_clique=spec.get("max_clique", 5))
    if kind == "chordal":
        return compose_mod.random_chordal(rng, spec.get("n", 50),
                                          spec.get("max_clique", 5))
    if kind == "sparse-bipartite":
        return compose_mod.random_sparse_bipartite(rng, spec.get("n", 50))
    raise ParseError(f"unknown spec kind {kind!r}")


def cmd_oracle(args) -> int:
    g = _read_graph(args.file)
    limits = oracle_mod.Limits(unichord_max_n=args.oracle_max_n)
    witness = oracle_mod.find_long_unichord(g, limits)
    payload = {"long_unichord_free": witness is None}
    if witness is not None:
        payload["witness"] = witness.to_json()
    _emit(payload, args.out)
    return 0


def cmd_verify_coloring(args) -> int:
    g = _read_graph(args.graph)
    obj = json.loads(Path(args.coloring).read_text(encoding="utf-8"))
    assignment = {int(v): c for v, c in obj.get("assignment", {}).items()}
    ok = oracle_mod.is_proper_coloring(g, assignment)
    used = len(set(assignment.values())) if assignment else 0
    declared = obj.get("colors")
    payload = {"valid": bool(ok), "colors_used": used}
    if declared is not None:
        payload["colors_declared"] = declared
        payload["valid"] = payload["valid"] and used <= declared
    _emit(payload, args.out)
    return 0 if payload["valid"] else 1


def cmd_bench(args) -> int:
    outdir = Path(args.out or "bench_out")
    outdir.mkdir(parents=True, exist_ok=True)
    if args.suite == "scaling":
        rows = _bench_scaling(args.seed, args.jobs)
    elif args.suite == "corpus":
        rows = _bench_corpus(args.seed, args.jobs)
    else:
        raise ParseError(f"unknown bench suite {args.suite!r}")
    csv_path = outdir / f"{args.suite}.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    png_path = outdir / f"{args.suite}.png"
    _bench_figure(rows, args.suite, png_path)
    _emit({"suite": args.suite, "rows": len(rows),
           "csv": str(csv_path), "figure": str(png_path)}, None)
    return 0


def _bench_scaling(seed: int, jobs: int) -> list[dict]:
    sizes = [125, 250, 500, 1000]
    tasks = [(n, seed + k) for n in sizes for k in range(2)]
    rows = []
    for n, s in tasks:
        g = compose_mod.compose_instance(s, n, base_size=40)
        t0 = time.perf_counter()
        verdict = recognizer_mod.recognize(g)
        dt = time.perf_counter() - t0
        rows.append({"suite": "scaling", "n": g.n, "m": g.m, "seed": s,
                     "seconds": round(dt, 4),
                     "verdict": verdict.long_unichord_free,
                     "nodes": verdict.stats.nodes, "leaves": verdict.stats.leaves})
    return rows


def _bench_corpus(seed: int, jobs: int) -> list[dict]:
    rows = []
    for k in range(10):
        n = 40 + 45 * k
        g = compose_mod.compose_instance(seed + k, n, base_size=25)
        t0 = time.perf_counter()
        result = coloring_mod.color(g)
        dt = time.perf_counter() - t0
        omega = result.trace.get("omega")
        rows.append({"suite": "corpus", "n": g.n, "m": g.m, "seed": seed + k,
                     "seconds": round(dt, 4), "colors": result.palette_size,
                     "omega": omega, "bound": f_k(3, omega)})
    return rows


def _bench_figure(rows: list[dict], suite: str, png_path: Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [r["n"] for r in rows]
    ys = [max(r["seconds"], 1e-4) for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(xs, ys, "o", label="measured")
    if suite == "scaling":
        base_x = min(xs)
        base_y = max(y for x, y in zip(xs, ys) if x == base_x)
        ref_x = sorted(set(xs))
        ax.loglog(ref_x, [base_y * (x / base_x) ** 6 for x in ref_x], "--",
                  label="n^6 reference")
    ax.set_xlabel("n")
    ax.set_ylabel("seconds")
    ax.set_title(f"{suite}: runtime vs n")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unichord",
                                     description="long-unichord-free graph toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--format", default="json", choices=["json", "dot", "text"])
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--oracle-max-n", dest="oracle_max_n", type=int, default=14)
        p.add_argument("--checked", action="store_true",
                       help="verify every splitter produced (slower)")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--exact-max-n", dest="exact_max_n", type=int, default=None,
                       help="pieces larger than this are colored greedily")

    p = sub.add_parser("recognize", help="decide long-unichord-freeness")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("color", help="color an in-class graph within f3(omega)")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("decompose", help="emit the decomposition tree")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gen", help="emit a named graph or a seeded composition")
    p.add_argument("name", help="petersen | heawood | house | cycle:N | clique:N | path:N | compose")
    p.add_argument("spec", nargs="?", help="JSON recipe for gen compose")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force verdict with witness")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify-coloring", help="re-check a coloring against a graph")
    p.add_argument("graph")
    p.add_argument("coloring")
    common(p)
    p.set_defaults(func=cmd_verify_coloring)

    p = sub.add_parser("bench", help="run a benchmark suite (CSV + figure)")
    p.add_argument("suite", choices=["scaling", "corpus"])
    common(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GraphError, FileNotFoundError, OSError,
            json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (BoundExceededError, PreconditionError, NotInClassError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
