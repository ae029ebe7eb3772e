"""Command-line front end: dataset generation, single runs, probes, and
the classification report.

Exit status: 0 success, 1 usage or input error, 2 theorem-inconsistency
abort (a certified clustering acquired a removal witness).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import generators
from .dataset import (
    DatasetError,
    load_dataset,
    save_dataset,
    to_json_dict,
    write_atomic,
)
from .dendrogram import Dendrogram
from .objectives import PARTITIONAL_OBJECTIVES, ObjectiveSpec, cost
from .partitions import Clustering, EnumerationCapError
from .probe import (
    HIERARCHICAL_IDS,
    AlgorithmHandle,
    CategoryReport,
    TheoremInconsistencyError,
    classify,
    responsiveness_probe,
    run_algorithm,
)
from .structure import structure_report

USAGE_ERROR = 1
INCONSISTENCY_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# --- generate ---------------------------------------------------------------

def cmd_generate(args) -> int:
    name = args.generator
    if name == "perfect-uniform":
        ds, planted = generators.perfect_uniform(
            args.n, args.k, seed=args.seed, lam=args.lam,
            cross_jitter=args.cross_jitter, defect_pairs=args.defect_pairs,
        )
    elif name == "nice-blocks":
        ds, planted = generators.nice_blocks(args.n, args.k, seed=args.seed, gap=args.gap)
    elif name == "random-points":
        ds, planted = generators.random_points(args.n, seed=args.seed), None
    elif name == "random-similarity":
        ds, planted = generators.random_similarity(args.n, seed=args.seed), None
    else:  # line
        if not args.positions:
            raise DatasetError("line generator needs --positions")
        pos = [float(t) for t in args.positions.split(",")]
        ds, planted = generators.line(pos), None
    if args.out:
        save_dataset(args.out, ds, planted)
    else:
        sys.stdout.write(_dumps(to_json_dict(ds, planted)))
    return 0


# --- run --------------------------------------------------------------------

def _parse_handle(algorithm: str, k: int | None) -> AlgorithmHandle:
    if algorithm.startswith("divisive"):
        inner = "kmeans"
        if "(" in algorithm:
            inner = algorithm[algorithm.index("(") + 1:].rstrip(")")
        return AlgorithmHandle("divisive", p=inner)
    if algorithm in HIERARCHICAL_IDS:
        return AlgorithmHandle(algorithm)
    if algorithm in PARTITIONAL_OBJECTIVES:
        if k is None:
            raise DatasetError(f"{algorithm} needs --k")
        return AlgorithmHandle(algorithm, k)
    raise DatasetError(f"unknown algorithm {algorithm!r}")


def cmd_run(args) -> int:
    ds, _planted = load_dataset(args.dataset)
    handle = _parse_handle(args.algorithm, args.k)
    result = run_algorithm(handle, ds)
    doc: dict = {"algorithm": handle.label, "dataset": args.dataset}
    if isinstance(result, Dendrogram):
        doc["dendrogram"] = result.to_newick()
        doc["levels"] = {
            str(k): list(result.level_clustering(k).assignment)
            for k in range(2, ds.n)
        }
        c2 = result.level_clustering(2)
        doc["structure"] = structure_report(c2, ds).to_dict()
    else:
        doc["clustering"] = list(result.assignment)
        doc["cost"] = cost(result, ds, ObjectiveSpec(handle.id, handle.k))
        doc["structure"] = structure_report(result, ds).to_dict()
    text = _dumps(doc) if args.format == "records" else _render_run(doc)
    _emit(text, args.out)
    return 0


def _render_run(doc: dict) -> str:
    lines = [f"algorithm: {doc['algorithm']}"]
    if "clustering" in doc:
        lines.append(f"clustering: {doc['clustering']}")
        lines.append(f"cost: {doc['cost']:.12g}")
    else:
        lines.append(f"dendrogram: {doc['dendrogram']}")
    lines.append(f"structure: {doc['structure']}")
    return "\n".join(lines) + "\n"


# --- probe ------------------------------------------------------------------

def cmd_probe(args) -> int:
    ds, planted = load_dataset(args.dataset)
    handle = _parse_handle(args.algorithm, args.k)
    if args.clustering:
        c = Clustering(tuple(int(t) for t in args.clustering.split(",")))
    elif planted is not None:
        c = planted
    else:
        result = run_algorithm(handle, ds)
        c = result.level_clustering(2) if isinstance(result, Dendrogram) else result
    verdict = responsiveness_probe(
        handle, ds, c, budget=args.budget, seed=args.seed
    )
    doc = {"algorithm": handle.label, "verdict": verdict.to_dict()}
    _emit(_dumps(doc), args.out)
    return 0


# --- classify ---------------------------------------------------------------

DEFAULT_CONFIG = {
    "seed": 0,
    "budget": 400,
    "samples": 12,
    "generators": [
        {"name": "perfect-uniform", "n": 6, "k": 2, "seed": 1},
        {"name": "perfect-uniform", "n": 6, "k": 2, "seed": 2, "cross_jitter": 0.05},
        {"name": "random-similarity", "n": 6, "seed": 3},
        {"name": "nice-blocks", "n": 6, "k": 2, "seed": 4},
        {"name": "random-points", "n": 6, "seed": 5},
        {"name": "random-points", "n": 7, "seed": 6},
        {"name": "line", "positions": [0.0, 1.0, 10.0, 11.0]},
    ],
    "algorithms": [
        {"id": "kmeans", "k": 2},
        {"id": "kmedian", "k": 2},
        {"id": "kmedoids", "k": 2},
        {"id": "minsum", "k": 2},
        {"id": "mindiameter", "k": 2},
        {"id": "kcenter", "k": 2},
        {"id": "ratiocut", "k": 2},
        {"id": "single"},
        {"id": "complete"},
        {"id": "average"},
        {"id": "ward"},
        {"id": "divisive", "p": "kmeans"},
    ],
}


def _build_datasets(specs: list[dict]):
    out = []
    for spec in specs:
        spec = dict(spec)
        name = spec.pop("name")
        if name == "perfect-uniform":
            ds, _ = generators.perfect_uniform(**spec)
        elif name == "nice-blocks":
            ds, _ = generators.nice_blocks(**spec)
        elif name == "random-points":
            ds = generators.random_points(**spec)
        elif name == "random-similarity":
            ds = generators.random_similarity(**spec)
        elif name == "line":
            ds = generators.line(spec["positions"])
        else:
            raise DatasetError(f"unknown generator {name!r}")
        out.append(ds)
    return out


def _compatible(handle: AlgorithmHandle, ds) -> bool:
    if ds.kind != handle.required_kind:
        return False
    if handle.id == "ward" and ds.coords is None:
        return False
    if not handle.hierarchical and not handle.k < ds.n:
        return False
    return True


def run_classification(config: dict) -> list[CategoryReport]:
    datasets = _build_datasets(config["generators"])
    seed = config.get("seed", 0)
    budget = config.get("budget", 400)
    samples = config.get("samples", 12)
    reports = []
    for aspec in config["algorithms"]:
        handle = AlgorithmHandle(
            aspec["id"], aspec.get("k"), aspec.get("p", "kmeans")
        )
        family = [ds for ds in datasets if _compatible(handle, ds)]
        reports.append(
            classify(handle, family, budget=budget, seed=seed, samples=samples)
        )
    return reports


def _render_table(reports: list[CategoryReport]) -> str:
    rows = [("algorithm", "category", "responsive", "robust", "inconclusive")]
    for r in reports:
        c = r.counts()
        rows.append((
            r.algorithm.label, r.category,
            str(c["responsive"]), str(c["robustOnClustering"]), str(c["inconclusive"]),
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in rows]
    lines.insert(1, "-" * len(lines[0]))
    lines.append("")
    lines.append("Empirical evidence over the configured dataset family; the "
                 "categories quantify over all datasets and are not proven here.")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    else:
        config = DEFAULT_CONFIG
    if args.seed is not None:
        config = {**config, "seed": args.seed}
    if args.budget is not None:
        config = {**config, "budget": args.budget}
    reports = run_classification(config)
    if args.format == "records":
        text = _dumps({"reports": [r.to_dict() for r in reports]})
    else:
        text = _render_table(reports)
    _emit(text, args.out)
    return 0


# --- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clusterlab",
                     description="Weighted-clustering laboratory")
    parser.add_argument("--max-n", type=int, default=None,
                        help="override the enumeration cap")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a dataset file")
    g.add_argument("--generator", required=True,
                   choices=["perfect-uniform", "nice-blocks", "random-points",
                            "random-similarity", "line"])
    g.add_argument("--n", type=int, default=6)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--lam", type=float, default=1.0)
    g.add_argument("--cross-jitter", type=float, default=0.0)
    g.add_argument("--defect-pairs", type=int, default=0)
    g.add_argument("--gap", type=float, default=5.0)
    g.add_argument("--positions", default=None,
                   help="comma-separated coordinates for the line generator")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("run", help="run one algorithm on a dataset file")
    r.add_argument("--algorithm", required=True)
    r.add_argument("--dataset", required=True)
    r.add_argument("--k", type=int, default=None)
    r.add_argument("--out", default=None)
    r.add_argument("--format", choices=["table", "records"], default="table")
    r.set_defaults(func=cmd_run)

    p = sub.add_parser("probe", help="probe weight-responsiveness of one clustering")
    p.add_argument("--algorithm", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--clustering", default=None,
                   help="comma-separated labels; defaults to the planted or "
                        "unit-weight output clustering")
    p.add_argument("--budget", type=int, default=400)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_probe)

    c = sub.add_parser("classify", help="classification report over a config")
    c.add_argument("--config", default=None)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--budget", type=int, default=None)
    c.add_argument("--out", default=None)
    c.add_argument("--format", choices=["table", "records"], default="table")
    c.set_defaults(func=cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_n is not None:
        os.environ["CLUSTERLAB_MAX_N"] = str(args.max_n)
    try:
        return args.func(args)
    except TheoremInconsistencyError as exc:
        print(f"theorem inconsistency: {exc}", file=sys.stderr)
        return INCONSISTENCY_ERROR
    except (DatasetError, EnumerationCapError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
