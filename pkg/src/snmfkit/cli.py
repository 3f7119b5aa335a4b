"""Command-line experiment runner.

    snmfkit --synthetic blobs:n=300,noise=0.05 --k 3 --solver both \\
            --restarts 5 --seed 0 --out results

Ingests one input source -- a points CSV (building the similarity graph),
a prebuilt triplet adjacency (skipping the graph build), or a generated
synthetic dataset -- then runs the requested solver(s) over seeded
restarts.  Restart r draws its starting factor from seed+r and feeds the
*same* initialization to every solver, so timing and quality comparisons
are on equal footing; the report carries a checksum of each init as
proof.  Outputs are a JSON metrics report and one label CSV per
(solver, restart), all written atomically into --out.

All non-timing report fields are deterministic functions of (input,
configuration, seed); the ``timing`` and ``environment`` sections and the
per-run wall times are the only fields allowed to change between
identical invocations.
"""

import argparse
import hashlib
import json
import os
import platform
import sys
import time
from dataclasses import dataclass

import numpy as np
import scipy

from .admm import AdmmConfig, solve_admm
from .apg import ApgConfig, random_init, solve_apg
from .costmodel import flops_admm
from .evaluate import SyntheticSpec, assign_clusters, best_mapping, generate
from .exceptions import NonFiniteError, SnmfError
from .graph import build_weight_matrix, normalize_adjacency
from .ingest import ingest_adjacency, ingest_points
from .util import atomic_write_text

APG_DEFAULT_MAX_OUTER = 500
ADMM_DEFAULT_MAX_ITER = 2000


@dataclass
class RunConfig:
    """Parsed invocation: exactly one input source, plus solver knobs."""

    k: int
    points_path: str | None = None
    adjacency_path: str | None = None
    synthetic: str | None = None
    solver: str = "both"
    restarts: int = 1
    seed: int = 0
    rho_apg: float = 1.0
    rho_admm: float = 0.1
    epsilon: float = 1e-5
    max_iter: int | None = None
    labeled: bool = False
    header: bool = False
    out: str = "snmfkit-out"

    def __post_init__(self):
        sources = sum(
            source is not None
            for source in (self.points_path, self.adjacency_path, self.synthetic)
        )
        if sources != 1:
            raise ValueError("exactly one of points/adjacency/synthetic required")
        if self.solver not in ("apg", "admm", "both"):
            raise ValueError(f"unknown solver {self.solver!r}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass
class MetricsReport:
    """Assembled experiment report; ``as_dict`` preserves section order."""

    schema: int
    config: dict
    input: dict
    cost_estimate: dict
    runs: list
    aggregate: dict
    timing: dict
    environment: dict

    def as_dict(self):
        return {
            "schema": self.schema,
            "config": self.config,
            "input": self.input,
            "cost_estimate": self.cost_estimate,
            "runs": self.runs,
            "aggregate": self.aggregate,
            "timing": self.timing,
            "environment": self.environment,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2)


def strip_volatile(report):
    """Report dict minus wall-clock and host-specific fields.

    What remains must be identical across repeated identical
    invocations; the determinism tests compare exactly this.
    """
    stripped = {
        key: value
        for key, value in report.items()
        if key not in ("timing", "environment")
    }
    stripped["runs"] = [
        {key: value for key, value in run.items() if key != "wall_time_s"}
        for run in report["runs"]
    ]
    return stripped


def _parse_synthetic(text, k, seed):
    """Parse 'kind' or 'kind:n=300,noise=0.05' into a SyntheticSpec.

    The cluster count always comes from --k so the experiment has a
    single notion of K; n is the total point count and must divide by k.
    """
    kind, _, params = text.partition(":")
    n_total = None
    noise = 0.05
    if params:
        for item in params.split(","):
            key, _, value = item.partition("=")
            if not value:
                raise ValueError(f"malformed synthetic parameter {item!r}")
            if key == "n":
                n_total = int(value)
            elif key == "noise":
                noise = float(value)
            else:
                raise ValueError(f"unknown synthetic parameter {key!r}")
    if n_total is None:
        n_per = 100
    else:
        if n_total < k or n_total % k:
            raise ValueError(f"n={n_total} must be a positive multiple of k={k}")
        n_per = n_total // k
    return SyntheticSpec(kind=kind, n_per_cluster=n_per, k=k, noise=noise, seed=seed)


def _run_one(a, cfg, solver, init, seed):
    """Run a single solver from a shared init; returns (record, assignment)."""
    if solver == "apg":
        solver_cfg = ApgConfig(
            rho=cfg.rho_apg,
            epsilon=cfg.epsilon,
            max_outer=cfg.max_iter or APG_DEFAULT_MAX_OUTER,
            seed=seed,
        )
        result = solve_apg(a, cfg.k, solver_cfg, init=init)
        assignment = assign_clusters(result.z)
        record = {
            "iterations": result.outer_iterations,
            "converged": result.converged,
            "objective": result.objective,
            "split_gap": result.split_gap,
            "wall_time_s": result.wall_time_s,
        }
    else:
        solver_cfg = AdmmConfig(
            rho=cfg.rho_admm,
            epsilon=cfg.epsilon,
            max_iter=cfg.max_iter or ADMM_DEFAULT_MAX_ITER,
            seed=seed,
        )
        result = solve_admm(a, cfg.k, solver_cfg, init=init)
        assignment = assign_clusters(result.l)
        record = {
            "iterations": result.iterations,
            "converged": result.converged,
            "objective": result.objective,
            "kkt": result.kkt.as_dict(),
            "wall_time_s": result.wall_time_s,
        }
    return record, assignment


def _aggregate(records):
    """Best/mean/std summaries; "best" means lowest objective, never AC."""
    objectives = np.array([record["objective"] for record in records])
    best = int(np.argmin(objectives))
    summary = {
        "best_objective": float(objectives[best]),
        "best_restart": int(records[best]["restart"]),
        "mean_objective": float(objectives.mean()),
        "std_objective": float(objectives.std()),
    }
    if all("ac" in record for record in records):
        scores = np.array([record["ac"] for record in records])
        summary["ac_of_best"] = float(records[best]["ac"])
        summary["mean_ac"] = float(scores.mean())
        summary["perfect_rate"] = float(np.mean(scores == 100.0))
    return summary


def run_experiment(cfg):
    """Execute a full configured experiment and write its outputs.

    Returns the assembled :class:`MetricsReport`; the JSON report and the
    per-run label files land in ``cfg.out``.
    """
    timing = {}
    started = time.perf_counter()
    data = None
    graph_info = None
    if cfg.points_path is not None:
        data = ingest_points(cfg.points_path, labeled=cfg.labeled, header=cfg.header)
        source = {"source": "points", "path": str(cfg.points_path)}
    elif cfg.synthetic is not None:
        spec = _parse_synthetic(cfg.synthetic, cfg.k, cfg.seed)
        data = generate(spec)
        source = {
            "source": "synthetic",
            "kind": spec.kind,
            "n_per_cluster": spec.n_per_cluster,
            "noise": spec.noise,
        }
    else:
        a = ingest_adjacency(cfg.adjacency_path)
        source = {"source": "adjacency", "path": str(cfg.adjacency_path)}
    timing["ingest_s"] = time.perf_counter() - started
    if data is not None:
        graph_started = time.perf_counter()
        weights = build_weight_matrix(data)
        a = normalize_adjacency(weights).matrix
        timing["graph_s"] = time.perf_counter() - graph_started
        graph_info = {"q": weights.q, "p": weights.p, "nnz": a.nnz}
    gold = data.labels if data is not None else None
    source["n"] = a.n
    if graph_info is not None:
        source["graph"] = graph_info

    solvers = ["apg", "admm"] if cfg.solver == "both" else [cfg.solver]
    os.makedirs(cfg.out, exist_ok=True)
    runs = []
    for restart in range(cfg.restarts):
        seed = cfg.seed + restart
        init = random_init(a, cfg.k, seed)
        checksum = hashlib.sha256(init.tobytes()).hexdigest()
        for solver in solvers:
            record = {
                "solver": solver,
                "restart": restart,
                "seed": seed,
                "init_checksum": checksum,
            }
            solver_record, assignment = _run_one(a, cfg, solver, init, seed)
            record.update(solver_record)
            if gold is not None:
                record["ac"] = best_mapping(assignment, gold).ac
            assignment.to_csv(
                os.path.join(cfg.out, f"labels_{solver}_r{restart}.csv")
            )
            runs.append(record)

    report = MetricsReport(
        schema=1,
        config={
            "k": cfg.k,
            "solver": cfg.solver,
            "restarts": cfg.restarts,
            "seed": cfg.seed,
            "rho_apg": cfg.rho_apg,
            "rho_admm": cfg.rho_admm,
            "epsilon": cfg.epsilon,
            "max_iter": cfg.max_iter,
        },
        input=source,
        cost_estimate=flops_admm(a.n, cfg.k).as_dict(),
        runs=runs,
        aggregate={
            solver: _aggregate([r for r in runs if r["solver"] == solver])
            for solver in solvers
        },
        timing=timing,
        environment={
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "platform": platform.platform(),
        },
    )
    atomic_write_text(os.path.join(cfg.out, "report.json"), report.to_json() + "\n")
    return report


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="snmfkit",
        description=(
            "Cluster a similarity graph by symmetric nonnegative matrix "
            "factorization."
        ),
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--input", metavar="CSV",
        help="points file, one comma-separated point per row",
    )
    source.add_argument(
        "--adjacency", metavar="TXT",
        help="prebuilt adjacency: 'n nnz' header then 'i j value' triplets",
    )
    source.add_argument(
        "--synthetic", metavar="KIND[:PARAMS]",
        help="generated dataset: blobs|rings|moons, e.g. blobs:n=300,noise=0.05",
    )
    parser.add_argument("--k", type=int, required=True, help="number of clusters")
    parser.add_argument("--solver", choices=["apg", "admm", "both"], default="both")
    parser.add_argument(
        "--restarts", type=int, default=1,
        help="independent seeded restarts (default 1)",
    )
    parser.add_argument(
        "--seed", type=int, default=0,
        help="base seed; restart r uses seed+r",
    )
    parser.add_argument(
        "--rho-apg", type=float, default=1.0,
        help="penalty weight for the gradient solver (default 1.0)",
    )
    parser.add_argument(
        "--rho-admm", type=float, default=0.1,
        help="penalty/dual step for the splitting solver (default 0.1)",
    )
    parser.add_argument(
        "--epsilon", type=float, default=1e-5,
        help="relative-change stopping threshold (default 1e-5)",
    )
    parser.add_argument(
        "--max-iter", type=int, default=None,
        help=(
            "iteration cap override for both solvers "
            f"(defaults: {APG_DEFAULT_MAX_OUTER} outer rounds / "
            f"{ADMM_DEFAULT_MAX_ITER} sweeps)"
        ),
    )
    parser.add_argument(
        "--labeled", action="store_true",
        help="points file carries integer gold labels in its last column",
    )
    parser.add_argument(
        "--header", action="store_true",
        help="skip the first line of the points file",
    )
    parser.add_argument(
        "--out", default="snmfkit-out",
        help="output directory (default snmfkit-out)",
    )
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            k=args.k,
            points_path=args.input,
            adjacency_path=args.adjacency,
            synthetic=args.synthetic,
            solver=args.solver,
            restarts=args.restarts,
            seed=args.seed,
            rho_apg=args.rho_apg,
            rho_admm=args.rho_admm,
            epsilon=args.epsilon,
            max_iter=args.max_iter,
            labeled=args.labeled,
            header=args.header,
            out=args.out,
        )
        report = run_experiment(cfg)
    except NonFiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SnmfError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for solver, summary in report.aggregate.items():
        line = f"{solver}: best objective {summary['best_objective']:.6g}"
        if "mean_ac" in summary:
            line += f", mean accuracy {summary['mean_ac']:.2f}"
        print(line)
    print(f"report written to {os.path.join(cfg.out, 'report.json')}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
