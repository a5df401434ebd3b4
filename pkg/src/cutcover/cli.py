"""File formats, the batch pipeline, and the command-line surface.

Instance files are JSON objects with rationals written as "p/q" strings
(plain integers accepted), so values survive serialization exactly:

    {"n": 4, "edges": [[0, 1, "1"], ...], "lambda": "3", "links": [[0, 2, "5/2"], ...]}

Reports are JSON lines (one object per instance, then a summary object);
`bench` additionally emits an aggregate CSV. All report values are strings
or integers, so reruns with one seed are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .certify import audit_run
from .errors import CutCoverError
from .exact import exact_optimum, ratio
from .family import SetFamily, residual
from .gen import RunConfig, gen_instance
from .graph import CapGraph, Instance, enumerate_small_cuts
from .pd import dual_feasible, solve

_CSV_COLUMNS = (
    "index", "n", "num_links", "family_size", "phases",
    "alg_cost", "dual_total", "opt_cost", "ratio", "max_density_quotient",
)


def _rat_str(value) -> str:
    return str(Fraction(value))


def instance_to_obj(inst: Instance) -> dict:
    return {
        "n": inst.graph.n,
        "edges": [[u, v, _rat_str(c)] for u, v, c in inst.graph.edges],
        "lambda": _rat_str(inst.threshold),
        "links": [[l.a, l.b, _rat_str(l.cost)] for l in inst.links],
    }


def instance_from_obj(obj: dict) -> Instance:
    graph = CapGraph(int(obj["n"]), tuple((int(u), int(v), Fraction(str(c))) for u, v, c in obj["edges"]))
    links = [(int(a), int(b), Fraction(str(c))) for a, b, c in obj["links"]]
    return Instance.build(graph, Fraction(str(obj["lambda"])), links)


def dump_instance(inst: Instance) -> str:
    return json.dumps(instance_to_obj(inst), separators=(",", ":"))


def load_instance(text: str) -> Instance:
    return instance_from_obj(json.loads(text))


def _solution_obj(result) -> dict:
    return {
        "solution": list(result.solution),
        "cost": _rat_str(result.cost),
        "dual_total": _rat_str(result.dual.total),
        "addition_order": list(result.addition_order),
        "trace": [
            {
                "phase": pt.phase,
                "epsilon": _rat_str(pt.epsilon),
                "num_cores": len(pt.cores_snapshot),
                "tight": list(pt.tight_link_ids),
                "residual_size": pt.residual_size,
            }
            for pt in result.trace
        ],
    }


def _audit_obj(report) -> dict:
    return {
        "phase": report.phase,
        "num_cores": report.num_cores,
        "lhat": report.lhat_size,
        "lstar": report.lstar_size,
        "crossing_pairs": report.crossing_pairs,
        "witness_valid": report.witness_valid,
        "sparse_crossing": report.sparse_crossing_ok,
        "density_bound": report.density_bound_ok,
        "red_cover": report.red_cover_ok,
        "empty_remainder": report.empty_remainder_ok,
        "disjoint_child": report.disjoint_child_ok,
        "pass": report.passed,
    }


def _single_drop_minimal(family: SetFamily, solution, links) -> bool:
    """Independent minimality audit: dropping any one link uncovers a set."""
    for lid in solution:
        rest = [links[i] for i in solution if i != lid]
        if len(residual(family, rest)) == 0:
            return False
    return True


def pipeline_record(cfg: RunConfig, index: int) -> dict:
    """Generate, solve, audit and (when within limits) exactly solve one
    instance; returns a JSON-ready record."""
    inst = gen_instance(cfg, index)
    family = enumerate_small_cuts(inst.graph, inst.threshold, cfg.enum_limit)
    record = {
        "index": index,
        "n": inst.graph.n,
        "num_edges": len(inst.graph.edges),
        "lambda": _rat_str(inst.threshold),
        "num_links": len(inst.links),
        "family_size": len(family),
    }
    feasible = all(
        any(((m >> l.a) ^ (m >> l.b)) & 1 for l in inst.links) for m in family.masks
    )
    record["feasible"] = feasible
    if not feasible:
        record["verdicts"] = {}
        record["pass"] = True
        return record

    result = solve(inst, family)
    record["phases"] = len(result.trace)
    record.update(_solution_obj(result))

    verdicts = {
        "cover": len(residual(family, [inst.links[i] for i in result.solution])) == 0,
        "minimal": _single_drop_minimal(family, result.solution, inst.links),
        "dual_feasible": dual_feasible(inst, family, result.dual),
        "cost_le_5_dual": result.cost <= 5 * result.dual.total,
    }

    audits = audit_run(inst.links, family, result, cfg.audit_mode)
    record["audits"] = [_audit_obj(r) for r in audits]
    verdicts["audits"] = all(r.passed for r in audits)
    quotients = [Fraction(r.lstar_size, r.num_cores) for r in audits if r.num_cores]
    record["max_density_quotient"] = _rat_str(max(quotients)) if quotients else None

    if len(inst.links) <= cfg.exact_limit:
        opt = exact_optimum(inst, family, cfg.exact_limit, warm_start=result.solution)
        record["opt_cost"] = _rat_str(opt.opt_cost)
        record["opt_links"] = list(opt.opt_links)
        try:
            q = ratio(result, opt)
            record["ratio"] = _rat_str(q)
            verdicts["ratio_le_5"] = q <= 5
        except CutCoverError:
            record["ratio"] = None
            verdicts["ratio_le_5"] = False
        verdicts["dual_le_opt"] = result.dual.total <= opt.opt_cost
    else:
        record["opt_cost"] = None
        record["ratio"] = None

    record["verdicts"] = verdicts
    record["pass"] = all(verdicts.values())
    return record


def _summarize(records) -> dict:
    ratios = [Fraction(r["ratio"]) for r in records if r.get("ratio") is not None]
    quotients = [
        Fraction(r["max_density_quotient"])
        for r in records
        if r.get("max_density_quotient") is not None
    ]
    failed = [r["index"] for r in records if not r["pass"]]
    tallies = {}
    for r in records:
        for name, ok in r.get("verdicts", {}).items():
            s = tallies.setdefault(name, {"pass": 0, "fail": 0})
            s["pass" if ok else "fail"] += 1
    return {
        "instances": len(records),
        "feasible": sum(1 for r in records if r.get("feasible")),
        "min_ratio": _rat_str(min(ratios)) if ratios else None,
        "mean_ratio": _rat_str(sum(ratios, Fraction(0)) / len(ratios)) if ratios else None,
        "max_ratio": _rat_str(max(ratios)) if ratios else None,
        "max_density_quotient": _rat_str(max(quotients)) if quotients else None,
        "verdict_tallies": tallies,
        "failed_instances": failed,
        "all_passed": not failed,
    }


def run_pipeline(cfg: RunConfig):
    """Run the whole batch; returns (records, summary)."""
    indices = range(cfg.count)
    records = []
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for record in pool.map(pipeline_record, [cfg] * cfg.count, indices):
                records.append(record)
                if cfg.fail_fast and not record["pass"]:
                    pool.shutdown(cancel_futures=True)
                    break
    else:
        for index in indices:
            record = pipeline_record(cfg, index)
            records.append(record)
            if cfg.fail_fast and not record["pass"]:
                break
    return records, _summarize(records)


def report_lines(records, summary) -> str:
    lines = [json.dumps(r, separators=(",", ":")) for r in records]
    lines.append(json.dumps({"summary": summary}, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def report_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for r in records:
        if not r.get("feasible"):
            continue
        writer.writerow([
            r["index"], r["n"], r["num_links"], r["family_size"], r.get("phases", 0),
            r.get("cost"), r.get("dual_total"), r.get("opt_cost"), r.get("ratio"),
            r.get("max_density_quotient"),
        ])
    return buf.getvalue()


def _add_generation_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0,
                        help="batch seed (CUTCOVER_SEED overrides)")
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--n-range", default="4:10", metavar="LO:HI")
    parser.add_argument("--density", default="0.3:0.7", metavar="LO:HI")
    parser.add_argument("--cap-range", default="1:10", metavar="LO:HI")
    parser.add_argument("--link-range", default="3:14", metavar="LO:HI")
    parser.add_argument("--cost-range", default="1:20", metavar="LO:HI")
    parser.add_argument("--lambda-policy", default="quantile:0.5",
                        help="fixed:<q> or quantile:<f>")
    parser.add_argument("--allow-infeasible", action="store_true")


def _add_run_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--audit", choices=("per-phase", "final"), default="per-phase")
    parser.add_argument("--sample-budget", type=int, default=100_000)
    parser.add_argument("--enum-limit", type=int, default=20)
    parser.add_argument("--exact-limit", type=int, default=24)
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--fail-fast", action="store_true")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", default=None, help="write the JSON-lines report here")
    parser.add_argument("--csv", dest="csv_out", default=None,
                        help="write the aggregate CSV here")


def _int_range(text: str):
    lo, _, hi = text.partition(":")
    return (int(lo), int(hi)) if hi else (int(lo), int(lo))


def _float_range(text: str):
    lo, _, hi = text.partition(":")
    return (float(lo), float(hi)) if hi else (float(lo), float(lo))


def _config_from_args(args) -> RunConfig:
    seed = args.seed
    env_seed = os.environ.get("CUTCOVER_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    return RunConfig(
        seed=seed,
        count=args.count,
        n_range=_int_range(args.n_range),
        density_range=_float_range(args.density),
        cap_range=_int_range(args.cap_range),
        link_range=_int_range(args.link_range),
        cost_range=_int_range(args.cost_range),
        lambda_policy=args.lambda_policy,
        audit_mode=getattr(args, "audit", "per-phase"),
        sample_budget=getattr(args, "sample_budget", 100_000),
        enum_limit=getattr(args, "enum_limit", 20),
        exact_limit=getattr(args, "exact_limit", 24),
        allow_infeasible=args.allow_infeasible,
        fail_fast=getattr(args, "fail_fast", False),
        workers=getattr(args, "workers", 1),
        output=getattr(args, "out", None),
        csv_output=getattr(args, "csv_out", None),
    )


def _read_instance_arg(path: str) -> Instance:
    if path == "-":
        return load_instance(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return load_instance(fh.read())


def _emit(text: str, path: str | None, stdout) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = argparse.ArgumentParser(
        prog="cutcover",
        description="Cover all small cuts of a capacitated graph with priced "
        "links, and certify the solver's structural guarantees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="emit generated instances as JSON lines")
    _add_generation_args(p_gen)
    p_gen.add_argument("--enum-limit", type=int, default=20)
    p_gen.add_argument("--out", default=None)

    p_solve = sub.add_parser("solve", help="solve one instance file")
    p_solve.add_argument("instance", help="instance file path, or - for stdin")
    p_solve.add_argument("--enum-limit", type=int, default=20)

    p_audit = sub.add_parser("audit", help="solve one instance and audit every phase")
    p_audit.add_argument("instance")
    p_audit.add_argument("--audit", choices=("per-phase", "final"), default="per-phase")
    p_audit.add_argument("--enum-limit", type=int, default=20)

    p_exact = sub.add_parser("exact", help="exact optimum of one instance file")
    p_exact.add_argument("instance")
    p_exact.add_argument("--enum-limit", type=int, default=20)
    p_exact.add_argument("--exact-limit", type=int, default=24)

    p_bench = sub.add_parser("bench", help="generate, solve, audit and compare "
                             "against the exact optimum over a batch")
    _add_generation_args(p_bench)
    _add_run_args(p_bench)

    args = parser.parse_args(argv)

    try:
        if args.command == "gen":
            cfg = _config_from_args(args)
            lines = []
            for i in range(cfg.count):
                inst = gen_instance(cfg, i)
                obj = instance_to_obj(inst)
                if cfg.allow_infeasible:
                    family = enumerate_small_cuts(inst.graph, inst.threshold, cfg.enum_limit)
                    obj["feasible"] = len(residual(family, inst.links)) == 0
                lines.append(json.dumps(obj, separators=(",", ":")))
            _emit("\n".join(lines) + ("\n" if lines else ""), args.out, stdout)
            return 0

        if args.command == "solve":
            inst = _read_instance_arg(args.instance)
            family = enumerate_small_cuts(inst.graph, inst.threshold, args.enum_limit)
            result = solve(inst, family)
            stdout.write(json.dumps(_solution_obj(result), separators=(",", ":")) + "\n")
            return 0

        if args.command == "exact":
            inst = _read_instance_arg(args.instance)
            family = enumerate_small_cuts(inst.graph, inst.threshold, args.enum_limit)
            opt = exact_optimum(inst, family, args.exact_limit)
            stdout.write(json.dumps({
                "opt_cost": _rat_str(opt.opt_cost),
                "opt_links": list(opt.opt_links),
                "nodes_explored": opt.nodes_explored,
            }, separators=(",", ":")) + "\n")
            return 0

        if args.command == "audit":
            inst = _read_instance_arg(args.instance)
            family = enumerate_small_cuts(inst.graph, inst.threshold, args.enum_limit)
            result = solve(inst, family)
            reports = audit_run(inst.links, family, result, args.audit)
            obj = _solution_obj(result)
            obj["audits"] = [_audit_obj(r) for r in reports]
            obj["pass"] = all(r.passed for r in reports)
            stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")
            return 0 if obj["pass"] else 1

        # bench
        cfg = _config_from_args(args)
        records, summary = run_pipeline(cfg)
        text = report_lines(records, summary)
        csv_text = report_csv(records)
        if args.format == "csv":
            _emit(csv_text, None, stdout)
            if cfg.output:
                _emit(text, cfg.output, stdout)
        else:
            _emit(text, cfg.output, stdout)
        if cfg.csv_output:
            _emit(csv_text, cfg.csv_output, stdout)
        print(
            f"cutcover bench: {summary['instances']} instances, "
            f"max ratio {summary['max_ratio']}, "
            f"max density quotient {summary['max_density_quotient']}, "
            f"{'all passed' if summary['all_passed'] else 'FAILURES: ' + str(summary['failed_instances'])}",
            file=stderr,
        )
        return 0 if summary["all_passed"] else 1
    except (CutCoverError, ValueError, OSError) as exc:
        print(f"cutcover: error: {exc}", file=stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
