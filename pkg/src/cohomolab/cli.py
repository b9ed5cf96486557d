"""Command-line front end: ``cohomolab <command> ...``.

Exit codes: 0 when every verdict came out as expected (or none was asked for),
2 when a mathematical check failed, 1 on bad input or configuration.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import asdict, dataclass

from . import __version__
from .augmentation import les_verify, simplicial_report
from .complexes import ComplexError, dump_complex, sniper_demo
from .corpus import InputError, digest, resolve_action, resolve_group
from .groups import Group, centralizer, conjugacy_classes, is_commutative_transitive
from .hochschild import DEFAULT_MEMORY_CAP, MemoryCapError
from .linalg import FieldTag, LinalgError
from .shapiro import brute_force_oracle, disintegrate, fast_path_complex, resolution_pipeline

EXIT_OK, EXIT_INPUT, EXIT_VERDICT = 0, 1, 2

CSV_COLUMNS = {
    "cohomology": ["report", "tag", "field", "n", "dim_Z", "dim_B", "dim_H"],
    "classes": ["representative", "label", "size", "centralizer_order"],
    "ct": ["group", "commutative_transitive", "witness_x", "witness_a", "witness_b"],
    "les-verify": ["degree", "term", "dim_H", "image_in", "kernel_out"],
    "sniper": ["N", "sum_of_cokernels", "cokernel_of_sum", "max_map_norm", "inverse_norm"],
}


@dataclass(frozen=True)
class RunConfig:
    field: str = "q"
    max_degree: int | None = None
    memory_cap: int = DEFAULT_MEMORY_CAP
    output: str = "text"
    seed: int = 0
    random_transversal: bool = False
    dump_complex: str | None = None

    def field_tag(self) -> FieldTag:
        return FieldTag.parse(self.field)

    def degree(self, default: int = 3) -> int:
        return default if self.max_degree is None else self.max_degree

    def public(self, default_degree: int = 3) -> dict:
        d = asdict(self)
        d["field"] = self.field_tag().name
        d["max_degree"] = self.degree(default_degree)
        d.pop("output")
        d.pop("dump_complex")
        return d


class Timer:
    def __init__(self):
        self.stages: dict[str, float] = {}

    def run(self, stage: str, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        self.stages[stage] = round(time.perf_counter() - t0, 6)
        return out


def _group_info(g: Group) -> dict:
    return {"name": g.name, "order": g.order}


def stable_digest(report: dict) -> str:
    """Checksum of a report with the run-dependent timings removed."""
    return digest({k: v for k, v in report.items() if k != "timings"})


# commands ------------------------------------------------------------------


def cmd_classes(group_ref: str, cfg: RunConfig) -> tuple[dict, int]:
    g = resolve_group(group_ref)
    rows = []
    for cls in conjugacy_classes(g):
        rep = cls[0]
        rows.append({
            "representative": rep,
            "label": g.label(rep),
            "size": len(cls),
            "centralizer_order": centralizer(g, rep).order,
            "members": cls,
        })
    rep = {
        "command": "classes",
        "inputs": {"group": _group_info(g)},
        "result": {"count": len(rows), "classes": rows},
        "verdict": {"ok": sum(r["size"] for r in rows) == g.order},
    }
    return rep, EXIT_OK if rep["verdict"]["ok"] else EXIT_VERDICT


def cmd_ct(group_ref: str, cfg: RunConfig) -> tuple[dict, int]:
    g = resolve_group(group_ref)
    v = is_commutative_transitive(g)
    w = None
    if v.witness is not None:
        x, a, b = v.witness
        w = {"x": x, "a": a, "b": b, "labels": [g.label(x), g.label(a), g.label(b)]}
    rep = {
        "command": "ct",
        "inputs": {"group": _group_info(g)},
        "result": {"commutative_transitive": v.commutative_transitive, "witness": w},
        "verdict": {"ok": True},
    }
    return rep, EXIT_OK


def cmd_disintegrate(group_ref: str, action_ref: str, cfg: RunConfig, resolution: bool = False) -> tuple[dict, int]:
    g = resolve_group(group_ref)
    a = resolve_action(action_ref, g)
    fld = cfg.field_tag()
    deg = cfg.degree()
    t = Timer()
    fast = t.run("fast_path", disintegrate, a, fld, deg, cfg.memory_cap)
    oracle = t.run("oracle", brute_force_oracle, a, fld, deg, cfg.memory_cap)
    reports = [oracle.to_dict(), fast.to_dict()]
    equal = oracle.dims == fast.dims
    result = {"dims": list(fast.dims), "oracle_dims": list(oracle.dims), "equal": equal}
    ok = equal
    if resolution or cfg.random_transversal:
        rng = random.Random(cfg.seed) if cfg.random_transversal else None
        pipe = t.run("resolution", resolution_pipeline, a, fld, deg, rng, cfg.memory_cap)
        reports.append(pipe.report.to_dict())
        result["resolution"] = {"dims": list(pipe.report.dims), "checks": pipe.checks, "witnesses": pipe.witnesses}
        ok = ok and pipe.ok and pipe.report.dims == fast.dims
    if cfg.dump_complex:
        dump_complex(fast_path_complex(a, fld, deg, cfg.memory_cap), cfg.dump_complex)
    timings = dict(t.stages)
    if t.stages["fast_path"] > 0:
        timings["speedup"] = round(t.stages["oracle"] / t.stages["fast_path"], 2)
    rep = {
        "command": "disintegrate",
        "inputs": {"group": _group_info(g), "action": {"label": a.label, "set_size": a.set_size}},
        "config": cfg.public(),
        "reports": reports,
        "result": result,
        "verdict": {"ok": ok, "message": "oracle = fast path" if equal else "oracle != fast path"},
        "timings": timings,
    }
    return rep, EXIT_OK if ok else EXIT_VERDICT


def cmd_simplicial(group_ref: str, cfg: RunConfig) -> tuple[dict, int]:
    g = resolve_group(group_ref)
    t = Timer()
    r = t.run("simplicial_report", simplicial_report, g, cfg.field_tag(), cfg.degree(), cfg.memory_cap)
    rep = {
        "command": "simplicial-triviality",
        "inputs": {"group": _group_info(g)},
        "config": cfg.public(),
        "reports": [r.k_eps.to_dict(), r.regular_dual.to_dict(), r.ideal_dual.to_dict()],
        "result": r.to_dict(),
        "verdict": {"ok": r.consistent, "message": r.verdict},
        "timings": t.stages,
    }
    return rep, EXIT_OK if r.consistent else EXIT_VERDICT


def cmd_les(group_ref: str, cfg: RunConfig) -> tuple[dict, int]:
    g = resolve_group(group_ref)
    t = Timer()
    r = t.run("les_verify", les_verify, g, cfg.field_tag(), cfg.degree(2), cfg.memory_cap)
    rep = {
        "command": "les-verify",
        "inputs": {"group": _group_info(g)},
        "config": cfg.public(2),
        "result": r.to_dict(),
        "verdict": {"ok": r.ok, "message": "exact at every node" if r.ok else f"fails at {r.witness}"},
        "timings": t.stages,
    }
    return rep, EXIT_OK if r.ok else EXIT_VERDICT


def cmd_sniper(n: int, cfg: RunConfig) -> tuple[dict, int]:
    t = Timer()
    r = t.run("sniper", sniper_demo, n)
    ok = r.inverse_norm == n
    rep = {
        "command": "sniper",
        "inputs": {"N": n},
        "result": r.to_dict(),
        "verdict": {"ok": ok, "message": f"forced splitting norm = {r.inverse_norm}"},
        "timings": t.stages,
    }
    return rep, EXIT_OK if ok else EXIT_VERDICT


# rendering -----------------------------------------------------------------


def render_json(rep: dict) -> str:
    return json.dumps(rep, indent=2, sort_keys=True)


def render_csv(rep: dict) -> str:
    buf = io.StringIO()
    cmd = rep["command"]
    w = csv.writer(buf, lineterminator="\n")
    if cmd in ("disintegrate", "simplicial-triviality"):
        w.writerow(CSV_COLUMNS["cohomology"])
        for r in rep["reports"]:
            for d in r["degrees"]:
                w.writerow([r["label"], r["tag"], r["field"], d["n"], d["dim_Z"], d["dim_B"], d["dim_H"]])
    elif cmd == "classes":
        w.writerow(CSV_COLUMNS["classes"])
        for c in rep["result"]["classes"]:
            w.writerow([c[k] for k in CSV_COLUMNS["classes"]])
    elif cmd == "ct":
        w.writerow(CSV_COLUMNS["ct"])
        wit = rep["result"]["witness"] or {}
        w.writerow([rep["inputs"]["group"]["name"], rep["result"]["commutative_transitive"],
                    wit.get("x", ""), wit.get("a", ""), wit.get("b", "")])
    elif cmd == "les-verify":
        w.writerow(CSV_COLUMNS["les-verify"])
        for node in rep["result"]["nodes"]:
            w.writerow([node[k] for k in CSV_COLUMNS["les-verify"]])
    elif cmd == "sniper":
        w.writerow(CSV_COLUMNS["sniper"])
        w.writerow([rep["result"][k] for k in CSV_COLUMNS["sniper"]])
    return buf.getvalue()


def render_text(rep: dict) -> str:
    cmd = rep["command"]
    res = rep["result"]
    out = []
    if cmd == "classes":
        g = rep["inputs"]["group"]
        out.append(f"{g['name']} (order {g['order']}): {res['count']} conjugacy classes")
        for c in res["classes"]:
            out.append(f"  rep {c['representative']} [{c['label']}]  size {c['size']}  |C| = {c['centralizer_order']}")
    elif cmd == "ct":
        g = rep["inputs"]["group"]["name"]
        if res["commutative_transitive"]:
            out.append(f"{g}: commutative-transitive")
        else:
            w = res["witness"]
            out.append(f"{g}: not commutative-transitive; centralizer of {w['x']} [{w['labels'][0]}] "
                       f"contains {w['a']}, {w['b']} which do not commute")
    elif cmd == "disintegrate":
        for r in rep["reports"]:
            dims = tuple(d["dim_H"] for d in r["degrees"])
            out.append(f"{r['tag']:>10}: {r['label']} over {r['field']}  H = {dims}")
        out.append(f"verdict: {rep['verdict']['message']}")
        if "resolution" in res:
            bad = [k for k, v in res["resolution"]["checks"].items() if not v]
            out.append("resolution checks: " + ("all pass" if not bad else "FAILED " + ", ".join(bad)))
    elif cmd == "simplicial-triviality":
        for key in ("k_eps", "A'", "I'"):
            c = res["columns"][key]
            out.append(f"  H^n(k[G], {key:5}) = {tuple(d['dim_H'] for d in c['degrees'])}")
        v = res["verdicts"]
        out.append(f"(a) H^n(A, I') = 0 for 1 <= n <= {res['max_degree']}: {v['a_ideal_dual_vanishes']}")
        out.append(f"(b) dim H^n(A, k_eps) = dim H^n(A, A'): {v['b_dims_match']} (phi* injective: {v['phi_star_injective']})")
        out.append(f"(c) (a) <=> (b): {v['c_consistent']}")
        out.append(f"verdict: {res['verdict']}")
        out.extend(f"note: {n}" for n in res["notes"])
    elif cmd == "les-verify":
        for node in res["nodes"]:
            out.append(f"  H^{node['degree']}({node['term']:2}) dim {node['dim_H']}: image in {node['image_in']}, "
                       f"kernel out {node['kernel_out']}")
        out.append(f"verdict: {rep['verdict']['message']}; degree-0 trace extension onto: {res['degree0_surjective']}")
    elif cmd == "sniper":
        out.append(f"N = {res['N']}: cokernel of the sum = {res['cokernel_of_sum']}, "
                   f"max map norm = {res['max_map_norm']}, forced splitting norm = {res['inverse_norm']}")
    if rep.get("timings"):
        out.append("timings: " + ", ".join(f"{k} {v}x" if k == "speedup" else f"{k} {v:.4f}s"
                                           for k, v in rep["timings"].items()))
    return "\n".join(out) + "\n"


RENDERERS = {"json": render_json, "csv": render_csv, "text": render_text}


# argument parsing ------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q, f2, f3, f5, ... (default q)")
    common.add_argument("--max-degree", type=_nonneg, default=None,
                        help="highest cohomological degree (default 3; 2 for les-verify)")
    common.add_argument("--memory-cap", type=_positive, default=DEFAULT_MEMORY_CAP,
                        help="largest cochain-space dimension allowed")
    common.add_argument("--output", choices=sorted(RENDERERS), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for --random-transversal")
    common.add_argument("--random-transversal", action="store_true",
                        help="run the resolution route with randomly chosen coset representatives")
    common.add_argument("--dump-complex", metavar="PATH", help="write the fast-path complex as JSON")

    p = argparse.ArgumentParser(prog="cohomolab", description="Exact Hochschild cohomology of finite group algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("classes", parents=[common], help="conjugacy classes and centralizer orders")
    s.add_argument("group")
    s = sub.add_parser("ct", parents=[common], help="commutative-transitivity verdict with witness")
    s.add_argument("group")
    s = sub.add_parser("disintegrate", parents=[common], help="oracle vs fast path for H^n(k[G], k(S)')")
    s.add_argument("group")
    s.add_argument("action", help="action file, corpus action name, or conjugation/regular/trivial")
    s.add_argument("--resolution", action="store_true", help="also build and check the free resolution route")
    s = sub.add_parser("simplicial-triviality", parents=[common], help="H^n with coefficients k_eps, A', I'")
    s.add_argument("group")
    s = sub.add_parser("les-verify", parents=[common], help="long exact sequence for 0 -> k -> A' -> I' -> 0")
    s.add_argument("group")
    s = sub.add_parser("sniper", parents=[common], help="forced splitting norm of the truncated linf-sum")
    s.add_argument("n", type=_positive)
    return p


def run(args: argparse.Namespace) -> tuple[dict, int]:
    cfg = RunConfig(args.field, args.max_degree, args.memory_cap, args.output, args.seed,
                    args.random_transversal, args.dump_complex)
    cfg.field_tag()  # validate early
    if args.command == "classes":
        return cmd_classes(args.group, cfg)
    if args.command == "ct":
        return cmd_ct(args.group, cfg)
    if args.command == "disintegrate":
        return cmd_disintegrate(args.group, args.action, cfg, args.resolution)
    if args.command == "simplicial-triviality":
        return cmd_simplicial(args.group, cfg)
    if args.command == "les-verify":
        return cmd_les(args.group, cfg)
    return cmd_sniper(args.n, cfg)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep, code = run(args)
    except MemoryCapError as exc:
        print(f"cohomolab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, LinalgError, OSError) as exc:
        print(f"cohomolab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ComplexError as exc:
        print(f"cohomolab: check failed: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    sys.stdout.write(RENDERERS[args.output](rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
