"""Command-line entry point: runs check suites and writes JSON and Markdown reports."""

from __future__ import annotations

import argparse
import json
import multiprocessing as mp
import sys
import time
from fractions import Fraction
from pathlib import Path

from gmpy2 import mpq

from .algebra import AlgElement, TensorElement
from .quasihopf import QConfig, QuasiHopfQ, beta_choices
from .scalars import CycScalar, LaurentScalar
from .verify import Budget, CheckResult, run_check

_MPQ = type(mpq(0))
SUBCOMMANDS = ("structures", "verify", "center", "modules", "sl2z", "qhat", "double", "compare", "all")
SUITE_CHOICES = ("all", "bialgebra", "antipode", "rmatrix", "ribbon", "factorisable")


def jsonable(obj):
    if isinstance(obj, (CycScalar, LaurentScalar, AlgElement, TensorElement)):
        return obj.to_json()
    if isinstance(obj, (_MPQ, Fraction)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, (int, str, bool, float)) or obj is None:
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


# ---------------------------------------------------------------------------
# check units: each returns (list[CheckResult], matrices dict)

def _q(cfg):
    return QuasiHopfQ(cfg)


def unit_structures(cfg, opts):
    from .quasihopf import build_structures
    holder = {}

    def run(b):
        st = build_structures(cfg)
        holder["st"] = st
        n = cfg.n
        one1, one2, one3 = AlgElement.scalar(n), TensorElement.one(n, 2), TensorElement.one(n, 3)
        return [
            ("Phi PhiInv = 1", st.Phi * st.PhiInv - one3),
            ("R RInv = 1", st.R * st.RInv - one2),
            ("f fInv = 1", st.fTwist * st.fTwistInv - one2),
            ("v vInv = 1", st.v * st.vInv - one1),
            ("u uInv = 1", st.u * st.uInv - one1),
        ]
    res = run_check("structures_built", "structure elements and their inverses", run, opts.budget())
    mats = {"structures": holder["st"].to_json()} if "st" in holder else {}
    return [res], mats


def unit_verify(cfg, opts):
    from .verify import run_suite
    return run_suite(_q(cfg), opts.suite, opts.max_seconds), {}


def unit_center(cfg, opts):
    from .center import center_items, compute_center, coordinate_change, idempotent_items
    q = _q(cfg)
    holder = {}

    def run(b):
        cb = compute_center(q)
        holder["cb"] = cb
        return center_items(cb)
    r1 = run_check("center", "dim Z(Q) = 3 + 2^(2N-1) and closed-form basis", run, opts.budget())
    r2 = run_check("special_idempotents", "e1+- central orthogonal idempotents",
                   lambda b: idempotent_items(q), opts.budget())
    mats = {}
    if "cb" in holder:
        cb = holder["cb"]
        mats = {"dimension": len(cb.kernel), "basis_labels": cb.labels(),
                "kernel_to_closed_form": coordinate_change(cb)}
    return [r1, r2], mats


def unit_modules(cfg, opts):
    from .reptheory import cartan_and_basic_algebra, character_items, trace_identity_items
    q = _q(cfg)
    holder = {}

    def cartan(b):
        items, extra = cartan_and_basic_algebra(q)
        holder.update(extra)
        return items

    def chars(b):
        items, extra = character_items(q)
        holder["phi"], holder["chi"] = extra["phi"], extra["chi"]
        return items
    res = [
        run_check("cartan", "composition multiplicities and basic algebra", cartan, opts.budget()),
        run_check("characters", "internal characters phi_V and chi_V", chars, opts.budget()),
        run_check("trace_identities", "traces on X1+-", lambda b: trace_identity_items(q), opts.budget()),
    ]
    return res, holder


def unit_sl2z(cfg, opts):
    from .sl2z import coend_items, integral_items, s_phi_chi_items, theorem_st_items
    q = _q(cfg)
    holder = {}

    def st(b):
        items, extra = theorem_st_items(q)
        act = extra["action"]
        holder.update({"S": act.Smat, "T": act.Tmat, "labels": act.labels,
                       "nilpotency_index": extra["nilpotency_index"], "jordan": extra["jordan"]})
        return items
    res = [
        run_check("coend", "coend structure maps and Hopf pairing", lambda b: coend_items(q), opts.budget()),
        run_check("integral", "integral normalisation and cointegral identity",
                  lambda b: integral_items(q), opts.budget()),
        run_check("theorem_ST", "S and T on the centre", st, opts.budget()),
        run_check("S_phi_chi", "S(phi_V) = chi_V", lambda b: s_phi_chi_items(q), opts.budget()),
    ]
    return res, holder


def unit_qhat_twist(cfg, opts):
    from .qhat import check_twist_equivalence
    return [check_twist_equivalence(cfg, budget=opts.budget())], {}


def unit_qhat_axioms(cfg, opts):
    from .qhat import check_qhat_axioms
    return check_qhat_axioms(cfg, budget=opts.budget()), {}


def unit_qhat_lemma(cfg, opts):
    from .qhat import spot_check_commutation_lemma
    return [spot_check_commutation_lemma(cfg, budget=opts.budget())], {}


_DOUBLE_GROUPS = {
    "algebra": ("H_hopf_axioms", "dual_hopf_axioms", "dual_lemma", "double_relations",
                "psi_algebra_isomorphism"),
    "hopf": ("psi_hopf", "embedding_H_to_Q", "psi_coalgebra_odd_n"),
    "rmatrix": ("double_quasitriangular", "psi_rmatrix"),
}


def unit_double(cfg, opts):
    from .double import check_psi
    results = check_psi(cfg, budget=opts.budget())
    if opts.check not in (None, "all"):
        keep = _DOUBLE_GROUPS[opts.check]
        results = [r for r in results if r.name in keep]
    return results, {}


def unit_compare(cfg, opts):
    from .compare import check_comparison
    res, data = check_comparison(cfg, budget=opts.budget())
    mats = {}
    if data is not None:
        mats = {"Upsilon": data.upsilon, "SVoa": data.SVoa, "TVoaStripped": data.TVoaStripped,
                "S": data.Smat, "T": data.Tmat, "ZQ_labels": data.labels,
                "ZE_labels": data.zb.labels()}
    return [res], mats


def units_for(sub: str, cfg: QConfig, opts) -> list[tuple[str, object]]:
    n = cfg.n
    if sub == "structures":
        return [("structures", unit_structures)]
    if sub == "verify":
        return [("verify", unit_verify)]
    if sub == "center":
        return [("center", unit_center)]
    if sub == "modules":
        return [("modules", unit_modules)]
    if sub == "sl2z":
        return [("sl2z", unit_sl2z)]
    if sub == "qhat":
        chosen = opts.check or "all"
        out = []
        if chosen in ("all", "twist"):
            out.append(("qhat_twist", unit_qhat_twist))
        if chosen == "axioms" or (chosen == "all" and n == 1):
            out.append(("qhat_axioms", unit_qhat_axioms))
        if chosen == "lemma" or (chosen == "all" and n >= 2):
            out.append(("qhat_lemma", unit_qhat_lemma))
        return out
    if sub == "double":
        return [("double", unit_double)]
    if sub == "compare":
        return [("compare", unit_compare)]
    out = []
    for s in ("structures", "verify", "center", "modules", "sl2z", "qhat", "double"):
        out += units_for(s, cfg, opts)
    if _compare_applies(cfg):
        out += units_for("compare", cfg, opts)
    return out


def _compare_applies(cfg: QConfig) -> bool:
    return cfg.nu == 1 and cfg.beta_exp == cfg.n % 8


# ---------------------------------------------------------------------------
# execution

class Options:
    def __init__(self, suite="all", max_seconds=None, check=None):
        self.suite = suite
        self.max_seconds = max_seconds
        self.check = check

    def budget(self) -> Budget:
        return Budget(self.max_seconds)


def _run_unit(fn, cfg, opts) -> dict:
    results, mats = fn(cfg, opts)
    return {"checks": [r.to_json() for r in results], "matrices": jsonable(mats)}


def _worker(conn, fn, cfg, opts):
    try:
        conn.send(("ok", _run_unit(fn, cfg, opts)))
    except Exception as exc:  # reported as a failed check by the parent
        conn.send(("error", f"{type(exc).__name__}: {exc}"))
    conn.close()


def _error_result(name, msg) -> dict:
    return {"checks": [CheckResult(name, "fail", 1, 0, "", msg).to_json()], "matrices": {}}


def _budget_result(name, seconds) -> dict:
    res = CheckResult(name, "budget", 0, int(1000 * seconds), "", "aborted: budget exhausted")
    return {"checks": [res.to_json()], "matrices": {}}


def run_units(units, cfg, opts, threads: int) -> list[dict]:
    """Run units inline, or in worker processes when a budget or parallelism is requested."""
    if threads <= 1 and opts.max_seconds is None:
        out = []
        for name, fn in units:
            try:
                out.append(_run_unit(fn, cfg, opts))
            except Exception as exc:
                out.append(_error_result(name, f"{type(exc).__name__}: {exc}"))
        return out
    ctx = mp.get_context("fork")
    pending = list(enumerate(units))
    running = {}
    results: dict[int, dict] = {}
    limit = opts.max_seconds
    while pending or running:
        while pending and len(running) < max(1, threads):
            idx, (name, fn) = pending.pop(0)
            parent, child = ctx.Pipe(duplex=False)
            proc = ctx.Process(target=_worker, args=(child, fn, cfg, opts))
            proc.start()
            child.close()
            running[idx] = (name, proc, parent, time.monotonic())
        for idx, (name, proc, parent, t0) in list(running.items()):
            if parent.poll():
                status, payload = parent.recv()
                proc.join()
                results[idx] = payload if status == "ok" else _error_result(name, payload)
                del running[idx]
            elif not proc.is_alive():
                proc.join()
                results[idx] = _error_result(name, "worker exited without a result")
                del running[idx]
            elif limit is not None and time.monotonic() - t0 > limit:
                proc.terminate()
                proc.join()
                results[idx] = _budget_result(name, time.monotonic() - t0)
                del running[idx]
        time.sleep(0.02)
    return [results[i] for i in range(len(units))]


def build_report(cfg: QConfig, unit_outputs: list[dict], timings: bool = False) -> dict:
    checks, mats = [], {}
    for out in unit_outputs:
        checks += out["checks"]
        mats.update(out["matrices"])
    if not timings:
        for c in checks:
            c["runtime_ms"] = 0
    return {"config": {"n": cfg.n, "beta_exp": cfg.beta_exp, "nu": cfg.nu},
            "checks": checks, "matrices": mats}


def report_passed(report: dict) -> bool:
    return all(c["status"] == "pass" for c in report["checks"])


def render_markdown(sub: str, report: dict) -> str:
    cfg = report["config"]
    lines = [f"# {sub} report", "",
             f"N = {cfg['n']}, beta = zeta8^{cfg['beta_exp']}, nu = {cfg['nu']}", "",
             "| check | status | residual | runtime (ms) | reference |",
             "|---|---|---|---|---|"]
    for c in report["checks"]:
        lines.append(f"| {c['name']} | {c['status']} | {c['residual_count']} | {c['runtime_ms']} | "
                     f"{c['paper_ref']} |")
    failed = [c for c in report["checks"] if c["status"] != "pass"]
    lines += ["", f"Result: {'PASS' if not failed else 'FAIL'} "
                  f"({len(report['checks']) - len(failed)}/{len(report['checks'])} checks passed)"]
    for c in failed:
        if c.get("detail"):
            lines.append(f"- {c['name']}: {c['detail']}")
    mats = report["matrices"]
    if mats:
        lines += ["", "Matrices and data in the JSON report: " + ", ".join(sorted(mats))]
    return "\n".join(lines) + "\n"


def dump_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsf", description=__doc__)
    p.add_argument("command", choices=SUBCOMMANDS)
    p.add_argument("--n", type=int, nargs="+", default=[1], help="rank(s) N")
    p.add_argument("--beta-exp", nargs="+", default=None,
                   help="beta = zeta8^b; integers mod 8 or 'all' (default: b = N)")
    p.add_argument("--nu", type=int, choices=(1, -1), default=1)
    p.add_argument("--suite", choices=SUITE_CHOICES, default="all")
    p.add_argument("--check", default=None,
                   help="qhat: twist|axioms|lemma; double: algebra|hopf|rmatrix")
    p.add_argument("--out", default="reports", help="directory for JSON and Markdown reports")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-seconds", type=float, default=None, help="budget per check unit")
    p.add_argument("--timings", action="store_true",
                   help="record wall-clock runtime_ms (otherwise 0, keeping reports byte-identical)")
    return p


def _configs(args) -> list[QConfig]:
    cfgs = []
    for n in args.n:
        if args.beta_exp is None:
            exps = [n]
        elif args.beta_exp == ["all"]:
            exps = beta_choices(n)
        else:
            exps = [int(b) for b in args.beta_exp]
        for b in exps:
            cfgs.append(QConfig(n, b, args.nu))
    return cfgs


def run(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "qhat" and args.check not in (None, "all", "twist", "axioms", "lemma"):
        parser.error("qhat --check must be one of twist, axioms, lemma")
    if args.command == "double" and args.check not in (None, "all", "algebra", "hopf", "rmatrix"):
        parser.error("double --check must be one of algebra, hopf, rmatrix")
    try:
        cfgs = _configs(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command == "compare":
        bad = [c for c in cfgs if not _compare_applies(c)]
        if bad:
            print("error: compare requires beta = zeta8^N and nu = 1 "
                  f"(got {bad[0].label()})", file=sys.stderr)
            return 2
    opts = Options(args.suite, args.max_seconds, args.check)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    ok = True
    for cfg in cfgs:
        units = units_for(args.command, cfg, opts)
        report = build_report(cfg, run_units(units, cfg, opts, args.threads), args.timings)
        stem = f"{args.command}_N{cfg.n}_b{cfg.beta_exp}_nu{'p' if cfg.nu == 1 else 'm'}1"
        (out_dir / f"{stem}.json").write_text(dump_json(report))
        (out_dir / f"{stem}.md").write_text(render_markdown(args.command, report))
        passed = report_passed(report)
        ok = ok and passed
        for c in report["checks"]:
            print(f"[{c['status']:>6}] {cfg.label()}  {c['name']}  residual={c['residual_count']}")
        print(f"{cfg.label()}: {'PASS' if passed else 'FAIL'} -> {out_dir / stem}.json")
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
