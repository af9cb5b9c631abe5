"""``cms``: compute family elements, run identity checks, print reports.

Exit status is 0 when every gating verdict passes, 1 when one fails and 2
on usage errors.  JSON output is deterministic for a given argv; wall-clock
time is only recorded with ``--timing``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import families as fam
from . import hyper, limits, pieri, verify
from . import superpoly as sp
from .partitions import NotAPartition, parse_partition, partitions_upto
from .scalars import ParseError, ScalarError, parse_scalar
from .symfunc import Basis, BasisMismatch, convert, parse_symfunc

SCHEMA_VERSION = 1
FAMILY_PARAMS = {"jack": (), "hermite": ("nu2",), "laguerre": ("a", "nu"), "jacobi": ("p", "q")}
BASES = {"p": Basis.POWER, "m": Basis.MONOMIAL, "e": Basis.ELEMENTARY, "P": Basis.JACK, "jack": Basis.JACK}


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------------------


def _partition(text):
    try:
        return parse_partition(text)
    except NotAPartition as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _binding(text):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    name, value = text.split("=", 1)
    try:
        return name.strip(), parse_scalar(value)
    except (ParseError, KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad value for {name}: {exc}") from None


def _scalar(text):
    try:
        return parse_scalar(text)
    except (ParseError, KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _family_params(kind, bindings):
    allowed = FAMILY_PARAMS[kind]
    out = {}
    for name, value in bindings or []:
        if name not in allowed:
            raise UsageError(f"{kind} takes parameters {list(allowed)}, not {name!r}")
        out[name] = value
    return out


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer") from None


# -- report -----------------------------------------------------------------------------


class Report:
    def __init__(self, command, params):
        self.command = command
        self.params = params
        self.results = []
        self.verdicts = []

    def add_checks(self, suite, checks):
        for c in checks:
            self.verdicts.append({"suite": suite, "name": c.name, "passed": bool(c.passed),
                                  "informational": bool(c.informational), "detail": c.detail})

    def verdict(self, suite, name, passed, informational=False, detail=""):
        self.verdicts.append({"suite": suite, "name": name, "passed": bool(passed),
                              "informational": informational, "detail": detail})

    @property
    def failed(self):
        return any(not v["passed"] and not v["informational"] for v in self.verdicts)

    def to_dict(self, elapsed_ms):
        info = fam._compute.cache_info()
        return {"command": self.command, "params": self.params, "results": self.results,
                "verdicts": self.verdicts, "elapsed_ms": elapsed_ms,
                "cache": {"family_hits": info.hits, "family_misses": info.misses},
                "schema": SCHEMA_VERSION}


def _render_text(report, d):
    lines = [f"# {report.command}"]
    for r in d["results"]:
        if "text" in r:
            label = r.get("label")
            head = f"{r.get('kind', '')}{label if label is not None else ''}".strip()
            lines.append(f"{head}: {r['text']}" if head else r["text"])
        else:
            lines.append(json.dumps(r, sort_keys=True))
    for v in d["verdicts"]:
        tag = "PASS" if v["passed"] else ("info" if v["informational"] else "FAIL")
        extra = f"  ({v['detail']})" if v["detail"] else ""
        lines.append(f"[{tag}] {v['suite']}: {v['name']}{extra}")
    if d["verdicts"]:
        gating = [v for v in d["verdicts"] if not v["informational"]]
        ok = sum(v["passed"] for v in gating)
        lines.append(f"{ok}/{len(gating)} gating checks passed")
    if d["elapsed_ms"]:
        lines.append(f"elapsed {d['elapsed_ms']} ms")
    return "\n".join(lines)


def _render_latex(report, d):
    lines = []
    for r in d["results"]:
        if "latex" in r:
            lines.append(r["latex"])
        elif "text" in r:
            lines.append(r["text"])
    if d["verdicts"]:
        lines.append(r"\begin{tabular}{lll}")
        for v in d["verdicts"]:
            tag = "pass" if v["passed"] else ("info" if v["informational"] else "fail")
            name = v["name"].replace("_", r"\_")
            lines.append(f"{v['suite']} & {name} & {tag} \\\\")
        lines.append(r"\end{tabular}")
    return "\n".join(lines)


# -- verbs ----------------------------------------------------------------------------------


def _symfunc_result(kind, label, f, basis, params=None):
    f = convert(f, basis)
    out = {"kind": kind, "label": list(label), "basis": basis.value, "value": f.to_json(),
           "text": f.to_text(), "latex": f.to_latex()}
    if params is not None:
        out["params"] = {k: str(v) for k, v in sorted(params.items())}
    return out


def cmd_family(args, report):
    params = _family_params(args.kind, args.param)
    el = fam.family(args.kind, args.partition, method=args.method, **params)
    report.results.append(_symfunc_result(args.kind, el.label, el.value, BASES[args.basis], el.params))


def cmd_pieri(args, report):
    oracle, reports = pieri.pieri_general(args.family, args.partition, args.r)
    terms = [{"partition": list(mu), "coefficient": str(c)} for mu, c in oracle.items()]
    report.results.append({"kind": args.family, "label": list(args.partition), "r": args.r,
                           "terms": terms,
                           "text": " + ".join(f"({t['coefficient']})*F{t['partition']}" for t in terms) or "0"})
    for rep in reports:
        informational = rep.form in verify._PIERI_INFO
        report.verdict("pieri", f"{rep.kind} r={rep.r} {rep.source} {rep.form}", rep.matches, informational,
                       "" if rep.matches else f"{len(rep.mismatches)} coefficient(s) differ")


def cmd_hyper(args, report):
    if args.action == "check":
        res = hyper.check_hyper_ode(args.which, args.degree)
        report.results.append({"which": res.which, "degree": res.degree, "valid_to": res.valid_to,
                               "zero": res.zero, "nonzero_terms": [str(t) for t in res.nonzero_terms]})
        report.verdict("hyper", f"{args.which} equation", res.zero)
    else:
        a_list, b_list = args.a or [], args.b or []
        F = hyper.pFq_one_set(a_list, b_list, args.degree)
        label = f"{len(a_list)}F{len(b_list)}"
        report.results.append(_symfunc_result(label, [], F, Basis.POWER))


def cmd_super(args, report):
    alg = sp.SuperAlgebra(getattr(args, "n", 1), getattr(args, "m", 1))
    if args.action == "family":
        params = _family_params(args.kind, args.param)
        el = sp.super_family(alg, args.kind, args.partition, **params)
        report.results.append({"kind": args.kind, "label": list(el.label), "n": alg.n, "m": alg.m,
                               "kernel": el.kernel, "value": el.poly.to_json(), "text": el.poly.to_text()})
    elif args.action == "series":
        a_list, b_list = args.a or [], args.b or []
        rep = sp.super_pFq_duality(alg, a_list, b_list, args.degree)
        report.results.append({"n": alg.n, "m": alg.m, "degree": args.degree,
                               "value": rep.lhs.to_json(), "text": rep.lhs.to_text()})
        report.verdict("super", f"{len(a_list)}SF{len(b_list)} duality", rep.holds)
    else:
        w = args.max_weight
        if args.what == "kernel":
            for lam in partitions_upto(w):
                el = sp.super_family(alg, "jack", lam)
                report.verdict("super", f"kernel P{lam}", el.poly.is_zero() == el.kernel)
        elif args.what == "duality":
            for lam in partitions_upto(w):
                if alg.in_kernel(lam):
                    continue
                for kind in ("jack", "hermite", "laguerre"):
                    report.verdict("super", f"{kind} duality {lam}", sp.super_duality_check(kind, alg, lam)[0])
        else:
            for mu, f in sp.power_sum_images(alg, w).items():
                for k in range(4):
                    ok = all(sp.deformed_op_point_check(alg, (name, k), f, pt)
                             for name in ("E", "D") for pt in sp.sample_points(alg))
                    report.verdict("super", f"E{k}, D{k} on phi(p{mu})", ok)


def cmd_limits(args, report):
    kinds = limits.KINDS if args.kind == "all" else [args.kind]
    labels = [args.partition] if args.partition is not None else list(partitions_upto(args.max_weight))
    for kind in kinds:
        for lam in labels:
            res = limits.limit_transition(kind, lam)
            entry = {"kind": kind, "label": list(lam), "verdict": res.verdict, "conjectural": res.conjectural}
            if res.value is not None:
                entry["value"] = res.value.to_json()
            report.results.append(entry)
            report.verdict("limits", f"{kind} {lam}", res.verdict == "equal", res.conjectural, res.verdict)


def _run_one(name, bounds):
    return verify.run_suite(name, **bounds)


def cmd_verify(args, report, timing):
    bounds = {"max_weight": args.max_weight, "max_degree": args.max_degree, "degree": args.degree,
              "n": args.n, "m": args.m}
    bounds = {k: v for k, v in bounds.items() if v is not None}
    if args.suite != "all" and args.suite not in verify.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(verify.SUITES)} or all")
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    jobs = args.jobs if args.jobs is not None else _env_int("CMS_JOBS", 1)
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, names, [bounds] * len(names)))
    else:
        results = [_run_one(n, bounds) for n in names]
    for res in results:
        entry = {"suite": res.name, "passed": res.passed, "checks": len(res.checks)}
        if timing:
            entry["elapsed_ms"] = round(res.elapsed * 1000)
        report.results.append(entry)
        report.add_checks(res.name, res.checks)


def cmd_convert(args, report):
    f = parse_symfunc(args.expr)
    report.results.append(_symfunc_result("convert", [], f, BASES[args.to]))


# -- parser -----------------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "latex"), default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_const", const="json", dest="format", default=argparse.SUPPRESS,
                        help="same as --format json")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="record wall-clock time (makes output non-reproducible)")

    parser = argparse.ArgumentParser(prog="cms", parents=[common],
                                     description="Exact Jack, Hermite, Laguerre and Jacobi symmetric functions.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("family", parents=[common], help="compute a family element")
    p.add_argument("kind", choices=fam.KINDS)
    p.add_argument("--partition", type=_partition, required=True)
    p.add_argument("--basis", choices=sorted(BASES), default="p")
    p.add_argument("--method", choices=("default", "solver", "product"), default="default")
    p.add_argument("--param", type=_binding, action="append", metavar="NAME=VALUE")

    p = sub.add_parser("pieri", parents=[common], help="e_r times a family element, with closed-form reports")
    p.add_argument("--family", choices=("hermite", "laguerre", "jacobi"), required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--partition", type=_partition, required=True)

    p = sub.add_parser("hyper", parents=[common], help="hypergeometric series")
    hs = p.add_subparsers(dest="action", required=True)
    h = hs.add_parser("check", parents=[common], help="differential equation residual")
    h.add_argument("--which", choices=hyper.ODES, required=True)
    h.add_argument("--degree", type=int, default=4)
    h = hs.add_parser("series", parents=[common], help="one-set series truncated at a degree")
    h.add_argument("--a", type=_scalar, action="append")
    h.add_argument("--b", type=_scalar, action="append")
    h.add_argument("--degree", type=int, default=3)

    sizes = argparse.ArgumentParser(add_help=False)
    sizes.add_argument("--n", type=int, default=argparse.SUPPRESS)
    sizes.add_argument("--m", type=int, default=argparse.SUPPRESS)
    p = sub.add_parser("super", parents=[common, sizes], help="super polynomials in x_1..x_n, y_1..y_m")
    ss = p.add_subparsers(dest="action", required=True)
    s = ss.add_parser("family", parents=[common, sizes])
    s.add_argument("kind", choices=("jack", "hermite", "laguerre"))
    s.add_argument("--partition", type=_partition, required=True)
    s.add_argument("--param", type=_binding, action="append", metavar="NAME=VALUE")
    s = ss.add_parser("verify", parents=[common, sizes])
    s.add_argument("what", choices=("intertwine", "kernel", "duality"))
    s.add_argument("--max-weight", type=int, default=4)
    s = ss.add_parser("series", parents=[common, sizes])
    s.add_argument("--a", type=_scalar, action="append")
    s.add_argument("--b", type=_scalar, action="append")
    s.add_argument("--degree", type=int, default=2)

    p = sub.add_parser("limits", parents=[common], help="limit transitions between families")
    p.add_argument("kind", choices=(*limits.KINDS, "all"))
    p.add_argument("--partition", type=_partition)
    p.add_argument("--max-weight", type=int, default=3)

    p = sub.add_parser("verify", parents=[common], help="run an identity suite")
    p.add_argument("suite")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("convert", parents=[common], help="rewrite a symmetric function in another basis")
    p.add_argument("expr")
    p.add_argument("--to", choices=sorted(BASES), default="p")
    return parser


def _plain(v):
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)


def _params_echo(args):
    return {k: _plain(v) for k, v in sorted(vars(args).items()) if k not in ("format", "timing")}


def run(argv):
    """Run the CLI; returns (exit code, report dict or None)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    fmt = getattr(args, "format", None) or os.environ.get("CMS_FORMAT", "text")
    timing = getattr(args, "timing", False)
    report = Report(" ".join(["cms", *argv]), _params_echo(args))
    start = time.perf_counter()
    try:
        if args.verb == "family":
            cmd_family(args, report)
        elif args.verb == "pieri":
            cmd_pieri(args, report)
        elif args.verb == "hyper":
            cmd_hyper(args, report)
        elif args.verb == "super":
            cmd_super(args, report)
        elif args.verb == "limits":
            cmd_limits(args, report)
        elif args.verb == "verify":
            cmd_verify(args, report, timing)
        elif args.verb == "convert":
            cmd_convert(args, report)
    except (UsageError, ValueError, KeyError, BasisMismatch, ScalarError) as exc:
        # bad literals, unknown names, or parameter values that hit a pole
        print(f"cms: error: {exc}", file=sys.stderr)
        return 2, None
    elapsed = round((time.perf_counter() - start) * 1000) if timing else 0
    d = report.to_dict(elapsed)
    if fmt == "json":
        print(json.dumps(d, sort_keys=True, indent=2))
    elif fmt == "latex":
        print(_render_latex(report, d))
    else:
        print(_render_text(report, d))
    return (1 if report.failed else 0), d


def main(argv=None):
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
