"""Command line front end: ``check <subcommand> --input problem.json``.

Exit status: 0 all checks pass, 1 a check failed, 2 malformed input,
3 degenerate input (zero divisor or singular metric at a sample point).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .connection import (
    characteristic_connection,
    characteristic_from_definition,
    christoffel,
    fundamental_phi,
    fundamental_psi,
    is_paraholomorphic_connection,
    levi_civita_full,
    verify_characteristic_axioms,
)
from .core import PCArray, ParaComplex
from .curvature import (
    classify_characteristic_einstein,
    curvature_components,
    curvature_from_connection,
    divergence_einstein,
    einstein_tensor,
)
from .einstein import (
    check_theorem_correspondence,
    scalar_relation_violation,
    extract_einstein_constant,
    scalar_curvatures,
    twin_transfer,
)
from .errors import CheckError, DegenerateError, InputError
from .liegroup import (
    lie_connection,
    lie_connection_first_form,
    lie_connection_jets,
    lie_curvature,
    lie_lowered_and_sectional,
    lie_lowered_curvature,
    lie_ricci_and_einstein,
    mc_check,
    para_kahler_norden_realization,
    parallel_curvature_check,
    right_invariant_field,
)
from .metric import check_norden, complexify_metric, is_paraholomorphic_metric, realize_metric, twin_metric
from .problems import LieProblem, MetricProblem, load_problem, parse_samples
from .realgeom import real_geometry
from .report import Check, jsonable

SUBCOMMANDS = ("metric-check", "connection", "curvature", "einstein", "liegroup", "all")


@dataclass
class RunConfig:
    subcommand: str
    input: str
    tolerance: float | None = None
    output: str | None = None
    format: str = "json"
    constant_c: float = 1.0
    samples: list | None = None

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.format not in ("json", "text"):
            raise ValueError("format must be json or text")


@dataclass
class RunResult:
    status: int
    checks: list[Check] = field(default_factory=list)
    error: str | None = None

    def report(self) -> dict:
        out = {
            "version": 1,
            "checks": [c.to_json() for c in self.checks],
            "summary": {
                "passed": sum(1 for c in self.checks if c.passed),
                "failed": sum(1 for c in self.checks if not c.passed),
            },
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def _max_points(fn, samples) -> float:
    return max(fn(p) for p in samples)


# ------------------------------------------------------------ metric pipelines

def metric_checks(pb: MetricProblem, tol: float) -> list[Check]:
    M, S = pb.metric, pb.samples
    g = realize_metric(M)
    holo = is_paraholomorphic_metric(M, S, tol)
    back = complexify_metric(g, S, tol)
    rt = _max_points(lambda p: (back.evaluate(p) - M.evaluate(p)).abs_max(), S)
    return [
        Check("build_metric", True, 0.0, {"dimension": M.n, "samples": len(S)}),
        check_norden(g, S, tol),
        Check("is_paraholomorphic_metric", True, 0.0, {"value": holo, "informational": True}),
        Check("complexify_metric", rt < tol, rt, {"round_trip": rt}),
    ]


def connection_checks(pb: MetricProblem, tol: float) -> list[Check]:
    M, S = pb.metric, pb.samples
    gam, lc, phi, psi = christoffel(M), levi_civita_full(M), fundamental_phi(M), fundamental_psi(M)
    L, Ldef = characteristic_connection(M), characteristic_from_definition(M)
    tw = christoffel(twin_metric(M))
    blocks = _max_points(lambda p: (gam.at(p) - lc.at(p)).abs_max(), S)
    phi_def = _max_points(lambda p: (tw.at(p) - gam.at(p) - phi.at(p)).abs_max(), S)
    phi_max = _max_points(lambda p: phi.at(p).abs_max(), S)
    psi_def = _max_points(
        lambda p: (psi.at(p) - PCArray.einsum("dab,dc->abc", phi.at(p), M.at(p).full("G"))).abs_max(), S)
    l_def = _max_points(lambda p: (L.at(p) - Ldef.at(p)).abs_max(), S)
    return [
        Check("christoffel", blocks < tol, blocks, {"block_vs_full_index": blocks}),
        Check("fundamental_phi", phi_def < tol, phi_def, {"twin_difference": phi_def, "max_abs": phi_max}),
        Check("fundamental_psi", psi_def < tol, psi_def, {"lowered_phi": psi_def}),
        Check("characteristic_connection", l_def < tol, l_def, {"definition_vs_blocks": l_def}),
        verify_characteristic_axioms(M, S, tol, L),
        Check("is_paraholomorphic_connection", True, 0.0,
              {"value": is_paraholomorphic_connection(L, S, tol), "informational": True}),
    ]


def curvature_checks(pb: MetricProblem, tol: float, c: float) -> list[Check]:
    M, S = pb.metric, pb.samples
    L = characteristic_connection(M)
    holo = is_paraholomorphic_metric(M, S, tol)
    eng = anti = imag = 0.0
    rhos, vacuum = [], True
    for p in S:
        curv = curvature_components(L, p)
        j = L.jet(p, 1)
        eng = max(eng, (curv.R - curvature_from_connection(j[0], j[1])).abs_max())
        anti = max(anti, (curv.R + curv.R.transpose(0, 1, 3, 2)).abs_max())
        rho = PCArray.einsum("ca,ca->", M.at(p).full("Ginv"), curv.ricci)[()]
        imag = max(imag, abs(rho.im))
        rhos.append(rho)
        vacuum = vacuum and einstein_tensor(curv, M, c, tol).vacuum
    checks = [
        Check("curvature_components", max(eng, anti) < tol, max(eng, anti),
              {"generic_formula": eng, "antisymmetry": anti}),
        Check("scalar_curvature", imag < tol, imag, {"values": rhos}),
        Check("einstein_tensor", True, 0.0, {"vacuum": vacuum, "constant_c": c, "informational": True}),
    ]
    div = divergence_einstein(M, S, tol, L)
    if not holo:
        div = Check(div.name, True, div.violation, {"informational": True, "reason": "metric is not para-holomorphic"})
    checks.append(div)
    ce = classify_characteristic_einstein(M, S, tol)
    checks.append(Check(ce.name, True, ce.violation, dict(ce.details, informational=True)))
    if holo:
        checks.append(_real_ricci_check(M, S, tol, L))
    return checks


def _real_ricci_check(M, S, tol, L) -> Check:
    n = M.n
    g = realize_metric(M)
    worst = 0.0
    for p in S:
        rr = real_geometry(g, p).ricci
        ric = curvature_components(L, p).ricci_hol
        pred = PCArray(0.5 * rr[:n, :n], 0.5 * rr[:n, n:])
        worst = max(worst, (ric - pred).abs_max())
    return Check("real_ricci_oracle", worst < tol, worst, {"ricci_residual": worst})


def einstein_checks(pb: MetricProblem, tol: float) -> list[Check]:
    M, S = pb.metric, pb.samples
    holo = is_paraholomorphic_metric(M, S, tol)
    phi = fundamental_phi(M)
    phi_max = _max_points(lambda p: phi.at(p).abs_max(), S)
    checks = [
        Check("is_paraholomorphic_metric", holo, 0.0 if holo else 1.0, {"value": holo}),
        Check("fundamental_phi", phi_max < tol, phi_max, {"max_abs": phi_max}),
    ]
    if not holo:
        return checks
    rep = extract_einstein_constant(M, S, tol)
    checks.append(Check("extract_einstein_constant", True, rep.residual, dict(rep.to_details(), informational=True)))
    worst = 0.0
    for p in S:
        K, Ks, Kh = scalar_curvatures(M, p)
        worst = max(worst, scalar_relation_violation(K, Ks, Kh))
    checks.append(Check("scalar_curvatures", worst < tol, worst,
                        {"K": rep.K, "K_star": rep.K_star, "K_hat": rep.K_hat}))
    checks.append(check_theorem_correspondence(M, S, tol))
    tw, gap = twin_transfer(M, S, tol)
    checks.append(Check("twin_transfer", gap < tol, gap, tw.to_details()))
    return checks


# ------------------------------------------------------------ Lie pipeline

def _sectional_samples(A, fr, S) -> tuple[list, list | None]:
    """k on the first coordinate plane (right-invariant fields) that is non-degenerate at every sample."""
    m = A.m
    for i in range(m):
        for j in range(i + 1, m):
            ks = []
            try:
                for p in S:
                    Z = right_invariant_field(fr, _basis(m, i), p)
                    W = right_invariant_field(fr, _basis(m, j), p)
                    ks.append(lie_lowered_and_sectional(A, fr, Z, W, p))
            except DegenerateError:
                continue
            return ks, [i + 1, j + 1]
    return [], None


def lie_checks(pb: LieProblem, tol: float) -> list[Check]:
    A, fr, S = pb.algebra, pb.frame, pb.samples
    origin = tuple(ParaComplex(0.0, 0.0) for _ in range(pb.m))
    checks = [Check("validate_structure", True, 0.0,
                    {"killing": A.killing.tolist(), "killing_det": A.killing_det, "semisimple": A.semisimple})]
    checks.append(mc_check(A, fr, S, tol))
    forms = _max_points(lambda p: (lie_connection_first_form(A, fr, p) - lie_connection_jets(A, fr, p)[0]).abs_max(), S)
    checks.append(Check("lie_connection", forms < tol, forms, {"forms_agree": forms}))
    LC = lie_connection(A, fr)
    m = pb.m

    def engine_gap(p):
        j = LC.jet(p, 1)
        R = curvature_from_connection(j[0], j[1])[:m, :m, :m, :m]
        return (R - lie_curvature(A, fr, p)).abs_max()

    cross = _max_points(engine_gap, S)
    checks.append(Check("lie_curvature", cross < max(tol, 1e-8), cross, {"closed_form_vs_generic": cross}))
    rep = lie_ricci_and_einstein(A, fr, origin)
    worst = max(rep.residual, _max_points(lambda p: lie_ricci_and_einstein(A, fr, p).residual, S))
    details = {"ricci_residual": worst}
    if rep.scalar is not None:
        details["scalar"] = rep.scalar
        details["einstein_constant"] = rep.einstein_constant
    checks.append(Check("lie_ricci_and_einstein", worst < tol, worst, details))
    if A.semisimple:
        low = _max_points(lambda p: (lambda c: (c[0] - c[1]).abs_max())(lie_lowered_curvature(A, fr, p)), S)
        ks, plane = _sectional_samples(A, fr, S)
        spread = max((max(abs(k.re - ks[0].re), abs(k.im - ks[0].im)) for k in ks), default=0.0)
        checks.append(Check("lie_lowered_and_sectional", max(low, spread) < max(tol, 1e-6), max(low, spread),
                            {"lowered_forms": low, "right_invariant_spread": spread, "plane": plane, "k": ks[:1]}))
        checks.append(parallel_curvature_check(A, fr, S, max(tol, 1e-6)))
        g = para_kahler_norden_realization(A, fr)
        geo = real_geometry(g, origin)
        real = float(np.max(np.abs(geo.ricci + 0.25 * geo.g)))
        Q = geo.ricci_operator()
        J = np.zeros((2 * m, 2 * m))
        J[:m, m:] = J[m:, :m] = np.eye(m)
        checks.append(Check("para_kahler_norden_realization", real < max(tol, 1e-8), real,
                            {"real_ricci_plus_quarter_g": real, "K": float(np.trace(Q)),
                             "K_star": float(np.trace(J @ Q))}))
    return checks


def _basis(m: int, i: int) -> list[float]:
    v = [0.0] * m
    v[i] = 1.0
    return v


# ------------------------------------------------------------ driver

def run(cfg: RunConfig) -> RunResult:
    try:
        pb = load_problem(cfg.input)
        if cfg.samples is not None:
            pb.samples = parse_samples(cfg.samples, pb.n if isinstance(pb, MetricProblem) else pb.m)
            if isinstance(pb, MetricProblem):
                pb.metric.check_nondegenerate(pb.samples)
        tol = cfg.tolerance if cfg.tolerance is not None else pb.tolerance
        sub = cfg.subcommand
        checks: list[Check] = []
        if isinstance(pb, LieProblem):
            if sub not in ("liegroup", "all"):
                raise InputError(f"'{sub}' needs a metric problem; this file describes a Lie group")
            checks = lie_checks(pb, tol)
        else:
            if sub == "liegroup":
                raise InputError("'liegroup' needs a Lie-group problem file")
            if sub in ("metric-check", "all"):
                checks += metric_checks(pb, tol)
            if sub in ("connection", "all"):
                checks += connection_checks(pb, tol)
            if sub in ("curvature", "all"):
                checks += curvature_checks(pb, tol, cfg.constant_c)
            if sub in ("einstein", "all"):
                checks += einstein_checks(pb, tol)
    except InputError as exc:
        return RunResult(2, error=f"{type(exc).__name__}: {exc}")
    except DegenerateError as exc:
        return RunResult(3, error=f"{type(exc).__name__}: {exc}")
    except CheckError as exc:
        return RunResult(1, error=f"{type(exc).__name__}: {exc}")
    status = 0 if all(c.passed for c in checks) else 1
    return RunResult(status, checks)


def render_json(result: RunResult) -> str:
    return json.dumps(jsonable(result.report()), sort_keys=True, indent=2) + "\n"


def render_text(result: RunResult) -> str:
    lines = [f"{'check':<36}{'result':<8}{'violation':>14}", "-" * 58]
    for c in result.checks:
        lines.append(f"{c.name:<36}{'PASS' if c.passed else 'FAIL':<8}{c.violation:>14.3e}")
    rep = result.report()["summary"]
    lines.append("-" * 58)
    lines.append(f"passed {rep['passed']}  failed {rep['failed']}")
    if result.error:
        lines.append(f"error: {result.error}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="check", description="Para-complex geometry checks.")
    ap.add_argument("subcommand", choices=SUBCOMMANDS)
    ap.add_argument("--input", required=True)
    ap.add_argument("--tolerance", type=float)
    ap.add_argument("--output")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--constant-c", type=float, default=1.0, dest="constant_c")
    ap.add_argument("--samples", help="JSON list of points, each a list of [re, im] pairs")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    samples = None
    if args.samples is not None:
        try:
            samples = json.loads(args.samples)
        except json.JSONDecodeError as exc:
            print(f"error: --samples is not valid JSON ({exc.msg} at column {exc.colno})", file=sys.stderr)
            return 2
    try:
        cfg = RunConfig(args.subcommand, args.input, args.tolerance, args.output, args.format,
                        args.constant_c, samples)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = run(cfg)
    text = render_json(result) if cfg.format == "json" else render_text(result)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if result.error:
        print(f"error: {result.error}", file=sys.stderr)
    return result.status


if __name__ == "__main__":
    raise SystemExit(main())
