"""Command-line front end.

Subcommands
-----------
decompose <form-file>        1+7+27 splitting of a 3-form
lemma --m1 --m2 --m3 [--mu]  eigenvalue-constrained torsion family
values --mu                  enumeration of T(theta1, theta2, theta3)
kernels                      dimensions of spinor-annihilator spaces
det-e2 --b --mu              restricted-determinant closed form + brute force
group-report <algebra-file>  full exact pipeline on a metric Lie algebra
kahler --a ...               Ricci spectrum of the explicit Kaehler metric
theorem1 --a ...             5-dimensional bundle assembly + residual panel
selftest                     curated battery across all modules

Exit codes: 0 all checks pass, 1 a verification item failed, 2 usage or
input-file error.  JSON output is byte-deterministic: keys sorted, exact
rationals as "p/q" strings in lowest terms, floating-point values in
12-significant-digit scientific notation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import classifier, pipeline
from .bundle import (assemble_N5, eigenvalue_multiplicity_gap, kahler_coframe,
                     kahler_ricci_eigenvalues, strominger_check)
from .forms import Form, parse_form
from .g2 import project3
from .liegroup import (abelian, curvature, parse_algebra, parallel_fields,
                       r4_su2, su2, with_torsion)
from .liouville import solve_liouville
from .pipeline import form_mapping, rational_str
from .spin import OCTONION_TRIPLES, standard_rep


@dataclass
class RunConfig:
    """Parsed invocation: one subcommand plus its inputs and knobs."""

    command: str
    inputs: tuple = ()
    m: tuple | None = None
    mu: Fraction | None = None
    b: Fraction | None = None
    a: float = 0.5
    domain: tuple = (1.0, 2.0)
    grid: int = 400
    points: int = 10
    seed: int = 7
    tol: float = 1e-6
    fmt: str = "text"
    report_path: str | None = None
    placement: tuple | None = None


def sci(x) -> str:
    return f"{float(x):.11e}"


def _render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v if v != {} and v != [] else '-'}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.extend(_render_text(v, indent + 1))
                lines.append("")
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def emit(payload: dict, cfg: RunConfig) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    if cfg.report_path:
        with open(cfg.report_path, "w") as fh:
            fh.write(text + "\n")
    if cfg.fmt == "json":
        print(text)
    else:
        print("\n".join(line for line in _render_text(payload) if line is not None))


# ------------------------------------------------------------ subcommands


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc.strerror}") from exc


def cmd_decompose(cfg: RunConfig):
    form = parse_form(_read(cfg.inputs[0]), 7)
    if form.degrees() not in ([], [3]):
        raise ValueError(f"expected a 3-form, found degrees {form.degrees()}")
    parts = project3(form)
    recomposed = parts[1] + parts[7] + parts[27] == form
    payload = {
        "command": "decompose",
        "input": cfg.inputs[0],
        "components": {str(k): form_mapping(v) for k, v in parts.items()},
        "norms2": {str(k): rational_str(v.norm2()) for k, v in parts.items()},
        "recomposes": recomposed,
        "passed": recomposed,
    }
    return payload, recomposed


def cmd_lemma(cfg: RunConfig):
    m = classifier.EigenTriple.of(*cfg.m)
    family = classifier.solve_family(m)
    payload = {
        "command": "lemma",
        "m": [rational_str(x) for x in m.values],
        "dimension": family.dimension,
    }
    passed = family.dimension == 9
    if not family.is_empty():
        formulas = (family.a == m.a() and family.b == m.b() and family.c == 0)
        passed = passed and formulas
        payload.update({
            "a": rational_str(family.a),
            "b": rational_str(family.b),
            "c": rational_str(family.c),
            "formulas_match": formulas,
            "particular": form_mapping(family.particular),
            "directions": [form_mapping(d) for d in family.directions],
        })
    if cfg.mu is not None:
        roots = classifier.eigenvalue_roots(cfg.mu)
        admissible = all(x in roots for x in m.values)
        payload["mu"] = rational_str(cfg.mu)
        payload["roots_admissible"] = admissible
        payload["torsion_value"] = rational_str(
            classifier.torsion_value(m, cfg.mu))
    payload["passed"] = passed
    return payload, passed


def cmd_values(cfg: RunConfig):
    mu = cfg.mu if cfg.mu is not None else Fraction(7)
    table = classifier.torsion_value_enumeration(mu)
    fibers = classifier.torsion_value_fibers(mu)
    expected = ({Fraction(0): 3, mu / 2: 3, -mu / 2: 1, mu: 1} if mu
                else {Fraction(0): 8})
    passed = fibers == expected
    payload = {
        "command": "values",
        "mu": rational_str(mu),
        "assignments": [
            {"m": [rational_str(x) for x in pattern],
             "value": rational_str(val)}
            for pattern, val in sorted(table.items())
        ],
        "fibers": {rational_str(v): n for v, n in sorted(fibers.items())},
        "passed": passed,
    }
    return payload, passed


def cmd_kernels(cfg: RunConfig):
    dims = {k: classifier.kernel_dims(k) for k in (1, 2, 3, 4)}
    pinned = {1: 27, 3: 14, 4: 9}
    passed = all(dims[k] == v for k, v in pinned.items())
    payload = {
        "command": "kernels",
        "dims": {str(k): v for k, v in dims.items()},
        "pinned": {str(k): v for k, v in pinned.items()},
        "passed": passed,
    }
    return payload, passed


def cmd_det_e2(cfg: RunConfig):
    mu = cfg.mu if cfg.mu is not None else Fraction(7)
    b = cfg.b if cfg.b is not None else Fraction(5, 7) * mu
    try:
        report = classifier.det_e2(b, mu)
    except AssertionError as exc:
        payload = {"command": "det-e2", "b": rational_str(b),
                   "mu": rational_str(mu), "error": str(exc), "passed": False}
        return payload, False
    member = report["member"]
    payload = {
        "command": "det-e2",
        "b": rational_str(b),
        "mu": rational_str(mu),
        "closed_form": rational_str(report["closed_form"]),
        "member": None if member is None else [rational_str(x) for x in member],
        "det4": None if report["det4"] is None else rational_str(report["det4"]),
        "det6": None if report["det6"] is None else rational_str(report["det6"]),
        "cross_checked": member is not None,
        "passed": True,
    }
    return payload, True


def cmd_group_report(cfg: RunConfig):
    algebra = parse_algebra(_read(cfg.inputs[0]), n=7)
    report = pipeline.run(algebra, placement=cfg.placement)
    payload = {"command": "group-report", "input": cfg.inputs[0]}
    payload.update(report.to_dict())
    return payload, report.passed


def cmd_kahler(cfg: RunConfig):
    sol = solve_liouville(cfg.a, domain=cfg.domain, n=cfg.grid)
    cf = kahler_coframe(sol)
    rng = np.random.default_rng(cfg.seed)
    points = cf.sample_points(rng, cfg.points)
    eigs = kahler_ricci_eigenvalues(cf, points)
    target = 4.0 * cfg.a * cfg.a
    want = np.array([0.0, 0.0, target, target])
    deviation = float(np.max(np.abs(eigs - want)))
    passed = deviation <= cfg.tol
    payload = {
        "command": "kahler",
        "a": sci(cfg.a),
        "domain": [sci(x) for x in cfg.domain],
        "grid": cfg.grid,
        "points": cfg.points,
        "solver_residual": sci(sol.residual_norm),
        "target": sci(target),
        "eigenvalues": [[sci(x) for x in row] for row in eigs],
        "max_deviation": sci(deviation),
        "multiplicity_gap": bool(cfg.a == 0.0
                                 or eigenvalue_multiplicity_gap(eigs, target)),
        "tolerance": sci(cfg.tol),
        "passed": passed,
    }
    return payload, passed


def cmd_theorem1(cfg: RunConfig):
    sol = solve_liouville(cfg.a, domain=cfg.domain, n=cfg.grid)
    try:
        bundle = assemble_N5(sol)
    except ValueError as exc:
        payload = {"command": "theorem1", "a": sci(cfg.a),
                   "error": str(exc), "passed": False}
        return payload, False
    rng = np.random.default_rng(cfg.seed)
    points = bundle.total.sample_points(rng, cfg.points)
    rep = strominger_check(bundle, points)
    residuals = rep.residual_items()
    norm_ok = rep.torsion_norm_residual <= 1e-8
    others_ok = all(v <= cfg.tol for k, v in residuals.items()
                    if k != "torsion_norm")
    curved = cfg.a == 0.0 or rep.max_r_nabla > 0.01
    passed = norm_ok and others_ok and curved
    panel = bundle.panel
    payload = {
        "command": "theorem1",
        "a": sci(cfg.a),
        "grid": cfg.grid,
        "points": rep.points,
        "mu": sci(bundle.mu),
        "hypotheses": {
            "d_omega": sci(panel.d_omega),
            "dstar_omega": sci(panel.dstar_omega),
            "omega_wedge_omega": sci(panel.omega_wedge_omega),
            "f2_integrability": sci(panel.f2_integrability),
            "e2_integrability": sci(panel.e2_integrability),
            "snap_deviation": sci(panel.snap_deviation),
            "ricci_deviation": sci(panel.ricci_deviation),
            "potential_residual": sci(panel.potential_residual),
        },
        "residuals": {k: sci(v) for k, v in residuals.items()},
        "max_r_nabla": sci(rep.max_r_nabla),
        "non_flat": curved,
        "tolerance": sci(cfg.tol),
        "torsion_norm_tolerance": sci(1e-8),
        "passed": passed,
    }
    return payload, passed


# ------------------------------------------------------------ selftest


def _selftest_items():
    rep = standard_rep()
    w3 = Form(7, {k: Fraction(v) for k, v in OCTONION_TRIPLES.items()})
    spec = {(e.value, e.multiplicity) for e in rep.spectrum(w3)}
    yield ("spinor spectrum of the calibration form",
           spec == {(Fraction(-7), 1), (Fraction(1), 7)},
           ", ".join(f"{rational_str(v)} (x{m})" for v, m in sorted(spec)))

    from .g2 import lambda7_basis, lambda27_basis, standard_omega3
    psi0 = rep.find_psi0()
    ranks = (1, len(lambda7_basis()), len(lambda27_basis()))
    ann = all(all(x == 0 for x in rep.act(f, psi0)) for f in lambda27_basis())
    yield "splitting ranks (1, 7, 27)", ranks == (1, 7, 27), str(ranks)
    yield "traceless part annihilates the canonical spinor", ann, ""

    mu = Fraction(7)
    hi, lo = Fraction(6, 7) * mu, Fraction(-8, 7) * mu
    fam_ok = True
    for pattern in ((hi, hi, hi), (lo, hi, hi), (hi, lo, hi), (lo, lo, lo)):
        m = classifier.EigenTriple(*pattern)
        fam = classifier.solve_family(m)
        if fam.dimension != 9 or fam.a != m.a() or fam.b != m.b() or fam.c != 0:
            fam_ok = False
    yield "eigenvalue families have dimension 9 with matching invariants", fam_ok, ""

    dims = tuple(classifier.kernel_dims(k) for k in (1, 3, 4))
    yield "annihilator dimensions (27, 14, 9)", dims == (27, 14, 9), str(dims)

    fibers = classifier.torsion_value_fibers(mu)
    want = {Fraction(0): 3, mu / 2: 3, -mu / 2: 1, mu: 1}
    yield ("torsion value fibers {1, 3, 3, 1}", fibers == want,
           ", ".join(f"{rational_str(v)}: {n}" for v, n in sorted(fibers.items())))

    det_ok = True
    for b in (Fraction(5, 7) * mu, Fraction(0), Fraction(1)):
        r = classifier.det_e2(b, mu)
        if b == Fraction(5, 7) * mu and r["closed_form"] != 0:
            det_ok = False
        if r["member"] is not None and r["det6"] != 0:
            det_ok = False
    yield "restricted determinant closed form and degenerate b", det_ok, ""

    analysis = classifier.two_field_case_analysis(mu)
    two_ok = (analysis["branch_count"] == 2
              and analysis["first_template_matches"]
              and analysis["second_empty"]
              and analysis["exclusion_identities_hold"]
              and analysis["second_branch_torsion"].is_zero())
    yield "two-special-field branch analysis", two_ok, ""

    member = classifier.two_field_template(*classifier.branch1_member(mu, 1, 1, 1))
    omega_rep = classifier.omega_form_identities(member, mu)
    yield "parallel 2-form identities on a branch member", all(
        v for k, v in omega_rep.items() if isinstance(v, bool)), ""

    lam = Fraction(2)
    alg = su2(lam, n=7, slots=(1, 2, 3))
    cartan = alg.cartan_three_form()
    conn = with_torsion(alg, -cartan)
    curv = curvature(conn)
    flat = curv.is_nabla_flat()
    fields = parallel_fields(conn)
    yield "minus-Cartan connection is flat with 7 parallel fields", flat and len(fields) == 7, f"fields {len(fields)}"

    g2rep = pipeline.run(r4_su2(-7))
    yield "bundled algebra pipeline", (
        g2rep.passed and g2rep.mu == 7 and g2rep.norm2_torsion == 49
        and g2rep.norm2_d_omega3 == 294 and g2rep.t_theta == 7), ""
    yield "abelian pipeline", pipeline.run(abelian(7)).passed, ""
    bad = pipeline.run(su2(-7, n=7, slots=(1, 2, 3)))
    yield "misplaced calibration detected", not bad.cocalibrated, str(
        bad.cocalibration_residual)

    sol = solve_liouville(0.5, n=400)
    cf = kahler_coframe(sol)
    pts = cf.sample_points(np.random.default_rng(1), 5)
    eigs = kahler_ricci_eigenvalues(cf, pts)
    dev = float(np.max(np.abs(eigs - np.array([0, 0, 1.0, 1.0]))))
    yield "Kaehler Ricci spectrum", dev < 1e-6, f"deviation {dev:.2e}"

    bundle = assemble_N5(sol)
    srep = strominger_check(bundle, bundle.total.sample_points(
        np.random.default_rng(2), 5))
    res = srep.residual_items()
    ok = (res["torsion_norm"] <= 1e-8
          and all(v <= 1e-6 for k, v in res.items() if k != "torsion_norm")
          and srep.max_r_nabla > 0.01)
    yield "bundle residual panel", ok, f"max residual {max(res.values()):.2e}"


def cmd_selftest(cfg: RunConfig):
    items = []
    passed = True
    for name, ok, witness in _selftest_items():
        items.append({"name": name, "passed": bool(ok), "witness": witness})
        passed = passed and bool(ok)
    payload = {"command": "selftest", "items": items, "passed": passed}
    return payload, passed


# ------------------------------------------------------------ parsing


def _fraction(text):
    try:
        return Fraction(text)
    except ZeroDivisionError as exc:
        raise ValueError("zero denominator") from exc


def build_parser():
    top = argparse.ArgumentParser(
        prog="g2torsion",
        description="Exact and numerical verification toolkit for "
                    "torsion geometry on 7-manifolds and their reductions.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text",
                       dest="fmt")
        p.add_argument("--report", dest="report_path", default=None,
                       help="also write the JSON payload to this path")

    p = sub.add_parser("decompose", help="1+7+27 splitting of a 3-form file")
    p.add_argument("form_file")
    common(p)

    p = sub.add_parser("lemma", help="eigenvalue-constrained torsion family")
    p.add_argument("--m1", type=_fraction, required=True)
    p.add_argument("--m2", type=_fraction, required=True)
    p.add_argument("--m3", type=_fraction, required=True)
    p.add_argument("--mu", type=_fraction, default=None)
    common(p)

    p = sub.add_parser("values", help="torsion value enumeration")
    p.add_argument("--mu", type=_fraction, required=True)
    common(p)

    p = sub.add_parser("kernels", help="spinor annihilator dimensions")
    common(p)

    p = sub.add_parser("det-e2", help="restricted determinant closed form")
    p.add_argument("--b", type=_fraction, required=True)
    p.add_argument("--mu", type=_fraction, required=True)
    common(p)

    p = sub.add_parser("group-report", help="exact pipeline on an algebra file")
    p.add_argument("algebra_file")
    p.add_argument("--placement", default=None,
                   help="comma-separated frame permutation, e.g. 1,2,7,3,4,5,6")
    common(p)

    p = sub.add_parser("kahler", help="Ricci spectrum of the Kaehler metric")
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--domain", type=float, nargs=2, default=(1.0, 2.0))
    p.add_argument("--grid", type=int, default=400)
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--tol", type=float, default=1e-6)
    common(p)

    p = sub.add_parser("theorem1", help="bundle assembly and residual panel")
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--domain", type=float, nargs=2, default=(1.0, 2.0))
    p.add_argument("--grid", type=int, default=400)
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--tol", type=float, default=1e-6)
    common(p)

    p = sub.add_parser("selftest", help="curated battery across all modules")
    common(p)
    return top


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, fmt=args.fmt,
                    report_path=args.report_path)
    if args.command == "decompose":
        cfg.inputs = (args.form_file,)
    elif args.command == "lemma":
        cfg.m = (args.m1, args.m2, args.m3)
        cfg.mu = args.mu
    elif args.command == "values":
        cfg.mu = args.mu
    elif args.command == "det-e2":
        cfg.b, cfg.mu = args.b, args.mu
    elif args.command == "group-report":
        cfg.inputs = (args.algebra_file,)
        if args.placement:
            try:
                cfg.placement = tuple(int(x) for x in args.placement.split(","))
            except ValueError as exc:
                raise SystemExit(f"error: bad --placement: {exc}") from exc
    elif args.command in ("kahler", "theorem1"):
        if args.tol <= 0:
            raise SystemExit("error: --tol must be positive")
        if args.grid < 4:
            raise SystemExit("error: --grid must be at least 4")
        cfg.a = args.a
        cfg.domain = tuple(args.domain)
        cfg.grid, cfg.points = args.grid, args.points
        cfg.seed, cfg.tol = args.seed, args.tol
    return cfg


DISPATCH = {
    "decompose": cmd_decompose,
    "lemma": cmd_lemma,
    "values": cmd_values,
    "kernels": cmd_kernels,
    "det-e2": cmd_det_e2,
    "group-report": cmd_group_report,
    "kahler": cmd_kahler,
    "theorem1": cmd_theorem1,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        payload, passed = DISPATCH[cfg.command](cfg)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 2
        raise
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    emit(payload, cfg)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
