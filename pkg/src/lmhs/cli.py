"""Command-line interface.

    lmhs <subcommand> --input FILE [--format text|json] [--seed N]
         [--budget N] [--truncation N] [--cone NAME] [--out FILE]

Exit codes: 0 = completed with positive verdict, 2 = completed with a
negative verdict (e.g. not polarized, no ample point found), 1 = input or
usage error.
"""

from __future__ import annotations

import argparse
import sys

from .bundle import (
    AnalysisReport,
    Config,
    DegenerationInput,
    INPUT_SCHEMA,
    emit_report,
    matrix_to_json,
    parse_input,
    poly_matrix_to_json,
)
from .errors import LmhsError
from .hodge import MixedHodgeStructure, is_r_split, kappa
from .linalg import GMatrix, GScalar, format_scalar, log_unipotent
from .periods import (
    build_lift,
    factor_monodromy,
    horizontal_basis,
    horizontal_coefficients,
    ipr_check,
    log_differential_map,
    multiplier,
    schubert_coordinate,
    tau,
)
from .sl2 import (
    LatticeData,
    ample_cone_search,
    chern_form,
    extension_space,
    grading_element,
    sl2_complete,
    torus_decomposition,
)
from .symbolic import LogPolynomial
from .weights import (
    cone_weight_filtration,
    maximal_weight_set,
    polarization_check,
    weight_equivalence,
)
from .errors import InvariantError, NonDecomposable, NoTriple


def _mhs_for(bundle: DegenerationInput, cone_name=None):
    cone = bundle.cone(cone_name)
    n = bundle.lattice.weight
    w, cert = cone_weight_filtration(
        cone, n, seed=bundle.config.seed
    )
    if bundle.limit_filtration is None:
        raise InvariantError("this command needs a limit_filtration")
    mhs = MixedHodgeStructure(bundle.lattice, w, bundle.limit_filtration)
    return cone, w, mhs


def cmd_deligne(bundle: DegenerationInput, args) -> AnalysisReport:
    cone, w, mhs = _mhs_for(bundle, args.cone)
    bg = mhs.bigrading()
    dims = {f"{p},{q}": d for (p, q), d in bg.dims().items()}
    lie_dims = {
        f"{p},{q}": d for (p, q), d in mhs.lie_bigrading().dims().items()
    }
    return AnalysisReport(
        command="deligne",
        verdict_code="ok",
        results={
            "diamond": {k: v for k, v in sorted(dims.items())},
            "lie_dims": lie_dims,
            "r_split": is_r_split(bg),
            "weight_dims": {
                str(l): w.at(l).dim()
                for l in range(w.min_level() - 1, w.max_level() + 1)
            },
        },
    )


def cmd_check_lmhs(bundle: DegenerationInput, args) -> AnalysisReport:
    cone, w, mhs = _mhs_for(bundle, args.cone)
    report = polarization_check(
        w, bundle.limit_filtration, cone, bundle.lattice.weight
    )
    results = {
        "validation": "valid",
        "polarized": report.verdict,
        "n_in_g_minus1_minus1": report.in_g_minus1_minus1,
        "n_shifts_f": report.shifts_f,
        "hr_table": [
            {
                "k": lv["k"],
                "prim_dim": lv["prim_dim"],
                "hr1": lv["hr1"],
                "hr2": lv["hr2"],
            }
            for lv in report.per_level
        ],
    }
    return AnalysisReport(
        command="check-lmhs",
        verdict_code="ok" if report.verdict else "negative",
        results=results,
    )


def cmd_weight_compat(bundle: DegenerationInput, args) -> AnalysisReport:
    n = bundle.lattice.weight
    cones = bundle.all_cones()
    filtrations = {}
    for name, cone in sorted(cones.items()):
        w, _ = cone_weight_filtration(cone, n, seed=bundle.config.seed)
        filtrations[name] = w
    table = {}
    for a in sorted(cones):
        for b in sorted(cones):
            if a == b or not set(cones[a].label) <= set(cones[b].label):
                continue
            rep = weight_equivalence(
                cones[a], cones[b], n, seed=bundle.config.seed
            )
            table[f"{a}<={b}"] = {
                "equal": rep.equal,
                "criterion_c1": rep.criterion,
                "agrees": rep.agrees,
                "lemma_c2": rep.lemma_c2_confirmed,
            }
    classes = []
    seen = set()
    for name in sorted(cones):
        if name in seen:
            continue
        cls = [
            other
            for other in sorted(cones)
            if filtrations[other] == filtrations[name]
        ]
        seen.update(cls)
        labels, _ = maximal_weight_set(
            [cones[c] for c in cls], filtrations[name], n,
            seed=bundle.config.seed,
        )
        classes.append({"cones": cls, "i_w": list(labels)})
    return AnalysisReport(
        command="weight-compat",
        verdict_code="ok" if all(v["agrees"] for v in table.values()) else "negative",
        results={
            "weight_dims": {
                name: {
                    str(l): filtrations[name].at(l).dim()
                    for l in range(
                        filtrations[name].min_level() - 1,
                        filtrations[name].max_level() + 1,
                    )
                }
                for name in sorted(cones)
            },
            "equivalences": table,
            "weight_classes": classes,
        },
    )


def cmd_sl2(bundle: DegenerationInput, args) -> AnalysisReport:
    cone, w, mhs = _mhs_for(bundle, args.cone)
    lie = mhs.lie_bigrading()
    y = grading_element(lie)
    scale = bundle.config.kappa_scale
    try:
        triple = sl2_complete(cone.interior_element(), y, lie)
    except NoTriple as exc:
        return AnalysisReport(
            command="sl2",
            verdict_code="negative",
            results={"error": str(exc)},
        )
    kappa_table = {
        f"kappa(M,N_{i})": format_scalar(kappa(triple.m, n_i, scale))
        for i, n_i in zip(cone.label, cone.generators)
    }
    kappa_table["kappa(Y,Y)"] = format_scalar(kappa(y, y, scale))
    return AnalysisReport(
        command="sl2",
        verdict_code="ok",
        results={
            "y": matrix_to_json(y),
            "m": matrix_to_json(triple.m),
            "n": matrix_to_json(triple.n),
            "degenerate": triple.degenerate,
            "kappa_table": kappa_table,
        },
    )


def _lambda_from_monodromy(bundle, mhs, level):
    """Project unipotent monodromy logs onto the level slice
    ``(+)_{p+q=-level, p<0} g^{p,q}``."""
    adapter = mhs.frame()
    gens = []
    for g in bundle.monodromy_generators:
        try:
            c = log_unipotent(g)
        except Exception:
            continue
        proj = adapter.mask(
            c, lambda p, q: p < 0 and p + q == -level
        )
        if not proj.is_zero():
            gens.append(proj)
    return LatticeData(generators=tuple(gens))


def cmd_extension_tower(bundle: DegenerationInput, args) -> AnalysisReport:
    cone, w, mhs = _mhs_for(bundle, args.cone)
    lie = mhs.lie_bigrading()
    spread = w.max_level() - w.min_level()
    levels = {}
    decomposition = None
    for a in range(1, max(spread, 1) + 1):
        space = extension_space(lie, a)
        polarized = extension_space(lie, a, cone)
        levels[str(a)] = {
            "dim": space.dim(),
            "polarized_dim": polarized.dim(),
        }
        if a == 1 and bundle.monodromy_generators:
            lam = _lambda_from_monodromy(bundle, mhs, 1)
            if lam.generators and space.dim() > 0:
                try:
                    dec = torus_decomposition(
                        space, lam, bundle.lattice.dim
                    )
                    decomposition = {
                        "d1": dec.d1,
                        "d2": dec.d2,
                        "d3": dec.d3,
                        "lattice_rank": len(lam.generators),
                    }
                except NonDecomposable as exc:
                    decomposition = {"error": str(exc)}
    return AnalysisReport(
        command="extension-tower",
        verdict_code="ok",
        results={"levels": levels, "level1_torus": decomposition},
    )


def cmd_ample_cone(bundle: DegenerationInput, args) -> AnalysisReport:
    cone, w, mhs = _mhs_for(bundle, args.cone)
    lie = mhs.lie_bigrading()
    result = ample_cone_search(
        cone,
        lie,
        budget=bundle.config.budget,
        seed=bundle.config.seed,
        scale=bundle.config.kappa_scale,
    )
    results = {
        "found": result.found,
        "reason": result.reason,
        "steps": result.steps,
    }
    if result.point is not None:
        results["point"] = [format_scalar(GScalar(c)) for c in result.point]
    if result.found:
        results["kappa_values"] = result.kappa_values
        results["m"] = matrix_to_json(result.triple.m)
        chern = chern_form(
            result.triple.m, lie, cone, bundle.config.kappa_scale
        )
        results["chern"] = {
            "gram": poly_matrix_to_json(chern.gram),
            "negative_definite": chern.negative_definite,
            "dim": chern.basis_dim,
        }
    return AnalysisReport(
        command="ample-cone",
        verdict_code="ok" if result.found else "negative",
        results=results,
    )


def cmd_period_report(bundle: DegenerationInput, args) -> AnalysisReport:
    if bundle.xi is None:
        raise InvariantError("period-report needs a xi section")
    cone, w, mhs = _mhs_for(bundle, args.cone)
    lie = mhs.lie_bigrading()
    scale = bundle.config.kappa_scale
    frame = build_lift(
        cone,
        bundle.limit_filtration,
        (bundle.xi.form, bundle.xi.matrix),
        truncation=bundle.config.truncation_order,
        w=w,
    )
    x = schubert_coordinate(frame)
    xt = frame.x_tilde()
    basis = horizontal_basis(lie, cone, scale)
    coeffs = horizontal_coefficients(x, basis, scale)
    taus = []
    for mat, tag, kappas in basis.logarithmic:
        expr = tau(mat, x, cone, scale)
        taus.append(
            {
                "tag": list(tag),
                "divisor": {str(i): e for i, e in expr.monomial},
                "exponent": expr.exponent.to_json(),
            }
        )
    multipliers = []
    for k, gamma in enumerate(bundle.monodromy_generators):
        me = factor_monodromy(
            gamma, mhs, truncation=bundle.config.truncation_order
        )
        for mat, tag, _ in basis.logarithmic:
            expr = multiplier(
                me, mat, x, mhs, scale, bundle.config.truncation_order
            )
            multipliers.append(
                {
                    "generator": k,
                    "tag": list(tag),
                    "exponent": expr.exponent.to_json(),
                    "monomial": {str(i): e for i, e in expr.monomial},
                }
            )
    ipr = ipr_check(frame)
    torelli = log_differential_map(frame, basis, scale)
    return AnalysisReport(
        command="period-report",
        verdict_code="ok",
        results={
            "x": poly_matrix_to_json(x),
            "x_tilde": poly_matrix_to_json(xt),
            "period_matrix": poly_matrix_to_json(frame.period_matrix()),
            "coefficients": [
                {
                    "kind": c["kind"],
                    "tag": list(c["tag"]) if c["tag"] else None,
                    "eps": c["eps"].to_json(),
                }
                for c in coeffs
            ],
            "taus": taus,
            "multipliers": multipliers,
            "ipr": {"holds": ipr.holds, "violations": ipr.violations},
            "torelli": {
                "injective": torelli.injective,
                "w_block_rank": torelli.w_block_rank,
                "w_directions": torelli.w_directions,
                "generators_independent": torelli.generators_independent,
                "dni_verified": torelli.dni_verified,
            },
        },
    )


def genus2_input_document() -> dict:
    """The built-in fixture as an input file (round-trips through
    parse_input)."""
    from .genus2 import builtin_genus2
    from .bundle import poly_entry_to_json

    g = builtin_genus2()
    family = g.group_family()
    return {
        "schema": INPUT_SCHEMA,
        "lattice": {
            "dim": 4,
            "weight": 1,
            "q": matrix_to_json(g.lattice.q),
            "hodge_numbers": [2, 2],
        },
        "nilpotents": [
            {"name": "N1", "matrix": matrix_to_json(g.n_op)}
        ],
        "cones": {"sigma": [0]},
        "limit_filtration": {
            "0": "full",
            "1": [
                [format_scalar(e) for e in col]
                for col in g.f.at(1).basis_columns()
            ],
            "2": "zero",
        },
        "xi": {
            "form": "group",
            "symbols": {"alpha": "w", "lam": "w", "nu": "w"},
            "matrix": [
                [poly_entry_to_json(e) for e in row]
                for row in family.entries
            ],
        },
        "monodromy_generators": [
            matrix_to_json(m)
            for m in (g.gamma(1, 0, 0), g.gamma(0, 1, 0), g.gamma(0, 0, 1))
        ],
        "config": Config().to_json(),
    }


def cmd_example(args) -> AnalysisReport:
    if args.name != "genus2":
        raise InvariantError(f"unknown example {args.name!r}")
    return AnalysisReport(
        command="example",
        verdict_code="ok",
        results={"input": genus2_input_document()},
    )


COMMANDS = {
    "deligne": cmd_deligne,
    "check-lmhs": cmd_check_lmhs,
    "weight-compat": cmd_weight_compat,
    "sl2": cmd_sl2,
    "extension-tower": cmd_extension_tower,
    "ample-cone": cmd_ample_cone,
    "period-report": cmd_period_report,
}


def run_command(command: str, bundle: DegenerationInput, args) -> AnalysisReport:
    if command not in COMMANDS:
        raise InvariantError(f"unknown command {command!r}")
    return COMMANDS[command](bundle, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmhs",
        description=(
            "Exact analysis of limiting mixed Hodge structures: Deligne "
            "bigradings, polarization certificates, sl2 data, extension "
            "tori and symbolic period matrices."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=True, help="input JSON bundle")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, help="override config.seed")
        p.add_argument("--budget", type=int, help="override config.budget")
        p.add_argument(
            "--truncation", type=int, help="override config.truncation_order"
        )
        p.add_argument("--cone", help="named cone to analyze")

    for name in COMMANDS:
        p = sub.add_parser(name)
        common(p)
    ex = sub.add_parser("example", help="emit a built-in input bundle")
    ex.add_argument("name", choices=("genus2",))
    ex.add_argument("--format", choices=("text", "json"), default="json")
    ex.add_argument("--out", help="write the bundle here instead of stdout")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "example":
            report = cmd_example(args)
            payload = report.results["input"]
            import json as _json

            blob = (
                _json.dumps(payload, sort_keys=True, indent=2) + "\n"
            ).encode("utf-8")
        else:
            bundle = parse_input(args.input)
            if args.seed is not None:
                bundle.config.seed = args.seed
            if args.budget is not None:
                bundle.config.budget = args.budget
            if args.truncation is not None:
                bundle.config.truncation_order = args.truncation
            report = run_command(args.command, bundle, args)
            blob = emit_report(report, args.format)
        if args.out:
            with open(args.out, "wb") as handle:
                handle.write(blob)
        else:
            sys.stdout.write(blob.decode("utf-8"))
    except LmhsError as exc:
        sys.stderr.write(f"error [{exc.code}]: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error [io]: {exc}\n")
        return 1
    if args.command != "example" and report.verdict_code == "negative":
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
