"""Command line interface.

Exit codes: 0 success, 2 precondition or guard violation, 3 resource
ceiling, 4 internal invariant failure (two routes that must agree did not;
always a bug or a discovery, reported loudly).

Reports are self-contained JSON embedding the config, the seed and the
library version; parameter grids can be emitted as CSV instead.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .brill_noether import (
    codim_bound_double,
    codim_bound_single,
    new_comps,
    rho,
    rho1,
    rho2,
    rho_omega,
)
from .campaigns import (
    DegenerationConfig,
    InjectivityCampaignConfig,
    PencilCampaignConfig,
    ResidueCampaignConfig,
    SmoothnessConfig,
    StrataSweepConfig,
    report_bytes,
    run_degeneration_campaign,
    run_extraction_campaign,
    run_injectivity_campaign,
    run_pencil_campaign,
    run_residue_campaign,
    run_smoothness_campaign,
    run_strata_sweep,
)
from .enumeration import (
    DEFAULT_CEILING,
    fit_dimension,
    strata_counts,
)
from .errors import (
    CeilingExceeded,
    FitMismatch,
    InvariantViolation,
    PreconditionError,
)
from .fields import GF, QQ
from .forms import standard_form
from .residues import (
    RationalFunction,
    SplitBundle,
    build_residue_model,
    global_section_subspace,
    recovered_intersection_dim,
)
from .polynomials import Polynomial
from .serialize import (
    field_from_json,
    form_to_json,
    matrix_from_json,
    scalar_from_json,
    scalar_to_json,
)
from .tangent import FormPencil, dependence_space, pencil_rank_drop


def _parse_int_or_range(text: str):
    if ":" in text:
        lo, hi = text.split(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _field_from_flag(flag: str):
    if flag in ("Q", "q"):
        return QQ
    q = int(flag)
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise PreconditionError(f"{q} is not a prime power")
            return GF(p, e)
        p += 1
    return GF(q)


def _emit(args, payload, grid_rows=None, grid_header=None):
    if getattr(args, "format", "json") == "csv" and grid_rows is not None:
        lines = [",".join(grid_header)]
        lines.extend(",".join(str(x) for x in row) for row in grid_rows)
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _wrap_config(args, body: dict) -> dict:
    return {
        "version": __version__,
        "seed": getattr(args, "seed", 0),
        "config": {
            key: val
            for key, val in vars(args).items()
            if key not in ("func", "out") and val is not None
        },
        **body,
    }


# ------------------------------------------------------------ rho commands


def _grid_command(args, names, fn):
    ranges = [_parse_int_or_range(getattr(args, name.replace("-", "_"))) for name in names]
    single = all(len(r) == 1 for r in ranges)
    rows = []

    def rec(prefix, remaining):
        if not remaining:
            rows.append(prefix + [fn(*prefix)])
            return
        for v in remaining[0]:
            rec(prefix + [v], remaining[1:])

    rec([], ranges)
    if single:
        payload = _wrap_config(args, {"value": rows[0][-1]})
        _emit(args, payload)
    else:
        payload = _wrap_config(
            args, {"grid": [dict(zip(names + ["value"], row)) for row in rows]}
        )
        _emit(args, payload, grid_rows=rows, grid_header=names + ["value"])
    return 0


def cmd_rho(args):
    return _grid_command(args, ["r", "d", "k", "g"], rho)


def cmd_rho_omega(args):
    return _grid_command(args, ["k", "g"], rho_omega)


def cmd_rho1(args):
    return _grid_command(args, ["d", "k", "g", "delta"], rho1)


def cmd_rho2(args):
    return _grid_command(args, ["d", "k", "g"], rho2)


def cmd_new_comps(args):
    return _grid_command(args, ["k", "g", "delta", "m"], new_comps)


def cmd_codim_single(args):
    return _grid_command(args, ["k", "r", "s", "t", "delta"], codim_bound_single)


def cmd_codim_double(args):
    return _grid_command(args, ["k", "r", "s", "t"], codim_bound_double)


# ---------------------------------------------------------- strata command


def cmd_strata(args):
    qs = (
        [int(x) for x in args.q_list.split(",")]
        if args.q_list
        else [int(args.field)]
    )
    reports = {}
    fit_payload = None
    for q in qs:
        field = _field_from_flag(str(q))
        form = standard_form(field, args.r, args.delta)
        rep = strata_counts(form, args.k, ceiling=args.ceiling, jobs=args.jobs)
        reports[str(q)] = rep.to_json_dict()
    if args.fit and len(qs) >= 2:
        samples = {q: reports[str(q)]["total"] for q in qs}
        fit = fit_dimension(samples)
        fit_payload = {
            "degree": fit.degree,
            "coefficients": list(fit.coefficients),
            "holdout": list(fit.holdout),
        }
    payload = _wrap_config(args, {"reports": reports, "fit": fit_payload})
    _emit(args, payload)
    return 0


# ----------------------------------------------------- pencil-check command


def _load_json_input(args):
    if args.input == "-" or args.input is None:
        return json.load(sys.stdin)
    with open(args.input) as fh:
        return json.load(fh)


def cmd_pencil_check(args):
    obj = _load_json_input(args)
    psi1 = matrix_from_json(obj["psi1"])
    psi2 = matrix_from_json(obj["psi2"])
    pencil = FormPencil.build(psi1, psi2)
    dep = dependence_space(pencil)
    cert = pencil_rank_drop(pencil)
    agree = (dep.nrows > 0) == cert.dependent
    witness = None
    if cert.witness_lambda is not None:
        wf = cert.witness_field
        witness = [scalar_to_json(wf, cert.witness_lambda[0]),
                   scalar_to_json(wf, cert.witness_lambda[1])]
    payload = _wrap_config(
        args,
        {
            "dependent": cert.dependent,
            "dependence_dim": dep.nrows,
            "witness_lambda": witness,
            "witness_field_degree": cert.witness_field_degree(),
            "existence_only": cert.existence_only,
        },
    )
    _emit(args, payload)
    if not agree:
        raise InvariantViolation(
            "rank route and criterion route disagree on this pencil"
        )
    return 0


# --------------------------------------------------------- p1-form command


def cmd_p1_form(args):
    obj = _load_json_input(args)
    field = field_from_json(obj["field"])
    bundle = SplitBundle(int(obj["a"]), int(obj["b"]))
    dpts = [scalar_from_json(field, x) for x in obj["D"]]
    dels = [scalar_from_json(field, x) for x in obj.get("Delta", [])]
    phi_obj = obj["phi"]
    num = Polynomial(field, [scalar_from_json(field, c) for c in phi_obj["num"]])
    den = Polynomial(field, [scalar_from_json(field, c) for c in phi_obj.get("den", [1])])
    phi = RationalFunction(num, den)
    model = build_residue_model(bundle, dpts, dels, phi)
    sections = global_section_subspace(model)
    payload = _wrap_config(
        args,
        {
            "gram": form_to_json(model.form),
            "dim": model.dim,
            "order_zero_dim": model.order_zero_tails.dim,
            "order_zero_radical": 2 * len(model.dpoints),
            "section_dim": sections.dim,
            "section_isotropic": True,
            "section_meet_order_zero": recovered_intersection_dim(model, sections),
            "nondegenerate": model.form.is_nondegenerate(),
        },
    )
    _emit(args, payload)
    return 0


# ----------------------------------------------------------- campaign cmds


def _campaign_exit(args, report):
    _emit(args, report)
    if report.get("violations"):
        raise InvariantViolation(
            f"{len(report['violations'])} violation(s); see report"
        )
    return 0


def cmd_sweep_strata(args):
    config = StrataSweepConfig(
        r_max=args.r_max,
        k_max=args.k_max,
        q_list=tuple(int(x) for x in args.q_list.split(",")),
        ceiling=args.ceiling,
        seed=args.seed,
    )
    report = run_strata_sweep(config, jobs=args.jobs)
    return _campaign_exit(args, report)


def cmd_degeneration(args):
    config = DegenerationConfig(
        r_max=args.r_max,
        k_max=args.k_max,
        q_list=tuple(int(x) for x in args.q_list.split(",")),
        seed=args.seed,
    )
    return _campaign_exit(args, run_degeneration_campaign(config))


def cmd_pencil_campaign(args):
    config = PencilCampaignConfig(
        fields=tuple(args.fields.split(",")),
        random_per_field=args.count,
        rational_count=args.rational_count,
        adversarial_count=args.adversarial,
        seed=args.seed,
    )
    report = run_pencil_campaign(config)
    if args.extract:
        extraction = run_extraction_campaign(report)
        report["extraction"] = extraction
        report["violations"] = report["violations"] + extraction["violations"]
        del report["dependent_instances"]
    return _campaign_exit(args, report)


def cmd_smoothness(args):
    config = SmoothnessConfig(
        q=int(args.field), r=args.r, k=args.k, pairs=args.pairs, seed=args.seed
    )
    return _campaign_exit(args, run_smoothness_campaign(config))


def cmd_residue_campaign(args):
    config = ResidueCampaignConfig(
        fields=tuple(args.fields.split(",")), seed=args.seed
    )
    return _campaign_exit(args, run_residue_campaign(config))


def cmd_injectivity(args):
    config = InjectivityCampaignConfig(
        fields=tuple(args.fields.split(",")),
        trials_per_field=args.count,
        deg_d=args.deg_d,
        seed=args.seed,
    )
    return _campaign_exit(args, run_injectivity_campaign(config))


# -------------------------------------------------------------- arg wiring


def _add_common(p, seed=True, jobs=False, ceiling=False):
    p.add_argument("--out", help="write the report to this path instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    if seed:
        p.add_argument("--seed", type=int, default=0)
    if jobs:
        p.add_argument("--jobs", type=int, default=1)
    if ceiling:
        p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symgrass",
        description="Exact computation with isotropic subspaces, form pencils, "
        "residue pairings on the line, and expected-dimension formulas.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rho", help="expected dimension rho(r,d,k,g); ranges lo:hi give grids")
    for name in ("r", "d", "k", "g"):
        p.add_argument(f"--{name}", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("rho-omega", help="canonical-determinant expected dimension")
    p.add_argument("--k", required=True)
    p.add_argument("--g", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_rho_omega)

    p = sub.add_parser("rho1", help="single-twist corrected bound")
    for name in ("d", "k", "g", "delta"):
        p.add_argument(f"--{name}", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_rho1)

    p = sub.add_parser("rho2", help="double-twist corrected bound")
    for name in ("d", "k", "g"):
        p.add_argument(f"--{name}", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_rho2)

    p = sub.add_parser("new-comps", help="strictly-bigger-dimension predicate")
    for name in ("k", "g", "delta", "m"):
        p.add_argument(f"--{name}", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_new_comps)

    p = sub.add_parser("codim-single", help="one-form intersection codimension bound")
    for name in ("k", "r", "s", "t", "delta"):
        p.add_argument(f"--{name}", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_codim_single)

    p = sub.add_parser("codim-double", help="two-form intersection codimension bound")
    for name in ("k", "r", "s", "t"):
        p.add_argument(f"--{name}", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_codim_double)

    p = sub.add_parser("strata", help="stratified isotropic counts for the standard form")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--field", default="2", help="single field order q")
    p.add_argument("--q-list", dest="q_list", help="comma separated field orders")
    p.add_argument("--fit", action="store_true", help="interpolate totals across the q list")
    _add_common(p, jobs=True, ceiling=True)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("pencil-check", help="dependence report for a pencil of pairings")
    p.add_argument("--input", help="JSON file with psi1, psi2 (default stdin)")
    _add_common(p)
    p.set_defaults(func=cmd_pencil_check)

    p = sub.add_parser("p1-form", help="residue-pairing model on the line")
    p.add_argument("--input", help="JSON model description (default stdin)")
    _add_common(p)
    p.set_defaults(func=cmd_p1_form)

    p = sub.add_parser("sweep-strata", help="full stratified-count campaign")
    p.add_argument("--r-max", type=int, default=6)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--q-list", dest="q_list", default="2,3,5,7")
    _add_common(p, jobs=True, ceiling=True)
    p.set_defaults(func=cmd_sweep_strata)

    p = sub.add_parser("degeneration", help="witness-family campaign")
    p.add_argument("--r-max", type=int, default=5)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--q-list", dest="q_list", default="2,3")
    _add_common(p)
    p.set_defaults(func=cmd_degeneration)

    p = sub.add_parser("pencil-campaign", help="rank route vs criterion route")
    p.add_argument("--fields", default="5,7,Q")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--rational-count", dest="rational_count", type=int, default=100)
    p.add_argument("--adversarial", type=int, default=50)
    p.add_argument("--extract", action="store_true",
                   help="run eigenvector extraction on dependent instances")
    _add_common(p)
    p.set_defaults(func=cmd_pencil_campaign)

    p = sub.add_parser("smoothness", help="two-form tangent criterion campaign")
    p.add_argument("--field", default="3")
    p.add_argument("--r", type=int, default=4)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--pairs", type=int, default=20)
    _add_common(p)
    p.set_defaults(func=cmd_smoothness)

    p = sub.add_parser("residue-campaign", help="residue model sweep")
    p.add_argument("--fields", default="Q,7")
    _add_common(p)
    p.set_defaults(func=cmd_residue_campaign)

    p = sub.add_parser("injectivity", help="section injectivity campaign")
    p.add_argument("--fields", default="Q,7")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--deg-d", dest="deg_d", type=int, default=3)
    _add_common(p)
    p.set_defaults(func=cmd_injectivity)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CeilingExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (InvariantViolation, FitMismatch) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 4
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
