"""Reproducible verification campaigns.

Each runner takes a frozen config, uses only seeded randomness, and returns
a plain-JSON-able report dict embedding the config, the seed and the library
version. Identical configs produce byte-identical canonical reports whatever
the parallelism, because per-partition results merge in a fixed order.

Violation entries are collected rather than raised so a report can show all
failures at once; callers that want the loud path (exit code 4) check the
"violations" list.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction

from . import __version__
from .brill_noether import binom2
from .enumeration import (
    DEFAULT_CEILING,
    degeneration_witness,
    expected_stratum_degree,
    expected_total_degree,
    fit_from_polynomial,
    gaussian_binomial,
    strata_counts,
    stratum_count_polynomial,
    stratum_window,
    SubspaceStream,
    total_count_polynomial,
)
from .errors import NoWitnessNeeded, SplitFailure
from .fields import Field, GF, QQ
from .forms import (
    AlternatingForm,
    Subspace,
    is_isotropic,
    radical_intersection_dim,
    random_symplectic_form,
    standard_form,
)
from .jordan import generalized_jordan_form, jordan_matrix
from .matrices import Matrix
from .polynomials import Polynomial
from .residues import (
    RationalFunction,
    SplitBundle,
    build_residue_model,
    global_section_subspace,
    h0_twist,
    pencil_injectivity,
    recovered_intersection_dim,
)
from .tangent import (
    FormPencil,
    dependence_space,
    extract_dependence_vectors,
    msg_smoothness_at,
    pencil_rank_drop,
)


def report_bytes(report: dict) -> bytes:
    """Canonical byte serialization used for determinism comparisons."""
    return (json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n").encode()


def _field_label(field: Field) -> str:
    return "Q" if field == QQ else str(field.order)


def _parse_field(label) -> Field:
    if label in ("Q", "q", None):
        return QQ
    return GF(int(label)) if _is_prime(int(label)) else _ext_field(int(label))


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _ext_field(q):
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            return GF(p, e)
        p += 1
    return GF(q)


# ------------------------------------------------------------- strata sweep


@dataclass(frozen=True)
class StrataSweepConfig:
    r_max: int = 6
    k_max: int = 4
    q_list: tuple = (2, 3, 5, 7)
    ceiling: int = DEFAULT_CEILING
    seed: int = 0

    def to_dict(self):
        d = asdict(self)
        d["q_list"] = list(self.q_list)
        return d


def run_strata_sweep(config: StrataSweepConfig, jobs: int = 1) -> dict:
    """Enumerated stratified counts versus the counting polynomials.

    For every (r <= r_max, delta, k <= min(k_max, r - delta)) and every q in
    the config: per-stratum enumerated counts must equal the closed-form
    counting polynomial values; nonzero strata must fill exactly the
    admissible window; the polynomial degrees must equal the dimension
    formulas; the interpolation fit (oversampled from the polynomial and
    validated on a held-out prime) must recover the same degrees. An extra
    emptiness probe at k = r - delta + 1 checks the nonemptiness boundary.
    """
    results = []
    violations = []
    for r in range(1, config.r_max + 1):
        for delta in range(0, r // 2 + 1):
            kmax = min(config.k_max, r - delta)
            for k in range(1, kmax + 1):
                entry = _sweep_entry(config, r, delta, k, jobs, violations)
                results.append(entry)
            # nonemptiness boundary: one step past r - delta must be empty
            k_empty = r - delta + 1
            if k_empty <= r:
                probe_q = config.q_list[0]
                field = GF(probe_q) if _is_prime(probe_q) else _ext_field(probe_q)
                form = standard_form(field, r, delta)
                rep = strata_counts(form, k_empty, ceiling=config.ceiling, jobs=jobs)
                if rep.total != 0:
                    violations.append(
                        {
                            "kind": "nonempty-beyond-bound",
                            "r": r,
                            "delta": delta,
                            "k": k_empty,
                            "q": probe_q,
                            "total": rep.total,
                        }
                    )
                results.append(
                    {
                        "r": r,
                        "delta": delta,
                        "k": k_empty,
                        "boundary_probe": True,
                        "per_q": {str(probe_q): {"total": rep.total, "strata": {}}},
                    }
                )
    return {
        "campaign": "strata-sweep",
        "version": __version__,
        "config": config.to_dict(),
        "results": results,
        "violations": violations,
    }


def _sweep_entry(config, r, delta, k, jobs, violations):
    p = r - 2 * delta
    lo, hi = stratum_window(r, delta, k)
    predicted = {
        i: stratum_count_polynomial(r, delta, k, i) for i in range(lo, hi + 1)
    }
    total_poly = total_count_polynomial(r, delta, k)
    entry = {
        "r": r,
        "delta": delta,
        "k": k,
        "p": p,
        "window": [lo, hi],
        "total_poly": [str(c) for c in _int_coeffs(total_poly)],
        "total_degree": total_poly.degree,
        "expected_total_degree": expected_total_degree(r, delta, k),
        "strata_degrees": {
            str(i): {
                "degree": predicted[i].degree,
                "expected": expected_stratum_degree(r, delta, k, i),
            }
            for i in range(lo, hi + 1)
        },
        "per_q": {},
    }
    if total_poly.degree != expected_total_degree(r, delta, k):
        violations.append(
            {"kind": "total-degree", "r": r, "delta": delta, "k": k}
        )
    for i in range(lo, hi + 1):
        if predicted[i].degree != expected_stratum_degree(r, delta, k, i):
            violations.append(
                {"kind": "stratum-degree", "r": r, "delta": delta, "k": k, "i": i}
            )
    for q in config.q_list:
        field = GF(q) if _is_prime(q) else _ext_field(q)
        form = standard_form(field, r, delta)
        rep = strata_counts(form, k, ceiling=config.ceiling, jobs=jobs)
        counts = rep.counts()
        entry["per_q"][str(q)] = {
            "total": rep.total,
            "strata": {str(i): c for i, c in sorted(counts.items())},
        }
        for i in range(lo, hi + 1):
            want = int(predicted[i].eval(Fraction(q)))
            got = counts.get(i, 0)
            if got != want:
                violations.append(
                    {
                        "kind": "count-mismatch",
                        "r": r,
                        "delta": delta,
                        "k": k,
                        "q": q,
                        "i": i,
                        "enumerated": got,
                        "predicted": want,
                    }
                )
            if got == 0:
                violations.append(
                    {
                        "kind": "window-not-populated",
                        "r": r,
                        "delta": delta,
                        "k": k,
                        "q": q,
                        "i": i,
                    }
                )
        for i in counts:
            if not (lo <= i <= hi):
                violations.append(
                    {
                        "kind": "count-outside-window",
                        "r": r,
                        "delta": delta,
                        "k": k,
                        "q": q,
                        "i": i,
                    }
                )
    # interpolation fit, oversampled from the verified polynomial
    fit = fit_from_polynomial(total_poly)
    entry["fit_degree"] = fit.degree
    if fit.degree != total_poly.degree:
        violations.append({"kind": "fit-degree", "r": r, "delta": delta, "k": k})
    for i in range(lo, hi + 1):
        sfit = fit_from_polynomial(predicted[i])
        if sfit.degree != predicted[i].degree:
            violations.append(
                {"kind": "stratum-fit-degree", "r": r, "delta": delta, "k": k, "i": i}
            )
    return entry


def _int_coeffs(poly: Polynomial):
    out = []
    for c in poly.coeffs:
        if c.denominator != 1:
            raise AssertionError("counting polynomial with non-integer coefficient")
        out.append(int(c))
    return out


# ------------------------------------------------------ degeneration sweep


@dataclass(frozen=True)
class DegenerationConfig:
    r_max: int = 5
    k_max: int = 4
    q_list: tuple = (2, 3)
    seed: int = 0

    def to_dict(self):
        d = asdict(self)
        d["q_list"] = list(self.q_list)
        return d


def run_degeneration_campaign(config: DegenerationConfig) -> dict:
    """Witness families for every point of every non-minimal stratum.

    For each admissible (r, delta, k, q) the full isotropic locus is
    enumerated; every subspace above the minimal stratum must produce a
    witness family that stays isotropic, drops the radical intersection by
    exactly one for every nonzero t, and returns to the point at t = 0.
    """
    tested = 0
    minimal_skipped = 0
    violations = []
    per_config = []
    for q in config.q_list:
        field = GF(q)
        for r in range(2, config.r_max + 1):
            for delta in range(0, r // 2 + 1):
                for k in range(1, min(config.k_max, r - delta) + 1):
                    form = standard_form(field, r, delta)
                    lo, _ = stratum_window(r, delta, k)
                    count_here = 0
                    for v in SubspaceStream(field, r, k):
                        if not is_isotropic(form, v):
                            continue
                        i = radical_intersection_dim(form, v)
                        if i < lo:
                            violations.append(
                                {"kind": "below-minimal-intersection", "r": r,
                                 "delta": delta, "k": k, "q": q, "i": i}
                            )
                            continue
                        if i == lo:
                            minimal_skipped += 1
                            continue
                        try:
                            record = degeneration_witness(form, v)
                        except NoWitnessNeeded:
                            violations.append(
                                {"kind": "unexpected-minimal", "r": r, "delta": delta,
                                 "k": k, "q": q, "i": i}
                            )
                            continue
                        tested += 1
                        count_here += 1
                        if not record.ok:
                            violations.append(
                                {
                                    "kind": "witness-family-failed",
                                    "r": r,
                                    "delta": delta,
                                    "k": k,
                                    "q": q,
                                    "i": i,
                                    "checks": [
                                        [str(t), iso, dim] for t, iso, dim in record.checks
                                    ],
                                }
                            )
                    per_config.append(
                        {"r": r, "delta": delta, "k": k, "q": q, "witnessed": count_here}
                    )
    return {
        "campaign": "degeneration",
        "version": __version__,
        "config": config.to_dict(),
        "tested": tested,
        "minimal_skipped": minimal_skipped,
        "per_config": per_config,
        "violations": violations,
    }


# --------------------------------------------------------- pencil campaign


@dataclass(frozen=True)
class PencilCampaignConfig:
    fields: tuple = ("5", "7", "Q")
    random_per_field: int = 500
    rational_count: int = 100
    planted_per_field: int = 30
    adversarial_count: int = 50
    k_max: int = 4
    n_max: int = 7
    seed: int = 20240901

    def to_dict(self):
        d = asdict(self)
        d["fields"] = list(self.fields)
        return d


def _random_matrix(field, k, n, rng):
    return Matrix(field, [[field.sample(rng) for _ in range(n)] for _ in range(k)])


def _random_surjective(field, k, n, rng):
    while True:
        m = _random_matrix(field, k, n, rng)
        if m.rank() == k:
            return m


def _random_invertible(field, n, rng):
    while True:
        m = _random_matrix(field, n, n, rng)
        if m.rank() == n:
            return m


def _planted_dependent_pencil(field, k, n, rng):
    """Pencil with a planted rank-drop member at a base-field point."""
    psi1 = _random_surjective(field, k, n, rng)
    lam0 = field.sample(rng)
    while True:
        u = _random_matrix(field, k, k - 2, rng) if k > 2 else Matrix.zero(field, k, 0)
        v = _random_matrix(field, k - 2, n, rng) if k > 2 else Matrix.zero(field, 0, n)
        low = u.mul(v) if k > 2 else Matrix.zero(field, k, n)
        psi2 = low.sub(psi1.scale(lam0))
        if psi2.rank() == k:
            return FormPencil.build(psi1, psi2)


def _adversarial_pencil(field, rng, k_max, n_max):
    """Scrambled block-structured pencil with known dependence when the
    columns beyond the square block are zero."""
    k = rng.randint(2, k_max)
    n = rng.randint(k, n_max)
    sizes = []
    left = k
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    pool = [field.from_int(v) for v in (0, 1, 2)]
    collide = rng.random() < 0.5 and len(sizes) >= 2
    eigs = []
    if collide:
        lam = pool[rng.randrange(len(pool))]
        eigs = [lam, lam] + [pool[rng.randrange(len(pool))] for _ in sizes[2:]]
    else:
        eigs = [pool[idx % len(pool)] for idx in range(len(sizes))]
    diag = []
    superdiag = []
    for lam, s in zip(eigs, sizes):
        diag.extend([lam] * s)
        superdiag.extend([1] * (s - 1) + [0])
    superdiag = superdiag[:-1]
    a_left = jordan_matrix(field, diag, superdiag)
    zero_right = rng.random() < 0.5
    if zero_right or n == k:
        a_right = Matrix.zero(field, k, n - k)
    else:
        a_right = _random_matrix(field, k, n - k, rng)
    a = a_left.hstack(a_right) if n > k else a_left
    identity_wide = Matrix.identity(field, k).hstack(Matrix.zero(field, k, n - k)) if n > k else Matrix.identity(field, k)
    r = _random_invertible(field, k, rng)
    c = _random_invertible(field, n, rng)
    psi1 = r.mul(identity_wide).mul(c)
    psi2 = r.mul(a).mul(c)
    if psi2.rank() != k:
        return None  # nilpotent-style block hit a singular scramble; retry
    expected = None
    if zero_right or n == k:
        # with no right columns, dependence is exactly a repeated eigenvalue
        # across two blocks
        seen = {}
        expected = False
        for lam, s in zip(eigs, sizes):
            if lam in seen:
                expected = True
            seen[lam] = True
    return FormPencil.build(psi1, psi2), expected


def run_pencil_campaign(config: PencilCampaignConfig) -> dict:
    """Rank route versus criterion route on random and structured pencils.

    Any disagreement between a nonzero dependence space and a dependent
    rank-drop certificate lands in "violations". Dependent instances are
    kept (as serialized matrices) for the eigenvector-extraction campaign.
    """
    rng = random.Random(config.seed)
    trials = []
    violations = []
    dependents = []
    from .serialize import matrix_to_json

    for label in config.fields:
        field = _parse_field(label)
        count = config.rational_count if field == QQ else config.random_per_field
        for _ in range(count):
            k = rng.randint(1, config.k_max)
            n = rng.randint(max(k, 2), config.n_max)
            pencil = FormPencil.build(
                _random_surjective(field, k, n, rng),
                _random_surjective(field, k, n, rng),
            )
            _record_trial(pencil, "random", label, None, trials, violations, dependents)
        planted = config.planted_per_field
        for _ in range(planted):
            k = rng.randint(2, config.k_max)
            n = rng.randint(k, config.n_max)
            pencil = _planted_dependent_pencil(field, k, n, rng)
            _record_trial(pencil, "planted", label, True, trials, violations, dependents)
    adv_done = 0
    adv_field = _parse_field(config.fields[0])
    while adv_done < config.adversarial_count:
        made = _adversarial_pencil(adv_field, rng, config.k_max, config.n_max)
        if made is None:
            continue
        pencil, expected = made
        _record_trial(
            pencil, "adversarial", _field_label(adv_field), expected, trials,
            violations, dependents,
        )
        adv_done += 1
    dep_payload = [
        {
            "field": lbl,
            "kind": kind,
            "psi1": matrix_to_json(p.psi1),
            "psi2": matrix_to_json(p.psi2),
        }
        for (lbl, kind, p) in dependents
    ]
    tally = {}
    for t in trials:
        key = (t["field"], t["kind"])
        bucket = tally.setdefault(
            "|".join(key), {"total": 0, "dependent": 0, "agreements": 0}
        )
        bucket["total"] += 1
        bucket["dependent"] += 1 if t["dependent"] else 0
        bucket["agreements"] += 1 if t["agree"] else 0
    return {
        "campaign": "pencil-equivalence",
        "version": __version__,
        "config": config.to_dict(),
        "tally": tally,
        "trials": trials,
        "dependent_instances": dep_payload,
        "violations": violations,
    }


def _record_trial(pencil, kind, label, expected, trials, violations, dependents):
    dep = dependence_space(pencil)
    dep_dim = dep.nrows
    cert = pencil_rank_drop(pencil)
    agree = (dep_dim > 0) == cert.dependent
    trial = {
        "field": label,
        "kind": kind,
        "k": pencil.k,
        "n": pencil.n,
        "dependence_dim": dep_dim,
        "dependent": cert.dependent,
        "agree": agree,
    }
    if expected is not None:
        trial["expected_dependent"] = expected
        if cert.dependent != expected:
            violations.append({"kind": "expectation-mismatch", **trial})
    trials.append(trial)
    if not agree:
        violations.append({"kind": "route-disagreement", **trial})
    if cert.dependent:
        dependents.append((label, kind, pencil))


# ------------------------------------------------- smoothness (two forms)


@dataclass(frozen=True)
class SmoothnessConfig:
    q: int = 3
    r: int = 4
    k: int = 2
    pairs: int = 20
    seed: int = 77041

    def to_dict(self):
        return asdict(self)


def run_smoothness_campaign(config: SmoothnessConfig) -> dict:
    """Tangent codimension versus the pencil criterion at every shared
    isotropic k-plane of random pairs of nondegenerate forms."""
    rng = random.Random(config.seed)
    field = GF(config.q)
    planes = [
        v
        for v in SubspaceStream(field, config.r, config.k)
    ]
    checked = 0
    smooth = 0
    violations = []
    pair_stats = []
    for idx in range(config.pairs):
        f1 = random_symplectic_form(field, config.r, rng)
        f2 = random_symplectic_form(field, config.r, rng)
        here = 0
        for v in planes:
            if not (is_isotropic(f1, v) and is_isotropic(f2, v)):
                continue
            rep = msg_smoothness_at(f1, f2, v)
            checked += 1
            here += 1
            smooth += 1 if rep.smooth else 0
            if not rep.agreement:
                violations.append(
                    {
                        "kind": "criterion-disagreement",
                        "pair": idx,
                        "codim": rep.tangent_codim,
                        "dependent": rep.certificate.dependent,
                    }
                )
        pair_stats.append({"pair": idx, "shared_isotropic_planes": here})
    return {
        "campaign": "double-form-smoothness",
        "version": __version__,
        "config": config.to_dict(),
        "planes_checked": checked,
        "smooth_points": smooth,
        "pair_stats": pair_stats,
        "violations": violations,
    }


# --------------------------------------------------- extraction campaign


def run_extraction_campaign(pencil_report: dict) -> dict:
    """Eigenvector extraction on every dependent instance that splits.

    Each stored dependent pencil is renormalized so the first pairing is
    [I | 0], its partner is put into generalized Jordan form (extending
    finite фields as needed; rational instances that fail to split are
    skipped and counted), and the dependence coefficients recomputed there
    feed the eigenvector extraction. Extraction itself checks annihilation
    and the two-dimensional span; failures surface as violations.
    """
    from .serialize import matrix_from_json

    processed = 0
    skipped_split = 0
    violations = []
    details = []
    for inst in pencil_report["dependent_instances"]:
        psi1 = matrix_from_json(inst["psi1"])
        psi2 = matrix_from_json(inst["psi2"])
        try:
            outcome = extraction_for_pencil(psi1, psi2)
        except SplitFailure:
            skipped_split += 1
            continue
        processed += 1
        if outcome["error"]:
            violations.append(
                {"kind": "extraction-failed", "field": inst["field"], **outcome}
            )
        details.append(
            {
                "field": inst["field"],
                "k": psi1.nrows,
                "n": psi1.ncols,
                "vectors": outcome["vectors"],
                "extension_degree": outcome["extension_degree"],
            }
        )
    return {
        "campaign": "eigenvector-extraction",
        "version": __version__,
        "processed": processed,
        "skipped_nonsplit": skipped_split,
        "details": details,
        "violations": violations,
    }


def extraction_for_pencil(psi1: Matrix, psi2: Matrix) -> dict:
    """Normalize (psi1, psi2) to ([I|0], GJNF) and extract eigenvectors."""
    F = psi1.field
    k, n = psi1.shape
    # column change making psi1 = [I | 0]
    right_inv = _right_inverse(psi1)
    kernel = psi1.right_kernel()  # rows span ker psi1
    cols = [[right_inv[i, j] for j in range(k)] for i in range(n)]
    for kr in kernel.data:
        for i in range(n):
            cols[i].append(kr[i])
    c = Matrix(F, cols)
    a0 = psi2.mul(c)
    before = dependence_space(FormPencil.build(psi1, psi2)).nrows
    res = generalized_jordan_form(a0)
    bigf = res.field
    a = res.normal_form
    ident = Matrix.identity(bigf, k)
    if n > k:
        ident = ident.hstack(Matrix.zero(bigf, k, n - k))
    pencil = FormPencil.build(ident, a)
    dep = dependence_space(pencil)
    after = dep.nrows
    error = None
    vectors = 0
    if after != before:
        error = f"dependence dimension changed {before} -> {after} under transport"
    elif after == 0:
        error = "dependent instance lost its dependence after normal form"
    else:
        extracted = extract_dependence_vectors(a, dep.data[0])
        vectors = len(extracted)
    return {
        "error": error,
        "vectors": vectors,
        "extension_degree": res.field.order if hasattr(res.field, "order") else None,
        "dependence_before": before,
        "dependence_after": after,
    }


def _right_inverse(m: Matrix) -> Matrix:
    """Some X with m @ X = I; m must have full row rank."""
    F = m.field
    k, n = m.shape
    aug = m.hstack(Matrix.identity(F, k))
    red, rank, pivots = aug.rref()
    if rank != k or any(pc >= n for pc in pivots):
        raise AssertionError("right inverse of a non-surjective matrix")
    rows = [[F.zero()] * k for _ in range(n)]
    for r_i, pc in enumerate(pivots):
        for j in range(k):
            rows[pc][j] = red[r_i, n + j]
    return Matrix(F, rows)


# ------------------------------------------------------- residue campaign


@dataclass(frozen=True)
class ResidueCampaignConfig:
    fields: tuple = ("Q", "7")
    det_degrees: tuple = (-4, -3, -2, -1, 0)
    max_deg_d: int = 3
    max_delta: int = 2
    seed: int = 424243

    def to_dict(self):
        d = asdict(self)
        d["fields"] = list(self.fields)
        d["det_degrees"] = list(self.det_degrees)
        return d


def run_residue_campaign(config: ResidueCampaignConfig) -> dict:
    """Residue models across determinant degrees, divisor degrees and deltas.

    Every admissible combination (the twisting budget delta - 2 - d must be
    nonnegative, and the split twists must satisfy the vanishing conditions)
    is built and checked: tail dimension 4 deg D + 2 delta, order-zero
    radical exactly 2 deg D, section image of dimension d + 2 deg D + 2 and
    isotropic, and section/tail intersection of dimension h0.
    """
    rng = random.Random(config.seed)
    models = []
    violations = []
    for label in config.fields:
        field = _parse_field(label)
        for d in config.det_degrees:
            for delta in range(0, config.max_delta + 1):
                if delta - 2 - d < 0:
                    continue
                for deg_d in range(1, config.max_deg_d + 1):
                    split = _admissible_split(d, deg_d, delta)
                    if split is None:
                        continue
                    entry = _one_residue_model(
                        field, label, split, d, deg_d, delta, rng, violations
                    )
                    if entry is not None:
                        models.append(entry)
    return {
        "campaign": "residue-models",
        "version": __version__,
        "config": config.to_dict(),
        "models_built": len(models),
        "models": models,
        "violations": violations,
    }


def _admissible_split(d, deg_d, delta):
    for a in range(d // 2, d // 2 + 3):
        b = d - a
        ok = True
        for m in (a, b):
            if m + deg_d < -1 or m > deg_d + delta - 1:
                ok = False
        if ok:
            return (a, b)
    return None


def _one_residue_model(field, label, split, d, deg_d, delta, rng, violations):
    a, b = split
    budget = delta - 2 - d
    # deterministic-ish twisting polynomial within budget, nonzero
    coeffs = [field.from_int(rng.randint(1, 3))]
    for _ in range(budget):
        coeffs.append(field.from_int(rng.randint(0, 2)))
    phi = RationalFunction.from_poly(Polynomial(field, coeffs))
    support = []
    candidate = 1
    while len(support) < deg_d + delta:
        pt = field.from_int(candidate)
        candidate += 1
        if candidate > 1000:
            return None
        if any(pt == s for s in support):
            continue
        if field.is_zero(phi.num.eval(pt)):
            continue
        support.append(pt)
    dpts = support[:deg_d]
    dels = support[deg_d:]
    bundle = SplitBundle(a, b)
    model = build_residue_model(bundle, dpts, dels, phi)
    entry = {
        "field": label,
        "a": a,
        "b": b,
        "d": d,
        "deg_d": deg_d,
        "delta": delta,
        "dim": model.dim,
    }
    if model.dim != 4 * deg_d + 2 * delta:
        violations.append({"kind": "tail-dimension", **entry})
    if model.order_zero_tails.dim != 2 * deg_d + 2 * delta:
        violations.append({"kind": "order-zero-dimension", **entry})
    sections = global_section_subspace(model)
    entry["section_dim"] = sections.dim
    if sections.dim != d + 2 * deg_d + 2:
        violations.append({"kind": "section-dimension", **entry})
    meet = recovered_intersection_dim(model, sections)
    entry["section_meet_tails"] = meet
    expected_h0 = h0_twist(a) + h0_twist(b)
    if meet != expected_h0:
        violations.append({"kind": "recovery", "expected": expected_h0, **entry})
    return entry


# ---------------------------------------------------- injectivity campaign


@dataclass(frozen=True)
class InjectivityCampaignConfig:
    fields: tuple = ("Q", "7")
    trials_per_field: int = 10
    deg_d: int = 3
    seed: int = 515151

    def to_dict(self):
        d = asdict(self)
        d["fields"] = list(self.fields)
        return d


def run_injectivity_campaign(config: InjectivityCampaignConfig) -> dict:
    """Two-form injectivity on sections for determinant degree -3.

    The twisting basis is {1, z}; divisors are random reduced sets of
    nonzero points (zero is excluded as the zero of z). Every trial must be
    injective via the minor-gcd route.
    """
    rng = random.Random(config.seed)
    trials = []
    violations = []
    for label in config.fields:
        field = _parse_field(label)
        phis = [RationalFunction.constant(field, 1), RationalFunction.x(field)]
        bundle = SplitBundle(-1, -2)
        for t in range(config.trials_per_field):
            dpts = _random_reduced_divisor(field, config.deg_d, rng)
            rep = pencil_injectivity(phis, bundle, dpts)
            trials.append(
                {
                    "field": label,
                    "points": [str(p) for p in rep.dpoints],
                    "injective": rep.injective,
                    "min_degree": rep.min_injective_degree,
                }
            )
            if not rep.injective:
                violations.append({"kind": "injectivity-failed", **trials[-1]})
    return {
        "campaign": "section-injectivity",
        "version": __version__,
        "config": config.to_dict(),
        "trials": trials,
        "violations": violations,
    }


def _random_reduced_divisor(field, deg, rng):
    pts = []
    guard = 0
    while len(pts) < deg:
        guard += 1
        if guard > 10000:
            raise AssertionError("could not sample a reduced divisor")
        if field == QQ:
            cand = Fraction(rng.randint(1, 40))
        else:
            cand = field.sample(rng)
        if field.is_zero(cand):
            continue
        if any(cand == p for p in pts):
            continue
        pts.append(cand)
    return pts
