"""Acceptance suite.

One test per criterion, each printing a PASS line once its assertions hold
(run with -s to see them live). All arithmetic is exact: every comparison is
integer or field-element equality, no tolerances anywhere. Campaign fixtures
are shared so the heavyweight enumerations run once.
"""

import time

import pytest

from symgrass.brill_noether import binom2, codim_bound_single, rho, rho_omega
from symgrass.campaigns import (
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

SWEEP_CONFIG = StrataSweepConfig(r_max=6, k_max=4, q_list=(2, 3, 5, 7), seed=0)

PENCIL_CONFIG = PencilCampaignConfig(
    fields=("5", "7", "Q"),
    random_per_field=500,
    rational_count=100,
    planted_per_field=30,
    adversarial_count=50,
    k_max=4,
    n_max=7,
    seed=20240901,
)


@pytest.fixture(scope="module")
def sweep_parallel():
    t0 = time.time()
    report = run_strata_sweep(SWEEP_CONFIG, jobs=8)
    return report, time.time() - t0


@pytest.fixture(scope="module")
def pencil_report():
    return run_pencil_campaign(PENCIL_CONFIG)


def _classify(violations, kinds):
    return [v for v in violations if v["kind"] in kinds]


def test_criterion_01_stratified_dimension_law(sweep_parallel):
    report, elapsed = sweep_parallel
    bad = _classify(
        report["violations"],
        {"total-degree", "stratum-degree", "count-mismatch", "fit-degree",
         "stratum-fit-degree"},
    )
    assert bad == []
    entries = [e for e in report["results"] if not e.get("boundary_probe")]
    assert len(entries) == 44  # (r, delta, k) triples in the sweep
    for e in entries:
        assert e["total_degree"] == e["expected_total_degree"]
        for stats in e["strata_degrees"].values():
            assert stats["degree"] == stats["expected"]
        assert len(e["per_q"]) == 4
    assert elapsed < 600.0
    print(
        f"\n[criterion 01] PASS stratified dimension law: {len(entries)} "
        f"configurations x 4 fields enumerated and matched against counting "
        f"polynomials in {elapsed:.1f}s"
    )


def test_criterion_02_nonemptiness_window(sweep_parallel):
    report, _ = sweep_parallel
    bad = _classify(
        report["violations"],
        {"window-not-populated", "count-outside-window", "nonempty-beyond-bound"},
    )
    assert bad == []
    probes = [e for e in report["results"] if e.get("boundary_probe")]
    assert probes, "boundary probes must exist"
    for e in probes:
        for per in e["per_q"].values():
            assert per["total"] == 0
    print(
        f"\n[criterion 02] PASS nonemptiness window: all strata populated "
        f"exactly on [max(0, k-delta), min(k, p)]; {len(probes)} boundary "
        f"probes empty; no point below the minimal radical intersection"
    )


def test_criterion_03_degeneration_witnesses():
    report = run_degeneration_campaign(DegenerationConfig(r_max=5, k_max=4, q_list=(2, 3)))
    assert report["violations"] == []
    assert report["tested"] > 0
    print(
        f"\n[criterion 03] PASS degeneration witnesses: {report['tested']} "
        f"non-minimal stratum points moved down one stratum for every "
        f"nonzero t ({report['minimal_skipped']} minimal points exempt)"
    )


def test_criterion_04_pencil_equivalence(pencil_report):
    report = pencil_report
    assert report["violations"] == []
    by_bucket = report["tally"]
    for field in ("5", "7"):
        assert by_bucket[f"{field}|random"]["total"] >= 500
    assert by_bucket["Q|random"]["total"] >= 100
    adversarial_total = sum(
        b["total"] for key, b in by_bucket.items() if key.endswith("adversarial")
    )
    assert adversarial_total >= 50
    for bucket in by_bucket.values():
        assert bucket["agreements"] == bucket["total"]
    print(
        f"\n[criterion 04] PASS dependence equivalence: "
        f"{sum(b['total'] for b in by_bucket.values())} pencils, zero "
        f"disagreements between the rank route and the minor-gcd criterion"
    )


def test_criterion_05_smoothness_agreement():
    report = run_smoothness_campaign(SmoothnessConfig(q=3, r=4, k=2, pairs=20, seed=77041))
    assert report["violations"] == []
    assert report["planes_checked"] > 0
    assert 0 < report["smooth_points"]
    print(
        f"\n[criterion 05] PASS smooth-codimension criterion: "
        f"{report['planes_checked']} simultaneously isotropic planes across "
        f"20 form pairs, tangent codimension 2 exactly at criterion-"
        f"independent points ({report['smooth_points']} smooth)"
    )


def test_criterion_06_eigenvector_extraction(pencil_report):
    report = run_extraction_campaign(pencil_report)
    assert report["violations"] == []
    assert report["processed"] >= 50
    for detail in report["details"]:
        assert detail["vectors"] >= 2
    print(
        f"\n[criterion 06] PASS eigenvector extraction: {report['processed']} "
        f"dependent pencils normalized to block form, every extracted vector "
        f"annihilates its eigen equation exactly, spans >= 2 dimensions "
        f"({report['skipped_nonsplit']} rational instances without rational "
        f"eigenvalues exempt)"
    )


def test_criterion_07_residue_models():
    report = run_residue_campaign(ResidueCampaignConfig(fields=("Q", "7")))
    assert report["violations"] == []
    assert report["models_built"] >= 20
    print(
        f"\n[criterion 07] PASS residue construction: {report['models_built']} "
        f"models over Q and GF(7); alternating nondegenerate pairings with "
        f"the stated tail, radical, section and recovery dimensions"
    )


def test_criterion_08_section_injectivity():
    report = run_injectivity_campaign(
        InjectivityCampaignConfig(fields=("Q", "7"), trials_per_field=10, deg_d=3)
    )
    assert report["violations"] == []
    assert len(report["trials"]) == 20
    assert all(t["injective"] for t in report["trials"])
    print(
        f"\n[criterion 08] PASS section injectivity: 10 random reduced "
        f"divisors of degree 3 per field, no nonzero combination of the two "
        f"induced forms kills a section (minor-gcd route, zero failures)"
    )


def test_criterion_09_formula_identities():
    t0 = time.time()
    for k in range(1, 51):
        for g in range(1, 51):
            assert rho_omega(k, g) == rho(2, 2 * g - 2, k, g) - g + binom2(k)
    for g in range(-10, 120):
        assert rho(2, g - 2, 2, g) - 1 == 2 * g - 8
    checked = 0
    for r in range(1, 13):
        for s in range(0, r + 1):
            for t in range(0, r // 2 + 1):
                for k in range(1, t + 1):
                    for delta in range(0, 4):
                        assert codim_bound_single(k, r, s, t, delta) >= 1
                        checked += 1
    elapsed = time.time() - t0
    assert elapsed < 1.0
    print(
        f"\n[criterion 09] PASS formula identities: canonical-determinant "
        f"identity on 1<=k,g<=50, degree g-2 example identity, and "
        f"{checked} positive codimension bounds in {elapsed:.2f}s"
    )


def test_criterion_10_determinism(sweep_parallel):
    report_parallel, _ = sweep_parallel
    report_serial = run_strata_sweep(SWEEP_CONFIG, jobs=1)
    assert report_bytes(report_serial) == report_bytes(report_parallel)
    print(
        "\n[criterion 10] PASS determinism: full sweep at parallelism 1 and 8 "
        "produced byte-identical reports"
    )
