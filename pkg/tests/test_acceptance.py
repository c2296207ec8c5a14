"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Every tolerance is exact (rational equality) unless stated otherwise;
the two runtime budgets are asserted with a wall clock.
"""

import io
import random
import time
from fractions import Fraction

import pytest

from acceptset import (
    ExpectedShortfallSet,
    FiniteDistribution,
    OracleSet,
    PiecewiseLinear,
    PiecewiseQuantile,
    PositionUniverse,
    Shortfall,
    VarStrict,
    VarUniformStrict,
    VarWeak,
    approximate_from_below,
    approximation_distance,
    check_conicity,
    check_law_invariance,
    check_surplus_invariance,
    classify,
    es_surplus_counterexample,
    inclusion_check,
    member,
    replay_conicity,
    replay_law,
    replay_surplus,
    strict_to_weak_level,
    uniform_numeraire_counterexample,
    weak_star_step_approximation,
)
from acceptset.cli import main as cli_main
from helpers import random_law

F = Fraction
MASTER_SEED = 20260808


def check(num: int, ok: bool, text: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {text}")
    assert ok, f"criterion {num}: {text}"


@pytest.fixture(scope="module")
def seeded_universe():
    rng = random.Random(MASTER_SEED)
    return [random_law(rng, max_atoms=8) for _ in range(10_000)]


ALPHA_GRID_21 = [F(k, 20) for k in range(21)]


def test_criterion_1_route_agreement(seeded_universe):
    """Default-probability and VaR membership routes agree on every triple."""
    start = time.time()
    disagreements = 0
    triples = 0
    for law in seeded_universe:
        for alpha in ALPHA_GRID_21:
            for family in (VarStrict, VarUniformStrict, VarWeak):
                verdict = member(family(alpha), law)
                triples += 1
                if verdict.route_probability != verdict.route_var:
                    disagreements += 1
    elapsed = time.time() - start
    ok = disagreements == 0 and triples == 630_000 and elapsed < 10.0
    check(
        1,
        ok,
        f"route agreement on {triples} (law, alpha, family) triples, "
        f"{disagreements} disagreements, {elapsed:.1f}s (< 10s)",
    )


def test_criterion_2_inclusions(seeded_universe):
    """Nested families and the cross-level inclusion hold with zero violations."""
    report = inclusion_check(ALPHA_GRID_21, seeded_universe)
    ok = report.ok and report.checked_distributions == 10_000
    check(
        2,
        ok,
        f"inclusion chains on {report.checked_distributions} laws x "
        f"{report.checked_levels} levels, violation={report.violation}",
    )


def _criterion_3_catalog():
    quadratic = lambda x: x * x  # noqa: E731
    catalog = []
    for alpha in (F(0), F(1, 4), F(1, 2), F(3, 4), F(1)):
        catalog.append((f"var_strict({alpha})", VarStrict(alpha)))
        catalog.append((f"var_uniform_strict({alpha})", VarUniformStrict(alpha)))
        catalog.append((f"var_weak({alpha})", VarWeak(alpha)))
    catalog.append(("shortfall_identity_1", Shortfall(lambda x: x, F(1))))
    catalog.append(("shortfall_quadratic_1", Shortfall(quadratic, F(1))))
    catalog.append(("es_0", ExpectedShortfallSet(F(0))))
    catalog.append(("es_half", ExpectedShortfallSet(F(1, 2))))
    return catalog


def test_criterion_3_exhaustive_characterization():
    """Axiom-passing catalog sets classify as empty or the weak form; every
    failing set yields a replayable witness."""
    start = time.time()
    grid = (F(-2), F(-1), F(0), F(1), F(2))
    failures = []
    classified = 0
    witnessed = 0
    for n in (2, 3, 4):
        universe = PositionUniverse(n, grid)
        positions = tuple(universe)
        candidates = list(_criterion_3_catalog())
        first_state = OracleSet(
            lambda p: p.values[0] >= 0, positions, "first-state-nonneg"
        )
        at_most_half = OracleSet(
            lambda p: 2 * sum(1 for v in p.values if v < 0) <= p.n,
            positions,
            "at-most-half-negative",
        )
        candidates.append(("oracle_first_state", first_state))
        candidates.append(("oracle_at_most_half", at_most_half))
        for name, spec in candidates:
            surplus = check_surplus_invariance(spec, universe)
            law = check_law_invariance(spec, universe)
            conic = check_conicity(spec, universe)
            for rep in (surplus, law, conic):
                if rep.mode != "exhaustive":
                    failures.append(f"{name} n={n}: {rep.property_name} not exhaustive")
            if not (surplus.violated or law.violated or conic.violated):
                if isinstance(spec, OracleSet):
                    oracle = spec
                else:
                    oracle = OracleSet(
                        lambda p, _s=spec: member(_s, p.law()).accepted, positions, name
                    )
                report = classify(oracle)
                classified += 1
                if report.exact_form is None or report.exact_form[0] not in ("empty", "var_weak"):
                    failures.append(f"{name} n={n}: classified as {report.exact_form}")
            else:
                witnessed += 1
                if surplus.violated and not replay_surplus(spec, surplus.witness):
                    failures.append(f"{name} n={n}: surplus witness does not replay")
                if law.violated and not replay_law(spec, law.witness):
                    failures.append(f"{name} n={n}: law witness does not replay")
                if conic.violated and not replay_conicity(spec, conic.witness):
                    failures.append(f"{name} n={n}: conicity witness does not replay")
    elapsed = time.time() - start
    ok = not failures and elapsed < 60.0
    check(
        3,
        ok,
        f"{classified} candidates classified (empty/weak form), {witnessed} produced "
        f"replayable witnesses, {elapsed:.1f}s (< 60s); failures={failures[:3]}",
    )


def test_criterion_4_lattice_level_equivalence():
    """P < 1-alpha iff P <= 1-alpha' for every lattice probability, exactly."""
    bad = 0
    total = 0
    for n in range(1, 21):
        for j in range(40):
            alpha = F(j, 40)
            adjusted = strict_to_weak_level(n, alpha)
            for k in range(n + 1):
                p = F(k, n)
                total += 1
                if (p < 1 - alpha) != (p <= 1 - adjusted):
                    bad += 1
    check(4, bad == 0, f"strict/weak level equivalence on {total} lattice points, {bad} mismatches")


def test_criterion_5_es_exclusion():
    """Expected-shortfall sets lose surplus invariance at every grid level."""
    betas = (F(0), F(1, 4), F(1, 2), F(3, 4))
    report = es_surplus_counterexample(betas, max_trials=10 ** 5)
    beta0 = dict(report.claims[0].evidence)
    ok = (
        report.all_verified
        and beta0["es_x"] == "0"
        and beta0["es_y"] == "1/2"
        and all(int(dict(c.evidence)["trials"]) <= 10 ** 5 for c in report.claims)
    )
    check(
        5,
        ok,
        f"violation witnesses for beta in {{0, 1/4, 1/2, 3/4}}; "
        f"beta=0 witness values ({beta0['es_x']}, {beta0['es_y']})",
    )


def test_criterion_6_uniform_numeraire_replay():
    """All three uniform-law claims verify exactly at every tenth level."""
    results = {}
    for k in range(1, 10):
        report = uniform_numeraire_counterexample(F(k, 10))
        results[k] = report.all_verified
    ok = all(results.values())
    check(6, ok, f"claims verified for alpha = k/10, k=1..9: {results}")


def test_criterion_7_weak_star_exact_gaps():
    """Pairing gap equals alpha(1-alpha)/(2m) exactly for the identity test."""
    alpha = F(1, 2)
    identity = PiecewiseLinear.identity()
    failures = []
    for m in (1, 2, 4, 8, 16):
        report = weak_star_step_approximation(alpha, m, (identity,))
        gap_claim = dict(report.claims[2].evidence)
        expected = alpha * (1 - alpha) / (2 * m)
        if not report.claims[0].verified:
            failures.append(f"m={m}: default probability not exact")
        if F(gap_claim["gap"]) != expected:
            failures.append(f"m={m}: gap {gap_claim['gap']} != {expected}")
        if not report.claims[2].verified:
            failures.append(f"m={m}: gap claim not verified")
    check(7, not failures, f"exact gaps alpha(1-alpha)/(2m) for m in {{1,2,4,8,16}}; {failures}")


def _random_strict_target(rng: random.Random):
    """A law with P(X < 0) = 1 - alpha on a small lattice, plus its alpha."""
    if rng.random() < 0.3:
        # uniform law on (-a, b): default probability a/(a+b)
        a = F(rng.randint(1, 5), rng.choice((1, 2, 4)))
        b = F(rng.randint(1, 5), rng.choice((1, 2, 4)))
        law = PiecewiseQuantile.uniform(-a, b)
        alpha = 1 - a / (a + b)
        return law, alpha
    n = rng.randint(2, 6)
    k_neg = rng.randint(1, n - 1)
    negatives = sorted(rng.sample(range(-9, 0), min(k_neg, 9)))
    values = [F(negatives[i % len(negatives)]) for i in range(k_neg)]
    values += [F(rng.randint(0, 8)) for _ in range(n - k_neg)]
    law = FiniteDistribution.equiprobable(values)
    return law, 1 - law.cdf_left(0)


def test_criterion_8_closure_sequences():
    """Approximants stay in the strict family past the threshold and their
    distances to the target decrease monotonically, for 100 seeded targets."""
    rng = random.Random(MASTER_SEED + 8)
    failures = []
    for idx in range(100):
        law, alpha = _random_strict_target(rng)
        essinf = law.essinf()
        threshold = 1 if essinf <= -1 else int(-1 / essinf) + 1
        distances = []
        for k in range(1, 9):
            approx = approximate_from_below(law, alpha, k)
            distances.append(approximation_distance(law, k))
            if k >= threshold and not member(VarStrict(alpha), approx).accepted:
                failures.append(f"target {idx}: k={k} approximant left the strict family")
        if any(a < b for a, b in zip(distances, distances[1:])):
            failures.append(f"target {idx}: distances not monotone {distances}")
    check(8, not failures, f"100 seeded targets, ks 1..8; failures={failures[:3]}")


DETERMINISM_PROPS = """\
seed = 11
[check rand_surplus]
property = surplus_invariance
kind = expected_shortfall
beta = 0.5
n = 6
grid = -2,-1,0,1,2,8,9
trials = 2000
expect = violated

[check weak_conic]
property = conicity
kind = var_weak
alpha = 0.5
n = 2
grid = -1,0,1
"""


def test_criterion_9_determinism(tmp_path):
    """Two runs with the same seed produce byte-identical records."""
    scen = tmp_path / "scen.csv"
    scen.write_text("scenario_id,probability,value\ncrash,0.01,-1\ncalm,0.99,1\n")
    props = tmp_path / "props.cfg"
    props.write_text(DETERMINISM_PROPS)
    classify_cfg = tmp_path / "classify.cfg"
    classify_cfg.write_text(
        "[classify weak75]\nkind = var_weak\nalpha = 0.75\nn = 4\ngrid = -1,0,1\n"
    )
    battery = [
        ["assess", "--scenarios", str(scen), "--alpha", "0.99"],
        ["measure", "--scenarios", str(scen), "--alpha", "0.99", "--beta", "0.75"],
        ["check-properties", "--config", str(props), "--seed", "11"],
        ["classify", "--config", str(classify_cfg)],
        ["counterexample", "es-surplus"],
        ["counterexample", "weak-star", "--alpha", "1/2", "--m", "8"],
    ]

    def run_all() -> str:
        chunks = []
        for argv in battery:
            out = io.StringIO()
            code = cli_main(argv, out=out)
            chunks.append(f"exit={code}\n{out.getvalue()}")
        return "".join(chunks)

    first = run_all()
    second = run_all()
    ok = first == second and len(first) > 0
    check(9, ok, f"{len(battery)} commands, {len(first)} bytes, byte-identical={first == second}")
