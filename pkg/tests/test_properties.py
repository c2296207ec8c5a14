from fractions import Fraction

import pytest

from acceptset import (
    ConvergentSequence,
    ExpectedShortfallSet,
    FiniteDistribution,
    OracleSet,
    PositionUniverse,
    Position,
    Shortfall,
    VarStrict,
    VarUniformStrict,
    VarWeak,
    check_cip_closedness,
    check_conicity,
    check_law_invariance,
    check_numeraire_invariance,
    check_surplus_invariance,
    check_truncation_closedness,
    closure_sequence,
    replay_cip,
    replay_conicity,
    replay_law,
    replay_numeraire,
    replay_surplus,
    replay_truncation,
)
from acceptset.properties import NonConvergentSequenceError

F = Fraction

SMALL = PositionUniverse(3, (F(-1), F(0), F(1)))
WIDE = PositionUniverse(2, (F(-2), F(-1), F(0), F(1), F(2)))


class TestSurplusInvariance:
    def test_var_families_pass_exhaustively(self):
        for family in (VarStrict, VarUniformStrict, VarWeak):
            for alpha in (F(0), F(1, 3), F(2, 3), F(1)):
                report = check_surplus_invariance(family(alpha), SMALL)
                assert report.mode == "exhaustive"
                assert not report.violated, report.witness

    def test_weak_half_on_four_states_exhaustive(self):
        universe = PositionUniverse(4, (F(-2), F(-1), F(0), F(1), F(2)))
        report = check_surplus_invariance(VarWeak(F(1, 2)), universe)
        assert report.mode == "exhaustive"
        assert not report.violated

    def test_es_violated_with_canonical_witness(self):
        report = check_surplus_invariance(ExpectedShortfallSet(0), PositionUniverse(2, (F(-1), F(0), F(1))))
        assert report.violated
        assert report.witness.x == Position([-1, 1])
        assert report.witness.y == Position([-1, 0])
        assert replay_surplus(ExpectedShortfallSet(0), report.witness)

    def test_shortfall_passes(self):
        report = check_surplus_invariance(Shortfall(lambda x: x, F(1)), WIDE)
        assert not report.violated

    def test_randomized_mode_is_seeded(self):
        spec = ExpectedShortfallSet(F(1, 2))
        universe = PositionUniverse(4, (F(-2), F(-1), F(0), F(1), F(9)))
        a = check_surplus_invariance(spec, universe, trials=5000, seed=11, exhaustive_limit=10)
        b = check_surplus_invariance(spec, universe, trials=5000, seed=11, exhaustive_limit=10)
        assert a.mode == "randomized"
        assert (a.verdict, a.witness) == (b.verdict, b.witness)
        assert a.violated and replay_surplus(spec, a.witness)


class TestLawInvariance:
    def test_var_families_pass(self):
        report = check_law_invariance(VarStrict(F(1, 2)), SMALL)
        assert not report.violated

    def test_state_dependent_oracle_violated(self):
        universe = tuple(PositionUniverse(2, (F(-1), F(1))))
        oracle = OracleSet(lambda p: p.values == (F(-1), F(1)), universe, "only-one-pattern")
        report = check_law_invariance(oracle, PositionUniverse(2, (F(-1), F(1))))
        assert report.violated
        assert report.witness.x == Position([-1, 1])
        assert report.witness.permutation == (1, 0)
        assert replay_law(oracle, report.witness)

    def test_single_state_vacuous(self):
        report = check_law_invariance(VarWeak(F(1, 2)), PositionUniverse(1, (F(-1), F(1))))
        assert not report.violated


class TestConicity:
    def test_var_families_pass(self):
        for alpha in (F(0), F(1, 2), F(1)):
            report = check_conicity(VarWeak(alpha), WIDE)
            assert not report.violated

    def test_shortfall_violated(self):
        spec = Shortfall(lambda x: x, F(1))
        report = check_conicity(spec, WIDE)
        assert report.violated
        assert replay_conicity(spec, report.witness)

    def test_unit_factor_never_violates(self):
        report = check_conicity(Shortfall(lambda x: x, F(1)), WIDE, lambdas=(F(1),))
        assert not report.violated

    def test_positive_factors_required(self):
        with pytest.raises(ValueError):
            check_conicity(VarWeak(F(1, 2)), SMALL, lambdas=(F(-1),))


class TestNumeraireInvariance:
    def test_strict_and_weak_pass(self):
        for family in (VarStrict, VarWeak):
            report = check_numeraire_invariance(family(F(1, 2)), SMALL)
            assert not report.violated

    def test_uniform_strict_annotated(self):
        report = check_numeraire_invariance(VarUniformStrict(F(1, 2)), SMALL)
        assert not report.violated
        assert any("coincides with" in note for note in report.notes)

    def test_es_can_fail_numeraire(self):
        # currency change reweights the loss state: X=(-1,3) has mean 2/2=1 >= 0
        # but Z=(4,1) gives ZX=(-4,3) with negative mean
        spec = ExpectedShortfallSet(0)
        universe = PositionUniverse(2, (F(-1), F(0), F(1), F(3)))
        report = check_numeraire_invariance(spec, universe, z_values=(F(1, 2), F(1), F(4)))
        assert report.violated
        assert replay_numeraire(spec, report.witness)

    def test_positive_z_required(self):
        with pytest.raises(ValueError):
            check_numeraire_invariance(VarWeak(F(1, 2)), SMALL, z_values=(F(0), F(1)))

    def test_generator_output_validated(self):
        def bad_generator(rng):
            return Position([F(-1), F(1)])

        with pytest.raises(ValueError):
            check_numeraire_invariance(
                VarWeak(F(1, 2)), PositionUniverse(2, (F(-1), F(1))),
                z_generator=bad_generator, trials=10,
            )


class TestTruncationClosedness:
    def test_var_families_pass_with_vacuous_note(self):
        report = check_truncation_closedness(VarStrict(F(1, 2)), SMALL)
        assert not report.violated
        assert any("vacuous" in note for note in report.notes)

    def test_small_caps_no_note(self):
        report = check_truncation_closedness(
            VarStrict(F(1, 2)), WIDE, caps=(F(1, 2), F(1))
        )
        assert not report.violated
        assert report.notes == ()

    def test_oracle_violation_and_replay(self):
        # reject exactly the positions touching the grid boundary: every
        # truncation at caps below the boundary is accepted, the position is not
        universe = PositionUniverse(2, (F(-2), F(-1), F(0)))
        spec = OracleSet(lambda p: all(abs(v) < 2 for v in p.values), tuple(universe), "interior")
        report = check_truncation_closedness(spec, universe, caps=(F(1, 2), F(1)))
        assert report.violated
        assert replay_truncation(spec, report.witness)


class TestCipClosedness:
    def test_weak_family_closed_on_closure_sequences(self):
        target = FiniteDistribution([(-1, F(1, 2)), (1, F(1, 2))])
        seqs = [closure_sequence(target, F(1, 2), list(range(1, 9)))]
        report = check_cip_closedness(VarWeak(F(1, 2)), seqs)
        assert not report.violated

    def test_strict_family_violated(self):
        alpha = F(1, 2)
        target = FiniteDistribution([(-1, F(1, 2)), (1, F(1, 2))])
        seqs = [closure_sequence(target, alpha, list(range(1, 9)))]
        report = check_cip_closedness(VarStrict(alpha), seqs)
        assert report.violated
        assert report.witness.sequence_index == 0
        assert replay_cip(VarStrict(alpha), seqs, report.witness)
        # distances shrink monotonically
        ds = report.witness.distances
        assert all(a >= b for a, b in zip(ds, ds[1:]))

    def test_constant_sequence_never_violates(self):
        d = FiniteDistribution([(-1, F(1, 4)), (1, F(3, 4))])
        seqs = [ConvergentSequence((d,) * 8, d)]
        report = check_cip_closedness(VarStrict(F(1, 2)), seqs)
        assert not report.violated

    def test_nonconvergent_sequence_rejected(self):
        far = FiniteDistribution.point_mass(10)
        near = FiniteDistribution.point_mass(0)
        with pytest.raises(NonConvergentSequenceError):
            check_cip_closedness(VarWeak(F(1, 2)), [ConvergentSequence((far, far), near)])


class TestVarFamiliesFourAxioms:
    def test_all_four_axioms_exhaustive_on_four_states(self):
        # surplus invariance, law invariance, conicity, truncation closedness
        # all hold for the three families on the 5-value grid
        universe = PositionUniverse(4, (F(-2), F(-1), F(0), F(1), F(2)))
        for family in (VarStrict, VarUniformStrict, VarWeak):
            for alpha in (F(1, 4), F(3, 4)):
                spec = family(alpha)
                for checker in (
                    check_surplus_invariance,
                    check_law_invariance,
                    check_conicity,
                    check_truncation_closedness,
                ):
                    report = checker(spec, universe)
                    assert report.mode == "exhaustive"
                    assert not report.violated, (family.__name__, alpha, report)


class TestEsSurplusAcrossLevels:
    def test_generic_checker_finds_violations_within_budget(self):
        # the randomized searcher (not the dedicated construction) must find a
        # surplus violation for every level within 10^5 trials
        universe = PositionUniverse(8, (F(-1), F(0), F(1), F(9)))
        for beta in (F(0), F(1, 4), F(1, 2), F(3, 4)):
            spec = ExpectedShortfallSet(beta)
            report = check_surplus_invariance(spec, universe, trials=10 ** 5, seed=3)
            assert report.mode == "randomized"
            assert report.violated, f"beta={beta}: no violation in {report.trials} trials"
            assert report.trials <= 10 ** 5
            assert replay_surplus(spec, report.witness)


class TestExhaustiveThreshold:
    def test_mode_switches_at_limit(self):
        spec = VarWeak(F(1, 2))
        small = check_surplus_invariance(spec, PositionUniverse(2, (F(-1), F(1))))
        assert small.mode == "exhaustive"
        forced = check_surplus_invariance(spec, PositionUniverse(2, (F(-1), F(1))), exhaustive_limit=3, trials=50)
        assert forced.mode == "randomized"
        assert forced.seed == 0
