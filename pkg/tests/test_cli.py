import io
from fractions import Fraction

import pytest

from acceptset.cli import (
    BalanceSheet,
    CliError,
    decimal12,
    load_scenarios,
    main,
    position_from_balance_sheet,
)
from acceptset import FiniteDistribution

F = Fraction


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


SCEN = """\
# order book snapshot
scenario_id,probability,value
crash,0.01,-1
calm,0.99,1
"""

SETS_CFG = """\
[set weak99]
kind = var_weak
alpha = 0.99

[set uniform99]
kind = var_uniform_strict
alpha = 0.99
"""


class TestScenarioLoading:
    def test_equiprobable_default(self, tmp_path):
        path = write(tmp_path, "s.csv", "scenario_id,value\nup,1\ndown,-1\n")
        table = load_scenarios(path)
        assert [r.probability for r in table.rows] == [F(1, 2), F(1, 2)]

    def test_exact_decimal_probabilities(self, tmp_path):
        path = write(tmp_path, "s.csv", "scenario_id,probability,value\na,0.25,1\nb,0.25,2\nc,0.5,3\n")
        table = load_scenarios(path)
        assert [r.probability for r in table.rows] == [F(1, 4), F(1, 4), F(1, 2)]

    def test_sum_error_reports_total(self, tmp_path):
        path = write(tmp_path, "s.csv", "scenario_id,probability,value\na,0.3,1\nb,0.3,2\nc,0.3,3\n")
        with pytest.raises(CliError, match="sum to 9/10"):
            load_scenarios(path)

    def test_duplicate_id(self, tmp_path):
        path = write(tmp_path, "s.csv", "scenario_id,value\nup,1\nup,2\n")
        with pytest.raises(CliError, match="line 3.*duplicate"):
            load_scenarios(path)

    def test_malformed_row_line_number(self, tmp_path):
        path = write(tmp_path, "s.csv", "scenario_id,value\nup,1\nbad_row\n")
        with pytest.raises(CliError, match="line 3"):
            load_scenarios(path)

    def test_comments_and_blanks_skipped(self, tmp_path):
        path = write(tmp_path, "s.csv", "# hi\n\nscenario_id,value\n# mid\nup,1\ndown,-1\n")
        assert len(load_scenarios(path).rows) == 2

    def test_lossless_18_digit_round_trip(self, tmp_path):
        digits = "0.123456789012345678"
        path = write(tmp_path, "s.csv", f"scenario_id,value\nonly,{digits}\n")
        table = load_scenarios(path)
        assert table.rows[0].value == F(123456789012345678, 10 ** 18)


class TestBalanceSheet:
    def returns_table(self, tmp_path, rows):
        body = "\n".join(f"s{i},{r}" for i, r in enumerate(rows))
        path = write(tmp_path, "r.csv", f"scenario_id,value\n{body}\n")
        return load_scenarios(path)

    def test_leveraged_book(self, tmp_path):
        sheet = BalanceSheet(F(10), F(90), F(0), self.returns_table(tmp_path, ["-0.2", "0.1"]))
        law = position_from_balance_sheet(sheet)
        assert law == FiniteDistribution([(-10, F(1, 2)), (20, F(1, 2))])

    def test_no_leverage_scales_with_capital(self, tmp_path):
        table = self.returns_table(tmp_path, ["-0.5", "1"])
        one = position_from_balance_sheet(BalanceSheet(F(1), F(0), F(3, 10), table))
        ten = position_from_balance_sheet(BalanceSheet(F(10), F(0), F(3, 10), table))
        assert ten == one.scale(10)

    def test_break_even(self, tmp_path):
        sheet = BalanceSheet(F(0), F(100), F(1, 20), self.returns_table(tmp_path, ["0.05"]))
        law = position_from_balance_sheet(sheet)
        assert law == FiniteDistribution.point_mass(0)

    def test_invariants(self, tmp_path):
        table = self.returns_table(tmp_path, ["0"])
        with pytest.raises(CliError):
            BalanceSheet(F(0), F(0), F(0), table)
        with pytest.raises(CliError):
            BalanceSheet(F(-1), F(2), F(0), table)


class TestAssess:
    def test_mixed_verdicts_exit_one(self, tmp_path):
        scen = write(tmp_path, "s.csv", SCEN)
        cfg = write(tmp_path, "c.cfg", SETS_CFG)
        code, text = run(["assess", "--scenarios", scen, "--config", cfg])
        assert code == 1
        assert "set=weak99" in text and "accepted=true" in text
        assert "set=uniform99" in text and "accepted=false" in text

    def test_all_accept_exit_zero(self, tmp_path):
        # a nonnegative book passes all three families at any level below one
        scen = write(tmp_path, "s.csv", "scenario_id,value\nup,1\nflat,0\n")
        code, text = run(["assess", "--scenarios", scen, "--alpha", "0.9"])
        assert code == 0
        assert text.count("accepted=true") == 3

    def test_nonnegative_accepted_by_weak_at_one(self, tmp_path):
        scen = write(tmp_path, "s.csv", "scenario_id,value\nup,1\nflat,0\n")
        cfg_text = "[set weak1]\nkind = var_weak\nalpha = 1\n"
        code, text = run(["assess", "--scenarios", scen, "--config",
                          write(tmp_path, "one.cfg", cfg_text)])
        assert code == 0 and "accepted=true" in text

    def test_empty_scenarios_exit_two(self, tmp_path):
        scen = write(tmp_path, "s.csv", "")
        code, _ = run(["assess", "--scenarios", scen, "--alpha", "1/2"])
        assert code == 2

    def test_missing_sets_exit_two(self, tmp_path):
        scen = write(tmp_path, "s.csv", SCEN)
        code, _ = run(["assess", "--scenarios", scen])
        assert code == 2

    def test_routes_reported(self, tmp_path):
        scen = write(tmp_path, "s.csv", SCEN)
        code, text = run(["assess", "--scenarios", scen, "--alpha", "0.99"])
        assert code == 1
        for line in text.splitlines():
            if line.startswith("record=assess"):
                assert "route_probability=" in line and "route_var=" in line


class TestMeasure:
    def test_flag_shorthand(self, tmp_path):
        scen = write(tmp_path, "s.csv", SCEN)
        code, text = run(["measure", "--scenarios", scen, "--alpha", "0.99", "--beta", "0.75"])
        assert code == 0
        lines = [l for l in text.splitlines() if l.startswith("record=measure")]
        assert "name=var_lower level=99/100 value=-1" in lines[0]
        assert "name=var_upper level=99/100 value=1" in lines[1]
        assert lines[2].startswith("record=measure name=expected_shortfall level=3/4")

    def test_config_sections(self, tmp_path):
        scen = write(
            tmp_path, "s.csv",
            "scenario_id,probability,value\na,0.25,-2\nb,0.25,-1\nc,0.25,0\nd,0.25,3\n",
        )
        cfg = write(
            tmp_path, "m.cfg",
            "[measure es75]\nkind = expected_shortfall\nbeta = 0.75\n"
            "[measure mean]\nkind = distortion\nknots = 0:0,1:1\n",
        )
        code, text = run(["measure", "--scenarios", scen, "--config", cfg])
        assert code == 0
        assert "name=es75 level=3/4 value=2 value_dec=2" in text
        assert "name=mean value=0 value_dec=0" in text

    def test_no_measures_exit_two(self, tmp_path):
        scen = write(tmp_path, "s.csv", SCEN)
        code, _ = run(["measure", "--scenarios", scen])
        assert code == 2

    def test_decimal_rendering(self):
        assert decimal12(F(1, 3)) == "0.333333333333"
        assert decimal12(F(-23, 25)) == "-0.92"
        assert decimal12(F(10 ** 14, 3)).startswith("3.3333333333")


PROPS_CFG = """\
seed = 7
n = 2
grid = -1,0,1

[check es_surplus]
property = surplus_invariance
kind = expected_shortfall
beta = 0
expect = violated

[check weak_conic]
property = conicity
kind = var_weak
alpha = 0.5

[check strict_cip]
property = cip_closedness
kind = var_strict
alpha = 0.5
expect = violated
"""


class TestCheckProperties:
    def test_expectations_met(self, tmp_path):
        cfg = write(tmp_path, "p.cfg", PROPS_CFG)
        code, text = run(["check-properties", "--config", cfg])
        assert code == 0
        assert text.count("matched=true") == 3

    def test_expectation_failure_exit_one(self, tmp_path):
        cfg = write(
            tmp_path, "p.cfg",
            "[check impossible]\nproperty = conicity\nkind = var_weak\nalpha = 0.5\nexpect = violated\n",
        )
        code, text = run(["check-properties", "--config", cfg])
        assert code == 1
        assert "matched=false" in text

    def test_bad_config_exit_two(self, tmp_path):
        cfg = write(tmp_path, "p.cfg", "[check broken]\nkind = var_weak\nalpha = 0.5\n")
        code, _ = run(["check-properties", "--config", cfg])
        assert code == 2


class TestClassifyCommand:
    def test_weak_form_recovered(self, tmp_path):
        cfg = write(
            tmp_path, "c.cfg",
            "[classify weak75]\nkind = var_weak\nalpha = 0.75\nn = 4\ngrid = -1,0,1\nexpect_form = var_weak\n",
        )
        code, text = run(["classify", "--config", cfg])
        assert code == 0
        assert "alpha_hat=3/4" in text and "form=var_weak" in text

    def test_form_mismatch_exit_one(self, tmp_path):
        cfg = write(
            tmp_path, "c.cfg",
            "[classify weak75]\nkind = var_weak\nalpha = 0.75\nn = 4\ngrid = -1,0,1\nexpect_form = empty\n",
        )
        code, _ = run(["classify", "--config", cfg])
        assert code == 1


class TestCounterexampleCommand:
    def test_uniform_numeraire(self):
        code, text = run(["counterexample", "uniform-numeraire", "--alpha", "0.6"])
        assert code == 0
        assert text.count("verified=true") == 3

    def test_weak_star(self):
        code, text = run(["counterexample", "weak-star", "--alpha", "1/2", "--m", "4"])
        assert code == 0
        assert "gap=1/32" in text

    def test_unknown_name(self):
        code, _ = run(["counterexample", "nonsense"])
        assert code == 2


class TestBalanceSheetCommand:
    def test_position_and_assessment(self, tmp_path):
        returns = write(tmp_path, "r.csv", "scenario_id,value\ndown,-0.2\nup,0.1\n")
        cfg = write(
            tmp_path, "b.cfg",
            "[balance_sheet]\nc = 10\nd = 90\nr = 0\n\n[set weak]\nkind = var_weak\nalpha = 0.5\n",
        )
        code, text = run(["balance-sheet", "--scenarios", returns, "--config", cfg])
        assert code == 0
        assert "record=position_atom value=-10" in text
        assert "record=position_atom value=20" in text
        assert "set=weak" in text and "accepted=true" in text


class TestDeterminismAndSeeds:
    def test_byte_identical_runs(self, tmp_path):
        cfg = write(tmp_path, "p.cfg", PROPS_CFG)
        _, first = run(["check-properties", "--config", cfg, "--seed", "5"])
        _, second = run(["check-properties", "--config", cfg, "--seed", "5"])
        assert first == second

    def test_env_seed_overrides_flag(self, tmp_path, monkeypatch):
        cfg = write(
            tmp_path, "p.cfg",
            "n = 3\ngrid = -2,-1,0,1,9\n"
            "[check es_rand]\nproperty = surplus_invariance\nkind = expected_shortfall\n"
            "beta = 0.5\ntrials = 300\nexpect = violated\n",
        )
        monkeypatch.setenv("ACCEPTSET_SEED", "123")
        code, text = run(["check-properties", "--config", cfg, "--seed", "999"])
        del code
        monkeypatch.delenv("ACCEPTSET_SEED")
        _, reference = run(["check-properties", "--config", cfg, "--seed", "123"])
        assert text == reference
