"""Batch command-line interface.

Subcommands: ``assess``, ``measure``, ``check-properties``, ``classify``,
``counterexample``, ``balance-sheet``.  Scenario tables are CSV
(``scenario_id,probability,value`` or ``scenario_id,value``; ``#`` comments);
the configuration format is a flat key-value file with ``[section]`` headers.
Output is line-oriented ``key=value`` records (stable key order, greppable in
CI) followed by ``#``-prefixed human summary lines.  Exit status: 0 success /
all-accepted, 1 a test rejected or an expectation failed, 2 usage or input
error.  The environment variable ``ACCEPTSET_SEED`` overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import counterexamples as cx
from .acceptance import (
    AcceptanceSet,
    DistortionSet,
    ExpectedShortfallSet,
    OracleSet,
    Shortfall,
    VarStrict,
    VarUniformStrict,
    VarWeak,
    describe_set,
    member,
)
from .characterize import classify as classify_oracle
from .characterize import closure_sequence
from .distribution import FiniteDistribution
from .extended import Infinite, as_rational, format_extended
from .piecewise import PiecewiseLinear
from .properties import (
    PositionUniverse,
    PropertyReport,
    check_cip_closedness,
    check_conicity,
    check_law_invariance,
    check_numeraire_invariance,
    check_surplus_invariance,
    check_truncation_closedness,
)
from .risk_measures import (
    DistortionFunction,
    DistortionSpec,
    ESSpec,
    VaRLowerSpec,
    VaRUpperSpec,
    evaluate_measure,
)

__all__ = [
    "CliError",
    "ScenarioTable",
    "BalanceSheet",
    "load_scenarios",
    "position_from_balance_sheet",
    "main",
]


class CliError(Exception):
    """Input or usage problem; reported on stderr with exit status 2."""


# ---------------------------------------------------------------------------
# Scenario tables and balance sheets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioRow:
    scenario_id: str
    probability: Fraction
    value: Fraction


@dataclass(frozen=True)
class ScenarioTable:
    rows: Tuple[ScenarioRow, ...]

    def law(self) -> FiniteDistribution:
        return FiniteDistribution((r.value, r.probability) for r in self.rows)


def _parse_rational(text: str, what: str, lineno: int) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise CliError(f"line {lineno}: cannot parse {what} {text!r} as an exact number")


def load_scenarios(path: str) -> ScenarioTable:
    """Parse a scenario CSV with exact decimal-to-rational conversion."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.readlines()
    except OSError as exc:
        raise CliError(f"cannot read scenarios {path!r}: {exc}")
    lines = [
        (i + 1, line.strip())
        for i, line in enumerate(raw)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise CliError(f"{path}: no data")
    header_no, header = lines[0]
    cols = [c.strip() for c in header.split(",")]
    if cols == ["scenario_id", "probability", "value"]:
        with_probs = True
    elif cols == ["scenario_id", "value"]:
        with_probs = False
    else:
        raise CliError(
            f"line {header_no}: header must be 'scenario_id,probability,value' "
            f"or 'scenario_id,value', got {header!r}"
        )
    body = lines[1:]
    if not body:
        raise CliError(f"{path}: no scenario rows")
    rows: List[Tuple[int, str, Optional[str], str]] = []
    for lineno, line in body:
        parts = [p.strip() for p in line.split(",")]
        if with_probs:
            if len(parts) != 3 or not all(parts):
                raise CliError(f"line {lineno}: expected 'scenario_id,probability,value'")
            rows.append((lineno, parts[0], parts[1], parts[2]))
        else:
            if len(parts) != 2 or not all(parts):
                raise CliError(f"line {lineno}: expected 'scenario_id,value'")
            rows.append((lineno, parts[0], None, parts[1]))
    seen: Dict[str, int] = {}
    out: List[ScenarioRow] = []
    n = len(rows)
    for lineno, sid, prob_text, value_text in rows:
        if sid in seen:
            raise CliError(f"line {lineno}: duplicate scenario_id {sid!r} (first at line {seen[sid]})")
        seen[sid] = lineno
        value = _parse_rational(value_text, "value", lineno)
        if prob_text is None:
            prob = Fraction(1, n)
        else:
            prob = _parse_rational(prob_text, "probability", lineno)
            if prob <= 0:
                raise CliError(f"line {lineno}: probability must be positive")
        out.append(ScenarioRow(sid, prob, value))
    total = sum(r.probability for r in out)
    if total != 1:
        raise CliError(f"probabilities sum to {format_extended(total)}, expected exactly 1")
    return ScenarioTable(tuple(out))


@dataclass(frozen=True)
class BalanceSheet:
    capital: Fraction  # c >= 0
    debt: Fraction  # d >= 0
    rate: Fraction  # interest rate r
    returns: ScenarioTable  # net returns R per scenario

    def __post_init__(self):
        if self.capital < 0 or self.debt < 0:
            raise CliError("capital and debt must be nonnegative")
        if self.capital + self.debt <= 0:
            raise CliError("capital plus debt must be positive")


def position_from_balance_sheet(sheet: BalanceSheet) -> FiniteDistribution:
    """End-of-period capital position: X = (c+d)(R+1) - (1+r)d per scenario."""
    assets = sheet.capital + sheet.debt
    liability = (1 + sheet.rate) * sheet.debt
    return FiniteDistribution(
        (assets * (r.value + 1) - liability, r.probability) for r in sheet.returns.rows
    )


# ---------------------------------------------------------------------------
# Config parsing
# ---------------------------------------------------------------------------


@dataclass
class ConfigSection:
    kind: str  # "set" | "measure" | "check" | "classify" | "balance_sheet"
    name: str
    fields: Dict[str, str]
    lineno: int


@dataclass
class Config:
    top: Dict[str, str]
    sections: List[ConfigSection]

    def sections_of(self, kind: str) -> List[ConfigSection]:
        return [s for s in self.sections if s.kind == kind]


def parse_config(path: str) -> Config:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.readlines()
    except OSError as exc:
        raise CliError(f"cannot read config {path!r}: {exc}")
    top: Dict[str, str] = {}
    sections: List[ConfigSection] = []
    current: Optional[ConfigSection] = None
    for i, line in enumerate(raw, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if text.startswith("[") and text.endswith("]"):
            inner = text[1:-1].strip()
            parts = inner.split(None, 1)
            kind = parts[0]
            if kind not in ("set", "measure", "check", "classify", "balance_sheet"):
                raise CliError(f"line {i}: unknown section kind {kind!r}")
            name = parts[1].strip() if len(parts) > 1 else kind
            current = ConfigSection(kind, name, {}, i)
            sections.append(current)
            continue
        if "=" not in text:
            raise CliError(f"line {i}: expected 'key = value', got {text!r}")
        key, value = (part.strip() for part in text.split("=", 1))
        if not key:
            raise CliError(f"line {i}: empty key")
        if current is None:
            top[key] = value
        else:
            current.fields[key] = value
    return Config(top, sections)


def _field_rational(section: ConfigSection, key: str) -> Fraction:
    if key not in section.fields:
        raise CliError(f"section [{section.kind} {section.name}]: missing {key!r}")
    return _parse_rational(section.fields[key], key, section.lineno)


def _parse_knots(text: str, lineno: int) -> List[Tuple[Fraction, Fraction]]:
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ":" not in chunk:
            raise CliError(f"line {lineno}: knot {chunk!r} must look like x:y")
        xs, ys = chunk.split(":", 1)
        pairs.append((_parse_rational(xs, "knot x", lineno), _parse_rational(ys, "knot y", lineno)))
    return pairs


def _set_from_fields(section: ConfigSection) -> AcceptanceSet:
    kind = section.fields.get("kind")
    if kind is None:
        raise CliError(f"section [{section.kind} {section.name}]: missing 'kind'")
    try:
        if kind == "var_strict":
            return VarStrict(_field_rational(section, "alpha"))
        if kind == "var_uniform_strict":
            return VarUniformStrict(_field_rational(section, "alpha"))
        if kind == "var_weak":
            return VarWeak(_field_rational(section, "alpha"))
        if kind == "shortfall":
            loss_text = section.fields.get("loss", "0:0,1:1")
            loss = PiecewiseLinear.from_pairs(_parse_knots(loss_text, section.lineno))
            if not loss.is_nondecreasing() or loss.is_constant():
                raise CliError(
                    f"section [{section.kind} {section.name}]: loss must be nondecreasing and nonconstant"
                )
            return Shortfall(loss, _field_rational(section, "c"))
        if kind == "expected_shortfall":
            return ExpectedShortfallSet(_field_rational(section, "beta"))
        if kind == "distortion":
            knots = _parse_knots(section.fields.get("knots", "0:0,1:1"), section.lineno)
            return DistortionSet(DistortionFunction.from_pairs(knots))
    except ValueError as exc:
        raise CliError(f"section [{section.kind} {section.name}]: {exc}")
    raise CliError(f"section [{section.kind} {section.name}]: unknown set kind {kind!r}")


# ---------------------------------------------------------------------------
# Record output
# ---------------------------------------------------------------------------


def _sanitize(value: str) -> str:
    return value.replace(" ", "_")


def emit(out, pairs: Sequence[Tuple[str, str]]) -> None:
    out.write(" ".join(f"{_sanitize(k)}={_sanitize(v)}" for k, v in pairs) + "\n")


def summary(out, text: str) -> None:
    out.write(f"# {text}\n")


def decimal12(value: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 12
        dec = Decimal(value.numerator) / Decimal(value.denominator)
    return str(dec)


def _value_pair(value) -> List[Tuple[str, str]]:
    """Render a measure value as fraction plus 12-digit decimal (rationals only)."""
    if isinstance(value, Infinite):
        return [("value", repr(value))]
    if isinstance(value, float):
        return [("value", repr(value))]
    return [("value", format_extended(value)), ("value_dec", decimal12(value))]


def _fmt_diag(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return format_extended(value)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _named_sets(config: Optional[Config], alpha: Optional[Fraction]) -> List[Tuple[str, AcceptanceSet]]:
    sets: List[Tuple[str, AcceptanceSet]] = []
    if config is not None:
        for section in config.sections_of("set"):
            sets.append((section.name, _set_from_fields(section)))
    if alpha is not None:
        sets.append(("var_strict", VarStrict(alpha)))
        sets.append(("var_uniform_strict", VarUniformStrict(alpha)))
        sets.append(("var_weak", VarWeak(alpha)))
    if not sets:
        raise CliError("no acceptance sets: provide --config with [set ...] sections or --alpha")
    return sets


def _assess_law(out, law: FiniteDistribution, sets: List[Tuple[str, AcceptanceSet]]) -> int:
    all_ok = True
    for name, spec in sets:
        verdict = member(spec, law)
        pairs: List[Tuple[str, str]] = [
            ("record", "assess"),
            ("set", name),
            ("kind", describe_set(spec)),
            ("accepted", str(verdict.accepted).lower()),
            ("decided_by", verdict.decided_by),
        ]
        if verdict.route_probability is not None:
            pairs.append(("route_probability", str(verdict.route_probability).lower()))
            pairs.append(("route_var", str(verdict.route_var).lower()))
        pairs.extend((key, _fmt_diag(value)) for key, value in verdict.diagnostics)
        emit(out, pairs)
        summary(out, f"{name}: {'ACCEPT' if verdict.accepted else 'REJECT'}")
        all_ok = all_ok and verdict.accepted
    return 0 if all_ok else 1


def cmd_assess(args, out) -> int:
    if not args.scenarios:
        raise CliError("assess requires --scenarios")
    law = load_scenarios(args.scenarios).law()
    config = parse_config(args.config) if args.config else None
    sets = _named_sets(config, args.alpha)
    return _assess_law(out, law, sets)


def cmd_measure(args, out) -> int:
    if not args.scenarios:
        raise CliError("measure requires --scenarios")
    law = load_scenarios(args.scenarios).law()
    measures: List[Tuple[str, object]] = []
    if args.config:
        config = parse_config(args.config)
        for section in config.sections_of("measure"):
            kind = section.fields.get("kind")
            if kind == "var_lower":
                measures.append((section.name, VaRLowerSpec(_field_rational(section, "alpha"))))
            elif kind == "var_upper":
                measures.append((section.name, VaRUpperSpec(_field_rational(section, "alpha"))))
            elif kind == "expected_shortfall":
                measures.append((section.name, ESSpec(_field_rational(section, "beta"))))
            elif kind == "distortion":
                knots = _parse_knots(section.fields.get("knots", "0:0,1:1"), section.lineno)
                measures.append((section.name, DistortionSpec(DistortionFunction.from_pairs(knots))))
            else:
                raise CliError(
                    f"section [measure {section.name}]: unknown measure kind {kind!r}"
                )
    if args.alpha is not None:
        measures.append(("var_lower", VaRLowerSpec(args.alpha)))
        measures.append(("var_upper", VaRUpperSpec(args.alpha)))
    if args.beta is not None:
        measures.append(("expected_shortfall", ESSpec(args.beta)))
    if not measures:
        raise CliError("no measures: provide --config with [measure ...] sections, --alpha, or --beta")
    for name, spec in measures:
        value = evaluate_measure(spec, law)
        level = getattr(spec, "alpha", getattr(spec, "beta", None))
        pairs = [("record", "measure"), ("name", name)]
        if level is not None:
            pairs.append(("level", format_extended(level)))
        pairs.extend(_value_pair(value))
        emit(out, pairs)
        summary(out, f"{name}: {pairs[-1][1]}")
    return 0


_PROPERTY_RUNNERS: Dict[str, Callable] = {
    "surplus_invariance": check_surplus_invariance,
    "law_invariance": check_law_invariance,
    "conicity": check_conicity,
    "numeraire_invariance": check_numeraire_invariance,
    "truncation_closedness": check_truncation_closedness,
}


def _parse_grid(text: str) -> Tuple[Fraction, ...]:
    values = tuple(as_rational(v.strip()) for v in text.split(",") if v.strip())
    if not values:
        raise CliError(f"empty value grid {text!r}")
    return values


def _render_witness(witness) -> str:
    if witness is None:
        return "none"
    return _sanitize(repr(witness))


def _run_property_check(section: ConfigSection, defaults: Dict[str, str], seed: int) -> PropertyReport:
    prop = section.fields.get("property")
    if prop is None:
        raise CliError(f"section [check {section.name}]: missing 'property'")
    merged = dict(defaults)
    merged.update(section.fields)
    n = int(merged.get("n", "3"))
    grid = _parse_grid(merged.get("grid", "-2,-1,0,1,2"))
    trials = int(merged.get("trials", "10000"))
    seed = int(merged.get("seed", str(seed)))
    spec = _set_from_fields(section)
    if prop == "cip_closedness":
        alpha = as_rational(merged.get("alpha", "1/2"))
        denom = (1 - alpha).denominator
        k_neg = int((1 - alpha) * denom)
        if k_neg < 1:
            raise CliError(f"section [check {section.name}]: cip check needs alpha < 1")
        target = FiniteDistribution.equiprobable([-1] * k_neg + [1] * (denom - k_neg))
        sequences = [closure_sequence(target, alpha, list(range(1, 9)))]
        return check_cip_closedness(spec, sequences)
    runner = _PROPERTY_RUNNERS.get(prop)
    if runner is None:
        raise CliError(f"section [check {section.name}]: unknown property {prop!r}")
    universe = PositionUniverse(n, grid)
    kwargs: Dict[str, object] = {"trials": trials, "seed": seed}
    if prop == "conicity" and "lambdas" in merged:
        kwargs["lambdas"] = _parse_grid(merged["lambdas"])
    if prop == "truncation_closedness" and "caps" in merged:
        kwargs["caps"] = _parse_grid(merged["caps"])
    if prop == "numeraire_invariance" and "z_values" in merged:
        kwargs["z_values"] = _parse_grid(merged["z_values"])
    return runner(spec, universe, **kwargs)


def cmd_check_properties(args, out) -> int:
    if not args.config:
        raise CliError("check-properties requires --config")
    config = parse_config(args.config)
    checks = config.sections_of("check")
    if not checks:
        raise CliError("config has no [check ...] sections")
    defaults = dict(config.top)
    if args.n is not None:
        defaults["n"] = str(args.n)
    if args.grid is not None:
        defaults["grid"] = args.grid
    if args.trials is not None:
        defaults["trials"] = str(args.trials)
    seed = args.seed if args.seed is not None else int(defaults.get("seed", "0"))
    all_ok = True
    for section in checks:
        report = _run_property_check(section, defaults, seed)
        expect = section.fields.get("expect", args.expect or "no_violation")
        if expect not in ("no_violation", "violated"):
            raise CliError(f"section [check {section.name}]: bad expect {expect!r}")
        matched = report.verdict == expect
        all_ok = all_ok and matched
        emit(
            out,
            [
                ("record", "property"),
                ("check", section.name),
                ("property", report.property_name),
                ("verdict", report.verdict),
                ("expected", expect),
                ("matched", str(matched).lower()),
                ("trials", str(report.trials)),
                ("mode", report.mode),
                ("seed", "none" if report.seed is None else str(report.seed)),
                ("witness", _render_witness(report.witness)),
            ],
        )
        for note in report.notes:
            summary(out, f"{section.name}: note: {note}")
        summary(out, f"{section.name}: {report.verdict} (expected {expect})")
    return 0 if all_ok else 1


def cmd_classify(args, out) -> int:
    if not args.config:
        raise CliError("classify requires --config")
    config = parse_config(args.config)
    sections = config.sections_of("classify")
    if not sections:
        raise CliError("config has no [classify ...] sections")
    all_ok = True
    for section in sections:
        merged = dict(config.top)
        merged.update(section.fields)
        n = args.n if args.n is not None else int(merged.get("n", "3"))
        grid = _parse_grid(args.grid if args.grid is not None else merged.get("grid", "-1,0,1"))
        spec = _set_from_fields(section)
        universe = tuple(PositionUniverse(n, grid))
        oracle = OracleSet(
            predicate=lambda pos, _s=spec: member(_s, pos.law()).accepted,
            universe=universe,
            name=section.name,
        )
        report = classify_oracle(oracle)
        form = report.exact_form
        form_name = "none" if form is None else form[0]
        form_level = format_extended(form[1]) if form is not None and len(form) > 1 else "none"
        pairs = [
            ("record", "classify"),
            ("check", section.name),
            ("alpha_hat", format_extended(report.alpha_hat)),
            ("lower_sandwich_ok", str(report.lower_sandwich_ok).lower()),
            ("upper_sandwich_ok", str(report.upper_sandwich_ok).lower()),
            ("form", form_name),
            ("form_level", form_level),
        ]
        emit(out, pairs)
        ok = report.lower_sandwich_ok and report.upper_sandwich_ok
        expect_form = section.fields.get("expect_form")
        if expect_form is not None:
            ok = ok and form_name == expect_form
        all_ok = all_ok and ok
        summary(out, f"{section.name}: form={form_name} alpha_hat={format_extended(report.alpha_hat)}")
    return 0 if all_ok else 1


def _emit_counterexample(out, report: cx.CounterexampleReport) -> int:
    for idx, claim in enumerate(report.claims):
        pairs = [
            ("record", "counterexample"),
            ("name", report.name),
            ("claim", str(idx)),
            ("verified", str(claim.verified).lower()),
            ("description", claim.description),
        ]
        pairs.extend(claim.evidence)
        emit(out, pairs)
    for note in report.notes:
        summary(out, f"{report.name}: note: {note}")
    verified = report.all_verified
    summary(out, f"{report.name}: {'all claims verified' if verified else 'CLAIM FAILED'}")
    return 0 if verified else 1


def cmd_counterexample(args, out) -> int:
    name = args.name
    if name == "uniform-numeraire":
        alpha = args.alpha if args.alpha is not None else Fraction(1, 2)
        return _emit_counterexample(out, cx.uniform_numeraire_counterexample(alpha))
    if name == "strict-sandwich":
        alpha = args.alpha if args.alpha is not None else Fraction(1, 2)
        return _emit_counterexample(out, cx.strict_sandwich_construction(alpha))
    if name == "es-surplus":
        betas = (
            tuple(as_rational(b.strip()) for b in args.betas.split(","))
            if args.betas
            else cx.DEFAULT_BETAS
        )
        return _emit_counterexample(out, cx.es_surplus_counterexample(betas))
    if name == "weak-star":
        alpha = args.alpha if args.alpha is not None else Fraction(1, 2)
        return _emit_counterexample(out, cx.weak_star_step_approximation(alpha, args.m))
    raise CliError(
        f"unknown counterexample {name!r}: choose from uniform-numeraire, "
        "strict-sandwich, es-surplus, weak-star"
    )


def cmd_balance_sheet(args, out) -> int:
    if not args.scenarios:
        raise CliError("balance-sheet requires --scenarios (the net-return table)")
    if not args.config:
        raise CliError("balance-sheet requires --config with a [balance_sheet] section")
    config = parse_config(args.config)
    sections = config.sections_of("balance_sheet")
    if not sections:
        raise CliError("config has no [balance_sheet] section")
    section = sections[0]
    sheet = BalanceSheet(
        capital=_field_rational(section, "c"),
        debt=_field_rational(section, "d"),
        rate=_field_rational(section, "r"),
        returns=load_scenarios(args.scenarios),
    )
    law = position_from_balance_sheet(sheet)
    emit(
        out,
        [
            ("record", "balance_sheet"),
            ("capital", format_extended(sheet.capital)),
            ("debt", format_extended(sheet.debt)),
            ("rate", format_extended(sheet.rate)),
            ("atoms", str(len(law.values))),
        ],
    )
    for v, p in law.atoms:
        emit(
            out,
            [
                ("record", "position_atom"),
                ("value", format_extended(v)),
                ("value_dec", decimal12(v)),
                ("prob", format_extended(p)),
            ],
        )
    summary(out, f"position has {len(law.values)} distinct outcomes")
    set_sections = config.sections_of("set")
    if set_sections or args.alpha is not None:
        sets = _named_sets(config if set_sections else None, args.alpha)
        return _assess_law(out, law, sets)
    return 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acceptset",
        description="Capital adequacy testing with exact VaR-induced acceptance sets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, scenario: bool = False) -> None:
        if scenario:
            p.add_argument("--scenarios", help="scenario CSV path")
        p.add_argument("--config", help="configuration file path")
        p.add_argument("--alpha", type=as_rational, default=None, help="confidence level")
        p.add_argument("--beta", type=as_rational, default=None, help="expected-shortfall level")
        p.add_argument("--seed", type=int, default=None, help="randomness seed")
        p.add_argument("--trials", type=int, default=None, help="randomized-trial budget")
        p.add_argument("--n", type=int, default=None, help="states of the equi-probable space")
        p.add_argument("--grid", default=None, help="comma-separated value grid")
        p.add_argument(
            "--expect",
            choices=("no_violation", "violated"),
            default=None,
            help="default expectation for property checks",
        )

    common(sub.add_parser("assess", help="membership verdicts for a scenario law"), scenario=True)
    common(sub.add_parser("measure", help="risk-measure values for a scenario law"), scenario=True)
    common(sub.add_parser("check-properties", help="run property falsifiers"))
    common(sub.add_parser("classify", help="extract the level and sandwich a set"))
    ce = sub.add_parser("counterexample", help="replay a counterexample construction")
    ce.add_argument("name", help="uniform-numeraire | strict-sandwich | es-surplus | weak-star")
    ce.add_argument("--m", type=int, default=4, help="cells for the weak-star construction")
    ce.add_argument("--betas", default=None, help="comma-separated levels for es-surplus")
    common(ce)
    common(sub.add_parser("balance-sheet", help="build a position from a balance sheet"), scenario=True)
    return parser


_COMMANDS = {
    "assess": cmd_assess,
    "measure": cmd_measure,
    "check-properties": cmd_check_properties,
    "classify": cmd_classify,
    "counterexample": cmd_counterexample,
    "balance-sheet": cmd_balance_sheet,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    env_seed = os.environ.get("ACCEPTSET_SEED")
    if env_seed is not None:
        try:
            args.seed = int(env_seed)
        except ValueError:
            print(f"acceptset: bad ACCEPTSET_SEED {env_seed!r}", file=sys.stderr)
            return 2
    try:
        return _COMMANDS[args.command](args, out)
    except CliError as exc:
        print(f"acceptset: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
