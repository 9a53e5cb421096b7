"""Statement-emission kernels and exact Bayesian conditioning by enumeration.

A protocol is a per-family distribution over structured statements; weight not
assigned to any statement is reject mass. Posteriors are exact Bayes quotients
over the (pre-filter renormalized) uniform prior.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ZeroStatementMass
from .model import (
    Family,
    QueryPredicate,
    Sex,
    WorldConfig,
    day_name,
    enumerate_families,
    eval_query,
    family_str,
    restrict_prior,
    uniform_prior,
)


# ---------------------------------------------------------------------------
# Statements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    """"I have a son/daughter born on <day>"; day None means day unmentioned."""

    sex: Sex
    day: int | None = None


@dataclass(frozen=True)
class AtLeastOne:
    sex: Sex


@dataclass(frozen=True)
class TwoOfAKind:
    sex: Sex


@dataclass(frozen=True)
class ProudOf:
    sex: Sex


@dataclass(frozen=True)
class YesNo:
    answer: bool


@dataclass(frozen=True)
class Text:
    label: str


Statement = Claim | AtLeastOne | TwoOfAKind | ProudOf | YesNo | Text


class _Reject:
    """Distinguished marginal key for unassigned (reject) mass."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "REJECT"


REJECT = _Reject()


def render_statement(s: Statement, cfg: WorldConfig) -> str:
    match s:
        case Claim(sex=sex, day=None):
            return f"claim({sex.name.lower()})"
        case Claim(sex=sex, day=day):
            return f"claim({sex.name.lower()},{day_name(day, cfg)})"
        case AtLeastOne(sex=sex):
            return f"atleastone({sex.name.lower()})"
        case TwoOfAKind(sex=sex):
            return f"twoofakind({sex.name.lower()})"
        case ProudOf(sex=sex):
            return f"proudof({sex.name.lower()})"
        case YesNo(answer=a):
            return "yes" if a else "no"
        case Text(label=label):
            return f"text({label!r})"
    raise TypeError(f"not a statement: {s!r}")


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------

Row = dict[Statement, Fraction]


@dataclass(frozen=True)
class ProtocolKernel:
    """Exact stochastic map from families to statements, with reject mass.

    ``rows`` maps each family in the (pre-filtered) support to its emission
    weights; weight left over from 1 is implicit reject mass. Families failing
    ``pre_filter`` are rejected before speaking and renormalized away.
    """

    config: WorldConfig
    rows: dict[Family, Row]
    pre_filter: QueryPredicate | None = None

    def support(self) -> list[Family]:
        fams = enumerate_families(self.config)
        if self.pre_filter is None:
            return fams
        return [f for f in fams if eval_query(self.pre_filter, f)]

    def filtered_prior(self) -> dict[Family, Fraction]:
        prior = uniform_prior(self.config)
        if self.pre_filter is None:
            return prior
        return restrict_prior(prior, self.pre_filter)


def validate_kernel(k: ProtocolKernel) -> list[str]:
    """Invariant check; returns one message per violation, empty iff valid."""
    violations = []
    support = set(k.support())
    for f in support:
        if f not in k.rows:
            violations.append(f"{family_str(f)}: no row for support family")
    for f, row in k.rows.items():
        tag = family_str(f)
        if f not in support:
            violations.append(f"{tag}: row for a family outside the support")
            continue
        total = Fraction(0)
        for s, w in row.items():
            if w < 0:
                violations.append(f"{tag}: negative weight {w} for {s!r}")
            if isinstance(s, Claim) and s.day is not None:
                if not 0 <= s.day < k.config.week_length:
                    violations.append(f"{tag}: statement day {s.day} out of range")
            total += w
        if total > 1:
            violations.append(f"{tag}: emission weights sum to {total} > 1")
    return violations


@dataclass(frozen=True)
class CaseRow:
    family: Family
    prior: Fraction
    emission: Fraction
    event: bool


@dataclass(frozen=True)
class PosteriorReport:
    statement: Statement
    statement_mass: Fraction
    joint_mass: Fraction
    posterior: Fraction
    case_table: tuple[CaseRow, ...] = field(repr=False)


def statement_mass(k: ProtocolKernel, s: Statement) -> Fraction:
    prior = k.filtered_prior()
    return sum(
        (w * k.rows.get(f, {}).get(s, Fraction(0)) for f, w in prior.items()),
        Fraction(0),
    )


def posterior(k: ProtocolKernel, s: Statement, q: QueryPredicate) -> PosteriorReport:
    """Exact Bayes quotient P(q | s emitted) with the full per-family case table."""
    prior = k.filtered_prior()
    rows = []
    s_mass = Fraction(0)
    joint = Fraction(0)
    for f in sorted(prior, key=family_str):
        w = prior[f]
        emission = k.rows.get(f, {}).get(s, Fraction(0))
        if emission == 0:
            continue
        holds = eval_query(q, f)
        rows.append(CaseRow(f, w, emission, holds))
        s_mass += w * emission
        if holds:
            joint += w * emission
    if s_mass == 0:
        raise ZeroStatementMass(
            f"statement {s!r} is never emitted under this protocol"
        )
    return PosteriorReport(s, s_mass, joint, joint / s_mass, tuple(rows))


def marginal(k: ProtocolKernel) -> dict:
    """Masses over every emitted statement plus a REJECT entry; sums to 1 exactly."""
    prior = k.filtered_prior()
    out: dict = {}
    reject = Fraction(0)
    for f, w in prior.items():
        row = k.rows.get(f, {})
        emitted = Fraction(0)
        for s, ew in row.items():
            if ew > 0:
                out[s] = out.get(s, Fraction(0)) + w * ew
                emitted += ew
        reject += w * (1 - emitted)
    out[REJECT] = reject
    return out
