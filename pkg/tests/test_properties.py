"""Property-based checks over randomized kernels on small worlds."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from ambiprob.engine import (
    AtLeastOne,
    Claim,
    ProtocolKernel,
    REJECT,
    marginal,
    posterior,
    statement_mass,
    validate_kernel,
)
from ambiprob.model import (
    AllMatch,
    Always,
    Exists,
    Not,
    Sex,
    WorldConfig,
    count_families,
    enumerate_families,
    restrict_prior,
    uniform_prior,
)

WORLDS = [WorldConfig(1, 2), WorldConfig(2, 2), WorldConfig(7, 2)]


def alphabet(cfg):
    stmts = [AtLeastOne(Sex.BOY), AtLeastOne(Sex.GIRL)]
    stmts += [Claim(Sex.BOY, d) for d in range(cfg.week_length)]
    return stmts


@st.composite
def kernels(draw):
    cfg = draw(st.sampled_from(WORLDS))
    stmts = alphabet(cfg)
    rows = {}
    for f in enumerate_families(cfg):
        row = {}
        # random rational weights normalized to total <= 1
        raw = [draw(st.integers(min_value=0, max_value=4)) for _ in stmts]
        total = sum(raw)
        scale = draw(st.integers(min_value=max(total, 1), max_value=max(total, 1) + 6))
        for s, r in zip(stmts, raw):
            if r:
                row[s] = Fraction(r, scale)
        rows[f] = row
    return ProtocolKernel(cfg, rows)


def emitted_statements(k):
    seen = set()
    for row in k.rows.values():
        for s, w in row.items():
            if w > 0:
                seen.add(s)
    return sorted(seen, key=repr)


queries = st.sampled_from(
    [
        AllMatch(sex=Sex.BOY),
        Exists(Sex.GIRL),
        AllMatch(day=0),
        Exists(Sex.BOY, 0),
        Always(),
    ]
)


@settings(max_examples=40, deadline=None)
@given(kernels(), queries, st.randoms(use_true_random=False))
def test_posterior_complement_is_one(k, q, rnd):
    assert validate_kernel(k) == []
    stmts = emitted_statements(k)
    if not stmts:
        return
    s = rnd.choice(stmts)
    p = posterior(k, s, q).posterior
    p_not = posterior(k, s, Not(q)).posterior
    assert p + p_not == 1
    assert 0 <= p <= 1


@settings(max_examples=40, deadline=None)
@given(kernels())
def test_marginal_total_probability(k):
    m = marginal(k)
    assert sum(m.values(), Fraction(0)) == 1
    assert m[REJECT] >= 0
    for s in emitted_statements(k):
        assert m[s] == statement_mass(k, s)


@settings(max_examples=40, deadline=None)
@given(kernels(), st.fractions(min_value=Fraction(1, 20), max_value=1),
       st.randoms(use_true_random=False))
def test_posterior_invariant_under_uniform_scaling(k, c, rnd):
    stmts = emitted_statements(k)
    if not stmts:
        return
    s = rnd.choice(stmts)
    q = AllMatch(sex=Sex.BOY)
    base = posterior(k, s, q).posterior
    scaled_rows = {
        f: {st_: (w * c if st_ == s else w) for st_, w in row.items()}
        for f, row in k.rows.items()
    }
    scaled = ProtocolKernel(k.config, scaled_rows, pre_filter=k.pre_filter)
    assert validate_kernel(scaled) == []
    assert posterior(scaled, s, q).posterior == base


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(WORLDS), queries)
def test_restrict_prior_idempotent(cfg, q):
    prior = uniform_prior(cfg)
    if count_families(cfg, q) == 0:
        return
    once = restrict_prior(prior, q)
    assert restrict_prior(once, q) == once
    assert sum(once.values(), Fraction(0)) == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(WORLDS), queries)
def test_count_complement_property(cfg, q):
    total = cfg.n_outcomes
    assert count_families(cfg, q) + count_families(cfg, Not(q)) == total
