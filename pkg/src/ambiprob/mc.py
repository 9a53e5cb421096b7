"""Seeded sampling oracle that executes protocols literally.

The "sent home" step is a genuine rejection loop on sampled families; in-run
reject mass triggers a redraw of the whole run. The generator is numpy's PCG64
(a published, seedable algorithm), driven in fixed-size chunks so results are
bit-identical for identical (seed, config, protocol, trial count, shards).

Emission probabilities are exact rationals; sampling scales them to a common
integer denominator, so no floating-point comparison enters the draw itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .engine import ProtocolKernel, Statement, posterior
from .errors import DegenerateProtocol
from .model import QueryPredicate, WorldConfig, enumerate_families, eval_query

_CHUNK = 1 << 18


@dataclass(frozen=True)
class McResult:
    trials: int  # accepted runs (emitted any statement)
    rejected_families: int  # pre-filter "sent home" redraws
    rejected_runs: int  # in-procedure reject redraws
    hits: int
    statement_matches: int
    estimate: float
    stderr: float
    seed: int
    shards: int


@dataclass(frozen=True)
class AgreementReport:
    result: McResult
    exact: Fraction
    tolerance: float
    passed: bool


def _compile_tables(k: ProtocolKernel, s: Statement, q: QueryPredicate):
    """Integer sampling tables: per-family cumulative thresholds over a common
    denominator, plus pre-filter and event lookup arrays."""
    fams = enumerate_families(k.config)
    passes = np.array(
        [k.pre_filter is None or eval_query(k.pre_filter, f) for f in fams],
        dtype=bool,
    )
    event = np.array([eval_query(q, f) for f in fams], dtype=bool)

    alphabet: list[Statement] = []
    index: dict[Statement, int] = {}
    for f in fams:
        for st in k.rows.get(f, {}):
            if st not in index:
                index[st] = len(alphabet)
                alphabet.append(st)
    if s not in index:
        raise DegenerateProtocol(f"statement {s!r} is never emitted (zero mass)")

    denom = 1
    for f in fams:
        for w in k.rows.get(f, {}).values():
            denom = math.lcm(denom, w.denominator)

    n_stmt = len(alphabet)
    cum = np.zeros((len(fams), n_stmt), dtype=np.int64)
    for fi, f in enumerate(fams):
        acc = 0
        scaled = [0] * n_stmt
        for st, w in k.rows.get(f, {}).items():
            scaled[index[st]] = int(w * denom)
        for si in range(n_stmt):
            acc += scaled[si]
            cum[fi, si] = acc
    return passes, event, cum, index[s], denom


def _run_shard(rng, passes, event, cum, target, denom, n_matches, cap):
    n_fam = passes.shape[0]
    n_stmt = cum.shape[1]
    counters = dict(
        trials=0, rejected_families=0, rejected_runs=0, hits=0,
        statement_matches=0,
    )
    consecutive_misses = 0
    while counters["statement_matches"] < n_matches:
        fam = rng.integers(0, n_fam, size=_CHUNK)
        u = rng.integers(0, denom, size=_CHUNK)
        ok = passes[fam]
        # statement index per draw; n_stmt = in-run reject, n_stmt+1 = sent home
        idx = np.full(_CHUNK, n_stmt + 1, dtype=np.int64)
        sel = np.nonzero(ok)[0]
        idx[sel] = (cum[fam[sel]] <= u[sel, None]).sum(axis=1)

        match = idx == target
        n_new = int(match.sum())
        needed = n_matches - counters["statement_matches"]
        if n_new >= needed:
            cutoff = int(np.nonzero(match)[0][needed - 1]) + 1
            fam, idx, match = fam[:cutoff], idx[:cutoff], match[:cutoff]
            n_new = needed

        if n_new == 0:
            consecutive_misses += len(idx)
            longest_gap = consecutive_misses
        else:
            positions = np.nonzero(match)[0]
            leading = consecutive_misses + int(positions[0])
            internal = int(np.diff(positions).max() - 1) if n_new > 1 else 0
            longest_gap = max(leading, internal)
            consecutive_misses = len(idx) - 1 - int(positions[-1])
        if longest_gap > cap:
            raise DegenerateProtocol(
                f"{longest_gap} consecutive draws without a statement match "
                "(cap exceeded); statement mass is zero or vanishingly small"
            )

        counters["rejected_families"] += int((idx == n_stmt + 1).sum())
        counters["rejected_runs"] += int((idx == n_stmt).sum())
        counters["trials"] += int((idx < n_stmt).sum())
        counters["statement_matches"] += n_new
        counters["hits"] += int((match & event[fam]).sum())
    return counters


def sample_posterior(
    cfg: WorldConfig,
    kernel: ProtocolKernel,
    s: Statement,
    q: QueryPredicate,
    n_trials: int,
    seed: int,
    shards: int = 1,
    redraw_cap: int = 10_000_000,
) -> McResult:
    """Empirical posterior from n_trials statement-matching runs."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    if shards < 1:
        raise ValueError("shards must be >= 1")
    tables = _compile_tables(kernel, s, q)

    seqs = np.random.SeedSequence(seed).spawn(shards)
    totals = dict(
        trials=0, rejected_families=0, rejected_runs=0, hits=0,
        statement_matches=0,
    )
    base, rem = divmod(n_trials, shards)
    for i, seq in enumerate(seqs):
        quota = base + (1 if i < rem else 0)
        if quota == 0:
            continue
        rng = np.random.Generator(np.random.PCG64(seq))
        part = _run_shard(rng, *tables, quota, redraw_cap)
        for key, value in part.items():
            totals[key] += value

    estimate = totals["hits"] / n_trials
    stderr = math.sqrt(estimate * (1.0 - estimate) / n_trials)
    return McResult(
        trials=totals["trials"],
        rejected_families=totals["rejected_families"],
        rejected_runs=totals["rejected_runs"],
        hits=totals["hits"],
        statement_matches=totals["statement_matches"],
        estimate=estimate,
        stderr=stderr,
        seed=seed,
        shards=shards,
    )


def agreement_check(
    cfg: WorldConfig,
    kernel: ProtocolKernel,
    s: Statement,
    q: QueryPredicate,
    n_trials: int,
    seed: int,
    shards: int = 1,
    exact: Fraction | None = None,
) -> AgreementReport:
    """Pass iff |estimate - exact| <= max(0.005, 5 * stderr)."""
    if exact is None:
        exact = posterior(kernel, s, q).posterior
    result = sample_posterior(cfg, kernel, s, q, n_trials, seed, shards=shards)
    tolerance = max(0.005, 5.0 * result.stderr)
    passed = abs(result.estimate - float(exact)) <= tolerance
    return AgreementReport(result, exact, tolerance, passed)
