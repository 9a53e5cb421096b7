#!/usr/bin/env python3
"""Print the headline table: every builtin procedure and its exact answer,
showing how the same utterance supports answers from 0 to 1."""

from fractions import Fraction

from ambiprob import WorldConfig, posterior
from ambiprob.scenarios import BUILTIN_IDS, build_scenario

cfg = WorldConfig(week_length=7, family_size=2)

print(f"{'scenario':<18} {'posterior':>10} {'decimal':>10}")
for sid in sorted(BUILTIN_IDS):
    sc = build_scenario(sid, cfg, p=Fraction(13, 27))
    value = posterior(sc.kernel, sc.canonical_statement, sc.canonical_query).posterior
    print(f"{sid:<18} {str(value):>10} {float(value):>10.6f}")
