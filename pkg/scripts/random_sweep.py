#!/usr/bin/env python3
"""Seeded sweep over random (g, J) pairs: tallies the equivalences between
structure-level and torsion-level verdicts and reports any counterexample."""

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from flatconn.complex_structure import classify_structure, random_hermitian_metric
from flatconn.connection_lab import (
    chern,
    covariant_derivative_J,
    first_canonical,
    is_metric,
    minus_connection,
    t2_tensor,
    torsion,
    torsion_type,
)
from flatconn.lie_algebra import is_two_step_solvable
from flatconn.sampling import SamplingConfig, random_pair


@dataclass(frozen=True)
class SweepConfig:
    seeds: int = 200
    first_seed: int = 0
    hermitian_checks: bool = True
    sampling: SamplingConfig = field(default_factory=SamplingConfig)


def sweep(cfg: SweepConfig) -> dict:
    tally: Counter = Counter()
    failures = []
    for seed in range(cfg.first_seed, cfg.first_seed + cfg.seeds):
        g, J = random_pair(seed, cfg.sampling)
        v = classify_structure(g, J)
        tv = torsion_type(torsion(minus_connection(g)), J)
        solvable = is_two_step_solvable(g)
        tally["abelian"] += v.abelian
        tally["bi_invariant"] += v.bi_invariant
        tally["integrable"] += v.integrable
        tally["two_step_solvable"] += solvable
        checks = {
            "type11_iff_abelian": tv.holds("type11") == v.abelian,
            "type20_iff_bi_invariant": tv.holds("type20") == v.bi_invariant,
            "t2_iff_two_step": t2_tensor(minus_connection(g)).is_t2_zero == solvable,
            "abelian_implies_two_step": solvable or not v.abelian,
        }
        if cfg.hermitian_checks and v.integrable:
            G = random_hermitian_metric(J, seed)
            ch, fc = chern(g, G, J), first_canonical(g, G, J)
            checks["chern"] = (is_metric(ch, G) and covariant_derivative_J(ch, J).is_zero()
                               and torsion_type(torsion(ch), J).holds("type20"))
            checks["first_canonical"] = (is_metric(fc, G) and covariant_derivative_J(fc, J).is_zero()
                                         and torsion_type(torsion(fc), J).holds("type11"))
        for name, ok in checks.items():
            tally[f"checked:{name}"] += 1
            if not ok:
                failures.append({"seed": seed, "check": name})
    return {"config": asdict(cfg), "tally": dict(sorted(tally.items())), "failures": failures}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=SweepConfig.seeds)
    parser.add_argument("--first-seed", type=int, default=SweepConfig.first_seed)
    parser.add_argument("--no-hermitian", action="store_true", help="skip the Chern/first-canonical checks")
    args = parser.parse_args()
    cfg = SweepConfig(seeds=args.seeds, first_seed=args.first_seed, hermitian_checks=not args.no_hermitian)
    start = time.perf_counter()
    result = sweep(cfg)
    result["seconds"] = round(time.perf_counter() - start, 2)
    print(json.dumps(result, indent=2))
    raise SystemExit(1 if result["failures"] else 0)


if __name__ == "__main__":
    main()
