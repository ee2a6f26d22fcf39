#!/usr/bin/env python3
"""Sweep the standard corpus over all block specs up to a total size and
record dimensions, timings and verification outcomes as JSON lines."""
import argparse
import itertools
import json
import sys
import time
from dataclasses import asdict, dataclass

from harada_quivers.block import BlockSpec
from harada_quivers.corpus import standard_corpus
from harada_quivers.harada import StaircaseSpec
from harada_quivers.pipeline import PipelineConfig, verify_pipeline
from harada_quivers.scalars import field_from_spec


@dataclass
class SweepConfig:
    max_total: int = 6
    field: str = "q"
    seed: int = 0
    staircase: str = "diagonal"  # diagonal | none


def specs(m, total):
    for n in itertools.product(range(1, total + 1), repeat=m):
        if sum(n) <= total:
            yield BlockSpec(n)


def diagonal_staircase(spec: BlockSpec, sigma) -> StaircaseSpec:
    # c_ij = min(j, n_sigma(i)): the smallest staircase that stays upper triangular
    return StaircaseSpec(tuple(tuple(min(j, spec.n[sigma[i]]) for j in range(1, n + 1))
                               for i, n in enumerate(spec.n)))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-total", type=int, default=SweepConfig.max_total)
    ap.add_argument("--field", default=SweepConfig.field)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--staircase", choices=["diagonal", "none"], default=SweepConfig.staircase)
    cfg = SweepConfig(**vars(ap.parse_args(argv)))
    F = field_from_spec(cfg.field)
    failures = 0
    for name, pres in standard_corpus(F).items():
        probe = verify_pipeline(pres)
        sigma = probe.info.get("sigma")
        for spec in specs(pres.quiver.num_vertices, cfg.max_total):
            stair = None
            if cfg.staircase == "diagonal" and sigma is not None:
                stair = diagonal_staircase(spec, [pres.quiver.vertex_index(s) for s in sigma])
            t = time.perf_counter()
            res = verify_pipeline(pres, spec, stair, config=PipelineConfig(seed=cfg.seed))
            row = {"presentation": name, "n": list(spec.n), "ok": res.ok, "dims": res.dims,
                   "seconds": round(time.perf_counter() - t, 4), "config": asdict(cfg)}
            failures += not res.ok
            print(json.dumps(row))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
