"""Number of bound queries issued by the Up, Down and Binary strategies of the
DLR solver, on random simple-form instances of growing size."""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from lukmaxsat.generators import random_simple_instance
from lukmaxsat.solvers import SearchStrategy, solve_dlr


@dataclass
class Config:
    per_size: int = 20
    sizes: tuple = (2, 4, 6, 8)
    num_vars: int = 4
    seed: int = 3


def run(cfg: Config):
    rng = random.Random(cfg.seed)
    rows = []
    for m in cfg.sizes:
        calls = {s: 0 for s in SearchStrategy}
        secs = {s: 0.0 for s in SearchStrategy}
        for _ in range(cfg.per_size):
            inst = random_simple_instance(rng, num_vars=cfg.num_vars, max_clauses=m)
            optima = set()
            for s in SearchStrategy:
                t0 = time.perf_counter()
                sol = solve_dlr(inst, s)
                secs[s] += time.perf_counter() - t0
                calls[s] += len(sol.info["bounds_tried"])
                optima.add(sol.soft_satisfied)
            assert len(optima) == 1, "strategies disagree"
        rows.append((m, calls, secs))
    return rows


def main():
    cfg = Config()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--per-size", type=int, default=cfg.per_size)
    p.add_argument("--seed", type=int, default=cfg.seed)
    args = p.parse_args()
    print(f"{'m<=':>4} " + " ".join(f"{s.value + ' calls':>12} {s.value + ' s':>8}" for s in SearchStrategy))
    for m, calls, secs in run(Config(per_size=args.per_size, seed=args.seed)):
        print(f"{m:>4} " + " ".join(f"{calls[s]:>12} {secs[s]:>8.2f}" for s in SearchStrategy))


if __name__ == "__main__":
    main()
