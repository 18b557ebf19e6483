"""How often does restricting truth degrees to T_k lose optimal soft formulas?

For each k, counts the random instances whose grid optimum falls short of the
exact continuous optimum, and the total number of soft formulas lost.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from lukmaxsat.generators import random_instance
from lukmaxsat.solvers import OPTIMAL, solve_bruteforce, solve_milp


@dataclass
class Config:
    instances: int = 150
    seed: int = 1
    ks: tuple = (1, 2, 3, 4, 6, 12)
    max_depth: int = 3


def run(cfg: Config):
    rng = random.Random(cfg.seed)
    short = {k: 0 for k in cfg.ks}
    lost = {k: 0 for k in cfg.ks}
    solved = 0
    for _ in range(cfg.instances):
        inst = random_instance(rng, max_depth=cfg.max_depth)
        exact = solve_milp(inst)
        if exact.status != OPTIMAL:
            continue
        solved += 1
        for k in cfg.ks:
            g = solve_bruteforce(inst, k)
            gap = exact.soft_satisfied - (g.soft_satisfied if g.status == OPTIMAL else -1)
            short[k] += gap > 0
            lost[k] += max(gap, 0)
    return solved, short, lost


def main():
    cfg = Config()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--instances", type=int, default=cfg.instances)
    p.add_argument("--seed", type=int, default=cfg.seed)
    args = p.parse_args()
    solved, short, lost = run(Config(instances=args.instances, seed=args.seed))
    print(f"{solved} instances with satisfiable hard part")
    print(f"{'k':>4} {'short':>6} {'lost':>6}")
    for k in short:
        print(f"{k:>4} {short[k]:>6} {lost[k]:>6}")


if __name__ == "__main__":
    main()
