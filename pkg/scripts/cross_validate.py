"""Run every solver on seeded random instances and report agreement and timing.

    python scripts/cross_validate.py --instances 200 --seed 7 --out results.json
"""

from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass, field

from lukmaxsat.encoders import encode_wcsp
from lukmaxsat.generators import random_instance
from lukmaxsat.parser import format_instance
from lukmaxsat.solvers import OPTIMAL, solve_bruteforce, solve_dlr, solve_milp, solve_wcsp


@dataclass
class Config:
    instances: int = 200
    seed: int = 7
    num_vars: int = 3
    max_soft: int = 5
    max_hard: int = 2
    max_depth: int = 3
    grid_ks: tuple = (1, 2, 4)


@dataclass
class Summary:
    config: Config
    disagreements: list = field(default_factory=list)
    seconds: dict = field(default_factory=dict)
    hard_unsat: int = 0


def timed(summary, key, fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    summary.seconds[key] = summary.seconds.get(key, 0.0) + time.perf_counter() - t0
    return out


def run(cfg: Config) -> Summary:
    rng = random.Random(cfg.seed)
    summary = Summary(cfg)
    for i in range(cfg.instances):
        inst = random_instance(rng, cfg.num_vars, cfg.max_soft, cfg.max_hard, cfg.max_depth)
        milp = timed(summary, "milp", solve_milp, inst)
        dlr = timed(summary, "dlr", solve_dlr, inst)
        summary.hard_unsat += milp.status != OPTIMAL
        if (milp.status, milp.soft_satisfied) != (dlr.status, dlr.soft_satisfied):
            summary.disagreements.append({"index": i, "pair": "milp/dlr", "instance": format_instance(inst)})
        for k in cfg.grid_ks:
            bf = timed(summary, f"bruteforce_k{k}", solve_bruteforce, inst, k)
            ws = timed(summary, f"wcsp_k{k}", lambda: solve_wcsp(encode_wcsp(inst, k), inst))
            if (bf.status, bf.soft_satisfied) != (ws.status, ws.soft_satisfied):
                summary.disagreements.append({"index": i, "pair": f"wcsp/bruteforce k={k}", "instance": format_instance(inst)})
            if bf.status == OPTIMAL and bf.soft_satisfied > milp.soft_satisfied:
                summary.disagreements.append({"index": i, "pair": f"grid k={k} beats continuous", "instance": format_instance(inst)})
    return summary


def main():
    cfg = Config()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--instances", type=int, default=cfg.instances)
    p.add_argument("--seed", type=int, default=cfg.seed)
    p.add_argument("--out")
    args = p.parse_args()
    summary = run(Config(instances=args.instances, seed=args.seed))
    for key, secs in sorted(summary.seconds.items()):
        print(f"{key:>14}: {secs:7.2f}s")
    print(f"{summary.config.instances} instances, {summary.hard_unsat} hard-unsat, {len(summary.disagreements)} disagreements")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(asdict(summary), fh, indent=2)
    raise SystemExit(1 if summary.disagreements else 0)


if __name__ == "__main__":
    main()
