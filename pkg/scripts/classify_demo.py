"""Classify random point families in the line by the stratum their limit lands in."""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from polydiag.limits import ApproachCurves, classify, profile_from_curves


@dataclass
class Config:
    n: int = 4
    samples: int = 2000
    max_order: int = 4
    seed: int = 0


def random_family(rng: random.Random, cfg: Config) -> ApproachCurves:
    seen = set()
    curves = []
    while len(curves) < cfg.n:
        coeffs = tuple(rng.randint(-1, 1) for _ in range(cfg.max_order))
        key = coeffs
        while key and key[-1] == 0:
            key = key[:-1]
        if key not in seen:
            seen.add(key)
            curves.append((coeffs,))
    return ApproachCurves(cfg.n, 1, tuple(curves))


def run(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    by_chain, by_nest = Counter(), Counter()
    for _ in range(cfg.samples):
        r = classify(profile_from_curves(random_family(rng, cfg)))
        by_chain[r.chain] += 1
        by_nest[r.nest] += 1
    print(f"{cfg.samples} families of {cfg.n} points")
    print(f"distinct chains reached: {len(by_chain)}")
    print(f"distinct nests reached:  {len(by_nest)}")
    for chain, k in by_chain.most_common(5):
        print(f"{k:6d}  {' > '.join(str(p) for p in chain.partitions) or '(open stratum)'}")
    return 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    raise SystemExit(run(Config(**vars(ap.parse_args()))))


if __name__ == "__main__":
    main()
