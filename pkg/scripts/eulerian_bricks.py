"""Compare permutahedral brick polynomials with Eulerian numbers counted from permutations."""

import argparse
from dataclasses import dataclass
from itertools import permutations

from polydiag.hodge import eulerian_from_brick


@dataclass
class Config:
    max_r: int = 7


def descents_histogram(r: int) -> list[int]:
    counts = [0] * r
    for perm in permutations(range(r)):
        counts[sum(a > b for a, b in zip(perm, perm[1:]))] += 1
    return counts


def run(cfg: Config) -> int:
    bad = 0
    for r in range(1, cfg.max_r + 1):
        got, want = eulerian_from_brick(r), descents_histogram(r)
        bad += got != want
        print(f"r={r}  {' '.join(map(str, got))}  {'ok' if got == want else f'expected {want}'}")
    return 1 if bad else 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-r", type=int, default=Config.max_r)
    raise SystemExit(run(Config(**vars(ap.parse_args()))))


if __name__ == "__main__":
    main()
