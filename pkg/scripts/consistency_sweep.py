"""Sum the open-stratum polynomials over every chain and compare with the whole space."""

import argparse
import time
from dataclasses import dataclass

from polydiag.hodge import consistency_check


@dataclass
class Config:
    max_m: int = 3
    max_n: int = 5


def run(cfg: Config) -> int:
    bad = 0
    for m in range(1, cfg.max_m + 1):
        for n in range(2, cfg.max_n + 1):
            start = time.perf_counter()
            report = consistency_check(m, n)
            dt = time.perf_counter() - start
            bad += not report.ok
            status = "ok" if report.ok else f"{len(report.diff)} mismatched coefficients"
            print(f"m={m} n={n} chains={report.chains:<7} {dt:7.3f}s  {status}")
            if n == cfg.max_n:
                print(f"    U = {report.expected}")
    return 1 if bad else 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=Config.max_m)
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    raise SystemExit(run(Config(**vars(ap.parse_args()))))


if __name__ == "__main__":
    main()
