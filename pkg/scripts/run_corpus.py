"""Run the verification harness over every profile and print a per-profile summary.

    python scripts/run_corpus.py --seed 1 --count 50 --jobs 4
"""

import argparse
import json
import time
from collections import Counter
from dataclasses import dataclass

from depthctl.corpus import PROFILES, verify_corpus


@dataclass(frozen=True)
class RunConfig:
    seed: int = 1
    count: int = 50
    jobs: int = 1
    out: str = None


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=RunConfig.seed)
    ap.add_argument("--count", type=int, default=RunConfig.count)
    ap.add_argument("--jobs", type=int, default=RunConfig.jobs)
    ap.add_argument("--out", default=None, help="write all reports as one JSON file")
    cfg = RunConfig(**vars(ap.parse_args()))

    everything = {}
    for profile in PROFILES:
        t0 = time.perf_counter()
        rep = verify_corpus(cfg.seed, cfg.count, profile, jobs=cfg.jobs)
        dt = time.perf_counter() - t0
        depths = Counter(r.depth["formula"] if r.depth else "error" for r in rep.instances)
        errors = [r.seed for r in rep.instances if r.error]
        print(f"{profile:14s} pass={rep.passed!s:5s} {dt:6.1f}s  depth histogram "
              f"{dict(sorted(depths.items(), key=str))}  errors {errors}")
        everything[profile] = rep.to_dict()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(everything, fh, indent=2)


if __name__ == "__main__":
    main()
