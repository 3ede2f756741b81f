"""Wall-clock cost of each depth method per instance, slowest first."""

import argparse
import time

from depthctl.build import program_ideal, program_rmodule
from depthctl.corpus import PROFILES, gen_random_instance
from depthctl.depth import depth_formula, depth_oracle_ext, depth_oracle_koszul

METHODS = {"formula": depth_formula, "koszul": depth_oracle_koszul, "ext": depth_oracle_ext}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--profile", choices=PROFILES, default="general-GFp")
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--top", type=int, default=10)
    args = ap.parse_args()
    rows = []
    for s in range(1, args.seeds + 1):
        prog = gen_random_instance(s, args.profile)
        times = {}
        for name, fn in METHODS.items():
            M = program_rmodule(prog, "M", "J")  # fresh object so no cached Lambda
            I = program_ideal(prog, "I")
            t0 = time.perf_counter()
            fn(M, I)
            times[name] = time.perf_counter() - t0
        rows.append((sum(times.values()), s, times))
    rows.sort(reverse=True)
    for total, s, times in rows[:args.top]:
        parts = "  ".join(f"{k} {v:6.3f}s" for k, v in times.items())
        print(f"seed {s:3d}  total {total:6.3f}s  {parts}")
    print(f"all {len(rows)} instances: {sum(r[0] for r in rows):.2f}s")


if __name__ == "__main__":
    main()
