"""Print every invariant of the two-planes and hypersurface examples."""

from depthctl.depth import (
    Presentation, att_min_at_point, depth_formula, depth_oracle_ext, depth_oracle_koszul,
    fdim_at_point, lambda_set, quot,
)
from depthctl.field import Field
from depthctl.groebner import Ideal
from depthctl.poly import Ring


def ideal(R, *gens):
    return Ideal(R, [R.parse(g) for g in gens])


def show(title, M, ideals, point=None):
    print(f"== {title}")
    for e in lambda_set(M):
        print(f"  Lambda {e.prime}: ext {list(e.ext_indices)}, height {e.height}, local depth {e.local_depth}")
    for name, I in ideals.items():
        r = depth_formula(M, I)
        print(f"  depth({name}) = {r.value}  koszul {depth_oracle_koszul(M, I).value}  "
              f"ext {depth_oracle_ext(M, I).value}  witness {r.witness}")
        if point is not None:
            print(f"  fdim({name}) at {point} = {fdim_at_point(M, I, point)}")
    if point is not None:
        for i in range(M.ring.n + 1):
            primes = att_min_at_point(M, point, i)
            if primes:
                print(f"  att_min H^{i} = {[str(P) for P in primes]}")


def main():
    QQ = Field.QQ()
    R = Ring(QQ, ("x", "y", "u", "v"))
    J = ideal(R, "x*u", "x*v", "y*u", "y*v")
    show("two planes", quot(Presentation(R, J), J),
         {"m": ideal(R, "x", "y", "u", "v"), "x+u": ideal(R, "x + u")}, [0, 0, 0, 0])
    R2 = Ring(QQ, ("x", "y"))
    J2 = ideal(R2, "x*y")
    show("hypersurface xy", quot(Presentation(R2, J2), J2),
         {"x": ideal(R2, "x"), "x-y": ideal(R2, "x - y")}, [0, 0])


if __name__ == "__main__":
    main()
