"""Reproduce the two closed-form examples and print measure against the bounds."""
import argparse
import json
import time

from jacobi2d.coefficients import EXAMPLES
from jacobi2d.bounds import bound_report
from jacobi2d.spectrum import MomentumGrid, spectrum_estimate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=64)
    ap.add_argument("--periods", type=int, nargs="+", default=[3, 4, 5])
    args = ap.parse_args()
    grid = MomentumGrid(args.grid, args.grid)
    rows = []
    for name, build in sorted(EXAMPLES.items()):
        for p in args.periods:
            f = build(p, p + 1)
            t0 = time.perf_counter()
            s = spectrum_estimate(f, grid)
            rep = bound_report(f)
            rows.append({
                "example": name, "p1": f.p1, "p2": f.p2,
                "intervals": s.to_list(), "measure": s.measure,
                "r_min": rep.r_min, "schrodinger_bound": rep.schrodinger_bound,
                "norm_bound": rep.norm_bound, "seconds": round(time.perf_counter() - t0, 3),
            })
    print(json.dumps(rows, indent=2))


if __name__ == "__main__":
    main()
