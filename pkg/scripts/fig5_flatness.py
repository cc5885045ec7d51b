"""Adjusted scores of independent uniform features by dimensionality and sample count."""

import argparse

import numpy as np

from cumulinfo import score_subset
from cumulinfo.baseline import stream
from cumulinfo.synthdata import independent_uniform_builder


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 50, 100, 500])
    ap.add_argument("--max-dim", type=int, default=4)
    ap.add_argument("--repeats", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    dims = range(1, args.max_dim + 1)
    print("n\t" + "\t".join(f"d={d}" for d in dims) + "\td=1 shuffled")
    for n in args.sizes:
        build = independent_uniform_builder(n, args.max_dim)
        acc = {d: [] for d in dims}
        shuf = []
        for r in range(args.repeats):
            ds = build(stream(args.seed, n, r))
            for d in dims:
                acc[d].append(score_subset(ds, [f"x{j + 1}" for j in range(d)]).assessment_score)
            shuf.append(score_subset(ds, ["x1"], shuffle_correction=True, seed=r).assessment_score)
        cells = [f"{np.mean(acc[d]):+.3f}+-{np.std(acc[d]):.3f}" for d in dims]
        print(f"{n}\t" + "\t".join(cells) + f"\t{np.mean(shuf):+.3f}+-{np.std(shuf):.3f}")


if __name__ == "__main__":
    main()
