"""Baseline of a perfectly dependent linear feature as the sample count grows."""

import argparse

import numpy as np

from cumulinfo import Dataset, Orientation, expected_fraction
from cumulinfo.synthdata import GeneratorSpec, generate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[25, 50, 100, 200, 400, 800])
    args = ap.parse_args()
    vals = []
    print("n\tbaseline")
    for n in args.sizes:
        y = generate(GeneratorSpec("linear", n))
        ds = Dataset.from_arrays(y, {"x": y})
        v = np.mean([expected_fraction(ds, ["x"], "sample", o).value for o in Orientation])
        vals.append(v)
        print(f"{n}\t{v:.5f}")
    slope, _ = np.polyfit(np.log(args.sizes), np.log(vals), 1)
    print(f"# log-log slope {slope:.3f}")


if __name__ == "__main__":
    main()
