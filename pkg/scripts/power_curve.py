"""Power of the adjusted score to separate a noisy linear relation from independence."""

import argparse

from cumulinfo.synthdata import linear_builder, power_analysis


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--sigma", type=float, nargs="+", default=[0.0, 0.2, 0.4, 0.6, 0.8, 1.0])
    ap.add_argument("--repeats", type=int, default=100)
    ap.add_argument("--gamma", type=float, default=0.95)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rep = power_analysis(linear_builder(args.n), ["x"], args.sigma, args.gamma, args.repeats, args.seed)
    print(f"# independence percentile {rep.independence_percentile:.3f}")
    print("sigma\tpower\tmean_score")
    for s, p, m in zip(rep.sigma_levels, rep.power, rep.mean_score):
        print(f"{s:g}\t{p:.3f}\t{m:.3f}")


if __name__ == "__main__":
    main()
