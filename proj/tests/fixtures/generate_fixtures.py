#!/usr/bin/env python3
"""Regenerates the high-precision golden values used by the test suites.

Run once; the output files are checked in. Requires mpmath.

  python3 generate_fixtures.py [output_dir]
"""
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 80
DIGITS = 50


def mittag_leffler(a, b, x):
    """Brute-force partial sum with a rigorous tail bound.

    Terms t_j = x^j / Gamma(a j + b) are eventually decreasing; once the ratio
    t_{j+1}/t_j stays below 1/2 the tail is bounded by the current term.
    """
    a, b, x = mp.mpf(a), mp.mpf(b), mp.mpf(x)
    if x == 0:
        return 1 / mp.gamma(b)
    total = mp.mpf(0)
    j = 0
    eps = mp.mpf(10) ** (-(mp.mp.dps - 5))
    while True:
        t = mp.power(x, j) / mp.gamma(a * j + b)
        total += t
        ratio = x * mp.gamma(a * j + b) / mp.gamma(a * (j + 1) + b)
        if j > 10 and ratio < 0.5 and t < eps * total:
            break
        j += 1
    return total


def fmt(v):
    return mp.nstr(v, DIGITS)


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent

    ml_params = [("1", "1", "1"), ("1", "1", "0"), ("0.5", "0.5", "2"),
                 ("0.5", "0.5", "0"), ("0.5", "1", "1.5"), ("1", "2", "3"),
                 ("0.25", "0.5", "1.5"), ("0.25", "0.75", "2.5"),
                 ("0.5", "1.5", "10"), ("1", "0.5", "20"), ("0.75", "1.25", "5")]
    # E_{1/2,1/2}(x) for x = r^2 in [2, 4]: the k=2, c=0 Mittag-Leffler kernel
    # on r^4 in [4, 16].
    for i in range(21):
        ml_params.append(("0.5", "0.5", mp.nstr(mp.mpf(2) + mp.mpf(i) / 10, 3)))
    with open(out / "mittag_leffler.txt", "w") as f:
        f.write("# a b x E_{a,b}(x), 50 significant digits\n")
        for a, b, x in ml_params:
            f.write(f"{a} {b} {x} {fmt(mittag_leffler(a, b, x))}\n")

    xs = ["0.001", "0.01", "0.1", "0.25", "0.5", "0.75", "0.9", "0.999", "1",
          "1.001", "1.25", "1.5", "1.75", "1.999", "2", "2.001", "2.5", "3",
          "3.75", "5.5", "7", "9.99", "10", "12.5", "30", "100", "1234.5",
          "10000"]
    with open(out / "log_gamma.txt", "w") as f:
        f.write("# x lnGamma(x), 50 significant digits\n")
        for x in xs:
            f.write(f"{x} {fmt(mp.loggamma(mp.mpf(x)))}\n")


if __name__ == "__main__":
    main()
