"""KS distance of radical-inverse points pushed through the binomial(r) quantile.

Run: python3 tests/oracles/transport_ks.py > tests/data/transport_ks_curve.json
"""
import json
import sys

import mpmath

mpmath.mp.dps = 60
R = mpmath.mpf(3) / 10
DIGITS = 150


def radical_inverse(k):
    x, scale = mpmath.mpf(0), mpmath.mpf(1) / 2
    while k:
        if k & 1:
            x += scale
        k >>= 1
        scale /= 2
    return x


def cdf(x):
    if x >= 1:
        return mpmath.mpf(1)
    acc, mass = mpmath.mpf(0), mpmath.mpf(1)
    for _ in range(DIGITS):
        x *= 2
        if x >= 1:
            acc += mass * R
            mass *= 1 - R
            x -= 1
        else:
            mass *= R
    return acc


def quantile(u):
    if u <= 0:
        return mpmath.mpf(0)
    if u >= 1:
        return mpmath.mpf(1)
    x, width = mpmath.mpf(0), mpmath.mpf(1)
    for _ in range(DIGITS):
        width /= 2
        if u > R:
            x += width
            u = (u - R) / (1 - R)
        else:
            u = u / R
    return x


def ks(points):
    pts = sorted(points)
    n = len(pts)
    worst = mpmath.mpf(0)
    for i, y in enumerate(pts):
        f = cdf(y)
        worst = max(worst, abs(mpmath.mpf(i + 1) / n - f), abs(f - mpmath.mpf(i) / n))
    return worst


def main():
    kmax = int(sys.argv[1]) if len(sys.argv) > 1 else 14
    ys = [quantile(radical_inverse(k)) for k in range(1, 2 ** kmax + 1)]
    curve = []
    for k in range(6, kmax + 1):
        n = 2 ** k
        curve.append({"n": n, "ks": mpmath.nstr(ks(ys[:n]), 15)})
    json.dump({"oracle": "python3 tests/oracles/transport_ks.py", "measure": {"binomial": {"r": "0.3"}},
               "generator": {"radical": {"q": 2}}, "curve": curve, "threshold_at_max": "0.05"},
              sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
