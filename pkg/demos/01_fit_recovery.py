"""Fitting power-family learning trends: recovery, noise, and anchoring.

Generates observations from a known curve value(x) = c - a*x**-b, fits them
back, and shows how an asymptotic anchor stabilizes the estimate of c on
noisy data.
"""

import numpy as np

from colts import Observation, fit

A, B, C = 542.5451, 0.3838, 99.2876
POSITIONS = list(range(5000, 805000, 5000))


def observations(noise=0.0, seed=0):
    rng = np.random.default_rng(seed)
    obs = []
    for x in POSITIONS:
        y = C - A * x ** (-B) + (rng.uniform(-noise, noise) if noise else 0.0)
        obs.append(Observation(position=x, accuracy=y))
    return obs


def report(label, f):
    print(f"{label:<28} a={f.a:10.4f}  b={f.b:7.4f}  c={f.c:9.4f}  "
          f"residual={f.residual_norm:.2e}")


def main():
    print(f"true parameters               a={A:10.4f}  b={B:7.4f}  c={C:9.4f}")

    exact = fit(observations())
    report("noiseless fit (160 points)", exact)
    print(f"  -> relative errors: a {abs(exact.a - A) / A:.1e}, "
          f"b {abs(exact.b - B) / B:.1e}, c {abs(exact.c - C) / C:.1e}")

    noisy_obs = observations(noise=0.1, seed=42)
    plain = fit(noisy_obs)
    anchored = fit(noisy_obs, anchor=C)
    report("noisy fit (+-0.1 points)", plain)
    report("same data, anchored at c", anchored)
    print(f"  -> |c - true c|: plain {abs(plain.c - C):.4f}, "
          f"anchored {abs(anchored.c - C):.4f}")

    print("\npredictions from the noiseless fit:")
    for x in (50000, 200000, 800000):
        print(f"  value({x:>6}) = {exact.value(x):8.4f}   "
              f"slope = {exact.slope(x):.3e}   "
              f"remaining gain = {exact.asymptote() - exact.value(x):6.4f}")


if __name__ == "__main__":
    main()
