"""The adaptive step: tangent/asymptote distance mu and the PORT dial.

For the power family the tangent line through (x, value(x)) meets the
asymptote y = c at distance mu = x/b. Stepping by ceil(port * mu) is the
smallest integer step whose probability of relevant training reaches `port`.
"""

from colts import PowerFit, colts_step, mu, port_of

FIT = PowerFit(a=542.5451, b=0.3838, c=99.2876)


def main():
    print(f"curve: a={FIT.a}, b={FIT.b}, c={FIT.c}")
    print(f"{'x':>8} {'value':>9} {'slope':>11} {'mu = x/b':>12}")
    for x in (50000, 90000, 200000, 500000):
        print(f"{x:>8} {FIT.value(x):>9.4f} {FIT.slope(x):>11.3e} "
              f"{mu(FIT, x):>12.1f}")

    x = 90000
    m = mu(FIT, x)
    print(f"\nat x = {x} (mu = {m:.1f}), the step for each PORT value:")
    print(f"{'port':>6} {'step':>8} {'achieved PORT':>14}")
    for port in (0.1, 0.25, 0.5, 0.75, 1.0):
        step = colts_step(FIT, x, port)
        print(f"{port:>6} {step:>8} {port_of(step, m):>14.6f}")

    print("\nminimality: one item less always undershoots the target PORT")
    for port in (0.25, 0.5, 0.75):
        step = colts_step(FIT, x, port)
        print(f"  port={port}: port_of({step}) = {port_of(step, m):.6f} >= {port}, "
              f"port_of({step - 1}) = {port_of(step - 1, m):.6f} < {port}")


if __name__ == "__main__":
    main()
