"""Classical parallel-flux bodies in three and four dimensions.

For p(u) = 1/(1+u^2) with a shadowed rear, the optimal profile is a
flat cap joined to a strictly convex flank whose slope runs from u = 1
at the cap edge to a terminal slope U at the rim.  Both the d=3 and
d=4 versions have closed forms; this script checks them against the
generic solver and prints a small design table.
"""

from minres import ProblemSpec, make_builtin, make_zero, solve
from minres.classical import newton3, newton4


def spec_for(d, H):
    return ProblemSpec(d=d, T=1.0, H=H,
                       p_plus=make_builtin(1.0, 0.0), p_minus=make_zero())


def main():
    print("flat-body identity: at U=1 the flank vanishes and R = p(0) T^(d-1)")
    for d, closed in ((3, newton3), (4, newton4)):
        c = closed(1.0, 1.0)
        print(f"  d={d}: R(U=1) = {c.R_plus:.12f}")
    print()

    print(f"{'d':>2} {'U':>4} {'height':>10} {'cap t0':>9} {'R':>12} "
          f"{'solver R':>12} {'rel diff':>9}")
    for d, closed in ((3, newton3), (4, newton4)):
        for U in (1.5, 2.0, 3.0, 5.0):
            c = closed(1.0, U)
            sol = solve(spec_for(d, c.beta))
            rel = abs(sol.R_total - c.R_plus) / c.R_plus
            print(f"{d:2d} {U:4.1f} {c.beta:10.6f} {c.t0:9.6f} "
                  f"{c.R_plus:12.8f} {sol.R_total:12.8f} {rel:9.1e}")
    print()

    # the historically popular benchmark: unit radius, U = 2
    c = newton3(1.0, 2.0)
    print(f"d=3 benchmark body (T=1, U=2): height {c.beta:.10f}, "
          f"resistance {c.R_plus:.10f}")
    print("the flat cap covers", f"{c.t0:.2f}", "of the unit radius;")
    print("slopes below 1 never appear outside it.")


if __name__ == "__main__":
    main()
