"""Solve with a user-supplied pressure law given as an expression string.

Any law written in the small expression language can drive the solver,
as long as it passes validation: positive and strictly decreasing at
the front, with a fast enough tail and a single maximizer of the drop
ratio (p(0) - p(u)) / u.  This walks a non-Newtonian example through
validation, the critical quantities, and a d=3 solve, then writes the
profile to CSV and SVG alongside this script.
"""

import os

from minres import ProblemSpec, make_expr, solve
from minres.criticals import critical_values
from minres.pressure import make_zero, validate
from minres.render import profile_csv, profile_svg

LAW = "exp(-u^2/2)"


def main():
    model = make_expr(LAW)
    report = validate(model)
    print(f"law p(u) = {LAW}")
    print(f"validation: {'pass' if report.passed else 'FAIL'}, "
          f"limit at infinity {report.limit_at_infinity:.3e}, "
          f"drop-ratio maximizer near u = {report.u_bar_estimate:.6f}")
    if not report.passed:
        for cond, witness, desc in report.violations:
            print(f"  condition {cond} violated near u={witness:g}: {desc}")
        return

    cv = critical_values(model)
    print(f"criticals: u0 = {cv.u0:.9f}, B = {cv.B:.9f}, "
          f"p(u0) = {model.p(cv.u0):.9f}")
    print()

    spec = ProblemSpec(d=3, T=1.0, H=0.6, p_plus=model, p_minus=make_zero())
    sol = solve(spec)
    print(f"d=3 solve at T={spec.T}, H={spec.H}: case {sol.case_label}")
    print(f"  U = {sol.U_plus:.9f}, lambda = {sol.lambda_plus:.9f}, "
          f"R_total = {sol.R_total:.9f}")

    here = os.path.dirname(os.path.abspath(__file__))
    csv_path = os.path.join(here, "custom_law_profile.csv")
    svg_path = os.path.join(here, "custom_law_profile.svg")
    with open(csv_path, "w", newline="") as f:
        f.write(profile_csv(sol))
    with open(svg_path, "w", newline="") as f:
        f.write(profile_svg(sol))
    print(f"wrote {os.path.basename(csv_path)} and {os.path.basename(svg_path)}")


if __name__ == "__main__":
    main()
