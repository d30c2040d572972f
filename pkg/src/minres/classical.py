"""Closed forms for the parallel-flux law p(u) = 1/(1+u^2), d = 3 and 4.

Everything here follows from the parametric branch representation with
|p'(u)| = 2u/(1+u^2)^2 integrated in closed form.  The resistance
constants are pinned by two independent checks carried in the test
suite: the flat-body identity R(U=1) = T^{d-1} and direct quadrature of
the parametric profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameter


@dataclass(frozen=True)
class ClassicalSolution:
    d: int
    T: float
    U: float
    lam: float
    t0: float
    beta: float
    R_plus: float

    def _clamped(self, u: float) -> float:
        # accept roundoff-level overshoot from inverted heights
        if not 0.0 < u <= self.U * (1.0 + 1e-9):
            raise InvalidParameter(f"u must be in (0, {self.U}], got {u}")
        return min(u, self.U)

    def t_of_u(self, u: float) -> float:
        u = self._clamped(u)
        T, U = self.T, self.U
        if self.d == 3:
            return T * U * (1.0 + u * u) ** 2 / (u * (1.0 + U * U) ** 2)
        return T * math.sqrt(U / u) * (1.0 + u * u) / (1.0 + U * U)

    def x_of_u(self, u: float) -> float:
        u = self._clamped(u)
        T, U = self.T, self.U
        if u < 1.0:
            raise InvalidParameter(f"curved span starts at u=1, got {u}")
        if self.d == 3:
            return (T * U * (-7.0 + 4.0 * u * u + 3.0 * u ** 4
                             - 4.0 * math.log(u))
                    / (4.0 * (1.0 + U * U) ** 2))
        return (T * math.sqrt(U) * (3.0 * u ** 2.5 - 5.0 * math.sqrt(u) + 2.0)
                / (5.0 * (1.0 + U * U)))


def _check_args(T: float, U: float) -> None:
    if not (math.isfinite(T) and T > 0.0):
        raise InvalidParameter(f"T must be positive finite, got {T}")
    if not (math.isfinite(U) and U >= 1.0):
        raise InvalidParameter(f"U must be >= 1, got {U}")


def newton3(T: float, U: float) -> ClassicalSolution:
    """d = 3 front branch with terminal slope U."""
    _check_args(T, U)
    s = 1.0 + U * U
    lam = 2.0 * T * U / (s * s)
    t0 = 4.0 * T * U / (s * s)
    beta = T * U * (-7.0 + 4.0 * U * U + 3.0 * U ** 4
                    - 4.0 * math.log(U)) / (4.0 * s * s)
    R = T * T * (2.0 + 17.0 * U * U + 10.0 * U ** 4 + 3.0 * U ** 6
                 + 4.0 * U * U * math.log(U)) / (2.0 * s ** 4)
    return ClassicalSolution(d=3, T=T, U=U, lam=lam, t0=t0, beta=beta,
                             R_plus=R)


def newton4(T: float, U: float) -> ClassicalSolution:
    """d = 4 front branch with terminal slope U."""
    _check_args(T, U)
    s = 1.0 + U * U
    lam = 2.0 * T * T * U / (s * s)
    t0 = 2.0 * T * math.sqrt(U) / s
    beta = T * (3.0 * U ** 3 - 5.0 * U + 2.0 * math.sqrt(U)) / (5.0 * s)
    R = T ** 3 * (5.0 + 30.0 * U * U + 9.0 * U ** 4
                  - 4.0 * U ** 1.5) / (5.0 * s ** 3)
    return ClassicalSolution(d=4, T=T, U=U, lam=lam, t0=t0, beta=beta,
                             R_plus=R)
