"""The Lobachevsky function Lambda(theta) = -int_0^theta log|2 sin t| dt.

The fast evaluator goes through the Clausen function, Lambda(theta) =
Cl2(2 theta) / 2, and uses the Bernoulli-number expansion

    Cl2(x) = x - x log|x| + sum_{n>=1} |B_2n| x^(2n+1) / (2n (2n+1)!)

on the reduced argument |x| <= pi, where successive terms shrink by at least
a factor of 4.  Two slower routes are kept for cross-checking: the Fourier
series (``lobachevsky_series``) and direct quadrature of the defining integral
(``lobachevsky_oracle``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _kernels
from .errors import DomainError

__all__ = [
    "Angle",
    "LambdaValue",
    "lobachevsky",
    "lobachevsky_pi",
    "lob",
    "lobachevsky_series",
    "lobachevsky_oracle",
    "LAMBDA_MAX",
]

_EPS = 2.0 ** -52
_NTERMS = 30


@dataclass(frozen=True)
class Angle:
    """An angle in radians."""

    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError(f"angle must be finite, got {self.value!r}")

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class LambdaValue:
    """A value of Lambda with a rigorous-in-practice absolute error bound."""

    value: float
    abs_error_bound: float

    def __float__(self):
        return float(self.value)


@lru_cache(maxsize=1)
def _bernoulli_coeffs():
    """|B_2n| / (2n (2n+1)!) for n = 1.._NTERMS, as floats."""
    # Akiyama-Tanigawa would also do; the classical recurrence is plenty here.
    m = 2 * _NTERMS
    B = [Fraction(0)] * (m + 1)
    B[0] = Fraction(1)
    for k in range(1, m + 1):
        B[k] = -sum(math.comb(k + 1, j) * B[j] for j in range(k)) / (k + 1)
    return tuple(
        float(abs(B[2 * n]) / (2 * n * math.factorial(2 * n + 1)))
        for n in range(1, _NTERMS + 1)
    )


def _clausen_reduced(x):
    """Cl2(x) for |x| <= pi, with its absolute error bound."""
    if x == 0.0:
        return 0.0, 0.0
    ax = abs(x)
    x2 = x * x
    power = x * x2
    series = 0.0
    magnitude = 0.0
    for coeff in _bernoulli_coeffs():
        term = coeff * power
        series += term
        magnitude += abs(term)
        power *= x2
    # |B_2n| <= 2 zeta(2) (2n)! / (2 pi)^(2n); ratio of consecutive bounds <= 1/4
    n = _NTERMS + 1
    tail = 2 * (math.pi ** 2 / 6) * ax ** (2 * n + 1) / ((2 * math.pi) ** (2 * n) * 2 * n * (2 * n + 1))
    tail /= 1 - (ax / (2 * math.pi)) ** 2
    log_part = x * math.log(ax)
    value = x - log_part + series
    rounding = 8 * _EPS * (ax + abs(log_part) + magnitude + abs(value))
    return value, tail + rounding


def _reduce(theta):
    """Map theta to x = 2 theta reduced into [-pi, pi], plus the reduction error."""
    x = math.remainder(2.0 * theta, 2.0 * math.pi)
    # float 2*pi is off from the true period by < 2.5e-16; that offset is
    # multiplied by the number of periods removed
    periods = abs(round(2.0 * theta / (2.0 * math.pi)))
    err = 4 * _EPS * abs(theta) + periods * 2.5e-16
    return x, err


def lobachevsky(theta) -> LambdaValue:
    """Evaluate Lambda(theta) for a finite real ``theta`` (float or Angle)."""
    theta = float(Angle(float(theta)).value)
    if theta == 0.0:
        return LambdaValue(0.0, 0.0)
    x, red_err = _reduce(theta)
    cl, err = _clausen_reduced(x)
    # dLambda/dtheta = -log|2 sin theta|; bound the effect of the argument error
    slope = abs(math.log(max(abs(2 * math.sin(x / 2)), 1e-300))) + 1.0
    return LambdaValue(0.5 * cl, 0.5 * err + red_err * slope)


def lobachevsky_pi(p: int, q: int) -> LambdaValue:
    """Evaluate Lambda(p pi / q) with exact rational argument reduction."""
    if q == 0:
        raise DomainError("denominator must be nonzero")
    r = Fraction(p, q) % 1
    if r >= Fraction(1, 2):
        r -= 1
    if r == 0 or r == Fraction(-1, 2):
        return LambdaValue(0.0, 0.0)
    x = 2 * math.pi * float(r)
    cl, err = _clausen_reduced(x)
    return LambdaValue(0.5 * cl, 0.5 * err + 4 * _EPS)


def lob(theta) -> float:
    """Shorthand returning only the value of Lambda(theta)."""
    return lobachevsky(theta).value


LAMBDA_MAX = lobachevsky_pi(1, 6).value


def lobachevsky_series(theta, nterms: int = 200_000) -> float:
    """Lambda(theta) from the Fourier series (1/2) sum sin(2 k theta) / k**2.

    Converges like 1 / (nterms**2 |sin theta|) away from multiples of pi.
    """
    theta = float(Angle(float(theta)).value)
    if nterms < 1:
        raise DomainError("nterms must be positive")
    return 0.5 * _kernels.fourier_clausen(2.0 * theta, int(nterms))


def _simpson(f, a, b, n):
    if n % 2:
        n += 1
    h = (b - a) / n
    s = f(a) + f(b)
    s += 4 * math.fsum(f(a + (2 * i - 1) * h) for i in range(1, n // 2 + 1))
    s += 2 * math.fsum(f(a + 2 * i * h) for i in range(1, n // 2))
    return s * h / 3


def _smooth_log(t):
    # log(2 sin t / (t (pi - t))), continuous on [0, pi]
    if t <= 0.0:
        return math.log(2 / math.pi)
    if t >= math.pi:
        return math.log(2 / math.pi)
    return math.log(2 * math.sin(t) / (t * (math.pi - t)))


def _xlogx(u):
    return 0.0 if u == 0.0 else u * math.log(u)


def lobachevsky_oracle(theta, subdivisions: int = 4096) -> float:
    """Direct quadrature of -int_0^theta log|2 sin t| dt for theta in [0, pi].

    The endpoint singularities are split off as log t + log(pi - t), which
    integrate in closed form; composite Simpson handles the smooth rest.
    """
    theta = float(Angle(float(theta)).value)
    if not 0.0 <= theta <= math.pi:
        raise DomainError("oracle requires theta in [0, pi]")
    if subdivisions < 16:
        raise DomainError("subdivisions must be at least 16")
    if theta == 0.0:
        return 0.0
    log_t = _xlogx(theta) - theta
    rest = math.pi - theta
    # int_0^theta log(pi - t) dt
    log_pi_t = (_xlogx(math.pi) - math.pi) - (_xlogx(rest) - rest)
    smooth = _simpson(_smooth_log, 0.0, theta, subdivisions)
    return -(log_t + log_pi_t + smooth)
