"""Parameter sets, their validity rules, and exact rank arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

MODES = ("approx_Oalpha", "additive_log", "eps_density")

# Rank of out-degree 0. Every real rank is >= 0, so this sorts below all of them.
NO_RANK = -1


class ParameterError(ValueError):
    """Raised for parameter sets the invariants cannot be maintained under."""


def as_fraction(value) -> Fraction:
    """Convert ints, strings, Fractions and floats to an exact Fraction.

    Floats go through their shortest repr so that ``0.5`` becomes ``1/2`` and
    ``0.1`` becomes ``1/10`` rather than the binary expansion.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def ceil_log(base: Fraction, n: int) -> int:
    """Smallest integer K >= 0 with base**K >= n, computed exactly."""
    if base <= 1:
        raise ValueError("base must exceed 1")
    k, power = 0, Fraction(1)
    while power < n:
        power *= base
        k += 1
    return k


def _ceil_ln_times(scale: int, n: int) -> int:
    # ceil(scale * ln n). ln n is irrational for integer n >= 2, so the float
    # value is never an exact integer and a tiny guard band is enough.
    x = scale * math.log(n)
    k = math.ceil(x)
    if k - x > 1 - 1e-9:
        k -= 1
    return k


@dataclass(frozen=True)
class Parameters:
    """Immutable parameter set shared by every engine.

    ``eta`` and ``gamma`` are exact rationals; ``lam`` is derived as
    ``eta / (64 * b)``. Construction validates the set and raises
    :class:`ParameterError` when it cannot be maintained.
    """

    theta: int
    eta: Fraction
    b: int
    gamma: Fraction
    n_capacity: int
    epsilon: Fraction | None = None
    mode: str = "custom"
    lam: Fraction = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "eta", as_fraction(self.eta))
        object.__setattr__(self, "gamma", as_fraction(self.gamma))
        if self.epsilon is not None:
            object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if self.theta not in (0, 1):
            raise ParameterError(f"theta must be 0 or 1, got {self.theta}")
        if self.b < 1:
            raise ParameterError(f"b must be a positive integer, got {self.b}")
        if self.eta <= 0:
            raise ParameterError(f"eta must be positive, got {self.eta}")
        if self.gamma <= 0:
            raise ParameterError(f"gamma must be positive, got {self.gamma}")
        if self.n_capacity < 2:
            raise ParameterError("n_capacity must be at least 2")
        slack = self.eta / self.b
        lam = slack / 64
        object.__setattr__(self, "lam", lam)
        if (1 + lam) ** 5 > 1 + slack:
            raise ParameterError("(1+lambda)^5 exceeds 1 + eta/b")
        if self.theta == 0:
            if slack > 1:
                raise ParameterError(f"eta/b = {slack} exceeds 1")
            # b/eta <= floor(b/2), the condition under which theta' is satisfiable
            if self.eta * (self.b // 2) < self.b:
                raise ParameterError(
                    f"b={self.b}, eta={self.eta}: need b/eta <= floor(b/2)"
                )
        elif (1 + lam) ** 4 > 2:
            raise ParameterError(f"lambda = {lam} too large: (1+lambda)^4 exceeds 2")

    @property
    def slack(self) -> Fraction:
        """The multiplicative slack eta/b of the invariants."""
        return self.eta / self.b

    @property
    def quarter(self) -> int:
        return self.b // 4

    @property
    def half(self) -> int:
        return self.b // 2

    @property
    def scan_width(self) -> int:
        """Out-neighbors visited per round-robin step, ceil(2/lambda)."""
        return math.ceil(2 / self.lam)

    # Flip predicates, evaluated in integer arithmetic. With lam = p/q,
    # (1+lam)*d + theta < x  <=>  (q+p)*d + theta*q < x*q.

    def exceeds(self, high: int, low: int) -> bool:
        """True when ``high > max{(1+lam)*low + theta, low + 1, floor(b/4)}``.

        This is the flip test of every insert and delete chain: ``high`` is the
        vertex that would give up an arc, ``low`` the one receiving it.
        """
        q, p = self.lam.denominator, self.lam.numerator
        return (
            high > low + 1
            and high > self.quarter
            and high * q > (q + p) * low + self.theta * q
        )

    def reaches(self, degree: int, phi: int) -> bool:
        """True when ``degree >= max{(1+lam)*phi, floor(b/4)}``."""
        q, p = self.lam.denominator, self.lam.numerator
        return degree >= self.quarter and degree * q >= (q + p) * phi

    def stale(self, phi: int, degree: int) -> bool:
        """True when ``phi > (1+lam)*degree``."""
        q, p = self.lam.denominator, self.lam.numerator
        return phi * q > (q + p) * degree


def derive_parameters(
    mode: str,
    n_capacity: int,
    epsilon=None,
    gamma=None,
) -> Parameters:
    """Build the parameter set for one of the three named regimes.

    ``approx_Oalpha``: theta=0, eta=3, b = max(2, ceil(3 ln n)) rounded up to
    even. ``additive_log``: theta=1, b=1, eta = ceil(ln n). ``eps_density``:
    theta=0, gamma=epsilon/2, eta=3, b = ceil(eta/gamma * log_{1+gamma} n).

    ``gamma`` is only an analysis parameter outside ``eps_density``; it
    defaults to 1 there.
    """
    if n_capacity < 2:
        raise ParameterError("n_capacity must be at least 2")
    if mode == "approx_Oalpha":
        b = max(2, _ceil_ln_times(3, n_capacity))
        b += b % 2
        return Parameters(0, Fraction(3), b, as_fraction(gamma or 1), n_capacity,
                          mode=mode)
    if mode == "additive_log":
        eta = max(1, _ceil_ln_times(1, n_capacity))
        return Parameters(1, Fraction(eta), 1, as_fraction(gamma or 1), n_capacity,
                          mode=mode)
    if mode == "eps_density":
        if epsilon is None:
            raise ParameterError("eps_density needs epsilon")
        eps = as_fraction(epsilon)
        if not 0 < eps <= 1:
            raise ParameterError(f"epsilon must lie in (0, 1], got {eps}")
        g = eps / 2
        eta = Fraction(3)
        return Parameters(0, eta, _eps_density_b(g, eta, n_capacity), g, n_capacity,
                          epsilon=eps, mode=mode)
    raise ParameterError(f"unknown mode {mode!r}; expected one of {MODES}")


def _eps_density_b(gamma: Fraction, eta: Fraction, n: int) -> int:
    # b = ceil(eta/gamma * log_{1+gamma} n): the smallest integer b with
    # (1+gamma)^(b*gamma/eta) >= n. Start from the float value and settle the
    # boundary exactly: with t = b*gamma/eta = P/Q the test is (1+gamma)^P >= n^Q.
    def ok(b: int) -> bool:
        t = b * gamma / eta
        return (1 + gamma) ** t.numerator >= Fraction(n) ** t.denominator

    b = max(1, math.ceil(float(eta / gamma) * math.log(n) / math.log1p(float(gamma))))
    while b > 1 and ok(b - 1):
        b -= 1
    while not ok(b):
        b += 1
    return b


class RankTable:
    """Exact ranks ``floor(log_{1+lam} d)`` for non-negative integers d.

    A float estimate is accepted when it is clearly away from an integer;
    otherwise the boundary is settled by comparing ``(q+p)^r`` against
    ``d * q^r`` with Python integers, where lam = p/q.
    """

    def __init__(self, lam: Fraction):
        self.lam = lam
        self._log_base = math.log1p(float(lam))
        self._cache: dict[int, int] = {0: NO_RANK}

    def __call__(self, d: int) -> int:
        try:
            return self._cache[d]
        except KeyError:
            r = self._compute(d)
            self._cache[d] = r
            return r

    def _compute(self, d: int) -> int:
        if d < 0:
            raise ValueError("negative degree")
        x = math.log(d) / self._log_base
        r = math.floor(x)
        frac = x - r
        if 1e-7 < frac < 1 - 1e-7:
            return r
        p, q = self.lam.numerator, self.lam.denominator
        # Settle exactly: largest r with (q+p)^r <= d * q^r.
        r = max(r - 1, 0)
        while (q + p) ** (r + 1) <= d * q ** (r + 1):
            r += 1
        while r > 0 and (q + p) ** r > d * q ** r:
            r -= 1
        return r
