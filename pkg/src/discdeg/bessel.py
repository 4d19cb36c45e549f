"""Bessel functions J_m and their positive zeros s_nm.

Evaluation follows the classical split: ascending power series for small
arguments, Miller's downward recurrence with the J_0 + 2*sum J_{2k} = 1
normalization everywhere else (it is uniformly accurate for the whole
supported range m <= 64, x <= 1e3).

Zeros are found by certified bracketing.  The zeros of J_0 are isolated
by a sign-change scan (consecutive zeros of J_0 are more than 3 apart,
so a step of 0.5 cannot skip a pair), and the zeros of J_{m+1} strictly
interlace those of J_m: each pair of consecutive zeros of J_m brackets
exactly one zero of J_{m+1}, and there is none below the first zero of
J_m.  Walking m upward therefore yields every zero with a sign-changing
bracket, refined by Brent's method.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

M_MAX = 64
X_MAX = 1.0e3
_SCAN_STEP = 0.5
# tail kept beyond the requested upper bound so that every interlacing
# level still has a bracket whose right end exceeds the bound
_TAIL = 4.0


def bessel_j(m: int, x: float) -> float:
    """J_m(x) to absolute accuracy 1e-12 for 0 <= m <= 64, 0 <= x <= 1e3."""
    if not isinstance(m, int) or m < 0 or m > M_MAX:
        raise ValueError(f"order must be an integer in [0, {M_MAX}], got {m}")
    if not (0.0 <= x <= X_MAX):
        raise ValueError(f"argument must lie in [0, {X_MAX}], got {x}")
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    if x <= 8.0:
        return _series(m, x)
    return _miller(m, x)[m]


def _series(m: int, x: float) -> float:
    """Ascending series sum_k (-1)^k (x/2)^{m+2k} / (k! (m+k)!)."""
    h = 0.5 * x
    term = h**m / math.factorial(m)
    total = term
    k = 0
    while abs(term) > 1e-18 * max(1.0, abs(total)) and k < 200:
        k += 1
        term *= -h * h / (k * (m + k))
        total += term
    return total


def _miller(m: int, x: float) -> list[float]:
    """J_0(x) .. J_m(x) by downward recurrence with normalization."""
    top = max(m, int(x)) + 20 + int(3.0 * max(m, int(x)) ** 0.5)
    if top % 2:
        top += 1
    jp, j = 0.0, 1e-300
    out = [0.0] * (m + 1)
    norm = 0.0
    for k in range(top, 0, -1):
        jm = 2.0 * k / x * j - jp
        jp, j = j, jm
        if abs(j) > 1e250:     # rescale to dodge overflow
            j *= 1e-250
            jp *= 1e-250
            norm *= 1e-250
            for i in range(m + 1):
                out[i] *= 1e-250
        if k - 1 <= m:
            out[k - 1] = j
        if (k - 1) % 2 == 0:
            norm += j if k == 1 else 2.0 * j
    return [v / norm for v in out]


def _zeros_j0(upper: float) -> list[float]:
    """All zeros of J_0 in (0, upper], by sign-change scan + Brent."""
    zeros = []
    x0, f0 = _SCAN_STEP, bessel_j(0, _SCAN_STEP)
    while x0 < upper:
        x1 = min(x0 + _SCAN_STEP, upper)
        f1 = bessel_j(0, x1)
        if f0 * f1 < 0.0:
            zeros.append(brentq(lambda x: bessel_j(0, x), x0, x1, xtol=1e-12))
        x0, f0 = x1, f1
    return zeros


def bessel_zeros(m: int, upper: float) -> list[float]:
    """All zeros of J_m in (0, upper], each to 1e-10, none missed."""
    if not (0.0 < upper <= X_MAX):
        raise ValueError(f"upper bound must lie in (0, {X_MAX}], got {upper}")
    if not isinstance(m, int) or m < 0 or m > M_MAX:
        raise ValueError(f"order must be an integer in [0, {M_MAX}], got {m}")
    # each interlacing level loses at most its last bracket, so extend the
    # working range by one spacing (< pi + 1) per level
    work = min(upper + _TAIL + (math.pi + 1.0) * m, X_MAX)
    prev = _zeros_j0(work)
    for mu in range(1, m + 1):
        nxt = []
        for a, b in zip(prev, prev[1:]):
            fa, fb = bessel_j(mu, a), bessel_j(mu, b)
            if not fa * fb < 0.0:
                raise AssertionError(
                    f"interlacing bracket failed for J_{mu} on ({a}, {b})")
            nxt.append(brentq(lambda x: bessel_j(mu, x), a, b, xtol=1e-12))
        prev = nxt
    if prev and prev[-1] <= upper and work < X_MAX:
        raise AssertionError("working range too small; zeros may be missing")
    return [z for z in prev if z <= upper]


def first_zero(m: int) -> float:
    """s_1m to 1e-10, via an asymptotic bracket verified by sign change.

    Olver's expansion j_{m,1} = m + 1.8557571 m^{1/3} + 1.0331504 m^{-1/3}
    - ... locates the first zero to well under 0.5 for m >= 1.  The
    bracket is certified: J_m > 0 strictly below its first zero and < 0
    strictly between the first two (which are at least 3 apart), so a
    positive scan at step 0.4 from the Watson bound up to the bracket
    rules out any earlier zero.
    """
    if m == 0:
        return bessel_zeros(0, 3.0)[0]
    c = m ** (1.0 / 3.0)
    est = m + 1.8557571 * c + 1.0331504 / c - 0.00397 / m
    a, b = est - 0.5, est + 0.5
    certified = bessel_j(m, a) > 0.0 > bessel_j(m, b)
    x = watson_lower(m)
    while certified and x < a:
        certified = bessel_j(m, x) > 0.0
        x += 0.4
    if certified:
        return brentq(lambda x: bessel_j(m, x), a, b, xtol=1e-12)
    return bessel_zeros(m, min(b + 1.0, X_MAX))[0]   # interlacing fallback


def watson_lower(m: int) -> float:
    """Classical lower bound for the first zero: s_1m > sqrt(m(m+2))."""
    return math.sqrt(m * (m + 2))


@dataclass
class ModeTable:
    """Positive Bessel zeros s_nm for all modes relevant below mu_max.

    Modes run over 0..M with M minimal such that sqrt(M(M+2)) >= mu_max;
    the lower bound s_1m > sqrt(m(m+2)) then certifies that no omitted
    mode has a zero below mu_max.  Each mode stores every zero up to
    mu_max plus one beyond (so strict comparisons are always decided).
    """
    mu_max: float
    zeros: dict[tuple[int, int], float] = field(default_factory=dict)
    counts: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.mu_max <= 0:
            self.max_mode = -1
            return
        M = 0
        while watson_lower(M) < self.mu_max:
            M += 1
        self.max_mode = M
        for m in range(M + 1):
            zs = bessel_zeros(m, min(self.mu_max + _TAIL, X_MAX))
            kept = 0
            for n, z in enumerate(zs, start=1):
                self.zeros[(n, m)] = z
                if z < self.mu_max:
                    kept = n
            self.counts[m] = kept

    def s(self, n: int, m: int) -> float:
        return self.zeros[(n, m)]

    def count_below(self, m: int, mu: float) -> int:
        """The counter n_m(mu): how many n have s_nm < mu."""
        if mu > self.mu_max:
            raise ValueError("mode table truncated below the requested value")
        if m > self.max_mode:
            return 0
        return sum(1 for (n, mm), z in self.zeros.items()
                   if mm == m and z < mu)

    def nearest(self, mu: float) -> tuple[int, int, float]:
        """(n, m, s_nm) minimizing |s_nm - mu| over the stored zeros."""
        (n, m), z = min(self.zeros.items(), key=lambda kv: abs(kv[1] - mu))
        return n, m, z
