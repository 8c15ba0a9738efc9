"""Closed-form probability bounds behind the (delta - 1)-coloring analysis.

Every tail probability has a ``log_`` twin; comparisons against the local
lemma condition are done in log space so that values far below the float
range still order correctly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

EPSILON = 1e-17
K_MIN = 1e-7
K_MAX = 1 / 9
BRACKET_START = 1000

#: Constants quoted for the analysis, used by ``--check-paper``.
REFERENCE_K_STAR = 0.038895
REFERENCE_DELTA_MIN = 7_327_700_972
REFERENCE_THRESHOLD_AV = 1.055e9

_AV_VARIANCE = 4 + 16 / math.e**2


@dataclass(frozen=True)
class BoundParams:
    delta: float
    k: float = 1 / 9
    epsilon: float = EPSILON

    def __post_init__(self):
        if self.delta < 3:
            raise ValueError("delta must be >= 3")
        _check_k(self.k)


def _check_k(k: float) -> None:
    if not 0 < k <= K_MAX + 1e-15:
        raise ValueError(f"k must lie in (0, 1/9], got {k}")


# -- generic inequalities ----------------------------------------------------

def log_azuma_tail(t: float, sum_ai_sq: float) -> float:
    if t < 0 or sum_ai_sq <= 0:
        raise ValueError("need t >= 0 and sum_ai_sq > 0")
    return math.log(2) - t * t / (2 * sum_ai_sq)


def azuma_tail(t: float, sum_ai_sq: float) -> float:
    """``2 exp(-t^2 / (2 sum a_i^2))`` clipped to 1."""
    return min(1.0, math.exp(log_azuma_tail(t, sum_ai_sq)))


def lll_check(p: float, d: float) -> bool:
    """Symmetric local lemma condition ``e p (d + 1) <= 1``."""
    if not 0 <= p <= 1 or d < 0:
        raise ValueError("need p in [0, 1] and d >= 0")
    if p == 0:
        return True
    return log_lll_check(math.log(p), d)


def log_lll_check(log_p: float, d: float) -> bool:
    return 1 + log_p + math.log(d + 1) <= 0


# -- A_v ---------------------------------------------------------------------

def pair_contrib_lower(delta: float) -> float:
    """Lower bound on the chance a fixed non-adjacent pair contributes to ``Z_v``."""
    if delta < 3:
        raise ValueError("delta must be >= 3")
    x = 1 / (delta - 1)
    return x * math.exp(-3 - 3 * x)


def pair_contrib_exact(delta: float) -> float:
    """``(1/(delta-1)) (1 - 1/(delta-1))^(3 delta - 3)``, the bound before linearising the log."""
    if delta < 3:
        raise ValueError("delta must be >= 3")
    x = 1 / (delta - 1)
    return x * math.exp((3 * delta - 3) * math.log1p(-x))


def mu_lower_Av(delta: float) -> float:
    if delta < 3:
        raise ValueError("delta must be >= 3")
    pairs = delta * delta / 50 - delta / 10
    return pairs * pair_contrib_lower(delta)


def ci2_budget_Av(delta: float) -> float:
    """Sum of squared martingale increments for ``Z_v``: ``(4 + 16/e^2) delta``."""
    return _AV_VARIANCE * delta


def log_pAv_upper(delta: float) -> float:
    mu = mu_lower_Av(delta)
    if mu <= 2:
        return 0.0
    return min(0.0, log_azuma_tail(mu - 2, ci2_budget_Av(delta)))


def pAv_upper(delta: float) -> float:
    return math.exp(log_pAv_upper(delta))


def av_dependency(delta: float) -> float:
    return delta**4 + 1


def _av_ok(delta: int) -> bool:
    return log_lll_check(log_pAv_upper(delta), av_dependency(delta))


def threshold_Av() -> int:
    """Smallest integer delta at which the A_v tail meets the local lemma with ``d = delta^4 + 1``."""
    return _smallest_satisfying(_av_ok)


# -- E_i ---------------------------------------------------------------------

def ei_deviation(delta: float) -> float:
    c = math.exp(-0.8)
    return (c - 0.2) * delta - (1 + 2.4 * c)


def log_pEi_upper(delta: float) -> float:
    if delta < 3:
        raise ValueError("delta must be >= 3")
    t = ei_deviation(delta)
    if t <= 0:
        return 0.0
    return min(0.0, -t * t / (1.6 * delta))


def pEi_upper(delta: float) -> float:
    """``exp(-t^2 / (8/5 delta))``; underflows to 0.0 where ``log_pEi_upper`` stays finite."""
    return math.exp(log_pEi_upper(delta))


def ei_exponent_report(delta: float) -> dict[str, float | bool]:
    """Compare the E_i tail against both ``delta^-2`` and ``delta^-6``."""
    lp = log_pEi_upper(delta)
    return {
        "delta": delta,
        "log_pEi_upper": lp,
        "below_delta_pow_minus_2": lp <= -2 * math.log(delta),
        "below_delta_pow_minus_6": lp <= -6 * math.log(delta),
    }


# -- F_i ---------------------------------------------------------------------

def B_of_k(k: float | Fraction) -> float | Fraction:
    """Martingale variance coefficient ``36 k^2 + 3k (4k + 1)^2``; exact for Fractions."""
    _check_k(float(k))
    return 36 * k * k + 3 * k * (4 * k + 1) ** 2


def a_of_k(k: float, epsilon: float = EPSILON) -> float:
    """Per-delta mean coefficient ``(1 - eps) k (3/5 - k)^2 (1 - 3k) e^-5``."""
    _check_k(k)
    return (1 - epsilon) * k * (0.6 - k) ** 2 * (1 - 3 * k) * math.exp(-5)


def fi_margin(delta: float, k: float, epsilon: float = EPSILON) -> float:
    """Left minus right side of the F_i sufficiency inequality; ``-inf`` while ``a(k) delta <= 2``."""
    a = a_of_k(k, epsilon)
    dev = a * delta - 2
    if dev <= 0:
        return -math.inf
    lhs = dev * dev / (2 * B_of_k(k) * delta)
    return lhs - (1 + math.log(2 * (delta**4 + 2)))


def fi_ok(delta: float, k: float, epsilon: float = EPSILON) -> bool:
    return fi_margin(delta, k, epsilon) >= 0


def delta_min_Fi(k: float, epsilon: float = EPSILON) -> int:
    """Smallest integer delta satisfying the F_i inequality at ``k``."""
    _check_k(k)
    return _smallest_satisfying(lambda d: fi_ok(d, k, epsilon))


def optimize_k(epsilon: float = EPSILON, resolution: int = 1000, refine: bool = True) -> tuple[float, int]:
    """Minimise ``delta_min_Fi`` over ``k`` in ``[1e-7, 1/9]``.

    A uniform grid locates the basin; golden-section search on the
    continuous crossing point refines it. Ties go to the smaller ``k``.
    """
    if resolution < 1000:
        raise ValueError("resolution must be >= 1000")
    ks = np.linspace(K_MIN, K_MAX, resolution)
    values = [delta_min_Fi(float(k), epsilon) for k in ks]
    i = int(np.argmin(values))
    best_k, best = float(ks[i]), values[i]
    if refine:
        lo = float(ks[max(i - 1, 0)])
        hi = float(ks[min(i + 1, resolution - 1)])
        k_ref = _golden_min(lambda k: _crossing(k, epsilon), lo, hi)
        d_ref = delta_min_Fi(k_ref, epsilon)
        if d_ref < best or (d_ref == best and k_ref < best_k):
            best_k, best = k_ref, d_ref
    return best_k, best


def k_sweep(n_points: int, epsilon: float = EPSILON) -> list[tuple[float, int]]:
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    ks = np.linspace(K_MIN, K_MAX, n_points) if n_points > 1 else np.array([K_MAX])
    return [(float(k), delta_min_Fi(float(k), epsilon)) for k in ks]


def _crossing(k: float, epsilon: float) -> float:
    # continuous root of fi_margin, a smooth stand-in for the integer minimum
    from scipy.optimize import brentq

    d = delta_min_Fi(k, epsilon)
    lo = max(d - 1.0, 2 / a_of_k(k, epsilon) * (1 + 1e-12))
    if fi_margin(lo, k, epsilon) >= 0:
        return lo
    return brentq(lambda x: fi_margin(x, k, epsilon), lo, float(d), xtol=1e-6)


def _golden_min(f, lo: float, hi: float, tol: float = 1e-9) -> float:
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2


def _smallest_satisfying(pred) -> int:
    """Smallest integer where a monotone predicate turns true, by doubling then bisection."""
    lo = hi = BRACKET_START
    if pred(lo):
        # walk down until it fails; predicates here are false near the bottom of their range
        while lo > 3 and pred(lo - 1):
            lo -= 1
        return lo
    while not pred(hi):
        lo, hi = hi, hi * 2
        if hi > 1 << 80:
            raise ArithmeticError("no crossing found below 2^80")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi
