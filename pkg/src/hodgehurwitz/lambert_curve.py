"""Series and polynomial data attached to the Lambert curve.

The curve x = y e^{-y} carries a distinguished coordinate t in which
the covering map is w(t) = -1/t - log(1 - 1/t) = sum_{m>=2} t^{-m}/m.
This module builds, in exact arithmetic:

* the polynomial tower ``xi_hat(n)`` generated from t - 1 by the
  operator t^2(t-1) d/dt, and its derivative forms ``xi_form(n)``;
* the deck transformation (involution) ``s_involution``, the branch
  coordinate ``v_series`` with v^2/2 = w, and the Stirling expansion
  coefficients ``stirling_coefficients``;
* the odd Laurent family ``eta_series`` in v, plus the identity checks
  tying all of these together as truncated series.

Series in t live in the formal variable "1/t": stored degree d is the
coefficient of t^{-d}, so polynomials in t occupy degrees <= 0.

All caches are write-once per entry and the cached values immutable,
so prepared towers are safe for concurrent reads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from hodgehurwitz.exact_algebra import (
    HALF,
    ONE,
    ZERO,
    LaurentSeries,
    Rational,
    UniPoly,
    bernoulli,
    double_factorial,
    laurent_reciprocal,
    laurent_substitute,
    rat,
)

_T_SQUARED_T_MINUS_1 = UniPoly({3: 1, 2: -1})  # t^2 (t - 1)


class XiHatTower:
    """Memoized tower of the polynomials xi_hat_n.

    xi_hat_0 = t - 1 and xi_hat_{n+1} = t^2 (t - 1) (d/dt) xi_hat_n, a
    polynomial of degree 2n+1 with leading coefficient (2n-1)!! for
    n >= 1.  The two Laurent members below the tower are
    xi_hat_{-1} = 1 - 1/t and xi_hat_{-2} = -1/(2 t^2) up to an
    additive constant; the constant is transcendental and never enters
    any identity computed here, so it is simply left out (only
    differences and derivatives of xi_hat_{-2} are meaningful).
    """

    def __init__(self):
        self._polys: dict[int, UniPoly] = {0: UniPoly({1: 1, 0: -1})}
        self._forms: dict[int, UniPoly] = {}
        self._xi_hat_m1 = LaurentSeries.exact({0: 1, 1: -1}, "1/t")
        self._xi_hat_m2 = LaurentSeries.exact({2: rat(-1, 2)}, "1/t")

    def xi_hat(self, n: int):
        """xi_hat_n: a UniPoly for n >= 0, a Laurent form for n = -1, -2."""
        if n < -2:
            raise ValueError(f"xi_hat is not defined for n = {n} < -2")
        if n == -1:
            return self._xi_hat_m1
        if n == -2:
            return self._xi_hat_m2
        top = max(self._polys)
        while top < n:
            nxt = _T_SQUARED_T_MINUS_1 * self._polys[top].derivative()
            top += 1
            self._polys[top] = nxt
        return self._polys[n]

    def xi_form(self, n: int) -> UniPoly:
        """xi_n = d/dt xi_hat_n: degree 2n, leading coefficient (2n+1)!!."""
        if n < 0:
            raise ValueError(f"xi_form requires n >= 0, got {n}")
        form = self._forms.get(n)
        if form is None:
            form = self.xi_hat(n).derivative()
            self._forms[n] = form
        return form

    def xi_hat_over_t(self, n: int) -> UniPoly:
        """xi_hat_{n+1}(t)/t for n >= 0 — exact, since t^2 | xi_hat_{n+1}."""
        if n < 0:
            raise ValueError(f"xi_hat_over_t requires n >= 0, got {n}")
        return self.xi_hat(n + 1).divide_by_power(1)


_TOWER = XiHatTower()


def xi_hat(n: int):
    return _TOWER.xi_hat(n)


def xi_form(n: int) -> UniPoly:
    return _TOWER.xi_form(n)


def xi_hat_over_t(n: int) -> UniPoly:
    return _TOWER.xi_hat_over_t(n)


def poly_as_recip_series(p: UniPoly) -> LaurentSeries:
    """Embed a polynomial in t exactly into the 1/t series ring."""
    return LaurentSeries.exact({-d: c for d, c in p.coeffs.items()}, "1/t")


def d_dt(series: LaurentSeries) -> LaurentSeries:
    """t-derivative of a series in the variable 1/t.

    With u = 1/t, d/dt = -u^2 d/du, so degree d maps to degree d+1 with
    coefficient -d.  An unknown tail from degree T+1 feeds degree T+2
    onward, hence the result is honest through T+1.
    """
    if series.var != "1/t":
        raise ValueError(f"expected a series in 1/t, got {series.var!r}")
    t = series.truncation_order
    return LaurentSeries(
        {d + 1: -d * c for d, c in series.coeffs.items() if d},
        "1/t", series.min_degree + 1, None if t is None else t + 1)


# ---------------------------------------------------------------------------
# the covering map and its inversions


def w_series(order: int) -> LaurentSeries:
    """w(t) = sum_{m >= 2} t^{-m}/m, truncated at t^{-order}."""
    if order < 2:
        raise ValueError("w_series needs order >= 2")
    return LaurentSeries({m: rat(1, m) for m in range(2, order + 1)},
                         "1/t", 2, order)


def _w_evaluated_at(sigma: LaurentSeries) -> LaurentSeries:
    """W(sigma) for a t-like series (valuation -1), honest to sigma's order."""
    t_cur = sigma.truncation_order
    return laurent_substitute(w_series(max(t_cur, 2)),
                              laurent_reciprocal(sigma))


def s_involution(order: int) -> LaurentSeries:
    """The deck transformation s(t): the second solution of w(s) = w(t).

    Solved by Newton iteration on W(sigma) - w = 0 with the correction
    sigma += (W(sigma) - w) * sigma^2 (sigma - 1)  (the reciprocal of
    -W'), seeded at -t + 2/3.  Each step roughly doubles the number of
    correct coefficients but costs three orders of honest truncation,
    so the iteration runs with padding and the result is re-verified
    against the defining equation through the requested order.
    """
    if order < 0:
        raise ValueError("s_involution needs order >= 0")
    steps, correct = 0, 2
    while correct <= order:
        correct = 2 * correct + 1
        steps += 1
    work = order + 3 * (steps + 1)
    w = w_series(work)
    one = LaurentSeries.exact({0: 1}, "1/t")
    sigma = LaurentSeries({-1: -1, 0: rat(2, 3)}, "1/t", -1, work)
    for _ in range(steps + 1):
        resid = (_w_evaluated_at(sigma) - w).tightened()
        if resid.truncate(order).is_zero():
            break
        sigma = (sigma + resid * sigma * sigma * (sigma - one)).tightened()
    else:
        resid = _w_evaluated_at(sigma) - w
        if not resid.truncate(order).is_zero():
            raise RuntimeError(
                "involution iteration failed to converge (internal error)")
    if sigma.coefficient(1) != 0:
        raise RuntimeError("involution acquired a t^-1 term (internal error)")
    return sigma.truncate(order)


def v_series(order: int) -> LaurentSeries:
    """The branch coordinate v(t) with v^2/2 = w and leading term +1/t.

    Computed as v = (1/t) sqrt(2 w t^2) where 2 w t^2 = 1 + (2/3)/t + ...
    is a unit; the square root is a Newton iteration y <- (y + A/y)/2
    from y = 1, verified by y^2 = A before use.
    """
    if order < 1:
        raise ValueError("v_series needs order >= 1")
    a = w_series(order + 1).shift(-2).scale(2)  # honest through order - 1
    y = LaurentSeries.exact({0: 1}, "1/t")
    for _ in range(2 + max(order, 2).bit_length()):
        if (y * y - a).is_zero():
            break
        y = (y + a * laurent_reciprocal(y)).scale(HALF)
    if not (y * y - a).is_zero():
        raise RuntimeError("square-root iteration failed (internal error)")
    return y.shift(1)


@dataclass(frozen=True)
class CurveSeries:
    """Bundle of the curve series at one truncation order, built once."""

    order: int
    w_of_t: LaurentSeries
    s_of_t: LaurentSeries
    v_of_t: LaurentSeries
    sk: tuple

    @classmethod
    def build(cls, order: int, k_max: int = 16) -> "CurveSeries":
        return cls(order=order,
                   w_of_t=w_series(order),
                   s_of_t=s_involution(order),
                   v_of_t=v_series(order),
                   sk=tuple(stirling_coefficients(k_max)))


# ---------------------------------------------------------------------------
# Stirling coefficients and the eta family


_STIRLING: list = [ONE]


def stirling_coefficients(k_max: int) -> list:
    """s_0 .. s_{k_max}: exp(-sum_{r>=1} B_{2r}/(2r(2r-1)) z^{2r-1}).

    Computed through the ODE f' = g' f of the exponential, i.e.
    m f_m = sum_j j g_j f_{m-j}, so every prefix is exact.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    while len(_STIRLING) <= k_max:
        m = len(_STIRLING)
        acc = ZERO
        for j in range(1, m + 1, 2):
            r = (j + 1) // 2
            g_j = -bernoulli(2 * r) / (2 * r * (2 * r - 1))
            acc += j * g_j * _STIRLING[m - j]
        _STIRLING.append(acc / m)
    return _STIRLING[:k_max + 1]


class EtaFamily:
    """The odd Laurent series eta_n(v) at one fixed truncation order.

    eta_n(v) = sum_{k>=0} s_k (2(n-k)-1)!! v^{2(k-n)-1}, an odd series
    starting at v^{-(2n+1)}; the double factorial at negative odd
    arguments follows the recurrence extension.
    """

    def __init__(self, order: int):
        self.order = order
        self._cache: dict[int, LaurentSeries] = {}

    def eta(self, n: int) -> LaurentSeries:
        series = self._cache.get(n)
        if series is None:
            lo = -(2 * n + 1)
            coeffs = {}
            k = 0
            while True:
                d = 2 * (k - n) - 1
                if d > self.order:
                    break
                coeffs[d] = (stirling_coefficients(k)[k]
                             * double_factorial(2 * (n - k) - 1))
                k += 1
            series = LaurentSeries(coeffs, "v", lo, self.order)
            self._cache[n] = series
        return series


_ETA_FAMILIES: dict[int, EtaFamily] = {}


def eta_series(n: int, order: int) -> LaurentSeries:
    family = _ETA_FAMILIES.get(order)
    if family is None:
        family = _ETA_FAMILIES[order] = EtaFamily(order)
    return family.eta(n)


# ---------------------------------------------------------------------------
# identity checks (exercised by the verify suite and the tests)


def eta_xi_identity_check(n: int, order: int) -> bool:
    """eta_n(v(t)) == (xi_hat_n(t) - xi_hat_n(s(t)))/2, as 1/t-series.

    Valid for n >= -1.  Raises if the requested order leaves no honest
    comparison window.
    """
    if n < -1:
        raise ValueError("identity holds for n >= -1")
    s = s_involution(order)
    v = v_series(order)
    lhs = laurent_substitute(eta_series(n, order), v)
    xh = xi_hat(n)
    if n >= 0:
        rhs = (poly_as_recip_series(xh) - laurent_substitute(xh, s))
    else:
        # xi_hat_{-1} lives in the 1/t ring already; composing with s
        # means substituting 1/s(t) for its variable.
        rhs = xh - laurent_substitute(xh, laurent_reciprocal(s))
    diff = lhs - rhs.scale(HALF)
    if diff.truncation_order is not None and diff.truncation_order < 0:
        raise ValueError(
            f"order {order} too small to compare eta_{n} against xi_hat_{n}")
    return diff.is_zero()


def xi_in_x_check(n: int, order: int) -> bool:
    """xi_hat_n on the global coordinate series of the curve.

    t(x) = sum_{k>=0} k^k x^k / k! inverts the covering map in the
    coordinate x; composing gives xi_hat_n(t(x)) = sum_{k>=1}
    k^{k+n} x^k / k!, checked through x^order.  Valid for n >= -1.
    """
    if n < -1:
        raise ValueError("check defined for n >= -1")
    t_of_x = LaurentSeries(
        {k: rat(k ** k, math.factorial(k)) for k in range(order + 1)},
        "x", 0, order)
    if n >= 0:
        got = laurent_substitute(xi_hat(n), t_of_x)
    else:
        got = laurent_substitute(xi_hat(-1), laurent_reciprocal(t_of_x))
    if got.coefficient(0) != 0:
        return False
    for k in range(1, order + 1):
        if got.coefficient(k) != rat(k ** (k + n), math.factorial(k)):
            return False
    return True


def _bivariate_mul(a: dict, b: dict, cap: int) -> dict:
    out: dict[tuple[int, int], Rational] = {}
    for (e1, e2), c in a.items():
        for (f1, f2), d in b.items():
            g1, g2 = e1 + f1, e2 + f2
            if g1 + g2 > cap:
                continue
            s = out.get((g1, g2), ZERO) + c * d
            if s:
                out[(g1, g2)] = s
            else:
                del out[(g1, g2)]
    return out


def h02_series_identity_check(order: int) -> bool:
    """The two-point genus-zero generating identity, through total
    degree ``order``:

        sum_{(m1,m2) != (0,0)}  m1^m1 m2^m2 / (m1! m2! (m1+m2)) x1^m1 x2^m2
          ==  log( sum_{k>=1} (k^{k-1}/k!) (x1^k - x2^k)/(x1 - x2) )

    with 0^0 = 1.  Both sides are expanded exactly as bivariate series.
    """
    if order < 2:
        raise ValueError("h02 check needs order >= 2")
    lhs: dict[tuple[int, int], Rational] = {}
    for m1 in range(order + 1):
        for m2 in range(order - m1 + 1):
            if m1 == 0 and m2 == 0:
                continue
            lhs[(m1, m2)] = (rat(m1 ** m1, math.factorial(m1))
                             * rat(m2 ** m2, math.factorial(m2))
                             / (m1 + m2))
    # inner sum minus 1; (x1^k - x2^k)/(x1 - x2) = sum_{a+b=k-1} x1^a x2^b
    h: dict[tuple[int, int], Rational] = {}
    for k in range(1, order + 2):
        ck = rat(k ** (k - 1), math.factorial(k))
        for a in range(k):
            b = k - 1 - a
            if a + b <= order:
                h[(a, b)] = h.get((a, b), ZERO) + ck
    h[(0, 0)] -= 1
    if not h[(0, 0)]:
        del h[(0, 0)]
    rhs: dict[tuple[int, int], Rational] = {}
    power = dict(h)
    for j in range(1, order + 1):
        sign = 1 if j % 2 else -1
        for e, c in power.items():
            s = rhs.get(e, ZERO) + c * sign / j
            if s:
                rhs[e] = s
            else:
                rhs.pop(e, None)
        if j < order:
            power = _bivariate_mul(power, h, order)
    return lhs == rhs
