"""Exact rational arithmetic, sparse polynomials, and truncated Laurent series.

Every number in this package is an exact rational; there is no floating
point anywhere.  Rationals are backed by ``gmpy2.mpq`` when available
(``fractions.Fraction`` otherwise) — both normalize on construction and
print as ``"num/den"`` (or ``"n"`` for integers), which is the
serialization format shared with the CLI.

The series type tracks an explicit truncation order and propagates it
pessimistically through arithmetic: any read past the honest truncation
raises ``TruncationError`` instead of returning a silent zero.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Mapping, Optional, Union

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rational

RationalLike = Union[int, str, "Rational"]

ZERO = Rational(0)
ONE = Rational(1)
HALF = Rational(1, 2)


def rat(x: RationalLike, den: Optional[int] = None) -> Rational:
    """Coerce ``x`` (int, "num/den" string, or rational) to a Rational."""
    if den is not None:
        return Rational(x, den)
    return Rational(x)


def format_rational(q: RationalLike) -> str:
    """Serialize exactly as "num/den", or "n" when the denominator is 1."""
    return str(Rational(q))


def parse_rational(s: str) -> Rational:
    return Rational(s)


class TruncationError(ValueError):
    """A series was asked for data beyond its honest truncation order."""


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Sparse exact-coefficient polynomial in one variable.

    Coefficients are stored as a map ``degree -> Rational`` with no zero
    entries.  ``degree()`` of the zero polynomial is ``None`` (a
    distinguished sentinel, never a number).

    EXAMPLES::

        >>> p = UniPoly({2: 3, 1: -2})
        >>> str(p)
        '3*t^2 - 2*t'
        >>> p(rat(2))
        mpq(8,1)
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Optional[Mapping[int, RationalLike]] = None,
                 var: str = "t"):
        self.var = var
        d: dict[int, Rational] = {}
        if coeffs:
            for k, v in coeffs.items():
                q = Rational(v)
                if q:
                    if k < 0:
                        raise ValueError("polynomial degree must be >= 0")
                    d[int(k)] = q
        self.coeffs = d

    # -- constructors

    @classmethod
    def zero(cls, var: str = "t") -> "UniPoly":
        return cls({}, var)

    @classmethod
    def one(cls, var: str = "t") -> "UniPoly":
        return cls({0: 1}, var)

    @classmethod
    def monomial(cls, degree: int, coeff: RationalLike = 1,
                 var: str = "t") -> "UniPoly":
        return cls({degree: coeff}, var)

    # -- structure

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> Optional[int]:
        """Highest degree with nonzero coefficient; None for the zero poly."""
        return max(self.coeffs) if self.coeffs else None

    def valuation(self) -> Optional[int]:
        return min(self.coeffs) if self.coeffs else None

    def coefficient(self, degree: int) -> Rational:
        return self.coeffs.get(degree, ZERO)

    def leading_coefficient(self) -> Rational:
        if not self.coeffs:
            return ZERO
        return self.coeffs[max(self.coeffs)]

    def items(self) -> Iterator[tuple[int, Rational]]:
        return iter(sorted(self.coeffs.items()))

    # -- ring operations

    def _require_same_var(self, other: "UniPoly") -> None:
        if self.var != other.var:
            raise ValueError(
                f"variable mismatch: {self.var!r} vs {other.var!r}")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._require_same_var(other)
        d = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = d.get(k, ZERO) + v
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        out = UniPoly.zero(self.var)
        out.coeffs = d
        return out

    def __neg__(self) -> "UniPoly":
        out = UniPoly.zero(self.var)
        out.coeffs = {k: -v for k, v in self.coeffs.items()}
        return out

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return self.scale(other)
        self._require_same_var(other)
        d: dict[int, Rational] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                s = d.get(k, ZERO) + v1 * v2
                if s:
                    d[k] = s
                else:
                    del d[k]
        out = UniPoly.zero(self.var)
        out.coeffs = d
        return out

    def __rmul__(self, other) -> "UniPoly":
        return self.scale(other)

    def scale(self, c: RationalLike) -> "UniPoly":
        q = Rational(c)
        out = UniPoly.zero(self.var)
        if q:
            out.coeffs = {k: v * q for k, v in self.coeffs.items()}
        return out

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.one(self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, UniPoly) and self.var == other.var
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.var, frozenset(self.coeffs.items())))

    # -- calculus / evaluation

    def derivative(self) -> "UniPoly":
        out = UniPoly.zero(self.var)
        out.coeffs = {k - 1: k * v for k, v in self.coeffs.items() if k >= 1}
        return out

    def __call__(self, x: RationalLike) -> Rational:
        """Evaluate by Horner's rule over the dense degree range."""
        if not self.coeffs:
            return ZERO
        x = Rational(x)
        acc = ZERO
        for k in range(max(self.coeffs), -1, -1):
            acc = acc * x + self.coeffs.get(k, ZERO)
        return acc

    def divide_by_power(self, k: int) -> "UniPoly":
        """Exact division by var**k; raises if any term has degree < k."""
        if any(d < k for d in self.coeffs):
            raise ValueError(f"not divisible by {self.var}^{k}")
        out = UniPoly.zero(self.var)
        out.coeffs = {d - k: v for d, v in self.coeffs.items()}
        return out

    # -- serialization

    def to_json(self) -> dict[str, str]:
        return {str(k): format_rational(v) for k, v in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str], var: str = "t") -> "UniPoly":
        return cls({int(k): Rational(v) for k, v in data.items()}, var)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            v = self.coeffs[k]
            sign = "-" if v < 0 else "+"
            mag = -v if v < 0 else v
            if k == 0:
                term = format_rational(mag)
            else:
                pw = self.var if k == 1 else f"{self.var}^{k}"
                term = pw if mag == 1 else f"{format_rational(mag)}*{pw}"
            parts.append((sign, term))
        sign0, term0 = parts[0]
        text = ("-" if sign0 == "-" else "") + term0
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text

    def __repr__(self) -> str:
        return f"UniPoly({self})"


# ---------------------------------------------------------------------------
# multivariate polynomials


class MultiPoly:
    """Sparse exact polynomial in an ordered tuple of variables.

    Terms map exponent vectors (tuples as long as ``vars``) to nonzero
    rationals.  Exponents may be negative, which makes the type double
    as a Laurent *polynomial*; the recursion identities only ever
    produce genuine polynomials and assert so.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str],
                 terms: Optional[Mapping[tuple[int, ...], RationalLike]] = None):
        self.vars = tuple(variables)
        t: dict[tuple[int, ...], Rational] = {}
        if terms:
            n = len(self.vars)
            for e, v in terms.items():
                q = Rational(v)
                if q:
                    e = tuple(int(x) for x in e)
                    if len(e) != n:
                        raise ValueError("exponent vector length mismatch")
                    t[e] = q
        self.terms = t

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Iterable[str], c: RationalLike) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def from_unipoly(cls, p: UniPoly, variables: Iterable[str],
                     slot: int) -> "MultiPoly":
        """Embed a univariate polynomial into variable position ``slot``."""
        variables = tuple(variables)
        n = len(variables)
        terms = {}
        for d, v in p.coeffs.items():
            e = [0] * n
            e[slot] = d
            terms[tuple(e)] = v
        return cls(variables, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponents: tuple[int, ...]) -> Rational:
        return self.terms.get(tuple(exponents), ZERO)

    def total_degree(self) -> Optional[int]:
        return max(sum(e) for e in self.terms) if self.terms else None

    def degree_in(self, var: str) -> Optional[int]:
        if not self.terms:
            return None
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def _require_same_vars(self, other: "MultiPoly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._require_same_vars(other)
        d = dict(self.terms)
        for e, v in other.terms.items():
            s = d.get(e, ZERO) + v
            if s:
                d[e] = s
            else:
                d.pop(e, None)
        out = MultiPoly.zero(self.vars)
        out.terms = d
        return out

    def __neg__(self) -> "MultiPoly":
        out = MultiPoly.zero(self.vars)
        out.terms = {e: -v for e, v in self.terms.items()}
        return out

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._require_same_vars(other)
        d: dict[tuple[int, ...], Rational] = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = d.get(e, ZERO) + v1 * v2
                if s:
                    d[e] = s
                else:
                    del d[e]
        out = MultiPoly.zero(self.vars)
        out.terms = d
        return out

    def __rmul__(self, other) -> "MultiPoly":
        return self.scale(other)

    def scale(self, c: RationalLike) -> "MultiPoly":
        q = Rational(c)
        out = MultiPoly.zero(self.vars)
        if q:
            out.terms = {e: v * q for e, v in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiPoly) and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def derivative_in(self, var: str) -> "MultiPoly":
        i = self.vars.index(var)
        d: dict[tuple[int, ...], Rational] = {}
        for e, v in self.terms.items():
            if e[i] != 0:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                d[e2] = v * e[i]
        out = MultiPoly.zero(self.vars)
        out.terms = d
        return out

    def permute_vars(self, perm: Mapping[str, str]) -> "MultiPoly":
        """Relabel variables by a bijection on names (for symmetry checks)."""
        new_positions = [self.vars.index(perm.get(v, v)) for v in self.vars]
        d = {}
        for e, v in self.terms.items():
            e2 = tuple(e[j] for j in new_positions)
            d[e2] = v
        out = MultiPoly.zero(self.vars)
        out.terms = d
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        def mono(e):
            pieces = []
            for v, k in zip(self.vars, e):
                if k == 1:
                    pieces.append(v)
                elif k != 0:
                    pieces.append(f"{v}^{k}")
            return "*".join(pieces) or "1"
        keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        return " + ".join(
            f"({format_rational(self.terms[e])})*{mono(e)}" for e in keys)

    def __repr__(self) -> str:
        n = len(self.terms)
        return f"MultiPoly(vars={self.vars}, {n} terms)"


def divided_difference(p: MultiPoly, x: str, y: str) -> MultiPoly:
    """Exact quotient p / (x - y) for p divisible by (x - y).

    The input must vanish on the diagonal x = y (equivalently, be
    divisible by x - y); a nonzero remainder raises ``ValueError("not
    antisymmetric")`` since it signals a bug upstream.

    EXAMPLES::

        >>> p = MultiPoly(("x", "y"), {(2, 0): 1, (0, 2): -1})
        >>> sorted(divided_difference(p, "x", "y").terms.items())
        [((0, 1), mpq(1,1)), ((1, 0), mpq(1,1))]
    """
    ix = p.vars.index(x)
    iy = p.vars.index(y)
    rem = dict(p.terms)
    quot: dict[tuple[int, ...], Rational] = {}
    while rem:
        e = max(rem, key=lambda e: (e[ix], e))
        if e[ix] == 0:
            raise ValueError("not antisymmetric")
        c = rem.pop(e)
        q = e[:ix] + (e[ix] - 1,) + e[ix + 1:]
        s = quot.get(q, ZERO) + c
        if s:
            quot[q] = s
        else:
            del quot[q]
        # subtract c * x^(a-1) * (x - y) * rest: the x^a term cancels,
        # leaving a lower term with the exponent moved onto y.
        e2 = list(q)
        e2[iy] += 1
        e2 = tuple(e2)
        s = rem.get(e2, ZERO) + c
        if s:
            rem[e2] = s
        else:
            rem.pop(e2, None)
    out = MultiPoly.zero(p.vars)
    out.terms = quot
    return out


# ---------------------------------------------------------------------------
# truncated Laurent series


class LaurentSeries:
    """Laurent series known exactly on a finite degree window.

    ``coeffs`` holds degrees in ``[min_degree, truncation_order]``;
    degrees below ``min_degree`` are exactly zero, degrees above
    ``truncation_order`` are *unknown*.  ``truncation_order`` may be
    ``None``, meaning the series is exact (a Laurent polynomial).

    The variable is a formal name.  By convention the curve series live
    in the variable ``"1/t"``: stored degree d is the coefficient of
    t^(-d), so a series with min_degree -1 starts at t^(+1).
    """

    __slots__ = ("var", "min_degree", "truncation_order", "coeffs")

    def __init__(self, coeffs: Mapping[int, RationalLike], var: str,
                 min_degree: Optional[int] = None,
                 truncation_order: Optional[int] = None):
        d: dict[int, Rational] = {}
        for k, v in coeffs.items():
            q = Rational(v)
            if q:
                d[int(k)] = q
        if min_degree is None:
            min_degree = min(d) if d else 0
        if truncation_order is not None and d:
            if max(d) > truncation_order:
                raise ValueError("coefficient beyond truncation order")
        if any(k < min_degree for k in d):
            raise ValueError("coefficient below min_degree")
        self.var = var
        self.min_degree = int(min_degree)
        self.truncation_order = (None if truncation_order is None
                                 else int(truncation_order))
        self.coeffs = d

    # -- constructors

    @classmethod
    def zero(cls, var: str, truncation_order: Optional[int] = None) -> "LaurentSeries":
        return cls({}, var, 0, truncation_order)

    @classmethod
    def exact(cls, coeffs: Mapping[int, RationalLike], var: str) -> "LaurentSeries":
        return cls(coeffs, var, truncation_order=None)

    # -- structure

    def is_zero(self) -> bool:
        """True when no nonzero coefficient is stored (up to truncation)."""
        return not self.coeffs

    def coefficient(self, degree: int) -> Rational:
        if self.truncation_order is not None and degree > self.truncation_order:
            raise TruncationError(
                f"coefficient of degree {degree} requested, series truncated "
                f"at {self.truncation_order}")
        return self.coeffs.get(degree, ZERO)

    def valuation(self) -> Optional[int]:
        """Least degree with a nonzero coefficient, or None if zero."""
        return min(self.coeffs) if self.coeffs else None

    def items(self) -> Iterator[tuple[int, Rational]]:
        return iter(sorted(self.coeffs.items()))

    def _trunc_key(self) -> int:
        t = self.truncation_order
        return (1 << 62) if t is None else t

    # -- arithmetic

    def _require_same_var(self, other: "LaurentSeries") -> None:
        if self.var != other.var:
            raise ValueError(
                f"variable mismatch: {self.var!r} vs {other.var!r}")

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._require_same_var(other)
        t = min(self._trunc_key(), other._trunc_key())
        d = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = d.get(k, ZERO) + v
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        trunc = None if t >= (1 << 62) else t
        if trunc is not None:
            d = {k: v for k, v in d.items() if k <= trunc}
        return LaurentSeries(d, self.var,
                             min(self.min_degree, other.min_degree), trunc)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries({k: -v for k, v in self.coeffs.items()},
                             self.var, self.min_degree, self.truncation_order)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        self._require_same_var(other)
        # honest truncation: min(T_a + m_b, T_b + m_a)
        ta, tb = self._trunc_key(), other._trunc_key()
        t = min(ta + other.min_degree, tb + self.min_degree)
        trunc = None if t >= (1 << 61) else t
        m = self.min_degree + other.min_degree
        d: dict[int, Rational] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                if trunc is not None and k > trunc:
                    continue
                s = d.get(k, ZERO) + v1 * v2
                if s:
                    d[k] = s
                else:
                    del d[k]
        return LaurentSeries(d, self.var, m, trunc)

    def __rmul__(self, other) -> "LaurentSeries":
        return self.scale(other)

    def scale(self, c: RationalLike) -> "LaurentSeries":
        q = Rational(c)
        if not q:
            return LaurentSeries({}, self.var, self.min_degree,
                                 self.truncation_order)
        return LaurentSeries({k: v * q for k, v in self.coeffs.items()},
                             self.var, self.min_degree, self.truncation_order)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by var**k (degree shift)."""
        t = self.truncation_order
        return LaurentSeries({d + k: v for d, v in self.coeffs.items()},
                             self.var, self.min_degree + k,
                             None if t is None else t + k)

    def truncate(self, order: int) -> "LaurentSeries":
        if self.truncation_order is not None and order > self.truncation_order:
            raise TruncationError(
                f"cannot extend truncation {self.truncation_order} to {order}")
        return LaurentSeries({k: v for k, v in self.coeffs.items() if k <= order},
                             self.var, self.min_degree, order)

    def tightened(self) -> "LaurentSeries":
        """Raise min_degree to the actual valuation.

        Honest, because every coefficient in [min_degree,
        truncation_order] is exactly known — leading zeros are real
        zeros.  Keeps pessimistic truncation tracking from compounding
        when a computed series (e.g. a Newton residual) has much higher
        valuation than its a-priori bound.
        """
        val = self.valuation()
        if val is None:
            val = (self.min_degree if self.truncation_order is None
                   else self.truncation_order + 1)
        if val == self.min_degree:
            return self
        return LaurentSeries(self.coeffs, self.var, val, self.truncation_order)

    def derivative(self) -> "LaurentSeries":
        """d/d(var), term by term."""
        t = self.truncation_order
        return LaurentSeries({k - 1: k * v for k, v in self.coeffs.items() if k},
                             self.var, self.min_degree - 1,
                             None if t is None else t - 1)

    def __pow__(self, n: int) -> "LaurentSeries":
        if n < 0:
            raise ValueError("use laurent_reciprocal for negative powers")
        result = LaurentSeries.exact({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentSeries) and self.var == other.var
                and self.coeffs == other.coeffs
                and self.truncation_order == other.truncation_order)

    def __hash__(self):
        return hash((self.var, self.truncation_order,
                     frozenset(self.coeffs.items())))

    def __str__(self) -> str:
        if not self.coeffs:
            body = "0"
        else:
            terms = []
            for k in sorted(self.coeffs):
                c = format_rational(self.coeffs[k])
                if k == 0:
                    terms.append(c)
                elif k == 1:
                    terms.append(f"{c}*{self.var}")
                else:
                    terms.append(f"{c}*{self.var}^{k}")
            body = " + ".join(terms)
        tail = "" if self.truncation_order is None else \
            f" + O({self.var}^{self.truncation_order + 1})"
        return body + tail

    def __repr__(self) -> str:
        return f"LaurentSeries({self})"


def polynomial_part(obj, laurent_var: Optional[str] = None):
    """Keep the terms with non-negative exponent in the Laurent variable.

    For a ``LaurentSeries`` in a variable named ``"1/X"`` this returns a
    ``UniPoly`` in X (stored degree d <= 0 becomes X^(-d)); the series
    must be truncated at order >= 0, else ``TruncationError``
    ("insufficient truncation") — the non-negative-power window must be
    fully known.

    For a ``MultiPoly``, ``laurent_var`` names the variable whose
    negative exponents are dropped; the result is again a ``MultiPoly``.
    """
    if isinstance(obj, LaurentSeries):
        if obj.truncation_order is not None and obj.truncation_order < 0:
            raise TruncationError("insufficient truncation")
        if not obj.var.startswith("1/"):
            raise ValueError(
                "polynomial part is defined for series in a reciprocal "
                f"variable, got {obj.var!r}")
        return UniPoly({-d: v for d, v in obj.coeffs.items() if d <= 0},
                       var=obj.var[2:])
    if isinstance(obj, MultiPoly):
        if laurent_var is None:
            raise ValueError("laurent_var required for MultiPoly input")
        i = obj.vars.index(laurent_var)
        out = MultiPoly.zero(obj.vars)
        out.terms = {e: v for e, v in obj.terms.items() if e[i] >= 0}
        return out
    raise TypeError(f"unsupported input {type(obj).__name__}")


def laurent_reciprocal(s: LaurentSeries,
                       order: Optional[int] = None) -> "LaurentSeries":
    """Multiplicative inverse of a series with nonzero leading coefficient.

    The result has valuation -val(s) and honest truncation
    T - 2*val(s) for a series truncated at T (an unknown tail at degree
    T+1 perturbs the inverse only from degree T+1 - 2*val onward).  For
    an exact input that is not a monomial, ``order`` must be given since
    the inverse is an infinite series.
    """
    val = s.valuation()
    if val is None:
        raise ValueError("reciprocal of zero series")
    if s.truncation_order is None:
        if len(s.coeffs) == 1:
            out_t = order  # exact monomial: exact inverse unless capped
        elif order is None:
            raise ValueError("reciprocal of an exact non-monomial series "
                             "needs an explicit truncation order")
        else:
            out_t = order
    else:
        out_t = s.truncation_order - 2 * val
        if order is not None:
            out_t = min(out_t, order)
    lead = s.coeffs[val]
    inv: dict[int, Rational] = {-val: 1 / lead}
    if out_t is not None:
        for m in range(1, out_t + val + 1):
            acc = ZERO
            for i, ri in inv.items():
                c = s.coeffs.get(m - i)
                if c is not None:
                    acc += ri * c
            if acc:
                inv[m - val] = -acc / lead
    return LaurentSeries(inv, s.var, -val, out_t)


def laurent_substitute(p, s: LaurentSeries) -> LaurentSeries:
    """Compose: substitute the series ``s`` for the variable of ``p``.

    ``p`` may be a ``UniPoly`` or a ``LaurentSeries``.  Negative degrees
    of ``p`` go through ``laurent_reciprocal(s)``.  Honest truncation is
    inherited from the series arithmetic; additionally, when ``p`` is
    itself truncated its unknown tail (degrees > T_p) caps the result at
    (T_p + 1) * val(s) - 1, which requires val(s) >= 1.
    """
    if isinstance(p, UniPoly):
        window = sorted(p.coeffs.items())
        p_trunc = None
    elif isinstance(p, LaurentSeries):
        window = sorted(p.coeffs.items())
        p_trunc = p.truncation_order
    else:
        raise TypeError(f"unsupported input {type(p).__name__}")

    val = s.valuation()
    cap = None
    if p_trunc is not None:
        if val is None or val < 1:
            raise TruncationError(
                "substituting a truncated series requires the inner series "
                "to have valuation >= 1")
        cap = (p_trunc + 1) * val - 1

    result = LaurentSeries.zero(s.var)
    const = ZERO
    pos = [(d, c) for d, c in window if d > 0]
    neg = [(-d, c) for d, c in window if d < 0]
    for d, c in window:
        if d == 0:
            const = c
    if pos:
        power = s
        k = 1
        for d, c in sorted(pos):
            while k < d:
                power = power * s
                k += 1
            result = result + power.scale(c)
    if neg:
        s_inv = laurent_reciprocal(s)
        power = s_inv
        k = 1
        for d, c in sorted(neg):
            while k < d:
                power = power * s_inv
                k += 1
            result = result + power.scale(c)
    if const:
        result = result + LaurentSeries.exact({0: const}, s.var)
    if cap is not None:
        t = result._trunc_key()
        if cap < t:
            result = result.truncate(cap)
    return result


# ---------------------------------------------------------------------------
# special numbers


def double_factorial(n: int) -> Rational:
    """Double factorial of an odd integer, extended to negative arguments.

    For n >= -1 this is the usual product (with (-1)!! = 1, the empty
    product); for n <= -3 it is extended by the recurrence
    n!! = (n+2)!!/(n+2), so (-3)!! = -1, (-5)!! = 1/3, and generally
    (-(2k+1))!! = (-1)^k / (2k-1)!!.
    """
    if n % 2 == 0:
        raise ValueError(f"double factorial of even {n}")
    if n >= -1:
        acc = 1
        for k in range(n, 1, -2):
            acc *= k
        return Rational(acc)
    acc = ONE
    k = -1
    while k > n:
        # descend: k!! = (k+2)!!/(k+2) with (k+2)!! already in acc
        acc = acc / (k - 2 + 2)
        k -= 2
    return acc


_BERNOULLI_CACHE: list[Rational] = [ONE, Rational(-1, 2)]


def bernoulli(r: int) -> Rational:
    """Bernoulli number B_r (convention B_1 = -1/2, from z*e^{zx}/(e^z-1))."""
    if r < 0:
        raise ValueError("negative Bernoulli index")
    while len(_BERNOULLI_CACHE) <= r:
        n = len(_BERNOULLI_CACHE)
        acc = ZERO
        for j in range(n):
            acc += math.comb(n + 1, j) * _BERNOULLI_CACHE[j]
        _BERNOULLI_CACHE.append(-acc / (n + 1))
    return _BERNOULLI_CACHE[r]
