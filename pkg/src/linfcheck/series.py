"""Exact truncated power series in one variable over the rationals.

A ``Series`` knows its coefficients through a fixed order and nothing
beyond; operations return a result whose order is the largest one the
inputs can certify.  In particular the derivative of an order-N series has
order N - 1 and an integral has order N + 1, so exactness is tracked rather
than silently padded.  All coefficients are ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Rational = Union[int, Fraction]


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Series:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(_as_fraction(c) for c in self.coeffs))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Rational]) -> "Series":
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, value: Rational, order: int) -> "Series":
        return cls((_as_fraction(value),) + (Fraction(0),) * order)

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls.constant(0, order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.constant(1, order)

    @classmethod
    def x(cls, order: int) -> "Series":
        if order < 1:
            raise ValueError("the coordinate series needs order >= 1")
        return cls((Fraction(0), Fraction(1)) + (Fraction(0),) * (order - 1))

    # -- basics --------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} beyond stored order {self.order}")
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} series to {order}")
        return Series(self.coeffs[: order + 1])

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"Series([{shown}{tail}], order={self.order})"

    # -- ring operations (results live at the smallest input order) ----------

    def _aligned(self, other: "Series") -> tuple[int, "Series", "Series"]:
        n = min(self.order, other.order)
        return n, self.truncate(n), other.truncate(n)

    def __add__(self, other):
        if isinstance(other, Series):
            n, a, b = self._aligned(other)
            return Series(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))
        value = _as_fraction(other)
        return Series((self.coeffs[0] + value,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return Series(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Series) else -_as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            n, a, b = self._aligned(other)
            out = [Fraction(0)] * (n + 1)
            for i, ci in enumerate(a.coeffs):
                if not ci:
                    continue
                for j in range(n + 1 - i):
                    cj = b.coeffs[j]
                    if cj:
                        out[i + j] += ci * cj
            return Series(tuple(out))
        value = _as_fraction(other)
        return Series(tuple(value * c for c in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        value = _as_fraction(other)
        if not value:
            raise ZeroDivisionError("division of a series by zero")
        return self * (1 / value)

    def __pow__(self, exponent: int) -> "Series":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Series.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- calculus -------------------------------------------------------------

    def derivative(self) -> "Series":
        if self.order < 1:
            raise ValueError("derivative of an order-0 series is undetermined")
        return Series(tuple(k * self.coeffs[k] for k in range(1, self.order + 1)))

    def integral(self, constant: Rational = 0) -> "Series":
        coeffs = [_as_fraction(constant)]
        coeffs.extend(c / (k + 1) for k, c in enumerate(self.coeffs))
        return Series(tuple(coeffs))

    # -- multiplicative structure ----------------------------------------------

    def inverse(self) -> "Series":
        c0 = self.coeffs[0]
        if not c0:
            raise ValueError("inverse needs a nonzero constant term")
        inv0 = 1 / c0
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                cj = self.coeffs[j]
                if cj:
                    acc += cj * out[k - j]
            out.append(-inv0 * acc)
        return Series(tuple(out))

    def exp(self) -> "Series":
        if self.coeffs[0]:
            raise ValueError("exp needs a zero constant term")
        # e' = e * f' solved coefficient by coefficient
        out = [Fraction(1)]
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                cj = self.coeffs[j]
                if cj:
                    acc += j * cj * out[k - j]
            out.append(acc / k)
        return Series(tuple(out))

    def log(self) -> "Series":
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        if self.order < 1:
            return Series.zero(0)
        return (self.derivative() * self.inverse()).integral(0)

    def log1p(self) -> "Series":
        if self.coeffs[0]:
            raise ValueError("log1p needs a zero constant term")
        return (1 + self).log()

    def compose(self, inner: "Series") -> "Series":
        if inner.coeffs[0]:
            raise ValueError("composition needs an inner series with zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        result = Series.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            result = result * inner + self.coeffs[k]
        return result


# ---------------------------------------------------------------------------
# the pairing condition for one even variable
# ---------------------------------------------------------------------------

def wronskian(g1: Series, g2: Series) -> Series:
    """g1' * g2 - g1 * g2'."""
    return g1.derivative() * g2 - g1 * g2.derivative()


def nilcheck_one_boson(f1: Series, f2: Series, g1: Series, g2: Series) -> Series:
    """Residual g1*f1 + g2*f2 + W(g1, g2); zero iff the operator-squared
    condition holds for a single even variable through the common order."""
    return g1 * f1 + g2 * f2 + wronskian(g1, g2)


def solve_f1(g1: Series, g2: Series) -> Series:
    """The choice f1 = -W(g1, g2)/g1 (with f2 = 0) that zeroes the residual."""
    if not g1.coeffs[0]:
        raise ValueError("g1 needs a nonzero constant term")
    return -1 * (wronskian(g1, g2) * g1.inverse())


def solve_g2(g1: Series, f1: Series, ratio_at_zero: Rational = 1) -> Series:
    """The choice g2 = g1 * (ratio_at_zero + integral of f1/g1), f2 = 0.

    ``ratio_at_zero`` pins the free integration constant, i.e. the value of
    g2/g1 at the origin.
    """
    if not g1.coeffs[0]:
        raise ValueError("g1 needs a nonzero constant term")
    return g1 * (f1 * g1.inverse()).integral(ratio_at_zero)


# ---------------------------------------------------------------------------
# the two classical inverse-function series
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def lambert_w_series(order: int) -> Series:
    """Taylor series of the inverse of w * e^w, by fixed-point refinement.

    Each pass through w = p * exp(-w) gains one exact order, starting from
    w = p.  The closed-form coefficients (-n)^(n-1)/n! are deliberately not
    used here; they serve as an independent check elsewhere.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    p = Series.x(order)
    w = p
    for _ in range(order):
        w = p * (-w).exp()
    return w


@lru_cache(maxsize=None)
def g_series(order: int) -> Series:
    """Solution of G'(G + p) = G with G(0) = 1, order by order.

    Rewritten as the fixed point G = 1 + integral of G/(G + p), which gains
    at least one exact order per pass.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if order == 0:
        return Series.one(0)
    p = Series.x(order)
    g = Series.one(order)
    for _ in range(order):
        g = (g * (g + p).inverse()).integral(1).truncate(order)
    return g
