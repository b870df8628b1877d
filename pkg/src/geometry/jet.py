"""Truncated jets in (x, y, p).

A jet carries the Taylor coefficients of a function of (x, y, p) on the
index set T = {(i, j, k) : i, j ≤ 1, i + j ≤ 1, k ≤ 4}. It is stored as a
3×5 array: row 0 holds the pure p-expansion, row 1 the ∂x-branch and row 2
the ∂y-branch, each as a degree-4 polynomial in the p-increment. Entries are
coefficients (derivative / k!), so products are truncated convolutions.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, Union

import numpy as np

from ..core.errors import DomainError

ORDER = 4
WIDTH = ORDER + 1
_FACTORIAL = np.array([math.factorial(k) for k in range(WIDTH + 1)], dtype=float)

Scalar = Union[int, float]


def _conv(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.convolve(u, v)[:WIDTH]


class Jet:
    """Element of the truncated jet ring on T."""

    __slots__ = ("c",)

    def __init__(self, coefficients: np.ndarray):
        self.c = np.asarray(coefficients, dtype=float).reshape(3, WIDTH)

    # construction

    @classmethod
    def constant(cls, value: Scalar) -> "Jet":
        c = np.zeros((3, WIDTH))
        c[0, 0] = value
        return cls(c)

    @classmethod
    def seed_x(cls, x: float) -> "Jet":
        c = np.zeros((3, WIDTH))
        c[0, 0] = x
        c[1, 0] = 1.0
        return cls(c)

    @classmethod
    def seed_y(cls, y: float) -> "Jet":
        c = np.zeros((3, WIDTH))
        c[0, 0] = y
        c[2, 0] = 1.0
        return cls(c)

    @classmethod
    def seed_p(cls, p: float) -> "Jet":
        c = np.zeros((3, WIDTH))
        c[0, 0] = p
        c[0, 1] = 1.0
        return cls(c)

    # access

    def coefficient(self, i: int, j: int, k: int) -> float:
        """Taylor coefficient at multi-index (i, j, k)."""
        if i < 0 or j < 0 or k < 0 or i + j > 1 or k > ORDER:
            raise IndexError(f"multi-index {(i, j, k)} is outside the truncation set")
        row = 1 if i else (2 if j else 0)
        return float(self.c[row, k])

    def derivative(self, i: int, j: int, k: int) -> float:
        """Partial derivative ∂x^i ∂y^j ∂p^k at the base point."""
        return self.coefficient(i, j, k) * _FACTORIAL[k]

    @property
    def value(self) -> float:
        return float(self.c[0, 0])

    f = value

    @property
    def f_x(self) -> float:
        return self.derivative(1, 0, 0)

    @property
    def f_y(self) -> float:
        return self.derivative(0, 1, 0)

    @property
    def f_p(self) -> float:
        return self.derivative(0, 0, 1)

    @property
    def f_pp(self) -> float:
        return self.derivative(0, 0, 2)

    @property
    def f_ppp(self) -> float:
        return self.derivative(0, 0, 3)

    @property
    def f_pppp(self) -> float:
        return self.derivative(0, 0, 4)

    @property
    def f_xp(self) -> float:
        return self.derivative(1, 0, 1)

    @property
    def f_xpp(self) -> float:
        return self.derivative(1, 0, 2)

    @property
    def f_yp(self) -> float:
        return self.derivative(0, 1, 1)

    @property
    def f_ypp(self) -> float:
        return self.derivative(0, 1, 2)

    def partials(self) -> Dict[str, float]:
        """Every named partial the chain and metric formulas use."""
        return {
            "f": self.f,
            "f_x": self.f_x,
            "f_y": self.f_y,
            "f_p": self.f_p,
            "f_pp": self.f_pp,
            "f_ppp": self.f_ppp,
            "f_pppp": self.f_pppp,
            "f_xp": self.f_xp,
            "f_xpp": self.f_xpp,
            "f_yp": self.f_yp,
            "f_ypp": self.f_ypp,
        }

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.c)))

    def __repr__(self) -> str:
        return f"Jet(f={self.f!r}, f_p={self.f_p!r}, f_x={self.f_x!r}, f_y={self.f_y!r})"

    # ring operations

    @staticmethod
    def _lift(other: Union["Jet", Scalar]) -> "Jet":
        return other if isinstance(other, Jet) else Jet.constant(float(other))

    def __neg__(self) -> "Jet":
        return Jet(-self.c)

    def __pos__(self) -> "Jet":
        return self

    def __add__(self, other: Union["Jet", Scalar]) -> "Jet":
        return Jet(self.c + Jet._lift(other).c)

    __radd__ = __add__

    def __sub__(self, other: Union["Jet", Scalar]) -> "Jet":
        return Jet(self.c - Jet._lift(other).c)

    def __rsub__(self, other: Scalar) -> "Jet":
        return Jet(Jet._lift(other).c - self.c)

    def __mul__(self, other: Union["Jet", Scalar]) -> "Jet":
        if not isinstance(other, Jet):
            return Jet(self.c * float(other))
        a, b = self.c, other.c
        out = np.empty((3, WIDTH))
        out[0] = _conv(a[0], b[0])
        out[1] = _conv(a[0], b[1]) + _conv(a[1], b[0])
        out[2] = _conv(a[0], b[2]) + _conv(a[2], b[0])
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Jet", Scalar]) -> "Jet":
        if not isinstance(other, Jet):
            if float(other) == 0.0:
                raise DomainError("division", 0.0)
            return Jet(self.c / float(other))
        return self * other.reciprocal()

    def __rtruediv__(self, other: Scalar) -> "Jet":
        return self.reciprocal() * float(other)

    def __pow__(self, exponent: int) -> "Jet":
        if isinstance(exponent, (int, np.integer)) and not isinstance(exponent, bool):
            return self.ipow(int(exponent))
        return self.power(float(exponent))

    def ipow(self, n: int) -> "Jet":
        """Integer power by repeated squaring; negative n goes through the reciprocal."""
        if n < 0:
            return self.reciprocal().ipow(-n)
        result = Jet.constant(1.0)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # elementary functions

    def _compose(self, taylor: np.ndarray) -> "Jet":
        """φ(self) from the Taylor coefficients φ⁽ⁿ⁾(a₀)/n!, n = 0..5."""
        a = self.c
        shift = a[0].copy()
        shift[0] = 0.0
        power = np.zeros(WIDTH)
        power[0] = 1.0
        pure = np.zeros(WIDTH)
        slope = np.zeros(WIDTH)
        for n in range(WIDTH):
            pure += taylor[n] * power
            slope += (n + 1) * taylor[n + 1] * power
            power = _conv(power, shift)
        out = np.empty((3, WIDTH))
        out[0] = pure
        out[1] = _conv(slope, a[1])
        out[2] = _conv(slope, a[2])
        return Jet(out)

    def exp(self) -> "Jet":
        a0 = self.value
        return self._compose(math.exp(a0) / _FACTORIAL)

    def sin(self) -> "Jet":
        a0 = self.value
        return self._compose(
            np.array([math.sin(a0 + n * math.pi / 2) for n in range(WIDTH + 1)]) / _FACTORIAL
        )

    def cos(self) -> "Jet":
        a0 = self.value
        return self._compose(
            np.array([math.cos(a0 + n * math.pi / 2) for n in range(WIDTH + 1)]) / _FACTORIAL
        )

    def tan(self) -> "Jet":
        if math.cos(self.value) == 0.0:
            raise DomainError("tan", self.value)
        return self.sin() * self.cos().reciprocal()

    def sec(self) -> "Jet":
        if math.cos(self.value) == 0.0:
            raise DomainError("sec", self.value)
        return self.cos().reciprocal()

    def log(self) -> "Jet":
        a0 = self.value
        if not a0 > 0.0:
            raise DomainError("log", a0)
        taylor = np.empty(WIDTH + 1)
        taylor[0] = math.log(a0)
        for n in range(1, WIDTH + 1):
            taylor[n] = (-1.0) ** (n + 1) / (n * a0**n)
        return self._compose(taylor)

    def power(self, alpha: float) -> "Jet":
        """Real power; the base must be positive unless alpha is an integer."""
        a0 = self.value
        if float(alpha).is_integer() and alpha >= 0:
            return self.ipow(int(alpha))
        if float(alpha).is_integer():
            if a0 == 0.0:
                raise DomainError(f"power {alpha}", a0)
        elif not a0 > 0.0:
            raise DomainError(f"power {alpha}", a0)
        taylor = np.empty(WIDTH + 1)
        binom = 1.0
        for n in range(WIDTH + 1):
            taylor[n] = binom * a0 ** (alpha - n)
            binom *= (alpha - n) / (n + 1)
        return self._compose(taylor)

    def sqrt(self) -> "Jet":
        if not self.value > 0.0:
            raise DomainError("sqrt", self.value)
        return self.power(0.5)

    def reciprocal(self) -> "Jet":
        if self.value == 0.0:
            raise DomainError("reciprocal", 0.0)
        return self.power(-1.0)


def _unary(name: str) -> Callable[[Jet], Jet]:
    def apply(u: Union[Jet, Scalar]) -> Jet:
        return getattr(Jet._lift(u), name)()

    apply.__name__ = name
    return apply


sin = _unary("sin")
cos = _unary("cos")
tan = _unary("tan")
sec = _unary("sec")
exp = _unary("exp")
log = _unary("log")
sqrt = _unary("sqrt")

FUNCTIONS: Dict[str, Callable[[Jet], Jet]] = {
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "sec": sec,
    "exp": exp,
    "log": log,
    "sqrt": sqrt,
}
