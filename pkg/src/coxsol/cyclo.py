"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is stored as a polynomial in zeta_n = exp(2*pi*i/n) with Fraction
coefficients, reduced modulo the n-th cyclotomic polynomial, so the
coefficient tuple always has length phi(n) and two values with the same
conductor are equal iff their tuples are equal.  Values with different
conductors are compared by lifting both into Q(zeta_lcm); the conductor of
a value is never minimised automatically.

>>> zeta(3, 1) + zeta(3, 2) + 1
Cyclo(3, 0)
>>> (zeta(5) ** 5).as_rational()
Fraction(1, 1)
>>> zeta(6, 1) == -zeta(3, 2)
True
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


class NotCoprime(ValueError):
    """Raised when a Galois conjugation exponent shares a factor with n."""


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("conductor must be positive")
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            result *= (p - 1) * p ** (k - 1)
        p += 1
    if m > 1:
        result *= m - 1
    return result


# ---------------------------------------------------------------------------
# dense polynomial helpers over Fraction (index = exponent)

def _ptrim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _ptrim(out)


def _pdivmod_monic(p, d):
    """Quotient and remainder of p by a monic divisor d."""
    k = len(d) - 1
    p = list(p)
    q = [Fraction(0)] * max(len(p) - k, 0)
    for i in range(len(p) - 1, k - 1, -1):
        c = p[i]
        if c:
            q[i - k] = c
            for j in range(k + 1):
                p[i - k + j] -= c * d[j]
    return _ptrim(q), _ptrim(p[:k])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficient tuple of the n-th cyclotomic polynomial, low degree first."""
    if n == 1:
        return (Fraction(-1), Fraction(1))
    num = [Fraction(0)] * (n + 1)
    num[0], num[n] = Fraction(-1), Fraction(1)
    rem = num
    for d in range(1, n):
        if n % d == 0:
            q, r = _pdivmod_monic(rem, list(cyclotomic_polynomial(d)))
            if r:
                raise ArithmeticError("cyclotomic division must be exact")
            rem = q
    assert len(rem) - 1 == euler_phi(n)
    return tuple(rem)


def _reduce(p, n: int):
    """Reduce a coefficient list mod Phi_n, returning a tuple of length phi(n)."""
    phi = euler_phi(n)
    _, r = _pdivmod_monic(p, list(cyclotomic_polynomial(n)))
    r = list(r) + [Fraction(0)] * (phi - len(r))
    return tuple(r)


# ---------------------------------------------------------------------------

def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


class Cyclo:
    """An element of Q(zeta_n), immutable.

    conductor: the n of the ambient field.
    coeffs: tuple of Fraction of length phi(n), coeffs[j] multiplying zeta_n^j.
    """

    __slots__ = ("conductor", "coeffs")
    __hash__ = None  # value equality crosses conductors, so no stable hash

    def __init__(self, conductor: int, coeffs):
        phi = euler_phi(conductor)
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > phi:
            coeffs = list(_reduce(coeffs, conductor))
        else:
            coeffs = coeffs + [Fraction(0)] * (phi - len(coeffs))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("Cyclo is immutable")

    # -- conductor management ------------------------------------------------

    def lifted(self, n: int) -> "Cyclo":
        """The same value written in Q(zeta_n); n must be a multiple."""
        if n == self.conductor:
            return self
        if n % self.conductor:
            raise ValueError("can only lift to a multiple of the conductor")
        step = n // self.conductor
        out = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for j, c in enumerate(self.coeffs):
            out[j * step] = c
        return Cyclo(n, out)

    @staticmethod
    def _common(a: "Cyclo", b: "Cyclo"):
        n = math.lcm(a.conductor, b.conductor)
        return a.lifted(n), b.lifted(n)

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            return other
        q = _as_fraction(other)
        if q is None:
            return None
        return Cyclo(self.conductor, [q])

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = Cyclo._common(self, other)
        return Cyclo(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = Cyclo._common(self, other)
        return Cyclo(a.conductor, _pmul(list(a.coeffs), list(b.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclo(self.conductor, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # extended euclid of self against Phi_n inside Q[x]
        a = _ptrim(list(self.coeffs))
        b = list(cyclotomic_polynomial(self.conductor))
        u0, u1 = [Fraction(1)], []
        while b:
            if len(a) < len(b):
                a, b, u0, u1 = b, a, u1, u0
                continue
            lead = a[-1] / b[-1]
            shift = len(a) - len(b)
            for j, c in enumerate(b):
                a[shift + j] -= lead * c
            mov = [Fraction(0)] * shift + [lead * c for c in u1]
            u0 = _ptrim([x - y for x, y in
                         zip(u0 + [Fraction(0)] * max(0, len(mov) - len(u0)),
                             mov + [Fraction(0)] * max(0, len(u0) - len(mov)))])
            a = _ptrim(a)
        if len(a) != 1:
            raise ZeroDivisionError("not invertible mod Phi_n")
        g = a[0]
        return Cyclo(self.conductor, [c / g for c in u0])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    # -- predicates and views --------------------------------------------------

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = Cyclo._common(self, other)
        return a.coeffs == b.coeffs

    def as_rational(self):
        """The value as a Fraction if it lies in Q, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def galois(self, k: int) -> "Cyclo":
        """Image under zeta_n -> zeta_n^k; requires gcd(k, n) = 1."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise NotCoprime(f"gcd({k}, {n}) != 1")
        out = [Fraction(0)] * n
        for j, c in enumerate(self.coeffs):
            out[(j * k) % n] += c
        return Cyclo(n, out)

    def conjugate(self) -> "Cyclo":
        """Complex conjugation zeta_n -> zeta_n^(-1)."""
        if self.conductor <= 2:
            return self
        return self.galois(self.conductor - 1)

    # -- io ---------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @staticmethod
    def from_json(data: dict) -> "Cyclo":
        return Cyclo(int(data["conductor"]),
                     [Fraction(int(num), int(den)) for num, den in data["coeffs"]])

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                z = f"z{self.conductor}" + (f"^{j}" if j > 1 else "")
                terms.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        return f"Cyclo({self.conductor}, {' + '.join(terms) if terms else '0'})"


def zeta(n: int, k: int = 1) -> Cyclo:
    """The root of unity zeta_n^k as an element of Q(zeta_n)."""
    if n < 1:
        raise ValueError("conductor must be positive")
    out = [Fraction(0)] * ((k % n) + 1)
    out[k % n] = Fraction(1)
    return Cyclo(n, out)


def rational(q, n: int = 1) -> Cyclo:
    """The rational number q as an element of Q(zeta_n)."""
    return Cyclo(n, [Fraction(q)])


def cos_pi_over(m: int, conductor: int) -> Cyclo:
    """cos(pi/m) = (zeta_2m + zeta_2m^-1)/2 inside Q(zeta_conductor)."""
    if conductor % (2 * m):
        raise ValueError("conductor must be a multiple of 2m")
    z = zeta(2 * m, 1) + zeta(2 * m, 2 * m - 1)
    return z.lifted(conductor) * Fraction(1, 2)


def scalar_eq(a, b) -> bool:
    """Exact equality between any mix of int, Fraction and Cyclo."""
    if isinstance(a, Cyclo) or isinstance(b, Cyclo):
        return a == b if isinstance(a, Cyclo) else b == a
    return a == b


def scalar_is_zero(a) -> bool:
    if isinstance(a, Cyclo):
        return a.is_zero()
    return not a


def scalar_conj(a):
    if isinstance(a, Cyclo):
        return a.conjugate()
    return a


def scalar_json(a) -> dict:
    if not isinstance(a, Cyclo):
        a = rational(a)
    return a.to_json()
