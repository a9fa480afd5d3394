"""Exact arithmetic in the cyclotomic ring Z[zeta_n] (and Q(zeta_n)).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) with
reduction modulo the n-th cyclotomic polynomial after every product.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath


def _poly_divmod_monic(num, den):
    # integer polynomials, lowest degree first; den monic
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    q = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            q[k - dd] = c
            for m in range(dd + 1):
                num[k - dd + m] -= c * den[m]
    return q, num[:dd] or [0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_monic(poly, cyclotomic_poly(d))
            assert not any(rem)
    return tuple(poly)


def euler_phi(n):
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n):
    # reductions of z^k, 0 <= k < 2*phi(n) - 1, and of z^k for k < n
    phi = euler_phi(n)
    mod = cyclotomic_poly(n)
    top = max(2 * phi - 1, n)
    rows = []
    for k in range(top):
        if k < phi:
            row = [0] * phi
            row[k] = 1
        else:
            prev = rows[k - 1]
            row = [0] + prev[:-1]
            carry = prev[-1]
            if carry:
                for m in range(phi):
                    row[m] -= carry * mod[m]
        rows.append(row)
    return rows


class Cyc:
    """An element of Q(zeta_n), exact; integral when all coefficients are ints."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs):
        phi = euler_phi(n)
        coeffs = list(coeffs)
        if len(coeffs) > phi:
            coeffs = _reduce(n, coeffs)
        coeffs += [0] * (phi - len(coeffs))
        self.n = n
        self.coeffs = tuple(_normalize(c) for c in coeffs)

    @classmethod
    def zero(cls, n):
        return cls(n, [])

    @classmethod
    def one(cls, n):
        return cls(n, [1])

    @classmethod
    def from_int(cls, n, a):
        return cls(n, [a])

    @classmethod
    def zeta(cls, n, k=1):
        """zeta_n^k for any integer k."""
        k %= n
        return cls(n, _power_table(n)[k])

    # -- ring structure -------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.n != self.n:
                raise ValueError(f"conductor mismatch {self.n} != {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc(self.n, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyc(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyc(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.n, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        phi = len(self.coeffs)
        prod = [0] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return Cyc(self.n, _reduce(self.n, prod))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = Cyc.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.n, [Fraction(a) / other for a in self.coeffs])
        if isinstance(other, Cyc):
            return self * other.inverse()
        return NotImplemented

    def inverse(self):
        """1/x = (product of the other Galois conjugates) / N(x)."""
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        rest = Cyc.one(self.n)
        for a in range(2, self.n):
            if gcd(a, self.n) == 1:
                rest = rest * self.galois(a)
        norm = (self * rest).coeffs[0]
        return rest / norm

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyc(self.n, [other])
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"Cyc{self.n}({' + '.join(terms) or '0'})"

    # -- structure maps -------------------------------------------------
    def galois(self, a):
        """Image under zeta -> zeta^a, gcd(a, n) = 1."""
        if gcd(a, self.n) != 1:
            raise ValueError("a must be a unit mod n")
        table = _power_table(self.n)
        out = [0] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if c:
                row = table[(a * k) % self.n]
                for m, r in enumerate(row):
                    if r:
                        out[m] += c * r
        return Cyc(self.n, out)

    def conj(self):
        return self.galois(-1)

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coeffs)

    def lift(self, m):
        """Re-express in Z[zeta_m] for a multiple m of n."""
        if m % self.n:
            raise ValueError("target conductor must be a multiple")
        step = m // self.n
        out = Cyc.zero(m)
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + Cyc.zeta(m, k * step) * c
        return out

    def embed(self, k=1):
        """Complex value (mpmath, current precision) at zeta_n = exp(2 pi i k / n)."""
        z = mpmath.expjpi(mpmath.mpf(2 * k) / self.n)
        acc = mpmath.mpc(0)
        zk = mpmath.mpc(1)
        for c in self.coeffs:
            if c:
                acc += mpmath.mpf(c.numerator) / c.denominator * zk if isinstance(c, Fraction) else c * zk
            zk *= z
        return acc

    def mod(self, modulus):
        """Coefficient vector reduced into Z/modulus (denominators must be units)."""
        out = []
        for c in self.coeffs:
            if isinstance(c, Fraction):
                out.append(c.numerator * pow(c.denominator, -1, modulus) % modulus)
            else:
                out.append(c % modulus)
        return tuple(out)


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _reduce(n, coeffs):
    phi = euler_phi(n)
    table = _power_table(n)
    if len(coeffs) > len(table):
        # arbitrary length: fold z^n = 1 first
        folded = [0] * n
        for k, c in enumerate(coeffs):
            folded[k % n] += c
        coeffs = folded
    out = list(coeffs[:phi]) + [0] * max(0, phi - len(coeffs))
    for k in range(phi, len(coeffs)):
        c = coeffs[k]
        if c:
            for m, r in enumerate(table[k]):
                if r:
                    out[m] += c * r
    return out


def root_of_unity_order(x):
    """Multiplicative order of x if it is a root of unity in Q(zeta_n), else None."""
    one = Cyc.one(x.n)
    y = x
    for d in range(1, 2 * x.n + 1):
        if y == one:
            return d
        y = y * x
    return None
