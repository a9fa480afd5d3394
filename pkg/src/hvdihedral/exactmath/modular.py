"""Residue rings Z/m, the finite fields F_p and F_{p^2}, and discrete logarithms."""
from math import gcd, isqrt

from sympy import factorint, isprime


class ConfigurationError(ValueError):
    """Arithmetic preconditions on user-chosen parameters are violated."""


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker(d, n):
    """Kronecker symbol (d | n) for n > 0."""
    if n <= 0:
        raise ValueError("n must be positive")
    result = 1
    for q, e in factorint(n).items():
        if q == 2:
            if d % 2 == 0:
                return 0
            s = 1 if d % 8 in (1, 7) else -1
        else:
            s = legendre(d, q)
        result *= s ** e
    return result


def primes_up_to(n):
    return [q for q in range(2, n + 1) if isprime(q)]


class ResidueRing:
    """Z/modulus, elements handled as plain ints in [0, modulus)."""

    def __init__(self, modulus):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.modulus = modulus

    def __call__(self, a):
        return a % self.modulus

    def __eq__(self, other):
        return isinstance(other, ResidueRing) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("Z/", self.modulus))

    def __repr__(self):
        return f"Z/{self.modulus}Z"

    def is_unit(self, a):
        return gcd(a, self.modulus) == 1

    def units(self):
        return [a for a in range(self.modulus) if gcd(a, self.modulus) == 1]

    def inv(self, a):
        return pow(a, -1, self.modulus)

    def valuation(self, a, ell):
        """ell-adic valuation of a in Z/ell^t (t when a == 0)."""
        a %= self.modulus
        if a == 0:
            v, m = 0, self.modulus
            while m % ell == 0:
                m //= ell
                v += 1
            return v
        v = 0
        while a % ell == 0:
            a //= ell
            v += 1
        return v


class FiniteField:
    """F_p (degree 1) or F_p[theta]/(theta^2 - trace*theta + norm) (degree 2).

    Degree-2 elements are pairs (a, b) standing for a + b*theta.
    """

    def __init__(self, p, degree=1, trace=None, norm=None):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if degree not in (1, 2):
            raise ValueError("only degrees 1 and 2 are supported")
        self.p = p
        self.degree = degree
        if degree == 2:
            if trace is None:
                trace, norm = _default_quadratic(p)
            disc = (trace * trace - 4 * norm) % p
            if p == 2:
                if (norm % 2, trace % 2) != (1, 1):
                    raise ValueError("x^2 + x + 1 is the only irreducible quadratic over F_2")
            elif legendre(disc, p) != -1:
                raise ValueError("defining quadratic is not irreducible")
            self.trace = trace % p
            self.norm = norm % p

    @property
    def order(self):
        return self.p ** self.degree

    def __repr__(self):
        if self.degree == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^2; t^2 - {self.trace}t + {self.norm})"

    def __call__(self, a, b=0):
        if self.degree == 1:
            return a % self.p
        return (a % self.p, b % self.p)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def add(self, x, y):
        if self.degree == 1:
            return (x + y) % self.p
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def sub(self, x, y):
        if self.degree == 1:
            return (x - y) % self.p
        return ((x[0] - y[0]) % self.p, (x[1] - y[1]) % self.p)

    def neg(self, x):
        return self.sub(self.zero(), x)

    def mul(self, x, y):
        p = self.p
        if self.degree == 1:
            return x * y % p
        a, b = x
        c, d = y
        # theta^2 = trace*theta - norm
        bd = b * d
        return ((a * c - bd * self.norm) % p, (a * d + b * c + bd * self.trace) % p)

    def pow(self, x, e):
        if e < 0:
            x, e = self.inv(x), -e
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def conj(self, x):
        """Frobenius x -> x^p."""
        if self.degree == 1:
            return x
        a, b = x
        return ((a + b * self.trace) % self.p, (-b) % self.p)

    def norm_down(self, x):
        """Norm to the prime field."""
        if self.degree == 1:
            return x
        n = self.mul(x, self.conj(x))
        assert n[1] == 0
        return n[0]

    def inv(self, x):
        if self.is_zero(x):
            raise ZeroDivisionError("inverse of zero")
        if self.degree == 1:
            return pow(x, -1, self.p)
        ninv = pow(self.norm_down(x), -1, self.p)
        c = self.conj(x)
        return (c[0] * ninv % self.p, c[1] * ninv % self.p)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def is_zero(self, x):
        return x == 0 if self.degree == 1 else x == (0, 0)

    def elements(self):
        if self.degree == 1:
            return list(range(self.p))
        return [(a, b) for b in range(self.p) for a in range(self.p)]

    def sqrt(self, x):
        """Some square root of x, or None."""
        for y in self.elements():
            if self.mul(y, y) == x:
                return y
        return None

    def poly_eval(self, coeffs, x):
        """Horner evaluation; coeffs low degree first, already field elements."""
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def poly_roots(self, coeffs):
        """All roots (with multiplicity) of a polynomial by exhaustive search and deflation."""
        coeffs = list(coeffs)
        roots = []
        for r in self.elements():
            while len(coeffs) > 1 and self.is_zero(self.poly_eval(coeffs, r)):
                roots.append(r)
                coeffs = self._deflate(coeffs, r)
        return roots

    def _deflate(self, coeffs, r):
        # synthetic division by (X - r)
        n = len(coeffs) - 1
        out = [None] * n
        acc = coeffs[n]
        for k in range(n - 1, -1, -1):
            out[k] = acc
            acc = self.add(coeffs[k], self.mul(acc, r))
        return out


def _default_quadratic(p):
    if p == 2:
        return 1, 1
    for n in range(1, p):
        if legendre(-4 * n, p) == -1:
            return 0, n
    raise AssertionError("unreachable")


def multiplicative_order(g, p):
    n = p - 1
    for q in factorint(n):
        while n % q == 0 and pow(g, n // q, p) == 1:
            n //= q
    return n


def smallest_primitive_root(p):
    if p == 2:
        return 1
    for g in range(2, p):
        if multiplicative_order(g, p) == p - 1:
            return g
    raise AssertionError("unreachable")


def bsgs(g, x, p, order=None):
    """k with g^k = x mod p, 0 <= k < order, by baby-step giant-step."""
    n = order or p - 1
    m = isqrt(n - 1) + 1
    table = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = e * g % p
    giant = pow(g, -m, p)
    y = x % p
    for i in range(m + 1):
        if y in table:
            return (i * m + table[y]) % n
        y = y * giant % p
    raise ValueError(f"{x} is not in the subgroup generated by {g} mod {p}")


def discrete_log(p, ell, t, x):
    """log_ell: F_p^x -> Z/ell^t, normalized so the smallest primitive root maps to 1."""
    if not (isprime(p) and isprime(ell)) or t < 1:
        raise ConfigurationError("p and ell must be prime and t >= 1")
    mod = ell ** t
    if (p - 1) % mod:
        raise ConfigurationError(f"{ell}^{t} does not divide {p} - 1")
    if x % p == 0:
        raise ValueError("log of zero")
    return bsgs(smallest_primitive_root(p), x, p) % mod


class DiscreteLog:
    """Cached table version of discrete_log for repeated use with fixed (p, ell, t)."""

    def __init__(self, p, ell, t):
        if not (isprime(p) and isprime(ell)) or t < 1:
            raise ConfigurationError("p and ell must be prime and t >= 1")
        self.p, self.ell, self.t = p, ell, t
        self.modulus = ell ** t
        if (p - 1) % self.modulus:
            raise ConfigurationError(f"{ell}^{t} does not divide {p} - 1")
        self.generator = smallest_primitive_root(p)
        self._table = {}
        e = 1
        for k in range(p - 1):
            self._table[e] = k
            e = e * self.generator % p

    def __call__(self, x):
        x %= self.p
        if x == 0:
            raise ValueError("log of zero")
        return self._table[x] % self.modulus
