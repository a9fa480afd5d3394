"""Imaginary quadratic orders, binary quadratic forms and their class groups."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt

import mpmath
from sympy import factorint

from ..exactmath.modular import kronecker


def is_fundamental(d):
    if d >= 0 or d % 4 not in (0, 1):
        return False
    if d % 4 == 1:
        return all(e == 1 for e in factorint(-d).values())
    m = d // 4
    if m % 4 not in (2, 3):
        return False
    return all(e == 1 for e in factorint(-m).values())


def fundamental_part(disc):
    """(disc_K, c) with disc = c^2 * disc_K and disc_K fundamental."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a negative discriminant")
    # search the largest c with disc / c^2 a discriminant that is fundamental
    best = None
    for cand in range(1, isqrt(-disc) + 1):
        if disc % (cand * cand) == 0 and is_fundamental(disc // (cand * cand)):
            best = cand
    if best is None:
        raise ValueError(f"no fundamental part for {disc}")
    return disc // (best * best), best


class QuadOrder:
    """The order O_c = Z + c O_K of conductor c in K = Q(sqrt(disc_K)).

    Elements are coordinate pairs (x, y) meaning x + y*omega with
    omega = (delta + sqrt(disc_K))/2, delta = disc_K mod 2, the standard
    generator of O_K; coordinates may be Fractions for field elements.
    """

    def __init__(self, disc_K, c=1):
        if not is_fundamental(disc_K):
            raise ValueError(f"{disc_K} is not a negative fundamental discriminant")
        if c < 1:
            raise ValueError("conductor must be positive")
        self.disc_K = disc_K
        self.c = c
        self.disc = c * c * disc_K
        self.delta = disc_K % 2
        self._wn = (self.delta - disc_K) // 4  # omega^2 = delta*omega - wn

    @classmethod
    def from_disc(cls, disc):
        dK, c = fundamental_part(disc)
        return cls(dK, c)

    def __repr__(self):
        return f"QuadOrder(disc_K={self.disc_K}, c={self.c})"

    def __eq__(self, other):
        return isinstance(other, QuadOrder) and (self.disc_K, self.c) == (other.disc_K, other.c)

    def __hash__(self):
        return hash((self.disc_K, self.c))

    @property
    def unit_count(self):
        """|O_c^x|."""
        if self.disc == -3:
            return 6
        if self.disc == -4:
            return 4
        return 2

    # -- field arithmetic in the basis (1, omega) ------------------------
    def mul(self, u, v):
        a, b = u
        c, d = v
        bd = b * d
        return (a * c - bd * self._wn, a * d + b * c + bd * self.delta)

    def conj(self, u):
        a, b = u
        return (a + b * self.delta, -b)

    def norm(self, u):
        a, b = u
        return a * a + self.delta * a * b + self._wn * b * b

    def trace(self, u):
        a, b = u
        return 2 * a + self.delta * b

    def inv(self, u):
        n = Fraction(self.norm(u))
        c = self.conj(u)
        return (c[0] / n, c[1] / n)

    def omega_complex(self):
        return (self.delta + mpmath.sqrt(mpmath.mpf(self.disc_K))) / 2

    def to_complex(self, u):
        a, b = u
        a = mpmath.mpf(a.numerator) / a.denominator if isinstance(a, Fraction) else mpmath.mpf(a)
        b = mpmath.mpf(b.numerator) / b.denominator if isinstance(b, Fraction) else mpmath.mpf(b)
        return a + b * self.omega_complex()

    @property
    def generator(self):
        """omega_c = (delta_c + sqrt(disc))/2 with O_c = Z[omega_c], as (x, y) coordinates."""
        # sqrt(disc) = c*(2 omega - delta_K)
        dc = self.disc % 2
        return (Fraction(dc - self.c * self.delta, 2), self.c)

    def generator_trace_norm(self):
        dc = self.disc % 2
        return dc, (dc * dc - self.disc) // 4

    def contains(self, u):
        a, b = u
        return Fraction(a).denominator == 1 and Fraction(b).denominator == 1 and Fraction(b) % self.c == 0

    def form_ideal_basis(self, f):
        """Z-basis (alpha, beta) of the O_c-ideal [a, (-b + sqrt(disc))/2] of a form f = (a, b, c)."""
        a, b, _ = f
        # (-b + c sqrt(disc_K))/2 = (-b - c*delta)/2 + c*omega
        return (a, 0), (Fraction(-b - self.c * self.delta, 2), self.c)

    def lattice_to_form(self, basis):
        """Reduced form of the class of the lattice spanned by basis (2 elements of K)."""
        alpha, beta = basis
        za = self.to_complex(alpha)
        zb = self.to_complex(beta)
        if mpmath.im(zb / za) < 0:
            beta = (-beta[0], -beta[1])
        return _lattice_form(self, alpha, beta)


def _lattice_form(order, alpha, beta):
    # f(x, y) = N(x alpha - y beta) / N(L), N(L) = |det| / covolume of O_K-basis ... computed exactly
    na = Fraction(order.norm(alpha))
    nb = Fraction(order.norm(beta))
    tr = Fraction(order.trace(order.mul(alpha, order.conj(beta))))
    # N(x a - y b) = na x^2 - tr x y + nb y^2
    a, b, c = na, -tr, nb
    den = 1
    for v in (a, b, c):
        den = den * v.denominator // gcd(den, v.denominator)
    a, b, c = int(a * den), int(b * den), int(c * den)
    g = gcd(gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    f = (a, b, c)
    if b * b - 4 * a * c != order.disc:
        raise ValueError(f"lattice is not a proper O_c-ideal (form {f})")
    return reduce_form(f)


def discriminant(f):
    a, b, c = f
    return b * b - 4 * a * c


def is_reduced(f):
    a, b, c = f
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def reduce_form(f):
    """Unique reduced form properly equivalent to a positive definite form."""
    a, b, c = f
    if a <= 0 or b * b - 4 * a * c >= 0:
        raise ValueError(f"{f} is not positive definite")
    while True:
        # normalize: -a < b <= a
        if not (-a < b <= a):
            r = (a - b) // (2 * a)
            c = a * r * r + b * r + c
            b = b + 2 * r * a
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return (a, b, c)


def apply_matrix(f, g):
    """f o g for g = ((p, q), (r, s)) acting on (x, y)."""
    a, b, c = f
    (p, q), (r, s) = g
    A = a * p * p + b * p * r + c * r * r
    B = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s
    C = a * q * q + b * q * s + c * s * s
    return (A, B, C)


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def compose(f1, f2):
    """Gauss (Dirichlet) composition of primitive forms of the same discriminant, reduced."""
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    D = discriminant(f1)
    if discriminant(f2) != D:
        raise ValueError("discriminants differ")
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, v = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    out = (a3, b3, c3)
    assert discriminant(out) == D
    return reduce_form(out)


def inverse_form(f):
    a, b, c = f
    return reduce_form((a, -b, c))


def reduced_forms(disc):
    """All primitive reduced forms of a negative discriminant, sorted by (a, b, c)."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return sorted(out)


def class_number_formula(disc_K, c):
    """h(O_c) from h(O_K) (reduced-form count) and the conductor formula."""
    hK = len(reduced_forms(disc_K))
    wK = {-3: 6, -4: 4}.get(disc_K, 2)
    wc = 2 if c > 1 else wK
    num = hK * c
    val = Fraction(num)
    for q in factorint(c):
        val *= Fraction(q - kronecker(disc_K, q), q)
    val /= Fraction(wK, wc)
    assert val.denominator == 1
    return int(val)


class FormClassGroup:
    """Pic(O_c) realized by reduced forms with an explicit composition table."""

    def __init__(self, order):
        if order.disc >= 0:
            raise ValueError("discriminant must be negative")
        self.order = order
        self.reps = reduced_forms(order.disc)
        self.h = len(self.reps)
        self.index = {f: i for i, f in enumerate(self.reps)}
        D = order.disc
        self.identity = self.index[reduce_form((1, D % 2, (D % 2 - D) // 4))]
        self.comp = [[self.index[compose(f, g)] for g in self.reps] for f in self.reps]
        self.inverse = [self.index[inverse_form(f)] for f in self.reps]

    def __repr__(self):
        return f"FormClassGroup(disc={self.order.disc}, h={self.h})"

    def __len__(self):
        return self.h

    def class_of(self, f):
        return self.index[reduce_form(f)]

    def mul(self, i, j):
        return self.comp[i][j]

    def power(self, i, e):
        e %= self.exponent
        r = self.identity
        for _ in range(e):
            r = self.comp[r][i]
        return r

    def element_order(self, i):
        k, r = 1, i
        while r != self.identity:
            r = self.comp[r][i]
            k += 1
        return k

    @cached_property
    def exponent(self):
        e = 1
        for i in range(self.h):
            o = self.element_order(i)
            e = e * o // gcd(e, o)
        return e

    @cached_property
    def generators(self):
        """A greedy generating set with exponent coordinates of every element."""
        gens = []
        coords = {self.identity: ()}
        while len(coords) < self.h:
            g = max((i for i in range(self.h) if i not in coords),
                    key=lambda i: (self.element_order(i), -i))
            gens.append(g)
            new = {}
            og = self.element_order(g)
            for x, vec in coords.items():
                y = x
                for k in range(og):
                    new.setdefault(y, vec + (k,))
                    y = self.comp[y][g]
            coords = {x: v + (0,) * (len(gens) - len(v)) for x, v in new.items()}
        return gens, coords

    def ideal_basis(self, i):
        return self.order.form_ideal_basis(self.reps[i])

    def ideal_class(self, basis):
        """Class index of an invertible O_c-lattice given by a Z-basis in K."""
        return self.index[self.order.lattice_to_form(basis)]


@dataclass
class _Cache:
    groups: dict = field(default_factory=dict)


_cache = _Cache()


def class_group(order):
    """Pic(O_c) for an imaginary quadratic order (cached)."""
    if order.disc >= 0:
        raise ValueError("discriminant must be negative")
    key = (order.disc_K, order.c)
    if key not in _cache.groups:
        _cache.groups[key] = FormClassGroup(order)
    return _cache.groups[key]


def form_with_a_coprime_to(f, m):
    """An equivalent (not reduced) form (a, b, c) with gcd(a, m) = 1."""
    a, b, c = f
    if gcd(a, m) == 1:
        return f
    for bound in range(1, 200):
        for x in range(-bound, bound + 1):
            for y in (bound, -bound) if abs(x) < bound else range(-bound, bound + 1):
                if gcd(x, y) != 1:
                    continue
                val = a * x * x + b * x * y + c * y * y
                if gcd(val, m) == 1:
                    _, s, r = _xgcd(x, y)
                    # matrix ((x, -r), (y, s)) with x*s + r*y = 1
                    g = ((x, -r), (y, s))
                    out = apply_matrix(f, g)
                    assert out[0] == val
                    return out
    raise ValueError("no suitable representation found")


def representation_counts(f, bound):
    """r_f(n) = #{(x, y) in Z^2 : f(x, y) = n} for 0 <= n <= bound."""
    a, b, c = f
    D = b * b - 4 * a * c
    counts = [0] * (bound + 1)
    # 4a f = (2ax + by)^2 - D y^2, so |y| <= sqrt(4 a bound / -D)
    ymax = isqrt(4 * a * bound // (-D)) + 1
    for y in range(-ymax, ymax + 1):
        # a x^2 + b y x + c y^2 <= bound
        disc = b * b * y * y - 4 * a * (c * y * y - bound)
        if disc < 0:
            continue
        r = isqrt(disc)
        lo = (-b * y - r) // (2 * a) - 1
        hi = (-b * y + r) // (2 * a) + 1
        for x in range(lo, hi + 1):
            v = a * x * x + b * x * y + c * y * y
            if 0 <= v <= bound:
                counts[v] += 1
    return counts
