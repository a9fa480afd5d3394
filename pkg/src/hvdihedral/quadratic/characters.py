"""Ring class characters of Pic(O_c) and their weight-one theta series."""
from itertools import product
from math import gcd

from sympy import factorint, divisors

from ..exactmath.cyclotomic import Cyc
from .forms import (QuadOrder, class_group, form_with_a_coprime_to, representation_counts)


class TrivialCharacterError(ValueError):
    pass


class RingClassCharacter:
    """A character Pic(O_c) -> mu_n stored as exponents: value(i) = zeta_n^exps[i].

    ``n`` is the exact order of the character.
    """

    def __init__(self, group, exps, n):
        self.group = group
        self.n = n
        self.exps = tuple(e % n for e in exps)
        g = 0
        for e in self.exps:
            g = gcd(g, e)
        if n > 1 and gcd(g, n) != 1:
            raise ValueError("stated order is not exact")
        for i in range(group.h):
            for j in range(group.h):
                if (self.exps[i] + self.exps[j] - self.exps[group.comp[i][j]]) % n:
                    raise ValueError("not a homomorphism")

    @classmethod
    def trivial(cls, group):
        return cls(group, [0] * group.h, 1)

    def __repr__(self):
        return f"RingClassCharacter(disc={self.group.order.disc}, n={self.n}, exps={self.exps})"

    def __eq__(self, other):
        return (isinstance(other, RingClassCharacter) and other.group is self.group
                and self.n == other.n and self.exps == other.exps)

    def __hash__(self):
        return hash((self.group.order.disc, self.n, self.exps))

    @property
    def is_trivial(self):
        return self.n == 1

    def value(self, i, conductor=None):
        """chi(class i) as an element of Z[zeta_m], m = conductor or n."""
        m = conductor or self.n
        if m % self.n:
            raise ValueError("ring conductor must be a multiple of the character order")
        return Cyc.zeta(m, self.exps[i] * (m // self.n))

    def of_form(self, f):
        return self.value(self.group.class_of(f))

    def power(self, k):
        exps = [e * k % self.n for e in self.exps]
        m = _exact_order(exps, self.n)
        return RingClassCharacter(self.group, [e // (self.n // m) for e in exps], m)

    def inverse(self):
        return self.power(-1)

    def square(self):
        return self.power(2)

    def label(self):
        return f"D{self.group.order.disc}-n{self.n}-" + "".join(str(e) for e in self.exps)


def _exact_order(exps, n):
    g = n
    for e in exps:
        g = gcd(g, e % n)
    return n // g


def all_characters(group):
    """Every character of the finite abelian group Pic(O_c), with exact orders."""
    gens, coords = group.generators
    e = group.exponent
    out = []
    orders = [group.element_order(g) for g in gens]
    for vals in product(*[range(0, e, e // o) for o in orders]):
        exps = [0] * group.h
        for x, vec in coords.items():
            exps[x] = sum(k * v for k, v in zip(vec, vals)) % e
        n = _exact_order(exps, e)
        exps = [x // (e // n) for x in exps]
        try:
            out.append(RingClassCharacter(group, exps, n))
        except ValueError:
            continue
    return out


def characters_of_order(group, n):
    """All characters of exact order n (empty when n does not divide the exponent)."""
    if group.exponent % n:
        return []
    return sorted((c for c in all_characters(group) if c.n == n), key=lambda c: c.exps)


def _pushdown_map(order, coarse):
    """Class map Pic(O_c) -> Pic(O_c') for c' | c through extension of ideals prime to c."""
    G = class_group(order)
    H = class_group(coarse)
    out = []
    for f in G.reps:
        g = form_with_a_coprime_to(f, order.c * order.disc_K)
        alpha, beta = order.form_ideal_basis(g)
        # extend: lattice spanned by {alpha, beta} * {1, c' omega}
        gen = (0, coarse.c)
        elems = [alpha, beta, order.mul(alpha, gen), order.mul(beta, gen)]
        basis = _hnf2(elems)
        out.append(H.ideal_class(basis))
    return out


def _hnf2(elems):
    """Z-basis of the lattice in K spanned by elems (coordinates in (1, omega))."""
    from fractions import Fraction

    den = 1
    for x, y in elems:
        for v in (Fraction(x), Fraction(y)):
            den = den * v.denominator // gcd(den, v.denominator)
    rows = [[int(Fraction(x) * den), int(Fraction(y) * den)] for x, y in elems]
    # column 1 (omega coefficient) first
    g, a_row = 0, None
    # integer row reduction for 2 columns
    rows = [r for r in rows if r != [0, 0]]
    while sum(1 for r in rows if r[1] != 0) > 1:
        rows.sort(key=lambda r: (r[1] == 0, abs(r[1])))
        piv = rows[0]
        for r in rows[1:]:
            if r[1]:
                q = r[1] // piv[1]
                r[0] -= q * piv[0]
                r[1] -= q * piv[1]
        rows = [r for r in rows if r != [0, 0]]
    top = [r for r in rows if r[1] != 0][0]
    g = 0
    for r in rows:
        if r[1] == 0:
            g = gcd(g, r[0])
    return ((Fraction(g, den), 0), (Fraction(top[0], den), Fraction(top[1], den)))


def conductor(xi):
    """Smallest c' | c such that xi factors through Pic(O_c) -> Pic(O_c')."""
    order = xi.group.order
    for cp in sorted(divisors(order.c)):
        if cp == order.c:
            return cp
        coarse = QuadOrder(order.disc_K, cp)
        m = _pushdown_map(order, coarse)
        fibers = {}
        ok = True
        for i, j in enumerate(m):
            if fibers.setdefault(j, xi.exps[i]) != xi.exps[i]:
                ok = False
                break
        if ok:
            return cp
    return order.c


def primitive_character(xi):
    """The character at its conductor through which xi factors."""
    order = xi.group.order
    cp = conductor(xi)
    if cp == order.c:
        return xi
    coarse = QuadOrder(order.disc_K, cp)
    H = class_group(coarse)
    m = _pushdown_map(order, coarse)
    exps = [0] * H.h
    for i, j in enumerate(m):
        exps[j] = xi.exps[i]
    return RingClassCharacter(H, exps, xi.n)


def m_of_xi(xi):
    """v when the image of xi has prime-power order v^k, else 1; trivial xi rejected."""
    n = xi.n if isinstance(xi, RingClassCharacter) else int(xi)
    if n == 1:
        raise TrivialCharacterError("m(xi) is not defined for the trivial character")
    f = factorint(n)
    if len(f) == 1:
        return next(iter(f))
    return 1


def theta_newform(chi, N, ring_conductor=None):
    """Coefficients a(0..N) of the weight-one theta series attached to chi.

    a(n) = sum over invertible O_c-ideals of norm n, prime to the conductor,
    of chi(class), c = conductor(chi); returned as Cyc elements.
    """
    chi = primitive_character(chi)
    G = chi.group
    order = G.order
    m = ring_conductor or chi.n
    w = order.unit_count
    coeffs = [Cyc.zero(m) for _ in range(N + 1)]
    for i, f in enumerate(G.reps):
        r = representation_counts(f, N)
        val = chi.value(i, m)
        for k in range(1, N + 1):
            if r[k]:
                coeffs[k] = coeffs[k] + val * r[k]
    for k in range(1, N + 1):
        if gcd(k, order.c) != 1:
            coeffs[k] = Cyc.zero(m)
        else:
            coeffs[k] = coeffs[k] / w
            assert coeffs[k].is_integral()
    return coeffs
