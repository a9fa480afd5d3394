"""Two-variable optimal forms: the direct character sum and reconstruction from theta lifts.

The optimal form lives on X(M) x X(M), M = |disc|, so its exponents lie in
(1/M)Z. A QSeries2 stores a[(i, j)] = coefficient of q1^(i/scale) q2^(j/scale).
The direct sum also depends on a pair of adelic units u = (u1, u2) modulo M;
restricting to (z, pz) uses u = (1, p).

The coefficient a_{chi, alpha}(r, u) factors as a product of local integrals.
Away from the discriminant it is the usual ideal count; at a ramified odd
prime q the coset O_q + alpha/delta contributes
    chi(Q)^(-1) / 2 * [alpha^2 = N0 mod q]   if q does not divide N0,
    chi(Q)^(j-1) * [alpha = 0]             if q^j || N0, j >= 1, N0/|D|^j a square mod q,
where N0 = |D| r u and Q is the prime above q.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from sympy import factorint

from ..exactmath.cyclotomic import Cyc
from ..exactmath.modular import ConfigurationError, legendre
from .characters import TrivialCharacterError, theta_newform


@dataclass
class QSeries2:
    """Sparse two-variable q-series with exact Cyc coefficients."""

    n: int
    scale: int
    bound_m: int
    bound_n: int
    a: dict = field(default_factory=dict)
    u: tuple = (1, 1)
    label: str = ""

    def __getitem__(self, ij):
        return self.a.get(ij, Cyc.zero(self.n))

    def __setitem__(self, ij, v):
        if v:
            self.a[ij] = v
        else:
            self.a.pop(ij, None)

    def __eq__(self, other):
        return (isinstance(other, QSeries2) and self.scale == other.scale
                and self.bound_m == other.bound_m and self.bound_n == other.bound_n
                and self.a == other.a)

    def restrict(self, p, K):
        """Coefficients of q^k, k <= K, of F(z, pz): sum over i + p j = scale * k."""
        out = [Cyc.zero(self.n) for _ in range(K + 1)]
        for (i, j), v in self.a.items():
            tot = i + p * j
            if tot % self.scale == 0 and tot // self.scale <= K:
                out[tot // self.scale] = out[tot // self.scale] + v
        return out


def _check_supported(chi):
    order = chi.group.order
    if order.c != 1 or order.disc_K % 4 == 0:
        raise ConfigurationError(
            "the direct character sum is implemented for odd fundamental discriminants "
            "with c = 1; use reconstruct_opt for this order")
    xi = chi.square()
    if xi.is_trivial:
        raise TrivialCharacterError("xi = chi^2 is trivial")
    # The local factors below reproduce the theta lifts when one prime ramifies,
    # or when xi is a genus character. For two or more ramified primes and xi of
    # order > 2 (e.g. -87, -95, -111, -119) they do not, so refuse rather than
    # return a wrong series.
    if len(factorint(-order.disc)) > 1 and xi.n > 2:
        raise ConfigurationError(
            "the direct character sum is validated only for prime |disc| or genus xi; "
            "use reconstruct_opt for this character")
    return order


def _normalizer(order):
    """|O^x| times the number of genus characters, 2^(omega(D) - 1)."""
    return order.unit_count * 2 ** (len(factorint(-order.disc)) - 1)


def _ramified_data(chi, m):
    """{q: chi(Q)} for primes q | disc, as Cyc(m)."""
    G = chi.group
    D = G.order.disc
    out = {}
    for q in factorint(-D):
        f = (q, q, (q * q - D) // (4 * q))
        out[q] = chi.value(G.class_of(f), m)
    return out


def _unit_mod(x, q):
    """x (a Fraction with q-valuation 0) reduced mod q."""
    return x.numerator * pow(x.denominator, -1, q) % q


def _vq(x, q):
    v = 0
    num, den = x.numerator, x.denominator
    while num % q == 0:
        num //= q
        v += 1
    while den % q == 0:
        den //= q
        v -= 1
    return v


class _Local:
    """Cached per-prime tables W_q(class of N0, alpha) for one character."""

    def __init__(self, q, D_abs, chiq, m):
        self.q = q
        self.D_abs = D_abs
        self.chiq = chiq
        self.chiq_inv = chiq.conj()
        self.m = m

    def weight(self, N0):
        """alpha -> weight (Cyc) for the coset sum at q; empty dict when zero."""
        q = self.q
        j = _vq(N0, q)
        if j < 0:
            return {}
        unit = _unit_mod(N0 / Fraction(self.D_abs) ** j, q)
        if j == 0:
            out = {}
            half = self.chiq_inv / 2
            for a in range(1, q):
                if a * a % q == unit:
                    out[a] = half
            return out
        if legendre(unit, q) != 1:
            return {}
        return {0: self.chiq ** (j - 1)}


def _prime_to(n, D):
    g = gcd(n, D)
    while g > 1:
        n //= g
        g = gcd(n, D)
    return n


def coset_coefficients(chi, bound_index, u, m=None):
    """For i = 0..bound_index: (prime-to-D ideal sum, {q: weights}) describing a_{chi, alpha}(i/M, u)."""
    order = chi.group.order
    M = -order.disc
    m = m or chi.n
    chi_data = _ramified_data(chi, m)
    locs = {q: _Local(q, M, v, m) for q, v in chi_data.items()}
    A = theta_newform(chi, bound_index, m)
    out = [None] * (bound_index + 1)
    for i in range(1, bound_index + 1):
        # away from the discriminant only the prime-to-D part of i matters
        glob = A[_prime_to(i, M)]
        if not glob:
            continue
        N0 = i * u
        per = {}
        for q, L in locs.items():
            w = L.weight(N0)
            if not w:
                per = None
                break
            per[q] = w
        if per is not None:
            out[i] = (glob, per)
    return out


def _crt_pairs(per1, per2, sign):
    """Product over q of sum_alpha w1(alpha) w2(sign * alpha)."""
    total = None
    for q, w1 in per1.items():
        w2 = per2[q]
        acc = 0
        for a, x in w1.items():
            y = w2.get((sign * a) % q)
            if y is not None:
                acc = x * y + acc
        if not acc:
            return 0
        total = acc if total is None else total * acc
    return 1 if total is None else total


def optimal_form_coeffs(chi, bound, u=(1, 1), bound_n=None):
    """The optimal form of chi as a QSeries2 in units of 1/|disc|, exponents up to bound (in each variable).

    The second factor carries chi^-1, the coset -alpha and the sign twist, so
    its local data are taken at -u2. Coefficients are scaled by |O^x| |Pic[2]| so that
    restriction to (z, pz) with u = (1, p) is exactly the theta lift.
    """
    order = _check_supported(chi)
    M = -order.disc
    bound_n = bound if bound_n is None else bound_n
    n = chi.n
    u1, u2 = u
    if gcd(u1, M) != 1 or gcd(u2, M) != 1:
        raise ValueError("u must be a unit modulo the discriminant")
    first = coset_coefficients(chi, M * bound, Fraction(u1), n)
    second = coset_coefficients(chi.inverse(), M * bound_n, Fraction(-u2), n)
    wcount = _normalizer(order)
    out = QSeries2(n=n, scale=M, bound_m=bound, bound_n=bound_n, u=(u1 % M, u2 % M), label=chi.label())
    for i, e1 in enumerate(first):
        if e1 is None:
            continue
        g1, per1 = e1
        for j, e2 in enumerate(second):
            if e2 is None:
                continue
            g2, per2 = e2
            loc = _crt_pairs(per1, per2, -1)
            if loc:
                out[(i, j)] = g1 * g2 * loc * wcount
    return out


def restricted_optimal_series(chi, p, K):
    """Coefficients k <= K of f^opt(z, pz) (u = (1, p)) without building the full array."""
    order = _check_supported(chi)
    M = -order.disc
    n = chi.n
    first = coset_coefficients(chi, M * K, Fraction(1), n)
    second = coset_coefficients(chi.inverse(), M * K // p, Fraction(-p), n)
    wcount = _normalizer(order)
    out = [Cyc.zero(n) for _ in range(K + 1)]
    for j, e2 in enumerate(second):
        if e2 is None:
            continue
        g2, per2 = e2
        for k in range((p * j + M - 1) // M, K + 1):
            i = M * k - p * j
            if i < 1 or i >= len(first) or first[i] is None:
                continue
            g1, per1 = first[i]
            loc = _crt_pairs(per1, per2, -1)
            if loc:
                out[k] = out[k] + g1 * g2 * loc * wcount
    return out


# -- reconstruction from theta lifts -------------------------------------

class ReconstructionError(ValueError):
    pass


class ConsistencyError(ValueError):
    def __init__(self, p, k, lhs, rhs):
        super().__init__(f"inconsistent data at p={p}, k={k}: {lhs} != {rhs}")
        self.p, self.k = p, k


def reconstruct_opt(thetas, bound_m, bound_n, n=1, check=True):
    """The unique integer-indexed array with sum_{m + p n = k} a[m, n] = c_{p, k}.

    thetas maps primes p >= 5 to coefficient lists c_{p, 0..}. Rows are
    recovered in order: a[m, 0] = c_{p, m} for a prime p > m, then row r from
    k = m + p r with a prime p > m. The window needs a[m, r'] for m up to
    bound_m + p (r - r'), so rows are recovered on the widening window they
    require. Raises ReconstructionError("need prime > m0") when no supplied
    prime is large enough, and ConsistencyError when a supplied c_{p, k}
    disagrees with the recovered array.
    """
    primes = sorted(p for p in thetas if p >= 5)
    zero = Cyc.zero(n)

    def coef(p, k):
        c = thetas[p]
        if k >= len(c):
            raise ReconstructionError(f"need c_{{{p},{k}}}: theta series for p={p} is too short")
        v = c[k]
        return v if isinstance(v, Cyc) else Cyc(n, [v])

    def prime_above(m0):
        for p in primes:
            if p > m0:
                return p
        raise ReconstructionError(f"need prime > m0 = {m0}; supplied primes {primes}")

    # width[r]: how far in m row r must be known
    width = [bound_m] * (bound_n + 1)
    for r in range(bound_n, 0, -1):
        p = prime_above(width[r])
        for rr in range(r):
            width[rr] = max(width[rr], width[r] + p * (r - rr))
    a = {}
    for m in range(width[0] + 1):
        a[(m, 0)] = coef(prime_above(m), m)
    for r in range(1, bound_n + 1):
        for m in range(width[r] + 1):
            p = prime_above(m)
            k = m + p * r
            acc = coef(p, k)
            for rr in range(r):
                acc = acc - a.get((k - p * rr, rr), zero)
            a[(m, r)] = acc
    out = QSeries2(n=n, scale=1, bound_m=bound_m, bound_n=bound_n)
    for (m, r), v in a.items():
        if m <= bound_m and r <= bound_n:
            out[(m, r)] = v
    if check:
        for p in primes:
            for k in range(len(thetas[p])):
                if k > bound_m:
                    break
                lhs = zero
                for r in range(0, k // p + 1):
                    if r > bound_n:
                        break
                    lhs = lhs + a.get((k - p * r, r), zero)
                if k // p <= bound_n and lhs != coef(p, k):
                    raise ConsistencyError(p, k, lhs, coef(p, k))
    return out
