"""Positive-definite lattices of small rank and short-vector enumeration.

Enumeration is Fincke-Pohst style: the pruning bounds come from a floating
Cholesky factor (with slack), and every candidate is accepted only after an
exact integer evaluation of the quadratic form.
"""
from fractions import Fraction
from math import floor, ceil, sqrt

_SLACK = 1e-9


class NotPositiveDefinite(ValueError):
    pass


def _as_fraction_matrix(m):
    return [[Fraction(x) for x in row] for row in m]


def _ldl(gram):
    """Exact LDL^T: returns (d, mu) with Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2."""
    n = len(gram)
    g = _as_fraction_matrix(gram)
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    # eliminate from the last coordinate backwards so that the outermost loop is x_{n-1}
    q = [row[:] for row in g]
    for i in range(n):
        if q[i][i] <= 0:
            raise NotPositiveDefinite(f"leading pivot {i} is {q[i][i]}")
        d[i] = q[i][i]
        for j in range(i + 1, n):
            mu[i][j] = q[i][j] / q[i][i]
        for j in range(i + 1, n):
            for k in range(j, n):
                q[j][k] -= mu[i][j] * q[i][k]
                q[k][j] = q[j][k]
    return d, mu


class PosDefLattice:
    """A lattice given by an exact rational Gram matrix (and optionally an ambient basis).

    ``gram[i][j]`` is the bilinear form B(b_i, b_j) with Q(v) = B(v, v).
    """

    def __init__(self, gram, basis=None):
        self.gram = _as_fraction_matrix(gram)
        self.rank = len(self.gram)
        if any(len(row) != self.rank for row in self.gram):
            raise ValueError("gram must be square")
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram must be symmetric")
        self.basis = basis
        self.d, self.mu = _ldl(self.gram)
        den = 1
        for row in self.gram:
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
        self._den = den
        self._igram = [[int(x * den) for x in row] for row in self.gram]

    def norm(self, v):
        """Exact Q(v)."""
        return Fraction(self.norm_scaled(v), self._den)

    def norm_scaled(self, v):
        g = self._igram
        n = self.rank
        s = 0
        for i in range(n):
            vi = v[i]
            if vi:
                row = g[i]
                t = 0
                for j in range(n):
                    if v[j]:
                        t += row[j] * v[j]
                s += vi * t
        return s

    def vectors_up_to(self, bound):
        """Yield (v, Q(v)) for all v with Q(v) <= bound, in lexicographic order of v."""
        bound = Fraction(bound)
        if bound < 0:
            return
        n = self.rank
        d = [float(x) for x in self.d]
        mu = [[float(x) for x in row] for row in self.mu]
        fbound = float(bound) * (1 + _SLACK) + _SLACK
        scaled_bound = bound * self._den
        out = []
        x = [0] * n

        def rec(i, remaining):
            # coordinates i+1..n-1 fixed; choose x_i
            c = 0.0
            for j in range(i + 1, n):
                c += mu[i][j] * x[j]
            r = remaining / d[i]
            if r < 0:
                r = 0.0
            s = sqrt(r) + 1e-9
            lo = ceil(-c - s)
            hi = floor(-c + s)
            for xi in range(lo, hi + 1):
                x[i] = xi
                t = xi + c
                rem = remaining - d[i] * t * t
                if rem < -_SLACK * (1 + fbound):
                    continue
                if i == 0:
                    q = self.norm_scaled(x)
                    if q <= scaled_bound:
                        out.append((tuple(x), Fraction(q, self._den)))
                else:
                    rec(i - 1, rem)
            x[i] = 0

        rec(n - 1, fbound)
        out.sort()
        return out

    def enumerate_by_norm(self, target):
        """All lattice vectors with Q(v) == target, each once, lexicographically sorted."""
        target = Fraction(target)
        if target < 0:
            return []
        return [v for v, q in self.vectors_up_to(target) if q == target]

    def theta_counts(self, bound, scale=1):
        """counts[k] = #{v : Q(v) == k / scale} for 0 <= k <= bound*scale; norms off the grid ignored."""
        top = int(Fraction(bound) * scale)
        counts = [0] * (top + 1)
        for _, q in self.vectors_up_to(Fraction(top, scale)):
            k = q * scale
            if k.denominator == 1:
                counts[int(k)] += 1
        return counts


def enumerate_by_norm(lattice, target):
    return lattice.enumerate_by_norm(target)


def boxed_theta_counts(gram, bound, box):
    """Brute-force oracle: norm counts over the coordinate box |x_i| <= box."""
    from itertools import product

    g = _as_fraction_matrix(gram)
    n = len(g)
    counts = {}
    for v in product(range(-box, box + 1), repeat=n):
        q = sum(g[i][j] * v[i] * v[j] for i in range(n) for j in range(n))
        if q <= bound:
            counts[q] = counts.get(q, 0) + 1
    return counts


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def lll_reduce_gram(gram, delta=Fraction(3, 4)):
    """Exact LLL on a Gram matrix; returns (reduced_gram, U) with reduced = U G U^T (rows of U are new basis)."""
    g = _as_fraction_matrix(gram)
    n = len(g)
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def gram_of(U):
        return [[sum(U[a][i] * g[i][j] * U[b][j] for i in range(n) for j in range(n))
                 for b in range(n)] for a in range(n)]

    G = gram_of(U)

    def gso(G):
        mu = [[Fraction(0)] * n for _ in range(n)]
        B = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = G[i][j]
                for k in range(j):
                    s -= mu[j][k] * mu[i][k] * B[k]
                mu[i][j] = s / B[j]
            s = G[i][i]
            for k in range(i):
                s -= mu[i][k] ** 2 * B[k]
            B[i] = s
        return mu, B

    k = 1
    guard = 0
    while k < n:
        guard += 1
        if guard > 10000:
            break
        mu, B = gso(G)
        for j in range(k - 1, -1, -1):
            r = round(mu[k][j])
            if r:
                U[k] = [U[k][t] - r * U[j][t] for t in range(n)]
                G = gram_of(U)
                mu, B = gso(G)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            U[k], U[k - 1] = U[k - 1], U[k]
            G = gram_of(U)
            k = max(k - 1, 1)
    return G, U
