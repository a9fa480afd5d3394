"""The definite quaternion algebra ramified at {p, oo} and an explicit maximal order.

Elements of B = (a, b | Q) are 4-tuples over Q in the basis 1, i, j, k = ij
with i^2 = a, j^2 = b. Inside a fixed order, elements are integer
coordinate vectors with respect to the order's basis; all lattice work
happens in those coordinates.
"""
from fractions import Fraction
from math import gcd

from sympy import factorint, isprime

from ..exactmath.modular import legendre


def hilbert_symbol(a, b, q):
    """Local Hilbert symbol (a, b)_q for nonzero integers a, b; q prime or 0 for infinity."""
    if q == 0:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split(a, q)
    beta, v = _split(b, q)
    if q == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omg = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omg(v) + beta * omg(u)
        return -1 if e % 2 else 1
    e = alpha * beta * ((q - 1) // 2)
    s = (-1) ** (e % 2)
    s *= legendre(u, q) ** (beta % 2) if beta % 2 else 1
    s *= legendre(v, q) ** (alpha % 2) if alpha % 2 else 1
    return s


def _split(x, q):
    v = 0
    while x % q == 0:
        x //= q
        v += 1
    return v, x


def ramified_places(a, b):
    """Set of ramified places (0 = infinity) of (a, b | Q)."""
    places = {2, 0} | set(factorint(abs(a))) | set(factorint(abs(b)))
    return {q for q in places if hilbert_symbol(a, b, q) == -1}


class QuatAlg:
    """(a, b | Q) chosen to be ramified exactly at {p, oo}."""

    def __init__(self, p, a, b):
        self.p, self.a, self.b = p, a, b

    def __repr__(self):
        return f"QuatAlg(p={self.p}, a={self.a}, b={self.b})"

    def mul(self, x, y):
        a, b = self.a, self.b
        x0, x1, x2, x3 = x
        y0, y1, y2, y3 = y
        return (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        )

    def conj(self, x):
        return (x[0], -x[1], -x[2], -x[3])

    def nrd(self, x):
        a, b = self.a, self.b
        return x[0] ** 2 - a * x[1] ** 2 - b * x[2] ** 2 + a * b * x[3] ** 2

    def trd(self, x):
        return 2 * x[0]


def build_algebra(p):
    """B ramified at {p, oo} with (a, b) chosen by the residue class of p."""
    if p < 5 or not isprime(p):
        raise ValueError(f"p must be a prime >= 5, got {p}")
    if p % 4 == 3:
        a, b = -1, -p
    elif p % 8 == 5:
        a, b = -2, -p
    else:
        q = 3
        while not (isprime(q) and q % 4 == 3 and legendre(q, p) == -1):
            q += 4
        a, b = -q, -p
    if ramified_places(a, b) != {p, 0}:
        raise AssertionError(f"({a}, {b}) is not ramified exactly at {{{p}, oo}}")
    return QuatAlg(p, a, b)


def _solve_rational(M, v):
    """x with x M = v (M square, rows are basis vectors), exact."""
    n = len(M)
    # solve M^T x^T = v^T by Gauss-Jordan
    A = [[Fraction(M[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def det(M):
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            d = -d
        d *= A[col][col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return d


class QuatOrder:
    """An order with Z-basis ``basis`` (4 elements of B) and integer structure constants."""

    def __init__(self, alg, basis):
        self.alg = alg
        self.basis = [tuple(Fraction(c) for c in e) for e in basis]
        B = self.basis
        self.table = [[None] * 4 for _ in range(4)]
        for s in range(4):
            for t in range(4):
                coords = _solve_rational(B, alg.mul(B[s], B[t]))
                if any(c.denominator != 1 for c in coords):
                    raise ValueError("basis does not span a ring")
                self.table[s][t] = [int(c) for c in coords]
        conj_rows = []
        for e in B:
            coords = _solve_rational(B, alg.conj(e))
            if any(c.denominator != 1 for c in coords):
                raise ValueError("order is not closed under conjugation")
            conj_rows.append([int(c) for c in coords])
        self.conj_matrix = conj_rows
        one = _solve_rational(B, (1, 0, 0, 0))
        if any(c.denominator != 1 for c in one):
            raise ValueError("order does not contain 1")
        self.one = tuple(int(c) for c in one)
        self.trd_vec = [int(alg.trd(e)) for e in B]
        # nrd(x) = sum_{s,t} x_s x_t * g2[s][t] / 2 with g2 = trd(e_s conj(e_t))
        self.g2 = [[int(alg.trd(alg.mul(B[s], alg.conj(B[t])))) for t in range(4)] for s in range(4)]
        self.p = alg.p

    def __repr__(self):
        return f"QuatOrder(p={self.p})"

    def mul(self, x, y):
        out = [0, 0, 0, 0]
        T = self.table
        for s in range(4):
            xs = x[s]
            if xs:
                for t in range(4):
                    yt = y[t]
                    if yt:
                        c = xs * yt
                        row = T[s][t]
                        out[0] += c * row[0]
                        out[1] += c * row[1]
                        out[2] += c * row[2]
                        out[3] += c * row[3]
        return tuple(out)

    def conj(self, x):
        out = [0, 0, 0, 0]
        for s in range(4):
            if x[s]:
                row = self.conj_matrix[s]
                for t in range(4):
                    out[t] += x[s] * row[t]
        return tuple(out)

    def nrd(self, x):
        g = self.g2
        s = 0
        for a in range(4):
            for b in range(4):
                s += x[a] * x[b] * g[a][b]
        return s // 2

    def trd(self, x):
        return sum(a * b for a, b in zip(x, self.trd_vec))

    def to_algebra(self, x):
        out = [Fraction(0)] * 4
        for s in range(4):
            for t in range(4):
                out[t] += x[s] * self.basis[s][t]
        return tuple(out)

    def from_algebra(self, v):
        return tuple(_solve_rational(self.basis, v))

    def discriminant(self):
        """det(trd(e_s e_t)); equals -p^2 up to sign for a maximal order of B_{p, oo}."""
        alg = self.alg
        M = [[alg.trd(alg.mul(a, b)) for b in self.basis] for a in self.basis]
        return det(M)

    def reduced_discriminant(self):
        d = abs(self.discriminant())
        r = int(round(float(d) ** 0.5))
        for cand in (r - 1, r, r + 1):
            if cand * cand == d:
                return cand
        raise ValueError("discriminant is not a square")


def maximal_order(alg):
    """Explicit maximal order for the algebras produced by build_algebra."""
    p, a, b = alg.p, alg.a, alg.b
    F = Fraction
    if (a, b) == (-1, -p):
        basis = [(F(1, 2), 0, F(1, 2), 0), (0, F(1, 2), 0, F(1, 2)), (0, 0, 1, 0), (0, 0, 0, 1)]
    elif (a, b) == (-2, -p):
        basis = [(F(1, 2), 0, F(1, 2), F(1, 2)), (0, F(1, 4), F(1, 2), F(1, 4)), (0, 0, 1, 0), (0, 0, 0, 1)]
    else:
        q = -a
        # a standard order for (-p, -q) rewritten with i' = j, j' = i, k' = -k
        c = next(x for x in range(q) if (x * x * p + 1) % q == 0)
        basis = [(F(1, 2), F(1, 2), 0, 0), (0, 0, F(1, 2), F(-1, 2)), (0, F(1, q), 0, F(-c, q)), (0, 0, 0, 1)]
    O = QuatOrder(alg, basis)
    if O.reduced_discriminant() != p:
        raise AssertionError(f"order for p={p} has reduced discriminant {O.reduced_discriminant()}")
    return O
