"""Brandt matrices, the optimal embedding of O_c, pushforward of characters, theta lifts.

Functions on Pic(B) are paired by <phi, psi> = sum_i phi_i psi_i / w_i, the
normalization under which every T_n is self-adjoint for the Brandt action
(T_n phi)_i = sum_j B(n)_ij phi_j.
"""
import csv
import io
from fractions import Fraction
from functools import lru_cache

from sympy import divisors

from ..exactmath.cyclotomic import Cyc
from ..exactmath.modular import kronecker
from .ideals import Lattice


def _theta_table(C, i, j, N):
    """counts[n] = #{x in conj(I_j) I_i : nrd(x) = n nrd(I_i) nrd(I_j)}, 0 <= n <= N."""
    Ii, Ij = C.reps[i], C.reps[j]
    L = Ij.conj().times(Ii)
    return L.norm_lattice(Ii.nrd() * Ij.nrd()).theta_counts(N)


class BrandtData:
    """Brandt matrices B(1..N) of an IdealClassSet, computed from one enumeration per pair."""

    def __init__(self, classes, N):
        self.classes = classes
        self.N = N
        H = classes.H
        w = classes.weights
        counts = [[None] * H for _ in range(H)]
        for i in range(H):
            for j in range(i, H):
                counts[i][j] = _theta_table(classes, i, j, N)
                counts[j][i] = counts[i][j]
        self.counts = counts
        self.mats = [None]
        for n in range(1, N + 1):
            M = []
            for i in range(H):
                row = []
                for j in range(H):
                    q, r = divmod(counts[i][j][n], 2 * w[j])
                    if r:
                        raise AssertionError(f"non-integral Brandt entry at n={n}, ({i}, {j})")
                    row.append(q)
                M.append(row)
            self.mats.append(M)

    def __getitem__(self, n):
        return self.mats[n]


@lru_cache(maxsize=None)
def _brandt_cached(classes, N):
    return BrandtData(classes, N)


def brandt(classes, n):
    """The H x H integer Brandt matrix B(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return _brandt_cached(classes, max(n, 16))[n]


def brandt_data(classes, N):
    return _brandt_cached(classes, max(N, 16))


def sigma_p(n, p):
    """sum of divisors d | n with p not dividing d."""
    return sum(d for d in divisors(n) if d % p)


def brandt_csv(classes, n):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "n", "H", "weights"])
    w.writerow([classes.p, n, classes.H, " ".join(map(str, classes.weights))])
    for row in brandt(classes, n):
        w.writerow(row)
    return buf.getvalue()


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


class PicFn:
    """A function on Pic(B) with values in Q(zeta_n), stored as Cyc(n)."""

    def __init__(self, classes, vals, n=1):
        if len(vals) != classes.H:
            raise ValueError("wrong number of values")
        self.classes = classes
        self.n = n
        self.vals = [v if isinstance(v, Cyc) else Cyc(n, [v]) for v in vals]

    @classmethod
    def constant(cls, classes, c=1, n=1):
        return cls(classes, [c] * classes.H, n)

    def __repr__(self):
        return f"PicFn({self.vals})"

    def __eq__(self, other):
        return isinstance(other, PicFn) and other.classes is self.classes and self.vals == other.vals

    def lift(self, m):
        return PicFn(self.classes, [v.lift(m) for v in self.vals], m)

    def hecke(self, n):
        B = brandt(self.classes, n)
        H = self.classes.H
        out = []
        for i in range(H):
            acc = Cyc.zero(self.n)
            for j in range(H):
                if B[i][j]:
                    acc = acc + self.vals[j] * B[i][j]
            out.append(acc)
        return PicFn(self.classes, out, self.n)

    def conj(self):
        return PicFn(self.classes, [v.conj() for v in self.vals], self.n)


def _common(phi, psi):
    if phi.classes is not psi.classes:
        raise ValueError("functions live on different class sets")
    if phi.n == psi.n:
        return phi, psi
    m = phi.n * psi.n
    return phi.lift(m), psi.lift(m)


def pairing(phi, psi):
    """<phi, psi> = sum_i phi_i psi_i / w_i (bilinear, no conjugation)."""
    phi, psi = _common(phi, psi)
    acc = Cyc.zero(phi.n)
    for a, b, w in zip(phi.vals, psi.vals, phi.classes.weights):
        acc = acc + a * b / w
    return acc


def theta_lift(phi1, phi2, N):
    """Coefficients c_0..c_N of Theta(phi1 x phi2) = 1/2 <phi1,1><phi2,1> + sum <T_n phi1, phi2> q^n."""
    phi1, phi2 = _common(phi1, phi2)
    ones = PicFn.constant(phi1.classes, 1, phi1.n)
    brandt_data(phi1.classes, N)
    out = [pairing(phi1, ones) * pairing(phi2, ones) / 2]
    for n in range(1, N + 1):
        out.append(pairing(phi1.hecke(n), phi2))
    return out


# -- optimal embeddings and the map Pic(O_c) -> Pic(B) ---------------------

class Embedding:
    """An optimal embedding O_c -> O_R(I_k): omega_c maps to x = y / nrd(I_k), y in conj(I_k) I_k."""

    def __init__(self, classes, quad_order, k, y):
        self.classes = classes
        self.quad = quad_order
        self.k = k
        self.y = y

    def __repr__(self):
        return f"Embedding(k={self.k}, y={self.y})"

    @property
    def base(self):
        return self.classes.reps[self.k]

    def image_scaled(self, u):
        """nrd(I_k) * phi(u) in O-coordinates for u = a + b omega_c with integer a, b."""
        a, b = u
        O = self.classes.order
        N = self.base.nrd()
        return tuple(a * N * e + b * yy for e, yy in zip(O.one, self.y))

    def ideal_of(self, basis):
        """Left O-ideal I_k phi(a) for an O_c-ideal a given by a Z-basis in (1, omega_K) coordinates."""
        O = self.classes.order
        I = self.base
        N = I.nrd()
        gens = []
        for u in basis:
            v = self.image_scaled(_to_omega_c(self.quad, u))
            for r in I.rows:
                z = O.mul(r, v)
                if any(c % N for c in z):
                    raise AssertionError("embedded ideal left the order")
                gens.append(tuple(c // N for c in z))
        return Lattice(O, gens)


def _to_omega_c(order, u):
    """(x, y) in the basis (1, omega_K) -> integer (a, b) with u = a + b omega_c."""
    x, y = Fraction(u[0]), Fraction(u[1])
    g0 = order.generator[0]
    b = y / order.c
    a = x - b * g0
    if a.denominator != 1 or b.denominator != 1:
        raise ValueError("element is not in O_c")
    return int(a), int(b)


def _is_optimal(classes, k, y, c):
    """No (x - r)/q lies in O_R(I_k) for primes q | c, so the image is exactly O_c."""
    from sympy import primefactors

    I = classes.reps[k]
    N = I.nrd()
    R = I.conj().times(I)  # = N * O_R(I)
    O = classes.order
    for q in primefactors(c):
        for r in range(q):
            z = tuple(yy - r * N * e for yy, e in zip(y, O.one))
            if all(v % q == 0 for v in z) and R.contains(tuple(v // q for v in z)):
                return False
    return True


def optimal_embedding(quad_order, classes):
    """Search class representatives for an optimal embedding of O_c into the right order."""
    p = classes.p
    if quad_order.c % p == 0:
        raise ValueError("p must not divide the conductor")
    if kronecker(quad_order.disc_K, p) != -1:
        raise ValueError(f"p = {p} is not inert in Q(sqrt({quad_order.disc_K}))")
    t, n = quad_order.generator_trace_norm()
    O = classes.order
    for k, I in enumerate(classes.reps):
        N = I.nrd()
        R = I.conj().times(I)
        found = []
        for v in R.norm_lattice(N * N).enumerate_by_norm(n):
            y = R.coords(v)
            if O.trd(y) == N * t:
                found.append(y)
        for y in sorted(found):
            if _is_optimal(classes, k, y, quad_order.c):
                return Embedding(classes, quad_order, k, y)
    raise ValueError("no optimal embedding into any class representative")


def heegner_map(emb):
    """iota: class index in Pic(O_c) -> class index in Pic(B)."""
    from ..quadratic.forms import class_group, form_with_a_coprime_to

    G = class_group(emb.quad)
    out = []
    for f in G.reps:
        g = form_with_a_coprime_to(f, emb.classes.p * emb.quad.c)
        J = emb.ideal_of(emb.quad.form_ideal_basis(g))
        out.append(emb.classes.class_index(J))
    return out


def pushforward(xi, emb, ring_conductor=None):
    """[xi]_i = w_i * sum_{iota(t) = i} xi(t); <phi, [xi]> = sum_t phi(iota(t)) xi(t)."""
    m = ring_conductor or xi.n
    classes = emb.classes
    iota = heegner_map(emb)
    vals = [Cyc.zero(m) for _ in range(classes.H)]
    for t, i in enumerate(iota):
        vals[i] = vals[i] + xi.value(t, m)
    vals = [v * w for v, w in zip(vals, classes.weights)]
    return PicFn(classes, vals, m)
