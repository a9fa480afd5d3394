"""Integral left ideals of a maximal order and their classes.

A lattice is a 4x4 integer matrix in Hermite normal form whose rows are
coordinates with respect to the basis of the ambient order O. Products of
the form conj(I) * J stay inside O, so every lattice handled here is integral.
"""
from fractions import Fraction
from itertools import product
from math import isqrt

from ..exactmath.lattice import PosDefLattice


def hnf(rows):
    """Row-style Hermite normal form of an integer matrix of full column rank 4."""
    A = [list(r) for r in rows if any(r)]
    n = 4
    out = []
    for col in range(n):
        # gcd-combine all rows on this column
        live = [r for r in A if r[col] != 0]
        rest = [r for r in A if r[col] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                (nxt if r[col] != 0 else rest).append(r)
            live = nxt
        if not live:
            raise ValueError("lattice is not of full rank")
        piv = live[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        A = [r for r in rest if any(r)]
    # reduce above-diagonal entries
    for i in range(n):
        for k in range(i):
            q = out[k][i] // out[i][i]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return tuple(tuple(r) for r in out)


class Lattice:
    """A full-rank sublattice of O in O-coordinates."""

    __slots__ = ("order", "rows")

    def __init__(self, order, rows):
        self.order = order
        self.rows = hnf(rows)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Lattice({self.rows})"

    def index(self):
        """[O : L] for L inside O."""
        d = 1
        for i in range(4):
            d *= self.rows[i][i]
        return d

    def nrd(self):
        """Reduced norm of an integral one-sided ideal of O: sqrt([O : I])."""
        idx = self.index()
        r = isqrt(idx)
        if r * r != idx:
            raise ValueError("index is not a square")
        return r

    def conj(self):
        return Lattice(self.order, [self.order.conj(r) for r in self.rows])

    def times(self, other):
        O = self.order
        return Lattice(O, [O.mul(a, b) for a in self.rows for b in other.rows])

    def right_mul(self, x):
        O = self.order
        return [O.mul(r, x) for r in self.rows]

    def contains(self, x):
        v = list(x)
        for i in range(4):
            piv = self.rows[i][i]
            if v[i] % piv:
                return False
            q = v[i] // piv
            v = [a - q * b for a, b in zip(v, self.rows[i])]
        return not any(v)

    def coords(self, v):
        """Element of O given in lattice coordinates -> O coordinates."""
        out = [0, 0, 0, 0]
        for c, r in zip(v, self.rows):
            if c:
                for t in range(4):
                    out[t] += c * r[t]
        return tuple(out)

    def norm_lattice(self, scale=1):
        """PosDefLattice of nrd(x)/scale on this lattice."""
        g2 = self.order.g2
        R = self.rows
        gram = [[Fraction(sum(R[a][s] * g2[s][t] * R[b][t] for s in range(4) for t in range(4)), 2 * scale)
                 for b in range(4)] for a in range(4)]
        return PosDefLattice(gram)

    def is_left_ideal(self):
        O = self.order
        E = [tuple(int(i == j) for j in range(4)) for i in range(4)]
        return all(self.contains(O.mul(e, r)) for e in E for r in self.rows)


def unit_ideal(order):
    return Lattice(order, [tuple(int(i == j) for j in range(4)) for i in range(4)])


def left_ideal_generated(order, gens, extra=()):
    """O*g_1 + ... + O*g_r + (Z-span of extra)."""
    E = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    rows = [order.mul(e, g) for g in gens for e in E] + list(extra)
    return Lattice(order, rows)


def shortest_vectors(L, scale):
    """Minimal nonzero norm (relative to scale) and all vectors achieving it, in O coordinates."""
    N = L.norm_lattice(scale)
    bound = 1
    while True:
        vecs = [(v, q) for v, q in N.vectors_up_to(bound) if any(v)]
        if vecs:
            m = min(q for _, q in vecs)
            return m, [L.coords(v) for v, q in vecs if q == m]
        bound *= 2


def count_norm(L, target_over_scale, scale):
    return len(L.norm_lattice(scale).enumerate_by_norm(target_over_scale))


def neighbors(I, q=2):
    """The q + 1 left ideals J of I with I/J of order q^2 (q prime, q != p)."""
    O = I.order
    n = I.nrd()
    out = set()
    for c in product(range(q), repeat=4):
        if not any(c):
            continue
        x = I.coords(c)
        if (O.nrd(x) // n) % q or O.nrd(x) % n:
            continue
        J = left_ideal_generated(O, [x], extra=[tuple(q * a for a in r) for r in I.rows])
        if J.index() == I.index() * q * q:
            out.add(J)
    return list(out)


def reduce_ideal(I):
    """An equivalent left ideal of smallest possible norm, I * conj(x) / nrd(I) for a shortest x."""
    O = I.order
    n = I.nrd()
    _, vecs = shortest_vectors(I, n)
    x = min(vecs)
    xb = O.conj(x)
    rows = [tuple(a // n for a in r) for r in I.right_mul(xb)]
    return Lattice(O, rows)


def right_order_lattice(I):
    """conj(I) * I = nrd(I) * O_R(I)."""
    return I.conj().times(I)


def unit_weight(I):
    """|O_R(I)^x| / 2, counted as elements of norm nrd(I)^2 in conj(I) I."""
    n = I.nrd()
    return count_norm(right_order_lattice(I), 1, n * n) // 2


def equivalent(I, J):
    """I ~ J (J = I a for some a in B^x) iff conj(I) J has an element of norm nrd(I) nrd(J)."""
    m = I.nrd() * J.nrd()
    return count_norm(I.conj().times(J), 1, m) > 0


class IdealClassSet:
    """Representatives I_1 = O, ..., I_H of the left ideal classes of O, with weights."""

    def __init__(self, order, reps, weights):
        self.order = order
        self.reps = reps
        self.weights = weights

    @property
    def H(self):
        return len(self.reps)

    @property
    def p(self):
        return self.order.p

    def mass(self):
        return sum(Fraction(1, w) for w in self.weights)

    def __repr__(self):
        return f"IdealClassSet(p={self.p}, H={self.H}, weights={self.weights})"

    def class_index(self, J):
        """Index of the representative equivalent to the left ideal J."""
        J = reduce_ideal(J)
        for i, I in enumerate(self.reps):
            if equivalent(I, J):
                return i
        raise AssertionError("ideal matches no class representative")


def ideal_classes(order):
    """Left ideal classes by 2-neighbour expansion, stopped once the mass (p-1)/12 is reached."""
    p = order.p
    q = 2 if p != 2 else 3
    target = Fraction(p - 1, 12)
    guard = 10 * target + 24
    start = unit_ideal(order)
    reps, weights = [start], [unit_weight(start)]
    mass = Fraction(1, weights[0])
    queue = [start]
    seen = 0
    while mass < target:
        if not queue:
            raise AssertionError("neighbour expansion stalled below the mass")
        I = queue.pop(0)
        for J in neighbors(I, q):
            seen += 1
            if seen > guard:
                raise AssertionError(f"no termination after {seen} candidates")
            J = reduce_ideal(J)
            if any(equivalent(R, J) for R in reps):
                continue
            reps.append(J)
            weights.append(unit_weight(J))
            mass += Fraction(1, weights[-1])
            queue.append(J)
            if mass >= target:
                break
    if mass != target:
        raise AssertionError(f"mass {mass} overshoots {(p - 1) / 12}")
    return IdealClassSet(order, reps, weights)
