"""The higher Eisenstein element Sigma_1 and the Shimura-class pairing.

Sigma_1 is a function on Pic(B) with values in Z/ell^t solving
    (T_v - (v + 1)) Sigma_1 = (v - 1) log(v) Sigma_0,
where Sigma_0 is the constant function 1 and log is the fixed discrete
logarithm F_p^x -> Z/ell^t. It is only defined modulo Sigma_0, which is
invisible to pairings against [xi] for nontrivial xi.
"""
from dataclasses import dataclass
from math import gcd

from sympy import isprime, nextprime

from ..exactmath.cyclotomic import Cyc
from ..exactmath.modular import ConfigurationError, DiscreteLog
from ..quaternion.brandt import brandt
from .linalg import NoSolution, smith_solve


class DegenerateContextError(ValueError):
    """The kernel of T_v - (v + 1) mod ell^t is larger than the span of Sigma_0."""


class ContextError(ValueError):
    pass


class EisensteinContext:
    """p, ell^t | p - 1, the ideal classes of B_{p, oo} and the discrete log."""

    def __init__(self, classes, ell, t=1):
        p = classes.p
        if ell < 5 or not isprime(ell):
            raise ConfigurationError(f"ell must be a prime >= 5, got {ell}")
        if t < 1:
            raise ConfigurationError("t must be positive")
        if (p - 1) % ell ** t:
            raise ConfigurationError(f"{ell}^{t} does not divide p - 1 = {p - 1}")
        self.classes = classes
        self.p, self.ell, self.t = p, ell, t
        self.modulus = ell ** t
        self.log = DiscreteLog(p, ell, t)

    def __repr__(self):
        return f"EisensteinContext(p={self.p}, ell={self.ell}, t={self.t}, H={self.classes.H})"


@dataclass
class Sigma1:
    ctx: EisensteinContext
    vec: list
    aux_v: int
    kernel_exps: tuple

    def check(self, v=None):
        """(T_v - (v + 1)) vec == (v - 1) log(v) Sigma_0 mod ell^t."""
        v = v or self.aux_v
        ctx = self.ctx
        mod = ctx.modulus
        B = brandt(ctx.classes, v)
        rhs = (v - 1) * ctx.log(v) % mod
        for i, row in enumerate(B):
            lhs = sum(b * x for b, x in zip(row, self.vec)) - (v + 1) * self.vec[i]
            if (lhs - rhs) % mod:
                return False
        return True

    def shifted(self, k):
        """vec + k Sigma_0, an equally valid solution."""
        mod = self.ctx.modulus
        return Sigma1(self.ctx, [(x + k) % mod for x in self.vec], self.aux_v, self.kernel_exps)


def _system(ctx, v):
    B = brandt(ctx.classes, v)
    H = ctx.classes.H
    A = [[B[i][j] - (v + 1) * (i == j) for j in range(H)] for i in range(H)]
    b = [(v - 1) * ctx.log(v)] * H
    return A, b


def solve_sigma1(ctx, v=None):
    """Sigma_1 for the auxiliary prime v (default: the smallest admissible one)."""
    if v is None:
        v, last = 2, None
        while v < 200:
            if v not in (ctx.p, ctx.ell):
                try:
                    return solve_sigma1(ctx, v)
                except DegenerateContextError as e:
                    last = e
            v = nextprime(v)
        raise last or DegenerateContextError("no admissible auxiliary prime below 200")
    if not isprime(v) or v in (ctx.p, ctx.ell):
        raise ConfigurationError(f"auxiliary prime v = {v} must be a prime outside {{p, ell}}")
    A, b = _system(ctx, v)
    try:
        x, exps, _ = smith_solve(A, b, ctx.ell, ctx.t)
    except NoSolution:
        raise ContextError(
            f"(T_{v} - {v + 1}) Sigma_1 = ({v} - 1) log({v}) Sigma_0 has no solution mod "
            f"{ctx.ell}^{ctx.t}; check ell^t | p - 1") from None
    # Sigma_0 spans a kernel of order ell^t; anything more is degenerate
    if sum(exps) > ctx.t:
        raise DegenerateContextError(
            f"kernel of T_{v} - {v + 1} mod {ctx.ell}^{ctx.t} is larger than span(Sigma_0); "
            "try another auxiliary prime")
    return Sigma1(ctx, x, v, tuple(exps))


def sigma_pairing(sigma, xi_push):
    """<Sigma_1, [xi]> = sum_i Sigma_1(i) [xi]_i / w_i as coordinates in (Z/ell^t)[zeta_n]."""
    ctx = sigma.ctx
    if xi_push.classes is not ctx.classes:
        raise ValueError("[xi] lives on a different class set")
    acc = Cyc.zero(xi_push.n)
    for s, x, w in zip(sigma.vec, xi_push.vals, ctx.classes.weights):
        acc = acc + x * s / w
    for w in ctx.classes.weights:
        if gcd(w, ctx.ell) != 1:
            raise ConfigurationError(f"weight {w} is not invertible mod {ctx.ell}")
    return acc.mod(ctx.modulus)


def shimura_pairing(sigma, xi_push, h):
    """1/2 h <Sigma_1, [xi]>: log_ell of the Shimura class on Theta_p([1] x [xi])."""
    mod = sigma.ctx.modulus
    half = pow(2, -1, mod)
    return tuple(c * half * h % mod for c in sigma_pairing(sigma, xi_push))
