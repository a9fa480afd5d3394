"""CM points, elliptic units Delta(a)/Delta(conj(l) a) and their minimal polynomials.

For a lattice a with [a] = t^-1 the CM point C/a is x_c^{sigma_t}: a class
[b] acts by a -> b^-1 a. The isogeny C/a -> C/l^-1 a has kernel E[l] and
    u_lambda(eta_lambda(C/a)) = Delta(z)/Delta(lambda z) = Delta(a)/Delta(conj(l) a)
with Delta homogeneous of weight -12.
"""
import math
from dataclasses import dataclass

import mpmath
from sympy import isprime

from ..exactmath.modular import ConfigurationError, kronecker
from ..exactmath.numeric import PrecisionError, expand_roots, min_poly_from_roots, poly_over_quadratic
from ..quadratic.characters import _hnf2
from ..quadratic.forms import class_group
from .delta import delta_lattice


@dataclass
class CMPoint:
    form: tuple
    tau: mpmath.mpc

    @classmethod
    def of_form(cls, f):
        a, b, c = f
        D = b * b - 4 * a * c
        tau = (-b + mpmath.sqrt(mpmath.mpf(D))) / (2 * a)
        return cls(tuple(f), tau)

    def residual(self):
        a, b, c = self.form
        return abs(a * self.tau ** 2 + b * self.tau + c)


def split_ideal(order, lam, choice=0):
    """The form (lam, b, c) of disc(O_c) for one of the two primes above lam; choice 1 is the conjugate."""
    D = order.disc
    if not isprime(lam) or order.c % lam == 0 or kronecker(order.disc_K, lam) != 1:
        raise ConfigurationError(f"lambda = {lam} must be a prime split in K and coprime to c")
    b = next(b for b in range(lam + 1) if (b * b - D) % (4 * lam) == 0 and (b % 2) == (D % 2))
    if choice:
        b = -b
    return (lam, b, (b * b - D) // (4 * lam))


def _ideal_mul(order, A, B):
    gens = [order.mul(x, y) for x in A for y in B]
    return _hnf2(gens)


def _complex_basis(order, basis):
    return [order.to_complex(u) for u in basis]


@dataclass
class EllipticUnitPacket:
    order: object
    lam: int
    frakl: tuple
    conj_values: list
    prec: int
    minpoly_K: list = None
    minpoly_Q: list = None
    defect: object = None

    @property
    def h(self):
        return len(self.conj_values)

    def log_abs(self):
        return [mpmath.log(abs(v)) for v in self.conj_values]


def _values(order, frakl, prec):
    G = class_group(order)
    lam, b, c = frakl
    lbar = order.form_ideal_basis((lam, -b, c))
    out = []
    with mpmath.workprec(prec):
        for t in range(G.h):
            # a lattice in the class t^-1
            a = order.form_ideal_basis(G.reps[G.inverse[t]])
            b = _ideal_mul(order, a, lbar)
            num = delta_lattice(*_complex_basis(order, a), prec=prec)
            den = delta_lattice(*_complex_basis(order, b), prec=prec)
            out.append(num / den)
    return out


def default_precision(order, n_conj):
    return 64 + 16 * n_conj * math.ceil(math.sqrt(-order.disc))


def elliptic_unit_conjugates(order, lam, choice=0, prec=None, max_prec=1 << 16):
    """All h conjugates u^sigma_t with integer-rounded minimal polynomials over O_K and over Z.

    Precision starts at 64 + 16 h ceil(sqrt|disc|) bits and doubles until the
    rounded polynomials agree with those at twice the precision.
    """
    frakl = split_ideal(order, lam, choice)
    G = class_group(order)
    prec = prec or default_precision(order, G.h)
    prev = None
    while prec <= max_prec:
        try:
            pkt = _assemble(order, lam, frakl, prec)
        except PrecisionError:
            prec *= 2
            continue
        if prev is not None and prev.minpoly_Q == pkt.minpoly_Q and prev.minpoly_K == pkt.minpoly_K:
            return prev
        prev = pkt
        prec *= 2
    raise PrecisionError(f"minimal polynomial not stable up to {max_prec} bits")


def _assemble(order, lam, frakl, prec):
    vals = _values(order, frakl, prec)
    with mpmath.workprec(prec):
        omega = order.omega_complex()
        coeffs_K, dK = poly_over_quadratic(expand_roots(vals), omega)
        # the complex conjugates come from the other prime above lambda
        allv = vals + [mpmath.conj(v) for v in vals]
        coeffs_Q, dQ = min_poly_from_roots(allv)
        defect = max(dK, dQ)
        if defect > mpmath.mpf(2) ** (-prec // 4):
            raise PrecisionError(f"rounding defect {mpmath.nstr(defect, 5)}", defect)
    return EllipticUnitPacket(order, lam, frakl, vals, prec, coeffs_K, coeffs_Q, defect)
