"""Ramanujan's Delta at arbitrary precision, as a function of tau and of lattices."""
import math

import mpmath


def _reduce(z):
    """(z', (c, d)) with z' = gamma z in the standard fundamental domain and gamma = (* *; c d)."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(10000):
        n = int(mpmath.nint(mpmath.re(z)))
        if n:
            z -= n
            a, b = a - n * c, b - n * d
        if abs(z) < 1 - mpmath.eps * 16:
            z = -1 / z
            a, b, c, d = -c, -d, a, b
        else:
            return z, (c, d)
    raise ArithmeticError("reduction to the fundamental domain did not terminate")


def _terms_needed(im, prec):
    # |q| = exp(-2 pi im); the tail of log prod (1 - q^n)^24 is below 48 |q|^(N+1)
    return max(1, math.ceil((prec * math.log(2) + math.log(48)) / (2 * math.pi * float(im))))


def delta_eval(z, prec=128):
    """Delta(z) = q prod (1 - q^n)^24 with truncation error below 2^-prec (relative)."""
    z = mpmath.mpc(z)
    if mpmath.im(z) <= 0:
        raise ValueError("Delta needs Im(z) > 0")
    with mpmath.workprec(prec + 32):
        zr, (c, d) = _reduce(z)
        q = mpmath.exp(2j * mpmath.pi * zr)
        prod = mpmath.mpc(1)
        qn = mpmath.mpc(1)
        for _ in range(_terms_needed(mpmath.im(zr), prec)):
            qn *= q
            prod *= 1 - qn
        val = q * prod ** 24
        # Delta(gamma z) = (cz + d)^12 Delta(z)
        val = val / (c * z + d) ** 12
    return +val


def delta_lattice(w1, w2, prec=128):
    """Delta of the lattice Z w1 + Z w2, homogeneous of weight -12: Delta(L) = w2^-12 Delta(w1/w2)."""
    with mpmath.workprec(prec + 32):
        w1, w2 = mpmath.mpc(w1), mpmath.mpc(w2)
        tau = w1 / w2
        if mpmath.im(tau) < 0:
            w1, w2 = w2, w1
            tau = w1 / w2
        val = delta_eval(tau, prec) / w2 ** 12
    return +val
