"""The xi-parts u_{xi, lambda}, u_xi and their regulators modulo an inert prime.

u_xi = m(xi)/(1 - xi(conj l)) * sum_sigma u^sigma (x) xi(sigma) is kept as a
vector of exponents in Z[zeta_n]; nothing is ever raised to a fractional power.

Reduction modulo a prime P | p of H_c goes through the roots of the minimal
polynomial P(X) over O_K in O_K/p = F_{p^2}. The polynomials
    N_t(X) = sum_s u^{ts} prod_{r != s} (X - u^r)
have coefficients in O_K and satisfy N_t(u^s) = u^{ts} P'(u^s), so once one
root r0 = red(u^{s0}) is picked, red(u^{t s0}) = N_t(r0)/P'(r0). The choice of
r0 (equivalently of P) and the direction of the Galois action are the only
ambiguities; regulator_mod_p enumerates all of them.
"""
from dataclasses import dataclass
from math import gcd

import mpmath

from ..exactmath.cyclotomic import Cyc
from ..exactmath.modular import ConfigurationError, DiscreteLog, FiniteField, kronecker
from ..exactmath.numeric import expand_roots, poly_over_quadratic
from ..quadratic.characters import TrivialCharacterError, m_of_xi
from ..quadratic.forms import class_group


class BadPrimeError(ValueError):
    pass


def u_xi_weights(packet, xi):
    """Exponents {m(xi) xi(sigma_t)/(1 - xi(conj l))}_t in Z[zeta_n] for the conjugates u^sigma_t."""
    if xi.is_trivial:
        raise TrivialCharacterError("u_xi needs a nontrivial xi")
    G = class_group(packet.order)
    if xi.group is not G:
        raise ValueError("xi is a character of a different class group")
    l_idx = G.class_of(packet.frakl)
    if xi.n // gcd(xi.exps[l_idx], xi.n) != xi.n:
        raise ConfigurationError(f"xi(l) does not generate the image of xi for lambda = {packet.lam}")
    m = m_of_xi(xi)
    factor = Cyc.from_int(xi.n, m) / (1 - xi.value(G.inverse[l_idx]))
    if not factor.is_integral():
        raise AssertionError("m(xi)/(1 - xi(conj l)) is not integral")
    return [factor * xi.value(t) for t in range(G.h)]


def log_realization(packet, xi, k=1):
    """sum_t log|u^sigma_t| xi(sigma_t) under zeta_n -> exp(2 pi i k/n)."""
    with mpmath.workprec(packet.prec):
        acc = mpmath.mpc(0)
        for t, la in enumerate(packet.log_abs()):
            acc += la * mpmath.expjpi(mpmath.mpf(2 * k * xi.exps[t]) / xi.n)
        return acc


def lambda_independence_defect(pk1, pk2, xi):
    """max over embeddings of |(1 - xi(conj l2)) u_{xi,l1} - (1 - xi(conj l1)) u_{xi,l2}| in log realization."""
    G = class_group(pk1.order)
    l1bar = G.inverse[G.class_of(pk1.frakl)]
    l2bar = G.inverse[G.class_of(pk2.frakl)]
    worst = mpmath.mpf(0)
    prec = min(pk1.prec, pk2.prec)
    with mpmath.workprec(prec):
        for k in range(1, xi.n):
            if gcd(k, xi.n) != 1:
                continue
            z1 = mpmath.expjpi(mpmath.mpf(2 * k * xi.exps[l1bar]) / xi.n)
            z2 = mpmath.expjpi(mpmath.mpf(2 * k * xi.exps[l2bar]) / xi.n)
            lhs = (1 - z2) * log_realization(pk1, xi, k)
            rhs = (1 - z1) * log_realization(pk2, xi, k)
            worst = max(worst, abs(lhs - rhs))
    return worst


def transfer_polys(packet):
    """[N_t] for every class t, coefficients in O_K as (a, b) pairs, low degree first."""
    G = class_group(packet.order)
    vals = packet.conj_values
    h = G.h
    out = []
    with mpmath.workprec(packet.prec):
        omega = packet.order.omega_complex()
        for t in range(h):
            acc = [mpmath.mpc(0)] * h
            for s in range(h):
                others = [vals[r] for r in range(h) if r != s]
                part = expand_roots(others)
                u = vals[G.comp[t][s]]
                for k, c in enumerate(part):
                    acc[k] += u * c
            coeffs, _ = poly_over_quadratic(acc, omega)
            out.append(coeffs)
    return out


@dataclass
class RegulatorValue:
    p: int
    ell: int
    t: int
    coords: tuple
    choice_index: tuple  # (root index in F_{p^2}, Galois direction +1 / -1)
    xi_label: str = ""


def residue_field(order, p):
    if kronecker(order.disc_K, p) != -1:
        raise ConfigurationError(f"p = {p} is not inert in K")
    delta = order.delta
    wn = (delta - order.disc_K) // 4
    return FiniteField(p, 2, trace=delta, norm=wn)


def reduced_labelings(packet, p):
    """For each root r0 of P mod p: the list t -> red(u^{sigma_t s0}) in F_{p^2}."""
    order = packet.order
    if order.c % p == 0 or order.disc_K % p == 0 or packet.lam == p:
        raise BadPrimeError(f"p = {p} divides lambda c disc_K")
    F = residue_field(order, p)
    P = [F(a, b) for a, b in packet.minpoly_K]
    roots = F.poly_roots(P)
    if len(roots) != len(P) - 1 or len(set(roots)) != len(roots):
        raise BadPrimeError(f"minimal polynomial has repeated or missing roots mod {p}")
    dP = [F.mul(F(k), c) for k, c in enumerate(P)][1:]
    Ns = [[F(a, b) for a, b in N] for N in transfer_polys(packet)]
    out = []
    for r0 in roots:
        d = F.poly_eval(dP, r0)
        lab = [F.div(F.poly_eval(N, r0), d) for N in Ns]
        if sorted(lab) != sorted(roots):
            raise AssertionError("transfer polynomials do not permute the roots")
        out.append(lab)
    return F, out


LOG_CONVENTIONS = ("norm", "compatible")


def regulator_mod_p(packet, xi, p, ell, t=1, convention="norm"):
    """All candidate values of log_ell Reg_{F_p^x}(u_xi), one per ambiguity choice.

    convention "norm" applies log_ell after the norm F_{p^2} -> F_p.
    "compatible" uses instead the logarithm on F_{p^2}^x that restricts to
    the fixed one on F_p^x, which is half of log_ell(norm).
    """
    if ell < 5 or (p - 1) % ell ** t:
        raise ConfigurationError(f"need ell >= 5 and {ell}^{t} | {p} - 1")
    if convention not in LOG_CONVENTIONS:
        raise ConfigurationError(f"unknown log convention {convention!r}")
    weights = u_xi_weights(packet, xi)
    G = class_group(packet.order)
    log = DiscreteLog(p, ell, t)
    F, labelings = reduced_labelings(packet, p)
    mod = ell ** t
    scale = 1 if convention == "norm" else pow(2, -1, mod)
    out = []
    for ri, lab in enumerate(labelings):
        logs = [log(F.norm_down(x)) * scale % mod for x in lab]
        for direction in (1, -1):
            acc = Cyc.zero(xi.n)
            for s in range(G.h):
                src = s if direction == 1 else G.inverse[s]
                if logs[src]:
                    acc = acc + weights[s] * logs[src]
            out.append(RegulatorValue(p, ell, t, acc.mod(mod), (ri, direction), xi.label()))
    return out
