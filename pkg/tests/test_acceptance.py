"""The ten acceptance criteria, each at its stated tolerance.

Every test prints one line ``ACCEPTANCE #k PASS|FAIL: ...``. Criteria that
are known not to hold as literally stated are marked xfail(strict=True): the
line still reads FAIL, the suite stays green, and an unexpected pass turns it
red so the recorded analysis gets revisited.
"""
import time
from fractions import Fraction
from math import gcd

import mpmath
import pytest
import sympy

from hvdihedral.eisenstein import EisensteinContext, sigma_pairing, solve_sigma1
from hvdihedral.exactmath import Cyc, kronecker
from hvdihedral.hvcli.pipelines import classes_for, match_translate, theta_series
from hvdihedral.quadratic import (QuadOrder, RingClassCharacter, characters_of_order, class_group,
                                  m_of_xi, reconstruct_opt, restricted_optimal_series, theta_newform)
from hvdihedral.quadratic.optimal import ReconstructionError
from hvdihedral.quaternion import PicFn, brandt, matmul, optimal_embedding, pairing, pushforward
from hvdihedral.units import elliptic_unit_conjugates, lambda_independence_defect, regulator_mod_p

from oracles import eta_product_coeffs


def verdict(k, ok, detail):
    print(f"\nACCEPTANCE #{k} {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


def character(disc_K, c, n):
    order = QuadOrder(disc_K, c)
    G = class_group(order)
    return order, G, characters_of_order(G, n)[0]


def test_1_eichler_mass():
    t0 = time.perf_counter()
    primes = list(sympy.primerange(5, 200))
    bad = [p for p in primes if sum(Fraction(1, w) for w in classes_for(p).weights) != Fraction(p - 1, 12)]
    dt = time.perf_counter() - t0
    ok = not bad and dt <= 60
    assert verdict(1, ok, f"sum 1/w_i = (p-1)/12 for {len(primes) - len(bad)}/{len(primes)} primes "
                          f"in [5, 199], {dt:.1f} s (limit 60 s)")


def test_2_brandt_structure():
    problems = []
    for p in (11, 13, 23, 37):
        C = classes_for(p)
        H, w = C.H, C.weights
        B = {n: brandt(C, n) for n in range(1, 13)}
        if B[1] != [[int(i == j) for j in range(H)] for i in range(H)]:
            problems.append(f"p={p}: B(1) != I")
        for n in B:
            for m in B:
                if m > n and matmul(B[n], B[m]) != matmul(B[m], B[n]):
                    problems.append(f"p={p}: B({n}), B({m}) do not commute")
            if any(w[j] * B[n][i][j] != w[i] * B[n][j][i] for i in range(H) for j in range(H)):
                problems.append(f"p={p}: B({n}) not w-symmetric")
        for q in sympy.primerange(2, 21):
            if q != p and any(sum(row) != q + 1 for row in brandt(C, q)):
                problems.append(f"p={p}: T_{q} 1 != {q + 1}")
    assert verdict(2, not problems, "; ".join(problems) or
                   "B(1)=I, commuting, w_j B_ij = w_i B_ji for n, m <= 12; T_q 1 = (q+1) 1, q <= 19")


def test_3_pairing_conventions():
    lines = []
    ok = True
    for disc_K, c, n, p in ((-23, 1, 3, 11), (-4, 5, 2, 7)):
        order, G, xi = character(disc_K, c, n)
        C = classes_for(p)
        emb = optimal_embedding(order, C)
        ones = PicFn.constant(C, 1, n)
        a = pairing(ones, pushforward(RingClassCharacter.trivial(G), emb, n))
        b = pairing(ones, pushforward(xi, emb))
        ok &= a == G.h and not b
        lines.append(f"disc {order.disc} p={p}: <S0,[1]> = {a.coeffs[0]} (h = {G.h}), <S0,[xi]> = {b}")
    assert verdict(3, ok, "; ".join(lines))


@pytest.mark.xfail(strict=True, reason="13 splits in Q(sqrt -23) and {7, 11} cannot determine a[m, n] for m >= 11")
def test_4_opt_unique_desk_scale():
    t0 = time.perf_counter()
    order, G, xi = character(-23, 1, 3)
    chi = next(c for c in characters_of_order(G, 3) if c.square() == xi)
    N = 50
    notes = []
    held = [p for p in (13, 17, 19) if kronecker(-23, p) == -1]
    if len(held) < 3:
        notes.append(f"held-out primes {sorted({13, 17, 19} - set(held))} split: Theta_p has no optimal embedding")
    thetas = {p: theta_series(order, xi, p, N) for p in (7, 11, *held)}
    try:
        arr = reconstruct_opt({p: thetas[p] for p in (7, 11)}, N, N // 7, xi.n)
        recon_ok = True
    except ReconstructionError as e:
        recon_ok = False
        notes.append(f"reconstruction from {{7, 11}}: {e}")
    if recon_ok:
        for p in held:
            for k in range(N + 1):
                s = sum((arr[(k - p * r, r)] for r in range(k // p + 1)), Cyc.zero(3))
                if s != thetas[p][k]:
                    recon_ok = False
                    notes.append(f"held-out p={p}, k={k} disagrees")
                    break
    direct = {p: match_translate(thetas[p], restricted_optimal_series(chi, p, N), 3) for p in thetas}
    direct_ok = all(v is not None for v in direct.values())
    notes.append("direct f^opt(z, pz) = Theta_p up to orientation for p in "
                 f"{sorted(p for p, v in direct.items() if v)}")
    dt = time.perf_counter() - t0
    ok = recon_ok and direct_ok and len(held) == 3 and dt <= 180
    assert verdict(4, ok, "; ".join(notes) + f"; {dt:.1f} s")


def test_5_constant_term():
    cases = []
    for disc_K, c, n, primes in ((-23, 1, 3, (5, 7, 11, 17, 19)), (-4, 5, 2, (7, 11, 19)),
                                 (-47, 1, 5, (5, 11, 13)), (-39, 1, 4, (5, 11, 17))):
        order = QuadOrder(disc_K, c)
        G = class_group(order)
        for xi in characters_of_order(G, n):
            for p in primes:
                if kronecker(disc_K, p) == -1:
                    cases.append((order.disc, xi.label(), p, theta_series(order, xi, p, 0)[0]))
    bad = [x for x in cases if x[3]]
    assert verdict(5, not bad, f"c_0 = 0 in {len(cases) - len(bad)}/{len(cases)} (disc, xi, p) cases")


@pytest.fixture(scope="module")
def packets_23():
    order = QuadOrder(-23)
    t0 = time.perf_counter()
    packets = {lam: elliptic_unit_conjugates(order, lam) for lam in (2, 3, 13)}
    return packets, time.perf_counter() - t0


def test_6_lambda_independence(packets_23):
    packets_23, build = packets_23
    t0 = time.perf_counter() - build
    order, G, xi = character(-23, 1, 3)
    split = [q for q in sympy.primerange(2, 50) if kronecker(-23, q) == 1][:3]
    worst, tol = 0, None
    for i, a in enumerate(split):
        for b in split[i + 1:]:
            pa, pb = packets_23[a], packets_23[b]
            worst = max(worst, lambda_independence_defect(pa, pb, xi))
            tol = min(tol or 1, mpmath.mpf(2) ** (-min(pa.prec, pb.prec) / 2))
    prec = min(p.prec for p in packets_23.values())
    dt = time.perf_counter() - t0
    ok = worst < tol and prec >= 256 and dt <= 60
    assert verdict(6, ok, f"lambdas {split}, max defect {mpmath.nstr(worst, 3)} < 2^-{prec // 2} "
                          f"at {prec} bits, {dt:.2f} s")


def test_7_algebraic_recognition(packets_23):
    pkt = packets_23[0][2]
    again = elliptic_unit_conjugates(pkt.order, 2, prec=2 * pkt.prec)
    integral = all(isinstance(c, int) for c in pkt.minpoly_Q)
    stable = again.minpoly_Q == pkt.minpoly_Q and again.minpoly_K == pkt.minpoly_K
    ok = integral and stable and pkt.defect < mpmath.mpf(10) ** -10
    assert verdict(7, ok, f"degree {len(pkt.minpoly_Q) - 1} integer minpoly, defect "
                          f"{mpmath.nstr(pkt.defect, 3)} at {pkt.prec} bits, unchanged at {again.prec} bits")


def _main_identity(disc_K, c, n, p, ell, lam, convention):
    order, G, xi = character(disc_K, c, n)
    C = classes_for(p)
    s1 = solve_sigma1(EisensteinContext(C, ell, 1))
    L = sigma_pairing(s1, pushforward(xi, optimal_embedding(order, C)))
    target = (Cyc(n, list(L)) * (-6 * m_of_xi(xi))).mod(ell)
    pkt = elliptic_unit_conjugates(order, lam)
    cands = regulator_mod_p(pkt, xi, p, ell, 1, convention)
    return target, [c.choice_index for c in cands if c.coords == target]


MAIN_CONFIGS = [(-23, 1, 3, 11, 5, 2), (-4, 5, 2, 11, 5, 13)]


@pytest.mark.xfail(strict=True, reason="regulator through the norm to F_p^x is 2 (-6 m) <Sigma_1,[xi]>")
def test_8_main_identity():
    t0 = time.perf_counter()
    lines, ok = [], True
    for cfg in MAIN_CONFIGS:
        target, matches = _main_identity(*cfg, "norm")
        _, alt = _main_identity(*cfg, "compatible")
        ok &= bool(matches)
        lines.append(f"disc {cfg[0] * cfg[1] ** 2} p={cfg[3]} ell={cfg[4]} lambda={cfg[5]}: target {list(target)}, "
                     f"norm-log matches {matches}, half-norm-log matches {alt}")
    dt = time.perf_counter() - t0
    assert verdict(8, ok and dt <= 600, "; ".join(lines) + f"; {dt:.1f} s")


def test_9_sigma1_well_defined():
    order, G, xi = character(-23, 1, 3)
    C = classes_for(11)
    ctx = EisensteinContext(C, 5, 1)
    X = pushforward(xi, optimal_embedding(order, C))
    vals = {v: sigma_pairing(solve_sigma1(ctx, v), X) for v in (2, 3)}
    assert verdict(9, len(set(vals.values())) == 1,
                   f"<Sigma_1,[xi]> mod 5 = {vals} for auxiliary primes v = 2, 3 (p = 11)")


def test_10_theta_fixtures():
    order, G, xi = character(-23, 1, 3)
    a = theta_newform(characters_of_order(G, 3)[0], 50)
    ref = eta_product_coeffs(1, 23, 50)
    bad = [n for n in range(1, 51) if a[n] != ref[n]]
    mult = [(m, n) for m in range(2, 51) for n in range(m + 1, 51)
            if m * n <= 50 and gcd(m, n) == 1 and a[m * n] != a[m] * a[n]]
    assert verdict(10, not bad and not mult,
                   f"a(n) = eta(z)eta(23z) coefficients for n <= 50 (mismatches {bad}); "
                   f"multiplicative on coprime pairs (failures {mult})")
