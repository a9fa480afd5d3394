from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hvdihedral.exactmath import kronecker
from hvdihedral.hvcli.pipelines import brandt_identity_failure
from hvdihedral.quadratic import QuadOrder, RingClassCharacter, class_group, characters_of_order
from hvdihedral.quaternion import (PicFn, brandt, brandt_csv, build_algebra, heegner_map, hilbert_symbol,
                                   maximal_order, optimal_embedding, pairing, pushforward,
                                   ramified_places, theta_lift)

X = sympy.Symbol("x")


def eichler_class_number(p):
    """Class number of the maximal order of B_{p, oo}, p > 3."""
    return (Fraction(p - 1, 12) + Fraction(1 - kronecker(-4, p), 4)
            + Fraction(1 - kronecker(-3, p), 3))


@settings(max_examples=80, deadline=None)
@given(st.integers(-60, 60).filter(bool), st.integers(-60, 60).filter(bool))
def test_hilbert_product_formula(a, b):
    places = {0, 2} | set(sympy.factorint(abs(a))) | set(sympy.factorint(abs(b)))
    prod = 1
    for q in places:
        prod *= hilbert_symbol(a, b, q)
    assert prod == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.integers(1, 40), st.sampled_from([3, 5, 7, 11]))
def test_hilbert_symbol_odd_prime_by_solving(a, b, q):
    # the symbol only sees square classes; for squarefree a, b and odd q a primitive
    # solution of a x^2 + b y^2 = z^2 mod q^3 lifts by Hensel
    a, b = squarefree(a), squarefree(b)
    if a % q == 0 and b % q == 0:
        return
    mod = q ** 3
    squares = {}
    for z in range(mod):
        squares.setdefault(z * z % mod, z)
    found = any((a * x * x + b * y * y) % mod in squares and
                (x % q or y % q or squares[(a * x * x + b * y * y) % mod] % q)
                for x in range(q * q) for y in range(q * q))
    assert (hilbert_symbol(a, b, q) == 1) == found


def squarefree(x):
    out = 1
    for q, e in sympy.factorint(x).items():
        out *= q ** (e % 2)
    return out


def test_small_primes_rejected():
    for p in (2, 3, 4, 9):
        with pytest.raises(ValueError):
            build_algebra(p)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 37, 101, 103])
def test_algebra_ramification(p):
    alg = build_algebra(p)
    assert ramified_places(alg.a, alg.b) == {0, p}


@pytest.mark.parametrize("p", [5, 7, 11, 13, 37, 101])
def test_maximal_order_discriminant(p):
    assert maximal_order(build_algebra(p)).reduced_discriminant() == p


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 23, 37, 41, 61, 101, 103])
def test_class_number_and_mass(classes, p):
    C = classes(p)
    assert C.H == eichler_class_number(p)
    assert C.mass() == Fraction(p - 1, 12)


@pytest.mark.parametrize("p", [11, 13, 23, 37])
def test_brandt_identities(classes, p):
    assert brandt_identity_failure(classes(p)) is None


@pytest.mark.parametrize("p,q,factors", [
    (11, 2, [3, -2]),           # 11a: a_2 = -2
    (11, 3, [4, -1]),           # a_3 = -1
    (37, 2, [3, -2, 0]),        # 37a: a_2 = -2; 37b: a_2 = 0
    (37, 3, [4, -3, 1]),        # 37a: a_3 = -3; 37b: a_3 = 1
])
def test_brandt_eigenvalues_match_elliptic_curves(classes, p, q, factors):
    B = sympy.Matrix(brandt(classes(p), q))
    expected = sympy.expand(sympy.prod([X - e for e in factors]))
    assert sympy.expand(B.charpoly(X).as_expr()) == expected


def test_brandt_csv(classes):
    text = brandt_csv(classes(11), 2)
    rows = [r.split(",") for r in text.strip().splitlines()]
    assert rows[0] == ["p", "n", "H", "weights"]
    assert [list(map(int, r)) for r in rows[2:]] == brandt(classes(11), 2)


def test_pairing_makes_hecke_self_adjoint(classes):
    C = classes(23)
    phi = PicFn(C, [1, 2, 5])
    psi = PicFn(C, [3, -1, 4])
    for n in (2, 3, 5, 6):
        assert pairing(phi.hecke(n), psi) == pairing(phi, psi.hecke(n))


@pytest.mark.parametrize("dK,c,n,p", [(-23, 1, 3, 7), (-23, 1, 3, 11), (-4, 5, 2, 7), (-4, 5, 2, 11)])
def test_pairing_conventions(classes, dK, c, n, p):
    order = QuadOrder(dK, c)
    G = class_group(order)
    xi = characters_of_order(G, n)[0]
    C = classes(p)
    emb = optimal_embedding(order, C)
    ones = PicFn.constant(C, 1, n)
    assert pairing(ones, pushforward(RingClassCharacter.trivial(G), emb, n)) == G.h
    assert pairing(ones, pushforward(xi, emb)) == 0
    assert len(heegner_map(emb)) == G.h


def test_theta_lift_constant_term_and_hecke(classes):
    C = classes(11)
    ones = PicFn.constant(C, 1)
    th = theta_lift(ones, ones, 12)
    # Theta(Sigma_0 x Sigma_0) = mass^2/2 + sum sigma(n) mass q^n away from p (Eisenstein)
    mass = C.mass()
    assert th[0] == Cyc_int(mass * mass / 2)
    for n in (1, 2, 3, 4, 5, 6):
        assert th[n] == Cyc_int(sum(sympy.divisors(n)) * mass)


def Cyc_int(x):
    from hvdihedral.exactmath import Cyc
    return Cyc(1, [x])
