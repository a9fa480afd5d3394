import mpmath
import pytest

from hvdihedral.exactmath import ConfigurationError, Cyc
from hvdihedral.quadratic import QuadOrder, characters_of_order, class_group
from hvdihedral.units import (CMPoint, LOG_CONVENTIONS, BadPrimeError, delta_eval, delta_lattice,
                              elliptic_unit_conjugates, lambda_independence_defect, packet_from_json,
                              packet_to_json, reduced_labelings, regulator_mod_p, split_ideal,
                              u_xi_weights)

from oracles import delta_q_product

TAUS = [1j, 0.5 + 0.9j, -0.3 + 1.7j, 0.1 + 0.35j, 0.45 + 0.12j]


@pytest.mark.parametrize("tau", TAUS)
def test_delta_matches_qpochhammer(tau):
    with mpmath.workprec(200):
        ours = delta_eval(tau, 180)
        ref = delta_q_product(tau, 400)
        assert abs(ours - ref) <= abs(ref) * mpmath.mpf(2) ** -160


def test_delta_at_i():
    with mpmath.workprec(120):
        # Delta(i) = Gamma(1/4)^24 / (2^24 pi^18)
        ref = mpmath.gamma(mpmath.mpf(1) / 4) ** 24 / (2 ** 24 * mpmath.pi ** 18)
        assert abs(delta_eval(1j, 110) - ref) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("tau", TAUS)
def test_delta_modularity(tau):
    with mpmath.workprec(160):
        z = mpmath.mpc(tau)
        d = delta_eval(z, 150)
        assert abs(delta_eval(z + 1, 150) - d) <= abs(d) * mpmath.mpf(2) ** -140
        assert abs(delta_eval(-1 / z, 150) - z ** 12 * d) <= abs(z ** 12 * d) * mpmath.mpf(2) ** -140
        # weight -12 homogeneity of the lattice function
        lam = mpmath.mpc(1.3, -0.4)
        assert abs(delta_lattice(lam * z, lam, 150) - lam ** -12 * d) <= abs(d) * mpmath.mpf(2) ** -130


def test_delta_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        delta_eval(-1j)


def test_cm_point():
    P = CMPoint.of_form((2, 1, 3))
    assert P.residual() < mpmath.mpf(10) ** -12


def test_split_ideal():
    order = QuadOrder(-23)
    f = split_ideal(order, 2)
    assert f[0] == 2 and f[1] ** 2 - 4 * f[0] * f[2] == -23
    with pytest.raises(ConfigurationError):
        split_ideal(order, 5)  # inert


@pytest.fixture(scope="module")
def packets():
    order = QuadOrder(-23)
    return {lam: elliptic_unit_conjugates(order, lam) for lam in (2, 3, 13)}


def test_minpoly_is_integral(packets):
    # Delta(a)/Delta(conj(l) a) generates l^12: an l-unit of norm lambda^(12 h)
    for lam, pkt in packets.items():
        P = pkt.minpoly_Q
        assert all(isinstance(c, int) for c in P)
        assert len(P) == 2 * pkt.h + 1 and P[-1] == 1 and abs(P[0]) == lam ** (12 * pkt.h)
        assert pkt.defect < mpmath.mpf(10) ** -10


def test_minpoly_stable_under_precision_doubling(packets):
    pkt = packets[2]
    again = elliptic_unit_conjugates(pkt.order, 2, prec=2 * pkt.prec)
    assert again.minpoly_Q == pkt.minpoly_Q and again.minpoly_K == pkt.minpoly_K


def test_conjugates_are_roots(packets):
    pkt = packets[3]
    with mpmath.workprec(pkt.prec):
        for v in pkt.conj_values:
            val = mpmath.polyval(pkt.minpoly_Q[::-1], v)
            assert abs(val) < mpmath.mpf(2) ** (-pkt.prec // 3) * max(1, abs(v)) ** len(pkt.minpoly_Q)


def test_lambda_independence(packets):
    order = QuadOrder(-23)
    xi = characters_of_order(class_group(order), 3)[0]
    lams = sorted(packets)
    for i, a in enumerate(lams):
        for b in lams[i + 1:]:
            pa, pb = packets[a], packets[b]
            defect = lambda_independence_defect(pa, pb, xi)
            assert defect < mpmath.mpf(2) ** (-min(pa.prec, pb.prec) / 2)


def test_weights_are_integral(packets):
    xi = characters_of_order(class_group(QuadOrder(-23)), 3)[0]
    w = u_xi_weights(packets[2], xi)
    assert len(w) == 3 and all(x.is_integral() for x in w)


def test_io_round_trip(packets):
    pkt = packets[2]
    back = packet_from_json(packet_to_json(pkt))
    assert (back.lam, back.frakl, back.prec) == (pkt.lam, pkt.frakl, pkt.prec)
    assert back.minpoly_Q == pkt.minpoly_Q and back.minpoly_K == pkt.minpoly_K
    with mpmath.workprec(pkt.prec):
        for a, b in zip(back.conj_values, pkt.conj_values):
            assert abs(a - b) <= abs(b) * mpmath.mpf(10) ** -60


def test_reduction_permutes_roots(packets):
    F, labelings = reduced_labelings(packets[2], 11)
    assert len(labelings) == 3
    for lab in labelings:
        assert sorted(lab) == sorted(labelings[0])
        assert all(F.norm_down(x) for x in lab)


def test_regulator_candidates(packets):
    xi = characters_of_order(class_group(QuadOrder(-23)), 3)[0]
    target = (Cyc(3, [2, 2]) * (-18)).mod(5)
    found = {}
    for conv in LOG_CONVENTIONS:
        cands = regulator_mod_p(packets[2], xi, 11, 5, 1, conv)
        assert len(cands) == 6
        found[conv] = [c.choice_index for c in cands if c.coords == target]
    # under the compatible logarithm one choice reproduces -6 m(xi) <Sigma_1,[xi]>
    assert found["compatible"]


def test_regulator_rejects_bad_inputs(packets):
    xi = characters_of_order(class_group(QuadOrder(-23)), 3)[0]
    with pytest.raises(ConfigurationError):
        regulator_mod_p(packets[2], xi, 13, 5)  # split
    with pytest.raises(ConfigurationError):
        regulator_mod_p(packets[2], xi, 11, 5, convention="other")
    with pytest.raises(BadPrimeError):
        reduced_labelings(packets[13], 13)
