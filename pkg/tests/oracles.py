"""Independent reference computations used by the tests."""
from math import gcd

import mpmath


def eta_product_coeffs(a, b, N):
    """q-expansion coefficients 0..N of eta(a z) eta(b z), from the product directly."""
    def eta_part(k):
        # prod_{n >= 1} (1 - q^{k n}) truncated at N
        poly = [0] * (N + 1)
        poly[0] = 1
        for n in range(1, N // k + 1):
            step = k * n
            for i in range(N, step - 1, -1):
                poly[i] -= poly[i - step]
        return poly

    pa, pb = eta_part(a), eta_part(b)
    prod = [sum(pa[i] * pb[n - i] for i in range(n + 1)) for n in range(N + 1)]
    shift = (a + b) // 24  # q^{(a+b)/24} is an integral power exactly when 24 | a + b
    assert (a + b) % 24 == 0
    return [0] * shift + prod[:N + 1 - shift]


def delta_q_product(z, prec=200):
    """Delta(z) = q prod (1 - q^n)^24 via mpmath's q-Pochhammer."""
    with mpmath.workprec(prec):
        q = mpmath.exp(2j * mpmath.pi * z)
        return q * mpmath.qp(q) ** 24


def brute_reduced_forms(D):
    """Reduced primitive forms of discriminant D < 0 by direct search."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                out.append((a, b, c))
        a += 1
    return sorted(out)


def brute_reps(f, N):
    """r_f(n) for 0 <= n <= N by a box search."""
    a, b, c = f
    r = [0] * (N + 1)
    B = int(2 * (N + 1) ** 0.5) + 2
    for x in range(-B, B + 1):
        for y in range(-B, B + 1):
            v = a * x * x + b * x * y + c * y * y
            if v <= N:
                r[v] += 1
    return r
