"""High-precision complex helpers: polynomial expansion and algebraic recognition.

Complex numbers are mpmath ``mpc`` values; callers set the working precision
with ``mpmath.workprec``.
"""
import mpmath


class PrecisionError(ArithmeticError):
    """Rounding to an algebraic integer was not reliable at the working precision."""

    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


def expand_roots(roots):
    """Coefficients (low degree first) of prod (X - r)."""
    coeffs = [mpmath.mpc(1)]
    for r in roots:
        nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= r * c
        coeffs = nxt
    return coeffs


def round_integer(z):
    """Nearest rational integer and the rounding defect (including any imaginary part)."""
    n = int(mpmath.nint(mpmath.re(z)))
    defect = max(abs(mpmath.re(z) - n), abs(mpmath.im(z)))
    return n, defect


def min_poly_from_roots(roots):
    """Integer polynomial prod (X - r) by coefficientwise rounding.

    Returns (coeffs, defect) with coeffs low degree first. Raises
    PrecisionError if any coefficient is at least 1/2 away from an integer.
    """
    coeffs = expand_roots(roots)
    out = []
    defect = mpmath.mpf(0)
    for c in coeffs:
        n, d = round_integer(c)
        out.append(n)
        defect = max(defect, d)
    if defect >= 0.5:
        raise PrecisionError(f"rounding defect {mpmath.nstr(defect, 5)} too large", defect)
    return out, defect


def round_quadratic_integer(z, omega):
    """Write z ~ a + b*omega with integers a, b (omega non-real). Returns ((a, b), defect)."""
    b_real = mpmath.im(z) / mpmath.im(omega)
    b = int(mpmath.nint(b_real))
    a_real = mpmath.re(z) - b * mpmath.re(omega)
    a = int(mpmath.nint(a_real))
    defect = max(abs(b_real - b), abs(a_real - a))
    return (a, b), defect


def poly_over_quadratic(coeffs, omega):
    """Round complex coefficients into Z[omega]; returns (list of (a, b), defect)."""
    out = []
    defect = mpmath.mpf(0)
    for c in coeffs:
        ab, d = round_quadratic_integer(c, omega)
        out.append(ab)
        defect = max(defect, d)
    if defect >= 0.5:
        raise PrecisionError(f"rounding defect {mpmath.nstr(defect, 5)} too large", defect)
    return out, defect
