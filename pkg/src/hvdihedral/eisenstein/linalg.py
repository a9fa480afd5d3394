"""Linear systems over Z/ell^t by unit-pivot elimination.

Z/ell^t is a local ring, so every nonzero element is ell^e times a unit. At
each step the pivot is an entry of least valuation in the remaining block;
it divides every other entry there, which makes a Smith-style diagonal form
reachable with row and column operations only.
"""


def _val(a, ell, t):
    if a == 0:
        return t
    v = 0
    while a % ell == 0:
        a //= ell
        v += 1
    return v


class NoSolution(ValueError):
    pass


def smith_solve(A, b, ell, t):
    """Solve A x = b over Z/ell^t.

    Returns (x, exps, kernel) where exps are the ell-valuations of the
    diagonal (capped at t) and kernel is a list of vectors generating the
    solution module of A x = 0. Raises NoSolution if the system is inconsistent.
    """
    mod = ell ** t
    n_rows, n_cols = len(A), len(A[0])
    M = [[a % mod for a in row] for row in A]
    rhs = [v % mod for v in b]
    V = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
    exps = []
    for k in range(min(n_rows, n_cols)):
        best = None
        for i in range(k, n_rows):
            for j in range(k, n_cols):
                if M[i][j]:
                    e = _val(M[i][j], ell, t)
                    if best is None or e < best[0]:
                        best = (e, i, j)
                        if e == 0:
                            break
            if best and best[0] == 0:
                break
        if best is None:
            break
        e, pi, pj = best
        M[k], M[pi] = M[pi], M[k]
        rhs[k], rhs[pi] = rhs[pi], rhs[k]
        for row in M:
            row[k], row[pj] = row[pj], row[k]
        for row in V:
            row[k], row[pj] = row[pj], row[k]
        # scale the pivot row so the pivot is exactly ell^e
        u = pow(M[k][k] // ell ** e, -1, mod)
        M[k] = [a * u % mod for a in M[k]]
        rhs[k] = rhs[k] * u % mod
        piv = ell ** e
        for i in range(n_rows):
            if i != k and M[i][k]:
                f = M[i][k] // piv
                M[i] = [(a - f * c) % mod for a, c in zip(M[i], M[k])]
                rhs[i] = (rhs[i] - f * rhs[k]) % mod
        for j in range(n_cols):
            if j != k and M[k][j]:
                f = M[k][j] // piv
                for row in M:
                    row[j] = (row[j] - f * row[k]) % mod
                for row in V:
                    row[j] = (row[j] - f * row[k]) % mod
        exps.append(e)
    exps += [t] * (n_cols - len(exps))
    # D y = rhs with D = diag(ell^exps); rows past the diagonal must vanish
    for i in range(len(exps), n_rows):
        if rhs[i]:
            raise NoSolution("inconsistent system")
    y = []
    for k, e in enumerate(exps):
        r = rhs[k] if k < n_rows else 0
        if e >= t:
            if r:
                raise NoSolution("inconsistent system")
            y.append(0)
        elif r % ell ** e:
            raise NoSolution("inconsistent system")
        else:
            y.append(r // ell ** e)
    x = [sum(V[i][k] * y[k] for k in range(n_cols)) % mod for i in range(n_cols)]
    kernel = []
    for k, e in enumerate(exps):
        if e > 0:
            step = ell ** (t - e)
            kernel.append([V[i][k] * step % mod for i in range(n_cols)])
    return x, exps, kernel
