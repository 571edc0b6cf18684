"""Division-free linear algebra over commutative rings.

Entries only need ``+``, ``-`` and ``*``; ``zero``/``one`` are supplied by
the caller so the same code serves integers, Fractions, Laurent
polynomials and the number-field elements used for signatures.
"""


def charpoly(A, zero=0, one=1):
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(t I - A)`` (Berkowitz)."""
    n = len(A)
    if n == 0:
        return [one]
    C = [one, zero - A[0][0]]
    for k in range(1, n):
        R = A[k][:k]
        S = [A[i][k] for i in range(k)]
        q = [one, zero - A[k][k]]
        vec = S
        for _ in range(k):
            s = zero
            for r, v in zip(R, vec):
                s = s + r * v
            q.append(zero - s)
            vec = [_dot(A[i][:k], vec, zero) for i in range(k)]
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(max(0, i - len(q) + 1), min(i, k) + 1):
                s = s + q[i - j] * C[j]
            new.append(s)
        C = new
    return C


def _dot(row, vec, zero):
    s = zero
    for a, b in zip(row, vec):
        s = s + a * b
    return s


def det(A, zero=0, one=1):
    n = len(A)
    if n == 0:
        return one
    c = charpoly(A, zero, one)[n]
    return c if n % 2 == 0 else zero - c


def det_bareiss(A, zero, one, exact_div):
    """Fraction-free Gaussian elimination; ``exact_div(a, b)`` must be exact."""
    M = [list(r) for r in A]
    n = len(M)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if _is_zero(M[k][k], zero):
            swap = next((i for i in range(k + 1, n) if not _is_zero(M[i][k], zero)), None)
            if swap is None:
                return zero
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign > 0 else zero - d


def _is_zero(x, zero):
    return x == zero
