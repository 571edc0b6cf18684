"""Exact real-root isolation for rational univariate polynomials.

Polynomials are coefficient lists in ascending order.  Isolation uses Sturm
sequences with bisection at rational points, so every interval reported
is certified to contain exactly one root.
"""

from fractions import Fraction


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def evaluate(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return [k * c for k, c in enumerate(p)][1:]


def divmod_poly(a, b):
    a = [Fraction(c) for c in trim(a)]
    b = [Fraction(c) for c in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a = trim(a)
    return trim(q), a


def gcd_poly(a, b):
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def squarefree(p):
    g = gcd_poly(p, derivative(p))
    if degree(g) <= 0:
        return [Fraction(c) for c in trim(p)]
    q, r = divmod_poly(p, g)
    assert not r
    return q


def sturm_sequence(p):
    seq = [trim([Fraction(c) for c in p])]
    seq.append(derivative(seq[0]))
    while degree(seq[-1]) > 0:
        _, r = divmod_poly(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _variations(seq, x):
    prev = 0
    count = 0
    for p in seq:
        v = evaluate(p, x)
        if v:
            s = 1 if v > 0 else -1
            if prev and s != prev:
                count += 1
            prev = s
    return count


def count_roots(seq, a, b):
    """Distinct roots in ``(a, b]`` (``seq`` from a squarefree polynomial)."""
    return _variations(seq, a) - _variations(seq, b)


def _split_point(p, lo, hi):
    for k in (2, 3, 5, 7, 11, 13):
        for j in range(1, k):
            x = lo + (hi - lo) * Fraction(j, k)
            if evaluate(p, x) != 0:
                return x
    raise ArithmeticError("no root-free split point found")


def isolate(p, lo, hi):
    """Disjoint rational intervals ``(a, b)`` each holding one root of ``p`` in ``(lo, hi)``.

    ``p`` must not vanish at ``lo`` or ``hi``.  Intervals are sorted and
    their endpoints are never roots.
    """
    sf = squarefree(p)
    if degree(sf) <= 0:
        return []
    lo, hi = Fraction(lo), Fraction(hi)
    if evaluate(sf, lo) == 0 or evaluate(sf, hi) == 0:
        raise ValueError("polynomial vanishes at an interval endpoint")
    seq = sturm_sequence(sf)
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = _split_point(sf, a, b)
        stack.append((a, mid))
        stack.append((mid, b))
    return sorted(out)


def refine(p, interval, width):
    """Shrink an isolating interval below ``width``; a midpoint that hits the root collapses it."""
    a, b = interval
    if a == b:
        return interval
    sf = squarefree(p)
    fa = evaluate(sf, a)
    while b - a > width:
        mid = (a + b) / 2
        fm = evaluate(sf, mid)
        if fm == 0:
            return (mid, mid)
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    return (a, b)
