"""Independent reference computations (sympy / numpy), used only by tests.

Nothing here imports the library's algebra: diagrams are read from their
raw crossing tuples and component edge orders, and everything downstream
is recomputed from scratch.
"""

import itertools

import numpy as np
import sympy as sp


def _next_edge(components):
    nxt = {}
    for comp in components:
        for a, b in zip(comp, comp[1:] + comp[:1]):
            nxt[a] = b
    return nxt


def crossing_signs(crossings, components):
    """+1 when the over-strand runs from slot 3 to slot 1.

    An edge that enters some crossing at slot 0 ends there, and one that
    leaves at slot 2 starts there; otherwise the component order decides.
    """
    heads = {X[0] for X in crossings}
    tails = {X[2] for X in crossings}
    nxt = _next_edge(components)
    out = []
    for a, b, c, d in crossings:
        if b in heads or d in tails:
            out.append(1)
        elif b in tails or d in heads:
            out.append(-1)
        elif nxt.get(d) == b and nxt.get(b) != d:
            out.append(1)
        elif nxt.get(b) == d and nxt.get(d) != b:
            out.append(-1)
        else:
            out.append(None)
    return out


def linking_numbers(crossings, components):
    comp_of = {e: k for k, comp in enumerate(components) for e in comp}
    m = len(components)
    L = [[0] * m for _ in range(m)]
    for (a, b, c, d), s in zip(crossings, crossing_signs(crossings, components)):
        i, j = comp_of[a], comp_of[b]
        if i != j:
            L[i][j] += s
            L[j][i] += s
    return [[x // 2 for x in row] for row in L]


def _arcs(crossings, components):
    parent = {e: e for comp in components for e in comp}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b, c, d in crossings:
        parent[find(b)] = find(d)
    roots = sorted({find(e) for e in parent})
    index = {r: k for k, r in enumerate(roots)}
    return {e: index[find(e)] for e in parent}, len(roots)


def _fox_row(word, n, image):
    """Abelianized Fox derivatives of a word given as (generator, +-1) letters."""
    row = [sp.Integer(0)] * n
    prefix = sp.Integer(1)
    for g, e in word:
        if e > 0:
            row[g] += prefix
            prefix *= image[g]
        else:
            prefix /= image[g]
            row[g] -= prefix
    return row


def alexander_matrix(crossings, components):
    """Fox matrix of the Wirtinger presentation, plus the arc-to-component map."""
    arc_of, n = _arcs(crossings, components)
    comp_of = {e: k for k, comp in enumerate(components) for e in comp}
    xs = sp.symbols(f"x1:{len(components) + 1}")
    arc_comp = {}
    for e, a in arc_of.items():
        arc_comp[a] = comp_of[e]
    image = [xs[arc_comp[a]] for a in range(n)]
    rows = []
    for (a, b, c, d), s in zip(crossings, crossing_signs(crossings, components)):
        xi, xo, xj = arc_of[a], arc_of[b], arc_of[c]
        # x_j = x_o^-s x_i x_o^s
        word = [(xj, -1), (xo, -s), (xi, 1), (xo, s)]
        rows.append(_fox_row(word, n, image))
    return sp.Matrix(rows), arc_comp, xs


def _clear(expr, xs):
    num, den = sp.fraction(sp.together(sp.expand(expr)))
    return sp.Poly(sp.expand(num), *xs), sp.Poly(den, *xs)


def normalize(expr, xs):
    """Canonical representative up to sign and monomials, as a Poly."""
    if expr == 0:
        return sp.Poly(0, *xs)
    num, den = _clear(expr, xs)
    if not den.is_monomial:
        q, r = sp.div(num, den)
        assert r.is_zero
        num = q
    terms = num.terms()
    low = [min(m[i] for m, _ in terms) for i in range(len(xs))]
    shifted = sp.Poly(sum(c * sp.Mul(*[x ** (m[i] - low[i]) for i, x in enumerate(xs)])
                          for m, c in terms), *xs)
    lead = sorted(shifted.terms())[0][1]
    return shifted if lead > 0 else -shifted


def alexander_polynomial(crossings, components):
    """Brute force: gcd of all maximal minors with one column deleted, corrected for m >= 2."""
    M, arc_comp, xs = alexander_matrix(crossings, components)
    n = M.shape[1]
    col = 0
    sub = M[:, [k for k in range(n) if k != col]]
    g = sp.Integer(0)
    for rows in itertools.combinations(range(M.shape[0]), n - 1):
        minor = sub.extract(list(rows), list(range(n - 1))).det(method="berkowitz")
        num, _ = _clear(minor, xs)
        g = sp.gcd(g, num.as_expr())
    if len(components) >= 2 and g != 0:
        g = sp.cancel(g / (xs[arc_comp[col]] - 1))
    return normalize(g, xs), xs


def laurent_to_poly(p, xs):
    expr = sum(c * sp.Mul(*[x ** k for x, k in zip(xs, mono)]) for mono, c in p.terms.items())
    return normalize(expr, xs)


# ----------------------------------------------------------------------
# signatures

def lt_signature_numeric(V, turn, convention="paper"):
    V = np.array(V, dtype=float)
    w = np.exp(2j * np.pi * float(turn))
    H = (1 - w) * V + (1 - np.conj(w)) * V.T
    ev = np.linalg.eigvalsh(H)
    tol = 1e-9 * max(1.0, np.abs(ev).max(initial=0))
    sig = int((ev > tol).sum() - (ev < -tol).sum())
    return -sig if convention == "paper" else sig


def rho_integral_numeric(V, samples=20000):
    """Midpoint rule for the normalized circle integral."""
    ts = (np.arange(samples) + 0.5) / samples
    return float(np.mean([lt_signature_numeric(V, t) for t in ts]))


def snf_diagonal(A):
    from sympy.matrices.normalforms import smith_normal_form
    D = smith_normal_form(sp.Matrix(A), domain=sp.ZZ)
    return [abs(int(D[i, i])) for i in range(min(D.shape))]
