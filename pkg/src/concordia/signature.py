"""Seifert matrices, Levine-Tristram signatures and their averages.

For ``w`` on the unit circle the signature is that of the Hermitian matrix
``(1 - w) V + (1 - conj(w)) V^T``.  Two exact evaluation routes exist:

* roots of unity ``w = exp(2 pi i a/n)``: arithmetic in ``Z[zeta_n]``
  modulo the cyclotomic polynomial; signs of the (real) characteristic
  polynomial coefficients are certified numerically with a rigorous error
  bound, after an exact zero test;
* points given by a rational cosine ``c``: dividing by ``1 - c > 0`` leaves
  ``(V + V^T) - j (V - V^T)`` with ``j^2 = -(1 + c)/(1 - c)``, so the
  characteristic polynomial has rational coefficients.

In both cases the characteristic polynomial of a Hermitian matrix is
real-rooted and Descartes' rule counts positive and negative eigenvalues
exactly.

Sign convention: ``convention="paper"`` (the default) reports the negative
of the classical value, so the right-handed trefoil has positive
signatures.  ``convention="classical"`` reports the textbook value.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from . import realroots as rr
from ._exact import charpoly, det
from .errors import (InvalidConfig, InvalidSeifertMatrix, NotPrime, OmegaIsOne,
                     UnknownBuiltin)
from .laurent import LaurentPoly

CONVENTIONS = ("paper", "classical")


def _conv_sign(convention):
    if convention not in CONVENTIONS:
        raise InvalidConfig(f"unknown convention {convention!r}; use 'paper' or 'classical'")
    return -1 if convention == "paper" else 1


# ----------------------------------------------------------------------
# Seifert matrices

def _support_blocks(V):
    n = len(V)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(n):
            if V[i][j] and i != j:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


class SeifertMatrix:
    """Square integer matrix ``V`` with ``det(V - V^T) = 1``."""

    __slots__ = ("V", "_blocks")

    def __init__(self, V):
        try:
            V = tuple(tuple(int(x) for x in row) for row in V)
        except (TypeError, ValueError) as exc:
            raise InvalidSeifertMatrix(f"entries must be integers: {exc}") from None
        n = len(V)
        if any(len(row) != n for row in V):
            raise InvalidSeifertMatrix("matrix must be square")
        if n % 2:
            raise InvalidSeifertMatrix("matrix size must be even")
        blocks = []
        for idx in _support_blocks(V):
            sub = tuple(tuple(V[i][j] for j in idx) for i in idx)
            blocks.append(sub)
        total = 1
        for B in blocks:
            total *= det([[B[i][j] - B[j][i] for j in range(len(B))] for i in range(len(B))])
        if total != 1:
            raise InvalidSeifertMatrix(f"det(V - V^T) = {total}, expected 1")
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "_blocks", tuple(blocks))

    def __setattr__(self, name, value):
        raise AttributeError("SeifertMatrix is immutable")

    @property
    def size(self):
        return len(self.V)

    @property
    def genus(self):
        return len(self.V) // 2

    def blocks(self):
        """Unique diagonal blocks with multiplicities, in a fixed order."""
        counts = {}
        for B in self._blocks:
            counts[B] = counts.get(B, 0) + 1
        return sorted(counts.items())

    def __eq__(self, other):
        return isinstance(other, SeifertMatrix) and self.V == other.V

    def __hash__(self):
        return hash(self.V)

    def __repr__(self):
        return f"SeifertMatrix({[list(r) for r in self.V]})"

    def tolist(self):
        return [list(r) for r in self.V]

    def to_json(self):
        return json.dumps(self.tolist())

    @classmethod
    def parse(cls, text):
        """JSON ``[[a, b], [c, d]]`` or rows separated by ``;`` / newlines."""
        text = text.strip()
        if text.startswith("["):
            try:
                return cls(json.loads(text))
            except json.JSONDecodeError as exc:
                raise InvalidSeifertMatrix(f"bad JSON matrix: {exc}") from None
        rows = [r for r in text.replace(";", "\n").splitlines() if r.strip()]
        try:
            return cls([[int(x) for x in r.replace(",", " ").split()] for r in rows])
        except ValueError as exc:
            raise InvalidSeifertMatrix(f"bad matrix text: {exc}") from None

    def alexander(self):
        """``det(V - x V^T)``, normalized."""
        out = LaurentPoly.one(1)
        for B, mult in self.blocks():
            out = out * _block_alexander(B) ** mult
        return out.normalized()


BUILTINS = {
    "unknot": (),
    "trefoil_rh": ((-1, 1), (0, -1)),
    "trefoil_lh": ((1, -1), (0, 1)),
    "figure8": ((1, 1), (0, -1)),
    "5_2": ((-1, 0), (-1, -2)),
}


def connected_sum(A, B):
    n, k = A.size, B.size
    V = [list(r) + [0] * k for r in A.V] + [[0] * n + list(r) for r in B.V]
    return SeifertMatrix(V)


def block_sum(blocks):
    """Block-diagonal matrix from a list of square blocks (fast path for large sums)."""
    size = sum(len(b) for b in blocks)
    V = [[0] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                V[off + i][off + j] = x
        off += len(b)
    return SeifertMatrix(V)


def builtin(name):
    """Named knot; ``#`` forms connected sums, ``k*name`` repeats a summand."""
    parts = [p.strip() for p in str(name).split("#")]
    blocks = []
    for part in parts:
        count = 1
        if "*" in part:
            k, part = part.split("*", 1)
            try:
                count = int(k)
            except ValueError:
                raise UnknownBuiltin(f"bad multiplicity in {name!r}") from None
            part = part.strip()
            if count < 0:
                raise UnknownBuiltin("multiplicity must be nonnegative")
        if part not in BUILTINS:
            raise UnknownBuiltin(f"unknown builtin {part!r}; known: {', '.join(sorted(BUILTINS))}")
        blocks += [BUILTINS[part]] * count
    return block_sum([b for b in blocks if b])


def trefoil_sum(k, handed="rh"):
    return block_sum([BUILTINS["trefoil_" + handed]] * k)


# ----------------------------------------------------------------------
# evaluation points

@dataclass(frozen=True)
class RootOfUnity:
    """``exp(2 pi i turn)``."""

    turn: Fraction

    def __post_init__(self):
        t = Fraction(self.turn) % 1
        object.__setattr__(self, "turn", t)

    def __str__(self):
        return f"{self.turn}"


@dataclass(frozen=True)
class CosPoint:
    """The point of the upper half circle with rational real part ``c``."""

    c: Fraction

    def __post_init__(self):
        c = Fraction(self.c)
        if not -1 <= c <= 1:
            raise ValueError("cosine must lie in [-1, 1]")
        object.__setattr__(self, "c", c)

    def __str__(self):
        return f"cos:{self.c}"


def parse_omega(point):
    """``"1/3"`` is a root of unity (fraction of a turn); ``"cos:3/4"`` a cosine point."""
    if isinstance(point, (RootOfUnity, CosPoint)):
        return point
    if isinstance(point, (int, Fraction)):
        return RootOfUnity(Fraction(point))
    text = str(point).strip()
    try:
        if text.startswith("cos:"):
            return CosPoint(Fraction(text[4:]))
        return RootOfUnity(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise InvalidConfig(f"cannot read evaluation point {point!r}") from None


# ----------------------------------------------------------------------
# exact arithmetic

@lru_cache(maxsize=None)
def cyclotomic(n):
    """Integer coefficients (ascending) of the ``n``-th cyclotomic polynomial."""
    p = LaurentPoly.from_coeffs([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(LaurentPoly.from_coeffs(cyclotomic(d)))
    return tuple(p.univariate_coeffs()[1])


class _Cyclo:
    """Element of ``Z[zeta_n]`` in the power basis of degree ``phi(n)``."""

    __slots__ = ("n", "c")

    def __init__(self, n, c):
        self.n = n
        self.c = c

    @staticmethod
    def _reduce(n, coeffs):
        phi = cyclotomic(n)
        d = len(phi) - 1
        a = list(coeffs)
        for k in range(len(a) - 1, d - 1, -1):
            f = a[k]
            if f:
                for i, x in enumerate(phi):
                    a[k - d + i] -= f * x
        a = a[:d] + [0] * max(0, d - len(a))
        return tuple(a)

    @classmethod
    def power(cls, n, k):
        a = [0] * (k % n + 1)
        a[k % n] = 1
        return cls(n, cls._reduce(n, a))

    @classmethod
    def const(cls, n, v):
        d = len(cyclotomic(n)) - 1
        return cls(n, (v,) + (0,) * (d - 1))

    def __add__(self, o):
        return _Cyclo(self.n, tuple(a + b for a, b in zip(self.c, o.c)))

    def __sub__(self, o):
        return _Cyclo(self.n, tuple(a - b for a, b in zip(self.c, o.c)))

    def __mul__(self, o):
        if isinstance(o, int):
            return _Cyclo(self.n, tuple(o * a for a in self.c))
        out = [0] * (len(self.c) + len(o.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return _Cyclo(self.n, self._reduce(self.n, out))

    __rmul__ = __mul__

    def sign(self):
        """Sign of the real embedding ``zeta -> exp(2 pi i / n)`` (value assumed real)."""
        if not any(self.c):
            return 0
        bound = sum(abs(a) for a in self.c) + 1
        prec = 80
        while True:
            with mpmath.workprec(prec):
                t = 2 * mpmath.pi / self.n
                v = mpmath.fsum(a * mpmath.cos(t * k) for k, a in enumerate(self.c) if a)
                err = mpmath.mpf(bound) * mpmath.mpf(2) ** (16 - prec)
                if abs(v) > err:
                    return 1 if v > 0 else -1
            prec *= 2
            if prec > 1 << 18:
                raise ArithmeticError("could not certify the sign of a nonzero cyclotomic integer")


class _QJ:
    """``a + b j`` with rational ``a, b`` and ``j^2 = -w``."""

    __slots__ = ("a", "b", "w")

    def __init__(self, a, b, w):
        self.a, self.b, self.w = a, b, w

    def __add__(self, o):
        return _QJ(self.a + o.a, self.b + o.b, self.w)

    def __sub__(self, o):
        return _QJ(self.a - o.a, self.b - o.b, self.w)

    def __mul__(self, o):
        return _QJ(self.a * o.a - self.w * self.b * o.b, self.a * o.b + self.b * o.a, self.w)


def _descartes_signature(coeffs, sign):
    n = len(coeffs) - 1
    signs = [sign(c) for c in coeffs]

    def changes(seq):
        prev = 0
        count = 0
        for s in seq:
            if s:
                if prev and s != prev:
                    count += 1
                prev = s
        return count

    pos = changes(signs)
    neg = changes([s * (-1) ** (n - k) for k, s in enumerate(signs)])
    return pos - neg


@lru_cache(maxsize=4096)
def _block_sig_root(B, turn):
    n = turn.denominator
    a = turn.numerator
    one = _Cyclo.const(n, 1)
    zero = _Cyclo.const(n, 0)
    z = _Cyclo.power(n, a)
    zbar = _Cyclo.power(n, -a)
    p, q = one - z, one - zbar
    size = len(B)
    H = [[p * B[i][j] + q * B[j][i] for j in range(size)] for i in range(size)]
    return _descartes_signature(charpoly(H, zero, one), lambda x: x.sign())


@lru_cache(maxsize=4096)
def _block_sig_cos(B, c):
    w = (1 + c) / (1 - c)
    size = len(B)
    zero, one = _QJ(Fraction(0), Fraction(0), w), _QJ(Fraction(1), Fraction(0), w)
    H = [[_QJ(Fraction(B[i][j] + B[j][i]), Fraction(-(B[i][j] - B[j][i])), w)
          for j in range(size)] for i in range(size)]
    coeffs = charpoly(H, zero, one)
    if any(x.b for x in coeffs):
        raise ArithmeticError("characteristic polynomial is not real")
    return _descartes_signature([x.a for x in coeffs], lambda x: (x > 0) - (x < 0))


def lt_signature(V, omega, convention="paper"):
    """Levine-Tristram signature at ``omega`` (``RootOfUnity``, ``CosPoint`` or turn)."""
    s = _conv_sign(convention)
    omega = parse_omega(omega)
    if isinstance(omega, RootOfUnity):
        if omega.turn == 0:
            raise OmegaIsOne("the signature is not evaluated at 1")
        return s * sum(m * _block_sig_root(B, omega.turn) for B, m in V.blocks())
    if omega.c == 1:
        raise OmegaIsOne("the signature is not evaluated at 1")
    return s * sum(m * _block_sig_cos(B, omega.c) for B, m in V.blocks())


# ----------------------------------------------------------------------
# profiles

@lru_cache(maxsize=1024)
def _block_alexander(B):
    x = LaurentPoly.var(0, 1)
    M = [[LaurentPoly.const(B[i][j], 1) - x * B[j][i] for j in range(len(B))]
         for i in range(len(B))]
    return det(M, LaurentPoly.zero(1), LaurentPoly.one(1))


def _symmetric_to_s(delta):
    """Integer polynomial ``P`` with ``x^-d Delta(x) = P(x + 1/x)`` (ascending)."""
    if delta.is_zero():
        raise ValueError("Alexander polynomial vanishes")
    _, a = delta.normalized().univariate_coeffs()
    deg = len(a) - 1
    if deg % 2 or any(a[k] != a[deg - k] for k in range(deg + 1)):
        raise ValueError("Alexander polynomial is not symmetric")
    d = deg // 2
    D = [[2], [0, 1]]
    for k in range(2, d + 1):
        nxt = [0] + D[-1]
        prev = D[-2] + [0] * (len(nxt) - len(D[-2]))
        D.append([u - v for u, v in zip(nxt, prev)])
    out = [0] * (d + 1)
    out[0] = a[d]
    for k in range(1, d + 1):
        for i, c in enumerate(D[k]):
            out[i] += a[d + k] * c
    return out


def _to_fraction(x):
    man, exp = x.man_exp
    return Fraction(int(man) * 2 ** exp) if exp >= 0 else Fraction(int(man), 2 ** (-exp))


_PAD = Fraction(1, 10 ** 40)


def _turn_enclosure(s_lo, s_hi):
    with mpmath.workdps(60):
        two_pi = 2 * mpmath.pi
        lo = mpmath.acos(mpmath.mpf(s_hi.numerator) / s_hi.denominator / 2) / two_pi
        hi = mpmath.acos(mpmath.mpf(s_lo.numerator) / s_lo.denominator / 2) / two_pi
        return _to_fraction(lo) - _PAD, _to_fraction(hi) + _PAD


@dataclass(frozen=True)
class Jump:
    """A jump point on the upper half circle, as a fraction of a full turn.

    ``turn`` is exact when the point is a root of unity.  Otherwise the
    point is the unique root of the profile polynomial (in ``s = 2 cos``)
    inside ``(s_lo, s_hi)`` and ``lo <= turn <= hi`` encloses it.
    """

    s_lo: Fraction
    s_hi: Fraction
    lo: Fraction
    hi: Fraction
    turn: Fraction = None

    @property
    def exact(self):
        return self.turn is not None

    def approx(self):
        return float(self.turn) if self.exact else float((self.lo + self.hi) / 2)

    def label(self, mirror=False):
        if self.exact:
            return str(1 - self.turn if mirror else self.turn)
        v = 1 - self.approx() if mirror else self.approx()
        return f"{v:.15f}"


@dataclass
class SignatureProfile:
    """Piecewise-constant signature on the circle, stored on the upper half.

    ``jumps`` are sorted by turn in ``(0, 1/2)``; ``plateaus[k]`` is the value
    on the open arc between jump ``k-1`` and jump ``k`` (with 0 and 1/2 as
    outer ends), and the lower half mirrors the upper half.
    """

    matrix: SeifertMatrix
    poly: list
    jumps: list
    plateaus: list
    convention: str = "paper"

    def _refine(self, k, width):
        j = self.jumps[k]
        if j.exact:
            return j
        s_lo, s_hi = rr.refine(self.poly, (j.s_lo, j.s_hi), width)
        lo, hi = _turn_enclosure(s_lo, s_hi)
        j = Jump(s_lo, s_hi, max(lo, j.lo), min(hi, j.hi))
        self.jumps[k] = j
        return j

    def locate(self, turn):
        """``('arc', index)`` or ``('jump', index)`` for an upper-half turn."""
        for k in range(len(self.jumps)):
            j = self.jumps[k]
            if j.exact:
                if turn == j.turn:
                    return ("jump", k)
                if turn < j.turn:
                    return ("arc", k)
                continue
            width = Fraction(1, 2 ** 20)
            while j.lo <= turn <= j.hi:
                j = self._refine(k, width)
                width /= 2 ** 20
            if turn < j.lo:
                return ("arc", k)
        return ("arc", len(self.jumps))

    def value_at(self, omega):
        omega = parse_omega(omega)
        if isinstance(omega, CosPoint):
            return lt_signature(self.matrix, omega, self.convention)
        t = omega.turn
        if t == 0:
            raise OmegaIsOne("the signature is not evaluated at 1")
        u = min(t, 1 - t)
        kind, k = self.locate(u)
        if kind == "jump":
            return lt_signature(self.matrix, omega, self.convention)
        return self.plateaus[k]

    def arcs(self):
        """Full-circle arcs ``(start_label, end_label, value)`` in increasing turn order."""
        upper = [("0", None)] + [(j.label(), j) for j in self.jumps]
        out = []
        for k, (start, _) in enumerate(upper):
            end = self.jumps[k].label() if k < len(self.jumps) else None
            out.append([start, end, self.plateaus[k]])
        # middle arc crosses 1/2
        last = out.pop()
        mirror_start = [(self.jumps[k].label(mirror=True)) for k in reversed(range(len(self.jumps)))]
        mid_end = mirror_start[0] if mirror_start else "1"
        out.append([last[0], mid_end, last[2]])
        for i, k in enumerate(reversed(range(len(self.jumps)))):
            end = self.jumps[k - 1].label(mirror=True) if k > 0 else "1"
            out.append([mirror_start[i], end, self.plateaus[k]])
        return [tuple(a) for a in out]

    def to_csv(self):
        lines = ["start_turn,end_turn,value"]
        lines += [f"{a},{b},{v}" for a, b, v in self.arcs()]
        return "\n".join(lines) + "\n"

    def to_svg(self, width=480, height=200):
        arcs = self.arcs()
        vals = [v for _, _, v in arcs] + [0]
        top, bot = max(vals), min(vals)
        span = max(top - bot, 1)

        def X(label):
            return 20 + (width - 40) * float(Fraction(label))

        def Y(v):
            return 20 + (height - 40) * (top - v) / span

        pts = []
        for a, b, v in arcs:
            pts.append(f"{X(a):.2f},{Y(v):.2f}")
            pts.append(f"{X(b):.2f},{Y(v):.2f}")
        return (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">'
                f'<line x1="20" y1="{Y(0):.2f}" x2="{width - 20}" y2="{Y(0):.2f}" stroke="#999"/>'
                f'<polyline fill="none" stroke="black" points="{" ".join(pts)}"/></svg>\n')

    def values(self):
        return list(self.plateaus)


@lru_cache(maxsize=256)
def _block_cyclotomic_turns(B):
    delta = _block_alexander(B).normalized()
    deg = delta.total_degree_span()
    turns = set()
    n = 3
    limit = max(6, 2 * deg * deg + 2)
    while n <= limit:
        phi = LaurentPoly.from_coeffs(cyclotomic(n))
        if len(cyclotomic(n)) - 1 <= deg and phi.divides(delta):
            for k in range(1, (n + 1) // 2):
                if gcd(k, n) == 1:
                    turns.add(Fraction(k, n))
        n += 1
    return frozenset(turns)



_RATIONAL_S = {Fraction(1, 6): Fraction(1), Fraction(1, 4): Fraction(0), Fraction(1, 3): Fraction(-1)}


def _match_root_of_unity(poly, jumps, t):
    """Mark the jump whose isolating interval holds ``2 cos(2 pi t)`` as exact."""
    if t in _RATIONAL_S:
        s = _RATIONAL_S[t]
        for k, j in enumerate(jumps):
            if j.s_lo <= s <= j.s_hi and not j.exact:
                jumps[k] = Jump(j.s_lo, j.s_hi, t, t, t)
                return
        raise ArithmeticError(f"root of unity {t} not matched to an isolating interval")
    with mpmath.workdps(80):
        sval = 2 * mpmath.cos(2 * mpmath.pi * t.numerator / t.denominator)
        margin = mpmath.mpf(10) ** -60
        for k, j in enumerate(jumps):
            if j.exact:
                continue
            while True:
                lo = mpmath.mpf(j.s_lo.numerator) / j.s_lo.denominator
                hi = mpmath.mpf(j.s_hi.numerator) / j.s_hi.denominator
                if lo + margin < sval < hi - margin:
                    jumps[k] = Jump(j.s_lo, j.s_hi, t, t, t)
                    return
                if sval < lo - margin or sval > hi + margin or j.s_lo == j.s_hi:
                    break
                s_lo, s_hi = rr.refine(poly, (j.s_lo, j.s_hi), (j.s_hi - j.s_lo) / 4)
                j = Jump(s_lo, s_hi, *_turn_enclosure(s_lo, s_hi))
                jumps[k] = j
    raise ArithmeticError(f"root of unity {t} not matched to an isolating interval")


def signature_profile(V, convention="paper"):
    sgn = _conv_sign(convention)
    blocks = V.blocks()
    poly = [Fraction(1)]
    exact_turns = set()
    for B, _ in blocks:
        P = _symmetric_to_s(_block_alexander(B))
        poly = _poly_mul(poly, rr.squarefree(P))
        exact_turns |= _block_cyclotomic_turns(B)
    poly = rr.squarefree(poly)
    intervals = rr.isolate(poly, -2, 2) if rr.degree(poly) > 0 else []
    # keep samples away from s = +-2
    for k, (a, b) in enumerate(intervals):
        while a != b and (a == -2 or b == 2):
            a, b = rr.refine(poly, (a, b), (b - a) / 2)
        intervals[k] = (a, b)
    # descending s is ascending turn
    intervals = sorted(intervals, key=lambda iv: iv[0], reverse=True)
    jumps = [Jump(a, b, *_turn_enclosure(a, b)) for a, b in intervals]
    for t in sorted(exact_turns):
        _match_root_of_unity(poly, jumps, t)
    samples = []
    edges = [Fraction(2)] + [x for iv in intervals for x in (iv[1], iv[0])] + [Fraction(-2)]
    for k in range(len(intervals) + 1):
        hi, lo = edges[2 * k], edges[2 * k + 1]
        samples.append((hi + lo) / 2)
    plateaus = []
    for s in samples:
        c = s / 2
        plateaus.append(sgn * sum(m * _block_sig_cos(B, c) for B, m in blocks))
    return SignatureProfile(V, poly, jumps, plateaus, convention)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# ----------------------------------------------------------------------
# rho invariants

@dataclass(frozen=True)
class RhoValue:
    """An averaged signature.

    ``kind`` is ``"ZpAverage"`` (with ``p``) or ``"CircleIntegral"``.  When
    ``exact`` is false, ``value`` is the midpoint of the certified
    enclosure ``[lo, hi]``.
    """

    kind: str
    value: Fraction
    exact: bool = True
    lo: Fraction = None
    hi: Fraction = None
    p: int = None

    def __post_init__(self):
        if self.lo is None:
            object.__setattr__(self, "lo", self.value)
        if self.hi is None:
            object.__setattr__(self, "hi", self.value)

    def __float__(self):
        return float(self.value)

    def to_json(self):
        def frac(x):
            return {"num": x.numerator, "den": x.denominator}
        out = {"kind": self.kind, "value": frac(self.value), "exact": self.exact,
               "enclosure": [frac(self.lo), frac(self.hi)]}
        if self.p is not None:
            out["p"] = self.p
        return out


def is_prime(p):
    if not isinstance(p, int) or p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def rho_zp(V, p, convention="paper", profile=None):
    """Average of the signature over the ``p``-th roots of unity (the value at 1 counts as 0)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    profile = profile or signature_profile(V, convention)
    total = sum(profile.value_at(Fraction(r, p)) for r in range(1, p))
    return RhoValue("ZpAverage", Fraction(total, p), p=p)


def rho_zp_direct(V, p, convention="paper"):
    """Same average from independent direct evaluations at each root."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    total = sum(lt_signature(V, RootOfUnity(Fraction(r, p)), convention) for r in range(1, p))
    return RhoValue("ZpAverage", Fraction(total, p), p=p)


def rho_integral(V, convention="paper", tol=Fraction(1, 10 ** 12), profile=None):
    """Integral of the signature over the circle normalized to length one."""
    prof = profile or signature_profile(V, convention)
    v = prof.plateaus
    K = len(prof.jumps)
    const = Fraction(v[K], 2)
    coeffs = [v[k - 1] - v[k] for k in range(1, K + 1)]

    def bounds():
        lo = hi = const
        for c, j in zip(coeffs, prof.jumps):
            a, b = (j.turn, j.turn) if j.exact else (j.lo, j.hi)
            lo += min(c * a, c * b)
            hi += max(c * a, c * b)
        return 2 * lo, 2 * hi

    lo, hi = bounds()
    width = Fraction(1, 2 ** 30)
    while hi - lo > tol:
        for k, j in enumerate(prof.jumps):
            if not j.exact and coeffs[k]:
                prof._refine(k, width)
        width /= 2 ** 20
        lo, hi = bounds()
    exact = lo == hi
    return RhoValue("CircleIntegral", (lo + hi) / 2, exact, lo, hi)


def arf(V):
    """Arf invariant from ``Delta(-1) = det(V + V^T)``."""
    d = 1
    for B, m in V.blocks():
        d *= det([[B[i][j] + B[j][i] for j in range(len(B))] for i in range(len(B))]) ** m
    return 0 if abs(d) % 8 in (1, 7) else 1
