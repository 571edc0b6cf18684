"""Integer Laurent polynomials in ``m`` variables.

``LaurentPoly`` is immutable.  Exponent vectors are tuples; coefficients are
Python ints and zero coefficients are never stored.  Multivariable gcd works
over ``Z[x_1, ..., x_m]`` by the recursive content / primitive-part method
with a primitive pseudo-remainder sequence in the last variable.
"""

import json
import re
from fractions import Fraction
from math import gcd as igcd
from operator import add, sub

from .errors import MalformedPolynomial


# ----------------------------------------------------------------------
# dict-level polynomial helpers (nonnegative exponents unless noted)

def _add_into(out, poly, scale=1, shift=None):
    for e, c in poly.items():
        if shift is not None:
            e = tuple(map(add, e, shift))
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a, b):
    out = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(map(add, ea, eb))
            v = get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _div_exact(a, b):
    """Quotient ``a / b`` if exact over the integers, else ``None``."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    lead_b = max(b)
    cb = b[lead_b]
    r = dict(a)
    q = {}
    while r:
        lead = max(r)
        diff = tuple(map(sub, lead, lead_b))
        if diff and min(diff) < 0:
            return None
        cr = r[lead]
        if cr % cb:
            return None
        k = cr // cb
        q[diff] = k
        _add_into(r, b, -k, diff)
    return q


def _icontent(a):
    g = 0
    for c in a.values():
        g = igcd(g, c)
    return g


def _split(a, v):
    """View ``a`` as a polynomial in variable ``v``: degree -> coefficient poly."""
    out = {}
    for e, c in a.items():
        d = e[v]
        key = e[:v] + (0,) + e[v + 1:]
        out.setdefault(d, {})[key] = c
    return out


def _join(parts, v):
    out = {}
    for d, poly in parts.items():
        for e, c in poly.items():
            out[e[:v] + (d,) + e[v + 1:]] = c
    return out


def _lead_sign(a):
    return 1 if a[max(a)] > 0 else -1


def _gcd(a, b, n):
    if not a and not b:
        return {}
    if not a:
        return b if _lead_sign(b) > 0 else {e: -c for e, c in b.items()}
    if not b:
        return a if _lead_sign(a) > 0 else {e: -c for e, c in a.items()}
    used = [i for i in range(n) if any(e[i] for e in a) or any(e[i] for e in b)]
    if not used:
        return {(0,) * n: igcd(_icontent(a), _icontent(b))}
    v = used[-1]
    A, B = _split(a, v), _split(b, v)
    ca, cb = _ucontent(A, n), _ucontent(B, n)
    c = _gcd(ca, cb, n)
    pa = {d: _div_exact(p, ca) for d, p in A.items()}
    pb = {d: _div_exact(p, cb) for d, p in B.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb)
        pa, pb = pb, (_uprimitive(r, n) if r else {})
    g = _uprimitive(pa, n)
    out = _mul(c, _join(g, v))
    return out if _lead_sign(out) > 0 else {e: -x for e, x in out.items()}


def _ucontent(U, n):
    g = {}
    for p in U.values():
        g = _gcd(g, p, n)
        if len(g) == 1 and abs(next(iter(g.values()))) == 1 and not any(next(iter(g))):
            break
    return g


def _uprimitive(U, n):
    c = _ucontent(U, n)
    out = {d: _div_exact(p, c) for d, p in U.items()}
    lead = out[max(out)]
    if _lead_sign(lead) < 0:
        out = {d: {e: -x for e, x in p.items()} for d, p in out.items()}
    return out


def _prem(A, B):
    db = max(B)
    lcb = B[db]
    r = {d: dict(p) for d, p in A.items()}
    while r and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        new = {}
        for d, p in r.items():
            new[d] = _mul(lcb, p)
        for d, p in B.items():
            dd = d + dr - db
            cur = new.get(dd, {})
            cur = dict(cur)
            _add_into(cur, _mul(lcr, p), -1)
            new[dd] = cur
        r = {d: p for d, p in new.items() if p}
    return r


# ----------------------------------------------------------------------

class LaurentPoly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms, nvars):
        t = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = int(c)
            if c:
                t[e] = t.get(e, 0) + c
                if not t[e]:
                    del t[e]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", t)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def _raw(cls, terms, nvars):
        obj = object.__new__(cls)
        object.__setattr__(obj, "nvars", nvars)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars):
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c, nvars):
        return cls._raw({(0,) * nvars: int(c)} if c else {}, nvars)

    @classmethod
    def one(cls, nvars):
        return cls.const(1, nvars)

    @classmethod
    def monomial(cls, exps, coeff=1):
        exps = tuple(int(x) for x in exps)
        return cls._raw({exps: int(coeff)} if coeff else {}, len(exps))

    @classmethod
    def var(cls, i, nvars, power=1):
        """``x_{i+1}^power`` (``i`` 0-based)."""
        e = [0] * nvars
        e[i] = power
        return cls.monomial(e)

    @classmethod
    def from_coeffs(cls, coeffs, nvars=1, var=0, low=0):
        """Univariate convenience: ``coeffs[k]`` multiplies ``x^(low + k)``."""
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * nvars
                e[var] = low + k
                terms[tuple(e)] = int(c)
        return cls._raw(terms, nvars)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(_add_into(dict(self.terms), other.terms), self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(_add_into(dict(self.terms), other.terms, -1), self.nvars)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(_mul(self.terms, other.terms), self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have inverses")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have inverses")
            return LaurentPoly.monomial(tuple(-x * (-k) for x in e), c ** (-k))
        out = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, frozenset(self.terms.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r}, nvars={self.nvars})"

    def __str__(self):
        return self.to_text()

    # structure ------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def is_unit(self):
        """True for ``± x^a`` (the units of the Laurent ring)."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def min_exponents(self):
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self):
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def shift(self, exps):
        """Multiply by the monomial ``x^exps``."""
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}, self.nvars)

    def _as_poly(self):
        """(poly dict with nonnegative exponents, shift)."""
        lo = self.min_exponents()
        return {tuple(a - b for a, b in zip(e, lo)): c for e, c in self.terms.items()}, lo

    def normalized(self):
        """Canonical associate: min exponents 0, lex-smallest coefficient positive."""
        if not self.terms:
            return self
        p, _ = self._as_poly()
        if p[min(p)] < 0:
            p = {e: -c for e, c in p.items()}
        return LaurentPoly._raw(p, self.nvars)

    def equal_up_to_units(self, other):
        return self.normalized() == other.normalized()

    def unit_factor(self, other):
        """The unit ``u`` with ``self == u * other``, or ``None``."""
        if self.is_zero() or other.is_zero():
            return LaurentPoly.one(self.nvars) if self.is_zero() and other.is_zero() else None
        if self.normalized() != other.normalized():
            return None
        ls, lo = min(self.terms), min(other.terms)
        sign = 1 if (self.terms[ls] > 0) == (other.terms[lo] > 0) else -1
        return LaurentPoly.monomial(tuple(a - b for a, b in zip(ls, lo)), sign)

    def content(self):
        return _icontent(self.terms)

    def total_degree_span(self):
        p, _ = self._as_poly()
        return max((sum(e) for e in p), default=0)

    # evaluation -------------------------------------------------------------
    def evaluate(self, values):
        """Exact value at a point (ints or Fractions; negative powers allowed)."""
        values = list(values)
        total = 0
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, k in zip(values, e):
                if k:
                    term *= Fraction(v) ** k
            total += term
        return int(total) if total.denominator == 1 else total

    def augmentation(self):
        """Value at ``(1, ..., 1)``."""
        return sum(self.terms.values())

    def specialize(self, i, value=1):
        """Substitute ``x_{i+1} = value`` (an integer unit ±1), keeping nvars."""
        if value not in (1, -1):
            raise ValueError("specialize only to units")
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out[ne] = out.get(ne, 0) + c * (value ** (k % 2) if value == -1 else 1)
        return LaurentPoly({e: c for e, c in out.items() if c}, self.nvars)

    def substitute_monomials(self, images, nvars):
        """Ring map sending ``x_i`` to the monomial exponent vector ``images[i]``."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for k, img in zip(e, images):
                if k:
                    for j, a in enumerate(img):
                        ne[j] += k * a
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        return LaurentPoly({e: c for e, c in out.items() if c}, nvars)

    def project(self, keep):
        """Drop variables not in ``keep`` (0-based); they must not occur."""
        keep = list(keep)
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in range(self.nvars) if i not in keep):
                raise ValueError("cannot drop a variable that occurs")
            out[tuple(e[i] for i in keep)] = c
        return LaurentPoly._raw(out, len(keep))

    def univariate_coeffs(self, var=0):
        """(low exponent, dense coefficient list) for a univariate view."""
        if any(any(e[i] for i in range(self.nvars) if i != var) for e in self.terms):
            raise ValueError("polynomial involves other variables")
        if not self.terms:
            return 0, []
        lo = min(e[var] for e in self.terms)
        hi = max(e[var] for e in self.terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in self.terms.items():
            coeffs[e[var] - lo] = c
        return lo, coeffs

    # division -----------------------------------------------------------
    def exact_div(self, other):
        """``self / other`` in the Laurent ring; raises ValueError if not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.is_zero():
            return self
        a, sa = self._as_poly()
        b, sb = other._as_poly()
        q = _div_exact(a, b)
        if q is None:
            raise ValueError("division is not exact")
        return LaurentPoly._raw(q, self.nvars).shift(tuple(x - y for x, y in zip(sa, sb)))

    def divides(self, other):
        if self.is_zero():
            return other.is_zero()
        try:
            other.exact_div(self)
        except ValueError:
            return False
        return True

    # text / json ----------------------------------------------------------
    def to_text(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = []
            for name, k in zip(names, e):
                if k == 1:
                    mono.append(name)
                elif k:
                    mono.append(f"{name}^{k}")
            body = "*".join(mono)
            mag = abs(c)
            if not body:
                term = str(mag)
            elif mag == 1:
                term = body
            else:
                term = f"{mag}*{body}"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)

    def to_json(self):
        return {"nvars": self.nvars,
                "terms": [[list(e), c] for e, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls({tuple(e): c for e, c in obj["terms"]}, obj["nvars"])


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*((?:x\d+(?:\^-?\d+)?\s*\*?\s*)*)")
_FACTOR = re.compile(r"x(\d+)(?:\^(-?\d+))?")


def parse_laurent(text, nvars=None):
    """Parse ``3*x1^2*x2^-1 - x2 + 1``; variables are named ``x1 .. xm``."""
    src = text.strip()
    if not src:
        raise MalformedPolynomial("empty polynomial")
    if src == "0":
        return LaurentPoly.zero(nvars or 1)
    pos = 0
    raw = []
    top = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise MalformedPolynomial(f"cannot parse at column {pos + 1}: {src[pos:]!r}")
        sign, num, star, mono = m.groups()
        if raw and sign is None:
            raise MalformedPolynomial(f"missing operator at column {pos + 1}")
        if num is None and not mono.strip():
            raise MalformedPolynomial(f"empty term at column {pos + 1}")
        if star and (num is None or not mono.strip()):
            raise MalformedPolynomial(f"dangling '*' at column {pos + 1}")
        coeff = int(num) if num is not None else 1
        if sign == "-":
            coeff = -coeff
        exps = {}
        for fm in _FACTOR.finditer(mono):
            i = int(fm.group(1))
            if i < 1:
                raise MalformedPolynomial("variables are numbered from x1")
            exps[i] = exps.get(i, 0) + int(fm.group(2) or 1)
            top = max(top, i)
        raw.append((coeff, exps))
        pos = m.end()
    n = nvars if nvars is not None else max(top, 1)
    if top > n:
        raise MalformedPolynomial(f"x{top} exceeds {n} variables")
    terms = {}
    for coeff, exps in raw:
        e = tuple(exps.get(i + 1, 0) for i in range(n))
        terms[e] = terms.get(e, 0) + coeff
    return LaurentPoly(terms, n)


def gcd(a, b):
    """Greatest common divisor, normalized (see :meth:`LaurentPoly.normalized`)."""
    if a.nvars != b.nvars:
        raise ValueError("variable count mismatch")
    pa, _ = a._as_poly()
    pb, _ = b._as_poly()
    g = _gcd(pa, pb, a.nvars)
    return LaurentPoly._raw(g, a.nvars).normalized()


def gcd_list(polys, nvars=None):
    polys = list(polys)
    if not polys:
        return LaurentPoly.zero(nvars or 1)
    g = LaurentPoly.zero(polys[0].nvars)
    for p in polys:
        g = gcd(g, p)
        if g.is_unit():
            return g.normalized()
    return g.normalized()
