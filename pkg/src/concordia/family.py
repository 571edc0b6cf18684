"""Regime classification and certified families of satellite patterns.

A family is a sequence of knots ``J_1, J_2, ...``, each a connected sum of
``k_i`` copies of a fixed pattern knot (the right-handed trefoil unless
told otherwise).  Its certificate records exact averaged signatures of
every member and the full table of pairwise inequalities

    |rho(J_i)| > R + N |rho(J_j)|     for i > j,

where ``R`` is a user-supplied bound on the unknown 3-manifold term and
``N = 1`` on the nilpotent route.  Inequalities are checked on certified
enclosures, so inexact circle integrals are handled conservatively.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import floor

from .alexander import alexander_polynomial, blanchfield_criterion, torres_check
from .errors import InvalidConfig, TrivialQuotient
from .groups import pi2_mod_pi3
from .link import LinkDiagram, LinkingMatrix, linking_matrix
from .signature import (RhoValue, SeifertMatrix, block_sum, builtin, is_prime,
                        rho_integral, rho_zp, signature_profile)
from .smith import AbelianGroupStructure


def _frac(x):
    return {"num": x.numerator, "den": x.denominator}


def _unfrac(obj):
    if isinstance(obj, dict):
        return Fraction(obj["num"], obj["den"])
    return Fraction(obj)


# ----------------------------------------------------------------------
# classification

class Regime(str, Enum):
    FREEDMAN_KNOT = "FreedmanKnot"
    DAVIS_EXCEPTION = "DavisException"
    NILPOTENT_ROUTE = "NilpotentRoute"
    BLANCHFIELD_ROUTE = "BlanchfieldRoute"
    # knots with nontrivial polynomial lie outside the four link regimes
    KNOT = "Knot"

    def __str__(self):
        return self.value


def regime_from_data(m, lk_rows, delta_is_one):
    """Decide the regime from component count, linking numbers and ``Delta == 1``.

    This is the whole decision; :func:`classify` only gathers the data.
    """
    if m < 1:
        raise InvalidConfig("a link has at least one component")
    if m == 1:
        return Regime.FREEDMAN_KNOT if delta_is_one else Regime.KNOT
    if m == 2 and delta_is_one:
        return Regime.DAVIS_EXCEPTION
    if not pi2_mod_pi3(lk_rows).is_trivial():
        return Regime.NILPOTENT_ROUTE
    if m == 2 and lk_rows[0][1] != 0:
        return Regime.BLANCHFIELD_ROUTE
    # unreachable: a trivial quotient forces m = 2 and lk = +-1
    raise AssertionError("classification fell through")


@dataclass(frozen=True)
class RegimeVerdict:
    regime: Regime
    m: int
    linking: tuple
    pi2_mod_pi3: AbelianGroupStructure
    alexander: str
    delta_is_one: bool
    criteria: dict = field(default_factory=dict)

    def rederive(self):
        return regime_from_data(self.m, [list(r) for r in self.linking], self.delta_is_one)

    def to_json(self):
        return {
            "regime": str(self.regime),
            "evidence": {
                "components": self.m,
                "linking_matrix": [list(r) for r in self.linking],
                "pi2_mod_pi3": str(self.pi2_mod_pi3),
                "alexander_polynomial": self.alexander,
                "delta_is_one": self.delta_is_one,
                "criteria": dict(sorted(self.criteria.items())),
            },
        }


def classify(d):
    m = d.m
    L = linking_matrix(d)
    delta = alexander_polynomial(d)
    one = delta.is_unit()
    rows = L.tolist()
    quotient = pi2_mod_pi3(L) if m >= 2 else AbelianGroupStructure(0, ())
    criteria = {}
    if m == 2:
        criteria["torres"] = torres_check(d)
        criteria["blanchfield"] = str(blanchfield_criterion(d))
    if m >= 2:
        criteria["rank_bound"] = quotient.rank >= (m - 1) * (m - 2) // 2
    regime = regime_from_data(m, rows, one)
    return RegimeVerdict(regime, m, tuple(tuple(r) for r in rows), quotient,
                         delta.to_text(), one, criteria)


def _smallest_prime_factor(n):
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % k == 0:
            return k
        k += 1
    return n


def choose_prime(source):
    """Prime for the nilpotent route.

    ``source`` is a diagram, a linking matrix or a :class:`RegimeVerdict`.
    The generator is the first torsion summand of the quotient if there is
    one, else a free summand (any prime works; 2 is returned).
    """
    if isinstance(source, RegimeVerdict):
        q = source.pi2_mod_pi3
    elif isinstance(source, LinkDiagram):
        q = pi2_mod_pi3(linking_matrix(source)) if source.m >= 2 else AbelianGroupStructure(0, ())
    else:
        q = pi2_mod_pi3(source if isinstance(source, LinkingMatrix) else
                        LinkingMatrix.from_rows(source))
    if q.is_trivial():
        raise TrivialQuotient("the quotient is trivial; the nilpotent route does not apply")
    if q.torsion:
        return _smallest_prime_factor(q.torsion[0])
    return 2


# ----------------------------------------------------------------------
# configuration and certificates

@dataclass(frozen=True)
class FamilyConfig:
    R: Fraction
    p: int = 2
    N: int = 1
    count: int = 3
    pattern: str = "trefoil_rh"

    def __post_init__(self):
        try:
            R = self.R if isinstance(self.R, Fraction) else Fraction(str(self.R))
        except (ValueError, ZeroDivisionError):
            raise InvalidConfig(f"R must be a positive rational, got {self.R!r}") from None
        if R <= 0:
            raise InvalidConfig("R must be positive")
        object.__setattr__(self, "R", R)
        if not is_prime(self.p):
            raise InvalidConfig(f"p must be prime, got {self.p!r}")
        if not isinstance(self.N, int) or self.N < 1:
            raise InvalidConfig("N must be a positive integer")
        if not isinstance(self.count, int) or self.count < 1:
            raise InvalidConfig("count must be a positive integer")

    def to_json(self):
        return {"R": _frac(self.R), "p": self.p, "N": self.N, "count": self.count,
                "pattern": self.pattern}

    @classmethod
    def from_json(cls, obj):
        return cls(_unfrac(obj["R"]), obj["p"], obj["N"], obj["count"], obj["pattern"])


def _pattern_matrix(pattern):
    if isinstance(pattern, SeifertMatrix):
        return pattern
    return builtin(pattern)


@dataclass(frozen=True)
class Member:
    i: int
    k: int
    rho: RhoValue

    def to_json(self):
        return {"i": self.i, "k": self.k, "rho": self.rho.to_json()}

    @classmethod
    def from_json(cls, obj):
        r = obj["rho"]
        lo, hi = (_unfrac(x) for x in r["enclosure"])
        rho = RhoValue(r["kind"], _unfrac(r["value"]), r["exact"], lo, hi, r.get("p"))
        return cls(obj["i"], obj["k"], rho)


def _abs_bounds(rho):
    """Enclosure of ``|rho|``."""
    lo, hi = rho.lo, rho.hi
    if lo >= 0:
        return lo, hi
    if hi <= 0:
        return -hi, -lo
    return Fraction(0), max(-lo, hi)


@dataclass(frozen=True)
class InequalityCheck:
    i: int
    j: int
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self):
        return self.lhs > self.rhs

    def to_json(self):
        return {"i": self.i, "j": self.j, "lhs": _frac(self.lhs), "rhs": _frac(self.rhs),
                "holds": self.holds}


def _checks(members, R, N):
    out = []
    for a in members:
        for b in members:
            if a.i > b.i:
                lhs = _abs_bounds(a.rho)[0]
                rhs = R + N * _abs_bounds(b.rho)[1]
                out.append(InequalityCheck(a.i, b.i, lhs, rhs))
    return tuple(out)


@dataclass(frozen=True)
class FamilyCertificate:
    route: str
    config: FamilyConfig
    C: RhoValue
    members: tuple
    checks: tuple
    step: int = None
    adjusted: bool = False
    notes: tuple = ()

    @property
    def regime(self):
        return Regime.NILPOTENT_ROUTE if self.route == "nilpotent" else Regime.BLANCHFIELD_ROUTE

    @property
    def N(self):
        return 1 if self.route == "nilpotent" else self.config.N

    @property
    def certified(self):
        return all(c.holds for c in self.checks)

    def reverify(self):
        """Recompute every inequality from the stored member values."""
        fresh = _checks(self.members, self.config.R, self.N)
        return fresh == self.checks and all(c.holds for c in fresh)

    def to_json(self):
        return {
            "route": self.route,
            "regime": str(self.regime),
            "config": self.config.to_json(),
            "C": self.C.to_json(),
            "step": self.step,
            "adjusted": self.adjusted,
            "notes": list(self.notes),
            "members": [m.to_json() for m in self.members],
            "checks": [c.to_json() for c in self.checks],
            "certified": self.certified,
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        config = FamilyConfig.from_json(obj["config"])
        members = tuple(Member.from_json(m) for m in obj["members"])
        C = Member.from_json({"i": 0, "k": 1, "rho": obj["C"]}).rho
        checks = tuple(InequalityCheck(c["i"], c["j"], _unfrac(c["lhs"]), _unfrac(c["rhs"]))
                       for c in obj["checks"])
        return cls(obj["route"], config, C, members, checks, obj.get("step"),
                   obj.get("adjusted", False), tuple(obj.get("notes", ())))

    def report(self):
        """Plain-text table of the inequalities."""
        def show(x):
            return str(x) if x.denominator < 10 ** 6 else f"~{float(x):.12g}"

        lines = [f"route: {self.route}  R = {self.config.R}  N = {self.N}  "
                 f"C = {show(self.C.value)}{'' if self.C.exact else ' (enclosed)'}"]
        for m in self.members:
            lines.append(f"  J_{m.i}: k = {m.k}, rho = {show(m.rho.value)}")
        for c in self.checks:
            mark = "ok" if c.holds else "FAILS"
            lines.append(f"  i={c.i} j={c.j}: {show(c.lhs)} > {show(c.rhs)}  {mark}")
        lines.append("certified" if self.certified else "NOT certified")
        return "\n".join(lines)


def _member_matrix(V, k):
    return block_sum([b for b, mult in V.blocks() for _ in range(mult)] * k) if k else \
        SeifertMatrix([])


def build_family_nilpotent(cfg):
    """Members ``k_i = i * s`` with ``s = ceil(R/C)``, bumped by one on boundary equality."""
    V = _pattern_matrix(cfg.pattern)
    C = rho_zp(V, cfg.p)
    c = abs(C.value)
    if c == 0:
        raise InvalidConfig(f"pattern {cfg.pattern!r} has vanishing rho over Z/{cfg.p}")
    s = -(-cfg.R // c)
    adjusted = False
    notes = []
    if s * c <= cfg.R:
        adjusted = True
        notes.append(f"R/C = {cfg.R / c} is an integer; step raised from {s} to {s + 1}")
        s += 1
    s = int(s)
    members = tuple(Member(i, i * s, rho_zp(_member_matrix(V, i * s), cfg.p))
                    for i in range(1, cfg.count + 1))
    return FamilyCertificate("nilpotent", cfg, C, members, _checks(members, cfg.R, 1),
                             s, adjusted, tuple(notes))


def build_family_blanchfield(cfg):
    """Members with ``k_i C > R + N k_{i-1} C``, using circle integrals."""
    V = _pattern_matrix(cfg.pattern)
    prof = signature_profile(V)
    C = rho_integral(V, profile=prof)
    c_lo, c_hi = _abs_bounds(C)
    if c_lo == 0:
        raise InvalidConfig(f"pattern {cfg.pattern!r} has vanishing signature integral")
    members = []
    k_prev = 0
    for i in range(1, cfg.count + 1):
        # smallest k with k * c_lo > R + N * k_prev * c_hi
        k = floor((cfg.R + cfg.N * k_prev * c_hi) / c_lo) + 1
        members.append(Member(i, k, rho_integral(_member_matrix(V, k))))
        k_prev = k
    members = tuple(members)
    return FamilyCertificate("blanchfield", cfg, C, members, _checks(members, cfg.R, cfg.N))


def build_family(cfg, route):
    if route == "nilpotent":
        return build_family_nilpotent(cfg)
    if route == "blanchfield":
        return build_family_blanchfield(cfg)
    raise InvalidConfig(f"unknown route {route!r}; use 'nilpotent' or 'blanchfield'")


# ----------------------------------------------------------------------
# rho bookkeeping

@dataclass(frozen=True)
class LedgerEntry:
    i: int
    j: int
    eps_i: tuple
    eps_j: tuple
    lo: Fraction
    hi: Fraction
    excludes_zero: bool
    hypothesis_violated: bool

    def to_json(self):
        return {"i": self.i, "j": self.j, "eps_i": list(self.eps_i), "eps_j": list(self.eps_j),
                "interval": [_frac(self.lo), _frac(self.hi)], "open": True,
                "excludes_zero": self.excludes_zero,
                "hypothesis_violated": self.hypothesis_violated}


def _scale(a, lo, hi):
    return (a * lo, a * hi) if a >= 0 else (a * hi, a * lo)


def _entry(R, mi, mj, ei, ej):
    ai, aj = sum(ei), sum(ej)
    li, hi_ = _scale(ai, mi.rho.lo, mi.rho.hi)
    lj, hj = _scale(aj, mj.rho.lo, mj.rho.hi)
    if mi.i == mj.i and tuple(ei) == tuple(ej):
        s_lo = s_hi = Fraction(0)
    else:
        s_lo, s_hi = li - hj, hi_ - lj
    lo, hi = s_lo - R, s_hi + R
    excludes = lo >= 0 or hi <= 0
    violated = not any(ei) or not any(ej)
    return LedgerEntry(mi.i, mj.i, tuple(ei), tuple(ej), lo, hi, excludes, violated)


def _worst_case(R, mi, mj, N):
    """Valid assignment (at least one flag set on each side) closest to zero."""
    best = None
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            e = _entry(R, mi, mj, (1,) * a + (0,) * (N - a), (1,) * b + (0,) * (N - b))
            if mi.i == mj.i and a != b:
                continue
            margin = max(e.lo, -e.hi)
            if best is None or margin < best[0]:
                best = (margin, e)
    return best[1]


def rho_bookkeeping(cert, epsilons=None):
    """Interval for the 4-manifold obstruction of each pair ``(i, j)``.

    The unknown term is only known to lie in ``(-R, R)``.  ``epsilons`` maps
    a member index to its ``N`` flags; without it every pair gets the worst
    valid assignment.  An entry excludes zero when the pair is certifiably
    distinguished.
    """
    N = cert.N
    out = []
    for mi in cert.members:
        for mj in cert.members:
            if epsilons is None:
                out.append(_worst_case(cert.config.R, mi, mj, N))
                continue
            ei = tuple(epsilons.get(mi.i, (1,) * N))
            ej = tuple(epsilons.get(mj.i, (1,) * N))
            if len(ei) != N or len(ej) != N or any(x not in (0, 1) for x in ei + ej):
                raise InvalidConfig(f"each member needs {N} flags in {{0, 1}}")
            out.append(_entry(cert.config.R, mi, mj, ei, ej))
    return tuple(out)
