"""Free-group words, Wirtinger presentations and low-degree nilpotent data.

Generator indices are 0-based inside :class:`GroupWord`; the text form
prints them as ``x1, x2, ...``.  Conjugation convention at a crossing of
sign ``e`` whose over-arc is ``x_o``: the under-strand generator changes
from ``x_in`` to ``x_o^-e x_in x_o^e``.  Commutators are ``[a, b] = a b a^-1 b^-1``.
"""

import re
from dataclasses import dataclass
from itertools import combinations, product
from math import gcd

from .errors import LengthUnsupported, WrongComponentCount
from .link import LinkingMatrix, linking_matrix
from .smith import AbelianGroupStructure


@dataclass(frozen=True)
class GroupWord:
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        for g, e in letters:
            if e not in (1, -1) or g < 0:
                raise ValueError(f"bad letter {(g, e)}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def gen(cls, g, power=1):
        s = 1 if power > 0 else -1
        return cls(((g, s),) * abs(power))

    def reduced(self):
        out = []
        for g, e in self.letters:
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return GroupWord(tuple(out))

    def inverse(self):
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other):
        return GroupWord(self.letters + other.letters)

    def __pow__(self, k):
        base = self if k >= 0 else self.inverse()
        return GroupWord(base.letters * abs(k))

    def __len__(self):
        return len(self.letters)

    def exponent_sums(self, n):
        out = [0] * n
        for g, e in self.letters:
            out[g] += e
        return out

    def substitute(self, images):
        """Replace generator ``g`` by the word ``images[g]``."""
        out = []
        for g, e in self.letters:
            w = images[g] if e > 0 else images[g].inverse()
            out.extend(w.letters)
        return GroupWord(tuple(out))

    def to_text(self):
        if not self.letters:
            return "1"
        return " ".join(f"x{g + 1}" if e > 0 else f"x{g + 1}^-1" for g, e in self.letters)

    __str__ = to_text

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in ("", "1"):
            return cls(())
        letters = []
        for tok in text.split():
            m = re.fullmatch(r"x(\d+)(?:\^(-?1))?", tok)
            if not m or int(m.group(1)) < 1:
                raise ValueError(f"bad letter {tok!r}")
            letters.append((int(m.group(1)) - 1, int(m.group(2) or 1)))
        return cls(tuple(letters))


def commutator(a, b):
    return a * b * a.inverse() * b.inverse()


@dataclass(frozen=True)
class Presentation:
    """``n`` generators, relators, and one chosen meridian generator per component.

    ``mod_f3`` marks a presentation of a quotient by the third lower
    central series term of the free group.
    """

    n: int
    relators: tuple = ()
    meridians: tuple = ()
    mod_f3: bool = False

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        object.__setattr__(self, "meridians", tuple(self.meridians))
        for w in self.relators:
            if any(g >= self.n for g, _ in w.letters):
                raise ValueError("relator uses an undefined generator")
        if any(not 0 <= g < self.n for g in self.meridians):
            raise ValueError("meridian map references an undefined generator")

    def relation_matrix(self):
        """Exponent-sum matrix, one row per relator."""
        return [w.exponent_sums(self.n) for w in self.relators]

    def abelianization(self):
        return AbelianGroupStructure.cokernel(self.relation_matrix(), self.n)

    def to_text(self):
        rels = "; ".join(w.to_text() for w in self.relators)
        return f"gens: {self.n}; rel: {rels}" if rels else f"gens: {self.n}; rel:"

    __str__ = to_text

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*gens:\s*(\d+)\s*;\s*rel:(.*)", text, re.S)
        if not m:
            raise ValueError("expected 'gens: n; rel: ...'")
        rels = [GroupWord.parse(r) for r in m.group(2).split(";") if r.strip()]
        return cls(int(m.group(1)), tuple(rels))


# ----------------------------------------------------------------------
# diagrams

def arcs(d):
    """Map edge -> arc index and list of first arcs per component.

    An arc runs from one under-crossing to the next; arcs are numbered by
    walking components in order starting from their first edge, so the
    first arc of each component contains that component's first edge.
    """
    arc_of = {}
    first = []
    count = 0
    for comp in d.components:
        first.append(count)
        start = count
        for k, e in enumerate(comp):
            if k and d.tail.get(e, (None, None))[1] == 2:
                count += 1
            arc_of[e] = count
        # the tail of the first edge may continue the last arc
        if len(comp) > 1 and d.tail.get(comp[0], (None, None))[1] != 2:
            last = count
            if last != start:
                for e in comp:
                    if arc_of[e] == last:
                        arc_of[e] = start
                count -= 1
        count += 1
    return arc_of, first


def wirtinger(d):
    arc_of, first = arcs(d)
    n = max(arc_of.values(), default=-1) + 1
    rels = []
    for c, X in enumerate(d.crossings):
        eps = d.signs[c]
        o = GroupWord.gen(arc_of[X[1]], eps)
        x_in = GroupWord.gen(arc_of[X[0]])
        x_out = GroupWord.gen(arc_of[X[2]])
        rels.append(o.inverse() * x_in * o * x_out.inverse())
    return Presentation(n, tuple(rels), tuple(first))


def longitude_word(d, i):
    """Zero-framed longitude of component ``i`` (1-based), based at its first arc."""
    arc_of, first = arcs(d)
    comp = d.components[i - 1]
    letters = []
    self_writhe = 0
    for e in comp:
        h = d.head.get(e)
        if h is None or h[1] != 0:
            continue
        c = h[0]
        eps = d.signs[c]
        X = d.crossings[c]
        letters.append((arc_of[X[1]], eps))
        if d.edge_component[X[1]] == i - 1:
            self_writhe += eps
    w = GroupWord(tuple(letters)) * GroupWord.gen(first[i - 1], -self_writhe)
    return w.reduced()


# ----------------------------------------------------------------------
# nilpotent quotient through F_3

def _lk(L):
    return L if isinstance(L, LinkingMatrix) else LinkingMatrix.from_rows(L)


def commutator_basis(m):
    """Index pairs ``(i, j)`` (0-based, ``i < j``) in lexicographic order."""
    return list(combinations(range(m), 2))


def milnor_presentation(L):
    """``<x_1..x_m | [x_i, prod_j x_j^l_ij]>`` understood modulo ``F_3``."""
    L = _lk(L)
    m = L.m
    rels = []
    for i in range(m):
        lam = GroupWord(())
        for j in range(m):
            if j != i:
                lam = lam * GroupWord.gen(j, L[i, j])
        rels.append(commutator(GroupWord.gen(i), lam).reduced())
    return Presentation(m, tuple(rels), tuple(range(m)), mod_f3=True)


def relator_matrix(L):
    """Rows of the relations among ``v_ij = [x_i, x_j]`` in ``F_2 / F_3``."""
    L = _lk(L)
    m = L.m
    basis = commutator_basis(m)
    rows = []
    for i in range(m):
        row = [0] * len(basis)
        for k, (a, b) in enumerate(basis):
            if b == i:
                row[k] = -L[a, i]
            elif a == i:
                row[k] = L[i, b]
        rows.append(row)
    return rows


def pi2_mod_pi3(L):
    L = _lk(L)
    basis = commutator_basis(L.m)
    if not basis:
        return AbelianGroupStructure(0, ())
    return AbelianGroupStructure.cokernel(relator_matrix(L), len(basis))


def rank_lower_bound_check(L):
    L = _lk(L)
    m = L.m
    return pi2_mod_pi3(L).rank >= (m - 1) * (m - 2) // 2


# ----------------------------------------------------------------------
# Magnus expansion, truncated at degree 3

DEGREE = 3


class Series:
    """Truncated power series in noncommuting ``X_0, X_1, ...``."""

    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = {k: v for k, v in (c or {}).items() if v}

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def gen(cls, g, e=1):
        if e > 0:
            return cls({(): 1, (g,): 1})
        return cls({(): 1, (g,): -1, (g, g): 1, (g, g, g): -1})

    def __mul__(self, other):
        out = {}
        for a, x in self.c.items():
            for b, y in other.c.items():
                if len(a) + len(b) <= DEGREE:
                    out[a + b] = out.get(a + b, 0) + x * y
        return Series(out)

    def __sub__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) - v
        return Series(out)

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) + v
        return Series(out)

    def __eq__(self, other):
        return isinstance(other, Series) and self.c == other.c

    def inverse(self):
        if self.c.get((), 0) != 1:
            raise ValueError("series must have constant term 1")
        t = Series.one() - self
        out = Series.one()
        power = Series.one()
        for _ in range(DEGREE):
            power = power * t
            out = out + power
        return out

    def __getitem__(self, key):
        return self.c.get(tuple(key), 0)


def magnus_word(word, images):
    """Expand ``word`` with generator ``g`` sent to the series ``images[g]``."""
    inv = {}
    out = Series.one()
    for g, e in word.letters:
        if e > 0:
            out = out * images[g]
        else:
            if g not in inv:
                inv[g] = images[g].inverse()
            out = out * inv[g]
    return out


def arc_series(d):
    """Magnus image of each Wirtinger generator, in the meridian variables.

    The first arc of component ``c`` maps to ``1 + X_c``; every other arc is
    determined by walking the component through its undercrossings.
    """
    arc_of, first = arcs(d)
    n = max(arc_of.values(), default=-1) + 1
    comp_of_arc = {}
    for e, a in arc_of.items():
        comp_of_arc[a] = d.edge_component[e]
    E = [Series.gen(comp_of_arc[a]) for a in range(n)]
    for _ in range(4 * DEGREE + 4):
        changed = False
        for comp in d.components:
            for e in comp:
                h = d.head.get(e)
                if h is None or h[1] != 0:
                    continue
                c = h[0]
                X = d.crossings[c]
                eps = d.signs[c]
                o = E[arc_of[X[1]]]
                oi = o.inverse()
                new = (oi * E[arc_of[X[0]]] * o) if eps > 0 else (o * E[arc_of[X[0]]] * oi)
                tgt = arc_of[X[2]]
                if tgt in first:
                    continue
                if new != E[tgt]:
                    E[tgt] = new
                    changed = True
        if not changed:
            break
    return E


@dataclass(frozen=True)
class MuBar:
    value: int
    indeterminacy: int

    def to_json(self):
        return {"value": self.value, "indeterminacy": self.indeterminacy}


def _raw_mu(d, index, E):
    *head, last = index
    lam = magnus_word(longitude_word(d, last), E)
    return lam[tuple(i - 1 for i in head)]


def magnus_mu(d, index):
    """Milnor invariant for a sequence of 1-based component indices of length 2 or 3."""
    index = tuple(int(i) for i in index)
    if len(index) > 3:
        raise LengthUnsupported(f"length {len(index)} exceeds the supported maximum of 3")
    if len(index) < 2:
        raise LengthUnsupported("sequence must have length 2 or 3")
    if any(not 1 <= i <= d.m for i in index):
        raise WrongComponentCount(f"indices must lie in 1..{d.m}")
    E = arc_series(d)
    value = _raw_mu(d, index, E)
    delta = 0
    if len(index) == 3:
        for a, b in combinations(range(3), 2):
            delta = gcd(delta, _raw_mu(d, (index[a], index[b]), E))
    if delta:
        value %= delta
    return MuBar(value, delta)


def mu_table(d):
    """All length-2 and length-3 invariants, keyed by 1-based index tuples."""
    E = arc_series(d)
    m = d.m
    lams = {i: magnus_word(longitude_word(d, i), E) for i in range(1, m + 1)}

    def raw(index):
        *head, last = index
        return lams[last][tuple(i - 1 for i in head)]

    out = {}
    for idx in product(range(1, m + 1), repeat=2):
        out[idx] = MuBar(raw(idx), 0)
    for idx in product(range(1, m + 1), repeat=3):
        delta = 0
        for a, b in combinations(range(3), 2):
            delta = gcd(delta, raw((idx[a], idx[b])))
        v = raw(idx)
        out[idx] = MuBar(v % delta if delta else v, delta)
    return out


def abelianized_longitudes(d):
    """Rows ``(l_i1, ..., l_im)`` read from the longitude words."""
    arc_of, _ = arcs(d)
    comp_of_arc = {a: d.edge_component[e] for e, a in arc_of.items()}
    rows = []
    for i in range(1, d.m + 1):
        row = [0] * d.m
        for g, e in longitude_word(d, i).letters:
            row[comp_of_arc[g]] += e
        rows.append(row)
    return rows


__all__ = [
    "GroupWord", "Presentation", "AbelianGroupStructure", "MuBar", "Series",
    "commutator", "wirtinger", "longitude_word", "arcs", "milnor_presentation",
    "relator_matrix", "pi2_mod_pi3", "rank_lower_bound_check", "magnus_mu",
    "magnus_word", "arc_series", "mu_table", "commutator_basis", "abelianized_longitudes",
    "linking_matrix",
]
