"""Oriented link diagrams in planar-diagram (PD) form.

Conventions
-----------
A crossing ``X[a, b, c, d]`` lists its four edge labels counterclockwise,
starting from the incoming under-strand ``a``; ``c`` is the outgoing
under-strand.  The crossing is positive (right-handed) when the
over-strand runs from ``d`` to ``b``.  Global mirroring flips every sign,
so all linking numbers change sign together.

When the over-strand direction cannot be read off from the rest of the
diagram (a two-edge component lying over everything), the text form uses
``Xp[...]`` / ``Xm[...]`` to pin the sign explicitly.

A component consisting of a single edge label that occurs in no crossing
is a crossingless circle; the unknot is ``PD[] Components[[1]]``.

Component indices in the public API are 1-based.
"""

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

from ._builder import DiagramBuilder
from .errors import InconsistentDiagram, MalformedPD


@dataclass(frozen=True)
class InfectionSite:
    """A belt curve around ``r`` parallel strands.

    ``strands`` lists ``(edge, sign)`` in the order the spanning arc of the
    belt crosses them.  ``sign`` is +1 when the strand crosses the arc from
    right to left (looking along the arc).
    """

    strands: tuple

    @property
    def r(self):
        return len(self.strands)

    @property
    def edges(self):
        return tuple(e for e, _ in self.strands)

    def homology_class(self, diagram):
        """Signed count of strands per component (linking with the belt)."""
        counts = [0] * diagram.m
        for e, s in self.strands:
            counts[diagram.edge_component[e]] += s
        return tuple(counts)

    def null_homologous(self, diagram):
        return not any(self.homology_class(diagram))

    def text(self):
        return "Site[" + ",".join(f"{'-' if s < 0 else ''}{e}" for e, s in self.strands) + "]"


@dataclass(frozen=True)
class LinkingMatrix:
    entries: tuple

    @property
    def m(self):
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def lk(self, i, j):
        """Linking number of components ``i`` and ``j`` (1-based)."""
        return self.entries[i - 1][j - 1]

    def tolist(self):
        return [list(r) for r in self.entries]

    @classmethod
    def from_rows(cls, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        m = len(rows)
        for i in range(m):
            if len(rows[i]) != m:
                raise ValueError("linking matrix must be square")
            if rows[i][i] != 0:
                raise ValueError("linking matrix must have zero diagonal")
            for j in range(m):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("linking matrix must be symmetric")
        return cls(rows)

    @classmethod
    def two_component(cls, lk):
        return cls.from_rows([[0, lk], [lk, 0]])


def _orient(crossings, components, explicit):
    """Infer which slots are incoming.  Returns (slot_in, defaulted)."""
    occ = defaultdict(list)
    for c, X in enumerate(crossings):
        for s, e in enumerate(X):
            occ[e].append((c, s))
    listed = {}
    for i, comp in enumerate(components):
        for e in comp:
            if e in listed:
                raise InconsistentDiagram(f"edge {e} listed in two components")
            listed[e] = i
    for e, ports in occ.items():
        if len(ports) != 2:
            raise InconsistentDiagram(f"edge {e} used {len(ports)} times (must be 2)")
        if e not in listed:
            raise InconsistentDiagram(f"edge {e} not assigned to a component")
    for comp in components:
        if not comp:
            raise InconsistentDiagram("empty component")
        for e in comp:
            if e not in occ and len(comp) != 1:
                raise InconsistentDiagram(f"edge {e} used 0 times (must be 2)")

    slot_in = {}
    work = []

    def assign(port, value):
        work.append((port, value))
        while work:
            p, v = work.pop()
            if p in slot_in:
                if slot_in[p] != v:
                    raise InconsistentDiagram(f"orientation conflict at crossing {p[0] + 1}")
                continue
            slot_in[p] = v
            c, s = p
            work.append(((c, (s + 2) % 4), not v))
            e = crossings[c][s]
            for q in occ[e]:
                if q != p:
                    work.append((q, not v))

    for c in range(len(crossings)):
        assign((c, 0), True)
        sign = explicit.get(c)
        if sign is not None:
            assign((c, 3), sign > 0)

    succ = {}
    for comp in components:
        for k, e in enumerate(comp):
            succ[e] = comp[(k + 1) % len(comp)]

    defaulted = set()
    for c, X in enumerate(crossings):
        if (c, 1) in slot_in:
            continue
        j, l = X[1], X[3]
        j_to_l = succ.get(j) == l
        l_to_j = succ.get(l) == j
        if j_to_l and not l_to_j:
            assign((c, 1), True)
        elif l_to_j and not j_to_l:
            assign((c, 3), True)
        elif not j_to_l and not l_to_j:
            raise InconsistentDiagram(
                f"crossing {c + 1}: over-strand edges {j}, {l} are not consecutive in a component")
    for c in range(len(crossings)):
        if (c, 1) not in slot_in:
            defaulted.add(c)
            assign((c, 3), True)
    return slot_in, defaulted


class LinkDiagram:
    """Immutable oriented link diagram.

    Build with :func:`parse_pd`, :func:`braid_closure` or
    ``LinkDiagram(crossings, components)``.  The constructor validates the
    edge/orientation invariants and raises :class:`InconsistentDiagram`.
    """

    __slots__ = ("crossings", "components", "signs", "sites", "_explicit", "__dict__")

    def __init__(self, crossings, components, signs=None, sites=()):
        crossings = tuple(tuple(int(e) for e in X) for X in crossings)
        components = tuple(tuple(int(e) for e in comp) for comp in components)
        for X in crossings:
            if len(X) != 4:
                raise InconsistentDiagram("crossing must have 4 edges")
            if any(e <= 0 for e in X):
                raise InconsistentDiagram("edge labels must be positive")
        explicit = {}
        if signs is not None:
            signs = tuple(signs)
            if len(signs) != len(crossings):
                raise InconsistentDiagram("one sign per crossing required")
            explicit = {c: s for c, s in enumerate(signs) if s is not None}
        slot_in, defaulted = _orient(crossings, components, explicit)
        derived = tuple(1 if slot_in[(c, 3)] else -1 for c in range(len(crossings)))
        object.__setattr__(self, "crossings", crossings)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "signs", derived)
        object.__setattr__(self, "sites", tuple(sites))
        if explicit:
            _, defaulted = _orient(crossings, components, {})
        object.__setattr__(self, "_explicit", frozenset(defaulted))
        self._check_component_order(slot_in)
        for site in self.sites:
            for e, _ in site.strands:
                if e not in self.edge_component:
                    raise InconsistentDiagram(f"site references unknown edge {e}")

    def __setattr__(self, name, value):
        if name in LinkDiagram.__slots__:
            raise AttributeError("LinkDiagram is immutable")
        object.__setattr__(self, name, value)

    def _check_component_order(self, slot_in):
        head = {}
        for (c, s), v in slot_in.items():
            if v:
                head[self.crossings[c][s]] = (c, s)
        for comp in self.components:
            if len(comp) == 1 and comp[0] not in head:
                continue
            for k, e in enumerate(comp):
                nxt = comp[(k + 1) % len(comp)]
                c, s = head[e]
                if self.crossings[c][(s + 2) % 4] != nxt:
                    raise InconsistentDiagram(
                        f"component order disagrees with orientation after edge {e}")

    # ------------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return (self._key() == other._key() and self.components == other.components
                and self.sites == other.sites)

    def _key(self):
        return tuple(sorted(zip(self.crossings, self.signs)))

    def __hash__(self):
        return hash((self._key(), self.components))

    def __repr__(self):
        return f"<LinkDiagram m={self.m} crossings={len(self.crossings)}>"

    @property
    def m(self):
        return len(self.components)

    @property
    def crossing_count(self):
        return len(self.crossings)

    @cached_property
    def edge_component(self):
        return {e: i for i, comp in enumerate(self.components) for e in comp}

    @cached_property
    def free_loops(self):
        used = {e for X in self.crossings for e in X}
        return tuple(i for i, comp in enumerate(self.components)
                     if len(comp) == 1 and comp[0] not in used)

    @cached_property
    def tail(self):
        """edge -> (crossing, slot) where the edge leaves a crossing."""
        out = {}
        for c, X in enumerate(self.crossings):
            out[X[2]] = (c, 2)
            if self.signs[c] > 0:
                out[X[1]] = (c, 1)
            else:
                out[X[3]] = (c, 3)
        return out

    @cached_property
    def head(self):
        """edge -> (crossing, slot) where the edge enters a crossing."""
        out = {}
        for c, X in enumerate(self.crossings):
            out[X[0]] = (c, 0)
            if self.signs[c] > 0:
                out[X[3]] = (c, 3)
            else:
                out[X[1]] = (c, 1)
        return out

    def over_edges(self, c):
        """(incoming, outgoing) over-strand edges at crossing ``c``."""
        X = self.crossings[c]
        return (X[3], X[1]) if self.signs[c] > 0 else (X[1], X[3])

    def crossing_components(self, c):
        """(under component, over component), 0-based."""
        X = self.crossings[c]
        return self.edge_component[X[0]], self.edge_component[X[1]]

    def writhe(self, component=None):
        """Sum of crossing signs; restricted to self-crossings of a 1-based component."""
        total = 0
        for c, sign in enumerate(self.signs):
            u, o = self.crossing_components(c)
            if component is None or (u == o == component - 1):
                total += sign
        return total

    def with_sites(self, sites):
        return LinkDiagram(self.crossings, self.components, self.signs, sites)

    def needs_explicit_sign(self, c):
        return c in self._explicit

    # ------------------------------------------------------------------
    @cached_property
    def faces(self):
        """Faces of the projection as lists of darts ``(crossing, slot)``.

        A dart leaves its crossing through ``slot``; each face is traversed
        with its interior on the left.
        """
        occ = defaultdict(list)
        for c, X in enumerate(self.crossings):
            for s, e in enumerate(X):
                occ[e].append((c, s))
        seen = set()
        faces = []
        for c in range(len(self.crossings)):
            for s in range(4):
                if (c, s) in seen:
                    continue
                face = []
                d = (c, s)
                while d not in seen:
                    seen.add(d)
                    face.append(d)
                    e = self.crossings[d[0]][d[1]]
                    a, b = occ[e]
                    other = b if a == d else a
                    d = (other[0], (other[1] - 1) % 4)
                faces.append(tuple(face))
        return tuple(faces)

    @cached_property
    def dart_face(self):
        return {d: i for i, f in enumerate(self.faces) for d in f}

    def left_face(self, e):
        return self.dart_face[self.tail[e]]

    def right_face(self, e):
        return self.dart_face[self.head[e]]

    def is_planar(self):
        """Euler-characteristic check on each connected piece of the projection."""
        if not self.crossings:
            return True
        parent = list(range(len(self.crossings)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e, (c1, _) in self.tail.items():
            c2 = self.head[e][0]
            parent[find(c1)] = find(c2)
        pieces = defaultdict(lambda: [0, 0])
        for c in range(len(self.crossings)):
            pieces[find(c)][0] += 1
        for f in self.faces:
            pieces[find(f[0][0])][1] += 1
        # each piece: V - E + F = 2 with E = 2V
        return all(f - v == 2 for v, f in pieces.values())


# ----------------------------------------------------------------------
# text form

_TOKEN = re.compile(r"\s*(?:(#[^\n]*)|([A-Za-z]+)|(-?\d+)|(\[)|(\])|(,))")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            if not rest.strip():
                break
            # locate the offending character
            skip = len(rest) - len(rest.lstrip())
            bad = pos + skip
            line = text.count("\n", 0, bad) + 1
            col = bad - (text.rfind("\n", 0, bad) + 1) + 1
            raise MalformedPD(f"unexpected character {text[bad]!r}", line, col)
        for k, val in enumerate(m.groups()):
            if val is None:
                continue
            start = m.start(k + 1)
            line_no = text.count("\n", 0, start) + 1
            col = start - (text.rfind("\n", 0, start) + 1) + 1
            if k == 0:
                break
            kind = ("word", "int", "[", "]", ",")[k - 1]
            tokens.append((kind, val, line_no, col))
            break
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", None, None, None)

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] if tok[0] != "eof" else "end of input"
            raise MalformedPD(f"expected {want!r}, got {got!r}", tok[2], tok[3])
        self.i += 1
        return tok

    def int_list(self):
        self.take("[")
        out = []
        if self.peek()[0] != "]":
            out.append(int(self.take("int")[1]))
            while self.peek()[0] == ",":
                self.take(",")
                out.append(int(self.take("int")[1]))
        self.take("]")
        return out

    def parse(self):
        self.take("word", "PD")
        self.take("[")
        crossings = []
        signs = []
        while self.peek()[0] == "word":
            tok = self.take("word")
            if tok[1] not in ("X", "Xp", "Xm"):
                raise MalformedPD(f"unknown crossing head {tok[1]!r}", tok[2], tok[3])
            vals = self.int_list()
            if len(vals) != 4:
                raise MalformedPD("crossing needs exactly 4 edge labels", tok[2], tok[3])
            if any(v <= 0 for v in vals):
                raise MalformedPD("edge labels must be positive integers", tok[2], tok[3])
            crossings.append(vals)
            signs.append({"X": None, "Xp": 1, "Xm": -1}[tok[1]])
            if self.peek()[0] == ",":
                self.take(",")
        self.take("]")
        components = None
        sites = []
        while self.peek()[0] == "word":
            tok = self.take("word")
            if tok[1] == "Components":
                self.take("[")
                components = [self.int_list()]
                while self.peek()[0] == ",":
                    self.take(",")
                    components.append(self.int_list())
                self.take("]")
            elif tok[1] == "Site":
                vals = self.int_list()
                if not vals or any(v == 0 for v in vals):
                    raise MalformedPD("site needs nonzero signed edge labels", tok[2], tok[3])
                sites.append(InfectionSite(tuple((abs(v), 1 if v > 0 else -1) for v in vals)))
            else:
                raise MalformedPD(f"unknown section {tok[1]!r}", tok[2], tok[3])
        tok = self.peek()
        if tok[0] != "eof":
            raise MalformedPD(f"trailing input {tok[1]!r}", tok[2], tok[3])
        return crossings, signs, components, sites


def _infer_components(crossings, signs):
    """Follow strands when no Components section is given."""
    diagram_edges = sorted({e for X in crossings for e in X})
    occ = defaultdict(list)
    for c, X in enumerate(crossings):
        for s, e in enumerate(X):
            occ[e].append((c, s))
    for e, ports in occ.items():
        if len(ports) != 2:
            raise InconsistentDiagram(f"edge {e} used {len(ports)} times (must be 2)")
    # orientation from under-slots alone, plus propagation
    try:
        slot_in, defaulted = _orient(crossings, [diagram_edges], {})
    except InconsistentDiagram:
        slot_in = None
    if slot_in is None or defaulted:
        raise InconsistentDiagram("cannot infer components; add a Components[...] section")
    head = {crossings[c][s]: (c, s) for (c, s), v in slot_in.items() if v}
    comps = []
    seen = set()
    for e in diagram_edges:
        if e in seen:
            continue
        comp = []
        x = e
        while x not in seen:
            seen.add(x)
            comp.append(x)
            c, s = head[x]
            x = crossings[c][(s + 2) % 4]
        comps.append(comp)
    return comps


def parse_pd(text):
    """Parse PD text into a validated :class:`LinkDiagram`."""
    crossings, signs, components, sites = _Parser(text).parse()
    if components is None:
        if not crossings:
            components = [[1]]
        else:
            components = _infer_components(crossings, signs)
    return LinkDiagram(crossings, components, signs, sites)


def serialize(d):
    """Canonical text form: crossings sorted, explicit signs only where needed."""
    order = sorted(range(len(d.crossings)), key=lambda c: d.crossings[c])
    parts = []
    for c in order:
        head = "X"
        if d.needs_explicit_sign(c):
            head = "Xp" if d.signs[c] > 0 else "Xm"
        parts.append(head + "[" + ",".join(map(str, d.crossings[c])) + "]")
    out = "PD[" + ", ".join(parts) + "]\n"
    out += "Components[" + ",".join("[" + ",".join(map(str, comp)) + "]"
                                    for comp in d.components) + "]\n"
    for site in d.sites:
        out += site.text() + "\n"
    return out


def to_pd(d):
    return serialize(d)


# ----------------------------------------------------------------------
# queries

def components(d):
    return d.m


def linking_matrix(d):
    m = d.m
    twice = [[0] * m for _ in range(m)]
    for c, sign in enumerate(d.signs):
        u, o = d.crossing_components(c)
        if u != o:
            twice[u][o] += sign
            twice[o][u] += sign
    for i in range(m):
        for j in range(m):
            if twice[i][j] % 2:
                raise InconsistentDiagram("odd mixed crossing count; diagram is not planar")
    return LinkingMatrix(tuple(tuple(v // 2 for v in row) for row in twice))


# ----------------------------------------------------------------------
# constructions

def unknot():
    return LinkDiagram((), ((1,),))


def unlink(n):
    return LinkDiagram((), tuple((k,) for k in range(1, n + 1)))


def to_builder(d):
    """Port-level copy of ``d``.  Returns (builder, tail_port_of_edge)."""
    b = DiagramBuilder()
    for _ in d.crossings:
        b.crossing(True)
    tails = dict(d.tail)
    for e, t in tails.items():
        b.connect(t, d.head[e])
    for i, comp in enumerate(d.components):
        if i in d.free_loops:
            b.free_loop(i)
        else:
            b.start(i, tails[comp[0]])
    return b, tails


def from_builder(b, dedupe=False):
    crossings, signs, comps, exit_labels = b.build(dedupe=dedupe)
    return LinkDiagram(crossings, comps, signs), exit_labels


def braid_closure(word, strands=None):
    """Closure of a braid word.

    ``word`` is a sequence of nonzero ints; ``k`` is the generator in which
    strand position ``k`` (1-based, left) crosses over position ``k + 1``
    and moves right.  Strands run upward, so positive generators give
    positive crossings.
    """
    word = [int(g) for g in word]
    if any(g == 0 for g in word):
        raise ValueError("braid generators are nonzero")
    n = strands if strands is not None else (max((abs(g) for g in word), default=0) + 1)
    if word and max(abs(g) for g in word) >= n:
        raise ValueError("generator index exceeds strand count")
    b = DiagramBuilder()
    top = [None] * n
    bottom = [None] * n
    for g in word:
        i = abs(g) - 1
        # slots ccw: 0 SE (right in), 1 NE (left out), 2 NW (right out), 3 SW (left in)
        c = b.crossing(under02=g > 0)
        for pos, slot in ((i, 3), (i + 1, 0)):
            if top[pos] is None:
                bottom[pos] = (c, slot)
            else:
                b.connect(top[pos], (c, slot))
        top[i], top[i + 1] = (c, 2), (c, 1)
    # closure: pair up positions, then walk
    free_positions = []
    for pos in range(n):
        if top[pos] is None:
            free_positions.append(pos)
        else:
            b.connect(top[pos], bottom[pos])
    # order components by lowest bottom position they pass through
    perm = list(range(n))
    for g in word:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    # perm[pos] = bottom position of the strand now at top position pos
    seen = set()
    key = 0
    for pos in range(n):
        if pos in seen:
            continue
        cycle = []
        p = pos
        while p not in seen:
            seen.add(p)
            cycle.append(p)
            p = perm[p]
        if pos in free_positions:
            b.free_loop(key)
        else:
            c, slot = bottom[pos]
            b.start(key, (c, (slot + 2) % 4))
        key += 1
    d, _ = from_builder(b)
    return d


def sublink(d, keep):
    """Diagram of the components listed in ``keep`` (1-based), order preserved."""
    keep0 = sorted({k - 1 for k in keep})
    for k in keep0:
        if not 0 <= k < d.m:
            raise ValueError(f"no component {k + 1}")
    b, tails = to_builder(d)
    kept = set(keep0)
    for c in range(len(d.crossings)):
        u, o = d.crossing_components(c)
        if u in kept and o in kept:
            continue
        b.remove_crossing(c)
        for s_in in (0, 1, 3):
            port_in = (c, s_in)
            if port_in not in b.link:
                continue
            e = d.crossings[c][s_in]
            if d.head.get(e) != port_in:
                continue
            port_out = (c, (s_in + 2) % 4)
            comp = d.edge_component[e]
            a = b.disconnect(port_in)
            if port_out not in b.link:
                continue
            z = b.disconnect(port_out)
            if comp in kept and a != port_out:
                b.connect(a, z)
    b.starts = []
    b.free = []
    removed = b.removed
    new_key = 0
    for i in keep0:
        start = None
        for e in d.components[i]:
            t = tails.get(e)
            if t is not None and t[0] not in removed:
                start = t
                break
        if start is None:
            b.free_loop(new_key)
        else:
            b.start(new_key, start)
        new_key += 1
    out, _ = from_builder(b)
    return out


def add_kink(d, edge, sign=1, loop_left=True):
    """Reidemeister I: insert a curl of the given crossing sign on ``edge``."""
    b, tails = to_builder(d)
    # first pass enters slot 0 and leaves slot 2; the curl re-enters at an
    # adjacent slot.  Which slot and which pass is under fixes the sign
    # (positive when the over-pass runs slot 3 -> 1).
    back = 1 if loop_left else 3
    first_under = (sign > 0) == (back == 3)
    if edge not in tails:
        # a crossingless circle becomes a one-crossing curl
        comp = d.edge_component[edge]
        b.free.remove(comp)
        k = b.crossing(under02=first_under)
        b.connect((k, 2), (k, back))
        b.connect((k, (back + 2) % 4), (k, 0))
        b.start(comp, (k, 2))
        out, _ = from_builder(b)
        return out
    t = tails[edge]
    h = d.head[edge]
    b.disconnect(t)
    k = b.crossing(under02=first_under)
    b.connect(t, (k, 0))
    b.connect((k, 2), (k, back))
    b.connect((k, (back + 2) % 4), h)
    out, _ = from_builder(b)
    return out
