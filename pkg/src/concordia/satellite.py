"""Infection of a link along an unknotted curve.

A site is drawn as an arc in the projection plane that crosses ``r``
strands and nothing else; the curve ``alpha`` is the boundary of a thin
disk around that arc.  Infection by a knot ``J`` cuts the ``r`` strands
along the arc and reconnects them through a box holding ``r`` parallel
copies of ``J`` cut open, preceded by full twists that bring the parallel
copies back to the zero framing.

Box geometry (arc running west to east, strands meeting it at positions
``x = 1 .. r``): every box strand runs south to north.  A strand of sign
``+1`` crosses the arc northwards, so its tail side attaches to the box
bottom; a strand of sign ``-1`` attaches the other way round.
"""

from dataclasses import dataclass, field

from .alexander import alexander_polynomial, elementary_ideal_gcd
from .errors import (InvalidConfig, KnottedAxis, NontrivialTangle, SiteInvalid)
from .groups import mu_table
from .link import (InfectionSite, LinkDiagram, braid_closure, from_builder, linking_matrix,
                   parse_pd, to_builder, unknot)


# ----------------------------------------------------------------------
# sites

def _site_faces(d, strands):
    """Faces ``F_0 .. F_r`` visited by the arc; validates adjacency."""
    faces = []
    for k, (e, sign) in enumerate(strands):
        west = d.left_face(e) if sign > 0 else d.right_face(e)
        east = d.right_face(e) if sign > 0 else d.left_face(e)
        if k and faces[-1] != west:
            prev = strands[k - 1][0]
            raise NontrivialTangle(
                f"edges {prev} and {e} are not adjacent across a single face; "
                "the arc would cross other strands")
        if not k:
            faces.append(west)
        faces.append(east)
    return faces


def _dart_on(d, e, face):
    t = d.tail[e]
    return t if d.dart_face[t] == face else d.head[e]


def _chords(d, strands, faces):
    """``(face, dart, dart)`` for each piece of the arc inside a face."""
    out = []
    for k in range(1, len(strands)):
        f = faces[k]
        out.append((f, _dart_on(d, strands[k - 1][0], f), _dart_on(d, strands[k][0], f)))
    return out


def _interleave(d, f, c1, c2):
    pos = {dart: i for i, dart in enumerate(d.faces[f])}
    a1, b1 = sorted((pos[c1[0]], pos[c1[1]]))
    a2, b2 = sorted((pos[c2[0]], pos[c2[1]]))
    return a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1


def _check_chords(d, strands, faces):
    """Chords of the arc inside one face must not cross each other."""
    chords = _chords(d, strands, faces)
    for i, (f, *c1) in enumerate(chords):
        for g, *c2 in chords[i + 1:]:
            if f == g and _interleave(d, f, c1, c2):
                raise KnottedAxis(f"the arc crosses itself inside face {f}")


def check_disjoint(d, a, b):
    """Raise :class:`SiteInvalid` unless the belt disks of two sites are disjoint."""
    shared = set(a.edges) & set(b.edges)
    if shared:
        raise SiteInvalid(f"sites share edges {sorted(shared)}")
    ca = _chords(d, a.strands, _site_faces(d, a.strands))
    cb = _chords(d, b.strands, _site_faces(d, b.strands))
    for f, *c1 in ca:
        for g, *c2 in cb:
            if f == g and _interleave(d, f, c1, c2):
                raise SiteInvalid(f"sites {a.text()} and {b.text()} cross inside face {f}")


def validate_site(d, site, require_null=False):
    strands = site.strands
    if not strands:
        raise SiteInvalid("a site needs at least one strand")
    for e, sign in strands:
        if e not in d.edge_component:
            raise SiteInvalid(f"edge {e} is not in the diagram")
        if sign not in (1, -1):
            raise SiteInvalid(f"strand sign must be +1 or -1, got {sign}")
        if e not in d.tail:
            raise SiteInvalid(f"edge {e} is a crossingless circle; add a kink first")
    edges = [e for e, _ in strands]
    if len(set(edges)) != len(edges):
        raise KnottedAxis("the arc crosses the same edge twice")
    faces = _site_faces(d, strands)
    _check_chords(d, strands, faces)
    if require_null and not site.null_homologous(d):
        raise SiteInvalid(f"site has nonzero linking with the components: {site.homology_class(d)}")
    return faces


def mark_site(d, strands, require_null=False):
    """Attach a validated site given as ``[(edge, sign), ...]`` in arc order."""
    site = strands if isinstance(strands, InfectionSite) else InfectionSite(
        tuple((int(e), int(s)) for e, s in strands))
    validate_site(d, site, require_null)
    for other in d.sites:
        check_disjoint(d, site, other)
    return d.with_sites(d.sites + (site,))


# ----------------------------------------------------------------------
# patterns

@dataclass(frozen=True)
class StringKnot:
    """A knot diagram cut open at ``cut`` (default: the first edge)."""

    diagram: LinkDiagram
    cut: int = None
    name: str = ""

    def __post_init__(self):
        if self.diagram.m != 1:
            raise InvalidConfig("a pattern must be a knot (one component)")
        cut = self.cut if self.cut is not None else self.diagram.components[0][0]
        if cut not in self.diagram.edge_component:
            raise InvalidConfig(f"cut edge {cut} not in the pattern")
        object.__setattr__(self, "cut", cut)

    @property
    def writhe(self):
        return self.diagram.writhe()

    @property
    def crossing_count(self):
        return self.diagram.crossing_count

    def is_trivial(self):
        return self.diagram.crossing_count == 0

    @classmethod
    def from_pd(cls, text, cut=None):
        return cls(parse_pd(text), cut)


def pattern(name):
    """``unknot``, ``trefoil`` (right-handed), ``trefoil_lh``, ``figure8``, ``k*trefoil``, ``a#b``."""
    parts = [p.strip() for p in str(name).split("#")]
    word = []
    strands = 1
    for part in parts:
        count = 1
        if "*" in part:
            k, part = part.split("*", 1)
            count = int(k)
            part = part.strip()
        for _ in range(count):
            if part == "unknot":
                continue
            if part in ("trefoil", "trefoil_rh"):
                local = [1, 1, 1]
            elif part == "trefoil_lh":
                local = [-1, -1, -1]
            elif part == "figure8":
                local = [1, -2, 1, -2]
                word += [(abs(g) + strands - 1) * (1 if g > 0 else -1) for g in local]
                strands += 2
                continue
            else:
                raise InvalidConfig(f"unknown pattern {part!r}")
            word += [(abs(g) + strands - 1) * (1 if g > 0 else -1) for g in local]
            strands += 1
    if not word:
        return StringKnot(unknot(), name="unknot")
    return StringKnot(braid_closure(word, strands), name=str(name))


# ----------------------------------------------------------------------
# the box

class _Box:
    """Builds the twist region and the cable of ``J`` into a builder.

    ``bottom[x]`` / ``top(x)`` are ports for positions ``x = 0 .. r-1``
    (west to east).
    """

    def __init__(self, b, r):
        self.b = b
        self.r = r
        self.pending = [("B", x) for x in range(r)]
        self.bottom = [None] * r

    def _attach(self, x, port):
        p = self.pending[x]
        if p[0] == "B":
            self.bottom[p[1]] = port
        else:
            self.b.connect(p, port)

    def sigma(self, k, positive):
        """Braid generator on positions ``k, k+1`` (0-based), strands heading north."""
        c = self.b.crossing(under02=positive)
        # slots: 0 SE, 1 NE, 2 NW, 3 SW
        self._attach(k, (c, 3))
        self._attach(k + 1, (c, 0))
        self.pending[k] = (c, 2)
        self.pending[k + 1] = (c, 1)

    def full_twists(self, count, positive):
        for _ in range(count):
            for _ in range(self.r):
                for k in range(self.r - 1):
                    self.sigma(k, positive)

    def cable(self, J):
        """``r`` parallel copies of ``J`` cut at ``J.cut``; copy ``a`` sits at position ``r-1-a``."""
        r = self.r
        D = J.diagram
        grid_in = {}
        grid_out = {}
        for c, X in enumerate(D.crossings):
            sign = D.signs[c]
            cells = {}
            for a in range(r):
                for b_ in range(r):
                    cells[(a, b_)] = self.b.crossing(under02=True)
            # local frame: slot 0 S (under in), 1 E, 2 N (under out), 3 W
            b_order = list(range(r)) if sign > 0 else list(reversed(range(r)))
            a_order = list(reversed(range(r))) if sign > 0 else list(range(r))
            for a in range(r):
                chain = [cells[(a, bb)] for bb in b_order]
                grid_in[(c, 0, a)] = (chain[0], 0)
                for u, v in zip(chain, chain[1:]):
                    self.b.connect((u, 2), (v, 0))
                grid_out[(c, 2, a)] = (chain[-1], 2)
            over_in, over_out = (3, 1) if sign > 0 else (1, 3)
            for bb in range(r):
                chain = [cells[(aa, bb)] for aa in a_order]
                grid_in[(c, over_in, bb)] = (chain[0], over_in)
                for u, v in zip(chain, chain[1:]):
                    self.b.connect((u, over_out), (v, over_in))
                grid_out[(c, over_out, bb)] = (chain[-1], over_out)
        for e, (tc, ts) in D.tail.items():
            hc, hs = D.head[e]
            for a in range(r):
                if e == J.cut:
                    continue
                self.b.connect(grid_out[(tc, ts, a)], grid_in[(hc, hs, a)])
        hc, hs = D.head[J.cut]
        tc, ts = D.tail[J.cut]
        for a in range(r):
            x = r - 1 - a
            self._attach(x, grid_in[(hc, hs, a)])
            self.pending[x] = grid_out[(tc, ts, a)]

    def top(self, x):
        return self.pending[x]


def infect(d, site, J):
    """Tie ``J`` into ``d`` along ``site``; other sites are carried along."""
    if isinstance(J, str):
        J = pattern(J)
    if J.is_trivial():
        return d
    validate_site(d, site)
    for other in d.sites:
        if other != site:
            check_disjoint(d, site, other)
    r = site.r
    b, _ = to_builder(d)
    box = _Box(b, r)
    w = J.writhe
    box.full_twists(abs(w), positive=w < 0)
    box.cable(J)
    for x, (e, sign) in enumerate(site.strands):
        t, h = d.tail[e], d.head[e]
        b.disconnect(t)
        if sign > 0:
            b.connect(t, box.bottom[x])
            b.connect(box.top(x), h)
        else:
            b.connect(t, box.top(x))
            b.connect(box.bottom[x], h)
    out, exit_labels = from_builder(b)
    moved = []
    for other in d.sites:
        if other == site:
            continue
        moved.append(InfectionSite(tuple((exit_labels[d.tail[e]], s) for e, s in other.strands)))
    return out.with_sites(tuple(moved)) if moved else out


def expected_crossings(d, site, J):
    r = site.r
    if J.is_trivial():
        return d.crossing_count
    return d.crossing_count + r * r * J.crossing_count + abs(J.writhe) * r * (r - 1)


# ----------------------------------------------------------------------
# invariance report

@dataclass
class InvarianceReport:
    hypothesis_violated: bool
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(ok for _, _, ok in self.checks.values())

    def to_json(self):
        def show(v):
            if hasattr(v, "to_text"):
                return v.to_text()
            return v
        return {
            "hypothesis_violated": self.hypothesis_violated,
            "passed": self.passed,
            "checks": {k: {"before": show(a), "after": show(b), "equal": ok}
                       for k, (a, b, ok) in sorted(self.checks.items())},
        }


def homology_invariants(d, ideal_depth=2):
    inv = {"alexander_polynomial": alexander_polynomial(d),
           "linking_matrix": linking_matrix(d).tolist()}
    for k in range(ideal_depth + 1):
        inv[f"ideal_gcd_{k}"] = elementary_ideal_gcd(d, k)
    for key, mu in mu_table(d).items():
        inv["mu_" + "".join(map(str, key))] = (mu.value, mu.indeterminacy)
    return inv


def verify_homology_invariance(d, site, J, ideal_depth=2):
    """Recompute the homology-level invariants before and after infection."""
    if isinstance(J, str):
        J = pattern(J)
    violated = not site.null_homologous(d)
    after = infect(d, site, J)
    before_inv = homology_invariants(d, ideal_depth)
    after_inv = homology_invariants(after, ideal_depth)
    report = InvarianceReport(violated)
    for key, v in before_inv.items():
        a = after_inv[key]
        report.checks[key] = (v, a, v == a)
    return report
