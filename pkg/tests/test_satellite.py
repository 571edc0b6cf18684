import pytest

from concordia.alexander import alexander_polynomial
from concordia.errors import KnottedAxis, NontrivialTangle, SiteInvalid
from concordia.groups import mu_table
from concordia.link import InfectionSite, add_kink, linking_matrix, sublink, unlink
from concordia.satellite import (expected_crossings, infect, mark_site, pattern, validate_site,
                                 verify_homology_invariance)

SITED = ["t2_4", "t2_6", "whitehead", "trefoil_hopf"]
PATTERNS = ["trefoil", "figure8", "trefoil#trefoil"]


def site(*signed):
    return InfectionSite(tuple((abs(v), 1 if v > 0 else -1) for v in signed))


def test_patterns():
    assert pattern("trefoil").writhe == 3
    assert pattern("trefoil_lh").writhe == -3
    assert pattern("figure8").writhe == 0
    assert pattern("unknot").is_trivial()
    assert alexander_polynomial(pattern("trefoil#figure8").diagram).to_text() == \
        "x1^4 - 4*x1^3 + 5*x1^2 - 4*x1 + 1"


def test_site_errors(links):
    d = links["t2_6"]
    with pytest.raises(SiteInvalid):
        validate_site(d, site(99))
    with pytest.raises(KnottedAxis):
        validate_site(d, site(7, -7))
    with pytest.raises(NontrivialTangle):
        validate_site(d, site(1, -4))
    with pytest.raises(SiteInvalid):
        validate_site(unlink(2), site(1))
    with pytest.raises(SiteInvalid):
        mark_site(d, [(7, -1), (2, 1)], require_null=True)


def test_kinked_circle_accepts_a_site():
    d = add_kink(unlink(2), 1)
    e = d.components[0][0]
    validate_site(d, site(e))


@pytest.mark.parametrize("name", SITED)
@pytest.mark.parametrize("J", PATTERNS)
def test_infection_preserves_homology_invariants(links, name, J):
    d = links[name]
    s = d.sites[0]
    report = verify_homology_invariance(d, s, J)
    assert not report.hypothesis_violated
    assert report.passed, report.to_json()


@pytest.mark.parametrize("name", SITED)
@pytest.mark.parametrize("J", PATTERNS + ["trefoil_lh"])
def test_infected_diagram_shape(links, name, J):
    d = links[name]
    s = d.sites[0]
    out = infect(d, s, J)
    assert out.is_planar()
    assert out.m == d.m
    assert out.crossing_count == expected_crossings(d, s, pattern(J))
    assert linking_matrix(out) == linking_matrix(d)


def test_component_knot_type_changes(links):
    d = links["t2_6"]
    out = infect(d, d.sites[0], "trefoil")
    assert alexander_polynomial(sublink(d, [2])).is_unit()
    # the site encircles two strands of component 2 with opposite signs;
    # the component itself stays unknotted while the link changes
    assert mu_table(out) == mu_table(d)


def test_non_null_site_is_flagged(links):
    d = links["t2_6"].with_sites(())
    report = verify_homology_invariance(d, site(-7, 2), "trefoil")
    assert report.hypothesis_violated
    assert not report.passed


def test_trivial_pattern_is_identity(links):
    d = links["t2_6"]
    assert infect(d, d.sites[0], "unknot") is d


def test_intersecting_sites_rejected(links):
    with pytest.raises(SiteInvalid):
        mark_site(links["t2_4"], [(2, -1), (4, 1)])
    with pytest.raises(SiteInvalid):
        mark_site(links["t2_4"], [(5, -1), (6, 1)])


def test_other_sites_are_carried(links):
    d = mark_site(links["t2_4"], [(1, 1), (3, -1)])
    assert len(d.sites) == 2
    out = infect(d, d.sites[0], "trefoil")
    (moved,) = out.sites
    validate_site(out, moved)
    again = infect(out, moved, "figure8")
    assert alexander_polynomial(again) == alexander_polynomial(d)
    assert linking_matrix(again) == linking_matrix(d)
