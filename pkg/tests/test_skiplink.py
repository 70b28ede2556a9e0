import json

import numpy as np
import pytest

from ccomplex.model import SchemaError
from ccomplex.skiplink import (Crossing, LinkDiagram, MalformedDiagramError,
                               boundary_consistent, clasp_linking,
                               fixture_path, is_pairwise_unlinked,
                               linking_matrix, linking_number,
                               load_skip_fixture, pd_crossings)

from conftest import FIXTURES, fixture


def diagram(crossings, comps=(("a", 1), ("b", 2))):
    return LinkDiagram(tuple(comps),
                       tuple(Crossing(o, u, s) for o, u, s in crossings))


HOPF = diagram([("a", "b", 1), ("b", "a", 1)])


def test_positive_hopf():
    assert linking_number(HOPF, "a", "b") == 1


def test_no_crossings():
    d = diagram([])
    assert linking_number(d, "a", "b") == 0
    assert is_pairwise_unlinked(d)
    assert is_pairwise_unlinked(LinkDiagram((), ()))


def test_symmetric_and_order_independent():
    xs = [("a", "b", 1), ("b", "a", 1), ("a", "c", -1), ("c", "b", 1),
          ("c", "a", -1), ("b", "c", 1), ("a", "a", 1)]
    comps = (("a", 1), ("b", 2), ("c", 3))
    d = diagram(xs, comps)
    rng = np.random.default_rng(0)
    for _ in range(10):
        perm = [xs[i] for i in rng.permutation(len(xs))]
        e = diagram(perm, comps)
        assert np.array_equal(linking_matrix(e), linking_matrix(d))
    for a in "abc":
        for b in "abc":
            if a != b:
                assert linking_number(d, a, b) == linking_number(d, b, a)
    assert linking_matrix(d).tolist() == [[0, 1, -1], [1, 0, 1], [-1, 1, 0]]


def test_linking_errors():
    with pytest.raises(KeyError):
        linking_number(HOPF, "a", "z")
    with pytest.raises(ValueError):
        linking_number(HOPF, "a", "a")
    odd = diagram([("a", "b", 1)])
    with pytest.raises(MalformedDiagramError):
        linking_number(odd, "a", "b")


def test_diagram_invariants():
    with pytest.raises(MalformedDiagramError):
        diagram([("a", "b", 2), ("b", "a", 1)])
    with pytest.raises(MalformedDiagramError):
        diagram([("a", "x", 1)])
    with pytest.raises(MalformedDiagramError):
        LinkDiagram((("a", 1), ("a", 2)), ())


def test_clasp_linking():
    assert clasp_linking(fixture("hopf.json"), 1, 2) == 1
    assert clasp_linking(fixture("ribbon_F.json"), 1, 2) == 0
    assert clasp_linking(fixture("bing_double_boundary.json"), 1, 2) == 0
    with pytest.raises(ValueError):
        clasp_linking(fixture("hopf.json"), 1, 1)
    with pytest.raises(ValueError):
        clasp_linking(fixture("hopf.json"), 1, 3)


# -- PD codes ---------------------------------------------------------------------

def test_pd_hopf_both_chiralities():
    comps, xs = pd_crossings([[4, 1, 3, 2], [2, 3, 1, 4]])
    assert comps == [[1, 2], [3, 4]]
    assert sorted(s for _, _, s in xs) == [-1, -1]
    _, xs = pd_crossings([[4, 2, 3, 1], [2, 4, 1, 3]])
    assert sorted(s for _, _, s in xs) == [1, 1]


def test_pd_trefoil_single_component():
    comps, xs = pd_crossings([[1, 5, 2, 4], [5, 3, 6, 2], [3, 1, 4, 6]])
    assert comps == [[1, 2, 3, 4, 5, 6]]
    assert all(o == u == 0 for o, u, _ in xs)
    assert len({s for _, _, s in xs}) == 1


def test_pd_whitehead_linking_zero():
    pd = [[6, 1, 7, 2], [10, 7, 5, 8], [4, 5, 1, 6], [2, 10, 3, 9],
          [8, 4, 9, 3]]
    comps, xs = pd_crossings(pd)
    assert len(comps) == 2
    between = [s for o, u, s in xs if o != u]
    assert len(between) == 4 and sum(between) == 0


@pytest.mark.parametrize("pd", [
    [[1, 2, 3, 4]],
    [[1, 1, 2, 2], [3, 3, 4, 5]],
])
def test_pd_malformed(pd):
    with pytest.raises(MalformedDiagramError):
        pd_crossings(pd)


def test_pd_must_match_crossings():
    data = json.loads((FIXTURES / "skip_F.json").read_text())
    data["crossings"][0]["sign"] = -1
    data["crossings"][1]["sign"] = -1
    with pytest.raises(MalformedDiagramError):
        LinkDiagram.from_json(data)


def test_diagram_json_roundtrip():
    d = load_skip_fixture("ribbon_link").diagram
    again = LinkDiagram.from_json(d.to_json())
    assert again == d


def test_diagram_schema_error():
    with pytest.raises(SchemaError):
        LinkDiagram.from_json({"components": [{"id": "a"}]})


# -- fixtures ---------------------------------------------------------------------

def test_fixture_path_resolves():
    assert fixture_path("skip_F").exists()
    assert fixture_path("skip_F.json") == fixture_path("skip_F")


def test_skip_fixtures():
    f = load_skip_fixture("skip_F")
    fp = load_skip_fixture("skip_F_prime")
    assert f.check() and fp.check()
    assert linking_matrix(f.diagram).any()
    assert not is_pairwise_unlinked(f.diagram)
    assert is_pairwise_unlinked(fp.diagram)


def test_boundary_link_fixtures():
    ribbon = load_skip_fixture("ribbon_link")
    assert len(ribbon.ccomplexes) == 2
    assert ribbon.check()
    for c in ribbon.ccomplexes:
        assert boundary_consistent(c, ribbon.diagram)
    hopf = load_skip_fixture("hopf_link")
    assert hopf.check()
    assert clasp_linking(hopf.ccomplexes[0], 1, 2) == \
        linking_number(hopf.diagram, "L1", "L2")


def test_boundary_mismatch_detected():
    hopf = load_skip_fixture("hopf_link")
    assert not boundary_consistent(fixture("hopf_negative.json"),
                                   hopf.diagram)


def test_every_diagram_fixture_loads():
    for path in sorted(FIXTURES.glob("*.json")):
        data = json.loads(path.read_text())
        if "components" in data:
            assert load_skip_fixture(path).check(), path.name
