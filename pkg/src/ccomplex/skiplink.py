"""
Colored link diagrams, linking numbers and the skip-the-clasps fixtures.

A diagram only needs to record, for every crossing, which component passes
over, which passes under, and the crossing sign.  An optional PD code can
be attached; it is decoded independently and must reproduce the crossing
list.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .model import CComplexData, SchemaError, load_ccomplex

__all__ = [
    "Crossing",
    "LinkDiagram",
    "SkipFixture",
    "MalformedDiagramError",
    "linking_number",
    "linking_matrix",
    "clasp_linking",
    "color_linking",
    "boundary_consistent",
    "is_pairwise_unlinked",
    "pd_crossings",
    "fixture_path",
    "load_diagram",
    "load_skip_fixture",
]


class MalformedDiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    over: str
    under: str
    sign: int


@dataclass(frozen=True)
class LinkDiagram:
    components: tuple[tuple[str, int], ...]
    crossings: tuple[Crossing, ...]
    pd: tuple[tuple[int, int, int, int], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(
            (str(cid), int(col)) for cid, col in self.components))
        object.__setattr__(self, "crossings", tuple(self.crossings))
        ids = [cid for cid, _ in self.components]
        if len(set(ids)) != len(ids):
            raise MalformedDiagramError("component ids are not unique")
        known = set(ids)
        for x in self.crossings:
            if x.sign not in (1, -1):
                raise MalformedDiagramError(f"crossing sign {x.sign}")
            for cid in (x.over, x.under):
                if cid not in known:
                    raise MalformedDiagramError(f"unknown component {cid!r}")

    @property
    def component_ids(self) -> list[str]:
        return [cid for cid, _ in self.components]

    def color(self, cid: str) -> int:
        return dict(self.components)[cid]

    @classmethod
    def from_json(cls, data: Mapping) -> "LinkDiagram":
        try:
            comps = [(c["id"], c["color"]) for c in data["components"]]
            xs = [Crossing(str(x["over"]), str(x["under"]), int(x["sign"]))
                  for x in data.get("crossings", [])]
            pd = data.get("pd")
            if pd is not None:
                pd = tuple(tuple(int(v) for v in x) for x in pd)
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed diagram: {exc!r}") from exc
        d = cls(tuple(comps), tuple(xs), pd)
        if pd is not None:
            d.check_pd()
        return d

    def to_json(self) -> dict:
        out = {"components": [{"id": cid, "color": col}
                              for cid, col in self.components],
               "crossings": [{"over": x.over, "under": x.under,
                              "sign": x.sign} for x in self.crossings]}
        if self.pd is not None:
            out["pd"] = [list(x) for x in self.pd]
        return out

    def check_pd(self) -> None:
        """Raise unless the PD code decodes to the declared crossings.

        PD components are matched to declared components in order of their
        smallest edge label.
        """
        comps, xs = pd_crossings(self.pd)
        if len(comps) != len(self.components):
            raise MalformedDiagramError(
                f"PD code has {len(comps)} components, diagram declares"
                f" {len(self.components)}")
        name = dict(zip(range(len(comps)), self.component_ids))
        decoded = Counter((name[o], name[u], s) for o, u, s in xs)
        declared = Counter((x.over, x.under, x.sign) for x in self.crossings)
        if decoded != declared:
            raise MalformedDiagramError("PD code disagrees with the crossing"
                                        " list")


def pd_crossings(pd: Sequence[Sequence[int]]
                 ) -> tuple[list[list[int]], list[tuple[int, int, int]]]:
    """Decode a PD code into components and (over, under, sign) triples.

    Each X[a, b, c, d] lists edge labels counterclockwise starting from the
    incoming under-strand, so the under-strand runs a -> c and the
    over-strand joins b and d.  Labels increase by one along each component
    and wrap around at its end.  The crossing is positive when the
    over-strand runs d -> b (the KnotTheory convention).
    """
    pd = [tuple(x) for x in pd]
    labels = Counter(e for x in pd for e in x)
    if any(v != 2 for v in labels.values()):
        raise MalformedDiagramError("every PD edge label must occur twice")
    parent = {e: e for e in labels}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for a, b, c, d in pd:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    groups: dict[int, list[int]] = {}
    for e in labels:
        groups.setdefault(find(e), []).append(e)
    comps = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    which = {e: k for k, g in enumerate(comps) for e in g}

    for g in comps:
        if g != list(range(g[0], g[-1] + 1)):
            raise MalformedDiagramError("component edge labels are not"
                                        " consecutive")

    def wraps(x, y):
        g = comps[which[x]]
        return x == g[-1] and y == g[0]

    out = []
    for a, b, c, d in pd:
        if not (c == a + 1 or wraps(a, c)
                or (a == c and len(comps[which[a]]) == 1)):
            raise MalformedDiagramError(f"under-strand {a} -> {c} is not"
                                        " oriented along its component")
        # A +1 step is read before a wrap-around; this settles two-edge
        # components, where both readings are available.
        if b == d + 1:
            sign = 1
        elif d == b + 1:
            sign = -1
        elif wraps(d, b):
            sign = 1
        elif wraps(b, d):
            sign = -1
        else:
            raise MalformedDiagramError(f"over-strand {b}, {d} is not a"
                                        " consecutive pair")
        out.append((which[b], which[a], sign))
    return comps, out


def linking_number(d: LinkDiagram, a: str, b: str) -> int:
    """Half the signed count of crossings between components a and b."""
    ids = d.component_ids
    for cid in (a, b):
        if cid not in ids:
            raise KeyError(f"unknown component {cid!r}")
    if a == b:
        raise ValueError("linking number needs two distinct components")
    total = 0
    count = 0
    for x in d.crossings:
        if {x.over, x.under} == {a, b}:
            total += x.sign
            count += 1
    if count % 2:
        raise MalformedDiagramError(
            f"odd number of crossings between {a!r} and {b!r}")
    return total // 2


def linking_matrix(d: LinkDiagram) -> np.ndarray:
    ids = d.component_ids
    m = np.zeros((len(ids), len(ids)), dtype=np.int64)
    for i, a in enumerate(ids):
        for j in range(i + 1, len(ids)):
            m[i, j] = m[j, i] = linking_number(d, a, ids[j])
    return m


def is_pairwise_unlinked(d: LinkDiagram) -> bool:
    return not linking_matrix(d).any()


def clasp_linking(c: CComplexData, i: int, j: int) -> int:
    """Sum of the signs of clasps joining color i to color j."""
    for k in (i, j):
        if not 1 <= k <= c.n:
            raise ValueError(f"color {k} outside 1..{c.n}")
    if i == j:
        raise ValueError("clasp linking needs two distinct colors")
    total = 0
    for cl in c.clasps:
        if set(c.colors_of(cl)) == {i, j}:
            total += cl.sign
    return total


def color_linking(d: LinkDiagram, i: int, j: int) -> int:
    """Total linking number between the i-colored and j-colored sublinks."""
    if i == j:
        raise ValueError("color linking needs two distinct colors")
    total = 0
    for a, ca in d.components:
        for b, cb in d.components:
            if ca == i and cb == j:
                total += linking_number(d, a, b)
    return total


def boundary_consistent(c: CComplexData, d: LinkDiagram) -> bool:
    """True iff clasp signs account for every linking number between colors."""
    colors = {col for _, col in d.components}
    if not colors <= set(range(1, c.n + 1)):
        return False
    return all(clasp_linking(c, i, j) == color_linking(d, i, j)
               for i in range(1, c.n + 1) for j in range(i + 1, c.n + 1))


# -- fixtures -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SkipFixture:
    name: str
    diagram: LinkDiagram
    expected_linking: np.ndarray
    note: str = field(default="", compare=False)
    # C-complexes this diagram bounds, when the fixture packages any
    ccomplexes: tuple[CComplexData, ...] = ()

    def check(self) -> bool:
        if not np.array_equal(linking_matrix(self.diagram),
                              self.expected_linking):
            return False
        return all(boundary_consistent(c, self.diagram)
                   for c in self.ccomplexes)


def fixture_path(name: str) -> Path:
    """Path of a shipped fixture file (``name`` with or without .json)."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("ccomplex") / "fixtures" / name))


def load_diagram(path: str | Path) -> LinkDiagram:
    with open(path) as fh:
        return LinkDiagram.from_json(json.load(fh))


def load_skip_fixture(path: str | Path) -> SkipFixture:
    path = Path(path)
    if not path.exists():
        path = fixture_path(str(path))
    with open(path) as fh:
        data = json.load(fh)
    diagram = LinkDiagram.from_json(data)
    try:
        expected = np.array(data["expected_linking"], dtype=np.int64)
    except KeyError as exc:
        raise SchemaError("fixture has no expected_linking") from exc
    k = len(diagram.components)
    if expected.shape != (k, k) or not np.array_equal(expected, expected.T):
        raise SchemaError("expected_linking must be a symmetric"
                          f" {k}x{k} matrix")
    # Packaged C-complexes are named relative to the fixture file.
    comps = tuple(load_ccomplex(path.parent / name)
                  for name in data.get("ccomplex", []))
    return SkipFixture(data.get("name", path.stem), diagram, expected,
                       data.get("note", ""), comps)
