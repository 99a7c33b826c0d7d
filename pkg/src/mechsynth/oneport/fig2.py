"""Bridge configurations for the Condition-2 cases.

Their topologies are recovered, not transcribed: every one-port graph with
three springs, one damper and one inerter on at most six nodes is tried
with every spring labelling, and a (graph, labelling) pair is kept for a
case when the printed element formulas make its driving-point admittance
equal the target on random exact instances. The frozen result lives in
``data/fig2_catalog.json`` and is rebuilt by :func:`regenerate_catalog`.
"""

from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from .. import graphs, linalg
from ..errors import BranchMismatch, NonpositiveValue, OracleMismatch, TopologyUnavailable
from ..exactalg import CoefficientVector
from ..netmodel import (
    Element,
    MechNetwork,
    Port,
    circuit_structure,
    driving_point,
    from_netlist_dict,
    to_netlist_dict,
)
from .samples import random_case_cv
from .theorem5 import Branch, classify_theorem5, fig2_element_values

CASES = ("a", "b", "c", "d")
_KIND = {"k": "spring", "c": "damper", "b": "inerter"}
CATALOG_RESOURCE = "fig2_catalog.json"


def enumerate_oneport_topologies(max_vertices: int = 6) -> list[graphs.Graph]:
    """Connected one-port graphs with 3 springs, 1 damper, 1 inerter whose port,
    damper and inerter edges are circuit-free (the spring three-port has a
    well-defined admittance)."""
    level: list[graphs.Graph] = [(2, (("p", 0, 1),))]
    for colour in "kkkcb":
        level = graphs.grow(level, colour, max_vertices)
    return [g for g in level if graphs.is_connected(g) and graphs.colour_forest(g, {"p", "c", "b"})]


def template_network(g: graphs.Graph, spring_labels: Sequence[str]) -> MechNetwork:
    n, edges = g
    els, ports = [], []
    springs = iter(spring_labels)
    for colour, u, v in edges:
        if colour == "p":
            ports.append(Port(u, v, len(ports) + 1))
        else:
            label = next(springs) if colour == "k" else colour
            els.append(Element(_KIND[colour], Fraction(1), (u, v), label))
    return MechNetwork(tuple(range(n)), tuple(els), tuple(ports))


def _fast_evaluator(net: MechNetwork):
    """Driving-point admittance at a numeric s, reusing one circuit structure."""
    st = circuit_structure(net)
    B = st.B
    F = [row[0] for row in st.F]
    m = len(B)
    labels = [e.label for e in net.elements]
    kinds = [e.kind for e in net.elements]

    def evaluate(values: dict[str, Fraction], s: Fraction) -> Fraction | None:
        z = []
        for lab, kind in zip(labels, kinds):
            v = values[lab]
            if v <= 0:
                return None
            z.append(s / v if kind == "spring" else 1 / (v * s) if kind == "inerter" else 1 / v)
        Z = [[sum((B[i][k] * B[j][k] * z[k] for k in range(len(z)) if B[i][k] and B[j][k]), Fraction(0))
              for j in range(m)] for i in range(m)]
        try:
            X = linalg.solve(Z, [[f] for f in F])
        except Exception:
            return None
        return sum((F[k] * X[k][0] for k in range(m)), Fraction(0))

    return evaluate


def recover_topologies(seed: int = 2015, n_instances: int = 3, max_vertices: int = 6) -> dict:
    """Search the topology space for each case; returns the catalog document."""
    rng = random.Random(seed)
    instances = {case: [random_case_cv(case, rng) for _ in range(n_instances)] for case in CASES}
    points = [Fraction(3, 7), Fraction(5, 2), Fraction(11, 3), Fraction(17, 5)][:n_instances]
    targets = {case: [cv.to_rf()(s) for cv, s in zip(instances[case], points)] for case in CASES}
    values = {case: [fig2_element_values(cv, case) for cv in instances[case]] for case in CASES}
    topologies = enumerate_oneport_topologies(max_vertices)
    found: dict[str, list] = {case: [] for case in CASES}
    for g in topologies:
        for labels in sorted(set(itertools.permutations(("k1", "k2", "k3")))):
            net = template_network(g, labels)
            evaluate = _fast_evaluator(net)
            for case in CASES:
                if all(
                    evaluate(v, s) == t
                    for v, s, t in zip(values[case], points, targets[case])
                ):
                    found[case].append(net)
    entries = []
    for case in CASES:
        nets = found[case]
        # confirm symbolically (as rational functions in s) before freezing
        confirmed = [
            net for net in nets
            if all(driving_point(net.with_values(v)) == cv.to_rf()
                   for v, cv in zip(values[case], instances[case]))
        ]
        entries.append({
            "case": case,
            "matches": len(confirmed),
            "netlist": to_netlist_dict(confirmed[0], with_values=False) if confirmed else None,
        })
    return {
        "search": {"max_vertices": max_vertices, "topologies_examined": len(topologies), "seed": seed},
        "entries": entries,
    }


def regenerate_catalog(path: str | Path | None = None, seed: int = 2015) -> dict:
    doc = recover_topologies(seed=seed)
    if path is not None:
        Path(path).write_text(json.dumps(doc, indent=1) + "\n")
    return doc


_CATALOG_CACHE: dict | None = None


def load_catalog() -> dict[str, MechNetwork]:
    global _CATALOG_CACHE
    if _CATALOG_CACHE is None:
        text = resources.files("mechsynth.data").joinpath(CATALOG_RESOURCE).read_text()
        _CATALOG_CACHE = json.loads(text)
    out = {}
    for entry in _CATALOG_CACHE["entries"]:
        if entry.get("netlist"):
            out[entry["case"]] = from_netlist_dict(entry["netlist"], require_values=False)
    return out


def synth_fig2(cv: CoefficientVector, branch: Branch, catalog: dict[str, MechNetwork] | None = None) -> MechNetwork:
    """Bridge network for a Condition-2 coefficient vector, verified exactly."""
    actual = classify_theorem5(cv)
    if not isinstance(branch, Branch) or branch.kind != "Cond2" or actual != branch:
        raise BranchMismatch(f"branch {branch!r} does not match classification {actual!r}")
    catalog = load_catalog() if catalog is None else catalog
    if branch.case not in catalog:
        raise TopologyUnavailable(f"no catalog topology for case {branch.case}")
    values = fig2_element_values(cv, branch.case)
    if values["b"] <= 0 or values["c"] <= 0 or any(values[k] < 0 for k in ("k1", "k2", "k3")):
        raise NonpositiveValue(f"element formulas gave an inadmissible value: {values}")
    net = catalog[branch.case].with_values(values)
    if driving_point(net) != cv.to_rf():
        raise OracleMismatch(f"case {branch.case} network does not reproduce {cv}")
    return net
