"""Netlists of springs, dampers, inerters and conductances, and the loop-analysis
admittance oracle ``F^T (B R B^T)^{-1} F``.

Every element edge is oriented ``nodes[0] -> nodes[1]`` and every port edge
``plus -> minus``. With that convention the port admittance matrix (port
currents entering at ``plus``) is ``F^T (B R B^T)^{-1} F`` where ``[B, F]`` is
the fundamental circuit matrix for a spanning tree that contains every port
edge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import linalg
from .errors import (
    DisconnectedGraph,
    InternalInvariantError,
    NonpositiveValue,
    NotWellDefined,
    ParseError,
    PortCircuit,
    PortCountMismatch,
)
from .exactalg import Poly, RationalFunction, format_rat, parse_rat

KINDS = ("spring", "damper", "inerter", "conductance")


@dataclass(frozen=True)
class Element:
    kind: str
    value: Fraction
    nodes: tuple[int, int]
    label: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown element kind {self.kind!r}")
        if self.nodes[0] == self.nodes[1]:
            raise ValueError(f"element endpoints must differ: {self.nodes}")
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "nodes", (int(self.nodes[0]), int(self.nodes[1])))


@dataclass(frozen=True)
class Port:
    plus: int
    minus: int
    index: int = 0

    def __post_init__(self):
        if self.plus == self.minus:
            raise ValueError(f"port terminals must differ: {self.plus}")


@dataclass(frozen=True)
class MechNetwork:
    nodes: tuple[int, ...]
    elements: tuple[Element, ...] = ()
    ports: tuple[Port, ...] = ()

    def __post_init__(self):
        nodes = tuple(sorted(set(self.nodes)))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "elements", tuple(self.elements))
        ports = tuple(
            p if p.index else Port(p.plus, p.minus, i + 1) for i, p in enumerate(self.ports)
        )
        object.__setattr__(self, "ports", ports)
        known = set(nodes)
        for e in self.elements:
            if not set(e.nodes) <= known:
                raise ValueError(f"element {e} uses a node outside {nodes}")
        for p in ports:
            if not {p.plus, p.minus} <= known:
                raise ValueError(f"port {p} uses a node outside {nodes}")

    @classmethod
    def build(
        cls,
        elements: Iterable[tuple],
        ports: Iterable[tuple[int, int]],
        nodes: Iterable[int] = (),
        drop_zero: bool = True,
    ) -> MechNetwork:
        """Convenience constructor from ``(kind, value, u, v[, label])`` and ``(plus, minus)``.

        Zero-valued elements are dropped (an open circuit) unless ``drop_zero`` is False.
        """
        els = []
        for kind, value, u, v, *label in elements:
            value = Fraction(value)
            if drop_zero and value == 0:
                continue
            els.append(Element(kind, value, (u, v), label[0] if label else None))
        prts = [Port(p, m, i + 1) for i, (p, m) in enumerate(ports)]
        all_nodes = set(nodes)
        for e in els:
            all_nodes.update(e.nodes)
        for p in prts:
            all_nodes.update((p.plus, p.minus))
        return cls(tuple(all_nodes), tuple(els), tuple(prts))

    @property
    def n_ports(self) -> int:
        return len(self.ports)

    def census(self) -> dict[str, int]:
        out = {k: 0 for k in KINDS}
        for e in self.elements:
            out[e.kind] += 1
        return out

    def augmented_edges(self) -> list[tuple[tuple[str, int], int, int]]:
        """All edges as ``(("e"|"p", index), tail, head)``; elements first."""
        edges = [(("e", i), e.nodes[0], e.nodes[1]) for i, e in enumerate(self.elements)]
        edges += [(("p", j), p.plus, p.minus) for j, p in enumerate(self.ports)]
        return edges

    def with_values(self, values: dict[str, Fraction]) -> MechNetwork:
        """Substitute element values by label; zero-valued elements are dropped."""
        els = []
        for e in self.elements:
            v = Fraction(values[e.label]) if e.label in values else e.value
            if v != 0:
                els.append(Element(e.kind, v, e.nodes, e.label))
        return MechNetwork(self.nodes, tuple(els), self.ports)


# ---------------------------------------------------------------------------
# graph helpers


class _DSU:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def is_connected(net: MechNetwork) -> bool:
    if not net.nodes:
        return True
    d = _DSU(net.nodes)
    for _, u, v in net.augmented_edges():
        d.union(u, v)
    return len({d.find(x) for x in net.nodes}) == 1


def _require_connected(net: MechNetwork) -> None:
    if not is_connected(net):
        raise DisconnectedGraph("augmented graph is not connected")


def ports_form_forest(net: MechNetwork) -> bool:
    d = _DSU(net.nodes)
    return all(d.union(p.plus, p.minus) for p in net.ports)


def port_graph_extends_to_tree(net: MechNetwork) -> bool:
    """True iff the port edges contain no circuit (so some spanning tree holds them all)."""
    _require_connected(net)
    return ports_form_forest(net)


def spanning_tree(net: MechNetwork, priority: Sequence[tuple[str, int]] | None = None) -> frozenset:
    """Greedy spanning tree taking edges in ``priority`` order.

    The default order (ports, then elements by index) gives the lexicographically
    smallest tree that contains all port edges whenever one exists.
    """
    edges = {eid: (u, v) for eid, u, v in net.augmented_edges()}
    if priority is None:
        priority = [("p", j) for j in range(net.n_ports)] + [
            ("e", i) for i in range(len(net.elements))
        ]
    d = _DSU(net.nodes)
    tree = set()
    for eid in priority:
        u, v = edges[eid]
        if d.union(u, v):
            tree.add(eid)
    return frozenset(tree)


@dataclass(frozen=True)
class CircuitStructure:
    """Fundamental circuit matrix ``[B, F]`` for a spanning tree."""

    B: tuple[tuple[int, ...], ...]
    F: tuple[tuple[int, ...], ...]
    tree: frozenset
    chords: tuple[tuple[str, int], ...] = field(default=())


def circuit_structure(net: MechNetwork, tree: Iterable[tuple[str, int]] | None = None) -> CircuitStructure:
    _require_connected(net)
    tree = spanning_tree(net) if tree is None else frozenset(tree)
    edges = net.augmented_edges()
    if len(tree) != len(net.nodes) - 1:
        raise ValueError("tree does not span the augmented graph")
    adj: dict[int, list[tuple[int, tuple[str, int], int]]] = {x: [] for x in net.nodes}
    ends = {}
    for eid, u, v in edges:
        ends[eid] = (u, v)
        if eid in tree:
            adj[u].append((v, eid, +1))  # traversed tail->head
            adj[v].append((u, eid, -1))
    ne, n = len(net.elements), net.n_ports
    B_rows, F_rows, chords = [], [], []
    for eid, u, v in edges:
        if eid in tree:
            continue
        # circuit: u -> v along the chord, then back v -> u through the tree
        row = {eid: 1}
        prev: dict[int, tuple[int, tuple[str, int], int] | None] = {v: None}
        stack = [v]
        while stack:
            x = stack.pop()
            if x == u:
                break
            for y, tid, orient in adj[x]:
                if y not in prev:
                    prev[y] = (x, tid, orient)
                    stack.append(y)
        if u not in prev:
            raise InternalInvariantError("tree path missing")
        x = u
        while prev[x] is not None:
            px, tid, orient = prev[x]
            row[tid] = orient
            x = px
        B_rows.append(tuple(row.get(("e", i), 0) for i in range(ne)))
        F_rows.append(tuple(row.get(("p", j), 0) for j in range(n)))
        chords.append(eid)
    return CircuitStructure(tuple(B_rows), tuple(F_rows), tree, tuple(chords))


# ---------------------------------------------------------------------------
# impedances and the oracle

_S = Poly.s()


def element_impedance(e: Element) -> RationalFunction:
    """spring s/k, damper 1/c, inerter 1/(b s), conductance 1/g."""
    if e.value <= 0:
        raise NonpositiveValue(f"element value must be positive: {e}")
    v = e.value
    if e.kind == "spring":
        return RationalFunction(Poly((0, 1 / v)))
    if e.kind == "inerter":
        return RationalFunction(Poly.const(1), Poly((0, v)))
    return RationalFunction.const(1 / v)


def element_admittance(e: Element) -> RationalFunction:
    return element_impedance(e).inv()


def _impedance_at(e: Element, s: Fraction) -> Fraction:
    if e.value <= 0:
        raise NonpositiveValue(f"element value must be positive: {e}")
    if e.kind == "spring":
        return s / e.value
    if e.kind == "inerter":
        return 1 / (e.value * s)
    return 1 / e.value


def loop_impedance_matrix(structure: CircuitStructure, impedances: Sequence[Any]) -> list[list[Any]]:
    """B R B^T for diagonal R."""
    B = structure.B
    m = len(B)
    out = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            acc = 0
            for k, z in enumerate(impedances):
                if B[i][k] and B[j][k]:
                    acc = acc + B[i][k] * B[j][k] * z
            out[i][j] = out[j][i] = acc
    return out


def admittance_matrix(
    net: MechNetwork,
    tree: Iterable[tuple[str, int]] | None = None,
    at: Fraction | int | None = None,
) -> list[list[Any]]:
    """Port admittance matrix.

    Entries are RationalFunction, or Fraction when ``at`` fixes s to a number.
    """
    _require_connected(net)
    if not ports_form_forest(net):
        raise NotWellDefined("port graph contains a circuit; admittance is not defined")
    structure = circuit_structure(net, tree)
    if any(eid[0] == "p" for eid in structure.chords):
        raise NotWellDefined("chosen tree does not contain every port edge")
    n = net.n_ports
    if at is not None:
        s = Fraction(at)
        z = [_impedance_at(e, s) for e in net.elements]
    elif all(e.kind in ("damper", "conductance") for e in net.elements):
        z = [element_impedance(e).constant_value() for e in net.elements]
    else:
        z = [element_impedance(e) for e in net.elements]
    m = len(structure.B)
    if m == 0:
        Y = [[Fraction(0)] * n for _ in range(n)]
    else:
        Z = loop_impedance_matrix(structure, z)
        F = [list(r) for r in structure.F]
        X = linalg.solve(Z, F)
        Y = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                acc = 0
                for k in range(m):
                    if F[k][i] and not X[k][j] == 0:
                        acc = acc + F[k][i] * X[k][j]
                Y[i][j] = Y[j][i] = acc
    if at is not None:
        return [[Fraction(x) for x in row] for row in Y]
    return [[x if isinstance(x, RationalFunction) else RationalFunction.const(x) for x in row] for row in Y]


def driving_point(net: MechNetwork, at: Fraction | int | None = None):
    if net.n_ports != 1:
        raise PortCountMismatch(f"driving point needs exactly one port, got {net.n_ports}")
    return admittance_matrix(net, at=at)[0][0]


class PortGraphShape(Enum):
    LTREE = "LTree"
    PTREE = "PTree"
    NEITHER = "Neither"


def classify_port_graph(net: MechNetwork) -> PortGraphShape:
    """Star of port edges -> LTree, simple path -> PTree, anything else -> Neither."""
    if not ports_form_forest(net):
        raise PortCircuit("port edges contain a circuit")
    ports = net.ports
    if not ports:
        return PortGraphShape.NEITHER
    common = {ports[0].plus, ports[0].minus}
    for p in ports[1:]:
        common &= {p.plus, p.minus}
    if common:
        return PortGraphShape.LTREE
    deg: dict[int, int] = {}
    for p in ports:
        for x in (p.plus, p.minus):
            deg[x] = deg.get(x, 0) + 1
    d = _DSU(deg)
    for p in ports:
        d.union(p.plus, p.minus)
    connected = len({d.find(x) for x in deg}) == 1
    if connected and max(deg.values()) <= 2:
        return PortGraphShape.PTREE
    return PortGraphShape.NEITHER


# ---------------------------------------------------------------------------
# netlist text format


def to_netlist_dict(net: MechNetwork, with_values: bool = True) -> dict:
    els = []
    for e in net.elements:
        rec: dict[str, Any] = {"kind": e.kind}
        if with_values:
            rec["value"] = format_rat(e.value)
        rec["nodes"] = [e.nodes[0], e.nodes[1]]
        if e.label is not None:
            rec["label"] = e.label
        els.append(rec)
    return {
        "nodes": list(net.nodes),
        "elements": els,
        "ports": [{"plus": p.plus, "minus": p.minus} for p in net.ports],
    }


def dumps_netlist(net: MechNetwork, **kw) -> str:
    return json.dumps(to_netlist_dict(net, **kw), separators=(",", ":"))


def from_netlist_dict(doc: dict, require_values: bool = True) -> MechNetwork:
    try:
        nodes = [int(_reject_float(x)) for x in doc["nodes"]]
        els = []
        for rec in doc["elements"]:
            kind = rec["kind"]
            if "value" in rec:
                value = parse_rat(_reject_float(rec["value"]))
            elif require_values:
                raise ParseError(f"element without value: {rec}")
            else:
                value = Fraction(1)
            u, v = (int(_reject_float(x)) for x in rec["nodes"])
            els.append(Element(kind, value, (u, v), rec.get("label")))
        ports = [
            Port(int(_reject_float(p["plus"])), int(_reject_float(p["minus"])), i + 1)
            for i, p in enumerate(doc["ports"])
        ]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed netlist: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed netlist: {exc}") from exc
    return MechNetwork(tuple(nodes), tuple(els), tuple(ports))


def loads_netlist(text: str, require_values: bool = True) -> MechNetwork:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"netlist is not valid JSON: {exc}") from exc
    return from_netlist_dict(doc, require_values=require_values)


def _reject_float(x: Any) -> Any:
    if isinstance(x, float):
        raise ParseError(f"floating-point value {x!r} in netlist; use an exact rational string")
    return x
