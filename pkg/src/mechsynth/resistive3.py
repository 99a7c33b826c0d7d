"""Three-port resistive networks with at most three elements: decide, synthesize,
verify, plus the enumeration oracle used to exercise necessity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator

from . import graphs
from .errors import InvalidCertificate, OracleMismatch
from .exactalg import format_rat
from .netmodel import MechNetwork, admittance_matrix, dumps_netlist, to_netlist_dict
from .paramount3 import SIGN_PATTERNS, PortMatrix3, SignTarget, sign_normalize


@dataclass(frozen=True)
class Reject:
    """A mathematical rejection (a value, not an error)."""

    reason: str
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class LTreeCertificate:
    pattern: tuple[int, int, int]
    quantities: tuple[Fraction, ...]  # |y12|, |y13|, |y23|, slack1, slack2, slack3
    zero_count: int

    @property
    def slacks(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.quantities[3:]  # type: ignore[return-value]

    @property
    def valid(self) -> bool:
        return all(q >= 0 for q in self.quantities) and self.zero_count >= 3

    def to_dict(self) -> dict:
        return {
            "kind": "LTree",
            "pattern": list(self.pattern),
            "quantities": [format_rat(q) for q in self.quantities],
            "zero_count": self.zero_count,
        }


PTREE_SLACK_NAMES = ("g12", "g13", "g14", "g23", "g24", "g34")
_MIDDLE_TO_CASE = {1: "a", 2: "b", 0: "c"}


@dataclass(frozen=True)
class PTreeCertificate:
    pattern: tuple[int, int, int]
    permutation: tuple[int, int, int]  # 0-based original port at each path position
    case: str
    slacks: tuple[Fraction, ...]  # path conductances g12, g13, g14, g23, g24, g34
    equality_count: int

    @property
    def valid(self) -> bool:
        return all(g >= 0 for g in self.slacks) and self.equality_count >= 3

    def to_dict(self) -> dict:
        return {
            "kind": "PTree",
            "pattern": list(self.pattern),
            "permutation": [p + 1 for p in self.permutation],
            "case": self.case,
            "slacks": [format_rat(g) for g in self.slacks],
            "equality_count": self.equality_count,
        }


@dataclass(frozen=True)
class SynthesisResult:
    branch: str
    certificate: dict
    network: MechNetwork
    verified: bool
    values: dict[str, Fraction] = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "branch": self.branch,
            "certificate": self.certificate,
            "netlist": to_netlist_dict(self.network),
            "verified": self.verified,
        }


# ---------------------------------------------------------------------------
# L-tree


def ltree_quantities(M: PortMatrix3) -> tuple[Fraction, ...]:
    a12, a13, a23 = abs(M.y12), abs(M.y13), abs(M.y23)
    return (a12, a13, a23, M.y11 - a12 - a13, M.y22 - a12 - a23, M.y33 - a13 - a23)


def check_ltree(M: PortMatrix3) -> LTreeCertificate | Reject:
    q = ltree_quantities(M)
    zeros = sum(1 for x in q if x == 0)
    product = M.y12 * M.y13 * M.y23
    if product > 0:
        return Reject("ltree: y12*y13*y23 > 0", {"product": format_rat(product)})
    if any(s < 0 for s in q[3:]):
        return Reject("ltree: negative slack", {"slacks": [format_rat(s) for s in q[3:]]})
    if zeros < 3:
        return Reject("ltree: fewer than three zero quantities", {"zero_count": zeros})
    d, _ = sign_normalize(M, SignTarget.NONPOSITIVE)
    return LTreeCertificate(d, q, zeros)


def _check_ltree_cert(cert: LTreeCertificate, M: PortMatrix3) -> None:
    if not isinstance(cert, LTreeCertificate) or not cert.valid:
        raise InvalidCertificate("L-tree certificate is not valid")
    if cert.quantities != ltree_quantities(M) or any(x > 0 for x in M.sign_changed(cert.pattern).off_diagonal):
        raise InvalidCertificate("L-tree certificate does not belong to this matrix")


def synth_ltree(cert: LTreeCertificate, M: PortMatrix3) -> MechNetwork:
    """Star port graph on hub node 0; conductances between port nodes and to the hub."""
    _check_ltree_cert(cert, M)
    a12, a13, a23, s1, s2, s3 = cert.quantities
    elements = [
        ("conductance", a12, 1, 2),
        ("conductance", a13, 1, 3),
        ("conductance", a23, 2, 3),
        ("conductance", s1, 1, 0),
        ("conductance", s2, 2, 0),
        ("conductance", s3, 3, 0),
    ]
    ports = [(i + 1, 0) if cert.pattern[i] > 0 else (0, i + 1) for i in range(3)]
    return MechNetwork.build(elements, ports, nodes=range(4))


# ---------------------------------------------------------------------------
# P-tree


def ptree_slacks(A: PortMatrix3) -> tuple[Fraction, ...]:
    """Path conductances for nodes 1-2-3-4 with a_{0,*} = a_{*,4} = 0."""
    a = A.rows()
    g12 = a[0][0] - a[0][1]
    g13 = a[0][1] - a[0][2]
    g14 = a[0][2]
    g23 = (a[1][1] - a[1][2]) - (a[0][1] - a[0][2])
    g24 = a[1][2] - a[0][2]
    g34 = a[2][2] - a[1][2]
    return (g12, g13, g14, g23, g24, g34)


def check_ptree(M: PortMatrix3) -> PTreeCertificate | Reject:
    best_eq = -1
    for perm in itertools.permutations(range(3)):
        for d in SIGN_PATTERNS:
            A = M.sign_changed(d).permuted(perm)
            g = ptree_slacks(A)
            eq = sum(1 for x in g if x == 0)
            if all(x >= 0 for x in g):
                best_eq = max(best_eq, eq)
                if eq >= 3:
                    return PTreeCertificate(d, tuple(perm), _MIDDLE_TO_CASE[perm[1]], g, eq)
    if M.y12 * M.y13 * M.y23 < 0:
        return Reject("ptree: y12*y13*y23 < 0")
    if best_eq < 0:
        return Reject("ptree: no arrangement with all slacks non-negative")
    return Reject("ptree: fewer than three equalities", {"best_equality_count": best_eq})


def synth_ptree(cert: PTreeCertificate, M: PortMatrix3) -> MechNetwork:
    """Path port graph 1-2-3-4, all ports oriented the same way."""
    if not isinstance(cert, PTreeCertificate) or not cert.valid:
        raise InvalidCertificate("P-tree certificate is not valid")
    A = M.sign_changed(cert.pattern).permuted(cert.permutation)
    if ptree_slacks(A) != tuple(cert.slacks):
        raise InvalidCertificate("P-tree certificate does not belong to this matrix")
    pairs = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    elements = [("conductance", g, i, j) for g, (i, j) in zip(cert.slacks, pairs)]
    ports: list[tuple[int, int]] = [(0, 0)] * 3
    for k, orig in enumerate(cert.permutation):
        plus, minus = k + 1, k + 2
        ports[orig] = (plus, minus) if cert.pattern[orig] > 0 else (minus, plus)
    return MechNetwork.build(elements, ports, nodes=range(1, 5))


# ---------------------------------------------------------------------------


def verify_matrix(net: MechNetwork, M: PortMatrix3) -> bool:
    Y = admittance_matrix(net)
    return all(Y[i][j] == M[i, j] for i in range(3) for j in range(3))


def theorem1(M: PortMatrix3) -> SynthesisResult | Reject:
    """Realize M with a three-port resistive network of at most three elements."""
    lt = check_ltree(M)
    if isinstance(lt, LTreeCertificate):
        net, branch, cert = synth_ltree(lt, M), "LTree", lt.to_dict()
    else:
        pt = check_ptree(M)
        if isinstance(pt, Reject):
            return Reject("not realizable with at most three elements", {"ltree": lt.reason, "ptree": pt.reason})
        net, branch, cert = synth_ptree(pt, M), "PTree", pt.to_dict()
    if not verify_matrix(net, M):
        raise OracleMismatch(f"synthesized network does not reproduce {M}: {dumps_netlist(net)}")
    return SynthesisResult(branch, cert, net, True)


# ---------------------------------------------------------------------------
# enumeration oracle


def enumerate_small_networks(max_elements: int = 3, max_vertices: int = 7) -> Iterator[MechNetwork]:
    """Every non-isomorphic connected 3-port network with at most ``max_elements``
    conductances, at most ``max_vertices`` nodes and a circuit-free port graph.

    Ports are treated as unlabelled, unoriented edges (the realizability test
    is invariant under port permutation and polarity). Elements carry
    placeholder value 1 and labels g1, g2, ... for callers to randomize.
    """
    if not 0 <= max_elements <= 3:
        raise ValueError("max_elements must be between 0 and 3")
    level: list[graphs.Graph] = [(0, ())]
    for _ in range(3):
        level = graphs.grow(level, "p", max_vertices)
    level = [g for g in level if graphs.colour_forest(g, {"p"})]
    for k in range(max_elements + 1):
        if k:
            level = graphs.grow(level, "g", max_vertices)
        for g in level:
            if graphs.is_connected(g):
                yield _graph_to_network(g)


def _graph_to_network(g: graphs.Graph) -> MechNetwork:
    from .netmodel import Element, Port

    n, edges = g
    els, ports = [], []
    for c, u, v in edges:
        if c == "p":
            ports.append(Port(u, v, len(ports) + 1))
        else:
            els.append(Element("conductance", Fraction(1), (u, v), f"g{len(els) + 1}"))
    return MechNetwork(tuple(range(n)), tuple(els), tuple(ports))


@dataclass
class OracleReport:
    networks: int = 0
    checked: int = 0
    counterexamples: list[dict] = field(default_factory=list)


def necessity_sweep(rng, max_elements: int = 3, max_vertices: int = 7, valuations: int = 20) -> OracleReport:
    """Random positive valuations of every enumerated network must pass theorem1."""
    report = OracleReport()
    for net in enumerate_small_networks(max_elements, max_vertices):
        report.networks += 1
        for _ in range(valuations):
            values = {e.label: Fraction(rng.randint(1, 12), rng.randint(1, 6)) for e in net.elements}
            valued = net.with_values(values)
            Y = admittance_matrix(valued)
            M = PortMatrix3.from_rows([[y.constant_value() for y in row] for row in Y])
            report.checked += 1
            if isinstance(theorem1(M), Reject):
                report.counterexamples.append({"matrix": M.to_text(), "netlist": to_netlist_dict(valued)})
    return report
