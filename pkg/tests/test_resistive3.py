from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction as F

import pytest
import sympy

from helpers import random_candidate_matrix
from mechsynth.errors import InvalidCertificate
from mechsynth.netmodel import PortGraphShape, admittance_matrix, classify_port_graph, dumps_netlist
from mechsynth.paramount3 import PortMatrix3, parse_matrix
from mechsynth.resistive3 import (
    LTreeCertificate,
    PTreeCertificate,
    Reject,
    check_ltree,
    check_ptree,
    enumerate_small_networks,
    necessity_sweep,
    synth_ltree,
    synth_ptree,
    theorem1,
)
from oracles import mna_admittance

M_EX = parse_matrix("[[1,1,0],[1,2,-1],[0,-1,1]]")
M_FULL = PortMatrix3(3, 3, 3, 1, 1, 1)


def oracle_equal(net, M: PortMatrix3) -> bool:
    Y = mna_admittance(net, sympy.Integer(1))
    return Y is not None and Y == sympy.Matrix(M.rows()).applyfunc(lambda x: sympy.Rational(x.numerator, x.denominator))


def conductances(net) -> dict[tuple[int, int], F]:
    return {tuple(sorted(e.nodes)): e.value for e in net.elements}


class TestLTree:
    def test_identity(self):
        cert = check_ltree(PortMatrix3.identity())
        assert isinstance(cert, LTreeCertificate)
        assert cert.zero_count == 3 and cert.slacks == (1, 1, 1)
        net = synth_ltree(cert, PortMatrix3.identity())
        assert conductances(net) == {(0, 1): 1, (0, 2): 1, (0, 3): 1}

    def test_example(self):
        cert = check_ltree(M_EX)
        assert cert.zero_count == 4 and cert.slacks == (0, 0, 0)
        net = synth_ltree(cert, M_EX)
        assert conductances(net) == {(1, 2): 1, (2, 3): 1}
        assert [(p.plus, p.minus) for p in net.ports] == [(1, 0), (0, 2), (0, 3)]
        assert oracle_equal(net, M_EX)

    def test_two_zeros_rejected(self):
        res = check_ltree(parse_matrix("[[2,1,0],[1,3,-1],[0,-1,1]]"))
        assert isinstance(res, Reject) and res.details["zero_count"] == 2

    def test_rank_one(self):
        M = parse_matrix("[[1,1,0],[1,1,0],[0,0,0]]")
        net = synth_ltree(check_ltree(M), M)
        assert conductances(net) == {(1, 2): 1}
        assert oracle_equal(net, M)

    def test_forged(self):
        cert = check_ltree(PortMatrix3.identity())
        with pytest.raises(InvalidCertificate):
            synth_ltree(replace(cert, zero_count=2), PortMatrix3.identity())
        with pytest.raises(InvalidCertificate):
            synth_ltree(cert, M_EX)


class TestPTree:
    def test_case_a(self):
        M = parse_matrix("[[1,1,0],[1,1,0],[0,0,1]]")
        cert = check_ptree(M)
        assert isinstance(cert, PTreeCertificate) and cert.equality_count >= 3
        net = synth_ptree(cert, M)
        assert len(net.elements) == 2
        assert oracle_equal(net, M)

    def test_case_a_values(self):
        # identity arrangement on the path: g13 = 1, g34 = 1
        from mechsynth.resistive3 import ptree_slacks

        assert ptree_slacks(parse_matrix("[[1,1,0],[1,1,0],[0,0,1]]")) == (0, 1, 0, 0, 0, 1)

    def test_opposite_rows(self):
        M = parse_matrix("[[1,-1,1],[-1,1,-1],[1,-1,1]]")
        cert = check_ptree(M)
        assert isinstance(cert, PTreeCertificate)
        assert oracle_equal(synth_ptree(cert, M), M)

    def test_all_ones_single_element(self):
        M = parse_matrix("[[1,1,1],[1,1,1],[1,1,1]]")
        net = synth_ptree(check_ptree(M), M)
        assert conductances(net) == {(1, 4): 1}

    def test_reject(self):
        assert isinstance(check_ptree(M_FULL), Reject)

    def test_forged(self):
        M = parse_matrix("[[1,1,0],[1,1,0],[0,0,1]]")
        cert = check_ptree(M)
        with pytest.raises(InvalidCertificate):
            synth_ptree(replace(cert, equality_count=2), M)


class TestTheorem1:
    def test_examples(self):
        r = theorem1(PortMatrix3.identity())
        assert r.branch == "LTree" and len(r.network.elements) == 3
        r = theorem1(M_EX)
        assert r.branch == "LTree" and len(r.network.elements) == 2 and r.verified
        rej = theorem1(M_FULL)
        assert isinstance(rej, Reject) and set(rej.details) == {"ltree", "ptree"}

    def test_budget_and_oracle(self, rng):
        seen = set()
        for _ in range(300):
            M = random_candidate_matrix(rng)
            r = theorem1(M)
            if isinstance(r, Reject):
                continue
            seen.add(r.branch)
            assert len(r.network.elements) <= 3 and len(r.network.nodes) <= 4
            assert oracle_equal(r.network, M)
        assert seen == {"LTree", "PTree"}

    def test_deterministic(self, rng):
        for _ in range(50):
            M = random_candidate_matrix(rng)
            a, b = theorem1(M), theorem1(PortMatrix3.from_rows(M.rows()))
            if isinstance(a, Reject):
                assert a == b
            else:
                assert a.certificate == b.certificate
                assert dumps_netlist(a.network) == dumps_netlist(b.network)


class TestEnumeration:
    def test_small_shapes(self):
        shapes = {classify_port_graph(n) for n in enumerate_small_networks(3, 4)}
        assert {PortGraphShape.LTREE, PortGraphShape.PTREE} <= shapes

    def test_no_elements(self):
        nets = list(enumerate_small_networks(0, 4))
        assert nets and all(not n.elements for n in nets)
        for n in nets:
            assert all(y.is_zero() for row in admittance_matrix(n) for y in row)

    def test_all_tree_case(self):
        # port and element edges together forming a spanning tree: every port current is zero
        hits = [n for n in enumerate_small_networks(3, 7)
                if len(n.elements) == 3 and len(n.nodes) == 7]
        assert hits
        for n in hits[:20]:
            assert all(y.is_zero() for row in admittance_matrix(n) for y in row)

    def test_bad_size(self):
        with pytest.raises(ValueError):
            list(enumerate_small_networks(4, 4))

    def test_small_sweep(self):
        report = necessity_sweep(random.Random(7), 3, 5, 3)
        assert report.networks > 0 and not report.counterexamples
