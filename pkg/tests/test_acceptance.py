"""End-to-end acceptance checks, one test per criterion.

Every comparison is exact rational equality (tolerance 0). Runtime budgets
are asserted as written next to each criterion.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction as F

import pytest
import sympy

from conftest import SEED
from helpers import random_augmented, random_candidate_matrix
from mechsynth.exactalg import CoefficientVector as CV
from mechsynth.netmodel import driving_point, port_graph_extends_to_tree
from mechsynth.oneport.arbitrary import (
    ArbitraryOnly,
    classify_arbitrary_springs,
    classify_region,
    region_quantities,
    region_rows,
)
from mechsynth.oneport.fig2 import CASES, load_catalog, recover_topologies, synth_fig2
from mechsynth.oneport.foster import BUDGET, foster_synthesize, random_sp_tree, tree_admittance
from mechsynth.oneport.samples import random_case_cv, random_nonneg_G
from mechsynth.oneport.theorem5 import build_G, classify_theorem5, cond1_witnesses, cv_from_G, w_quantities
from mechsynth.oneport.theorem6 import (
    Mode,
    classify_theorem6,
    fig3_coefficients,
    fig3_element_values,
    fig3_network,
    synth_fig3,
)
from mechsynth.paramount3 import PortMatrix3
from mechsynth.resistive3 import Reject, necessity_sweep, theorem1
from oracles import mna_admittance, mna_solvable, same_function


def criterion(n: int, title: str):
    return pytest.mark.criterion(n, title)


def rat(x: F) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


@criterion(1, "resistive round trip on 1000 accepted matrices")
def test_c1_resistive_round_trip():
    rng = random.Random(SEED)
    start = time.perf_counter()
    accepted, branches = 0, {"LTree": 0, "PTree": 0}
    while accepted < 1000:
        M = random_candidate_matrix(rng)
        res = theorem1(M)
        if isinstance(res, Reject):
            continue
        accepted += 1
        branches[res.branch] += 1
        Y = mna_admittance(res.network, sympy.Integer(1))
        assert Y == sympy.Matrix(M.rows()).applyfunc(rat), M
        assert len(res.network.elements) <= 3
    elapsed = time.perf_counter() - start
    print(f"accepted 1000 ({branches}) in {elapsed:.1f}s")
    assert min(branches.values()) >= 100
    assert elapsed < 30


@criterion(2, "necessity over every network with <= 3 elements on <= 7 vertices")
def test_c2_necessity():
    start = time.perf_counter()
    report = necessity_sweep(random.Random(SEED), 3, 7, 20)
    elapsed = time.perf_counter() - start
    print(f"{report.networks} networks, {report.checked} valuations, "
          f"{len(report.counterexamples)} counterexamples in {elapsed:.1f}s")
    assert report.networks > 0 and report.checked == 20 * report.networks
    assert report.counterexamples == []
    assert elapsed < 300


@criterion(3, "port-tree test agrees with solvability on 500 augmented graphs")
def test_c3_port_tree_matches_solvability():
    rng = random.Random(SEED)
    tally = {True: 0, False: 0}
    for _ in range(500):
        net = random_augmented(rng, max_vertices=7)
        want = mna_solvable(net)
        assert port_graph_extends_to_tree(net) == want, net
        tally[want] += 1
    assert tally[True] and tally[False]


def _fig3_values(rng: random.Random, cond: int) -> dict[str, F]:
    v = {"b": F(rng.randint(1, 9), rng.randint(1, 4)), "c": F(rng.randint(1, 9), rng.randint(1, 4))}
    for k in ("k1", "k2", "k3"):
        v[k] = F(rng.randint(0, 9), rng.randint(1, 4))
    if cond == 1:
        v["k1"] += 1
    return v


@criterion(4, "cubic-denominator round trip on all five configurations")
def test_c4_theorem6_round_trip():
    unit = {"b": 1, "c": 1, "k1": 1, "k2": 1, "k3": 1}
    cv5, cv2 = CV.of((1, 2, 2, 3), (1, 1, 2), beta4=0), CV.of((0, 2, 2, 3), (1, 1, 2), beta4=0)
    assert classify_theorem6(cv5).condition == 5 and fig3_element_values(cv5, 5) == unit
    assert classify_theorem6(cv2).condition == 2 and fig3_element_values(cv2, 2) == unit
    rng = random.Random(SEED)
    for cond in range(1, 6):
        for i in range(500):
            v = _fig3_values(rng, cond)
            net = fig3_network(cond, v)
            Y = driving_point(net)
            cv = fig3_coefficients(cond, v)
            assert cv.to_rf() == Y
            if i < 10:  # independent nodal analysis on a subset
                assert same_function(Y, mna_admittance(net)[0, 0])
            res = classify_theorem6(cv, Mode.SCALE_SEARCH)
            assert res.condition == cond, (cond, v)
            assert driving_point(synth_fig3(cv, cond, res.lam)) == Y


@criterion(5, "bridge-configuration round trip and catalog regeneration")
def test_c5_fig2():
    rng = random.Random(SEED)
    catalog = load_catalog()
    for case in CASES:
        for _ in range(50):
            cv = random_case_cv(case, rng)
            assert all(sympy.sqrt(rat(x)).is_rational for x in (w_quantities(cv).W1, w_quantities(cv).W2, w_quantities(cv).W3))
            net = synth_fig2(cv, classify_theorem5(cv), catalog)
            assert driving_point(net) == cv.to_rf()
            c = net.census()
            assert (c["spring"], c["damper"], c["inerter"]) == (3, 1, 1)
    doc = recover_topologies()
    assert {e["case"]: e["matches"] for e in doc["entries"]} == {c: 1 for c in CASES}
    from mechsynth.netmodel import from_netlist_dict
    for e in doc["entries"]:
        regenerated = from_netlist_dict(e["netlist"], require_values=False)
        assert regenerated == catalog[e["case"]]


@criterion(6, "Condition 1 example and 500 series-parallel round trips")
def test_c6_cond1():
    cv = CV.of((1, 1, 2, 2), (2, 3, 5))
    br = classify_theorem5(cv)
    assert br.kind == "Cond1" and "alpha3-W/(2W3)" in br.witnesses
    w = w_quantities(cv)
    assert cv.alpha3 - w.W / (2 * w.W3) == 0
    G = build_G(cv)
    assert G.rows() == [[1, 1, 1], [1, 2, 1], [1, 1, 3]]
    assert sympy.Matrix(G.rows()).det() == 2 == cv.alpha0
    rng = random.Random(SEED)
    for _ in range(500):
        Y = tree_admittance(random_sp_tree(rng))
        net = foster_synthesize(Y)
        c = net.census()
        assert all(c.get(k, 0) <= BUDGET[k] for k in BUDGET)
        assert driving_point(net) == Y


def _minors(G: PortMatrix3) -> list:
    A = sympy.Matrix(G.rows())
    out = list(A)  # first order
    for r in itertools.combinations(range(3), 2):
        for c in itertools.combinations(range(3), 2):
            out.append(A.extract(list(r), list(c)).det())
    return out


@criterion(7, "coefficient and matrix formulations agree on 1000 admissible vectors")
def test_c7_consistency():
    rng = random.Random(SEED)
    hits = {True: 0, False: 0}
    for _ in range(1000):
        cv = cv_from_G(random_nonneg_G(rng, zero_prob=0.12))
        assert w_quantities(cv).admissible
        G = build_G(cv)
        A = sympy.Matrix(G.rows())
        G1, G2, G3, G4, G5, G6 = (rat(x) for x in G.G)
        # the matrix identities, from sympy minors of G
        assert [rat(x) for x in cv.values()] == [
            A[0, 0], A[:2, :2].det(), A.extract([0, 2], [0, 2]).det(), A.det(),
            A[1, 1], A[2, 2], A[1:, 1:].det(),
        ]
        # a first/second-order minor vanishes exactly when one of the twelve quantities does
        vanishing = any(m == 0 for m in _minors(G))
        assert vanishing == bool(cond1_witnesses(cv)), cv
        hits[vanishing] += 1
        # half-sum identities
        a3, a2, a1, a0 = (rat(x) for x in cv.alphas)
        b3, b2, b1 = (rat(x) for x in cv.betas)
        base = G1 * G2 * G3 + G4 * G5 * G6
        assert base - G1 * G6**2 - G3 * G4**2 == (a0 + a3 * b1 + a2 * b2 - a1 * b3) / 2
        assert base - G1 * G6**2 - G2 * G5**2 == (a0 + a3 * b1 + a1 * b3 - a2 * b2) / 2
        assert base - G3 * G4**2 - G2 * G5**2 == (a0 + a1 * b3 + a2 * b2 - a3 * b1) / 2
    assert hits[True] >= 50 and hits[False] >= 50


@criterion(8, "G5-G6 region map reproduction on the 201x201 lattice")
def test_c8_region_map():
    start = time.perf_counter()
    rows = list(region_rows(F(1), F(1), F(1), F(1, 2), 201, F(-1), F(1)))
    elapsed = time.perf_counter() - start
    assert len(rows) == 201 * 201
    at = {(r.g5, r.g6): (r.cls, r.witness) for r in rows}
    assert at[F(7, 10), F(7, 10)] == ("arbitrary-springs", "condition2")
    # G5 = 0 there, which is the quantity m1-dagger
    assert at[F(0), F(1, 2)] == ("at-most-three-boundary", "m1_dagger")
    assert at[F(1, 2), F(0)] == ("at-most-three-boundary", "m1")
    counts: dict[str, int] = {}
    for r in rows:
        counts[r.cls] = counts.get(r.cls, 0) + 1
        if not r.cls.startswith("at-most-three"):
            continue
        q = region_quantities(PortMatrix3.from_G(1, 1, 1, F(1, 2), r.g5, r.g6)).named()
        if r.witness in q:
            assert q[r.witness] in (0, None), r  # None: the ratio's divisor is itself zero
        else:
            G = PortMatrix3.from_G(1, 1, 1, F(1, 2), r.g5, r.g6)
            G1, G2, G3, G4, G5, G6 = G.G
            named = {"G1G2-G4^2": G1 * G2 - G4 * G4, "G1G3-G5^2": G1 * G3 - G5 * G5,
                     "G2G3-G6^2": G2 * G3 - G6 * G6, "G1": G1, "G2": G2, "G3": G3, "G4": G4}
            assert named[r.witness] == 0, r
    print(f"classes {counts} in {elapsed:.1f}s")
    assert elapsed < 60


@criterion(9, "at-most-three acceptance is a proper subset of arbitrary-spring acceptance")
def test_c9_subset():
    rng = random.Random(SEED)
    only, both = 0, 0
    for i in range(10_000):
        if i % 2:
            cv = cv_from_G(random_nonneg_G(rng, zero_prob=0.1))
        else:
            cv = CV.of([F(rng.randint(0, 6), rng.randint(1, 3)) for _ in range(4)],
                       [F(rng.randint(0, 6), rng.randint(1, 3)) for _ in range(3)])
        narrow = bool(classify_theorem5(cv))
        broad = classify_arbitrary_springs(cv)
        if narrow:
            assert broad, cv
            both += 1
        elif isinstance(broad, ArbitraryOnly):
            only += 1
    print(f"accepted by both: {both}; only by the broader test: {only}")
    assert only > 0 and both > 0
