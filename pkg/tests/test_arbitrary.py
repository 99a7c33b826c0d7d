from __future__ import annotations

import csv
import io
from fractions import Fraction as F

import pytest

from mechsynth.errors import NonnegativityViolation
from mechsynth.exactalg import CoefficientVector as CV
from mechsynth.oneport.arbitrary import (
    REGION_CLASSES,
    ArbitraryOnly,
    AtMostThree,
    NotRealizable,
    classify_arbitrary_springs,
    classify_region,
    region_map,
    region_quantities,
    region_verdict_from_coefficients,
    strict_condition,
)
from mechsynth.oneport.samples import random_nonneg_G
from mechsynth.oneport.theorem5 import classify_theorem5, cv_from_G
from mechsynth.paramount3 import PortMatrix3

H = F(1, 2)


def G(g5, g6, g4=H):
    return PortMatrix3.from_G(1, 1, 1, g4, F(g5), F(g6))


class TestCoefficientLevel:
    def test_at_most_three(self):
        v = classify_arbitrary_springs(CV.of((1, 1, 2, 2), (2, 3, 5)))
        assert isinstance(v, AtMostThree) and v.branch.kind == "Cond1"

    def test_arbitrary_only(self):
        cv = cv_from_G(G(F(7, 10), F(7, 10)))
        assert not classify_theorem5(cv)
        assert classify_arbitrary_springs(cv) == ArbitraryOnly(2)
        q = region_quantities(G(F(7, 10), F(7, 10)))
        assert q.m2 > 0 and q.m2_dagger > 0 and q.m3 > 0 and q.lambda4 > 0

    def test_not_realizable(self):
        v = classify_arbitrary_springs(CV.of((1, 2, 0, 0), (0, 0, 0)))  # W1 = -2
        assert isinstance(v, NotRealizable) and not v

    def test_cubic_delegates(self):
        v = classify_arbitrary_springs(CV.of((1, 2, 2, 3), (1, 1, 2), beta4=0))
        assert isinstance(v, AtMostThree) and v.branch.condition == 5

    def test_negative(self):
        with pytest.raises(NonnegativityViolation):
            classify_arbitrary_springs(CV.of((1, 1, -2, 2), (2, 3, 5)))

    def test_condition_one_sign(self):
        cv = cv_from_G(G(H, -H))  # G4*G5*G6 < 0
        assert strict_condition(cv) == 1


class TestRegion:
    def test_samples(self):
        assert classify_region(G(F(7, 10), F(7, 10))) == ("arbitrary-springs", "condition2")
        assert classify_region(G(0, H)) == ("at-most-three-boundary", "m1_dagger")
        assert classify_region(G(H, 0)) == ("at-most-three-boundary", "m1")
        assert classify_region(G(1, -1))[0] == "not-realizable"
        assert classify_region(G(F(2, 5), F(-2, 5))) == ("arbitrary-springs", "condition1")
        assert classify_region(G(H, -H)) == ("at-most-three-boundary", "lambda4")  # det vanishes here

    def test_lambda4_boundary(self):
        M = PortMatrix3.from_G(1, 1, 1, -H, -H, -H)
        assert M.det() == 0
        assert classify_region(M) == ("at-most-three-boundary", "lambda4")

    def test_witness_exact(self):
        text = region_map(grid=41)
        rows = list(csv.DictReader(io.StringIO(text)))
        assert len(rows) == 41 * 41
        assert {r["class"] for r in rows} <= set(REGION_CLASSES)
        for r in rows:
            if not r["class"].startswith("at-most-three"):
                continue
            q = region_quantities(G(F(r["g5"]), F(r["g6"]))).named()
            name = r["witness"]
            if name in ("m1", "m1_dagger") or name.startswith("lambda"):
                assert q[name] == 0, r
            elif name in ("m2", "m2_dagger", "m3"):
                assert q[name] in (0, None), r

    def test_symmetry(self):
        for row in region_map(grid=21).splitlines()[1:]:
            g5, g6, cls, _ = row.split(",")
            g5, g6 = F(g5), F(g6)
            # a polarity flip of port 3 negates G5 and G6; swapping ports 1 and 2 swaps them
            assert classify_region(G(-g5, -g6))[0] == cls
            assert classify_region(G(g6, g5))[0] == cls

    def test_agrees_with_coefficients(self, rng):
        for _ in range(400):
            M = random_nonneg_G(rng, zero_prob=0.1)
            cls, _ = classify_region(M)
            verdict = region_verdict_from_coefficients(M)
            expect = {
                "arbitrary-springs": ArbitraryOnly,
                "not-realizable": NotRealizable,
            }.get(cls, AtMostThree)
            assert isinstance(verdict, expect), (M, cls, verdict)
