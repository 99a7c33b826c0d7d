"""The cubic-denominator family (no well-defined three-port admittance):
the spring two-port, the five bridge-free configurations and their
classification, literally or up to a common rescaling of the coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ..errors import IrrationalElement, NonnegativityViolation, NotParamount, OracleMismatch, WrongForm
from ..exactalg import CoefficientVector, format_rat, rational_sqrt
from ..netmodel import MechNetwork, admittance_matrix, driving_point
from ..resistive3 import Reject


@dataclass(frozen=True)
class TwoPortSpringMatrix:
    K11: Fraction
    K12: Fraction
    K22: Fraction

    @property
    def paramount(self) -> bool:
        return self.K11 >= abs(self.K12) and self.K22 >= abs(self.K12)


def two_port_spring(K: TwoPortSpringMatrix) -> MechNetwork:
    """Three springs k1 across port 1, k2 linking the ports, k3 across port 2.

    Port 1 is (1, 0) and port 2 is (0, 2); with K12 < 0 port 2 is flipped to (2, 0).
    """
    if not K.paramount:
        raise NotParamount(f"K = [[{K.K11}, {K.K12}], [{K.K12}, {K.K22}]] is not paramount")
    a = abs(K.K12)
    elements = [
        ("spring", K.K11 - a, 1, 0, "k1"),
        ("spring", a, 1, 2, "k2"),
        ("spring", K.K22 - a, 0, 2, "k3"),
    ]
    port2 = (0, 2) if K.K12 >= 0 else (2, 0)
    return MechNetwork.build(elements, [(1, 0), port2], nodes=range(3))


def two_port_check(net: MechNetwork, K: TwoPortSpringMatrix) -> bool:
    """admittance_matrix(net) == K / s, checked at two rational points."""
    for s in (Fraction(2), Fraction(5, 3)):
        Y = admittance_matrix(net, at=s)
        want = [[K.K11, K.K12], [K.K12, K.K22]]
        if any(Y[i][j] != want[i][j] / s for i in range(2) for j in range(2)):
            return False
    return True


# ---------------------------------------------------------------------------
# classification


class Mode(Enum):
    AS_WRITTEN = "as-written"
    SCALE_SEARCH = "scale-search"


@dataclass(frozen=True)
class Theorem6Result:
    condition: int
    lam: Fraction
    mode: Mode

    def label(self) -> str:
        return f"Theorem 6 Condition {self.condition}, λ={format_rat(self.lam)}"


# For conditions 2-4 the spring k2 solves k2^2 = (p*b1 - a0*q)/q; k1 = p/q - k2, k3 = b1 - k2.
def _pq(cv: CoefficientVector, cond: int) -> tuple[Fraction, Fraction]:
    return (cv.alpha2, cv.beta3) if cond == 3 else (cv.alpha1, cv.beta2)


def _radicand(cv: CoefficientVector, cond: int) -> Fraction:
    p, q = _pq(cv, cond)
    return (p * cv.beta1 - cv.alpha0 * q) / q


def zero_pattern(cv: CoefficientVector) -> int | None:
    """Which condition the zero pattern of (a3, b2, b3) selects (conditions are disjoint)."""
    a3, b2, b3 = cv.alpha3, cv.beta2, cv.beta3
    if a3 == 0 and b2 == 0 and b3 == 0:
        return 1
    if a3 == 0 and b2 > 0 and b3 > 0:
        return 2
    if b2 == 0 and a3 > 0 and b3 > 0:
        return 3
    if b3 == 0 and a3 > 0 and b2 > 0:
        return 4
    if a3 > 0 and b2 > 0 and b3 > 0:
        return 5
    return None


def _equality_holds(cv: CoefficientVector, cond: int) -> bool:
    a3, a2, a1, _ = cv.alphas
    b3, b2, b1 = cv.betas
    return {2: a1 * b3 == a2 * b2, 3: a1 * b3 == a3 * b1, 4: a3 * b1 == a2 * b2}[cond]


def literal_condition(cv: CoefficientVector, cond: int) -> bool:
    """The printed inequalities and identities of one condition on the literal tuple."""
    a3, a2, a1, a0 = cv.alphas
    b3, b2, b1 = cv.betas
    if zero_pattern(cv) != cond:
        return False
    if cond == 1:
        return a1 > 0 and a2 > 0 and b1 > 0
    if cond in (2, 3, 4):
        p, q = _pq(cv, cond)
        return (
            p * b1 - a0 * q >= 0
            and p * p + a0 * q * q >= p * b1 * q
            and a0 * q + q * b1 * b1 >= p * b1
            and _equality_holds(cv, cond)
        )
    x, y, z = a1 * b3, a2 * b2, a3 * b1
    return (
        x + y >= z and y + z >= x and x + z >= y
        and a3 == b2 * b3
        and x * x + y * y + z * z + 4 * a0 * a3 * a3 == 2 * (x * y + y * z + z * x)
    )


def _require_cubic(cv: CoefficientVector) -> None:
    if cv.beta4 != 0:
        raise WrongForm("the cubic-denominator family needs beta4 = 0")
    if any(v < 0 for v in cv.values()):
        raise NonnegativityViolation(f"coefficients must be non-negative: {cv}")


def feasible_interval(cv: CoefficientVector, cond: int) -> tuple[Fraction, Fraction | None] | None:
    """Closed range of scalings lam keeping k1(lam), k3(lam) >= 0 (None above means unbounded)."""
    p, q = _pq(cv, cond)
    R = _radicand(cv, cond)
    if R < 0:
        return None
    if R == 0:
        return (Fraction(0), None)
    # k3 >= 0 <=> lam*b1^2 >= R ; k1 >= 0 <=> lam*R <= (p/q)^2
    return (R / (cv.beta1 * cv.beta1), p * p / (q * q * R))


def _scale_witness(cv: CoefficientVector, cond: int) -> Fraction | None:
    if cond == 1:
        return Fraction(1) if literal_condition(cv, 1) else None
    if cond == 5:
        lam = cv.alpha3 / (cv.beta2 * cv.beta3)
        return lam if literal_condition(cv.scaled(lam), 5) else None
    if not _equality_holds(cv, cond):
        return None
    interval = feasible_interval(cv, cond)
    if interval is None:
        return None
    lo, hi = interval
    R = _radicand(cv, cond)
    if lo <= 1 and (hi is None or 1 <= hi) and rational_sqrt(R) is not None:
        return Fraction(1)
    if R == 0:
        return Fraction(1)
    # lam = R * t^2 with t = 1/b1 sits on the lower end and makes k2 = R/b1 rational
    return lo


def classify_theorem6(cv: CoefficientVector, mode: Mode = Mode.SCALE_SEARCH) -> Theorem6Result | Reject:
    _require_cubic(cv)
    cond = zero_pattern(cv)
    if cond is None:
        return Reject("zero pattern of (alpha3, beta2, beta3) matches no condition")
    if mode is Mode.AS_WRITTEN:
        if literal_condition(cv, cond):
            return Theorem6Result(cond, Fraction(1), mode)
        return Reject(f"condition {cond} fails on the literal coefficients", {"condition": cond})
    lam = _scale_witness(cv, cond)
    if lam is None:
        return Reject(f"no positive rescaling satisfies condition {cond}", {"condition": cond})
    return Theorem6Result(cond, lam, mode)


# ---------------------------------------------------------------------------
# synthesis

# port (1, 0) throughout; the spring two-port sits on nodes 0, 1, 2
_PI = (("spring", "k1", 1, 0), ("spring", "k2", 1, 2), ("spring", "k3", 0, 2))
FIG3_TOPOLOGIES: dict[int, tuple[tuple[str, str, int, int], ...]] = {
    1: (("inerter", "b", 1, 0), ("damper", "c", 1, 0), ("spring", "k1", 1, 0)),
    2: _PI + (("inerter", "b", 0, 2), ("damper", "c", 0, 2)),
    3: _PI + (("damper", "c", 1, 0), ("inerter", "b", 0, 2)),
    4: _PI + (("inerter", "b", 1, 0), ("damper", "c", 0, 2)),
    5: (
        ("spring", "k1", 1, 0), ("inerter", "b", 1, 2), ("spring", "k3", 1, 2),
        ("damper", "c", 2, 0), ("spring", "k2", 2, 0),
    ),
}


def fig3_network(cond: int, values: dict[str, Fraction]) -> MechNetwork:
    elements = [(kind, values.get(label, 0), u, v, label) for kind, label, u, v in FIG3_TOPOLOGIES[cond]]
    return MechNetwork.build(elements, [(1, 0)], nodes=range(3 if cond > 1 else 2))


def fig3_coefficients(cond: int, values: dict[str, Fraction]) -> CoefficientVector:
    """Forward map from element values to the coefficient tuple each configuration produces."""
    v = {k: Fraction(values.get(k, 0)) for k in ("b", "c", "k1", "k2", "k3")}
    b, c, k1, k2, k3 = v["b"], v["c"], v["k1"], v["k2"], v["k3"]
    a0 = k1 * k2 + k2 * k3 + k1 * k3
    rows = {
        1: ((0, b, c, k1), (0, 0, 1)),
        2: ((0, b * (k1 + k2), c * (k1 + k2), a0), (b, c, k2 + k3)),
        3: ((b * c, b * (k1 + k2), c * (k2 + k3), a0), (b, 0, k2 + k3)),
        4: ((b * c, b * (k2 + k3), c * (k1 + k2), a0), (0, c, k2 + k3)),
        5: ((b * c, b * (k1 + k2), c * (k1 + k3), a0), (b, c, k2 + k3)),
    }
    alphas, betas = rows[cond]
    return CoefficientVector.of(alphas, betas, beta4=0)


def fig3_element_values(cv: CoefficientVector, cond: int) -> dict[str, Fraction]:
    """Element values from the (already rescaled) coefficients."""
    a3, a2, a1, a0 = cv.alphas
    b3, b2, b1 = cv.betas
    if cond == 1:
        return {"b": a2 / b1, "c": a1 / b1, "k1": a0 / b1}
    if cond == 5:
        x, y, z = a1 * b3, a2 * b2, a3 * b1
        return {
            "b": b3, "c": b2,
            "k1": (x + y - z) / (2 * a3),
            "k2": (y - x + z) / (2 * a3),
            "k3": (x - y + z) / (2 * a3),
        }
    R = _radicand(cv, cond)
    k2 = rational_sqrt(R) if R >= 0 else None
    if k2 is None:
        raise IrrationalElement(f"k2 = sqrt({format_rat(R)}) is not rational")
    p, q = _pq(cv, cond)
    out = {"k1": p / q - k2, "k2": k2, "k3": b1 - k2}
    if cond == 2:
        out.update(b=b3, c=b2)
    elif cond == 3:
        out.update(b=b3, c=a3 / b3)
    else:
        out.update(b=a3 / b2, c=b2)
    return out


def synth_fig3(cv: CoefficientVector, cond: int, lam: Fraction | int = 1) -> MechNetwork:
    """Network for ``cv`` on configuration ``cond`` after rescaling by ``lam``."""
    _require_cubic(cv)
    scaled = cv.scaled(lam)
    values = fig3_element_values(scaled, cond)
    if values["b"] <= 0 or values["c"] <= 0 or any(values[k] < 0 for k in values if k.startswith("k")):
        raise NonnegativityViolation(f"condition {cond} gives inadmissible values {values}")
    net = fig3_network(cond, values)
    if driving_point(net) != cv.to_rf():
        raise OracleMismatch(f"configuration {cond} does not reproduce {cv}")
    return net


def theorem6(cv: CoefficientVector, mode: Mode = Mode.SCALE_SEARCH) -> tuple[Theorem6Result, MechNetwork] | Reject:
    res = classify_theorem6(cv, mode)
    if isinstance(res, Reject):
        return res
    return res, synth_fig3(cv, res.condition, res.lam)
