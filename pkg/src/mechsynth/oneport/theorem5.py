"""The monic quartic-denominator family: W quantities, the G matrix, and the
classification into the at-most-three-springs branches."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import Inadmissible, IrrationalEntry, NonnegativityViolation, WrongForm
from ..exactalg import CoefficientVector, format_rat, rational_sqrt, sign
from ..paramount3 import PortMatrix3
from ..resistive3 import Reject


@dataclass(frozen=True)
class WQuantities:
    W1: Fraction
    W2: Fraction
    W3: Fraction
    W: Fraction

    @property
    def admissible(self) -> bool:
        return self.W1 >= 0 and self.W2 >= 0 and self.W3 >= 0 and self.W * self.W == 4 * self.W1 * self.W2 * self.W3


def w_quantities(cv: CoefficientVector) -> WQuantities:
    if cv.beta4 != 1:
        raise WrongForm("W quantities need the monic quartic form (beta4 = 1)")
    a3, a2, a1, a0 = cv.alphas
    b3, b2, b1 = cv.betas
    return WQuantities(
        W1=a3 * b3 - a2,
        W2=a3 * b2 - a1,
        W3=b2 * b3 - b1,
        W=a0 + 2 * a3 * b2 * b3 - a3 * b1 - a2 * b2 - a1 * b3,
    )


def build_G(cv: CoefficientVector) -> PortMatrix3:
    """G with G1=a3, G2=b3, G3=b2, G4^2=W1, G5^2=W2, G6^2=W3 and 2*G4*G5*G6 = W.

    G4, G5 >= 0; G6 carries the sign of W. Raises IrrationalEntry when a
    square root is not rational.
    """
    w = w_quantities(cv)
    if not w.admissible:
        raise Inadmissible(f"W quantities not admissible for {cv}: {w}")
    roots = []
    for name, val in (("W1", w.W1), ("W2", w.W2), ("W3", w.W3)):
        r = rational_sqrt(val)
        if r is None:
            raise IrrationalEntry(f"sqrt({name}) = sqrt({format_rat(val)}) is irrational")
        roots.append(r)
    G4, G5, G6 = roots
    if w.W < 0:
        G6 = -G6
    G = PortMatrix3.from_G(cv.alpha3, cv.beta3, cv.beta2, G4, G5, G6)
    if 2 * G4 * G5 * G6 != w.W:
        raise Inadmissible("sign assignment failed to reproduce W")
    return G


def cv_from_G(G: PortMatrix3) -> CoefficientVector:
    G1, G2, G3, G4, G5, G6 = G.G
    return CoefficientVector(
        alpha3=G1,
        alpha2=G1 * G2 - G4 * G4,
        alpha1=G1 * G3 - G5 * G5,
        alpha0=G.det(),
        beta3=G2,
        beta2=G3,
        beta1=G2 * G3 - G6 * G6,
        beta4=1,
    )


# names of the twelve zero-witnesses, in a fixed order
COND1_NAMES = (
    "alpha1", "alpha2", "alpha3", "beta1", "beta2", "beta3", "W1", "W2", "W3",
    "beta2-W/(2W1)", "beta3-W/(2W2)", "alpha3-W/(2W3)",
)


def cond1_witnesses(cv: CoefficientVector, w: WQuantities | None = None) -> tuple[str, ...]:
    """All vanishing quantities among the twelve; ratio terms are tested as
    ``2*Wi*x - W == 0`` and only when ``Wi != 0``."""
    w = w or w_quantities(cv)
    vals = {
        "alpha1": cv.alpha1, "alpha2": cv.alpha2, "alpha3": cv.alpha3,
        "beta1": cv.beta1, "beta2": cv.beta2, "beta3": cv.beta3,
        "W1": w.W1, "W2": w.W2, "W3": w.W3,
    }
    out = [name for name in COND1_NAMES[:9] if vals[name] == 0]
    for name, Wi, x in (
        ("beta2-W/(2W1)", w.W1, cv.beta2),
        ("beta3-W/(2W2)", w.W2, cv.beta3),
        ("alpha3-W/(2W3)", w.W3, cv.alpha3),
    ):
        if Wi != 0 and 2 * Wi * x - w.W == 0:
            out.append(name)
    return tuple(out)


def ratio_gaps(cv: CoefficientVector, w: WQuantities | None = None) -> dict[str, Fraction | None]:
    """beta2-W/(2W1), beta3-W/(2W2), alpha3-W/(2W3); None where the divisor is zero."""
    w = w or w_quantities(cv)
    return {
        "m3": cv.beta2 - w.W / (2 * w.W1) if w.W1 else None,
        "m2": cv.beta3 - w.W / (2 * w.W2) if w.W2 else None,
        "m2_dagger": cv.alpha3 - w.W / (2 * w.W3) if w.W3 else None,
    }


def bridge_case_expressions(cv: CoefficientVector) -> dict[str, Fraction]:
    """The three combinations that vanish on the Condition-2 cases b, c, d."""
    a3, a2, a1, a0 = cv.alphas
    b3, b2, b1 = cv.betas
    return {
        "b": a0 + a3 * b1 + a2 * b2 - a1 * b3,
        "c": a0 + a3 * b1 + a1 * b3 - a2 * b2,
        "d": a0 + a1 * b3 + a2 * b2 - a3 * b1,
    }


@dataclass(frozen=True)
class Branch:
    kind: str  # "Cond1" or "Cond2"
    witnesses: tuple[str, ...] = ()
    case: str | None = None
    w: WQuantities | None = field(default=None, compare=False)

    def label(self) -> str:
        if self.kind == "Cond1":
            return f"Cond1({', '.join(self.witnesses)})"
        return f"Cond2({self.case})"


def _require_nonnegative(cv: CoefficientVector) -> None:
    bad = [format_rat(v) for v in cv.values() if v < 0]
    if bad:
        raise NonnegativityViolation(f"coefficients must be non-negative: {cv}")


def classify_theorem5(cv: CoefficientVector) -> Branch | Reject:
    _require_nonnegative(cv)
    w = w_quantities(cv)
    if not w.admissible:
        return Reject(
            "W quantities inadmissible",
            {"W1": format_rat(w.W1), "W2": format_rat(w.W2), "W3": format_rat(w.W3), "W": format_rat(w.W)},
        )
    wit = cond1_witnesses(cv, w)
    if wit:
        return Branch("Cond1", wit, None, w)
    ex = bridge_case_expressions(cv)
    if w.W < 0 and cv.alpha0 == 0:
        return Branch("Cond2", (), "a", w)
    if w.W > 0:
        for case in ("b", "c", "d"):
            if ex[case] == 0:
                return Branch("Cond2", (), case, w)
    return Reject("admissible but neither Condition 1 nor Condition 2 holds", {"W_sign": sign(w.W)})


def fig2_element_values(cv: CoefficientVector, case: str) -> dict[str, Fraction]:
    """Element values k1, k2, k3, b, c for the Condition-2 configurations."""
    w = w_quantities(cv)
    W1, W2, W3, W = w.W1, w.W2, w.W3, w.W
    a3, a2 = cv.alpha3, cv.alpha2
    b3, b2 = cv.beta3, cv.beta2
    if case == "a":
        m2 = b3 - W / (2 * W2)
        m2d = a3 - W / (2 * W3)
        return {
            "k1": a2 / m2,
            "k2": W3 * m2d * a2 / (W2 * m2 * m2),
            "k3": W * (W / (2 * W3) - a3) / (2 * W2 * m2),
            "b": a2 * a2 / (W2 * m2 * m2),
            "c": W3 * m2d * m2d / (W2 * m2 * m2),
        }
    if case == "b":
        m2d = a3 - W / (2 * W3)
        m3 = b2 - W / (2 * W1)
        return {
            "k1": a3 * W3 * m2d / (b2 * W1),
            "k2": a3 * W / (2 * b2 * W1),
            "k3": a3 * m3 / b2,
            "b": a3 * a3 * W3 / (b2 * b2 * W1),
            "c": a3 * a3 / W1,
        }
    if case == "c":
        m2d = a3 - W / (2 * W3)
        m2 = b3 - W / (2 * W2)
        return {
            "k1": a3 * W3 * m2d / (b3 * W2),
            "k2": a3 * W / (2 * b3 * W2),
            "k3": a3 * m2 / b3,
            "b": a3 * a3 / W2,
            "c": a3 * a3 * W3 / (b3 * b3 * W2),
        }
    if case == "d":
        m3 = b2 - W / (2 * W1)
        m2 = b3 - W / (2 * W2)
        return {
            "k1": W1 * m3 / (b2 * b3),
            "k2": W / (2 * b2 * b3),
            "k3": W2 * m2 / (b2 * b3),
            "b": W2 / (b2 * b2),
            "c": W1 / (b3 * b3),
        }
    raise ValueError(f"unknown case {case!r}")
