"""Extremal almost-Kahler metrics fibered over the unit square.

For fiber momentum polytope [0,1]^2 and positive affine weight
Q = p0 + p1 z1 + p2 z2, the extremal equation

    4 - P11,11 - 2 P12,12 - P22,22 = (A1 z1 + A2 z2 + A3) Q

with the square's boundary conditions forces

    P11 = z1 (1 - z1) (2 Q + a11 z1 (1 - z1))
    P12 = a12 z1 (1 - z1) z2 (1 - z2)
    P22 = z2 (1 - z2) (2 Q + a22 z2 (1 - z2))

and reduces to a 6 x 6 linear system in (a11, a12, a22, A1, A2, A3).
Its determinant factors exactly as
-96 (2 p0 + p1 + p2) (6 p0^2 + 6 p0 p1 + p1^2 + 6 p0 p2 + 3 p1 p2 + p2^2),
which is nonzero whenever Q is positive on the square, so the solution
is unique.  Positivity of the metric is certified by exact dyadic
subdivision; the complex-structure integrability identities on the
inverse matrix are tested exactly at rational sample points (they fail
for p1, p2 > 0: the metrics are genuinely almost Kahler).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .polynomials import Poly2, poly as upoly, psub

DEFAULT_POSITIVITY_DEPTH = 20
DEFAULT_INTEGRABILITY_GRID = 5


class Inconclusive(RuntimeError):
    """Subdivision hit the refinement cap without certifying a sign."""


class SingularSample(ZeroDivisionError):
    """The metric degenerates at a requested sample point."""


@dataclass(frozen=True)
class SquareFiberData:
    """Weight data (p0, p1, p2) with Q positive on the closed unit square."""

    p0: Fraction
    p1: int
    p2: int

    def __post_init__(self):
        if self.p0 <= 0:
            raise ValueError("p0 must be positive")
        if self.p0 + self.p1 <= 0 or self.p0 + self.p2 <= 0 \
                or self.p0 + self.p1 + self.p2 <= 0:
            raise ValueError("Q must be positive at the square corners")

    @classmethod
    def make(cls, p0, p1: int, p2: int) -> "SquareFiberData":
        return cls(Fraction(p0), int(p1), int(p2))

    def q_poly(self) -> Poly2:
        z1, z2 = Poly2.var(0), Poly2.var(1)
        return Poly2.constant(self.p0) + self.p1 * z1 + self.p2 * z2


@dataclass(frozen=True)
class AkSolution:
    a11: Fraction
    a12: Fraction
    a22: Fraction
    A1: Fraction
    A2: Fraction
    A3: Fraction

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("a11", "a12", "a22", "A1", "A2", "A3")}


def system_matrix(data: SquareFiberData) -> tuple[list[list[Fraction]], list[Fraction]]:
    """The 6 x 6 extremal system in (a11, a12, a22, A1, A2, A3)."""
    p0, p1, p2 = data.p0, Fraction(data.p1), Fraction(data.p2)
    zero = Fraction(0)
    rows = [
        [Fraction(-2), Fraction(-2), Fraction(-2), zero, zero, -p0],
        [Fraction(12), Fraction(4), zero, -p0, zero, -p1],
        [zero, Fraction(4), Fraction(12), zero, -p0, -p2],
        [Fraction(-12), zero, zero, -p1, zero, zero],
        [zero, Fraction(-8), zero, -p2, -p1, zero],
        [zero, zero, Fraction(-12), zero, -p2, zero],
    ]
    rhs = [
        Fraction(-4) + 4 * p1 + 4 * p2 - 8 * p0,
        -16 * p1,
        -16 * p2,
        zero, zero, zero,
    ]
    return rows, rhs


def system_determinant(data: SquareFiberData) -> Fraction:
    p0, p1, p2 = data.p0, Fraction(data.p1), Fraction(data.p2)
    quadratic = (6 * p0 * p0 + 6 * p0 * p1 + p1 * p1
                 + 6 * p0 * p2 + 3 * p1 * p2 + p2 * p2)
    return -96 * (2 * p0 + p1 + p2) * quadratic


def solve_ak(data: SquareFiberData) -> AkSolution:
    """Unique exact solution of the square-fiber extremal system."""
    rows, rhs = system_matrix(data)
    n = 6
    aug = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [e / pv for e in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [e - f * p for e, p in zip(aug[r], aug[col])]
    return AkSolution(*(aug[i][n] for i in range(n)))


def assemble_p(data: SquareFiberData, sol: AkSolution) -> tuple[Poly2, Poly2, Poly2]:
    """The polynomial matrix entries P11, P12, P22 of the solution."""
    z1, z2 = Poly2.var(0), Poly2.var(1)
    w1 = z1 * (1 - z1)
    w2 = z2 * (1 - z2)
    q = data.q_poly()
    p11 = w1 * (2 * q + sol.a11 * w1)
    p12 = sol.a12 * w1 * w2
    p22 = w2 * (2 * q + sol.a22 * w2)
    return p11, p12, p22


def extremal_residual(data: SquareFiberData, sol: AkSolution) -> Poly2:
    """LHS minus RHS of the extremal equation; zero for a true solution."""
    z1, z2 = Poly2.var(0), Poly2.var(1)
    p11, p12, p22 = assemble_p(data, sol)
    lhs = (Poly2.constant(4) - p11.diff(0).diff(0) - 2 * p12.diff(0).diff(1)
           - p22.diff(1).diff(1))
    affine = sol.A1 * z1 + sol.A2 * z2 + Poly2.constant(sol.A3)
    return lhs - affine * data.q_poly()


def _certify_sign(poly: Poly2, depth: int) -> bool:
    """True if poly > 0 on the open unit square, False if it is not.

    Dyadic subdivision with exact interval bounds; a nonpositive exact
    value at an interior rational point decides negatively.  Raises
    Inconclusive at the depth cap (touching zeros cannot be separated).
    """
    center = poly.eval(Fraction(1, 2), Fraction(1, 2))
    if center <= 0:
        return False
    one = Fraction(1)
    boxes = [(Fraction(0), one, Fraction(0), one, 0)]
    while boxes:
        x0, x1, y0, y1, d = boxes.pop()
        lo, hi = poly.bounds_on_box(x0, x1, y0, y1)
        if lo > 0:
            continue
        mx, my = (x0 + x1) / 2, (y0 + y1) / 2
        if poly.eval(mx, my) <= 0:
            return False
        if d >= depth:
            raise Inconclusive("sign not certified within the refinement cap")
        boxes.extend([
            (x0, mx, y0, my, d + 1), (mx, x1, y0, my, d + 1),
            (x0, mx, my, y1, d + 1), (mx, x1, my, y1, d + 1),
        ])
    return True


def check_positivity(data: SquareFiberData, sol: AkSolution,
                     depth: int = DEFAULT_POSITIVITY_DEPTH) -> bool:
    """Positive definiteness of the solution metric over the open square.

    Sylvester's criterion on P: the leading entry 2Q + a11 z1(1-z1) and
    the determinant P11 P22 - P12^2 (with the forced boundary factors
    stripped) must both be positive.
    """
    z1, z2 = Poly2.var(0), Poly2.var(1)
    w1 = z1 * (1 - z1)
    w2 = z2 * (1 - z2)
    q = data.q_poly()
    b1 = 2 * q + sol.a11 * w1
    b2 = 2 * q + sol.a22 * w2
    det_core = b1 * b2 - sol.a12 * sol.a12 * w1 * w2
    return _certify_sign(b1, depth) and _certify_sign(det_core, depth)


def default_grid(density: int = DEFAULT_INTEGRABILITY_GRID) -> list[tuple[Fraction, Fraction]]:
    step = Fraction(1, density + 1)
    return [(i * step, j * step)
            for i in range(1, density + 1) for j in range(1, density + 1)]


def check_integrability(data: SquareFiberData, sol: AkSolution,
                        samples: Optional[Sequence[tuple]] = None) -> bool:
    """Exact test of the complex-structure identities at sample points.

    With H = P / Q, the inverse matrix H^{-1} = Q adj(P) / det P must
    satisfy d(H^11)/dz2 = d(H^12)/dz1 and d(H^22)/dz1 = d(H^12)/dz2.
    Each identity is evaluated as an exact rational function at every
    sample; one failure point decides.
    """
    if samples is None:
        samples = default_grid()
    p11, p12, p22 = assemble_p(data, sol)
    q = data.q_poly()
    det_p = p11 * p22 - p12 * p12
    # H^11 = Q P22 / det, H^12 = -Q P12 / det, H^22 = Q P11 / det
    numerators = {"h11": q * p22, "h12": -1 * (q * p12), "h22": q * p11}
    derivs = {}
    for name, num in numerators.items():
        for var in (0, 1):
            # d(num/det) = (num' det - num det') / det^2
            derivs[(name, var)] = (num.diff(var) * det_p - num * det_p.diff(var))
    for z1, z2 in samples:
        z1, z2 = Fraction(z1), Fraction(z2)
        d = det_p.eval(z1, z2)
        if d == 0 or q.eval(z1, z2) == 0:
            raise SingularSample(f"metric degenerates at ({z1}, {z2})")
        if derivs[("h11", 1)].eval(z1, z2) != derivs[("h12", 0)].eval(z1, z2):
            return False
        if derivs[("h22", 0)].eval(z1, z2) != derivs[("h12", 1)].eval(z1, z2):
            return False
    return True


def verify_boundary(data: SquareFiberData, p11: Poly2, p12: Poly2, p22: Poly2) -> bool:
    """Symbolic check of the twelve boundary identities on the square.

    Each edge forces the matching entries of P to vanish and pins the
    normal derivative of the diagonal entry to +-2 Q there.
    """
    q = data.q_poly()
    p11_1 = p11.diff(0)
    p22_2 = p22.diff(1)
    checks = [
        (p11.substitute_x(0), None),
        (p12.substitute_x(0), None),
        (p11_1.substitute_x(0), q.substitute_x(0), 2),
        (p11.substitute_x(1), None),
        (p12.substitute_x(1), None),
        (p11_1.substitute_x(1), q.substitute_x(1), -2),
        (p22.substitute_y(1), None),
        (p12.substitute_y(1), None),
        (p22_2.substitute_y(1), q.substitute_y(1), -2),
        (p22.substitute_y(0), None),
        (p12.substitute_y(0), None),
        (p22_2.substitute_y(0), q.substitute_y(0), 2),
    ]
    for entry in checks:
        if entry[1] is None:
            if entry[0]:
                return False
        else:
            got, q_edge, factor = entry
            if psub(got, upoly(Fraction(factor) * c for c in q_edge)) != ():
                return False
    return True


def boundary_conditions_check(data: SquareFiberData, sol: AkSolution) -> bool:
    return verify_boundary(data, *assemble_p(data, sol))
