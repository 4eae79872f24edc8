"""Fans of Bott towers: support functions, ample cones, Demazure roots.

The fan of a height-n tower is the cone over an n-cross: rays come in
opposite pairs u_j, v_j where v_1..v_n is the standard lattice basis and
u_j = -(column j of A) in that basis.  A set of rays spans a cone iff it
contains no opposite pair, so the maximal cones are the 2^n mixed bases,
and the primitive collections are exactly the pairs {u_j, v_j}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import cohomology
from .core import DEFAULT_STAGE_BOUND, BottMatrix, StageTooLarge, canonical_form


@dataclass(frozen=True)
class SupportFunction:
    """Ray values of an invariant R-divisor: s on the u-rays, t on the v-rays."""

    s: tuple[Fraction, ...]
    t: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.s) != len(self.t):
            raise ValueError("s and t must have equal length")

    @classmethod
    def from_values(cls, s: Sequence, t: Sequence) -> "SupportFunction":
        return cls(tuple(Fraction(v) for v in s), tuple(Fraction(v) for v in t))

    @classmethod
    def ones(cls, n: int) -> "SupportFunction":
        one = (Fraction(1),) * n
        return cls(one, one)


class BottFan:
    """Normal fan data of a height-n Bott tower."""

    def __init__(self, A: BottMatrix):
        self.A = A
        self.n = A.n
        # u_j in v-coordinates; entries vanish above index j
        self.u = tuple(tuple(-A.rows[i][j] for i in range(self.n)) for j in range(self.n))

    def v_vector(self, j: int) -> tuple[int, ...]:
        return tuple(1 if i == j else 0 for i in range(self.n))

    def u_vector(self, j: int) -> tuple[int, ...]:
        return self.u[j]

    def rays(self) -> list[tuple[str, int, tuple[int, ...]]]:
        out = [("u", j, self.u[j]) for j in range(self.n)]
        out += [("v", j, self.v_vector(j)) for j in range(self.n)]
        return out

    def opposite_pair_sum(self, j: int) -> tuple[int, ...]:
        """u_j + v_j, the relation vector of the j-th primitive collection."""
        return tuple(0 if i == j else -self.A.rows[i][j] for i in range(self.n))

    def cone_coordinates(self, w: Sequence) -> list[tuple[str, int, Fraction]]:
        """Express w in a maximal cone containing it.

        Forward substitution: the residual j-th coordinate decides
        between v_j (nonnegative) and u_j (negative); picking u_j feeds
        A's column j back into the later coordinates.  When a residual
        coordinate vanishes the choice is immaterial, so the resulting
        piecewise-linear evaluation is wall-consistent.
        """
        res = [Fraction(c) for c in w]
        if len(res) != self.n:
            raise ValueError("vector has wrong dimension")
        out = []
        for j in range(self.n):
            c = res[j]
            if c > 0:
                out.append(("v", j, c))
            elif c < 0:
                out.append(("u", j, -c))
                for i in range(j + 1, self.n):
                    res[i] += -c * self.A.rows[i][j]
            res[j] = Fraction(0)
        return out

    def eval_support(self, psi: SupportFunction, w: Sequence) -> Fraction:
        total = Fraction(0)
        for kind, j, c in self.cone_coordinates(w):
            total += c * (psi.s[j] if kind == "u" else psi.t[j])
        return total


def eval_support(A: BottMatrix, psi: SupportFunction, w: Sequence) -> Fraction:
    return BottFan(A).eval_support(psi, w)


def is_ample(A: BottMatrix, psi: SupportFunction, strict: bool = True) -> bool:
    """Ampleness (nef when strict=False) of the divisor class of psi.

    The class is ample iff psi(u_j) + psi(v_j) > psi(u_j + v_j) for every
    opposite pair; these are the convexity inequalities on the primitive
    collections, and they only depend on the divisor class.
    """
    fan = BottFan(A)
    for j in range(A.n):
        lhs = psi.s[j] + psi.t[j]
        rhs = fan.eval_support(psi, fan.opposite_pair_sum(j))
        if strict:
            if not lhs > rhs:
                return False
        elif not lhs >= rhs:
            return False
    return True


@dataclass(frozen=True)
class ConeInequality:
    """coeffs . r > rhs (>= when strict is False) on the basis coefficients."""

    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    strict: bool = True

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs], "rhs": str(self.rhs),
                "strict": self.strict}


def kahler_cone(A: BottMatrix, basis_choice: str) -> tuple[list[ConeInequality], bool]:
    """Ample-cone inequalities in the divisor basis D_1 = D_{u_1}, D_j in {u_j, v_j}.

    basis_choice is a string of 'u'/'v' of length n whose first letter
    must be 'u' (the classes of D_{u_1} and D_{v_1} agree).  Returns the
    inequality list in the coefficients r_1..r_n together with a flag
    telling whether they cut out exactly the first orthant.
    """
    n = A.n
    if len(basis_choice) != n or any(ch not in "uv" for ch in basis_choice):
        raise ValueError("basis choice must be a string of 'u'/'v' of length n")
    if basis_choice[0] != "u":
        raise ValueError("the first basis divisor is fixed to be D_{u_1}")
    fan = BottFan(A)
    inequalities = []
    first_orthant = True
    for j in range(n):
        coeffs = [Fraction(0)] * n
        coeffs[j] = Fraction(1)
        for kind, m, c in fan.cone_coordinates(fan.opposite_pair_sum(j)):
            if basis_choice[m] == kind:
                coeffs[m] -= c
                first_orthant = False
        inequalities.append(ConeInequality(tuple(coeffs), Fraction(0)))
    return inequalities, first_orthant


def kahler_cone_scan(A: BottMatrix) -> dict[str, tuple[list[ConeInequality], bool]]:
    """Inequalities for each of the 2^(n-1) distinct generator bases."""
    out = {}
    for tail in itertools.product("uv", repeat=A.n - 1):
        choice = "u" + "".join(tail)
        out[choice] = kahler_cone(A, choice)
    return out


def ample_cone_is_first_orthant(A: BottMatrix) -> bool:
    """True when some generator basis realizes the cone as the full orthant."""
    return any(flag for _, flag in kahler_cone_scan(A).values())


@dataclass(frozen=True)
class DemazureRootSet:
    """Lattice covectors dual to one ray and nonpositive on all others."""

    n: int
    roots: frozenset[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.roots)

    def is_symmetric(self) -> bool:
        return self.roots == frozenset(tuple(-c for c in chi) for chi in self.roots)

    def __contains__(self, chi) -> bool:
        return tuple(chi) in self.roots


def _solve_unique(rows: list[Sequence[int]], rhs: list[int]) -> Optional[list[Fraction]]:
    """Unique solution of a square rational system, or None."""
    n = len(rows)
    aug = [[Fraction(x) for x in rows[i]] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [e / pv for e in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [e - f * p for e, p in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def demazure_roots(A: BottMatrix, stage_bound: int = DEFAULT_STAGE_BOUND) -> DemazureRootSet:
    """All Demazure roots of the tower's fan.

    For each ray the admissible covectors form a bounded polytope (the
    rays positively span the Lie algebra), whose vertices are found by
    solving the n-subsets of active constraints; integer points are then
    read off from the vertex bounding box.
    """
    n = A.n
    if n > stage_bound:
        raise StageTooLarge(f"stage {n} exceeds bound {stage_bound}")
    fan = BottFan(A)
    normals = [vec for _, _, vec in fan.rays()]
    roots: set[tuple[int, ...]] = set()
    for idx, n_rho in enumerate(normals):
        others = [normals[i] for i in range(len(normals)) if i != idx]
        vertices: list[list[Fraction]] = []
        for combo in itertools.combinations(others, n - 1):
            sol = _solve_unique([n_rho, *combo], [1] + [0] * (n - 1))
            if sol is None:
                continue
            if all(sum(v[i] * sol[i] for i in range(n)) <= 0 for v in others):
                vertices.append(sol)
        if not vertices:
            continue
        lo = [min(v[i] for v in vertices) for i in range(n)]
        hi = [max(v[i] for v in vertices) for i in range(n)]
        ranges = [range(math.ceil(lo[i]), math.floor(hi[i]) + 1) for i in range(n)]
        for chi in itertools.product(*ranges):
            if sum(a * b for a, b in zip(n_rho, chi)) != 1:
                continue
            if all(sum(a * b for a, b in zip(v, chi)) <= 0 for v in others):
                roots.add(chi)
    return DemazureRootSet(n, frozenset(roots))


def is_reductive(A: BottMatrix, stage_bound: int = DEFAULT_STAGE_BOUND) -> bool:
    """Reductivity of the identity automorphism component: roots balance."""
    return demazure_roots(A, stage_bound).is_symmetric()


def csc_obstructed(A: BottMatrix) -> tuple[bool, Optional[tuple[str, int]]]:
    """Obstruction to constant scalar curvature from non-reductivity.

    Fires when some row's below-diagonal entries are weakly same-signed
    and not all zero, or when a leading principal block is a nontrivial
    tower of topological twist zero.  Returns the witness found.
    """
    n = A.n
    for i in range(1, n):
        below = A.rows[i][:i]
        if any(below) and (all(e >= 0 for e in below) or all(e <= 0 for e in below)):
            return True, ("row", i)
    for m in range(2, n + 1):
        block = A.leading_submatrix(m)
        if not block.is_identity() and cohomology.topological_twist(block) == 0:
            return True, ("leading_block", m)
    return False, None


def is_fano(A: BottMatrix) -> bool:
    """Whether the anticanonical class is ample.

    The anticanonical divisor is the sum of all invariant divisors, so
    its support function is 1 on every ray.
    """
    return is_ample(A, SupportFunction.ones(A.n), strict=True)


_KE_STAGE3 = (BottMatrix.identity(3), BottMatrix.stage3(0, 1, -1))
_KE_STAGE4 = (
    BottMatrix.identity(4),
    BottMatrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [1, -1, 1, 0], [0, 0, 0, 1]]),
)


def kahler_einstein_stage34(A: BottMatrix) -> str:
    """Kahler-Einstein status for stages 3 and 4: "KE", "NotKE" or "Unknown".

    Decided by equivalence with the classified towers: the product of
    projective lines, and the bidegree (1,-1) projective bundle (times a
    line for stage 4).
    """
    if A.n == 3:
        candidates = _KE_STAGE3
    elif A.n == 4:
        candidates = _KE_STAGE4
    else:
        return "Unknown"
    mine = canonical_form(A)
    if any(mine == canonical_form(C) for C in candidates):
        return "KE"
    return "NotKE"
