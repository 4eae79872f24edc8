"""Bott tower matrices and their groupoid of toric equivalences.

A height-n Bott tower is encoded by a lower triangular unipotent integer
matrix A.  Equivalences between towers are induced by signed permutations
of the 2n invariant divisors: the pair (sigma, flips) acts on the quotient
data and yields a new tower matrix

    A' = (P - A Q)^(-1) (A P - Q)

whenever P - A Q is unimodular and A' is again lower triangular unipotent.
Here P and Q are the unflipped/flipped parts of the permutation matrix.
Fiber inversions are the pure flips, permutation conjugations the pure
permutations; every toric equivalence arises from such a pair, so a single
pass over all 2^n * n! pairs enumerates the full equivalence orbit.

All indices in this module are 0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

DEFAULT_STAGE_BOUND = 8


class StageTooLarge(ValueError):
    """Raised when an enumeration is requested above the stage bound."""


@dataclass(frozen=True, order=True)
class BottMatrix:
    """Lower triangular unipotent integer matrix of a height-n tower.

    ``rows[i][j]`` is the entry in row i, column j.  The strictly lower
    part of row k lists the twisting degrees of stage k+1 over the
    earlier stages.  Ordering is row-major lexicographic, which is the
    order used for canonical orbit representatives.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n < 1:
            raise ValueError("stage must be at least 1")
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise ValueError("matrix must be square")
            if any(not isinstance(e, int) for e in row):
                raise ValueError("entries must be integers")
            if row[i] != 1:
                raise ValueError("diagonal entries must equal 1")
            if any(row[j] != 0 for j in range(i + 1, n)):
                raise ValueError("matrix must be lower triangular")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BottMatrix":
        return cls(tuple(tuple(int(e) for e in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "BottMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def stage2(cls, a: int) -> "BottMatrix":
        return cls(((1, 0), (a, 1)))

    @classmethod
    def stage3(cls, a: int, b: int, c: int) -> "BottMatrix":
        return cls(((1, 0, 0), (a, 1, 0), (b, c, 1)))

    @classmethod
    def twist_one(cls, k: Sequence[int]) -> "BottMatrix":
        """Tower with a single twisted top stage of degrees k over (CP^1)^N."""
        n = len(k) + 1
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        rows[n - 1] = [*map(int, k), 1]
        return cls.from_rows(rows)

    @classmethod
    def twist_two(cls, l: Sequence[int], k: Sequence[int]) -> "BottMatrix":
        """Tower whose two top stages are twisted (Hirzebruch fiber bundle)."""
        if len(k) != len(l) + 1:
            raise ValueError("need len(k) == len(l) + 1")
        n = len(k) + 1
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        rows[n - 2] = [*map(int, l), 1, 0]
        rows[n - 1] = [*map(int, k), 1]
        return cls.from_rows(rows)

    def stage3_params(self) -> tuple[int, int, int]:
        if self.n != 3:
            raise ValueError("stage-3 tower required")
        return self.rows[1][0], self.rows[2][0], self.rows[2][1]

    def is_identity(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.n) for j in range(i))

    def leading_submatrix(self, m: int) -> "BottMatrix":
        """Principal m x m block: the tower of the first m stages."""
        return BottMatrix(tuple(row[:m] for row in self.rows[:m]))

    def inverse(self) -> "BottMatrix":
        """Exact integer inverse (forward substitution on the unitriangle)."""
        n = self.n
        inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i):
                inv[i][j] = -sum(self.rows[i][k] * inv[k][j] for k in range(j, i))
        return BottMatrix.from_rows(inv)

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [list(row) for row in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> "BottMatrix":
        if "stage3" in obj:
            a, b, c = obj["stage3"]
            return cls.stage3(int(a), int(b), int(c))
        rows = obj["rows"]
        if "n" in obj and int(obj["n"]) != len(rows):
            raise ValueError("n does not match number of rows")
        return cls.from_rows(rows)


@dataclass(frozen=True)
class EquivalenceMove:
    """A generator move of the tower groupoid.

    kind is "fiber_inversion" (data: stage index) or
    "permutation_conjugation" (data: permutation as a tuple of images).
    """

    kind: str
    index: Optional[int] = None
    permutation: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class OrbitEdge:
    source: int
    target: int
    move: EquivalenceMove


@dataclass(frozen=True)
class OrbitReport:
    representatives: tuple[BottMatrix, ...]
    canonical: BottMatrix
    moves: tuple[OrbitEdge, ...]


def twist(A: BottMatrix) -> int:
    """Number of nonzero rows of A - I: the holomorphically twisted stages."""
    return sum(1 for i in range(A.n) if any(A.rows[i][j] for j in range(i)))


def cotwist(A: BottMatrix) -> int:
    """Number of nonzero columns of A - I."""
    return sum(1 for j in range(A.n) if any(A.rows[i][j] for i in range(j + 1, A.n)))


def _int_det(mat: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    n = len(mat)
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _solve_matrix(M: list[list[int]], N: list[list[int]]) -> Optional[list[list[Fraction]]]:
    """Solve M X = N by Gaussian elimination; None if M is singular."""
    n = len(M)
    aug = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(N[i][j]) for j in range(n)]
           for i in range(n)]
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
    return [row[n:] for row in aug]


def _matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def apply_signed_permutation_generic(A: BottMatrix, sigma: Sequence[int],
                                     flips: Sequence[int]) -> Optional[BottMatrix]:
    """Reference normal-form computation of the induced tower matrix.

    Builds the block parts (P, Q) explicitly, checks unimodularity of
    P - A Q by exact determinant and inverts over the rationals.  Slower
    than apply_signed_permutation but free of structural shortcuts; the
    tests hold the two routes against each other.
    """
    n = A.n
    P, Q = signed_permutation_matrices(n, sigma, flips)
    AQ = _matmul(A.rows, Q)
    M = [[P[i][j] - AQ[i][j] for j in range(n)] for i in range(n)]
    if _int_det(M) not in (1, -1):
        return None
    AP = _matmul(A.rows, P)
    N = [[AP[i][j] - Q[i][j] for j in range(n)] for i in range(n)]
    X = _solve_matrix(M, N)
    if X is None:
        return None
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if X[i][j].denominator != 1:
                return None
            row.append(int(X[i][j]))
        rows.append(row)
    for i in range(n):
        if rows[i][i] != 1 or any(rows[i][j] for j in range(i + 1, n)):
            return None
    return BottMatrix.from_rows(rows)


def signed_permutation_matrices(n: int, sigma: Sequence[int],
                                flips: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Split a signed permutation into its (P, Q) block parts.

    Column j carries a 1 in row sigma[j]; it lands in Q when stage j is
    flipped (zero and infinity sections swapped) and in P otherwise.
    """
    P = [[0] * n for _ in range(n)]
    Q = [[0] * n for _ in range(n)]
    for j in range(n):
        if flips[j]:
            Q[sigma[j]][j] = 1
        else:
            P[sigma[j]][j] = 1
    return P, Q


def apply_signed_permutation(A: BottMatrix, sigma: Sequence[int],
                             flips: Sequence[int]) -> Optional[BottMatrix]:
    """Tower matrix induced by (sigma, flips), or None when not applicable.

    The candidate is A' = (P - A Q)^(-1) (A P - Q); the pair applies
    exactly when A' is again lower triangular unipotent.  Reordering the
    columns of P - A Q by sigma leaves either unit vectors or negated
    columns of A, i.e. a lower triangular matrix with diagonal +-1, so
    P - A Q is automatically unimodular and the inversion is an integer
    forward substitution.
    """
    n = A.n
    rows = A.rows
    sigma_inv = [0] * n
    for j, img in enumerate(sigma):
        sigma_inv[img] = j
    # column k of the reordered P - A Q: -A[:,k] when the stage sent to
    # position k is flipped, the unit vector e_k otherwise
    flipped_at = [flips[sigma_inv[k]] for k in range(n)]
    # column j of A P - Q in the same row order
    N = [[rows[i][sigma[j]] if not flips[j] else -(1 if i == sigma[j] else 0)
          for j in range(n)] for i in range(n)]
    Y = [[0] * n for _ in range(n)]
    for i in range(n):
        for c in range(n):
            acc = N[i][c]
            for k in range(i):
                if flipped_at[k] and rows[i][k]:
                    acc += rows[i][k] * Y[k][c]
            Y[i][c] = -acc if flipped_at[i] else acc
    out = [Y[sigma[j]] for j in range(n)]
    for i in range(n):
        if out[i][i] != 1 or any(out[i][j] for j in range(i + 1, n)):
            return None
    return BottMatrix.from_rows(out)


def fiber_inversion(A: BottMatrix, k: int) -> BottMatrix:
    """Invert the CP^1 fiber of stage k (always applicable)."""
    if not 0 <= k < A.n:
        raise ValueError("stage index out of range")
    flips = tuple(1 if j == k else 0 for j in range(A.n))
    result = apply_signed_permutation(A, tuple(range(A.n)), flips)
    assert result is not None  # pure flips are always applicable
    return result


def transposition(n: int, i: int, j: int) -> tuple[int, ...]:
    sigma = list(range(n))
    sigma[i], sigma[j] = sigma[j], sigma[i]
    return tuple(sigma)


def permutation_conjugate(A: BottMatrix, sigma: Sequence[int]) -> Optional[BottMatrix]:
    """P^(-1) A P when lower triangular, else None."""
    if sorted(sigma) != list(range(A.n)):
        raise ValueError("not a permutation of range(n)")
    return apply_signed_permutation(A, tuple(sigma), (0,) * A.n)


def signed_permutations(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    for sigma in itertools.permutations(range(n)):
        for flips in itertools.product((0, 1), repeat=n):
            yield sigma, flips


def equivalence_orbit(A: BottMatrix, stage_bound: int = DEFAULT_STAGE_BOUND) -> OrbitReport:
    """All tower matrices biholomorphic to A, with generator edges.

    Enumerates the whole signed-permutation group in one pass, which is
    closed because every toric equivalence is induced by a single
    (sigma, flips) pair.
    """
    n = A.n
    if n > stage_bound:
        raise StageTooLarge(f"stage {n} exceeds bound {stage_bound}")
    members: set[BottMatrix] = set()
    for sigma, flips in signed_permutations(n):
        B = apply_signed_permutation(A, sigma, flips)
        if B is not None:
            members.add(B)
    reps = tuple(sorted(members))
    index = {B: i for i, B in enumerate(reps)}
    edges = []
    seen = set()
    for i, B in enumerate(reps):
        for k in range(n):
            target = index[fiber_inversion(B, k)]
            key = (i, target, "f", k)
            if key not in seen:
                seen.add(key)
                edges.append(OrbitEdge(i, target, EquivalenceMove("fiber_inversion", index=k)))
        for a in range(n):
            for b in range(a + 1, n):
                sigma = transposition(n, a, b)
                C = permutation_conjugate(B, sigma)
                if C is not None:
                    key = (i, index[C], "p", sigma)
                    if key not in seen:
                        seen.add(key)
                        edges.append(OrbitEdge(i, index[C],
                                               EquivalenceMove("permutation_conjugation",
                                                               permutation=sigma)))
    return OrbitReport(reps, reps[0], tuple(edges))


def canonical_form(A: BottMatrix, stage_bound: int = DEFAULT_STAGE_BOUND) -> BottMatrix:
    """Lexicographically minimal matrix in the equivalence orbit."""
    return equivalence_orbit(A, stage_bound).canonical


def are_equivalent(A: BottMatrix, B: BottMatrix,
                   stage_bound: int = DEFAULT_STAGE_BOUND) -> bool:
    if A.n != B.n:
        return False
    if A.n > stage_bound:
        raise StageTooLarge(f"stage {A.n} exceeds bound {stage_bound}")
    return any(apply_signed_permutation(A, sigma, flips) == B
               for sigma, flips in signed_permutations(A.n))


def _row_trivial(A: BottMatrix, i: int) -> bool:
    return all(A.rows[i][j] == 0 for j in range(i))


def normalize_twist(A: BottMatrix) -> BottMatrix:
    """Equivalent tower whose trivial stages come first.

    Bubbles every zero row of A - I to the top with adjacent
    transpositions; each such swap is applicable because the moving row
    is zero.  The result has its first n - twist(A) rows trivial.
    """
    cur = A
    n = A.n
    for target in range(n):
        j = next((i for i in range(target, n) if _row_trivial(cur, i)), None)
        if j is None:
            break
        while j > target:
            swapped = permutation_conjugate(cur, transposition(n, j - 1, j))
            assert swapped is not None  # zero row makes the swap applicable
            cur = swapped
            j -= 1
    return cur
