"""Integer cohomology rings of Bott towers and their characteristic classes.

H*(M_n, Z) is Z[x_1..x_n] modulo the relations x_k^2 = -alpha_k x_k with
alpha_k = sum_{j<k} A[k][j] x_j, so every class is an integer combination
of the 2^n square-free monomials.  Monomials are encoded as n-bit masks
(bit j set means x_{j+1} divides the monomial); coefficients are Python
ints, hence arbitrary precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .core import BottMatrix


class CohomologyClass:
    """Element of H*(M_n(A), Z) in the square-free monomial basis."""

    __slots__ = ("ring", "_coeffs")

    def __init__(self, ring: "CohomologyRing", coeffs: Mapping[int, int]):
        self.ring = ring
        self._coeffs = {m: int(c) for m, c in coeffs.items() if c}

    @property
    def n(self) -> int:
        return self.ring.n

    def coefficient(self, monomial: Iterable[int] | int) -> int:
        """Coefficient of a monomial given as a mask or 0-based index iterable."""
        if isinstance(monomial, int):
            return self._coeffs.get(monomial, 0)
        mask = 0
        for i in monomial:
            mask |= 1 << i
        return self._coeffs.get(mask, 0)

    def terms(self) -> list[tuple[int, int]]:
        """(mask, coefficient) pairs in increasing mask order."""
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_homogeneous(self) -> bool:
        degrees = {bin(m).count("1") for m in self._coeffs}
        return len(degrees) <= 1

    def graded_part(self, degree: int) -> "CohomologyClass":
        return CohomologyClass(self.ring, {m: c for m, c in self._coeffs.items()
                                           if bin(m).count("1") == degree})

    def reduce_mod2(self) -> "Mod2Class":
        return Mod2Class(self.n, frozenset(m for m, c in self._coeffs.items() if c % 2))

    def all_even(self) -> bool:
        return all(c % 2 == 0 for c in self._coeffs.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.scalar(other)
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.ring.A == other.ring.A and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.ring.A, tuple(sorted(self._coeffs.items()))))

    def __add__(self, other) -> "CohomologyClass":
        other = self.ring.coerce(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out.get(m, 0) + c
        return CohomologyClass(self.ring, out)

    def __sub__(self, other) -> "CohomologyClass":
        return self + (-self.ring.coerce(other))

    def __neg__(self) -> "CohomologyClass":
        return CohomologyClass(self.ring, {m: -c for m, c in self._coeffs.items()})

    def __rmul__(self, other):
        if isinstance(other, int):
            return CohomologyClass(self.ring, {m: other * c for m, c in self._coeffs.items()})
        return NotImplemented

    def __mul__(self, other) -> "CohomologyClass":
        if isinstance(other, int):
            return other * self
        other = self.ring.coerce(other)
        if other.ring.A != self.ring.A:
            raise ValueError("classes live in different rings")
        out: dict[int, int] = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                for m, c in self.ring._square_free_product(m1, m2).items():
                    v = out.get(m, 0) + c1 * c2 * c
                    if v:
                        out[m] = v
                    elif m in out:
                        del out[m]
        return CohomologyClass(self.ring, out)

    def __pow__(self, k: int) -> "CohomologyClass":
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def __repr__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for m, c in self.terms():
            mono = "".join(f"x{i + 1}" for i in range(self.n) if m >> i & 1) or "1"
            parts.append(f"{c}*{mono}" if mono != "1" else f"{c}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"monomial": [i + 1 for i in range(self.n) if m >> i & 1],
                       "coeff": str(c)} for m, c in self.terms()],
        }


@dataclass(frozen=True)
class Mod2Class:
    """Mod-2 reduction of a class: the set of monomials with odd coefficient."""

    n: int
    masks: frozenset[int]

    def is_zero(self) -> bool:
        return not self.masks

    def monomials(self) -> list[tuple[int, ...]]:
        return sorted(tuple(i for i in range(self.n) if m >> i & 1) for m in self.masks)


class CohomologyRing:
    """H*(M_n(A), Z) with exact arithmetic in the square-free basis."""

    def __init__(self, A: BottMatrix):
        self.A = A
        self.n = A.n
        # alpha_k as (index, entry) pairs from row k
        self._alpha_rows = tuple(tuple((j, A.rows[k][j]) for j in range(k) if A.rows[k][j])
                                 for k in range(self.n))
        self._reduce_cache: dict[tuple[int, ...], dict[int, int]] = {}
        self._product_cache: dict[tuple[int, int], dict[int, int]] = {}

    # -- element constructors ------------------------------------------------

    def zero(self) -> CohomologyClass:
        return CohomologyClass(self, {})

    def one(self) -> CohomologyClass:
        return CohomologyClass(self, {0: 1})

    def scalar(self, c: int) -> CohomologyClass:
        return CohomologyClass(self, {0: c})

    def coerce(self, value) -> CohomologyClass:
        if isinstance(value, CohomologyClass):
            return value
        if isinstance(value, int):
            return self.scalar(value)
        raise TypeError(f"cannot coerce {value!r} into the cohomology ring")

    def x(self, k: int) -> CohomologyClass:
        """Generator dual to the infinity section of stage k (0-based)."""
        if not 0 <= k < self.n:
            raise ValueError("stage index out of range")
        return CohomologyClass(self, {1 << k: 1})

    def alpha(self, k: int) -> CohomologyClass:
        """Pullback first Chern class of the stage-k twisting bundle."""
        if not 0 <= k < self.n:
            raise ValueError("stage index out of range")
        return CohomologyClass(self, {1 << j: a for j, a in self._alpha_rows[k]})

    def y(self, k: int) -> CohomologyClass:
        """Class dual to the zero section: y_k = x_k + alpha_k."""
        return self.x(k) + self.alpha(k)

    def from_terms(self, terms: Mapping[int, int]) -> CohomologyClass:
        return CohomologyClass(self, terms)

    def monomial(self, indices: Iterable[int]) -> CohomologyClass:
        mask = 0
        for i in indices:
            mask |= 1 << i
        return CohomologyClass(self, {mask: 1})

    def basis_masks(self) -> list[int]:
        return list(range(1 << self.n))

    # -- multiplication ------------------------------------------------------

    def _square_free_product(self, m1: int, m2: int) -> dict[int, int]:
        key = (m1, m2) if m1 <= m2 else (m2, m1)
        cached = self._product_cache.get(key)
        if cached is None:
            counts = [0] * self.n
            for i in range(self.n):
                counts[i] = (m1 >> i & 1) + (m2 >> i & 1)
            cached = self._reduce(tuple(counts))
            self._product_cache[key] = cached
        return cached

    def _reduce(self, counts: tuple[int, ...]) -> dict[int, int]:
        """Rewrite a monomial with repeated factors in the square-free basis.

        Repeatedly substitutes x_k^2 -> -alpha_k x_k at the highest
        repeated index; alpha_k only involves smaller indices, so the
        pair (highest repeated index, its count) drops lexicographically
        and the rewriting terminates.
        """
        cached = self._reduce_cache.get(counts)
        if cached is not None:
            return cached
        k = max((i for i, c in enumerate(counts) if c >= 2), default=-1)
        if k < 0:
            mask = 0
            for i, c in enumerate(counts):
                if c:
                    mask |= 1 << i
            result = {mask: 1}
        else:
            result = {}
            for j, a in self._alpha_rows[k]:
                nxt = list(counts)
                nxt[k] -= 1
                nxt[j] += 1
                for mask, c in self._reduce(tuple(nxt)).items():
                    v = result.get(mask, 0) - a * c
                    if v:
                        result[mask] = v
                    elif mask in result:
                        del result[mask]
        self._reduce_cache[counts] = result
        return result

    # -- characteristic classes ----------------------------------------------

    def chern_total(self) -> CohomologyClass:
        total = self.one()
        for k in range(self.n):
            total = total * (self.one() + 2 * self.x(k) + self.alpha(k))
        return total

    def chern_1(self) -> CohomologyClass:
        c1 = self.zero()
        for k in range(self.n):
            c1 = c1 + 2 * self.x(k) + self.alpha(k)
        return c1

    def pontrjagin_total(self) -> CohomologyClass:
        total = self.one()
        for k in range(self.n):
            a = self.alpha(k)
            total = total * (self.one() + a * a)
        return total

    def pontrjagin_class(self, k: int) -> CohomologyClass:
        """Degree-4k component p_k of the total Pontrjagin class."""
        return self.pontrjagin_total().graded_part(2 * k)

    def stiefel_whitney_2(self) -> Mod2Class:
        return self.chern_1().reduce_mod2()

    def is_q_trivial(self) -> bool:
        """Rational cohomology is that of a product of projective lines."""
        return all((self.alpha(k) ** 2).is_zero() for k in range(self.n))

    def square_zero_primitives(self) -> list[CohomologyClass]:
        """Primitive square-zero generators, one per stage with alpha_k^2 = 0.

        Up to sign these are x_k + alpha_k/2 when alpha_k is even and
        2 x_k + alpha_k otherwise.
        """
        out = []
        for k in range(self.n):
            a = self.alpha(k)
            if not (a * a).is_zero():
                continue
            if a.all_even():
                half = CohomologyClass(self, {m: c // 2 for m, c in a.terms()})
                out.append(self.x(k) + half)
            else:
                out.append(2 * self.x(k) + a)
        return out

    def topological_twist(self) -> int:
        """Stages whose CP^1 bundle is topologically nontrivial.

        Stage k is topologically trivial iff alpha_k is even and
        alpha_k^2 = 0.
        """
        count = 0
        for k in range(self.n):
            a = self.alpha(k)
            if not (a.all_even() and (a * a).is_zero()):
                count += 1
        return count


@lru_cache(maxsize=512)
def ring(A: BottMatrix) -> CohomologyRing:
    return CohomologyRing(A)


# Module-level conveniences mirroring the ring methods.

def x(A: BottMatrix, k: int) -> CohomologyClass:
    return ring(A).x(k)


def y(A: BottMatrix, k: int) -> CohomologyClass:
    return ring(A).y(k)


def alpha(A: BottMatrix, k: int) -> CohomologyClass:
    return ring(A).alpha(k)


def multiply(u: CohomologyClass, v: CohomologyClass) -> CohomologyClass:
    return u * v


def chern_total(A: BottMatrix) -> CohomologyClass:
    return ring(A).chern_total()


def chern_1(A: BottMatrix) -> CohomologyClass:
    return ring(A).chern_1()


def pontrjagin_total(A: BottMatrix) -> CohomologyClass:
    return ring(A).pontrjagin_total()


def stiefel_whitney_2(A: BottMatrix) -> Mod2Class:
    return ring(A).stiefel_whitney_2()


def is_q_trivial(A: BottMatrix) -> bool:
    return ring(A).is_q_trivial()


def square_zero_primitives(A: BottMatrix) -> list[CohomologyClass]:
    return ring(A).square_zero_primitives()


def topological_twist(A: BottMatrix) -> int:
    return ring(A).topological_twist()


def class_from_json(A: BottMatrix, obj: dict) -> CohomologyClass:
    R = ring(A)
    coeffs: dict[int, int] = {}
    for term in obj["terms"]:
        mask = 0
        for i in term["monomial"]:
            mask |= 1 << (int(i) - 1)
        coeffs[mask] = coeffs.get(mask, 0) + int(term["coeff"])
    return R.from_terms(coeffs)
