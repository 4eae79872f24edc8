"""Exact polynomial arithmetic over the rationals.

Univariate polynomials are tuples of Fractions, constant term first,
normalized so the leading coefficient is nonzero (the zero polynomial is
the empty tuple).  Root counting uses Sturm sequences on the squarefree
part, so multiple roots are detected once, and isolation plus sign
bisection refines roots to any tolerance without floating point.

Poly2 is a thin bivariate companion (dict of (i, j) -> Fraction) with
just the operations the square-fiber solver needs: ring arithmetic,
partial derivatives, substitution and interval bounds over a box with
nonnegative corners.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Poly = tuple[Fraction, ...]


def poly(coeffs: Iterable) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


ZERO: Poly = ()
ONE: Poly = (Fraction(1),)
Z: Poly = (Fraction(0), Fraction(1))


def degree(p: Poly) -> int:
    return len(p) - 1


def padd(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return poly(out)


def pneg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def psub(p: Poly, q: Poly) -> Poly:
    return padd(p, pneg(q))


def pscale(p: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(c * a for a in p)


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def ppow(p: Poly, k: int) -> Poly:
    out = ONE
    for _ in range(k):
        out = pmul(out, p)
    return out


def pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    inv_lead = 1 / q[-1]
    while len(rem) >= len(q) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(q):
            break
        shift = len(rem) - len(q)
        factor = rem[-1] * inv_lead
        quo[shift] = factor
        for i, c in enumerate(q):
            rem[shift + i] -= factor * c
        rem.pop()
    return poly(quo), poly(rem)


def pdiv_exact(p: Poly, q: Poly) -> Poly:
    quo, rem = pdivmod(p, q)
    if rem:
        raise ValueError("division is not exact")
    return quo


def peval(p: Poly, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pderiv(p: Poly) -> Poly:
    return poly(i * c for i, c in enumerate(p) if i)


def pinteg(p: Poly) -> Poly:
    """Antiderivative with zero constant term."""
    return poly([Fraction(0)] + [c / (i + 1) for i, c in enumerate(p)])


def definite_integral(p: Poly, a, b) -> Fraction:
    anti = pinteg(p)
    return peval(anti, b) - peval(anti, a)


def pgcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, pdivmod(p, q)[1]
    if not p:
        return ZERO
    return pscale(p, 1 / p[-1])


def squarefree_part(p: Poly) -> Poly:
    if degree(p) < 1:
        return p
    g = pgcd(p, pderiv(p))
    if degree(g) < 1:
        return p
    return pdiv_exact(p, g)


def _sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, pderiv(p)]
    while chain[-1]:
        rem = pdivmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(pneg(rem))
    return chain


def _variations(chain: Sequence[Poly], x) -> int:
    signs = []
    for q in chain:
        v = peval(q, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_open(p: Poly, a, b) -> int:
    """Distinct real roots of p in the open interval (a, b)."""
    if not p:
        raise ValueError("zero polynomial has no root count")
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        return 0
    sf = squarefree_part(p)
    if degree(sf) == 0:
        return 0
    chain = _sturm_chain(sf)
    count = _variations(chain, a) - _variations(chain, b)
    if peval(sf, b) == 0:
        count -= 1
    return count


def isolate_roots(p: Poly, a, b) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals inside (a, b), each holding one distinct root.

    Exact roots are returned as degenerate intervals.
    """
    if not p:
        raise ValueError("cannot isolate roots of the zero polynomial")
    a, b = Fraction(a), Fraction(b)
    sf = squarefree_part(p)
    out: list[tuple[Fraction, Fraction]] = []

    def recurse(lo: Fraction, hi: Fraction, n_roots: int) -> None:
        if n_roots == 0:
            return
        if n_roots == 1 and peval(sf, lo) * peval(sf, hi) < 0:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        if peval(sf, mid) == 0:
            out.append((mid, mid))
        left = count_roots_open(sf, lo, mid)
        right = count_roots_open(sf, mid, hi)
        recurse(lo, mid, left)
        recurse(mid, hi, right)

    recurse(a, b, count_roots_open(sf, a, b))
    return sorted(out)


def refine_root(p: Poly, lo: Fraction, hi: Fraction, tol) -> Fraction:
    """Bisect a sign-changing bracket down to width tol; exact roots pass through.

    After bisection the simplest rational in the bracket is probed, so
    roots with small denominators come back exactly.
    """
    if lo == hi:
        return lo
    tol = Fraction(tol)
    sf = squarefree_part(p)
    flo = peval(sf, lo)
    if flo == 0:
        return lo
    if peval(sf, hi) == 0:
        return hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fmid = peval(sf, mid)
        if fmid == 0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    mid = (lo + hi) / 2
    for bound in (1, 10, 1000, 10 ** 6, 10 ** 12):
        snap = mid.limit_denominator(bound)
        if lo <= snap <= hi and peval(sf, snap) == 0:
            return snap
    return mid


def roots_in_interval(p: Poly, a, b, tol) -> list[Fraction]:
    """All distinct roots of p in (a, b), each within tol of the true root."""
    return [refine_root(p, lo, hi, tol) for lo, hi in isolate_roots(p, a, b)]


def lagrange_interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> Poly:
    """Unique polynomial of degree < len(points) through the given points."""
    result = ZERO
    xs = [Fraction(x) for x, _ in points]
    for i, (_, yi) in enumerate(points):
        term = (Fraction(yi),)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                term = pmul(term, poly([-xj, 1]))
                denom *= xs[i] - xj
        result = padd(result, pscale(term, 1 / denom))
    return result


def to_strings(p: Poly) -> list[str]:
    return [str(c) for c in p]


def from_strings(coeffs: Sequence[str]) -> Poly:
    return poly(Fraction(c) for c in coeffs)


class Poly2:
    """Bivariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], Fraction] | None = None):
        self.coeffs: dict[tuple[int, int], Fraction] = {}
        if coeffs:
            for key, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self.coeffs[key] = c

    @classmethod
    def constant(cls, c) -> "Poly2":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def var(cls, which: int) -> "Poly2":
        return cls({(1, 0) if which == 0 else (0, 1): Fraction(1)})

    def __add__(self, other) -> "Poly2":
        other = other if isinstance(other, Poly2) else Poly2.constant(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, Fraction(0)) + c
        return Poly2(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly2":
        return Poly2({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other) -> "Poly2":
        other = other if isinstance(other, Poly2) else Poly2.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly2":
        return Poly2.constant(other) - self

    def __mul__(self, other) -> "Poly2":
        if not isinstance(other, Poly2):
            return Poly2({k: Fraction(other) * c for k, c in self.coeffs.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return Poly2(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = other if isinstance(other, Poly2) else Poly2.constant(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def diff(self, which: int) -> "Poly2":
        out = {}
        for (i, j), c in self.coeffs.items():
            if which == 0 and i:
                out[(i - 1, j)] = out.get((i - 1, j), Fraction(0)) + i * c
            elif which == 1 and j:
                out[(i, j - 1)] = out.get((i, j - 1), Fraction(0)) + j * c
        return Poly2(out)

    def eval(self, x, y) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        total = Fraction(0)
        for (i, j), c in self.coeffs.items():
            total += c * x ** i * y ** j
        return total

    def substitute_x(self, x) -> Poly:
        x = Fraction(x)
        out: dict[int, Fraction] = {}
        for (i, j), c in self.coeffs.items():
            out[j] = out.get(j, Fraction(0)) + c * x ** i
        return poly(out.get(j, Fraction(0)) for j in range(max(out, default=-1) + 1))

    def substitute_y(self, y) -> Poly:
        y = Fraction(y)
        out: dict[int, Fraction] = {}
        for (i, j), c in self.coeffs.items():
            out[i] = out.get(i, Fraction(0)) + c * y ** j
        return poly(out.get(i, Fraction(0)) for i in range(max(out, default=-1) + 1))

    def bounds_on_box(self, x0, x1, y0, y1) -> tuple[Fraction, Fraction]:
        """Interval enclosure of the range over [x0,x1] x [y0,y1].

        Requires 0 <= x0 and 0 <= y0 so monomial powers are monotone.
        """
        if x0 < 0 or y0 < 0:
            raise ValueError("box must sit in the nonnegative quadrant")
        lo = hi = Fraction(0)
        for (i, j), c in self.coeffs.items():
            m_lo = x0 ** i * y0 ** j
            m_hi = x1 ** i * y1 ** j
            if c > 0:
                lo += c * m_lo
                hi += c * m_hi
            else:
                lo += c * m_hi
                hi += c * m_lo
        return lo, hi

    def __repr__(self):
        if not self.coeffs:
            return "Poly2(0)"
        terms = [f"{c}*z1^{i}*z2^{j}" for (i, j), c in sorted(self.coeffs.items())]
        return "Poly2(" + " + ".join(terms) + ")"
