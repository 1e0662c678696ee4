"""Real algebraic numbers as (squarefree integer polynomial, isolating interval).

The stored polynomial need not be irreducible, only squarefree with exactly
one root inside the open interval; that is enough for decidable equality (a
gcd certificate), ordering (refine until the intervals separate), and sign
evaluation of rational polynomials at the number.
"""

from __future__ import annotations

from fractions import Fraction

from .upoly import (
    UPoly,
    isolate_real_roots,
    sturm_root_count,
    uclear_denominators,
    uconst,
    udeg,
    ueval,
    ugcd,
    usquarefree,
    usub,
    utrim,
)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


class AlgebraicNumber:
    """The unique root of `minpoly` inside the open interval (lo, hi)."""

    __slots__ = ("minpoly", "lo", "hi", "_rational")

    def __init__(self, minpoly: UPoly, lo, hi, _check: bool = True):
        self.minpoly: UPoly = [Fraction(c) for c in minpoly]
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self._rational: Fraction | None = None
        if _check:
            if udeg(self.minpoly) < 1:
                raise ValueError("constant polynomial cannot define a number")
            if not self.lo < self.hi:
                raise ValueError("empty interval")
            if ueval(self.minpoly, self.lo) == 0 or ueval(self.minpoly, self.hi) == 0:
                raise ValueError("interval endpoints must not be roots")
            if sturm_root_count(self.minpoly, self.lo, self.hi) != 1:
                raise ValueError("interval must isolate exactly one root")
        if udeg(self.minpoly) == 1:
            self._rational = -self.minpoly[0] / self.minpoly[1]

    # -- construction --------------------------------------------------------

    @staticmethod
    def from_rational(r) -> AlgebraicNumber:
        r = Fraction(r)
        n = AlgebraicNumber([-r, Fraction(1)], r - 1, r + 1, _check=False)
        n._rational = r
        return n

    def as_rational(self) -> Fraction | None:
        return self._rational

    # -- refinement ----------------------------------------------------------

    def refine(self) -> None:
        """One bisection step; collapses to a rational when the midpoint hits."""
        if self._rational is not None:
            m = self._rational
            self.lo, self.hi = m - (m - self.lo) / 2, m + (self.hi - m) / 2
            return
        mid = (self.lo + self.hi) / 2
        v = ueval(self.minpoly, mid)
        if v == 0:
            self._rational = mid
            return
        # squarefree simple root: the sign change brackets it
        if _sign(ueval(self.minpoly, self.lo)) != _sign(v):
            self.hi = mid
        else:
            self.lo = mid

    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine_below(self, w: Fraction) -> None:
        while self.width() > w:
            self.refine()

    # -- predicates ----------------------------------------------------------

    def equals(self, other: AlgebraicNumber) -> bool:
        if self._rational is not None and other._rational is not None:
            return self._rational == other._rational
        if self._rational is not None:
            return other.is_value(self._rational)
        if other._rational is not None:
            return self.is_value(other._rational)
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if not lo < hi:
            return False
        g = ugcd(self.minpoly, other.minpoly)
        if udeg(g) < 1:
            return False
        # a root of g inside both intervals is a root of each defining
        # polynomial there, hence equals both numbers; endpoints of the
        # intersection are endpoints of one of the intervals, so not roots
        return sturm_root_count(g, lo, hi) > 0

    def is_value(self, r: Fraction) -> bool:
        if self._rational is not None:
            return self._rational == r
        return self.lo < r < self.hi and ueval(self.minpoly, r) == 0

    def compare(self, other: AlgebraicNumber) -> int:
        """-1, 0, 1 ordering."""
        if self.equals(other):
            return 0
        a, b = self, other
        while not (a.hi <= b.lo or b.hi <= a.lo):
            a.refine()
            b.refine()
        return -1 if a.hi <= b.lo else 1

    def compare_rational(self, r) -> int:
        r = Fraction(r)
        if self.is_value(r):
            return 0
        while self.lo < r < self.hi:
            self.refine()
        return -1 if self.hi <= r else 1

    # -- evaluation ----------------------------------------------------------

    def sign_of(self, q: UPoly) -> int:
        """Exact sign of q(alpha)."""
        if not q:
            return 0
        if self._rational is not None:
            return _sign(ueval(q, self._rational))
        g = ugcd(self.minpoly, q)
        if udeg(g) >= 1 and sturm_root_count(g, self.lo, self.hi) > 0:
            return 0
        # q(alpha) != 0: shrink until q has no root in the interval, then any
        # interior sample pins the sign
        while True:
            if ueval(q, self.lo) != 0 and ueval(q, self.hi) != 0 and \
                    sturm_root_count(q, self.lo, self.hi) == 0:
                return _sign(ueval(q, (self.lo + self.hi) / 2))
            self.refine()
            if self._rational is not None:
                return _sign(ueval(q, self._rational))

    def float_approx(self, digits: int = 12) -> float:
        self.refine_below(Fraction(1, 10 ** digits))
        return float((self.lo + self.hi) / 2)

    def __repr__(self) -> str:
        if self._rational is not None:
            return f"AlgebraicNumber({self._rational})"
        return f"AlgebraicNumber(deg {udeg(self.minpoly)} in ({self.lo}, {self.hi}))"

    def to_json(self) -> dict:
        ints = uclear_denominators(self.minpoly)
        return {
            "minpoly": [str(c) for c in ints],
            "interval": [f"{self.lo.numerator}/{self.lo.denominator}",
                         f"{self.hi.numerator}/{self.hi.denominator}"],
        }

    @staticmethod
    def from_json(data: dict) -> AlgebraicNumber:
        poly = [Fraction(int(c)) for c in data["minpoly"]]
        lo, hi = (Fraction(s) for s in data["interval"])
        return AlgebraicNumber(poly, lo, hi)


def isolate_roots(p: UPoly) -> list[AlgebraicNumber]:
    """One AlgebraicNumber per distinct real root of p, in increasing order."""
    if not p:
        raise ValueError("zero polynomial")
    q = usquarefree(p)
    ints = [Fraction(c) for c in uclear_denominators(q)]
    out = []
    for lo, hi in isolate_real_roots(q):
        n = AlgebraicNumber(ints, lo, hi, _check=False)
        mid = (lo + hi) / 2
        if ueval(ints, mid) == 0:
            n._rational = mid
        out.append(n)
    return out


# -- coordinates: Fraction or AlgebraicNumber -------------------------------

Coord = Fraction | AlgebraicNumber


def coord_normalize(c):
    if isinstance(c, AlgebraicNumber) and c.as_rational() is not None:
        return c.as_rational()
    return c


def coord_eq(a, b) -> bool:
    a, b = coord_normalize(a), coord_normalize(b)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    if isinstance(a, Fraction):
        return b.is_value(a)
    if isinstance(b, Fraction):
        return a.is_value(b)
    return a.equals(b)


def coord_cmp(a, b) -> int:
    a, b = coord_normalize(a), coord_normalize(b)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return (a > b) - (a < b)
    if isinstance(a, Fraction):
        return -b.compare_rational(a)
    if isinstance(b, Fraction):
        return a.compare_rational(b)
    return a.compare(b)


def coord_to_json(c):
    c = coord_normalize(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return c.to_json()


def coord_from_json(data):
    if isinstance(data, str):
        return Fraction(data)
    return AlgebraicNumber.from_json(data)


def _interval_horner(q: UPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of q over [lo, hi] by interval Horner evaluation."""
    alo, ahi = Fraction(0), Fraction(0)
    for c in reversed(q):
        cands = [alo * lo, alo * hi, ahi * lo, ahi * hi]
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


def apply_upoly(q: UPoly, alpha) -> "Fraction | AlgebraicNumber":
    """Exact image q(alpha) of a coordinate under a rational polynomial."""
    alpha = coord_normalize(alpha)
    if isinstance(alpha, Fraction):
        return ueval(q, alpha)
    if udeg(q) <= 0:
        return q[0] if q else Fraction(0)

    from .mpoly import MPoly, resultant

    m = alpha.minpoly
    # W(x) = res_u(m(u), x - q(u)) vanishes at q(alpha)
    mu = MPoly(2, {(i, 0): c for i, c in enumerate(m) if c})
    xq = MPoly(2, {(0, 1): Fraction(1)}) + MPoly(2, {(i, 0): -c for i, c in enumerate(q) if c})
    w2 = resultant(mu, xq, 0)
    w = usquarefree(utrim([w2.terms.get((0, i), Fraction(0)) for i in range(w2.degree_in(1) + 1)]))
    w_ints = [Fraction(c) for c in uclear_denominators(w)]
    while True:
        jlo, jhi = _interval_horner(q, alpha.lo, alpha.hi)
        if jlo == jhi:
            return jlo
        el, eh = ueval(w_ints, jlo), ueval(w_ints, jhi)
        if el != 0 and eh != 0 and sturm_root_count(w_ints, jlo, jhi) == 1:
            return AlgebraicNumber(w_ints, jlo, jhi, _check=False)
        if el == 0 and alpha.sign_of(usub(q, uconst(jlo))) == 0:
            return jlo
        if eh == 0 and alpha.sign_of(usub(q, uconst(jhi))) == 0:
            return jhi
        alpha.refine()
        if alpha.as_rational() is not None:
            return ueval(q, alpha.as_rational())
