"""Dense univariate polynomials over the rationals.

A polynomial is a list of Fraction coefficients in ascending power order with
the trailing zero coefficients trimmed; the zero polynomial is the empty list.
This module carries the root machinery: Sturm sequences, exact root counting
on intervals, and isolation of the real roots into disjoint rational
intervals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

UPoly = list[Fraction]


def utrim(c: list[Fraction]) -> UPoly:
    while c and c[-1] == 0:
        c.pop()
    return c


def upoly(coeffs) -> UPoly:
    return utrim([Fraction(x) for x in coeffs])


def uzero() -> UPoly:
    return []


def uconst(c) -> UPoly:
    c = Fraction(c)
    return [c] if c != 0 else []


def uvar() -> UPoly:
    """The polynomial t."""
    return [Fraction(0), Fraction(1)]


def udeg(p: UPoly) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(p) - 1


def uadd(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return utrim(out)


def uneg(p: UPoly) -> UPoly:
    return [-c for c in p]


def usub(p: UPoly, q: UPoly) -> UPoly:
    return uadd(p, uneg(q))


def umul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return utrim(out)


def uscale(p: UPoly, c) -> UPoly:
    c = Fraction(c)
    if c == 0:
        return []
    return [a * c for a in p]


def upow(p: UPoly, e: int) -> UPoly:
    out = uconst(1)
    base = p
    while e:
        if e & 1:
            out = umul(out, base)
        base = umul(base, base)
        e >>= 1
    return out


def ueval(p: UPoly, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def udivmod(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    r = p[:]
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq = udeg(q)
    lc = q[-1]
    while udeg(r) >= dq and r:
        k = udeg(r) - dq
        c = r[-1] / lc
        quo[k] = c
        for i in range(len(q)):
            r[i + k] -= c * q[i]
        utrim(r)
    return utrim(quo), r


def udiv_exact(p: UPoly, q: UPoly) -> UPoly:
    quo, rem = udivmod(p, q)
    if rem:
        raise ValueError("division is not exact")
    return quo


def uderiv(p: UPoly) -> UPoly:
    return utrim([c * i for i, c in enumerate(p)][1:])


def umonic(p: UPoly) -> UPoly:
    if not p:
        return []
    lc = p[-1]
    return [c / lc for c in p]


def ugcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic gcd by the Euclidean algorithm."""
    a, b = p[:], q[:]
    while b:
        a, b = b, udivmod(a, b)[1]
    return umonic(a)


def usquarefree(p: UPoly) -> UPoly:
    """Squarefree part p / gcd(p, p')."""
    if udeg(p) <= 0:
        return p[:]
    g = ugcd(p, uderiv(p))
    if udeg(g) == 0:
        return p[:]
    return udiv_exact(p, g)


def uclear_denominators(p: UPoly) -> list[int]:
    """Integer-coefficient image: primitive, positive leading coefficient."""
    if not p:
        return []
    m = 1
    for c in p:
        m = m * c.denominator // int_gcd(m, c.denominator)
    ints = [int(c * m) for c in p]
    g = 0
    for v in ints:
        g = int_gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def _sign_variations(vals: list[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_chain(p: UPoly) -> list[UPoly]:
    chain = [p, uderiv(p)]
    while chain[-1]:
        rem = udivmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(uneg(rem))
    return [c for c in chain if c]


def _variations_at(chain: list[UPoly], x: Fraction) -> int:
    return _sign_variations([ueval(c, x) for c in chain])


def _variations_at_inf(chain: list[UPoly], positive: bool) -> int:
    vals = []
    for c in chain:
        lc = c[-1]
        if not positive and udeg(c) % 2 == 1:
            lc = -lc
        vals.append(lc)
    return _sign_variations(vals)


def _clear_endpoint_roots(q: UPoly, x: Fraction) -> UPoly:
    # x is a rational root of the squarefree q, so (t - x) divides exactly;
    # peeling it off leaves the open-interval root set untouched.
    while q and ueval(q, x) == 0:
        q = udiv_exact(q, [-x, Fraction(1)])
    return q


def sturm_root_count(p: UPoly, lo, hi) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi).

    Roots sitting exactly at an endpoint are divided out first (they are
    rational, so the division is exact) and do not count.
    """
    if not p:
        raise ValueError("zero polynomial has no root count")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    q = usquarefree(p)
    if udeg(q) <= 0:
        return 0
    q = _clear_endpoint_roots(q, lo)
    q = _clear_endpoint_roots(q, hi)
    if udeg(q) <= 0:
        return 0
    chain = sturm_chain(q)
    return _variations_at(chain, lo) - _variations_at(chain, hi)


def real_root_count(p: UPoly) -> int:
    """Number of distinct real roots over all of R."""
    if not p:
        raise ValueError("zero polynomial")
    q = usquarefree(p)
    if udeg(q) <= 0:
        return 0
    chain = sturm_chain(q)
    return _variations_at_inf(chain, False) - _variations_at_inf(chain, True)


def cauchy_bound(p: UPoly) -> Fraction:
    """B with every real root of p in (-B, B)."""
    if udeg(p) < 1:
        return Fraction(1)
    lc = abs(p[-1])
    return Fraction(1) + max(abs(c) / lc for c in p[:-1]) if len(p) > 1 else Fraction(1)


def isolate_real_roots(p: UPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open rational intervals, one per distinct real root, in order.

    Each interval (a, b) has q(a) != 0 != q(b) and contains exactly one root
    of the squarefree part q.  Subdivision only ever splits at non-root
    points, so the emitted intervals are pairwise disjoint by construction;
    a bisection midpoint that happens to be a root gets its own verified
    sub-interval.
    """
    if not p:
        raise ValueError("zero polynomial")
    q = usquarefree(p)
    if udeg(q) <= 0:
        return []
    chain = sturm_chain(q)

    def count(lo: Fraction, hi: Fraction) -> int:
        return _variations_at(chain, lo) - _variations_at(chain, hi)

    b = cauchy_bound(q) + 1
    while ueval(q, -b) == 0 or ueval(q, b) == 0:
        b += 1

    intervals: list[tuple[Fraction, Fraction]] = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        k = count(lo, hi)
        if k == 0:
            continue
        if k == 1:
            intervals.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if ueval(q, mid) == 0:
            # rational root exactly at the midpoint: carve out a verified
            # bracket around it and recurse on the two outer pieces
            w = (hi - lo) / 4
            while ueval(q, mid - w) == 0 or ueval(q, mid + w) == 0 or \
                    count(mid - w, mid + w) != 1:
                w /= 2
            intervals.append((mid - w, mid + w))
            stack.append((lo, mid - w))
            stack.append((mid + w, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    intervals.sort()
    return intervals


def upoly_to_json(p: UPoly) -> list[str]:
    return [f"{c.numerator}/{c.denominator}" for c in p]


def upoly_from_json(data: list[str]) -> UPoly:
    return utrim([Fraction(s) for s in data])
