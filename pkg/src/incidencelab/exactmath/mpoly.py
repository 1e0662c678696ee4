"""Sparse multivariate polynomials over the rationals.

Terms live in a dict mapping exponent tuples to nonzero Fraction
coefficients; the zero polynomial has an empty dict.  The monomial order is
graded lexicographic everywhere (ascending total degree, then descending
lexicographic on exponent tuples), and serialization depends on it.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .upoly import UPoly, uadd, uconst, umul, upow, uscale, utrim

Exponent = tuple[int, ...]


def grlex_key(e: Exponent) -> tuple:
    return (sum(e), tuple(-x for x in e))


def monomials_upto(nvars: int, maxdeg: int, include_const: bool = False) -> list[Exponent]:
    """All exponent tuples of total degree 1..maxdeg (0..maxdeg with the
    constant included), in graded-lexicographic order."""
    lo = 0 if include_const else 1
    out: list[Exponent] = []
    for d in range(lo, maxdeg + 1):
        block = [e for e in itertools.product(range(d + 1), repeat=nvars) if sum(e) == d]
        block.sort(key=grlex_key)
        out.extend(block)
    return out


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Exponent, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[tuple(e)] = c

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> MPoly:
        return MPoly(nvars)

    @staticmethod
    def const(nvars: int, c) -> MPoly:
        return MPoly(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def var(nvars: int, idx: int) -> MPoly:
        e = [0] * nvars
        e[idx] = 1
        return MPoly(nvars, {tuple(e): Fraction(1)})

    @staticmethod
    def from_coeff_vector(nvars: int, maxdeg: int, coeffs, include_const: bool = True) -> MPoly:
        monos = monomials_upto(nvars, maxdeg, include_const=include_const)
        return MPoly(nvars, dict(zip(monos, coeffs)))

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = ["x%d" % i for i in range(self.nvars)]
        bits = []
        for e in sorted(self.terms, key=grlex_key):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}"
                for i, k in enumerate(e) if k
            )
            bits.append(f"{c}" if not mono else (f"{c}*{mono}" if c != 1 else mono))
        return " + ".join(bits)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: MPoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other: MPoly) -> MPoly:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, Fraction(0)) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly(self.nvars, out)

    def __neg__(self) -> MPoly:
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MPoly) -> MPoly:
        return self + (-other)

    def __mul__(self, other: MPoly) -> MPoly:
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, Fraction(0)) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MPoly(self.nvars, out)

    def scale(self, c) -> MPoly:
        c = Fraction(c)
        if c == 0:
            return MPoly(self.nvars)
        return MPoly(self.nvars, {e: k * c for e, k in self.terms.items()})

    def pow(self, k: int) -> MPoly:
        out = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def deriv(self, var: int) -> MPoly:
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return MPoly(self.nvars, out)

    def evaluate(self, point) -> Fraction:
        pt = [Fraction(x) for x in point]
        if len(pt) != self.nvars:
            raise ValueError("dimension mismatch")
        acc = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            acc += v
        return acc

    # -- substitution ------------------------------------------------------

    def compose_upolys(self, comps: list[UPoly]) -> UPoly:
        """Substitute x_i -> comps[i](t); result is univariate in t."""
        if len(comps) != self.nvars:
            raise ValueError("dimension mismatch")
        acc: UPoly = []
        cache: dict[tuple[int, int], UPoly] = {}

        def power(i: int, k: int) -> UPoly:
            if (i, k) not in cache:
                cache[(i, k)] = upow(comps[i], k)
            return cache[(i, k)]

        for e, c in self.terms.items():
            term = uconst(c)
            for i, k in enumerate(e):
                if k:
                    term = umul(term, power(i, k))
            acc = uadd(acc, term)
        return acc

    def compose_mpolys(self, comps: list[MPoly]) -> MPoly:
        """Substitute x_i -> comps[i] (all in a common target ring)."""
        if len(comps) != self.nvars:
            raise ValueError("dimension mismatch")
        tgt = comps[0].nvars
        acc = MPoly.zero(tgt)
        cache: dict[tuple[int, int], MPoly] = {}

        def power(i: int, k: int) -> MPoly:
            if (i, k) not in cache:
                cache[(i, k)] = comps[i].pow(k)
            return cache[(i, k)]

        for e, c in self.terms.items():
            term = MPoly.const(tgt, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    # -- division ----------------------------------------------------------

    def lead(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def div_exact(self, other: MPoly) -> MPoly:
        """Exact division; raises ValueError if other does not divide self."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = MPoly(self.nvars, dict(self.terms))
        quo: dict[Exponent, Fraction] = {}
        le, lc = other.lead()
        while not rem.is_zero():
            re, rc = rem.lead()
            qe = tuple(a - b for a, b in zip(re, le))
            if any(x < 0 for x in qe):
                raise ValueError("division is not exact")
            qc = rc / lc
            quo[qe] = quo.get(qe, Fraction(0)) + qc
            rem = rem - other * MPoly(self.nvars, {qe: qc})
        return MPoly(self.nvars, quo)

    def divides(self, other: MPoly) -> bool:
        try:
            other.div_exact(self)
            return True
        except (ValueError, ZeroDivisionError):
            return False

    def content_monomial(self) -> Exponent:
        """Largest monomial dividing every term."""
        if self.is_zero():
            return (0,) * self.nvars
        mins = [min(e[i] for e in self.terms) for i in range(self.nvars)]
        return tuple(mins)

    def normalized(self) -> MPoly:
        """Scaled so the graded-lex leading coefficient is 1."""
        if self.is_zero():
            return self
        _, lc = self.lead()
        return self.scale(1 / lc)

    # -- views -------------------------------------------------------------

    def as_upoly_in(self, var: int) -> list[MPoly]:
        """Coefficient list (ascending powers of x_var), entries in the ring
        with x_var still present but unused."""
        d = self.degree_in(var)
        coeffs = [MPoly.zero(self.nvars) for _ in range(d + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[var]
            ne[var] = 0
            coeffs[k] = coeffs[k] + MPoly(self.nvars, {tuple(ne): c})
        return coeffs

    def drop_var(self, var: int) -> MPoly:
        """Remove an unused variable from the ring."""
        if self.degree_in(var) > 0:
            raise ValueError("variable is in use")
        out = {}
        for e, c in self.terms.items():
            out[tuple(x for i, x in enumerate(e) if i != var)] = c
        return MPoly(self.nvars - 1, out)

    def insert_vars(self, nvars: int, mapping: list[int]) -> MPoly:
        """Reinterpret in a larger ring; mapping[i] is the new index of old var i."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                ne[mapping[i]] = k
            out[tuple(ne)] = c
        return MPoly(nvars, out)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        items = sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))
        return {
            "nvars": self.nvars,
            "terms": [[list(e), f"{c.numerator}/{c.denominator}"] for e, c in items],
        }

    @staticmethod
    def from_json(data: dict) -> MPoly:
        return MPoly(data["nvars"], {tuple(e): Fraction(c) for e, c in data["terms"]})


def veronese_lift(point, maxdeg: int) -> list[Fraction]:
    """Values of all monomials of degree 1..maxdeg at the point, in the fixed
    graded-lexicographic order."""
    if maxdeg < 1:
        raise ValueError("lift degree must be at least 1")
    pt = [Fraction(x) for x in point]
    out = []
    for e in monomials_upto(len(pt), maxdeg):
        v = Fraction(1)
        for x, k in zip(pt, e):
            if k:
                v *= x ** k
        out.append(v)
    return out


# -- resultants -----------------------------------------------------------


def _bareiss_det(m: list[list[MPoly]], nvars: int) -> MPoly:
    """Fraction-free determinant; entries are polynomials, divisions exact."""
    n = len(m)
    if n == 0:
        return MPoly.const(nvars, 1)
    a = [row[:] for row in m]
    sign = 1
    prev = MPoly.const(nvars, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return MPoly.zero(nvars)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.div_exact(prev)
            a[i][k] = MPoly.zero(nvars)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(p: MPoly, q: MPoly, var: int) -> MPoly:
    """Sylvester resultant eliminating x_var.

    The result lives in the same ring with x_var unused.  When exactly one
    input is constant in x_var the convention res(p, c) = c^deg(p) applies;
    both constant is an error.
    """
    if p.nvars != q.nvars:
        raise ValueError("variable count mismatch")
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    dp, dq = p.degree_in(var), q.degree_in(var)
    if dp == 0 and dq == 0:
        raise ValueError("both inputs constant in the eliminated variable")
    if dp == 0:
        return p.pow(dq)
    if dq == 0:
        return q.pow(dp)
    pc = p.as_upoly_in(var)
    qc = q.as_upoly_in(var)
    n = dp + dq
    zero = MPoly.zero(p.nvars)
    rows: list[list[MPoly]] = []
    for i in range(dq):
        row = [zero] * n
        for j, c in enumerate(reversed(pc)):
            row[i + j] = c
        rows.append(row)
    for i in range(dp):
        row = [zero] * n
        for j, c in enumerate(reversed(qc)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows, p.nvars)


def uresultant(p: UPoly, q: UPoly) -> Fraction:
    """Resultant of two univariate polynomials."""
    mp = MPoly(1, {(i,): c for i, c in enumerate(p) if c})
    mq = MPoly(1, {(i,): c for i, c in enumerate(q) if c})
    r = resultant(mp, mq, 0)
    return r.terms.get((0,), Fraction(0))


# -- multivariate gcd and squarefree parts ---------------------------------


def _to_recursive(p: MPoly, var: int) -> list[MPoly]:
    return [c for c in p.as_upoly_in(var)]


def mgcd(p: MPoly, q: MPoly) -> MPoly:
    """Gcd over Q[x_0..x_{n-1}] by primitive pseudo-remainder sequences.

    Fine for the small degrees used here; normalized to leading coefficient 1.
    """
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    if p.nvars != q.nvars:
        raise ValueError("variable count mismatch")
    used = [i for i in range(p.nvars) if p.degree_in(i) > 0 or q.degree_in(i) > 0]
    if not used:
        return MPoly.const(p.nvars, 1)
    var = used[-1]
    if len(used) == 1:
        # effectively univariate
        a, b = p, q
        while not b.is_zero():
            a, b = b, _prem(a, b, var)
        return a.normalized()
    a, b = p, q
    while not b.is_zero():
        r = _prem(a, b, var)
        a, b = b, _strip_content(r, var)
    g = _strip_content(a, var)
    # the content in the remaining variables divides both inputs' contents;
    # for our use (squarefree parts) the primitive part is what matters
    return g.normalized()


def _prem(a: MPoly, b: MPoly, var: int) -> MPoly:
    """Pseudo-remainder of a by b with respect to x_var."""
    da, db = a.degree_in(var), b.degree_in(var)
    if da < db:
        return a
    bc = b.as_upoly_in(var)
    lb = bc[-1]
    r = a
    while not r.is_zero() and r.degree_in(var) >= db:
        dr = r.degree_in(var)
        rc = r.as_upoly_in(var)
        lr = rc[-1]
        shift = MPoly(a.nvars, {tuple(db * (i == var) for i in range(a.nvars)): Fraction(1)})
        xk = MPoly(a.nvars, {tuple((dr - db) * (i == var) for i in range(a.nvars)): Fraction(1)})
        r = r * lb - b * lr * xk
        if not r.is_zero() and r.degree_in(var) == dr:
            # leading terms must cancel; numerical safety net
            raise AssertionError("pseudo-remainder failed to reduce degree")
    return r


def _strip_content(p: MPoly, var: int) -> MPoly:
    """Divide out the gcd of the x_var-coefficients (content in the rest)."""
    if p.is_zero():
        return p
    coeffs = [c for c in p.as_upoly_in(var) if not c.is_zero()]
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.degree() == 0:
            break
        g = mgcd(g, c)
    if g.degree() <= 0:
        return p.normalized()
    return p.div_exact(g).normalized()


def squarefree_part(p: MPoly) -> MPoly:
    """p with repeated factors collapsed, up to a constant."""
    if p.is_zero() or p.degree() <= 1:
        return p.normalized() if not p.is_zero() else p
    g = p
    for i in range(p.nvars):
        if p.degree_in(i) > 0:
            g = mgcd(g, p.deriv(i))
            if g.degree() <= 0:
                return p.normalized()
    if g.degree() <= 0:
        return p.normalized()
    return p.div_exact(g.scale(1 / g.lead()[1])).normalized()
