"""Exact arithmetic kernel: rationals, polynomials, root isolation, resultants.

Rationals are stdlib Fractions (arbitrary precision, eagerly normalized,
positive denominator) and serialize as "num/den" strings.  All values here
are immutable after construction in the semantic sense: algebraic numbers
narrow their internal isolating interval during comparisons, but the number
they denote never changes.
"""

from __future__ import annotations

from fractions import Fraction

from .algnum import (
    AlgebraicNumber,
    Coord,
    apply_upoly,
    coord_cmp,
    coord_eq,
    coord_from_json,
    coord_normalize,
    coord_to_json,
    isolate_roots,
)
from .linalg import EchelonBasis, nullspace, rank, rref, solve, solve_full
from .mpoly import (
    MPoly,
    grlex_key,
    mgcd,
    monomials_upto,
    resultant,
    squarefree_part,
    uresultant,
    veronese_lift,
)
from .upoly import (
    UPoly,
    cauchy_bound,
    isolate_real_roots,
    real_root_count,
    sturm_chain,
    sturm_root_count,
    uadd,
    uclear_denominators,
    uconst,
    uderiv,
    udeg,
    udiv_exact,
    udivmod,
    ueval,
    ugcd,
    umonic,
    umul,
    uneg,
    upoly,
    upoly_from_json,
    upoly_to_json,
    upow,
    uscale,
    usquarefree,
    usub,
    utrim,
    uvar,
    uzero,
)


def rational_to_json(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def rational_from_json(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in rational {s!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def compose_with_curve(f: MPoly, components: list[UPoly]) -> UPoly:
    """Restriction t -> f(gamma(t)) of f along a parametrized curve."""
    if f.nvars != len(components):
        raise ValueError("dimension mismatch")
    return f.compose_upolys(components)
