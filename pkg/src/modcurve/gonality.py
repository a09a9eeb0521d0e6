"""Exact gonality lower bounds and genus/degree certificates.

Two independent sources of non-existence results for maps to P^1 are
implemented here.

* Abramovich's spectral bound: for a congruence subgroup Gamma of index n
  in PSL2(Z), the gonality of the modular curve X_Gamma is at least
  ``lambda_1 / 24 * n`` where lambda_1 is the smallest positive Laplacian
  eigenvalue.  Feeding in a proved lower bound for lambda_1 (Kim--Sarnak's
  975/4096, or 21/100 of Luo--Rudnick--Sarnak, or the conjectural Selberg
  value 1/4) turns this into an unconditional rational lower bound.  Since
  gonality is an integer, the ceiling of the bound is also a lower bound.

* The Castelnuovo--Severi inequality: whenever a curve C carries two
  independent covers f, g, its genus satisfies
  ``g(C) <= g(C_2) deg f + g(C_3) deg g + (deg f - 1)(deg g - 1)``.
  Specialized to a degree-2 quotient pi: C -> C' and a candidate map
  f: C -> P^1 of degree d not factoring through pi, it forces
  ``g(C) <= 2 g(C') + d - 1``; reading the inequality backwards gives the
  smallest degree compatible with a non-factoring map.

All values are exact rationals (``fractions.Fraction``); floating point is
deliberately absent from this module, since several of the bounds sit
within 1/256 of an integer and the integer side of the comparison is what
the finiteness arguments consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class SpectralBound:
    """A named lower bound for the smallest positive Laplacian eigenvalue."""

    name: str
    value: Fraction

    def __post_init__(self) -> None:
        if not 0 < self.value:
            raise ValueError("a spectral lower bound must be positive")


#: Luo--Rudnick--Sarnak bound, the constant in Abramovich's original paper.
LUO_RUDNICK_SARNAK = SpectralBound("lrs", Fraction(21, 100))
#: Kim--Sarnak bound, currently the best proved value.
KIM_SARNAK = SpectralBound("kim-sarnak", Fraction(975, 4096))
#: Selberg's conjecture; bounds computed with it are "expected", not proved.
SELBERG = SpectralBound("selberg", Fraction(1, 4))

NAMED_BOUNDS = {b.name: b for b in (LUO_RUDNICK_SARNAK, KIM_SARNAK, SELBERG)}


def custom_bound(value: Fraction) -> SpectralBound:
    return SpectralBound("custom", Fraction(value))


def gonality_lower_bound(index: int, bound: SpectralBound) -> Fraction:
    """Exact rational gonality lower bound ``lambda_1 * index / 24``."""
    if index < 1:
        raise ValueError("index must be a positive integer")
    return bound.value * index / 24


def integer_gonality_bound(index: int, bound: SpectralBound) -> int:
    """Smallest integer the gonality can be, i.e. the ceiling of the bound."""
    return math.ceil(gonality_lower_bound(index, bound))


def castelnuovo_severi_max_genus(
    g2: int, g3: int, deg_f: int, deg_g: int
) -> int:
    """Largest genus allowed by Castelnuovo--Severi for independent covers.

    ``g2``/``g3`` are the genera of the two targets, ``deg_f``/``deg_g``
    the degrees of the covers.
    """
    if deg_f < 1 or deg_g < 1:
        raise ValueError("cover degrees must be positive")
    if g2 < 0 or g3 < 0:
        raise ValueError("genera must be nonnegative")
    return g2 * deg_f + g3 * deg_g + (deg_f - 1) * (deg_g - 1)


def min_nonfactoring_degree(g_curve: int, g_quotient: int) -> int:
    """Smallest d compatible with a degree-d map to P^1 not factoring
    through a given degree-2 quotient of genus ``g_quotient``.

    Any smaller degree contradicts ``g <= 2 g' + d - 1``.
    """
    return g_curve - 2 * g_quotient + 1


def no_degree_d_map_certificate(g_curve: int, g_quotient: int, d: int) -> bool:
    """One-sided certificate that no degree-d map to P^1 exists over C.

    The caller asserts that the curve admits a degree-2 quotient of genus
    ``g_quotient``.  An odd-degree map cannot factor through a double
    cover, so for odd d below ``min_nonfactoring_degree`` the
    Castelnuovo--Severi inequality rules the map out entirely.  For even d
    (where the map might factor) or for d at or above the threshold the
    certificate returns False, meaning "inconclusive" -- it never asserts
    that a map exists.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    return d % 2 == 1 and d < min_nonfactoring_degree(g_curve, g_quotient)


def riemann_hurwitz_double_cover_genus(g_base: int, num_branch: int) -> int:
    """Genus of a double cover of a genus-``g_base`` curve branched at
    ``num_branch`` points.

    Riemann--Hurwitz: 2g - 2 = 2(2 g_base - 2) + num_branch, which forces
    the number of branch points to be even.
    """
    if g_base < 0:
        raise ValueError("base genus must be nonnegative")
    if num_branch < 0 or num_branch % 2:
        raise ValueError("branch point count must be a nonnegative even integer")
    g = (2 * (2 * g_base - 2) + num_branch) // 2 + 1
    if g < 0:
        raise ValueError(
            f"no double cover with base genus {g_base} and {num_branch} branch points"
        )
    return g


def abramovich_frey_finite(integer_gonality_bound: int, d: int) -> bool:
    """Whether gonality > 2d, the hypothesis under which a curve has only
    finitely many points of degree d (Abramovich, Frey).

    Strict inequality is required; equality is inconclusive.
    """
    if integer_gonality_bound < 1 or d < 1:
        raise ValueError("arguments must be positive integers")
    return integer_gonality_bound > 2 * d


def decimal_str(q: Fraction, places: int = 4) -> str:
    """Render an exact rational in fixed-point decimal, rounding half-up.

    Presentation helper only; nothing downstream consumes the string.
    """
    if places < 0:
        raise ValueError("places must be nonnegative")
    sign = "-" if q < 0 else ""
    scaled = abs(q) * 10**places
    # round half away from zero
    units = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    digits = str(units).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"
