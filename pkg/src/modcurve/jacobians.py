"""Up-to-isogeny Jacobian decompositions and Mordell-Weil rank accounting.

A decomposition is a multiset of (newform orbit, multiplicity) pairs: the
Jacobian of the curve is isogenous over Q to the product of the associated
abelian varieties A_f with those multiplicities, so its dimension is
sum(hecke_degree * multiplicity) and -- for orbits of analytic rank at most
1, where the rank part of the Birch--Swinnerton-Dyer conjecture is a
theorem of Gross--Zagier / Kolyvagin--Logachev -- its Mordell-Weil rank is
sum(analytic_rank * hecke_degree * multiplicity).  Rank 2 or higher is
refused rather than converted: the conversion would be unjustified.

Besides the X_0(N) curves and their Atkin-Lehner quotients, this module
implements the decomposition of the Jacobian of X(b3,b5,ns7): the curve
with Borel structure at 3 and 5 and non-split-Cartan-normalizer structure
at 7.  Chen / de Smit--Edixhoven proved an isogeny

    Jac(X(b3,b5,ns7)) x J_0(105)  ~  Jac(X(b3,b5,s7)) x J_0(15)

equivariant for Hecke operators away from 7 and for the Atkin-Lehner
involutions w_3 and w_5 (and X(b3,b5,s7) is the w_49 quotient of
X_0(735)).  Per newform orbit and per character of <w_3, w_5> this gives

    mult_ns7 = mult_s7 + mult_{X_0(15)} - mult_{X_0(105)},

which is how the ns7 multiplicities, and those of the w_3 / w_5 /
<w_3, w_5> quotients of the ns7 curve, are computed here.  No w_49- or
Hecke-at-7-equivariance is assumed: the w_49 = +1 slice is always taken
first and the extra characters are imposed on all three terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Optional

from .decomposition import (
    IsotypicComponent,
    Generators,
    decompose,
    eigenspace_dim,
)
from .errors import DataError
from .newforms import Newform, NewformSet

NS7_AMBIENT = 735
#: Primes whose involutions the Chen isogeny is equivariant for.
NS7_EXTRA_PRIMES = (3, 5)


@dataclass(frozen=True)
class JacobianFactor:
    form: Newform
    multiplicity: int

    def __post_init__(self) -> None:
        if self.multiplicity < 0:
            raise DataError(
                f"negative multiplicity for {self.form.label}"
            )

    @property
    def dimension(self) -> int:
        return self.form.hecke_degree * self.multiplicity


@dataclass(frozen=True)
class JacobianDecomposition:
    """Factors with multiplicity >= 1, unique by label, sorted by
    (level, label).  Absent labels have multiplicity 0."""

    curve: str
    factors: tuple[JacobianFactor, ...]

    def __post_init__(self) -> None:
        kept = tuple(
            sorted(
                (f for f in self.factors if f.multiplicity > 0),
                key=lambda f: (f.form.level, f.form.label),
            )
        )
        labels = [f.form.label for f in kept]
        if len(set(labels)) != len(labels):
            raise DataError(f"duplicate factor labels in {self.curve}")
        object.__setattr__(self, "factors", kept)

    def multiplicity(self, label: str) -> int:
        for f in self.factors:
            if f.form.label == label:
                return f.multiplicity
        return 0

    @property
    def dimension(self) -> int:
        return sum(f.dimension for f in self.factors)


def total_dimension(dec: JacobianDecomposition) -> int:
    """Dimension of the abelian variety: sum of hecke_degree * mult."""
    return dec.dimension


def jacobian_x0(n: int, forms: NewformSet) -> JacobianDecomposition:
    """Decomposition of J_0(n); factor multiplicities are tau(n/M)."""
    factors = tuple(
        JacobianFactor(form=c.form, multiplicity=c.old_multiplicity)
        for c in decompose(n, forms)
    )
    return JacobianDecomposition(curve=f"X0({n})", factors=factors)


def jacobian_al_quotient(
    n: int, forms: NewformSet, generators: Generators, curve: str | None = None
) -> JacobianDecomposition:
    """Decomposition of the Jacobian of an Atkin-Lehner quotient of X_0(n).

    Each factor's multiplicity is the dimension of the invariant part of
    its block divided by the Hecke degree (the division is exact or the
    eigenspace computation itself fails).
    """
    factors = []
    for c in decompose(n, forms):
        dim = eigenspace_dim(c, generators)
        factors.append(
            JacobianFactor(form=c.form, multiplicity=dim // c.form.hecke_degree)
        )
    tag = curve if curve is not None else _quotient_tag(f"X0({n})", generators)
    return JacobianDecomposition(curve=tag, factors=tuple(factors))


def _quotient_tag(base: str, generators: Generators) -> str:
    from .decomposition import _normalize_primes
    from .arith import prod

    gens = [_normalize_primes(g) for g in generators]
    if not gens:
        return base
    names = [f"w{prod(sorted(g))}" for g in gens]
    if len(names) == 1:
        return f"{base}/{names[0]}"
    return f"{base}/<{','.join(names)}>"


def _slice_multiplicity(
    comp: IsotypicComponent,
    constraints: Mapping[int, int],
    fixed: tuple[tuple[frozenset, int], ...] = (),
) -> int:
    """Multiplicity of A_f in the joint eigenspace cut by ``fixed``
    generators (prime set, sign) plus single-prime ``constraints``."""
    gens = [g for g, _ in fixed] + [frozenset({p}) for p in sorted(constraints)]
    signs = [s for _, s in fixed] + [constraints[p] for p in sorted(constraints)]
    dim = eigenspace_dim(comp, gens, signs)
    return dim // comp.form.hecke_degree


def _x0_slice_multiplicity(
    n: int, form: Newform, constraints: Mapping[int, int], forms: NewformSet
) -> int:
    if n % form.level != 0:
        return 0
    for c in decompose(n, forms):
        if c.form.label == form.label:
            return _slice_multiplicity(c, constraints)
    raise AssertionError("unreachable: decomposition missed a dividing level")


def chen_ns7_decomposition(
    forms: NewformSet,
    constraints: Optional[Mapping[int, int]] = None,
) -> JacobianDecomposition:
    """Decomposition of Jac(X(b3,b5,ns7)), optionally sliced by eigenvalue
    constraints at w_3 and/or w_5 (the quotient curves ns7/w3, ns7/w5,
    ns7/<w3,w5> are the all-(+1) slices).

    ``constraints`` maps a prime in {3, 5} to a required sign.  The s7 term
    is the w_49 = +1 slice of level 735; a block killed by that slice is
    skipped outright (its joint eigenspaces are subspaces of zero), which
    also avoids demanding Atkin-Lehner signs that cannot matter.
    """
    constraints = dict(constraints or {})
    for p, s in constraints.items():
        if p not in NS7_EXTRA_PRIMES:
            raise DataError(
                "the ns7 decomposition only supports eigenvalue constraints "
                f"at w_3 and w_5, not at {p}"
            )
        if s not in (1, -1):
            raise DataError(f"constraint sign at {p} must be +-1")

    forms.require_complete(NS7_AMBIENT)
    w49 = (frozenset({7}), 1)
    factors = []
    for comp in decompose(NS7_AMBIENT, forms):
        f = comp.form
        # w_49 = +1 slice first; zero slice means zero in every character.
        if eigenspace_dim(comp, [frozenset({7})]) == 0:
            s7 = 0
        else:
            s7 = _slice_multiplicity(comp, constraints, fixed=(w49,))
        m15 = _x0_slice_multiplicity(15, f, constraints, forms)
        m105 = _x0_slice_multiplicity(105, f, constraints, forms)
        mult = s7 + m15 - m105
        if mult < 0:
            raise DataError(
                f"isogeny relation gave negative multiplicity {mult} for "
                f"{f.label}; fixture data is corrupted"
            )
        factors.append(JacobianFactor(form=f, multiplicity=mult))
    tag = "ns7" + _constraint_suffix(constraints)
    return JacobianDecomposition(curve=tag, factors=tuple(factors))


def _constraint_suffix(constraints: Mapping[int, int]) -> str:
    plus = sorted(p for p, s in constraints.items() if s == 1)
    minus = sorted(p for p, s in constraints.items() if s == -1)
    parts = [f"w{p}" for p in plus] + [f"w{p}=-1" for p in minus]
    if not parts:
        return ""
    if len(parts) == 1:
        return "/" + parts[0]
    return "/<" + ",".join(parts) + ">"


def mordell_weil_rank(dec: JacobianDecomposition) -> int:
    """Mordell-Weil rank over Q via analytic ranks.

    Only justified for analytic rank <= 1; a factor of higher rank raises
    instead of being summed.
    """
    rank = 0
    for f in dec.factors:
        r = f.form.require_analytic_rank()
        if r > 1:
            raise DataError(
                f"{f.form.label} has analytic rank {r}; rank conversion is "
                "only justified for analytic rank <= 1"
            )
        rank += r * f.form.hecke_degree * f.multiplicity
    return rank


class EllipticScreening(NamedTuple):
    all_rank_zero: bool
    witnesses: tuple[str, ...]


def elliptic_factors_all_rank_zero(dec: JacobianDecomposition) -> EllipticScreening:
    """Whether every elliptic factor (Hecke degree 1, multiplicity >= 1)
    has analytic rank 0; on failure the offending labels are returned."""
    witnesses = tuple(
        f.form.label
        for f in dec.factors
        if f.form.hecke_degree == 1 and f.form.require_analytic_rank() != 0
    )
    return EllipticScreening(all_rank_zero=not witnesses, witnesses=witnesses)
