"""Isotypic decomposition of S_2(Gamma_0(N)) and the Atkin-Lehner
eigenspace calculus on old-form divisor lattices.

The space of weight-2 cusp forms of level N splits into blocks V_f, one
per Galois orbit f of newforms of level M dividing N.  The block V_f has a
basis indexed by (embedding of the Hecke field) x (divisor d of N/M), so

    dim V_f = [E_f : Q] * prod_{q | N/M} (v_q(N/M) + 1),

and the number of divisor slots, tau(N/M), is the multiplicity of the
associated abelian variety A_f in J_0(N).  Summing dim V_f over all blocks
gives the genus of X_0(N).

For a prime p | N the full-p-part Atkin-Lehner involution w_{p^{v_p(N)}}
acts on the divisor index of V_f prime-locally: it sends the p-exponent a
of d to v_p(N/M) - a and leaves the other prime exponents alone.  On the
p-exponent chain 0..m (m = v_p(N/M)) this is the order-reversing signed
permutation; its trace is 0 for odd m and eps_p for even m, where the
fixed middle vector carries the form's own eigenvalue eps_p (the recorded
Fricke sign when p | M, and +1 when p does not divide M, since then the
involution is pure relabelling).  When m = 0 the involution acts on the
whole block by the scalar eps_p.  Traces therefore factor over primes, and
an involution attached to a set of primes (w_Q for Q the product of the
full p-parts) has trace

    hecke_degree * prod_{p in the set} local(p)
                 * prod_{q | N/M not in the set} (v_q(N/M) + 1).

Joint eigenspace dimensions for a subgroup generated by commuting
involutions are recovered from traces by the usual character sum
   dim_chi = 2^{-k} * sum_{subsets T} chi(T) * trace(w_T),
which must come out a nonnegative integer divisible by the Hecke degree;
anything else indicates corrupted data and raises immediately.

The dimension of the all-(+1) eigenspace is the genus of the corresponding
Atkin-Lehner quotient curve, since the invariant cusp forms are exactly
the ones descending to holomorphic differentials downstairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .arith import count_divisors, factorize, prod
from .errors import DataError, MissingSignError
from .newforms import Newform, NewformSet

#: An Atkin-Lehner involution, encoded by the set of primes whose full
#: parts make up Q.  w_9 at level 315 is frozenset({3}); w_35 is
#: frozenset({5, 7}).
Involution = frozenset

Generators = Sequence[Iterable[int] | int]


@dataclass(frozen=True)
class IsotypicComponent:
    """The block of S_2(Gamma_0(ambient_level)) attached to one newform
    orbit, together with its old-form divisor lattice."""

    form: Newform
    ambient_level: int
    lattice_exponents: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.ambient_level % self.form.level != 0:
            raise DataError(
                f"{self.form.label}: level does not divide ambient "
                f"{self.ambient_level}"
            )
        object.__setattr__(
            self, "lattice_exponents", tuple(sorted(self.lattice_exponents))
        )

    @property
    def exponent(self) -> dict[int, int]:
        return dict(self.lattice_exponents)

    @property
    def old_multiplicity(self) -> int:
        """tau(N/M): number of divisor slots, = multiplicity of A_f."""
        return prod(m + 1 for _, m in self.lattice_exponents)

    @property
    def dim_v(self) -> int:
        return self.form.hecke_degree * self.old_multiplicity


def old_multiplicity(n: int, m: int) -> int:
    """Multiplicity tau(n/m) of a level-m orbit inside level n."""
    if m < 1 or n % m != 0:
        raise DataError(f"{m} does not divide {n}")
    return count_divisors(n // m)


def decompose(n: int, forms: NewformSet) -> list[IsotypicComponent]:
    """All isotypic components of S_2(Gamma_0(n)), by (level, label).

    Requires ``forms`` to be complete for ``n``; the genus of X_0(n) is
    the sum of the component dimensions.
    """
    forms.require_complete(n)
    comps = []
    for f in forms.forms_of_level_dividing(n):
        exponents = tuple(factorize(n // f.level).items())
        comps.append(
            IsotypicComponent(form=f, ambient_level=n, lattice_exponents=exponents)
        )
    return comps


def _normalize_primes(element: Iterable[int] | int) -> frozenset[int]:
    if isinstance(element, int):
        return frozenset({element})
    return frozenset(element)


def _local_sign(comp: IsotypicComponent, p: int) -> int:
    """eps_p for the block: the recorded Fricke sign when p divides the
    form level, +1 otherwise.  Raises when a needed sign is not on record."""
    if comp.form.level % p == 0:
        s = comp.form.fricke_sign(p)
        if s is None:
            raise MissingSignError(
                f"Atkin-Lehner sign of {comp.form.label} at {p} is needed "
                "but not on record"
            )
        return s
    return 1


def al_trace(comp: IsotypicComponent, element: Iterable[int] | int) -> int:
    """Trace on the block of the involution attached to a set of primes.

    The empty set is the identity and returns dim V.  Every prime must
    divide the ambient level; a prime p with v_p(N/M) = 0 or with
    v_p(N/M) even contributes the form's eigenvalue eps_p, which must then
    be on record.
    """
    primes = _normalize_primes(element)
    exponent = comp.exponent
    for p in primes:
        if comp.ambient_level % p != 0:
            raise DataError(
                f"prime {p} does not divide the ambient level "
                f"{comp.ambient_level}"
            )
    # Validate sign availability up front so a zero factor cannot mask
    # missing data.
    locals_: dict[int, int] = {}
    for p in primes:
        m = exponent.get(p, 0)
        if m % 2 == 1:
            locals_[p] = 0
        else:
            locals_[p] = _local_sign(comp, p)
    trace = comp.form.hecke_degree
    for p in primes:
        trace *= locals_[p]
    for q, m in exponent.items():
        if q not in primes:
            trace *= m + 1
    return trace


def _normalize_subgroup(
    comp: IsotypicComponent, generators: Generators
) -> tuple[frozenset[int], ...]:
    gens = tuple(_normalize_primes(g) for g in generators)
    seen: set[int] = set()
    for g in gens:
        if not g:
            raise DataError("empty involution generator")
        if seen & g:
            raise DataError(
                "involution generators must involve pairwise distinct primes"
            )
        seen |= g
        for p in g:
            if comp.ambient_level % p != 0:
                raise DataError(
                    f"prime {p} does not divide the ambient level "
                    f"{comp.ambient_level}"
                )
    return gens


def eigenspace_dim(
    comp: IsotypicComponent,
    generators: Generators,
    character: Sequence[int] | None = None,
) -> int:
    """Dimension of the joint eigenspace of the involution subgroup
    generated by ``generators`` on which generator i acts by
    ``character[i]``.

    ``character`` defaults to all +1.  The result of the character sum is
    checked to be a nonnegative integer divisible by the Hecke degree;
    a violation means inconsistent input data and is a hard failure.
    """
    gens = _normalize_subgroup(comp, generators)
    if character is None:
        character = (1,) * len(gens)
    if len(character) != len(gens):
        raise DataError("character length does not match generator count")
    if any(c not in (1, -1) for c in character):
        raise DataError("character values must be +-1")

    total = 0
    for k in range(len(gens) + 1):
        for subset in combinations(range(len(gens)), k):
            sign = prod(character[i] for i in subset)
            element = frozenset().union(*(gens[i] for i in subset)) if subset else frozenset()
            total += sign * al_trace(comp, element)
    dim = Fraction(total, 2 ** len(gens))
    if dim.denominator != 1 or dim < 0 or dim % comp.form.hecke_degree != 0:
        raise DataError(
            f"character sum for {comp.form.label} at level "
            f"{comp.ambient_level} gave non-integral or negative eigenspace "
            f"dimension {dim}; data is inconsistent"
        )
    return int(dim)


def genus_x0(n: int, forms: NewformSet) -> int:
    """Genus of X_0(n): total dimension of S_2(Gamma_0(n))."""
    return sum(c.dim_v for c in decompose(n, forms))


def genus_al_quotient(n: int, forms: NewformSet, generators: Generators) -> int:
    """Genus of the quotient of X_0(n) by the subgroup generated by the
    given Atkin-Lehner involutions: dimension of the all-(+1) eigenspace."""
    return sum(
        eigenspace_dim(c, generators) for c in decompose(n, forms)
    )
