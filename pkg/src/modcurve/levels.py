"""Group orders and indices for mixed level structures.

A level structure assigns to each prime p of the level a standard subgroup
of GL2(F_p): the full group, a Borel subgroup, the normalizer of a split or
non-split Cartan subgroup, or -- at p = 7 only -- the index-2 subgroup of
the non-split Cartan normalizer of order 48 conventionally tagged "e7".
The modular curve X(...) attached to such a structure corresponds to the
preimage subgroup of GL2(Zhat); because every supported subgroup contains
-I, the index of that subgroup agrees with the index of the associated
congruence subgroup in PSL2(Z), which is the quantity spectral gonality
bounds consume.

The level subgroup is a product of local conditions, so its index is the
product of the local indices [GL2(F_p) : H_p].  All arithmetic is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .arith import is_prime


class SubgroupKind(enum.Enum):
    """Isomorphism-type tags for the supported local subgroups."""

    FULL = "full"
    BOREL = "borel"
    SPLIT_CARTAN_NORMALIZER = "split-cartan-normalizer"
    NONSPLIT_CARTAN_NORMALIZER = "nonsplit-cartan-normalizer"
    E7 = "e7"

    @property
    def contains_minus_identity(self) -> bool:
        # True for every supported kind; this is what lets psl2_index
        # report a single number for both GL2(Zhat) and PSL2(Z).
        return True


#: Order of GL2(F_p): p(p-1)^2(p+1).
def _gl2_order(p: int) -> int:
    return p * (p - 1) ** 2 * (p + 1)


def group_order(p: int, kind: SubgroupKind) -> int:
    """Number of elements of the local subgroup of kind ``kind`` in GL2(F_p).

    The e7 subgroup exists only inside GL2(F_7); requesting it at any other
    prime is an error.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if kind is SubgroupKind.E7:
        if p != 7:
            raise ValueError("the order-48 subgroup e7 only exists at p = 7")
        return 48
    if kind is SubgroupKind.FULL:
        return _gl2_order(p)
    if kind is SubgroupKind.BOREL:
        return p * (p - 1) ** 2
    if kind is SubgroupKind.SPLIT_CARTAN_NORMALIZER:
        return 2 * (p - 1) ** 2
    if kind is SubgroupKind.NONSPLIT_CARTAN_NORMALIZER:
        return 2 * (p**2 - 1)
    raise ValueError(f"unknown subgroup kind {kind!r}")


def local_index(p: int, kind: SubgroupKind) -> int:
    """Index [GL2(F_p) : H] of the local subgroup, as an exact integer."""
    full = group_order(p, SubgroupKind.FULL)
    h = group_order(p, kind)
    q, r = divmod(full, h)
    if r:
        raise ArithmeticError(
            f"|GL2(F_{p})| = {full} is not divisible by |H| = {h}; "
            "the order table is inconsistent"
        )
    return q


@dataclass(frozen=True)
class LevelStructure:
    """Assignment of a local subgroup kind to each prime of the level.

    Primes not listed carry the full group and contribute index 1, so they
    may simply be omitted.
    """

    at: Mapping[int, SubgroupKind]

    def __post_init__(self) -> None:
        normalized = {}
        for p, kind in self.at.items():
            if not is_prime(p):
                raise ValueError(f"level structure key {p} is not prime")
            if kind is SubgroupKind.E7 and p != 7:
                raise ValueError("e7 level structure is only valid at p = 7")
            normalized[p] = kind
        object.__setattr__(self, "at", dict(sorted(normalized.items())))

    @property
    def support(self) -> tuple[int, ...]:
        """Primes at which the structure is not the full group."""
        return tuple(
            p for p, kind in self.at.items() if kind is not SubgroupKind.FULL
        )


def psl2_index(ls: LevelStructure) -> int:
    """Index in PSL2(Z) of the congruence subgroup cut out by ``ls``.

    Computed as the product of the local indices; equals the index in
    GL2(Zhat) because every supported kind contains -I.
    """
    index = 1
    for p, kind in ls.at.items():
        index *= local_index(p, kind)
    return index
