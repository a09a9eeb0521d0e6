"""Curve-spec grammar and resolution to computation recipes.

Grammar (the notation of the modularity literature):

    base      := "X0(" N ")" | tags | "ns7"
    tags      := tag ("," tag)*          e.g. "b3,b5,b7", "s3,b5,e7"
    tag       := "b"P | "s"P | "ns"P | "e7"
    spec      := base [ "/" quotient ]
    quotient  := "w"Q | "<" "w"Q ("," "w"Q)* ">"

"X0(N)" is the all-Borel curve of level N; a bare all-Borel tag list is
the same thing ("b3,b5,b7" == "X0(105)").  "ns7" alone abbreviates
"b3,b5,ns7".  In a quotient, Q must be a product of full prime parts of
the ambient level ("w9" and "w35" at level 315, "w49" at level 735).

Resolution produces one of:
  * an X_0(N) model (genus/Jacobian from the fixtures, quotients by any
    full-prime-part involutions);
  * the split-Cartan-at-3 curve X(s3,b5,b7), realized as X_0(315)/w9,
    with the optional further quotient by w35;
  * the non-split-Cartan-at-7 curve X(b3,b5,ns7), realized through the
    Chen isogeny relation, with optional quotients by w3 / w5;
  * an e7 curve, for which only the index and curated genus are available.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Optional

from .arith import factorize, prod
from .decomposition import genus_al_quotient, genus_x0
from .errors import DataError
from .jacobians import (
    JacobianDecomposition,
    chen_ns7_decomposition,
    jacobian_al_quotient,
    jacobian_x0,
    total_dimension,
)
from .levels import LevelStructure, SubgroupKind
from .newforms import NewformSet

_TAG_RE = re.compile(r"^(b|s|ns|e)(\d+)$")
_X0_RE = re.compile(r"^X0\((\d+)\)$", re.IGNORECASE)
_W_RE = re.compile(r"^w(\d+)$")

_KIND_BY_TAG = {
    "b": SubgroupKind.BOREL,
    "s": SubgroupKind.SPLIT_CARTAN_NORMALIZER,
    "ns": SubgroupKind.NONSPLIT_CARTAN_NORMALIZER,
    "e": SubgroupKind.E7,
}

#: Genera of the e7 curves; established in the literature (Box), not
#: recomputable from the bundled fixtures.
CURATED_E7_GENUS = {
    "X(b3,b5,e7)": 73,
    "X(s3,b5,e7)": 153,
}


class SpecParseError(DataError):
    """Curve spec syntax error; carries the offending position."""

    def __init__(self, spec: str, pos: int, message: str) -> None:
        super().__init__(f"cannot parse {spec!r} at position {pos}: {message}")
        self.pos = pos


@dataclass(frozen=True)
class ParsedSpec:
    """``x0_level`` is set for any curve that IS some X_0(N); ``structure``
    is set whenever the curve is cut out by per-prime local structures
    (which excludes X0(N) with a square factor)."""

    structure: Optional[LevelStructure]
    x0_level: Optional[int]
    quotient: tuple[int, ...]  # the wQ values, in input order
    text: str


def parse_curve_spec(spec: str) -> ParsedSpec:
    text = spec.strip()
    base, sep, quot = text.partition("/")
    structure, x0_level = _parse_base(text, base.strip())
    quotient = _parse_quotient(text, quot.strip(), offset=len(base) + 1) if sep else ()
    return ParsedSpec(
        structure=structure, x0_level=x0_level, quotient=quotient, text=text
    )


def _parse_base(
    spec: str, base: str
) -> tuple[Optional[LevelStructure], Optional[int]]:
    if not base:
        raise SpecParseError(spec, 0, "empty curve spec")
    m = _X0_RE.match(base)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise SpecParseError(spec, 3, "level must be positive")
        if _squarefree(n):
            structure = LevelStructure({p: SubgroupKind.BOREL for p in factorize(n)})
            return structure, n
        return None, n
    if base == "ns7":
        return (
            LevelStructure(
                {
                    3: SubgroupKind.BOREL,
                    5: SubgroupKind.BOREL,
                    7: SubgroupKind.NONSPLIT_CARTAN_NORMALIZER,
                }
            ),
            None,
        )
    at: dict[int, SubgroupKind] = {}
    pos = 0
    for part in base.split(","):
        piece = part.strip()
        m = _TAG_RE.match(piece)
        if not m:
            raise SpecParseError(spec, pos, f"bad level tag {piece!r}")
        kind = _KIND_BY_TAG[m.group(1)]
        p = int(m.group(2))
        if p in at:
            raise SpecParseError(spec, pos, f"duplicate prime {p}")
        try:
            if kind is SubgroupKind.E7 and p != 7:
                raise ValueError("e7 level structure is only valid at p = 7")
            at[p] = kind
        except ValueError as exc:
            raise SpecParseError(spec, pos, str(exc)) from exc
        pos += len(part) + 1
    try:
        structure = LevelStructure(at)
    except ValueError as exc:
        raise SpecParseError(spec, 0, str(exc)) from exc
    x0_level = None
    if set(at.values()) <= {SubgroupKind.BOREL, SubgroupKind.FULL}:
        x0_level = prod(p for p, k in at.items() if k is SubgroupKind.BOREL)
    return structure, x0_level


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def _parse_quotient(spec: str, quot: str, offset: int) -> tuple[int, ...]:
    if not quot:
        raise SpecParseError(spec, offset, "empty quotient")
    inner = quot
    if quot.startswith("<"):
        if not quot.endswith(">"):
            raise SpecParseError(spec, offset, "unbalanced '<' in quotient")
        inner = quot[1:-1]
    qs = []
    for part in inner.split(","):
        m = _W_RE.match(part.strip())
        if not m:
            raise SpecParseError(spec, offset, f"bad involution {part.strip()!r}")
        qs.append(int(m.group(1)))
    return tuple(qs)


@dataclass(frozen=True)
class CurveModel:
    """A resolved curve spec with a uniform query surface.

    ``kind`` is one of "x0", "s3", "ns7", "e7"; the fields below drive the
    corresponding computation recipe.
    """

    tag: str
    kind: str
    ambient: Optional[int] = None
    generators: tuple[frozenset, ...] = ()
    constraints: tuple[tuple[int, int], ...] = ()
    curated_genus: Optional[int] = None

    def genus(self, forms: NewformSet) -> int:
        if self.kind == "x0":
            if self.generators:
                return genus_al_quotient(self.ambient, forms, self.generators)
            return genus_x0(self.ambient, forms)
        if self.kind in ("s3", "ns7"):
            return total_dimension(self.jacobian(forms))
        raise DataError(
            f"{self.tag}: genus is a curated literature value "
            f"({self.curated_genus}), not computable from fixtures"
        )

    def jacobian(self, forms: NewformSet) -> JacobianDecomposition:
        if self.kind == "x0":
            if self.generators:
                return jacobian_al_quotient(
                    self.ambient, forms, self.generators, curve=self.tag
                )
            return jacobian_x0(self.ambient, forms)
        if self.kind == "s3":
            return jacobian_al_quotient(
                315, forms, self.generators, curve=self.tag
            )
        if self.kind == "ns7":
            return chen_ns7_decomposition(forms, dict(self.constraints))
        raise DataError(
            f"{self.tag}: no Jacobian decomposition route for e7 level "
            "structures"
        )


def resolve(parsed: ParsedSpec) -> CurveModel:
    """Map a parsed spec onto one of the supported computation recipes."""
    if parsed.x0_level is not None:
        n = parsed.x0_level
        gens = tuple(_involution(parsed, q, ambient=n) for q in parsed.quotient)
        return CurveModel(tag=_x0_tag(n, parsed.quotient), kind="x0", ambient=n,
                          generators=gens)

    at = parsed.structure.at

    if at == {
        3: SubgroupKind.SPLIT_CARTAN_NORMALIZER,
        5: SubgroupKind.BOREL,
        7: SubgroupKind.BOREL,
    }:
        # X(s3,b5,b7) == X0(315)/w9; extra quotients live over 315 too.
        gens = [frozenset({3})]
        for q in parsed.quotient:
            if q != 35:
                raise DataError(
                    "the only supported further quotient of X(s3,b5,b7) is w35"
                )
            gens.append(frozenset({5, 7}))
        tag = "X(s3,b5,b7)" + ("/w35" if parsed.quotient else "")
        return CurveModel(tag=tag, kind="s3", ambient=315, generators=tuple(gens))

    if at == {
        3: SubgroupKind.BOREL,
        5: SubgroupKind.BOREL,
        7: SubgroupKind.NONSPLIT_CARTAN_NORMALIZER,
    }:
        constraints = {}
        for q in parsed.quotient:
            if q not in (3, 5, 15):
                raise DataError(
                    "quotients of the ns7 curve are supported at w3, w5 "
                    "and <w3,w5> only"
                )
            for p in factorize(q):
                constraints[p] = 1
        tag = "ns7" + _ns7_suffix(constraints)
        return CurveModel(
            tag=tag, kind="ns7", constraints=tuple(sorted(constraints.items()))
        )

    if SubgroupKind.E7 in at.values() and not parsed.quotient:
        tag = _e7_tag(at)
        if tag in CURATED_E7_GENUS:
            return CurveModel(tag=tag, kind="e7",
                              curated_genus=CURATED_E7_GENUS[tag])

    raise DataError(
        f"no computation route for curve spec {parsed.text!r}; supported: "
        "X0(N) and its Atkin-Lehner quotients, X(s3,b5,b7)[/w35], "
        "ns7[/w3|/w5|/<w3,w5>], and the two e7 curves (index/curated genus "
        "only)"
    )


def _involution(parsed: ParsedSpec, q: int, ambient: int) -> frozenset:
    fac_q = factorize(q)
    fac_n = factorize(ambient)
    for p, e in fac_q.items():
        if fac_n.get(p, 0) != e:
            raise DataError(
                f"w{q} is not a product of full prime parts of {ambient}"
            )
    return frozenset(fac_q)


def _x0_tag(n: int, quotient: tuple[int, ...]) -> str:
    base = f"X0({n})"
    if not quotient:
        return base
    if len(quotient) == 1:
        return f"{base}/w{quotient[0]}"
    return base + "/<" + ",".join(f"w{q}" for q in quotient) + ">"


def _ns7_suffix(constraints: Mapping[int, int]) -> str:
    ps = sorted(constraints)
    if not ps:
        return ""
    if len(ps) == 1:
        return f"/w{ps[0]}"
    return "/<" + ",".join(f"w{p}" for p in ps) + ">"


def _e7_tag(at: Mapping[int, SubgroupKind]) -> str:
    names = {
        SubgroupKind.BOREL: "b",
        SubgroupKind.SPLIT_CARTAN_NORMALIZER: "s",
        SubgroupKind.NONSPLIT_CARTAN_NORMALIZER: "ns",
        SubgroupKind.E7: "e",
    }
    inner = ",".join(f"{names[k]}{p}" for p, k in sorted(at.items()))
    return f"X({inner})"
