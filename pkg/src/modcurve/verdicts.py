"""Finiteness verdicts for low-degree points on the bundled modular curves.

Three sufficient criteria for "the set of degree-d points of C is finite"
are encoded as rules, each of which either fires with a fully populated
certificate or reports Inconclusive:

* AF (gonality): the gonality of C exceeds 2d.  Certified here through
  the spectral lower bound of ``modcurve.gonality``.
* T1 (finite Mordell-Weil): Jac(C)(Q) is finite -- every isogeny factor
  has Mordell-Weil rank 0 -- and no degree-d map C -> P^1 exists.
* T2 (large genus, degree 5 only): g(C) >= 11, every elliptic isogeny
  factor of Jac(C) has rank 0, and no degree-5 map C -> P^1 exists.  The
  genus threshold comes from Brill-Noether numerology: an abelian surface
  inside W_5 would force a linear system with r_2 >= 3, hence r_3 >= 6 and
  r_5 >= 15 >= deg/2, non-special by Clifford, so Riemann-Roch caps the
  genus at 25 - 15 = 10.

Finiteness also propagates down finite covers: if the degree-d points of a
quotient are finite, so are those of any curve mapping onto it.

Certificates separate computed facts (genus, ranks, eigenspaces -- all
recomputed from fixtures on demand) from curated facts (known maps, the
non-hyperelliptic quotient model), and carry enough inputs that
``verify_report`` can re-run every predicate from the report alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional

from .errors import CertificateError, DataError, UnsupportedDegreeError
from .gonality import (
    KIM_SARNAK,
    SpectralBound,
    abramovich_frey_finite,
    gonality_lower_bound,
    integer_gonality_bound,
    min_nonfactoring_degree,
    no_degree_d_map_certificate,
)
from .jacobians import (
    JacobianDecomposition,
    chen_ns7_decomposition,
    elliptic_factors_all_rank_zero,
    jacobian_al_quotient,
    jacobian_x0,
    mordell_weil_rank,
    total_dimension,
)
from .decomposition import genus_al_quotient, genus_x0
from .levels import LevelStructure, SubgroupKind, psl2_index
from .newforms import NewformSet


class Rule(enum.Enum):
    GONALITY = "AF"
    RANK_ZERO = "T1"
    LARGE_GENUS = "T2"
    COVER = "CoverImplication"


class Result(enum.Enum):
    FINITE = "finite"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ThresholdTrace:
    """The Brill-Noether chain behind the genus threshold for degree 5."""

    degree: int
    r2: int
    r3: int
    r5: int
    divisor_degree: int
    genus_cap: int
    threshold: int

    def to_dict(self) -> dict[str, int]:
        return {
            "degree": self.degree,
            "r2": self.r2,
            "r3": self.r3,
            "r5": self.r5,
            "divisor_degree": self.divisor_degree,
            "genus_cap": self.genus_cap,
            "threshold": self.threshold,
        }


def brill_noether_genus_threshold(degree: int) -> ThresholdTrace:
    """Genus threshold above which the large-genus rule applies.

    Only degree 5 is supported: the chain r_2 = 3, r_3 = 2 r_2,
    r_5 = 2 r_3 + r_2 relies on convexity and additivity bounds that have
    no settled analogue for other degrees, so anything else is refused.
    """
    if degree != 5:
        raise UnsupportedDegreeError(
            f"genus threshold is only established for degree 5, not {degree}"
        )
    r2 = 3
    r3 = 2 * r2
    r5 = 2 * r3 + r2
    divisor_degree = 25
    # Clifford: r5 > deg/2 makes the class non-special, so Riemann-Roch
    # bounds the genus by deg - r5.
    assert 2 * r5 > divisor_degree
    genus_cap = divisor_degree - r5
    return ThresholdTrace(
        degree=degree,
        r2=r2,
        r3=r3,
        r5=r5,
        divisor_degree=divisor_degree,
        genus_cap=genus_cap,
        threshold=genus_cap + 1,
    )


@dataclass(frozen=True)
class CurveFacts:
    """Assembled inputs for the verdict rules on one curve.

    ``known_maps`` lists curated non-constant maps to P^1 as (degree,
    provenance) pairs; ``double_cover_quotient_genus`` is the genus of a
    known degree-2 Atkin-Lehner quotient, feeding the Castelnuovo-Severi
    certificate.
    """

    tag: str
    genus: Optional[int] = None
    jacobian: Optional[JacobianDecomposition] = None
    integer_gonality_lb: Optional[int] = None
    double_cover_quotient_genus: Optional[int] = None
    known_maps: tuple[tuple[int, str], ...] = ()
    gonality_certificate: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (
            self.genus is not None
            and self.jacobian is not None
            and self.genus != total_dimension(self.jacobian)
        ):
            raise DataError(
                f"{self.tag}: genus {self.genus} does not match Jacobian "
                f"dimension {total_dimension(self.jacobian)}"
            )


@dataclass(frozen=True)
class FinitenessVerdict:
    tag: str
    degree: int
    result: Result
    rule: Rule
    certificate: Mapping[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {
            "tag": self.tag,
            "degree": self.degree,
            "result": self.result.value,
            "rule": self.rule.value,
            "certificate": dict(self.certificate),
        }


def _no_map_certificate(facts: CurveFacts, degree: int) -> dict[str, Any]:
    known_degrees = sorted({d for d, _ in facts.known_maps})
    cert: dict[str, Any] = {
        "degree": degree,
        "known_map_degrees": known_degrees,
        "holds": False,
    }
    if degree in known_degrees:
        cert["reason"] = f"a degree-{degree} map to P^1 is on record"
        return cert
    if facts.genus is None or facts.double_cover_quotient_genus is None:
        cert["reason"] = "no double-cover quotient data to run Castelnuovo-Severi"
        return cert
    g, q = facts.genus, facts.double_cover_quotient_genus
    holds = no_degree_d_map_certificate(g, q, degree)
    cert.update(
        {
            "genus": g,
            "double_cover_quotient_genus": q,
            "min_nonfactoring_degree": min_nonfactoring_degree(g, q),
            "holds": holds,
        }
    )
    if not holds:
        cert["reason"] = (
            "Castelnuovo-Severi is inconclusive: the degree is even or not "
            "below the non-factoring threshold"
        )
    return cert


def _rank_breakdown(dec: JacobianDecomposition) -> list[dict[str, Any]]:
    return [
        {
            "label": f.form.label,
            "hecke_degree": f.form.hecke_degree,
            "analytic_rank": f.form.analytic_rank,
            "multiplicity": f.multiplicity,
        }
        for f in dec.factors
    ]


def rule_rank_zero(facts: CurveFacts, degree: int) -> FinitenessVerdict:
    """T1: finite Mordell-Weil group plus no degree-d map to P^1."""
    if facts.jacobian is None:
        raise DataError(f"{facts.tag}: no Jacobian decomposition supplied")
    rank = mordell_weil_rank(facts.jacobian)
    no_map = _no_map_certificate(facts, degree)
    if no_map["holds"] and degree in no_map["known_map_degrees"]:
        raise CertificateError(
            f"{facts.tag}: non-existence certificate contradicts a recorded "
            f"degree-{degree} map"
        )
    certificate = {
        "mordell_weil_rank": rank,
        "rank_breakdown": _rank_breakdown(facts.jacobian),
        "no_degree_map": no_map,
    }
    finite = rank == 0 and no_map["holds"]
    return FinitenessVerdict(
        tag=facts.tag,
        degree=degree,
        result=Result.FINITE if finite else Result.INCONCLUSIVE,
        rule=Rule.RANK_ZERO,
        certificate=certificate,
    )


def rule_large_genus(facts: CurveFacts, degree: int = 5) -> FinitenessVerdict:
    """T2: genus above the Brill-Noether threshold, elliptic factors all of
    rank 0, and no degree-5 map to P^1."""
    trace = brill_noether_genus_threshold(degree)
    if facts.genus is None or facts.jacobian is None:
        raise DataError(f"{facts.tag}: genus and Jacobian are both required")
    screening = elliptic_factors_all_rank_zero(facts.jacobian)
    no_map = _no_map_certificate(facts, degree)
    certificate = {
        "genus": facts.genus,
        "genus_threshold": trace.threshold,
        "threshold_chain": trace.to_dict(),
        "elliptic_witnesses": list(screening.witnesses),
        "no_degree_map": no_map,
    }
    finite = (
        facts.genus >= trace.threshold
        and screening.all_rank_zero
        and no_map["holds"]
    )
    return FinitenessVerdict(
        tag=facts.tag,
        degree=degree,
        result=Result.FINITE if finite else Result.INCONCLUSIVE,
        rule=Rule.LARGE_GENUS,
        certificate=certificate,
    )


def rule_gonality(facts: CurveFacts, degree: int) -> FinitenessVerdict:
    """AF: gonality strictly above twice the degree."""
    if facts.integer_gonality_lb is None:
        raise DataError(f"{facts.tag}: no gonality lower bound supplied")
    lb = facts.integer_gonality_lb
    finite = abramovich_frey_finite(lb, degree)
    certificate = {
        "integer_gonality_bound": lb,
        "required": 2 * degree,
        **dict(facts.gonality_certificate),
    }
    return FinitenessVerdict(
        tag=facts.tag,
        degree=degree,
        result=Result.FINITE if finite else Result.INCONCLUSIVE,
        rule=Rule.GONALITY,
        certificate=certificate,
    )


def propagate_over_cover(
    verdict: FinitenessVerdict, cover_tag: str, via: str
) -> FinitenessVerdict:
    """Lift a Finite verdict from a quotient to a curve covering it.

    Inconclusive verdicts do not propagate: the cover inherits an
    Inconclusive verdict whose certificate says why.
    """
    certificate = {"quotient": verdict.tag, "cover_map": via}
    if verdict.result is not Result.FINITE:
        certificate["reason"] = "quotient verdict is not Finite"
    return FinitenessVerdict(
        tag=cover_tag,
        degree=verdict.degree,
        result=verdict.result,
        rule=Rule.COVER,
        certificate=certificate,
    )


#: Curated inputs the verdict engine cannot compute: known maps and curve
#: models established in the literature.
CURATED_FACTS: tuple[dict[str, str], ...] = (
    {
        "fact": "X0(105)/w35 is a non-hyperelliptic curve of genus 3 "
        "(a smooth plane quartic); it admits no map to P^1 of degree <= 2",
        "source": "Furumoto-Hasegawa; explicit model in Box",
    },
    {
        "fact": "projection from a rational point makes X0(105)/w35 a "
        "degree-3 cover of P^1; composed with the quotient map this is a "
        "degree-6 map X0(105) -> P^1",
        "source": "plane-quartic projection",
    },
    {
        "fact": "X(b3,b5,e7) -> X(b3,b5,ns7) -> X(b3,b5,ns7)/w3 is a chain "
        "of degree-2 maps over Q",
        "source": "index-2 inclusions of level subgroups",
    },
    {
        "fact": "every rational point on X0(105), X(s3,b5,b7), "
        "X(b3,b5,e7) and X(s3,b5,e7) is a cusp, so finiteness in degree 5 "
        "controls all quintic points",
        "source": "rational points of X0(35) and X(b5,ns7) are cuspidal "
        "(Derickx-Najman-Siksek)",
    },
)

#: The degree-6 map of X0(105) as (degree, provenance).
X0_105_KNOWN_MAPS: tuple[tuple[int, str], ...] = (
    (6, "plane-quartic projection composed with the w35 quotient map"),
)


@dataclass(frozen=True)
class PipelineReport:
    degree: int
    spectral: str
    verdicts: tuple[FinitenessVerdict, ...]
    curated_facts: tuple[dict[str, str], ...] = CURATED_FACTS

    @property
    def summary(self) -> dict[str, int]:
        finite = sum(1 for v in self.verdicts if v.result is Result.FINITE)
        primary = sum(1 for v in self.verdicts if v.rule is not Rule.COVER)
        return {
            "curves": len(self.verdicts),
            "finite": finite,
            "primary": primary,
            "propagated": len(self.verdicts) - primary,
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "spectral": self.spectral,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "curated_facts": list(self.curated_facts),
            "summary": self.summary,
        }


def _e7_curve_facts(spectral: SpectralBound) -> CurveFacts:
    structure = LevelStructure(
        {
            3: SubgroupKind.SPLIT_CARTAN_NORMALIZER,
            5: SubgroupKind.BOREL,
            7: SubgroupKind.E7,
        }
    )
    index = psl2_index(structure)
    bound = gonality_lower_bound(index, spectral)
    return CurveFacts(
        tag="X(s3,b5,e7)",
        integer_gonality_lb=integer_gonality_bound(index, spectral),
        gonality_certificate={
            "psl2_index": index,
            "spectral_bound": {"name": spectral.name, "value": str(spectral.value)},
            "gonality_bound": str(bound),
        },
    )


def run_pipeline(
    forms: NewformSet,
    spectral: SpectralBound = KIM_SARNAK,
    degree: int = 5,
) -> PipelineReport:
    """Assemble curve facts from the fixture data and run every rule.

    Verdict order: X0(105) by T1, X(s3,b5,b7) and X(b3,b5,ns7)/w3 by T2,
    X(s3,b5,e7) by AF, then the cover propagations to X(b3,b5,ns7) and
    X(b3,b5,e7).  Degrees other than 5 are refused: pulling back rational
    points along the degree-6 map X0(105) -> P^1 produces infinitely many
    degree-6 points, so no analogous pipeline can exist in degree 6, and
    the genus threshold is not established for any other degree.
    """
    if degree != 5:
        detail = (
            "degree 6 is hopeless here: X0(105) carries a degree-6 map to "
            "P^1, whose fibers over rational points give infinitely many "
            "degree-6 points"
            if degree == 6
            else "only degree 5 is supported"
        )
        raise UnsupportedDegreeError(
            f"finiteness pipeline rejects degree {degree}: {detail}"
        )

    w35 = frozenset({5, 7})
    w9 = frozenset({3})

    facts_x0_105 = CurveFacts(
        tag="X0(105)",
        genus=genus_x0(105, forms),
        jacobian=jacobian_x0(105, forms),
        double_cover_quotient_genus=genus_al_quotient(105, forms, [w35]),
        known_maps=X0_105_KNOWN_MAPS,
    )
    v_x0_105 = rule_rank_zero(facts_x0_105, degree)

    facts_s3b5b7 = CurveFacts(
        tag="X(s3,b5,b7)",
        genus=genus_al_quotient(315, forms, [w9]),
        jacobian=jacobian_al_quotient(315, forms, [w9], curve="X(s3,b5,b7)"),
        double_cover_quotient_genus=genus_al_quotient(315, forms, [w9, w35]),
    )
    v_s3b5b7 = rule_large_genus(facts_s3b5b7, degree)

    ns7_w3 = chen_ns7_decomposition(forms, {3: 1})
    ns7_w3w5 = chen_ns7_decomposition(forms, {3: 1, 5: 1})
    facts_ns7_w3 = CurveFacts(
        tag="ns7/w3",
        genus=total_dimension(ns7_w3),
        jacobian=ns7_w3,
        double_cover_quotient_genus=total_dimension(ns7_w3w5),
    )
    v_ns7_w3 = rule_large_genus(facts_ns7_w3, degree)

    v_e7 = rule_gonality(_e7_curve_facts(spectral), degree)

    v_ns7 = propagate_over_cover(
        v_ns7_w3, "ns7", via="degree-2 Atkin-Lehner quotient by w3"
    )
    v_b3b5e7 = propagate_over_cover(
        v_ns7, "X(b3,b5,e7)", via="degree-2 map to the ns7 curve"
    )

    return PipelineReport(
        degree=degree,
        spectral=spectral.name,
        verdicts=(v_x0_105, v_s3b5b7, v_ns7_w3, v_e7, v_ns7, v_b3b5e7),
    )


@dataclass(frozen=True)
class GonalitySandwich:
    lower: int
    upper: int
    exclusions: tuple[tuple[int, str], ...]
    upper_witness: str


def gonality_sandwich_x0_105() -> GonalitySandwich:
    """Exact gonality of X0(105) over Q and over C: both are 6.

    Degrees 1-5 are excluded case by case (genus for 1, Castelnuovo-Severi
    for odd degrees, the non-hyperelliptic genus-3 quotient for even
    degrees); the curated degree-6 map gives the matching upper bound.
    """
    g, q = 13, 3
    exclusions: list[tuple[int, str]] = []
    for d in range(1, 6):
        if d == 1:
            exclusions.append((d, "a degree-1 map would force genus 0, not 13"))
        elif d % 2 == 1:
            if not no_degree_d_map_certificate(g, q, d):
                raise CertificateError(
                    f"Castelnuovo-Severi certificate unexpectedly failed at "
                    f"degree {d}"
                )
            exclusions.append(
                (d, "odd degree below the non-factoring threshold 8 "
                    "(Castelnuovo-Severi)")
            )
        else:
            exclusions.append(
                (d, "an even-degree map would factor through the w35 "
                    "quotient, which is non-hyperelliptic of genus 3 and "
                    f"admits no degree-{d // 2} map to P^1")
            )
    return GonalitySandwich(
        lower=6,
        upper=6,
        exclusions=tuple(exclusions),
        upper_witness=X0_105_KNOWN_MAPS[0][1],
    )


def verify_report(report: Mapping[str, Any]) -> None:
    """Re-run every certificate predicate in a pipeline report.

    Raises ``CertificateError`` on the first mismatch; silently returns on
    success.  The report is self-contained: verification uses only the
    recorded certificate inputs, not the fixtures.
    """
    try:
        verdicts = list(report["verdicts"])
        by_tag = {v["tag"]: v for v in verdicts}
        for v in verdicts:
            _verify_one(v, by_tag)
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"malformed report: {exc!r}") from exc


def _verify_no_map(cert: Mapping[str, Any], expect_holds: bool) -> None:
    if cert["holds"] != expect_holds:
        raise CertificateError("no-map certificate flag mismatch")
    if cert["holds"]:
        if cert["degree"] in cert["known_map_degrees"]:
            raise CertificateError("certificate contradicts a recorded map")
        recomputed = no_degree_d_map_certificate(
            cert["genus"], cert["double_cover_quotient_genus"], cert["degree"]
        )
        if not recomputed:
            raise CertificateError("no-map certificate does not re-verify")


def _verify_one(v: Mapping[str, Any], by_tag: Mapping[str, Any]) -> None:
    rule = v["rule"]
    cert = v["certificate"]
    finite = v["result"] == Result.FINITE.value
    tag = v["tag"]

    if rule == Rule.RANK_ZERO.value:
        rank = sum(
            r["analytic_rank"] * r["hecke_degree"] * r["multiplicity"]
            for r in cert["rank_breakdown"]
        )
        if rank != cert["mordell_weil_rank"]:
            raise CertificateError(f"{tag}: rank breakdown does not sum")
        should = rank == 0 and cert["no_degree_map"]["holds"]
        if should != finite:
            raise CertificateError(f"{tag}: T1 predicates do not match result")
        if finite:
            _verify_no_map(cert["no_degree_map"], True)
    elif rule == Rule.LARGE_GENUS.value:
        trace = brill_noether_genus_threshold(v["degree"])
        if cert["genus_threshold"] != trace.threshold:
            raise CertificateError(f"{tag}: genus threshold mismatch")
        should = (
            cert["genus"] >= trace.threshold
            and not cert["elliptic_witnesses"]
            and cert["no_degree_map"]["holds"]
        )
        if should != finite:
            raise CertificateError(f"{tag}: T2 predicates do not match result")
        if finite:
            _verify_no_map(cert["no_degree_map"], True)
    elif rule == Rule.GONALITY.value:
        lb = cert["integer_gonality_bound"]
        if "psl2_index" in cert:
            value = Fraction(cert["spectral_bound"]["value"])
            bound = value * cert["psl2_index"] / 24
            if str(bound) != cert["gonality_bound"]:
                raise CertificateError(f"{tag}: spectral bound mismatch")
            if -(-bound.numerator // bound.denominator) != lb:
                raise CertificateError(f"{tag}: integer bound is not the ceiling")
        should = lb > 2 * v["degree"]
        if should != finite:
            raise CertificateError(f"{tag}: AF predicate does not match result")
    elif rule == Rule.COVER.value:
        quotient = by_tag.get(cert["quotient"])
        if quotient is None:
            raise CertificateError(
                f"{tag}: propagation source {cert['quotient']} not in report"
            )
        if finite and quotient["result"] != Result.FINITE.value:
            raise CertificateError(
                f"{tag}: Finite propagated from a non-Finite quotient"
            )
    else:
        raise CertificateError(f"{tag}: unknown rule {rule!r}")
