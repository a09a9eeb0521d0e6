"""Data model for weight-2, trivial-character newform metadata.

Each record describes one Galois orbit of newforms: its LMFDB-style label,
its level M, the degree of its Hecke field (equal to the dimension of the
associated abelian variety A_f), the analytic rank of its L-function, and
its Fricke signs -- the eigenvalue of the full-p-part Atkin-Lehner operator
w_{p^{v_p(M)}} at each prime p dividing M.

Records are transcribed data, never computed: analytic ranks and Fricke
signs come from the bundled fixture (or a remote database, see
``modcurve.lmfdb``).  A sign or rank that is not on record stays absent
(``None`` rank / missing dictionary key) and any computation that needs it
raises instead of guessing.

Fixture file format: a JSON array of objects

    {"label": "15.2.a.a", "level": 15, "dim": 1, "analytic_rank": 0,
     "atkin_lehner": {"3": 1, "5": -1}}

with the ``atkin_lehner`` keys being decimal prime strings and values +-1,
and ``analytic_rank`` a nonnegative integer or null when unknown.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Iterator, Mapping, Optional, Union

from .errors import IncompleteSetError, SchemaError

_LABEL_RE = re.compile(r"^(\d+)\.(\d+)\.([a-z]+)\.([a-z]+)$")

Source = Union[bytes, str, Path, IO[bytes], IO[str]]


@dataclass(frozen=True)
class Newform:
    """One Galois orbit of newforms of weight 2 with trivial character."""

    label: str
    level: int
    hecke_degree: int
    analytic_rank: Optional[int]
    signs: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        m = _LABEL_RE.match(self.label)
        if not m:
            raise SchemaError(f"malformed newform label {self.label!r}")
        if int(m.group(1)) != self.level:
            raise SchemaError(
                f"label {self.label} does not match level {self.level}"
            )
        if int(m.group(2)) != 2:
            raise SchemaError(f"{self.label}: only weight-2 forms are supported")
        if self.hecke_degree < 1:
            raise SchemaError(f"{self.label}: Hecke degree must be >= 1")
        if self.analytic_rank is not None and self.analytic_rank < 0:
            raise SchemaError(f"{self.label}: analytic rank must be >= 0")
        for p, s in self.signs:
            if self.level % p != 0:
                raise SchemaError(
                    f"{self.label}: Atkin-Lehner sign at {p}, which does not "
                    f"divide the level {self.level}"
                )
            if s not in (1, -1):
                raise SchemaError(f"{self.label}: sign at {p} must be +-1")
        object.__setattr__(self, "signs", tuple(sorted(dict(self.signs).items())))

    @classmethod
    def of(
        cls,
        label: str,
        level: int,
        hecke_degree: int,
        analytic_rank: Optional[int],
        fricke_signs: Mapping[int, int] | None = None,
    ) -> "Newform":
        return cls(
            label=label,
            level=level,
            hecke_degree=hecke_degree,
            analytic_rank=analytic_rank,
            signs=tuple((fricke_signs or {}).items()),
        )

    @property
    def fricke_signs(self) -> dict[int, int]:
        return dict(self.signs)

    def fricke_sign(self, p: int) -> Optional[int]:
        """Eigenvalue of w_{p^{v_p(level)}} on the form, if on record."""
        return dict(self.signs).get(p)

    def require_analytic_rank(self) -> int:
        from .errors import MissingRankError

        if self.analytic_rank is None:
            raise MissingRankError(
                f"analytic rank of {self.label} is not on record"
            )
        return self.analytic_rank


@dataclass(frozen=True)
class NewformSet:
    """An immutable, label-deduplicated collection of newform records.

    ``complete_for`` declares ambient levels N for which the set is known
    to contain *every* orbit of level dividing N; decompositions check this
    flag before trusting a level-divides query.
    """

    forms: tuple[Newform, ...]
    complete_for: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.forms, key=lambda f: (f.level, f.label)))
        labels = [f.label for f in ordered]
        if len(set(labels)) != len(labels):
            dupes = sorted({x for x in labels if labels.count(x) > 1})
            raise SchemaError(f"duplicate newform labels: {', '.join(dupes)}")
        object.__setattr__(self, "forms", ordered)
        object.__setattr__(self, "complete_for", frozenset(self.complete_for))

    def __iter__(self) -> Iterator[Newform]:
        return iter(self.forms)

    def __len__(self) -> int:
        return len(self.forms)

    def by_label(self, label: str) -> Newform:
        for f in self.forms:
            if f.label == label:
                return f
        raise KeyError(label)

    def forms_of_level_dividing(self, n: int) -> list[Newform]:
        """All recorded orbits of level dividing ``n``, by (level, label)."""
        if n < 1:
            raise ValueError("level must be positive")
        return [f for f in self.forms if n % f.level == 0]

    def is_complete_for(self, n: int) -> bool:
        return any(ambient % n == 0 for ambient in self.complete_for)

    def require_complete(self, n: int) -> None:
        if not self.is_complete_for(n):
            raise IncompleteSetError(
                f"newform set is not known to be complete for level {n} "
                f"(declared ambients: {sorted(self.complete_for) or 'none'})"
            )


def _read(source: Source) -> bytes:
    if isinstance(source, bytes):
        return source
    if isinstance(source, Path):
        return source.read_bytes()
    if isinstance(source, str):
        # A string is fixture text, not a path.
        return source.encode("utf-8")
    data = source.read()
    return data.encode("utf-8") if isinstance(data, str) else data


def load_fixtures(source: Source, complete_for: Iterable[int] = ()) -> NewformSet:
    """Parse and validate fixture JSON into a ``NewformSet``.

    Raises ``SchemaError`` on any malformed record: wrong types, a sign at
    a prime not dividing the level, a duplicate label.
    """
    try:
        doc = json.loads(_read(source))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"fixture is not valid JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise SchemaError("fixture must be a top-level JSON array")
    forms = []
    for i, row in enumerate(doc):
        forms.append(_parse_row(row, where=f"entry {i}"))
    return NewformSet(forms=tuple(forms), complete_for=frozenset(complete_for))


def _parse_row(row: object, where: str) -> Newform:
    if not isinstance(row, dict):
        raise SchemaError(f"{where}: expected an object")
    required = {"label", "level", "dim", "analytic_rank", "atkin_lehner"}
    missing = required - row.keys()
    if missing:
        raise SchemaError(f"{where}: missing keys {sorted(missing)}")
    extra = row.keys() - required
    if extra:
        raise SchemaError(f"{where}: unknown keys {sorted(extra)}")
    label = row["label"]
    if not isinstance(label, str):
        raise SchemaError(f"{where}: label must be a string")
    for key in ("level", "dim"):
        if not isinstance(row[key], int) or isinstance(row[key], bool):
            raise SchemaError(f"{where} ({label}): {key} must be an integer")
    rank = row["analytic_rank"]
    if rank is not None and (not isinstance(rank, int) or isinstance(rank, bool)):
        raise SchemaError(f"{where} ({label}): analytic_rank must be int or null")
    al = row["atkin_lehner"]
    if not isinstance(al, dict):
        raise SchemaError(f"{where} ({label}): atkin_lehner must be an object")
    signs = {}
    for key, value in al.items():
        if not isinstance(key, str) or not key.isdigit():
            raise SchemaError(
                f"{where} ({label}): atkin_lehner key {key!r} is not a "
                "decimal prime string"
            )
        if not isinstance(value, int) or value not in (1, -1):
            raise SchemaError(f"{where} ({label}): sign at {key} must be +-1")
        signs[int(key)] = value
    return Newform.of(label, row["level"], row["dim"], rank, signs)


def serialize(ns: NewformSet) -> bytes:
    """Canonical fixture bytes: stable field order, sorted rows, 2-space
    indent, trailing newline.  ``serialize(load_fixtures(x)) == x`` for any
    file produced by this function.
    """
    rows = []
    for f in ns.forms:
        rows.append(
            {
                "label": f.label,
                "level": f.level,
                "dim": f.hecke_degree,
                "analytic_rank": f.analytic_rank,
                "atkin_lehner": {str(p): s for p, s in f.signs},
            }
        )
    return (json.dumps(rows, indent=2) + "\n").encode("utf-8")


#: Ambient levels the bundled fixture is complete for (and, by divisor
#: closure, every level dividing them).
BUNDLED_AMBIENTS = frozenset({315, 735})

#: Number of Galois orbits in each level family the package computes with;
#: a replacement fixture claiming completeness must reproduce these.
FAMILY_COUNTS = {105: 6, 315: 15, 735: 35}


def validate_family_counts(ns: NewformSet) -> None:
    """Integrity check for fixtures that claim the bundled completeness."""
    for n, want in sorted(FAMILY_COUNTS.items()):
        got = len(ns.forms_of_level_dividing(n))
        if got != want:
            raise SchemaError(
                f"fixture has {got} forms of level dividing {n}, expected "
                f"{want}; it cannot be complete for the bundled ambients"
            )


def bundled_fixture_bytes() -> bytes:
    return resources.files("modcurve.data").joinpath("newforms.json").read_bytes()


def bundled_newforms() -> NewformSet:
    """The newform records shipped with the package."""
    return load_fixtures(bundled_fixture_bytes(), complete_for=BUNDLED_AMBIENTS)


def forms_of_level_dividing(ns: NewformSet, n: int) -> list[Newform]:
    """Module-level alias for ``NewformSet.forms_of_level_dividing``."""
    return ns.forms_of_level_dividing(n)
