"""Embedded table of published codes and the pipeline that re-derives them."""
from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable

from borderedsd.alphabet import RingId
from borderedsd.bordered import ConstructionParams, check_conditions, build_selfdual
from borderedsd.selfdual import BinaryCode, intersection_dim, is_self_dual, neighbour, pad_vector
from borderedsd.weights import (
    CLASSIFYING_WEIGHT,
    ClassificationError,
    classify_enumerator,
    low_weight_census,
    min_distance_bz,
    min_distance_exhaustive,
)

CATALOG_FILE = "catalog.txt"
CHECKSUM_FILE = "catalog.sha256"


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Expected:
    length: int
    k: int
    d: int | None
    family: int | None
    alpha: int | None
    beta: int | None
    aut: str | None


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    expected: Expected
    params: ConstructionParams | None = None
    parent: str | None = None
    x0: str | None = None

    @property
    def ring(self) -> RingId:
        return self.params.ring if self.params else RingId.F2

    @property
    def length(self) -> int:
        return self.expected.length


def _opt_int(tok: str) -> int | None:
    return None if tok == "-" else int(tok)


def parse_catalog(text: str) -> dict[str, CatalogEntry]:
    entries: dict[str, CatalogEntry] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            left, right = line.split("|")
            f, e = left.split(), right.split()
            if len(e) != 7:
                raise ValueError(f"expected 7 recorded values, got {len(e)}")
            if len(f) != {"construction": 10, "neighbour": 4}.get(f[1], len(f)):
                raise ValueError(f"wrong field count for a {f[1]} record")
            expected = Expected(
                int(e[0]), int(e[1]), _opt_int(e[2]), _opt_int(e[3]),
                _opt_int(e[4]), _opt_int(e[5]), None if e[6] == "-" else e[6],
            )
            if f[1] == "construction":
                entry = CatalogEntry(f[0], "construction", expected, params=ConstructionParams.from_strings(*f[2:10]))
            elif f[1] == "neighbour":
                entry = CatalogEntry(f[0], "neighbour", expected, parent=f[2], x0=f[3])
            else:
                raise ValueError(f"unknown kind {f[1]!r}")
        except (ValueError, IndexError) as exc:
            raise CatalogError(f"line {lineno}: {exc}") from exc
        if entry.id in entries:
            raise CatalogError(f"line {lineno}: duplicate id {entry.id}")
        entries[entry.id] = entry
    return entries


def catalog_text() -> str:
    return resources.files("borderedsd.data").joinpath(CATALOG_FILE).read_text()


def recorded_checksum() -> str:
    return resources.files("borderedsd.data").joinpath(CHECKSUM_FILE).read_text().split()[0]


def checksum(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def load_catalog(verify_checksum: bool = True) -> dict[str, CatalogEntry]:
    text = catalog_text()
    if verify_checksum and checksum(text) != recorded_checksum():
        raise CatalogError("catalog asset does not match its recorded checksum")
    return parse_catalog(text)


def lint_catalog(entries: dict[str, CatalogEntry]) -> list[str]:
    """Static checks that need no code to be built."""
    problems = []
    for e in entries.values():
        x = e.expected
        if e.kind == "neighbour":
            if e.parent not in entries:
                problems.append(f"{e.id}: parent {e.parent} missing")
            elif len(e.x0) > x.length:
                problems.append(f"{e.id}: x0 longer than the code")
            if sum(int(ch) for ch in e.x0) % 2:
                problems.append(f"{e.id}: x0 has odd weight")
        else:
            if e.params.binary_length != x.length:
                problems.append(f"{e.id}: params give length {e.params.binary_length}, table says {x.length}")
        if 2 * x.k != x.length:
            problems.append(f"{e.id}: k={x.k} is not half the length")
        if x.family is None:
            continue
        implied = implied_coefficients(x.length, x.family, x.alpha, x.beta)
        if implied is None:
            problems.append(f"{e.id}: (family, alpha, beta) = {(x.family, x.alpha, x.beta)} is not a valid class")
        elif any(v < 0 for v in implied.values()):
            problems.append(f"{e.id}: implied coefficients {implied} go negative")
    return problems


def implied_coefficients(length: int, family: int, alpha: int | None, beta: int | None) -> dict[int, int] | None:
    """Low-weight coefficients a class predicts, or None when the class is malformed."""
    a, b = alpha, beta
    if length == 54 and family in (1, 2) and a is not None and b is None:
        return {10: 351 - 8 * a, 12: (5031 if family == 1 else 5543) + 24 * a}
    if length == 68 and a is not None:
        if family == 1 and b is None:
            return {12: 442 + 4 * a, 14: 10864 - 8 * a}
        if family == 2 and b is not None:
            return {12: 442 + 4 * a, 14: 14960 - 8 * a - 256 * b}
    if length == 82:
        if family == 1 and a is None and b is None:
            return {14: 560, 16: 60724, 18: 233545}
        if family in (2, 3) and a is not None and b is not None:
            c18 = 506153 if family == 2 else 514345
            return {14: 3280 + 2 * a, 16: 36244 - 2 * a + 128 * b, 18: c18 - 26 * a - 896 * b}
    if length == 94 and family in (1, 2, 3) and a is not None and b is not None:
        c20 = {1: 2010660, 2: 2018852, 3: 2190884}[family]
        return {16: 2 * a, 18: 134044 - 2 * a + 128 * b, 20: c20 - 30 * a - 896 * b}
    return None


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class EntryReport:
    id: str
    checks: list[Check] = field(default_factory=list)
    census: dict[int, int] | None = None
    aut: str | None = None
    elapsed: float = 0.0
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.ok for c in self.checks)

    @property
    def first_failure(self) -> str | None:
        if self.error:
            return self.error
        for c in self.checks:
            if not c.ok:
                return f"{c.name}: expected {c.expected}, got {c.actual}"
        return None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = "" if self.passed else f"  [{self.first_failure}]"
        shown = ", ".join(f"{c.name}={c.actual}" for c in self.checks if c.name in ("d", "family", "alpha", "beta"))
        return f"{status} {self.id:8s} {self.elapsed:7.2f}s  {shown}{tail}"


class Builder:
    """Builds catalog codes, caching parents of neighbour entries."""

    def __init__(self, entries: dict[str, CatalogEntry]):
        self.entries = entries
        self._cache: dict[str, BinaryCode] = {}

    def code(self, entry_id: str) -> BinaryCode:
        if entry_id not in self._cache:
            e = self.entries[entry_id]
            if e.kind == "construction":
                self._cache[entry_id] = build_selfdual(e.params, check=False)
            else:
                parent = self.code(e.parent)
                x = pad_vector([int(ch) for ch in e.x0], parent.length)
                self._cache[entry_id] = neighbour(parent, x)
        return self._cache[entry_id]


def verify_entry(
    entry_id: str,
    census: str = "full",
    distance: bool = True,
    engine: str = "bz",
    entries: dict[str, CatalogEntry] | None = None,
    builder: Builder | None = None,
    threads: int | None = None,
) -> EntryReport:
    """Rebuild one entry and compare it with its recorded properties.

    ``census`` is ``"full"`` (to the family-deciding weight), ``"partial"``
    (two below it: alpha and beta only) or ``"none"``.
    """
    entries = entries if entries is not None else load_catalog()
    builder = builder or Builder(entries)
    e = entries[entry_id]
    x = e.expected
    rep = EntryReport(entry_id, aut=x.aut)
    t0 = time.perf_counter()
    try:
        if e.kind == "construction":
            cond = check_conditions(e.params)
            rep.checks.append(Check("conditions", [], cond.failed()))
        code = builder.code(entry_id)
        rep.checks.append(Check("length", x.length, code.length))
        rep.checks.append(Check("k", x.k, code.k))
        rep.checks.append(Check("self_dual", True, is_self_dual(code)))
        if e.kind == "neighbour":
            parent = builder.code(e.parent)
            rep.checks.append(Check("intersection_dim", parent.k - 1, intersection_dim(code, parent)))
        if distance and x.d is not None:
            d = min_distance_exhaustive(code, threads) if engine == "exhaustive" else min_distance_bz(code, threads=threads)
            rep.checks.append(Check("d", x.d, d))
        if census != "none" and x.family is not None:
            partial = census == "partial"
            wmax = CLASSIFYING_WEIGHT[x.length] - (2 if partial else 0)
            profile = low_weight_census(code, wmax, threads)
            rep.census = profile.census
            try:
                cls = classify_enumerator(profile, partial=partial)
            except ClassificationError as exc:
                rep.error = f"classification: {exc}"
            else:
                if cls.family is not None:
                    rep.checks.append(Check("family", x.family, cls.family))
                rep.checks.append(Check("alpha", x.alpha, cls.alpha))
                rep.checks.append(Check("beta", x.beta, cls.beta))
    except Exception as exc:  # a broken entry is a failed report, not a crash
        rep.error = f"{type(exc).__name__}: {exc}"
    rep.elapsed = time.perf_counter() - t0
    return rep


@dataclass
class Summary:
    reports: list[EntryReport]
    elapsed: float

    @property
    def failures(self) -> list[EntryReport]:
        return [r for r in self.reports if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures


def plan(entries: dict[str, CatalogEntry], depth: str) -> list[tuple[str, str, bool]]:
    """(id, census mode, check distance) per entry for a verification depth."""
    if depth not in ("fast", "full"):
        raise ValueError(f"depth must be fast or full, got {depth!r}")
    out = []
    sampled: dict[int, int] = {}
    for e in entries.values():
        if depth == "full" or e.length in (54, 68):
            out.append((e.id, "full", True))
        else:
            # construction validity for every entry, distance for a sample
            sampled[e.length] = sampled.get(e.length, 0) + 1
            out.append((e.id, "none", sampled[e.length] <= 2))
    return out


def verify_all(
    depth: str = "fast",
    threads: int | None = None,
    ids: Iterable[str] | None = None,
    on_report=None,
) -> Summary:
    entries = load_catalog()
    builder = Builder(entries)
    steps = plan(entries, depth)
    if ids is not None:
        wanted = set(ids)
        steps = [s for s in steps if s[0] in wanted]
    t0 = time.perf_counter()
    reports = []
    for entry_id, census, distance in steps:
        rep = verify_entry(entry_id, census, distance, entries=entries, builder=builder, threads=threads)
        reports.append(rep)
        if on_report:
            on_report(rep)
    return Summary(reports, time.perf_counter() - t0)
