"""Report documents: every number tagged with where it came from.

A document is a list of sections, each a list of named quantities.  Values are
integers, integer ranges, integer tuples or absent; sources are one of
``formula``, ``brute_force`` or ``paper_exact``.  Serialization goes through
plain JSON values, which is also how CSV cells are written, so both formats
read back to an equal document.
"""
from __future__ import annotations

import csv
import functools
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Union

from . import characters, formulas
from .config import enumeration_budget
from .errors import ConsistencyError, InvalidParameters
from .fusion import BlockParams, fusion_classes, inertial_indices, k_lower_formula, semidirect_class_count
from .group_core import center, conjugacy_classes, derived_subgroup, valid_group_params
from .invariants import (
    IntRange,
    best_bounds,
    conjecture_checks,
    consistency_problems,
    exact_invariants,
)

SOURCES = ("formula", "brute_force", "paper_exact")
BRUTE_FORCE_MODES = ("auto", "always", "never")

Value = Union[int, IntRange, tuple, None]


def _encode(v: Value):
    if isinstance(v, IntRange):
        return {"lo": v.lo, "hi": v.hi, "excluded": sorted(v.excluded)}
    if isinstance(v, tuple):
        return [_encode(x) for x in v]
    if v is None or isinstance(v, int):
        return v
    raise TypeError(f"cannot encode {v!r}")


def _decode(raw) -> Value:
    if isinstance(raw, dict):
        return IntRange(raw["lo"], raw["hi"], frozenset(raw["excluded"]))
    if isinstance(raw, list):
        return tuple(_decode(x) for x in raw)
    if raw is None or (isinstance(raw, int) and not isinstance(raw, bool)):
        return raw
    raise ValueError(f"unexpected value {raw!r} in report")


def _display(v: Value) -> str:
    if v is None:
        return "unknown"
    if isinstance(v, tuple):
        return "(" + ", ".join(_display(x) for x in v) + ")"
    return str(v)


@dataclass(frozen=True)
class Quantity:
    name: str
    value: Value
    source: str

    def __post_init__(self) -> None:
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")


@dataclass
class ReportDocument:
    parameters: tuple[int, int, int, int, int]
    sections: dict[str, list[Quantity]] = field(default_factory=dict)
    conjectures: list[dict] = field(default_factory=list)

    def add(self, section: str, name: str, value: Value, source: str) -> None:
        self.sections.setdefault(section, []).append(Quantity(name, value, source))

    def get(self, section: str, name: str, source: str | None = None) -> Quantity:
        for q in self.sections.get(section, []):
            if q.name == name and source in (None, q.source):
                return q
        raise KeyError(f"{section}.{name}")

    def value(self, section: str, name: str, source: str | None = None) -> Value:
        return self.get(section, name, source).value

    # --- JSON --------------------------------------------------------------------

    def to_dict(self) -> dict:
        p, m, n, l, e = self.parameters
        return {
            "parameters": {"p": p, "m": m, "n": n, "l": l, "e": e},
            "sections": {
                sec: [{"field": q.name, "value": _encode(q.value), "source": q.source} for q in qs]
                for sec, qs in self.sections.items()
            },
            "conjectures": self.conjectures,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReportDocument":
        prm = data["parameters"]
        doc = cls((prm["p"], prm["m"], prm["n"], prm["l"], prm["e"]))
        for sec, entries in data["sections"].items():
            for cell in entries:
                doc.add(sec, cell["field"], _decode(cell["value"]), cell["source"])
        doc.conjectures = [dict(c) for c in data["conjectures"]]
        return doc

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    # --- CSV ---------------------------------------------------------------------

    def csv_rows(self) -> list[list[str]]:
        rows = []
        params = [str(v) for v in self.parameters]
        for sec, qs in self.sections.items():
            for q in qs:
                rows.append(params + [sec, q.name, json.dumps(_encode(q.value)), q.source])
        for c in self.conjectures:
            rows.append(params + ["conjectures", c["name"], json.dumps(c), c["source"]])
        return rows

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        if header:
            w.writerow(CSV_HEADER)
        w.writerows(self.csv_rows())
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> list["ReportDocument"]:
        reader = csv.reader(io.StringIO(text, newline=""))
        docs: dict[tuple, ReportDocument] = {}
        for row in reader:
            if row == CSV_HEADER:
                continue
            key = tuple(int(v) for v in row[:5])
            doc = docs.setdefault(key, cls(key))
            sec, name, raw, source = row[5:]
            if sec == "conjectures":
                doc.conjectures.append(json.loads(raw))
            else:
                doc.add(sec, name, _decode(json.loads(raw)), source)
        return list(docs.values())

    # --- text ----------------------------------------------------------------------

    def to_text(self) -> str:
        p, m, n, l, e = self.parameters
        lines = [f"block p={p} m={m} n={n} l={l} e={e}"]
        for sec, qs in self.sections.items():
            lines.append(f"  {sec}")
            for q in qs:
                lines.append(f"    {q.name:<28} {_display(q.value):<24} [{q.source}]")
        if self.conjectures:
            lines.append("  conjectures")
            for c in self.conjectures:
                verdict = {True: "holds", False: "FAILS", None: "undecided"}[c["verdict"]]
                lhs = "?" if c["lhs"] is None else c["lhs"]
                rhs = "?" if c["rhs"] is None else c["rhs"]
                lines.append(
                    f"    {c['name']:<28} {verdict:<10} {lhs} {c['relation']} {rhs}  ({c['note']})"
                )
        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReportDocument):
            return NotImplemented
        return (
            tuple(self.parameters) == tuple(other.parameters)
            and self.sections == other.sections
            and self.conjectures == other.conjectures
        )


CSV_HEADER = ["p", "m", "n", "l", "e", "section", "field", "value", "source"]


def _want_brute_force(mode: str, size: int, budget: int | None) -> bool:
    if mode not in BRUTE_FORCE_MODES:
        raise InvalidParameters(f"brute-force mode must be one of {BRUTE_FORCE_MODES}")
    if mode == "never":
        return False
    # "always" lets the enumeration raise BudgetExceeded itself
    return mode == "always" or size <= enumeration_budget(budget)


def _agree(block: BlockParams, what: str, brute: int, closed: int) -> None:
    if brute != closed:
        raise ConsistencyError(f"{block.as_tuple()}: {what} brute force {brute} != formula {closed}")


def build_report(
    block: BlockParams, budget: int | None = None, brute_force: str = "auto"
) -> ReportDocument:
    """Assemble the full document, cross-checking brute force against closed forms."""
    G = block.group
    p, m, n, l, e = block.as_tuple()
    doc = ReportDocument(block.as_tuple())

    kD = formulas.class_number(p, m, n, l)
    doc.add("group", "order", G.order, "formula")
    doc.add("group", "center_order", math.prod(f.order for f in center(G)), "formula")
    doc.add("group", "derived_order", derived_subgroup(G).order, "formula")
    doc.add("group", "class_count", kD, "formula")
    run_group = _want_brute_force(brute_force, G.order, budget)
    if run_group:
        count = len(conjugacy_classes(G, budget))
        _agree(block, "class count", count, kD)
        doc.add("group", "class_count", count, "brute_force")

    k_lo = k_lower_formula(block)
    doc.add("fusion", "alpha1", block.alpha1, "formula")
    doc.add("fusion", "k_lower", k_lo, "formula")
    if _want_brute_force(brute_force, G.order * e, budget):
        classes = fusion_classes(block, budget)
        total = sum(c.l_bu for c in classes)
        _agree(block, "subsection count", total, k_lo)
        doc.add("fusion", "fusion_class_count", len(classes), "brute_force")
        doc.add("fusion", "k_lower", total, "brute_force")
        sd = semidirect_class_count(block, budget)
        _agree(block, "k(D x| I(B))", sd, k_lo)
        doc.add("fusion", "semidirect_class_count", sd, "brute_force")

    if n == 1:
        w_top, w_next = characters.owc_closed_forms(block)
        doc.add("characters", "irr_count", kD, "formula")
        doc.add("characters", "owc_weight_top", w_top, "formula")
        doc.add("characters", "owc_weight_next", w_next, "formula")
        if run_group:
            irr = characters.irreducible_characters(G)
            _agree(block, "number of irreducible characters", len(irr), kD)
            _agree(block, "sum of squared degrees", sum(c.degree**2 for c in irr), G.order)
            for d, closed, name in ((m + 1, w_top, "owc_weight_top"), (m, w_next, "owc_weight_next")):
                w = characters.owc_weights(block, d)
                _agree(block, f"w(D, {d})", w, closed)
                doc.add("characters", name, w, "brute_force")
            orbs = characters.inertial_char_orbits(block)
            doc.add("characters", "inertial_orbits_linear", tuple(orbs["linear"]), "brute_force")
            doc.add("characters", "inertial_orbits_induced", tuple(orbs["induced"]), "brute_force")
            if e >= 2:
                gal = characters.galois_orbit_multiset(block, budget)
                doc.add("characters", "galois_orbit_lengths", gal.lengths, "brute_force")
                doc.add(
                    "characters", "p_rational_count",
                    IntRange(gal.rational_min, gal.rational_max), "formula",
                )
        if e >= 2:
            doc.add(
                "characters", "galois_orbit_lengths",
                tuple(characters.pcon_bullets(p, m, e)), "formula",
            )

    bounds = best_bounds(block)
    for name in ("k", "k0", "k1", "l"):
        doc.add("bounds", name, getattr(bounds, name), "formula")
    doc.add("bounds", "k_minus_l", bounds.k_minus_l, "formula")
    doc.add("bounds", "height_vanishing_above", bounds.height_vanishing_above, "formula")
    doc.add("bounds", "weighted_sum_bound", bounds.weighted_sum_bound, "formula")

    exact = exact_invariants(block)
    for name in ("k", "k0", "k1", "l"):
        b = getattr(bounds, name)
        x = getattr(exact, name) if exact is not None else None
        if x is None:
            doc.add("invariants", name, _collapse(b), "formula")
        else:
            doc.add("invariants", name, _collapse(b.intersect(x)), "paper_exact")
    kml = bounds.k_minus_l if bounds.k_minus_l is not None else (exact.k_minus_l if exact else None)
    doc.add("invariants", "k_minus_l", kml, "formula")

    problems = consistency_problems(block)
    if problems:
        raise ConsistencyError("; ".join(problems))

    source = "paper_exact" if exact is not None else "formula"
    for c in conjecture_checks(block).checks:
        doc.conjectures.append(
            {
                "name": c.name, "relation": c.relation, "lhs": c.lhs, "rhs": c.rhs,
                "verdict": c.verdict, "note": c.note, "source": source,
            }
        )
    return doc


def _collapse(r: IntRange) -> Value:
    return r.value if r.is_exact else r


def render(doc: ReportDocument, fmt: str) -> str:
    if fmt == "json":
        return doc.to_json() + "\n"
    if fmt == "csv":
        return doc.to_csv()
    if fmt == "text":
        return doc.to_text()
    raise InvalidParameters(f"unknown format {fmt!r}")


def render_stream(docs: Iterable[ReportDocument], fmt: str):
    """Yield chunks for several documents: JSON lines, one CSV header, or text blocks."""
    first = True
    for doc in docs:
        if fmt == "json":
            yield doc.to_json(indent=None) + "\n"
        elif fmt == "csv":
            yield doc.to_csv(header=first)
        elif fmt == "text":
            yield ("" if first else "\n") + doc.to_text()
        else:
            raise InvalidParameters(f"unknown format {fmt!r}")
        first = False


def scan_blocks(primes: Iterable[int], max_order: int) -> list[BlockParams]:
    """All valid (p, m, n, l, e) with p^(m+n) <= max_order, lexicographically."""
    return [
        BlockParams(G, e)
        for G in valid_group_params(primes, max_order)
        for e in inertial_indices(G.p)
    ]


def iter_reports(
    primes: Iterable[int],
    max_order: int,
    budget: int | None = None,
    brute_force: str = "auto",
    jobs: int = 1,
):
    """Reports in tuple order; a consistency violation stops the stream at its tuple."""
    blocks = scan_blocks(primes, max_order)
    build = functools.partial(build_report, budget=budget, brute_force=brute_force)
    if jobs <= 1:
        yield from map(build, blocks)
        return
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        # map() yields in submission order whatever the completion order
        yield from pool.map(build, blocks)
