"""Characters of M_{p^(m+1)} (the n = 1 family) and the orbit data built on them."""
from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass

from . import formulas
from .cyclotomic import CycloInt
from .errors import ConsistencyError, InvalidParameters
from .fusion import BlockParams, fusion_classes
from .group_core import (
    ConjClass,
    Element,
    GroupParams,
    conjugacy_classes,
    euler_phi,
    pow as gpow,
)


@dataclass(frozen=True)
class IrrChar:
    kind: str  # "linear" or "induced"
    label: tuple[int, ...]  # (i, j) for linear, (k,) for induced
    degree: int
    defect: int

    def __str__(self) -> str:
        if self.kind == "linear":
            return f"chi_{self.label[0]}_{self.label[1]}"
        return f"psi_{self.label[0]}"


def _require_cyclic_maximal(params: GroupParams) -> None:
    if params.n != 1:
        raise InvalidParameters(f"character data needs n = 1 (got n = {params.n})")
    if params.m < 2:
        raise InvalidParameters(f"character data needs m >= 2 (got m = {params.m})")


def irreducible_characters(params: GroupParams) -> list[IrrChar]:
    _require_cyclic_maximal(params)
    p, m = params.p, params.m
    N = p ** (m - 1)
    linear = [IrrChar("linear", (i, j), 1, m + 1) for i in range(N) for j in range(p)]
    induced = [IrrChar("induced", (k,), p, m) for k in range(N) if k % p]
    return linear + induced


def char_value(params: GroupParams, chi: IrrChar, g: Element) -> CycloInt:
    """chi(g) as an element of Z[zeta_(p^(m-1))]."""
    p, m = params.p, params.m
    N = p ** (m - 1)
    if chi.kind == "linear":
        i, j = chi.label
        return CycloInt.root(N, i * g.i + j * g.j * p ** (m - 2))
    (k,) = chi.label
    if g.j % p or g.i % p:
        return CycloInt.zero(N)
    return CycloInt.root(N, k * (g.i // p), scale=p)


@dataclass
class CharacterTable:
    params: GroupParams
    characters: list[IrrChar]
    classes: list[ConjClass]
    values: list[list[CycloInt]]

    @property
    def level(self) -> int:
        return self.params.p ** (self.params.m - 1)

    def class_index(self) -> dict[Element, int]:
        return {g: c for c, cls in enumerate(self.classes) for g in cls.members}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["character", "degree", "defect"] + [str(c.representative) for c in self.classes])
        for chi, row in zip(self.characters, self.values):
            w.writerow([str(chi), chi.degree, chi.defect] + [str(v.coeffs) for v in row])
        return buf.getvalue()


def irr_table(params: GroupParams, budget: int | None = None) -> CharacterTable:
    chars = irreducible_characters(params)
    classes = conjugacy_classes(params, budget)
    values = [[char_value(params, chi, c.representative) for c in classes] for chi in chars]
    return CharacterTable(params, chars, classes, values)


def row_inner_products(table: CharacterTable) -> list[list[int]]:
    """|D| * <chi, chi'> for all pairs; must be |D| times the identity."""
    N = table.level
    out = []
    for row_a in table.values:
        line = []
        for row_b in table.values:
            total = CycloInt.zero(N)
            for cls, a, b in zip(table.classes, row_a, row_b):
                if not a.is_zero() and not b.is_zero():
                    total = total + (a * b.conjugate()) * cls.size
            line.append(int(total))
        out.append(line)
    return out


def column_inner_products(table: CharacterTable) -> list[list[int]]:
    """sum_chi chi(g) conj(chi(h)); must be diag(|C_D(g)|)."""
    N = table.level
    cols = list(zip(*table.values))
    out = []
    for col_a in cols:
        line = []
        for col_b in cols:
            total = CycloInt.zero(N)
            for a, b in zip(col_a, col_b):
                if not a.is_zero() and not b.is_zero():
                    total = total + a * b.conjugate()
            line.append(int(total))
        out.append(line)
    return out


def check_orthogonality(table: CharacterTable) -> None:
    order = table.params.order
    rows = row_inner_products(table)
    for a, line in enumerate(rows):
        for b, v in enumerate(line):
            if v != (order if a == b else 0):
                raise ConsistencyError(
                    f"row orthogonality fails for {table.characters[a]}, {table.characters[b]}: {v}"
                )
    cols = column_inner_products(table)
    for a, line in enumerate(cols):
        for b, v in enumerate(line):
            expected = order // table.classes[a].size if a == b else 0
            if v != expected:
                raise ConsistencyError(f"column orthogonality fails at classes {a}, {b}: {v}")


def _inverse_unit(block: BlockParams) -> int:
    return pow(block.alpha1, -1, block.group.order_x)


def _act_on_label(block: BlockParams, chi: IrrChar) -> IrrChar:
    """chi o alpha^-1.  alpha^-1 scales the x-exponent by alpha_1^-1."""
    N = block.group.p ** (block.group.m - 1)
    beta = _inverse_unit(block)
    if chi.kind == "linear":
        i, j = chi.label
        return IrrChar("linear", (i * beta % N, j), chi.degree, chi.defect)
    (k,) = chi.label
    return IrrChar("induced", (k * beta % N,), chi.degree, chi.defect)


def inertial_orbits(block: BlockParams) -> list[list[IrrChar]]:
    """Orbits of I(B) = <alpha> on Irr(D)."""
    chars = irreducible_characters(block.group)
    seen: set[IrrChar] = set()
    out = []
    for chi in chars:
        if chi in seen:
            continue
        orbit = [chi]
        seen.add(chi)
        nxt = _act_on_label(block, chi)
        while nxt != chi:
            orbit.append(nxt)
            seen.add(nxt)
            nxt = _act_on_label(block, nxt)
        out.append(orbit)
    return out


def inertial_orbits_by_values(block: BlockParams, table: CharacterTable | None = None) -> list[list[int]]:
    """Same orbits, found by precomposing table rows with alpha^-1 and matching values.

    Independent of the label bookkeeping in ``inertial_orbits``; used as a check.
    Returns orbits as lists of row indices.
    """
    params = block.group
    if table is None:
        table = irr_table(params)
    where = table.class_index()
    row_of = {tuple(v.coeffs for v in row): r for r, row in enumerate(table.values)}
    beta = _inverse_unit(block)
    images = []
    for row in table.values:
        moved = []
        for cls in table.classes:
            g = cls.representative
            pre = Element(g.i * beta % params.order_x, g.j)
            moved.append(row[where[pre]].coeffs)
        images.append(row_of[tuple(moved)])
    seen: set[int] = set()
    out = []
    for r in range(len(table.values)):
        if r in seen:
            continue
        orbit = [r]
        seen.add(r)
        nxt = images[r]
        while nxt != r:
            orbit.append(nxt)
            seen.add(nxt)
            nxt = images[nxt]
        out.append(orbit)
    return out


def inertial_char_orbits(block: BlockParams) -> dict[str, list[int]]:
    """Orbit-length multisets of I(B) on the linear and on the degree-p characters."""
    _require_cyclic_maximal(block.group)
    out: dict[str, list[int]] = {"linear": [], "induced": []}
    for orbit in inertial_orbits(block):
        out[orbit[0].kind].append(len(orbit))
    return {k: sorted(v, reverse=True) for k, v in out.items()}


def owc_weights(block: BlockParams, d: int) -> int:
    """w(D, d): sum over I(B)-orbits on Irr^d(D) of |I(B) ∩ I(chi)|."""
    _require_cyclic_maximal(block.group)
    total = 0
    for orbit in inertial_orbits(block):
        if orbit[0].defect == d:
            total += block.e // len(orbit)
    return total


def owc_closed_forms(block: BlockParams) -> tuple[int, int]:
    p, m, e = block.group.p, block.group.m, block.e
    return (
        formulas.as_int(formulas.owc_top(p, m, e), "w(D, m+1)"),
        formulas.as_int(formulas.owc_next(p, m, e), "w(D, m)"),
    )


@dataclass(frozen=True)
class GaloisOrbits:
    lengths: tuple[int, ...]
    rational_min: int
    rational_max: int

    @property
    def nonrational_total(self) -> int:
        return sum(self.lengths)

    def total(self, rational: int | None = None) -> int:
        return self.nonrational_total + (self.rational_min if rational is None else rational)

    def counter(self) -> Counter:
        return Counter(self.lengths)


def galois_orbit_multiset(block: BlockParams, budget: int | None = None) -> GaloisOrbits:
    """Orbit lengths of p-conjugate characters, read off the subsection columns.

    The Galois group acts on the columns of the generalized decomposition
    matrix through u -> u^k; the orbit of the column of u therefore runs
    through the F-classes of the generators of <u>, and has length
    phi(|u|) / |Aut_F(<u>)|.  A subsection with l(b_u) = e contributes e
    columns, each with that orbit.  The trivial subsection gives the l(B)
    p-rational characters.
    """
    params = block.group
    _require_cyclic_maximal(params)
    p, m, n, l, e = block.as_tuple()
    if e < 2:
        raise InvalidParameters("Galois orbit distribution needs a nonnilpotent block (e >= 2)")
    classes = fusion_classes(block, budget)
    where = {g: c for c, fc in enumerate(classes) for g in fc.members}
    seen: set[int] = set()
    lengths = []
    for c, fc in enumerate(classes):
        if c in seen or fc.representative == params.identity:
            continue
        u, order = fc.representative, fc.element_order
        orbit = {where[gpow(params, u, k)] for k in range(1, order) if k % p}
        seen |= orbit
        if len(orbit) * fc.aut_order != euler_phi(order):
            raise ConsistencyError(
                f"{block.as_tuple()}: Galois orbit of {u} has {len(orbit)} classes, "
                f"phi({order})/{fc.aut_order} expected"
            )
        if any(classes[o].l_bu != fc.l_bu for o in orbit):
            raise ConsistencyError(f"{block.as_tuple()}: Galois orbit of {u} mixes subsection types")
        lengths.extend([len(orbit)] * fc.l_bu)
    k_max = math.floor(formulas.k_upper(p, m, n, l, e))
    l_max = k_max - formulas.as_int(formulas.k_minus_l_cyclic_maximal(p, m, e))
    return GaloisOrbits(tuple(sorted(lengths, reverse=True)), e, max(e, l_max))


def pcon_bullets(p: int, m: int, e: int) -> list[int]:
    """The non-rational orbit lengths listed in closed form (one entry per orbit)."""
    out = [p ** (m - 2) * (p - 1) // e] * 2
    for i in range(0, m - 2):
        out.append(p**i * (p - 1) // e)
    out += [p - 1] * ((p - 1) // e + e)
    for i in range(1, m - 1):
        out += [p**i * (p - 1)] * ((p - 1) // e)
    return sorted(out, reverse=True)


