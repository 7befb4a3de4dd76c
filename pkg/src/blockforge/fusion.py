"""The inertial automorphism and the controlled fusion system of D ⋊ I(B).

I(B) is modelled as the cyclic group generated by alpha: x -> x^alpha_1,
y -> y, where alpha_1 has multiplicative order e modulo p^m.  The fusion
system is the conjugation action of D ⋊ <alpha> on D.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import formulas
from .config import check_budget
from .errors import ConsistencyError, InvalidParameters
from .group_core import (
    Element,
    GroupParams,
    conj,
    cyclic_subgroup,
    euler_phi,
    inv,
    make_params,
    mul,
    order_of,
    orbits,
)


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def least_primitive_root(modulus: int) -> int:
    """Least primitive root of an odd prime power."""
    phi = euler_phi(modulus)
    factors = _prime_factors(phi)
    for g in range(2, modulus):
        if all(pow(g, phi // q, modulus) != 1 for q in factors) and pow(g, phi, modulus) == 1:
            return g
    raise ValueError(f"{modulus} has no primitive root")


def multiplicative_order(a: int, modulus: int) -> int:
    k, b = 1, a % modulus
    while b != 1:
        b = b * a % modulus
        k += 1
    return k


def inertial_unit(p: int, m: int, e: int) -> int:
    """alpha_1 = g^(phi(p^m)/e) for the least primitive root g mod p^m."""
    if e < 1 or (p - 1) % e:
        raise InvalidParameters(f"inertial index e = {e} does not divide p - 1 = {p - 1}")
    modulus = p**m
    if e == 1:
        return 1
    g = least_primitive_root(modulus)
    return pow(g, euler_phi(modulus) // e, modulus)


@dataclass(frozen=True)
class BlockParams:
    group: GroupParams
    e: int
    alpha1: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha1", inertial_unit(self.group.p, self.group.m, self.e))

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (*self.group.as_tuple(), self.e)

    def alpha(self, g: Element, s: int = 1) -> Element:
        """alpha^s applied to g."""
        unit = pow(self.alpha1, s % self.e, self.group.order_x)
        return Element(g.i * unit % self.group.order_x, g.j)


def make_block(p: int, m: int, n: int, l: int, e: int) -> BlockParams:
    group = make_params(p, m, n, l)
    if not isinstance(e, int) or e < 1:
        raise InvalidParameters(f"e must be a positive integer, got {e!r}")
    if (p - 1) % e:
        raise InvalidParameters(f"inertial index e = {e} does not divide p - 1 = {p - 1}")
    return BlockParams(group, e)


def inertial_indices(p: int) -> list[int]:
    return [e for e in range(1, p) if (p - 1) % e == 0]


@dataclass(frozen=True)
class FusionClass:
    representative: Element
    size: int
    l_bu: int
    aut_order: int
    element_order: int
    members: frozenset[Element] = field(repr=False)

    @property
    def meets_y(self) -> bool:
        return any(g.i == 0 for g in self.members)


def fusion_orbits(block: BlockParams, budget: int | None = None) -> list[list[Element]]:
    G = block.group
    check_budget(G.order * block.e, budget, "fusion classes")
    x, y = G.x, G.y
    movers = (
        lambda g: conj(G, x, g),
        lambda g: conj(G, y, g),
        lambda g: block.alpha(g),
    )
    return orbits(G.elements(), movers)


def fusion_classes(block: BlockParams, budget: int | None = None) -> list[FusionClass]:
    G = block.group
    out = []
    for orbit in fusion_orbits(block, budget):
        rep = orbit[0]
        members = frozenset(orbit)
        meets_y = any(g.i == 0 for g in orbit)
        # Aut_F(<u>) is determined by where u can be sent inside <u>
        aut = sum(1 for h in cyclic_subgroup(G, rep) if h in members)
        out.append(
            FusionClass(
                representative=rep,
                size=len(orbit),
                l_bu=block.e if meets_y else 1,
                aut_order=aut,
                element_order=order_of(G, rep),
                members=members,
            )
        )
    return out


def k_lower_formula(block: BlockParams) -> int:
    return formulas.as_int(formulas.k_lower(*block.as_tuple()), "k(B) lower bound")


def k_lower(block: BlockParams, budget: int | None = None) -> int:
    """Sum of l(b_u) over the F-classes; cross-checked against the closed form."""
    total = sum(c.l_bu for c in fusion_classes(block, budget))
    expected = k_lower_formula(block)
    if total != expected:
        raise ConsistencyError(
            f"{block.as_tuple()}: subsection count {total} != closed form {expected}"
        )
    return total


def k_minus_l(block: BlockParams, budget: int | None = None) -> int:
    p, m, n, _, e = block.as_tuple()
    if n != 1:
        raise InvalidParameters(f"k(B) - l(B) is only available for n = 1 (got n = {n})")
    total = sum(c.l_bu for c in fusion_classes(block, budget) if c.representative != Element(0, 0))
    expected = formulas.as_int(formulas.k_minus_l_cyclic_maximal(p, m, e), "k(B) - l(B)")
    if total != expected:
        raise ConsistencyError(f"{block.as_tuple()}: k - l count {total} != closed form {expected}")
    return total


# D ⋊ <alpha>, elements (d, s) with (a, s)(b, t) = (a alpha^s(b), s + t)

SDElement = tuple[Element, int]


def sd_mul(block: BlockParams, g: SDElement, h: SDElement) -> SDElement:
    return (mul(block.group, g[0], block.alpha(h[0], g[1])), (g[1] + h[1]) % block.e)


def sd_inv(block: BlockParams, g: SDElement) -> SDElement:
    s = (-g[1]) % block.e
    return (block.alpha(inv(block.group, g[0]), s), s)


def sd_conj(block: BlockParams, g: SDElement, h: SDElement) -> SDElement:
    return sd_mul(block, sd_mul(block, g, h), sd_inv(block, g))


def sd_elements(block: BlockParams):
    for d in block.group.elements():
        for s in range(block.e):
            yield (d, s)


def semidirect_class_count(block: BlockParams, budget: int | None = None) -> int:
    """Number of conjugacy classes of D ⋊ <alpha>, by orbit enumeration."""
    G = block.group
    check_budget(G.order * block.e, budget, "semidirect product")
    gens = [(G.x, 0), (G.y, 0), (G.identity, 1 % block.e)]
    movers = [lambda h, g=g: sd_conj(block, g, h) for g in gens]
    return len(orbits(sd_elements(block), movers))


__all__ = [
    "BlockParams", "FusionClass", "fusion_classes", "fusion_orbits", "inertial_indices",
    "inertial_unit", "k_lower", "k_lower_formula", "k_minus_l", "least_primitive_root",
    "make_block", "multiplicative_order", "sd_conj", "sd_elements", "sd_inv", "sd_mul",
    "semidirect_class_count",
]
