"""Arithmetic in the split metacyclic group

    D = <x, y | x^(p^m) = y^(p^n) = 1, y x y^-1 = x^(1+p^l)>,   0 < l < m, m - l <= n.

Elements are kept in the normal form x^i y^j with 0 <= i < p^m, 0 <= j < p^n.
Conjugation by y acts on <x> as multiplication of the exponent by r = 1 + p^l,
so (x^a y^b)(x^c y^d) = x^(a + c r^b) y^(b + d).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .config import check_budget
from .errors import InvalidParameters


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Element(NamedTuple):
    i: int
    j: int

    def __str__(self) -> str:
        return f"x^{self.i} y^{self.j}"


@dataclass(frozen=True)
class GroupParams:
    p: int
    m: int
    n: int
    l: int
    # r^b mod p^m for b = 0 .. p^(m-l) - 1; r = 1 + p^l has that multiplicative order
    _twist: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        r = 1 + self.p**self.l
        mod = self.p**self.m
        table = [1]
        for _ in range(self.p ** (self.m - self.l) - 1):
            table.append(table[-1] * r % mod)
        object.__setattr__(self, "_twist", tuple(table))

    @property
    def order_x(self) -> int:
        return self.p**self.m

    @property
    def order_y(self) -> int:
        return self.p**self.n

    @property
    def order(self) -> int:
        return self.p ** (self.m + self.n)

    @property
    def r(self) -> int:
        return 1 + self.p**self.l

    def twist(self, b: int) -> int:
        """(1 + p^l)^b mod p^m."""
        return self._twist[b % len(self._twist)]

    @property
    def identity(self) -> Element:
        return Element(0, 0)

    @property
    def x(self) -> Element:
        return Element(1, 0)

    @property
    def y(self) -> Element:
        return Element(0, 1)

    def elements(self) -> Iterator[Element]:
        for i in range(self.order_x):
            for j in range(self.order_y):
                yield Element(i, j)

    def index(self, g: Element) -> int:
        return g.i * self.order_y + g.j

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.p, self.m, self.n, self.l)


def make_params(p: int, m: int, n: int, l: int) -> GroupParams:
    for name, value in (("p", p), ("m", m), ("n", n), ("l", l)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidParameters(f"{name} must be an integer, got {value!r}")
    if p == 2:
        raise InvalidParameters("p = 2 is excluded: p must be an odd prime")
    if not is_prime(p):
        raise InvalidParameters(f"p = {p} is not prime")
    if m < 1 or n < 1:
        raise InvalidParameters(f"exponents must be positive (m = {m}, n = {n})")
    if l <= 0:
        raise InvalidParameters(f"l = {l} violates 0 < l")
    if l >= m:
        raise InvalidParameters(f"l = {l} violates l < m = {m}")
    if m - l > n:
        raise InvalidParameters(f"m - l = {m - l} exceeds n = {n}")
    return GroupParams(p, m, n, l)


def mul(params: GroupParams, g: Element, h: Element) -> Element:
    return Element(
        (g.i + h.i * params.twist(g.j)) % params.order_x,
        (g.j + h.j) % params.order_y,
    )


def inv(params: GroupParams, g: Element) -> Element:
    # (x^a y^b)^-1 = y^-b x^-a = x^(-a r^-b) y^-b
    b = (-g.j) % params.order_y
    return Element((-g.i * params.twist(b)) % params.order_x, b)


def pow(params: GroupParams, g: Element, k: int) -> Element:  # noqa: A001
    if k < 0:
        g, k = inv(params, g), -k
    result = params.identity
    base = g
    while k:
        if k & 1:
            result = mul(params, result, base)
        base = mul(params, base, base)
        k >>= 1
    return result


def order_of(params: GroupParams, g: Element) -> int:
    """Element order; it is a power of p not exceeding p^max(m, n)."""
    p = params.p
    h, order = g, 1
    while h != params.identity:
        h = pow(params, h, p)
        order *= p
    return order


def conj(params: GroupParams, g: Element, h: Element) -> Element:
    """g h g^-1."""
    return mul(params, mul(params, g, h), inv(params, g))


def commutes(params: GroupParams, g: Element, h: Element) -> bool:
    return mul(params, g, h) == mul(params, h, g)


def cyclic_subgroup(params: GroupParams, g: Element) -> list[Element]:
    """[g^0, g^1, ...] up to the order of g."""
    out = [params.identity]
    h = g
    while h != params.identity:
        out.append(h)
        h = mul(params, h, g)
    return out


@dataclass(frozen=True)
class CyclicData:
    generator: Element
    order: int


def center_elements(params: GroupParams, budget: int | None = None) -> set[Element]:
    check_budget(params.order, budget, "center")
    x, y = params.x, params.y
    return {g for g in params.elements() if commutes(params, g, x) and commutes(params, g, y)}


def center(params: GroupParams) -> list[CyclicData]:
    """Cyclic factors of Z(D) = <x^(p^(m-l))> x <y^(p^(m-l))>; trivial factors dropped."""
    p, m, n, l = params.as_tuple()
    out = [CyclicData(Element(p ** (m - l), 0), p**l)]
    if n > m - l:
        out.append(CyclicData(Element(0, p ** (m - l)), p ** (n - m + l)))
    return out


def derived_subgroup(params: GroupParams) -> CyclicData:
    p, m, _, l = params.as_tuple()
    return CyclicData(Element(p**l, 0), p ** (m - l))


def commutator_closure(params: GroupParams, budget: int | None = None) -> set[Element]:
    """Subgroup generated by all commutators [g, h], by brute force."""
    check_budget(params.order**2, budget, "commutator subgroup")
    elems = list(params.elements())
    inverses = [inv(params, g) for g in elems]
    gens = set()
    for g, gi in zip(elems, inverses):
        for h, hi in zip(elems, inverses):
            gens.add(mul(params, mul(params, g, h), mul(params, gi, hi)))
    return subgroup_closure(params, gens)


def subgroup_closure(params: GroupParams, gens: Iterable[Element]) -> set[Element]:
    gens = list(gens)
    seen = {params.identity}
    frontier = [params.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul(params, a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def centralizer(params: GroupParams, u: Element, budget: int | None = None) -> set[Element]:
    check_budget(params.order, budget, "centralizer")
    return {g for g in params.elements() if commutes(params, g, u)}


@dataclass(frozen=True)
class ConjClass:
    representative: Element
    members: frozenset[Element]

    @property
    def size(self) -> int:
        return len(self.members)


def orbits(elements: Iterable[Element], movers) -> list[list[Element]]:
    """Orbits of the group generated by the maps in ``movers``.

    Each orbit is returned sorted, so its first entry is the lexicographically
    least (i, j).  Orbits are listed in order of their least element.
    """
    seen: set[Element] = set()
    out = []
    for start in sorted(elements):
        if start in seen:
            continue
        seen.add(start)
        orbit = [start]
        stack = [start]
        while stack:
            a = stack.pop()
            for f in movers:
                b = f(a)
                if b not in seen:
                    seen.add(b)
                    orbit.append(b)
                    stack.append(b)
        orbit.sort()
        out.append(orbit)
    return out


def conjugacy_classes(params: GroupParams, budget: int | None = None) -> list[ConjClass]:
    check_budget(params.order, budget, "conjugacy classes")
    x, y = params.x, params.y
    movers = (lambda g: conj(params, x, g), lambda g: conj(params, y, g))
    return [ConjClass(o[0], frozenset(o)) for o in orbits(params.elements(), movers)]


def class_count_formula(params: GroupParams) -> int:
    p, m, n, l = params.as_tuple()
    return p ** (n - m + 2 * l - 1) * (p ** (m - l + 1) + p ** (m - l) - 1)


def valid_group_params(primes: Iterable[int], max_order: int) -> Iterator[GroupParams]:
    """All valid (p, m, n, l) with p^(m+n) <= max_order, in lexicographic order."""
    for p in sorted(set(primes)):
        if p < 3 or not is_prime(p):
            raise InvalidParameters(f"{p} is not an odd prime")
        top = 0
        while p ** (top + 1) <= max_order:
            top += 1
        for m in range(2, top):
            for n in range(1, top - m + 1):
                for l in range(max(1, m - n), m):
                    yield GroupParams(p, m, n, l)


def p_adic_valuation(k: int, p: int) -> int:
    if k == 0:
        raise ValueError("valuation of 0")
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def euler_phi(n: int) -> int:
    result, k, f = n, n, 2
    while f * f <= k:
        if k % f == 0:
            while k % f == 0:
                k //= f
            result -= result // f
        f += 1
    if k > 1:
        result -= result // k
    return result


__all__ = [
    "CyclicData", "ConjClass", "Element", "GroupParams",
    "center", "center_elements", "centralizer", "class_count_formula",
    "commutator_closure", "conj", "conjugacy_classes", "cyclic_subgroup",
    "derived_subgroup", "euler_phi", "inv", "is_prime", "make_params", "mul",
    "order_of", "orbits", "pow", "subgroup_closure", "valid_group_params",
]
