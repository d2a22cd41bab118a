"""Group spec mini-language: ``C12``, ``S3xZ6``, ``Dic5``, ``Q16``, ``E3^2``.

Grammar (case-insensitive, no whitespace)::

    spec    := atom ("x" atom)*
    atom    := ("C" | "Z" | "D" | "Dic" | "S" | "A" | "Q") int
             | "E" int "^" int
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .config import Limits, default_limits
from .divisors import is_prime
from .errors import ResourceError, SpecParseError
from .group import (
    Group,
    direct_product,
    make_alternating,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_elem_abelian,
    make_symmetric,
)

__all__ = ["Atom", "Product", "GroupSpec", "parse_spec", "render_spec", "spec_order", "build_group"]

FAMILIES = ("Cyclic", "Dihedral", "Symmetric", "Alternating", "Dicyclic", "ElemAbelian")


@dataclass(frozen=True)
class Atom:
    family: str
    params: tuple[int, ...]


@dataclass(frozen=True)
class Product:
    factors: tuple["GroupSpec", ...]

    def __post_init__(self) -> None:
        if len(self.factors) < 2:
            raise ValueError("a product needs at least two factors")


GroupSpec = Union[Atom, Product]

_PREFIXES = {
    "dic": "Dicyclic",
    "c": "Cyclic",
    "z": "Cyclic",
    "d": "Dihedral",
    "s": "Symmetric",
    "a": "Alternating",
    "q": "Quaternion",
    "e": "ElemAbelian",
}


class _Parser:
    def __init__(self, text: str, limits: Limits) -> None:
        self.text = text
        self.low = text.lower()
        self.pos = 0
        self.limits = limits

    def error(self, message: str, pos: int | None = None) -> SpecParseError:
        at = self.pos if pos is None else pos
        return SpecParseError(message, self.text, len(self.text[:at].encode("utf-8")))

    def parse(self) -> GroupSpec:
        if not self.text:
            raise self.error("empty spec")
        atoms = [self.atom()]
        while self.pos < len(self.text):
            if self.low[self.pos] != "x":
                raise self.error(f"expected 'x' or end of input, found {self.text[self.pos]!r}")
            self.pos += 1
            atoms.append(self.atom())
        return atoms[0] if len(atoms) == 1 else Product(tuple(atoms))

    def integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            if self.pos >= len(self.text) or self.low[self.pos] == "x":
                raise self.error("missing integer")
            raise self.error(f"malformed integer, found {self.text[self.pos]!r}")
        return int(self.text[start : self.pos])

    def atom(self) -> Atom:
        start = self.pos
        if start >= len(self.text) or self.low[start] == "x":
            raise self.error("empty factor")
        for prefix in sorted(_PREFIXES, key=len, reverse=True):
            if self.low.startswith(prefix, start):
                family = _PREFIXES[prefix]
                self.pos += len(prefix)
                break
        else:
            raise self.error(f"unknown group family {self.text[start]!r}")
        num_at = self.pos
        n = self.integer()
        if family == "ElemAbelian":
            if self.pos >= len(self.text) or self.text[self.pos] != "^":
                raise self.error("expected '^' in E<p>^<k>")
            self.pos += 1
            k_at = self.pos
            k = self.integer()
            if n > 10**9 or not is_prime(n):
                raise self.error(f"E<p>^<k> needs a prime p, got {n}", num_at)
            cap = self.limits.max_elem_abelian_order
            if k < 1 or k > cap.bit_length() or n**k > cap:
                raise self.error(f"E{n}^{k} is outside 1 <= p^k <= {cap}", k_at)
            return Atom("ElemAbelian", (n, k))
        if family == "Quaternion":
            if n < 8 or n & (n - 1):
                raise self.error(f"Q<m> needs m a power of 2 with m >= 8, got {n}; spell other dicyclic groups Dic<n>", num_at)
            return Atom("Dicyclic", (n // 4,))
        lower = {"Cyclic": 1, "Dihedral": 3, "Dicyclic": 2, "Symmetric": 1, "Alternating": 1}[family]
        upper = self.limits.max_perm_degree if family in ("Symmetric", "Alternating") else None
        if n < lower or (upper is not None and n > upper):
            bound = f"{lower}..{upper}" if upper is not None else f">= {lower}"
            raise self.error(f"{family} parameter must be {bound}, got {n}", num_at)
        return Atom(family, (n,))


def parse_spec(text: str, *, limits: Limits | None = None) -> GroupSpec:
    return _Parser(text, limits or default_limits()).parse()


_RENDER = {"Cyclic": "C", "Dihedral": "D", "Symmetric": "S", "Alternating": "A", "Dicyclic": "Dic"}


def render_spec(spec: GroupSpec) -> str:
    if isinstance(spec, Product):
        return "x".join(render_spec(f) for f in spec.factors)
    if spec.family == "ElemAbelian":
        p, k = spec.params
        return f"E{p}^{k}"
    return f"{_RENDER[spec.family]}{spec.params[0]}"


def spec_order(spec: GroupSpec) -> int:
    if isinstance(spec, Product):
        return math.prod(spec_order(f) for f in spec.factors)
    n = spec.params[0]
    return {
        "Cyclic": lambda: n,
        "Dihedral": lambda: 2 * n,
        "Dicyclic": lambda: 4 * n,
        "Symmetric": lambda: math.factorial(n),
        "Alternating": lambda: max(1, math.factorial(n) // 2),
        "ElemAbelian": lambda: n ** spec.params[1],
    }[spec.family]()


_MAKERS = {
    "Cyclic": make_cyclic,
    "Dihedral": make_dihedral,
    "Symmetric": make_symmetric,
    "Alternating": make_alternating,
    "Dicyclic": make_dicyclic,
    "ElemAbelian": make_elem_abelian,
}


def build_group(spec: GroupSpec | str, *, limits: Limits | None = None) -> Group:
    limits = limits or default_limits()
    if isinstance(spec, str):
        spec = parse_spec(spec, limits=limits)
    order = spec_order(spec)
    if order > limits.max_order:
        raise ResourceError(f"{render_spec(spec)} has order {order}, above the cap {limits.max_order}")
    if isinstance(spec, Atom):
        return _MAKERS[spec.family](*spec.params, limits=limits)
    group = build_group(spec.factors[0], limits=limits)
    for factor in spec.factors[1:]:
        group = direct_product(group, build_group(factor, limits=limits), limits=limits)
    return group
