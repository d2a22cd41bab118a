"""Finite groups as validated Cayley tables.

Elements are the integers ``0..n-1`` and the identity is always ``0``.
Tables are numpy arrays, frozen after validation.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .config import Limits, default_limits
from .divisors import factorize, is_prime, prime_divisors
from .errors import DomainError, GroupValidationError, ResourceError, UsageError

__all__ = [
    "Group",
    "Subgroup",
    "multiply",
    "element_order",
    "cyclic_subgroup",
    "make_cyclic",
    "make_dihedral",
    "make_symmetric",
    "make_alternating",
    "make_dicyclic",
    "make_elem_abelian",
    "direct_product",
    "exponent",
    "is_p_group",
    "is_nilpotent",
    "sylow_subgroup",
    "is_cyclic",
    "is_generalized_quaternion",
    "count_order_p_subgroups",
    "maximal_cyclic_subgroups",
    "load_group",
    "save_group",
]


def _index_dtype(n: int):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Subgroup:
    members: tuple[int, ...]
    generator_hint: int | None = None

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: object) -> bool:
        return x in self._set

    @functools.cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.members)


class Group:
    """A finite group given by its multiplication table.

    ``table[i, j]`` is the product of element ``i`` and element ``j``. The
    constructor validates the group axioms and raises
    :class:`GroupValidationError` naming the first violated law. ``factors``
    records the two operands when the group was built by
    :func:`direct_product`; ``family`` records ``(family, params)`` for the
    built-in constructions.
    """

    def __init__(
        self,
        name: str,
        table,
        labels: Sequence[str] | None = None,
        *,
        factors: tuple["Group", "Group"] | tuple[()] = (),
        family: tuple[str, tuple[int, ...]] | None = None,
        limits: Limits | None = None,
    ) -> None:
        limits = limits or default_limits()
        arr = np.asarray(table)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise GroupValidationError("shape", tuple(arr.shape), "table must be a non-empty square array")
        n = int(arr.shape[0])
        if not np.issubdtype(arr.dtype, np.integer):
            raise GroupValidationError("shape", (n,), "table entries must be integers")
        bad = np.argwhere((arr < 0) | (arr >= n))
        if len(bad):
            i, j = (int(v) for v in bad[0])
            raise GroupValidationError("closure", (i, j), f"entry {int(arr[i, j])} is not an element id")
        self.name = str(name)
        self.order = n
        self.identity = 0
        self.table = _frozen(arr.astype(_index_dtype(n), copy=True))
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise GroupValidationError("shape", (len(labels), n), "labels length differs from order")
        self.labels = tuple(str(x) for x in labels)
        self.factors = tuple(factors)
        self.family = family
        _validate(self.table, limits.exhaustive_assoc_order)
        self.inverse = _frozen(np.argmin(self.table, axis=1).astype(self.table.dtype))
        self.elem_order = _frozen(_orders(self.table))
        if np.any(n % self.elem_order.astype(np.int64) != 0):
            a = int(np.flatnonzero(n % self.elem_order.astype(np.int64))[0])
            raise GroupValidationError("lagrange", (a,), f"order {self.elem_order[a]} does not divide {n}")

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return (
            self.name == other.name
            and self.order == other.order
            and self.labels == other.labels
            and np.array_equal(self.table, other.table)
        )

    __hash__ = object.__hash__

    def __getstate__(self) -> dict:
        state = dict(self.__dict__)
        state.pop("power_membership", None)
        return state

    def __setstate__(self, state: dict) -> None:
        self.__dict__.update(state)
        for key in ("table", "inverse", "elem_order"):
            _frozen(self.__dict__[key])

    def power(self, a: int, k: int) -> int:
        k %= int(self.elem_order[a])
        result = 0
        base = int(a)
        while k:
            if k & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            k >>= 1
        return result

    def powers(self, a: int) -> list[int]:
        """``[a^0, a^1, ..., a^(o(a)-1)]``."""
        out = [0]
        x = int(a)
        while x != 0:
            out.append(x)
            x = int(self.table[x, a])
        return out

    @functools.cached_property
    def power_membership(self) -> np.ndarray:
        """Boolean matrix ``M`` with ``M[x, y]`` true iff ``y`` is a power of ``x``."""
        n = self.order
        member = np.zeros((n, n), dtype=bool)
        idx = np.arange(n)
        cur = np.zeros(n, dtype=np.int64)
        col = self.table.astype(np.int64)
        for _ in range(int(self.elem_order.max())):
            member[idx, cur] = True
            cur = col[cur, idx]
        return _frozen(member)


def _validate(table: np.ndarray, exhaustive_limit: int) -> None:
    n = table.shape[0]
    full = np.arange(n)
    rows_sorted = np.sort(table, axis=1)
    bad = np.flatnonzero((rows_sorted != full).any(axis=1))
    if len(bad):
        i = int(bad[0])
        row = rows_sorted[i]
        dup = int(row[np.flatnonzero(np.diff(row) == 0)[0]])
        cols = [int(c) for c in np.flatnonzero(table[i] == dup)]
        raise GroupValidationError("latin square (row)", (i, *cols), f"value {dup} repeated in row {i}")
    cols_sorted = np.sort(table, axis=0)
    bad = np.flatnonzero((cols_sorted != full[:, None]).any(axis=0))
    if len(bad):
        j = int(bad[0])
        col = cols_sorted[:, j]
        dup = int(col[np.flatnonzero(np.diff(col) == 0)[0]])
        rows = [int(r) for r in np.flatnonzero(table[:, j] == dup)]
        raise GroupValidationError("latin square (column)", (*rows, j), f"value {dup} repeated in column {j}")
    if not (np.array_equal(table[0], full) and np.array_equal(table[:, 0], full)):
        raise GroupValidationError("identity", (0,), "element 0 is not a two-sided identity")
    if n <= exhaustive_limit:
        for i in range(n):
            left = table[table[i].astype(np.intp)]  # (i*j)*k over all j, k
            right = table[i][table.astype(np.intp)]  # i*(j*k)
            if not np.array_equal(left, right):
                j, k = (int(v) for v in np.argwhere(left != right)[0])
                raise GroupValidationError("associativity", (i, j, k))
    else:
        # an element a with (a*j)*k == a*(j*k) for all j, k is closed under
        # products, so checking a generating set covers the whole table
        for a in _generating_set(table):
            left = table[table[a].astype(np.intp)]
            right = table[a][table.astype(np.intp)]
            if not np.array_equal(left, right):
                j, k = (int(v) for v in np.argwhere(left != right)[0])
                raise GroupValidationError("associativity", (a, j, k))
    inv = np.argmin(table, axis=1)
    if not np.all(table[inv, full] == 0):
        i = int(np.flatnonzero(table[inv, full] != 0)[0])
        raise GroupValidationError("inverse", (i, int(inv[i])), "right inverse is not a left inverse")


def _right_closure(table: np.ndarray, gens: list[int]) -> np.ndarray:
    n = table.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while len(frontier):
        nxt = table[np.ix_(frontier, gens)].ravel()
        nxt = np.unique(nxt[~seen[nxt]])
        seen[nxt] = True
        frontier = nxt
    return seen


def _generating_set(table: np.ndarray) -> list[int]:
    gens: list[int] = []
    reached = _right_closure(table, [0])
    while not reached.all():
        gens.append(int(np.flatnonzero(~reached)[0]))
        reached = _right_closure(table, gens)
    return gens


def _orders(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    idx = np.arange(n)
    col = table.astype(np.int64)
    orders = np.zeros(n, dtype=np.int64)
    cur = idx.copy()
    k = 1
    while True:
        hit = (cur == 0) & (orders == 0)
        orders[hit] = k
        if orders.all():
            return orders
        cur = col[cur, idx]
        k += 1


# element-level operations ---------------------------------------------------


def _check_element(G: Group, a) -> int:
    if not isinstance(a, (int, np.integer)) or not 0 <= int(a) < G.order:
        raise UsageError(f"{a!r} is not an element id of {G.name} (order {G.order})")
    return int(a)


def multiply(G: Group, a: int, b: int) -> int:
    return int(G.table[_check_element(G, a), _check_element(G, b)])


def element_order(G: Group, a: int) -> int:
    return int(G.elem_order[_check_element(G, a)])


def cyclic_subgroup(G: Group, a: int) -> Subgroup:
    a = _check_element(G, a)
    return Subgroup(tuple(sorted(G.powers(a))), a)


# constructions --------------------------------------------------------------


def make_cyclic(n: int, *, limits: Limits | None = None) -> Group:
    limits = limits or default_limits()
    _bounds(n >= 1, f"cyclic group needs n >= 1, got {n}")
    _cap(n, limits)
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    labels = ["e"] + [f"a^{i}" if i > 1 else "a" for i in range(1, n)]
    return Group(f"C{n}", table, labels, family=("Cyclic", (n,)), limits=limits)


def make_dihedral(n: int, *, limits: Limits | None = None) -> Group:
    """Dihedral group of order ``2n``: elements ``r^i s^j`` at index ``j*n + i``."""
    limits = limits or default_limits()
    _bounds(n >= 3, f"dihedral group needs n >= 3, got {n}")
    _cap(2 * n, limits)
    i = np.arange(2 * n) % n
    j = np.arange(2 * n) // n
    sign = np.where(j == 1, -1, 1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    ref = (j[:, None] + j[None, :]) % 2
    table = ref * n + rot
    labels = [_word(("r", int(a)), ("s", int(b))) for a, b in zip(i, j)]
    return Group(f"D{n}", table, labels, family=("Dihedral", (n,)), limits=limits)


def make_dicyclic(n: int, *, limits: Limits | None = None) -> Group:
    """Dicyclic group of order ``4n``: ``a^(2n) = 1``, ``b^2 = a^n``, ``b^-1 a b = a^-1``.

    Element ``a^i b^j`` sits at index ``j*2n + i``. For ``n`` a power of two
    this is the generalized quaternion group of order ``4n``.
    """
    limits = limits or default_limits()
    _bounds(n >= 2, f"dicyclic group needs n >= 2, got {n}")
    _cap(4 * n, limits)
    m = 2 * n
    i = np.arange(2 * m) % m
    j = np.arange(2 * m) // m
    ii, kk = i[:, None], i[None, :]
    jj, ll = j[:, None], j[None, :]
    exp_a = np.where(jj == 0, ii + kk, ii - kk + np.where(ll == 1, n, 0)) % m
    exp_b = (jj + ll) % 2
    table = exp_b * m + exp_a
    labels = [_word(("a", int(a)), ("b", int(b))) for a, b in zip(i, j)]
    return Group(f"Dic{n}", table, labels, family=("Dicyclic", (n,)), limits=limits)


def _perm_group(n: int, even_only: bool, name: str, family: str, limits: Limits) -> Group:
    perms = [p for p in itertools.permutations(range(n)) if not even_only or _parity(p) == 0]
    _cap(len(perms), limits)
    arr = np.array(perms, dtype=np.int64).reshape(len(perms), n)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    # permutations() yields lexicographic order, so these codes are ascending
    keys = arr @ weights
    table = np.empty((len(perms), len(perms)), dtype=np.int64)
    for s in range(len(perms)):
        # (s*t)(x) = s(t(x))
        table[s] = np.searchsorted(keys, arr[s][arr] @ weights)
    labels = [_cycle_label(p) for p in perms]
    return Group(name, table, labels, family=(family, (n,)), limits=limits)


def make_symmetric(n: int, *, limits: Limits | None = None) -> Group:
    limits = limits or default_limits()
    _bounds(1 <= n <= limits.max_perm_degree, f"symmetric group degree must be in 1..{limits.max_perm_degree}, got {n}")
    return _perm_group(n, False, f"S{n}", "Symmetric", limits)


def make_alternating(n: int, *, limits: Limits | None = None) -> Group:
    limits = limits or default_limits()
    _bounds(1 <= n <= limits.max_perm_degree, f"alternating group degree must be in 1..{limits.max_perm_degree}, got {n}")
    return _perm_group(n, True, f"A{n}", "Alternating", limits)


def make_elem_abelian(p: int, k: int, *, limits: Limits | None = None) -> Group:
    """``(Z/p)^k`` with element index = base-``p`` digits, least significant first."""
    limits = limits or default_limits()
    _bounds(is_prime(p), f"elementary abelian group needs a prime p, got {p}")
    _bounds(k >= 1, f"elementary abelian group needs k >= 1, got {k}")
    _bounds(p**k <= limits.max_elem_abelian_order, f"p^k = {p}^{k} exceeds {limits.max_elem_abelian_order}")
    n = p**k
    _cap(n, limits)
    digits = (np.arange(n)[:, None] // p ** np.arange(k)[None, :]) % p
    summed = (digits[:, None, :] + digits[None, :, :]) % p
    table = summed @ (p ** np.arange(k))
    labels = ["(" + ",".join(str(int(d)) for d in row) + ")" for row in digits]
    return Group(f"E{p}^{k}", table, labels, family=("ElemAbelian", (p, k)), limits=limits)


def direct_product(G: Group, H: Group, *, name: str | None = None, limits: Limits | None = None) -> Group:
    """``G x H`` with the pair ``(g, h)`` at index ``g*|H| + h``."""
    limits = limits or default_limits()
    n, m = G.order, H.order
    if n * m > limits.max_order:
        raise ResourceError(f"|{G.name}| * |{H.name}| = {n * m} exceeds the order cap {limits.max_order}")
    gt = G.table.astype(np.int64)
    ht = H.table.astype(np.int64)
    table = (gt[:, None, :, None] * m + ht[None, :, None, :]).reshape(n * m, n * m)
    labels = [f"({g},{h})" for g in G.labels for h in H.labels]
    P = Group(name or f"{G.name}x{H.name}", table, labels, factors=(G, H), limits=limits)
    expected = np.lcm.outer(G.elem_order.astype(np.int64), H.elem_order.astype(np.int64)).ravel()
    assert np.array_equal(P.elem_order, expected), "o((g,h)) != lcm(o(g), o(h))"
    return P


def _bounds(ok: bool, message: str) -> None:
    if not ok:
        raise UsageError(message)


def _cap(n: int, limits: Limits) -> None:
    if n > limits.max_order:
        raise ResourceError(f"group order {n} exceeds the cap {limits.max_order}")


def _word(*parts: tuple[str, int]) -> str:
    out = [sym if e == 1 else f"{sym}^{e}" for sym, e in parts if e]
    return "".join(out) or "e"


def _parity(p: tuple[int, ...]) -> int:
    return sum(1 for a, b in itertools.combinations(range(len(p)), 2) if p[a] > p[b]) % 2


def _cycle_label(p: tuple[int, ...]) -> str:
    seen = set()
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        cycles.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(cycles) or "e"


# structure queries ----------------------------------------------------------


def exponent(G: Group) -> int:
    return math.lcm(*(int(o) for o in np.unique(G.elem_order)))


def is_p_group(G: Group) -> int | None:
    fac = factorize(G.order)
    return fac[0][0] if len(fac) == 1 else None


def _p_elements(G: Group, p: int) -> np.ndarray:
    orders = G.elem_order.astype(np.int64)
    n = orders.copy()
    while True:
        divisible = (n % p == 0) & (n > 1)
        if not divisible.any():
            break
        n[divisible] //= p
    return np.flatnonzero(n == 1)


def is_nilpotent(G: Group) -> bool:
    """True iff, for each prime ``p``, the elements of ``p``-power order are closed under products."""
    for p in prime_divisors(G.order):
        members = _p_elements(G, p)
        inside = np.zeros(G.order, dtype=bool)
        inside[members] = True
        if not inside[G.table[np.ix_(members, members)]].all():
            return False
    return True


def sylow_subgroup(G: Group, p: int) -> Subgroup:
    if not is_prime(p) or G.order % p:
        raise UsageError(f"{p} is not a prime divisor of |{G.name}| = {G.order}")
    if not is_nilpotent(G):
        raise DomainError(f"{G.name} is not nilpotent; its {p}-elements need not form a subgroup")
    return Subgroup(tuple(int(x) for x in _p_elements(G, p)))


def is_cyclic(G: Group) -> bool:
    return int(G.elem_order.max()) == G.order


def count_order_p_subgroups(G: Group, p: int) -> int:
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    return int(np.count_nonzero(G.elem_order == p)) // (p - 1)


def is_generalized_quaternion(G: Group) -> bool:
    """Non-cyclic 2-group of order >= 8 with a single involution."""
    return (
        G.order >= 8
        and is_p_group(G) == 2
        and not is_cyclic(G)
        and count_order_p_subgroups(G, 2) == 1
    )


def cyclic_subgroups(G: Group) -> list[Subgroup]:
    """Distinct cyclic subgroups, each tagged with its smallest generator, sorted by members."""
    member = G.power_membership
    seen: dict[bytes, int] = {}
    for a in range(G.order):
        key = np.packbits(member[a]).tobytes()
        seen.setdefault(key, a)
    subs = [Subgroup(tuple(int(x) for x in np.flatnonzero(member[a])), a) for a in seen.values()]
    return sorted(subs, key=lambda s: s.members)


def maximal_cyclic_subgroups(G: Group) -> list[Subgroup]:
    member = G.power_membership
    subs = cyclic_subgroups(G)
    gens = [s.generator_hint for s in subs]
    out = []
    for s in subs:
        a = s.generator_hint
        # <a> is contained in <b> iff a is a power of b
        if not any(b != a and member[b, a] and len(t) > len(s) for b, t in zip(gens, subs)):
            out.append(s)
    return out


# persistence ------------------------------------------------------------------


def group_to_dict(G: Group) -> dict:
    return {
        "name": G.name,
        "order": G.order,
        "labels": list(G.labels),
        "table": G.table.astype(int).tolist(),
    }


def group_from_dict(data: dict, *, limits: Limits | None = None) -> Group:
    try:
        name = data["name"]
        order = int(data["order"])
        table = data["table"]
        labels = data.get("labels")
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupValidationError("format", (), f"missing or malformed key: {exc}") from None
    if not isinstance(table, list) or len(table) != order or any(
        not isinstance(row, list) or len(row) != order for row in table
    ):
        raise GroupValidationError("shape", (order,), "table must be an order x order array")
    if order < 1:
        raise GroupValidationError("shape", (order,), "order must be positive")
    if any(not isinstance(v, int) or isinstance(v, bool) for row in table for v in row):
        raise GroupValidationError("shape", (order,), "table entries must be integers")
    arr = np.array(table, dtype=np.int64)
    if labels is None:
        labels = [str(i) for i in range(order)]
    labels = list(labels)
    ident = _find_identity(arr)
    if ident != 0:
        arr, labels = _swap_to_front(arr, labels, ident)
    return Group(name, arr, labels, limits=limits)


def _find_identity(arr: np.ndarray) -> int:
    n = arr.shape[0]
    full = np.arange(n)
    # entries may be out of range here; Group() reports that precisely
    for e in range(n):
        if np.array_equal(arr[e], full) and np.array_equal(arr[:, e], full):
            return e
    return 0


def _swap_to_front(arr: np.ndarray, labels: list[str], e: int):
    n = arr.shape[0]
    perm = np.arange(n)
    perm[0], perm[e] = e, 0  # perm is its own inverse
    new = perm[arr[np.ix_(perm, perm)]]
    new_labels = [labels[int(k)] for k in perm]
    return new, new_labels


def save_group(G: Group, file) -> None:
    text = json.dumps(group_to_dict(G), separators=(",", ":"))
    if hasattr(file, "write"):
        file.write(text)
    else:
        Path(file).write_text(text, encoding="utf-8")


def load_group(file, *, limits: Limits | None = None) -> Group:
    try:
        if hasattr(file, "read"):
            data = json.load(file)
        else:
            data = json.loads(Path(file).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GroupValidationError("format", (), f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise GroupValidationError("format", (), "top level must be a JSON object")
    return group_from_dict(data, limits=limits)

