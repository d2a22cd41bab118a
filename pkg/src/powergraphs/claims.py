"""Executable checks of the structural statements about reduced power graphs.

Each claim is a pure function of one group. ``verify`` runs one claim on one
group; ``run_corpus`` runs a claim list over a corpus of group specs, in a
fixed order, optionally across worker processes.
"""

from __future__ import annotations

import functools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import algo
from .config import Limits, default_limits
from .divisors import (
    enumerate_mcd_sets,
    factorize,
    is_mcd_chain,
    mcd_sets_by_definition,
    weight,
)
from .errors import PowerGraphError, ResourceError, UsageError
from .graph import build_linkage_graph, build_power_graph, Variant
from .group import (
    Group,
    count_order_p_subgroups,
    exponent,
    is_cyclic,
    is_generalized_quaternion,
    is_nilpotent,
    is_p_group,
)
from .groupspec import GroupSpec, build_group, parse_spec, render_spec, spec_order

__all__ = [
    "CLAIM_IDS",
    "ClaimReport",
    "Corpus",
    "CorpusResult",
    "default_corpus",
    "verify",
    "run_corpus",
]

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

CLAIM_IDS = (
    "OBS-NBHD",
    "OBS-COMPLETE",
    "LEM-LINKAGE",
    "OBS-UNIQUE-P",
    "COR-PGRP-CONN",
    "COR-COMPONENTS",
    "PROP-COPRIME",
    "PROP-NPP",
    "THM-NILP-CONN",
    "DIAM-1",
    "DIAM-2",
    "DIAM-4",
    "EX-QN-3",
    "LEM-MCD",
    "LEM-CLIQUE-CYC",
    "THM-CLIQUE",
    "COR-CLIQUE-NILP",
)

MAX_CLIQUE_STRUCTURE_ORDER = 60
MAX_DEFINITIONAL_MCD = 1000
MAXIMAL_CLIQUE_LIMIT = 200_000


@dataclass(frozen=True)
class ClaimReport:
    claim: str
    group: str
    status: str
    witness: str | None = None
    ms: float = 0.0

    def __post_init__(self) -> None:
        if self.status == FAIL and not self.witness:
            raise ValueError("a failing report needs a witness")

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "claim": self.claim,
            "group": self.group,
            "status": self.status,
            "witness": self.witness,
            "ms": round(self.ms, 3) if timing else None,
        }


class _Outcome(Exception):
    def __init__(self, status: str, witness: str | None = None) -> None:
        self.status = status
        self.witness = witness


def _skip(reason: str) -> _Outcome:
    return _Outcome(SKIPPED, reason)


class Facts:
    """Lazily computed invariants of one group, shared between claims."""

    def __init__(self, group: Group, limits: Limits | None = None) -> None:
        self.group = group
        self.limits = limits or default_limits()

    @functools.cached_property
    def reduced(self):
        return build_power_graph(self.group, Variant.REDUCED)

    @functools.cached_property
    def full(self):
        return build_power_graph(self.group, Variant.FULL)

    @functools.cached_property
    def components(self):
        return algo.connected_components(self.reduced)

    @functools.cached_property
    def connected(self) -> bool:
        return self.components.count <= 1

    @functools.cached_property
    def diameter(self):
        return algo.diameter(self.reduced)

    @functools.cached_property
    def nilpotent(self) -> bool:
        return is_nilpotent(self.group)

    @functools.cached_property
    def prime(self) -> int | None:
        return is_p_group(self.group)

    @functools.cached_property
    def cyclic(self) -> bool:
        return is_cyclic(self.group)

    @functools.cached_property
    def quaternion(self) -> bool:
        return is_generalized_quaternion(self.group)

    @functools.cached_property
    def clique_reduced(self) -> int:
        return algo.clique_number_exact(self.reduced, cap=self.limits.clique_vertex_cap)


def _label(G: Group, x: int) -> str:
    return f"{G.labels[x]}[id {x}, o={int(G.elem_order[x])}]"


# individual claims --------------------------------------------------------------


def _obs_nbhd(f: Facts) -> None:
    G, g = f.group, f.reduced
    closed = [row | 1 << v for v, row in enumerate(g.rows)]
    for pos, a in enumerate(g.vertices):
        o = int(G.elem_order[a])
        for i in range(2, o):
            if math.gcd(i, o) != 1:
                continue
            b = G.power(a, i)
            # reduced-graph position of element b is b - 1
            if closed[b - 1] != closed[pos]:
                raise _Outcome(FAIL, f"N[{_label(G, a)}] != N[{_label(G, b)}] with i={i}")


def _obs_complete(f: Facts) -> None:
    if f.group.order == 1:
        raise _skip("trivial group: prime-power order undefined")
    lhs = algo.is_complete(f.full)
    rhs = f.cyclic and f.prime is not None
    if lhs != rhs:
        raise _Outcome(FAIL, f"full power graph complete={lhs} but cyclic of prime-power order={rhs}")


def _lem_linkage(f: Facts) -> None:
    link = build_linkage_graph(f.group)
    lhs = f.connected
    rhs = algo.is_connected(link)
    if lhs != rhs:
        raise _Outcome(FAIL, f"reduced graph connected={lhs} but linkage graph connected={rhs} ({link.n} nodes)")


def _require_p_group(f: Facts) -> int:
    if f.prime is None:
        raise _skip("not a p-group")
    return f.prime


def _obs_unique_p(f: Facts) -> None:
    p = _require_p_group(f)
    count = count_order_p_subgroups(f.group, p)
    rhs = f.cyclic or f.quaternion
    if (count == 1) != rhs:
        raise _Outcome(FAIL, f"{count} subgroups of order {p} but cyclic-or-quaternion={rhs}")


def _cor_pgrp_conn(f: Facts) -> None:
    _require_p_group(f)
    rhs = f.cyclic or f.quaternion
    if f.connected != rhs:
        raise _Outcome(FAIL, f"connected={f.connected} but cyclic-or-quaternion={rhs}")


def _cor_components(f: Facts) -> None:
    p = _require_p_group(f)
    count = count_order_p_subgroups(f.group, p)
    if f.components.count != count:
        raise _Outcome(FAIL, f"{f.components.count} components but {count} subgroups of order {p}")


def _factor_pair(f: Facts) -> tuple[Group, Group]:
    if len(f.group.factors) != 2:
        raise _skip("not built as a direct product")
    return f.group.factors


def _prop_coprime(f: Facts) -> None:
    A, B = _factor_pair(f)
    if A.order == 1 or B.order == 1 or math.gcd(A.order, B.order) != 1:
        raise _skip(f"factor orders {A.order}, {B.order} not coprime nontrivial")
    if not f.connected:
        raise _Outcome(FAIL, f"{A.name} x {B.name} has {f.components.count} components")


def _prop_npp(f: Facts) -> None:
    A, B = _factor_pair(f)
    for first, second in ((A, B), (B, A)):
        if len(factorize(first.order)) < 2:
            continue
        if not algo.is_connected(build_power_graph(first, Variant.REDUCED)):
            continue
        if not f.connected:
            raise _Outcome(
                FAIL,
                f"{first.name} is connected of non-prime-power order, "
                f"but the product has {f.components.count} components",
            )
        return
    raise _skip("no factor with connected reduced graph and non-prime-power order")


def _thm_nilp_conn(f: Facts) -> None:
    if not f.nilpotent:
        raise _skip("not nilpotent")
    rhs = f.cyclic or f.quaternion or f.prime is None
    if f.connected != rhs:
        raise _Outcome(FAIL, f"connected={f.connected} but cyclic/quaternion/non-p-group={rhs}")


def _diam_1(f: Facts) -> None:
    lhs = f.diameter.value == 1
    rhs = f.cyclic and f.prime is not None and f.group.order >= 3
    if lhs != rhs:
        raise _Outcome(FAIL, f"diameter={f.diameter} but cyclic p-group of order >= 3={rhs}")


def sylow_shape_ok(G: Group) -> bool:
    """Nilpotent with every Sylow subgroup cyclic or generalized quaternion."""
    if not is_nilpotent(G):
        return False
    orders = G.elem_order
    for p, e in factorize(G.order):
        size = p**e
        # in a nilpotent group the p-elements form the Sylow subgroup
        if np.any(orders == size):
            continue
        unique_involution = np.count_nonzero(orders == p) == p - 1
        if not (p == 2 and size >= 8 and unique_involution):
            return False
    return True


def _diam_2(f: Facts) -> None:
    if f.reduced.n < 2:
        raise _skip("reduced graph has fewer than 2 vertices")
    lhs = f.diameter.value == 2
    cyclic_pgroup = f.cyclic and f.prime is not None
    rhs = (f.cyclic and f.prime is None) or (sylow_shape_ok(f.group) and not cyclic_pgroup)
    if lhs != rhs:
        raise _Outcome(FAIL, f"diameter={f.diameter} but cyclic-or-quaternion Sylow shape={rhs}")


def _diam_4(f: Facts) -> None:
    if not f.nilpotent:
        raise _skip("not nilpotent")
    d = f.diameter.value
    if d is None or d <= 2:
        raise _skip(f"diameter {f.diameter} is not a finite value above 2")
    if d != 4:
        ecc = f.diameter.eccentricity
        u = ecc.index(d)
        dist = algo.bfs_distances(f.reduced, u)
        v = dist.index(d)
        G, verts = f.group, f.reduced.vertices
        raise _Outcome(FAIL, f"diameter {d}: d({_label(G, verts[u])}, {_label(G, verts[v])}) = {d}")


def _ex_qn_3(f: Facts) -> None:
    fam = f.group.family
    if not fam or fam[0] != "Dicyclic" or fam[1][0] % 2 == 0 or fam[1][0] < 3:
        raise _skip("not a dicyclic group Dic_n with odd n >= 3")
    if f.diameter.value != 3:
        raise _Outcome(FAIL, f"diameter={f.diameter}")


def _lem_mcd(f: Facts) -> None:
    for o in sorted({int(x) for x in np.unique(f.group.elem_order)} - {1}):
        sets = enumerate_mcd_sets(o)
        for s in sets:
            if not is_mcd_chain(o, s.chain):
                raise _Outcome(FAIL, f"{s} fails the prime-step characterization for n={o}")
        if o <= MAX_DEFINITIONAL_MCD:
            expected = mcd_sets_by_definition(o)
            got = sorted(s.chain for s in sets)
            if got != expected:
                missing = sorted(set(expected) - set(got))
                extra = sorted(set(got) - set(expected))
                raise _Outcome(FAIL, f"n={o}: missing {missing}, extra {extra}")
        best = max(s.weight for s in sets)
        if weight(o) != best:
            raise _Outcome(FAIL, f"weight({o})={weight(o)} but best MCD-set weight is {best}")


def _lem_clique_cyc(f: Facts) -> None:
    G = f.group
    if G.order > MAX_CLIQUE_STRUCTURE_ORDER:
        raise _skip(f"order {G.order} above {MAX_CLIQUE_STRUCTURE_ORDER}")
    found = algo.maximal_cliques(f.reduced, limit=MAXIMAL_CLIQUE_LIMIT)
    if found.truncated:
        raise _skip(f"more than {MAXIMAL_CLIQUE_LIMIT} maximal cliques")
    member = G.power_membership
    orders = G.elem_order
    verts = f.reduced.vertices
    for clique in found:
        elems = [verts[v] for v in clique]
        top = max(elems, key=lambda x: (int(orders[x]), -x))
        names = "{" + ", ".join(G.labels[x] for x in elems) + "}"
        outside = [x for x in elems if not member[top, x]]
        if outside:
            raise _Outcome(FAIL, f"clique {names}: {_label(G, outside[0])} not in <{G.labels[top]}>")
        over = np.flatnonzero(member[:, top] & (orders > orders[top]))
        if len(over):
            raise _Outcome(FAIL, f"clique {names}: <{G.labels[top]}> is inside <{G.labels[int(over[0])]}>")
        chain = tuple(sorted({int(orders[x]) for x in elems}))
        if not is_mcd_chain(int(orders[top]), chain):
            raise _Outcome(FAIL, f"clique {names}: orders {chain} not an MCD-set of {int(orders[top])}")


def _formula_clique(G: Group) -> tuple[int, int | None]:
    """``max weight(o(a))`` and an element attaining it."""
    best, arg = 0, None
    for o in np.unique(G.elem_order):
        w = weight(int(o))
        if arg is None or w > best:
            best, arg = w, int(np.flatnonzero(G.elem_order == o)[0])
    return best, arg


def _thm_clique(f: Facts) -> None:
    w_reduced = f.clique_reduced
    w_full = algo.clique_number_exact(f.full, cap=f.limits.clique_vertex_cap)
    w_formula, arg = _formula_clique(f.group)
    if not (w_reduced == w_formula == w_full - 1):
        raise _Outcome(
            FAIL,
            f"omega(reduced)={w_reduced}, omega(full)-1={w_full - 1}, "
            f"max weight(o(a))={w_formula} at {_label(f.group, arg)}",
        )


def _cor_clique_nilp(f: Facts) -> None:
    if not f.nilpotent:
        raise _skip("not nilpotent")
    e = exponent(f.group)
    if f.clique_reduced != weight(e):
        raise _Outcome(FAIL, f"omega(reduced)={f.clique_reduced} but weight(exp={e})={weight(e)}")


CHECKERS: dict[str, Callable[[Facts], None]] = {
    "OBS-NBHD": _obs_nbhd,
    "OBS-COMPLETE": _obs_complete,
    "LEM-LINKAGE": _lem_linkage,
    "OBS-UNIQUE-P": _obs_unique_p,
    "COR-PGRP-CONN": _cor_pgrp_conn,
    "COR-COMPONENTS": _cor_components,
    "PROP-COPRIME": _prop_coprime,
    "PROP-NPP": _prop_npp,
    "THM-NILP-CONN": _thm_nilp_conn,
    "DIAM-1": _diam_1,
    "DIAM-2": _diam_2,
    "DIAM-4": _diam_4,
    "EX-QN-3": _ex_qn_3,
    "LEM-MCD": _lem_mcd,
    "LEM-CLIQUE-CYC": _lem_clique_cyc,
    "THM-CLIQUE": _thm_clique,
    "COR-CLIQUE-NILP": _cor_clique_nilp,
}
assert tuple(CHECKERS) == CLAIM_IDS


def verify(claim_id: str, G: Group, facts: Facts | None = None) -> ClaimReport:
    if claim_id not in CHECKERS:
        raise UsageError(f"unknown claim {claim_id!r}; known: {', '.join(CLAIM_IDS)}")
    facts = facts if facts is not None and facts.group is G else Facts(G)
    start = time.perf_counter()
    try:
        CHECKERS[claim_id](facts)
        status, witness = PASS, None
    except _Outcome as out:
        status, witness = out.status, out.witness
    except ResourceError as exc:
        status, witness = SKIPPED, f"resource cap: {exc}"
    ms = (time.perf_counter() - start) * 1000.0
    return ClaimReport(claim_id, G.name, status, witness, ms)


# corpus -------------------------------------------------------------------------


def _default_spec_texts() -> list[str]:
    texts = [f"C{n}" for n in range(1, 65)]
    texts += [f"D{n}" for n in range(3, 33)]
    texts += [f"Dic{n}" for n in range(2, 17)]
    texts += ["S3", "S4", "S5", "A4", "A5"]
    texts += [f"E{p}^{k}" for p in (2, 3, 5) for k in (2, 3)]
    texts += ["S3xS3", "S3xZ6", "C2xC2", "Z6xS3", "D4xC3", "S3xC5", "C3xQ8", "C5xQ16"]
    return texts


@dataclass(frozen=True)
class Corpus:
    specs: tuple[GroupSpec, ...]
    max_order: int | None = None
    names: frozenset[str] | None = None

    @classmethod
    def from_texts(cls, texts: Iterable[str], **kwargs) -> "Corpus":
        return cls(tuple(parse_spec(t) for t in texts), **kwargs)

    def selected(self) -> list[GroupSpec]:
        out = []
        for spec in self.specs:
            if self.max_order is not None and spec_order(spec) > self.max_order:
                continue
            if self.names is not None and render_spec(spec) not in self.names:
                continue
            out.append(spec)
        return out


def default_corpus(max_order: int | None = None) -> Corpus:
    return Corpus.from_texts(_default_spec_texts(), max_order=max_order)


@dataclass(frozen=True)
class CorpusResult:
    reports: tuple[ClaimReport, ...]
    summary: dict[str, int] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.summary.get(FAIL, 0) > 0

    def to_json_obj(self, timing: bool = False) -> dict:
        return {
            "reports": [r.to_dict(timing) for r in self.reports],
            "summary": dict(self.summary),
        }


def _run_one(spec: GroupSpec, claim_ids: Sequence[str], limits: Limits | None) -> list[ClaimReport]:
    name = render_spec(spec)
    try:
        G = build_group(spec, limits=limits)
    except (ResourceError, PowerGraphError) as exc:
        return [ClaimReport(c, name, SKIPPED, f"group not constructed: {exc}") for c in claim_ids]
    facts = Facts(G, limits)
    return [verify(c, G, facts) for c in claim_ids]


def run_corpus(
    corpus: Corpus,
    claims: Iterable[str] | None = None,
    *,
    workers: int = 1,
    limits: Limits | None = None,
) -> CorpusResult:
    """Run claims over a corpus; reports come out in corpus order, then claim order."""
    claim_ids = list(CLAIM_IDS if claims is None else claims)
    for c in claim_ids:
        if c not in CHECKERS:
            raise UsageError(f"unknown claim {c!r}; known: {', '.join(CLAIM_IDS)}")
    claim_ids = [c for c in CLAIM_IDS if c in set(claim_ids)]
    specs = corpus.selected()
    if workers > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_one, specs, [claim_ids] * len(specs), [limits] * len(specs)))
    else:
        chunks = [_run_one(s, claim_ids, limits) for s in specs]
    reports = tuple(r for chunk in chunks for r in chunk)
    summary = {PASS: 0, FAIL: 0, SKIPPED: 0}
    for r in reports:
        summary[r.status] += 1
    return CorpusResult(reports, summary)
