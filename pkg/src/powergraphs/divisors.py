"""Euler phi, divisor chains and the phi-weight of maximal divisor chains.

A *CD-set* of ``n`` is a set of divisors of ``n``, all greater than 1, that is
totally ordered by divisibility. A maximal one (an *MCD-set*) is exactly a
chain ``d1 | d2 | ... | dt = n`` with ``d1`` prime and every ratio
``d(i+1)/d(i)`` prime. ``weight(n)`` is the largest phi-sum over such chains;
it equals the clique number of the reduced power graph of the cyclic group of
order ``n``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .config import default_limits
from .errors import ResourceError, UsageError

__all__ = [
    "MCDSet",
    "euler_phi",
    "factorize",
    "divisors",
    "is_prime",
    "enumerate_mcd_sets",
    "mcd_sets_by_definition",
    "is_mcd_chain",
    "weight_of_set",
    "weight",
]

MAX_FACTOR_INPUT = 10**9


@functools.lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, as ascending ``(prime, exponent)`` pairs."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"factorize expects a positive integer, got {n!r}")
    if n > MAX_FACTOR_INPUT:
        raise UsageError(f"factorize is limited to n <= {MAX_FACTOR_INPUT}, got {n}")
    result = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            result.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        result.append((n, 1))
    return tuple(result)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"euler_phi expects n >= 1, got {n!r}")
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def is_mcd_chain(n: int, chain: tuple[int, ...]) -> bool:
    """The prime-step characterization of a maximal CD-set of ``n``."""
    if not chain or chain[-1] != n or not is_prime(chain[0]):
        return False
    return all(b % a == 0 and is_prime(b // a) for a, b in zip(chain, chain[1:]))


@dataclass(frozen=True, order=True)
class MCDSet:
    n: int
    chain: tuple[int, ...]
    weight: int

    def __post_init__(self) -> None:
        if not is_mcd_chain(self.n, self.chain):
            raise UsageError(f"{self.chain} is not a maximal divisor chain of {self.n}")
        if self.weight != sum(euler_phi(d) for d in self.chain):
            raise UsageError(f"weight {self.weight} does not match chain {self.chain}")

    @classmethod
    def from_chain(cls, n: int, chain) -> "MCDSet":
        chain = tuple(chain)
        return cls(n, chain, sum(euler_phi(d) for d in chain) if chain else 0)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.chain)) + "}"


def weight_of_set(mcd: MCDSet) -> int:
    return sum(euler_phi(d) for d in mcd.chain)


def enumerate_mcd_sets(n: int, cap: int | None = None) -> list[MCDSet]:
    """All MCD-sets of ``n`` in lexicographic order of their chains.

    Each chain is a way of building ``n`` one prime factor at a time, so the
    count is the multinomial number of orderings of the prime multiset.
    """
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"enumerate_mcd_sets expects n >= 1, got {n!r}")
    if n == 1:
        return []
    if cap is None:
        cap = default_limits().mcd_set_cap
    fac = factorize(n)
    total = math.factorial(sum(e for _, e in fac))
    for _, e in fac:
        total //= math.factorial(e)
    if total > cap:
        raise ResourceError(f"{n} has {total} MCD-sets, above the cap of {cap}")

    out: list[MCDSet] = []
    primes = [p for p, _ in fac]

    def extend(chain: list[int]) -> None:
        top = chain[-1]
        if top == n:
            out.append(MCDSet.from_chain(n, chain))
            return
        rest = n // top
        for p in primes:
            if rest % p == 0:
                chain.append(top * p)
                extend(chain)
                chain.pop()

    for p in primes:
        extend([p])
    return out


def mcd_sets_by_definition(n: int) -> list[tuple[int, ...]]:
    """Maximal CD-sets straight from the definition, without the prime-step shortcut.

    Enumerates every divisibility chain among the divisors > 1 and keeps the
    ones that no further divisor can join. Exponential; meant as an oracle for
    small ``n``.
    """
    divs = [d for d in divisors(n) if d > 1]
    chains: list[tuple[int, ...]] = []

    def grow(chain: tuple[int, ...], start: int) -> None:
        chains.append(chain)
        for idx in range(start, len(divs)):
            d = divs[idx]
            if d % chain[-1] == 0:
                grow(chain + (d,), idx + 1)

    for i, d in enumerate(divs):
        grow((d,), i + 1)

    def extendable(chain: tuple[int, ...]) -> bool:
        members = set(chain)
        return any(
            d not in members and all(d % c == 0 or c % d == 0 for c in chain)
            for d in divs
        )

    return sorted(c for c in chains if not extendable(c))


@functools.lru_cache(maxsize=None)
def weight(n: int) -> int:
    """Maximum phi-weight over all MCD-sets of ``n``; ``weight(1) == 0``."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"weight expects n >= 1, got {n!r}")
    if n == 1:
        return 0
    return euler_phi(n) + max(weight(n // p) for p in prime_divisors(n))

