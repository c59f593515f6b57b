"""Enumeration of generalized integers in nondecreasing value order.

The generalized integers are the free commutative monoid on the system's
primes; distinct factorizations are distinct elements even when their
numeric values coincide.  Enumeration works in log-space with a min-heap
seeded by the unit element: popping an element pushes its products with
every prime whose index is >= the element's largest used index, so each
element is generated exactly once without a dedup set.

Determinism: an element's log-value is the left-to-right fold of its prime
logs in index order (repeated addition for powers), the same arithmetic the
heap performs incrementally.  Ties in log-value are broken by the
lexicographically smallest dense exponent vector, read from prime index 0.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterator

from .errors import CutoffExceedsPrefixError, EnumerationCapError, InputError
from .systems import PrimeSystem, log_cutoff

DEFAULT_CAP = 10**8

ExponentPairs = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Element:
    """A generalized integer: sparse exponent map plus cached log-value.

    ``exponents`` is a tuple of (prime_index, exponent) pairs sorted by
    index, empty for the unit element.  Equality is equality of exponent
    maps; the cached log never participates.
    """

    exponents: ExponentPairs
    log_value: float

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash(self.exponents)

    @property
    def is_unit(self) -> bool:
        return not self.exponents

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def recomputed_log(self, system: PrimeSystem) -> float:
        """Left-fold of prime logs in index order; matches the cache to ulps."""
        return fold_log(self.exponents, system.log_primes)


def fold_log(pairs: ExponentPairs, log_primes) -> float:
    total = 0.0
    for idx, exp in pairs:
        lp = log_primes[idx]
        for _ in range(exp):
            total += lp
    return total


class lex_key:
    """Orders sparse exponent tuples by their dense-vector lexicographic order.

    Comparing (index, exponent) pair lists directly gets the absent-index
    case backwards, so this walks both supports in index order: at the first
    index where the exponents differ, the smaller exponent wins.
    """

    __slots__ = ("pairs",)

    def __init__(self, pairs: ExponentPairs):
        self.pairs = pairs

    def __lt__(self, other: "lex_key") -> bool:
        a, b = self.pairs, other.pairs
        i = j = 0
        while i < len(a) and j < len(b):
            ia, ea = a[i]
            ib, eb = b[j]
            if ia == ib:
                if ea != eb:
                    return ea < eb
                i += 1
                j += 1
            elif ia < ib:
                # a has a positive exponent where b has zero
                return False
            else:
                return True
        if i < len(a):
            return False
        return j < len(b)

    def __eq__(self, other) -> bool:
        return self.pairs == other.pairs


def _validate_enumeration_args(system: PrimeSystem, x_max: float) -> None:
    if not (x_max > 1.0 and math.isfinite(x_max)):
        raise InputError(f"x_max must be a finite value > 1, got {x_max!r}")
    if not system.covers(x_max):
        raise CutoffExceedsPrefixError(
            f"x_max={x_max!r} exceeds the stored prime prefix "
            f"(complete below {system.complete_below!r})"
        )


def enumerate_elements(
    system: PrimeSystem, x_max: float, cap: int = DEFAULT_CAP
) -> Iterator[Element]:
    """Yield every element with value < x_max, nondecreasing, unit first.

    Raises CutoffExceedsPrefixError when the stored primes do not cover
    x_max and EnumerationCapError after ``cap`` elements.
    """
    _validate_enumeration_args(system, x_max)
    bound = log_cutoff(x_max)
    log_primes = system.log_primes.tolist()
    n_primes = len(log_primes)

    heap: list[tuple[float, lex_key, ExponentPairs]] = [(0.0, lex_key(()), ())]
    yielded = 0
    while heap:
        log_value, _, pairs = heapq.heappop(heap)
        yielded += 1
        if yielded > cap:
            raise EnumerationCapError(
                f"enumeration exceeded the cap of {cap} elements"
            )
        yield Element(pairs, log_value)

        start = pairs[-1][0] if pairs else 0
        for i in range(start, n_primes):
            child_log = log_value + log_primes[i]
            if child_log >= bound:
                break
            if pairs and i == start:
                child_pairs = pairs[:-1] + ((i, pairs[-1][1] + 1),)
            else:
                child_pairs = pairs + ((i, 1),)
            heapq.heappush(heap, (child_log, lex_key(child_pairs), child_pairs))


def element_value(element: Element, system: PrimeSystem) -> float:
    """Value of an element, exp of its cached log (log-domain arithmetic)."""
    for idx, _ in element.exponents:
        if not 0 <= idx < len(system):
            raise InputError(f"prime index {idx} out of range for {system.label}")
    return math.exp(element.log_value)
