"""Perfect matchings of 2n sorted elements: canonical form, enumeration, evaluation.

A matching here is a partition of the index set {1..2n} into n unordered
pairs, kept in one canonical shape (each pair written (i, j) with i < j,
pairs sorted by first index). Quotienting away the pair-order and
within-pair symmetries is what makes the number of distinct matchings the
double factorial (2n-1)!! = 1*3*5*...*(2n-1).

The enumeration order is fixed: always pair the smallest unmatched index
with each larger unmatched index in ascending order, then recurse. That is
also lexicographic order on the canonical pair sequence, and it is the row
order the CLI table command emits.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CarrierMismatchError, MatchingError
from .semigroup import Carrier, Element, combine

_PAIR_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")

IndexPair = tuple[int, int]


@dataclass(frozen=True)
class Matching:
    """A perfect matching of {1..2n}, stored canonically.

    Construction canonicalizes the given pairs and rejects anything that is
    not a partition of {1..2n} where n is the number of pairs.
    """

    pairs: tuple[IndexPair, ...]

    def __post_init__(self):
        pairs = []
        for pair in self.pairs:
            i, j = pair
            if not (isinstance(i, int) and isinstance(j, int)):
                raise MatchingError(f"pair {pair!r} is not a pair of integers")
            if i == j:
                raise MatchingError(f"pair {pair!r} repeats an index")
            pairs.append((i, j) if i < j else (j, i))
        pairs.sort()
        size = 2 * len(pairs)
        seen = sorted(index for pair in pairs for index in pair)
        if seen != list(range(1, size + 1)):
            raise MatchingError(
                f"pairs {self.pairs!r} do not partition the index set 1..{size}"
            )
        object.__setattr__(self, "pairs", tuple(pairs))

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def size(self) -> int:
        """Number of matched indices, 2n."""
        return 2 * len(self.pairs)

    def partner_map(self) -> dict[int, int]:
        partners = {}
        for i, j in self.pairs:
            partners[i] = j
            partners[j] = i
        return partners

    def contains_pair(self, pair: IndexPair) -> bool:
        i, j = pair
        return ((i, j) if i < j else (j, i)) in self.pairs

    def replace(
        self, removed: Sequence[IndexPair], inserted: Sequence[IndexPair]
    ) -> "Matching":
        """New matching with ``removed`` pairs swapped for ``inserted`` ones."""
        remaining = list(self.pairs)
        for pair in removed:
            i, j = pair
            canonical = (i, j) if i < j else (j, i)
            try:
                remaining.remove(canonical)
            except ValueError:
                raise MatchingError(f"pair {pair!r} is not in the matching") from None
        return Matching(tuple(remaining) + tuple(tuple(p) for p in inserted))

    def is_symmetric(self) -> bool:
        return self == symmetric_matching(self.n)

    def __str__(self) -> str:
        return "".join(f"({i},{j})" for i, j in self.pairs)

    @classmethod
    def parse(cls, text: str) -> "Matching":
        """Parse the textual form ``(i1,j1)(i2,j2)...(in,jn)``."""
        stripped = text.strip()
        pairs = [(int(i), int(j)) for i, j in _PAIR_RE.findall(stripped)]
        if not pairs or _PAIR_RE.sub("", stripped).strip():
            raise MatchingError(f"bad matching literal {text!r}")
        return cls(tuple(pairs))


@dataclass(frozen=True)
class SortedInput:
    """2n elements of one carrier in ascending order."""

    elements: tuple[Element, ...]
    carrier: Carrier

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise MatchingError("input is empty")
        if len(elements) % 2:
            raise MatchingError(f"input has odd length {len(elements)}")
        for element in elements:
            if element.carrier != self.carrier:
                raise CarrierMismatchError(
                    f"element {element!r} does not belong to {self.carrier.describe()}"
                )
        for left, right in zip(elements, elements[1:]):
            if left > right:
                raise MatchingError("elements are not sorted ascending")
        object.__setattr__(self, "elements", elements)

    @property
    def n(self) -> int:
        return len(self.elements) // 2

    @property
    def size(self) -> int:
        return len(self.elements)

    def values(self) -> tuple:
        """Raw carrier values, for hot loops."""
        return tuple(element.value for element in self.elements)

    def element(self, index: int) -> Element:
        """1-based access matching the index convention of pairs."""
        return self.elements[index - 1]


def sort_input(raw: Sequence[Element]) -> SortedInput:
    """Sort raw elements ascending into a :class:`SortedInput`.

    The sort is stable, so duplicates keep their input order. Empty, odd
    or mixed-carrier inputs are rejected.
    """
    elements = list(raw)
    if not elements:
        raise MatchingError("input is empty")
    if len(elements) % 2:
        raise MatchingError(f"input has odd length {len(elements)}")
    carrier = elements[0].carrier
    for element in elements[1:]:
        if element.carrier != carrier:
            raise CarrierMismatchError("input mixes carriers")
    return SortedInput(tuple(sorted(elements)), carrier)


def symmetric_matching(n: int) -> Matching:
    """The outside-in pairing (1, 2n), (2, 2n-1), ..., (n, n+1)."""
    if n < 1:
        raise MatchingError(f"n must be positive, got {n}")
    size = 2 * n
    return Matching(tuple((k, size + 1 - k) for k in range(1, n + 1)))


def count_matchings(n: int) -> int:
    """(2n-1)!! - the exact number of canonical perfect matchings of 2n items."""
    if n < 1:
        raise MatchingError(f"n must be positive, got {n}")
    return math.prod(range(1, 2 * n, 2))


def iter_pairings(n: int) -> Iterator[tuple[IndexPair, ...]]:
    """Raw canonical pair tuples in enumeration order, without Matching wrappers.

    The low-level stream behind :func:`enumerate_matchings`; exhaustive
    scans use it to avoid per-matching object overhead.
    """
    if n < 1:
        raise MatchingError(f"n must be positive, got {n}")

    def rec(unmatched: tuple[int, ...]) -> Iterator[tuple[IndexPair, ...]]:
        if not unmatched:
            yield ()
            return
        first, rest = unmatched[0], unmatched[1:]
        for position, partner in enumerate(rest):
            head = (first, partner)
            for tail in rec(rest[:position] + rest[position + 1 :]):
                yield (head,) + tail

    return rec(tuple(range(1, 2 * n + 1)))


def enumerate_matchings(n: int) -> Iterator[Matching]:
    """Yield every canonical matching of {1..2n} exactly once, lazily.

    The stream has length (2n-1)!!; callers are responsible for bounding n
    (the CLI caps exhaustive commands at n = 8 by default).
    """
    for pairs in iter_pairings(n):
        yield Matching(pairs)


@dataclass(frozen=True)
class EvaluationRow:
    """One matching's pair values with their extrema under the carrier order."""

    matching: Matching
    pair_values: tuple[Element, ...]
    max_value: Element
    min_value: Element


def evaluate(m: Matching, input: SortedInput) -> EvaluationRow:
    """Combine each pair of ``input`` under ``m`` and take max/min.

    Pair values appear in the matching's canonical pair order. Ties for the
    extrema are value ties, so any maximal element is the max.
    """
    if m.size != input.size:
        raise MatchingError(
            f"matching covers 1..{m.size} but input has {input.size} elements"
        )
    values = tuple(combine(input.element(i), input.element(j)) for i, j in m.pairs)
    return EvaluationRow(
        matching=m,
        pair_values=values,
        max_value=max(values),
        min_value=min(values),
    )
