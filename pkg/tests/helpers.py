"""Random dataset generators shared across the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from pairbound import Carrier, Element, SortedInput, sort_input
from pairbound.semigroup import (
    INTEGER_ADD,
    POSITIVE_RATIONAL_MUL,
    RATIONAL_ADD,
    natural_vector_lex_add,
)

ALL_CARRIERS = (
    INTEGER_ADD,
    RATIONAL_ADD,
    POSITIVE_RATIONAL_MUL,
    natural_vector_lex_add(3),
)


def random_raw(carrier: Carrier, rng: random.Random, span: int = 50):
    """A random raw value in the carrier's domain; small span favors ties."""
    if carrier.token == "add":
        return rng.randint(-span, span)
    if carrier.token == "radd":
        return Fraction(rng.randint(-span, span), rng.randint(1, 12))
    if carrier.token == "mul":
        return Fraction(rng.randint(1, span), rng.randint(1, 12))
    return tuple(rng.randint(0, span) for _ in range(carrier.dim or 1))


def random_input(carrier: Carrier, n: int, rng: random.Random, span: int = 50) -> SortedInput:
    """A sorted random multiset of 2n elements (duplicates allowed)."""
    return sort_input(
        [Element(carrier, random_raw(carrier, rng, span)) for _ in range(2 * n)]
    )
