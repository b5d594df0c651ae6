"""Totally ordered commutative semigroups and their built-in carriers.

A carrier packages a commutative, associative operation together with a
total order that respects it: whenever ``a <= b`` and ``c <= d``, also
``combine(a, c) <= combine(b, d)``. Four carriers are built in:

* ``INTEGER_ADD`` - arbitrary-precision integers under addition (negatives
  allowed; adding a constant to every element shifts all pair sums by the
  same amount, so sign restrictions would buy nothing),
* ``RATIONAL_ADD`` - exact rationals under addition,
* ``POSITIVE_RATIONAL_MUL`` - strictly positive exact rationals under
  multiplication (zero or negative factors would break monotonicity),
* ``natural_vector_lex_add(dim)`` - fixed-dimension vectors of non-negative
  integers under componentwise addition, ordered lexicographically.

All arithmetic is exact; no floats appear anywhere. Strict inequalities
against a bound are what the rest of the package decides, and a rounded
comparison would silently corrupt them.

Textual forms (used verbatim by the CLI and in certificate files):
integers are optional-sign decimals (``-12``), rationals are ``p/q`` in
lowest terms with ``q > 0`` (a denominator of 1 prints as a bare integer,
and both shapes re-parse), vectors are ``(n1,n2,...,nk)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from random import Random
from typing import Iterable, Sequence, Union

from .errors import CarrierMismatchError, DomainError, ElementParseError

Value = Union[int, Fraction, tuple]

_INT_RE = re.compile(r"[+-]?\d+\Z")
_RATIONAL_RE = re.compile(r"([+-]?\d+)(?:/(\d+))?\Z")
_VECTOR_COMPONENT_RE = re.compile(r"\d+\Z")


class CarrierKind(Enum):
    INTEGER_ADD = "add"
    RATIONAL_ADD = "radd"
    POSITIVE_RATIONAL_MUL = "mul"
    NATURAL_VECTOR_LEX_ADD = "lexadd"


@dataclass(frozen=True)
class Carrier:
    """One concrete ordered commutative semigroup.

    ``dim`` is only meaningful for the lexicographic vector carrier and is
    fixed per instance; elements of a different dimension are rejected at
    construction.
    """

    kind: CarrierKind
    dim: int | None = None

    def __post_init__(self):
        if self.kind is CarrierKind.NATURAL_VECTOR_LEX_ADD:
            if not isinstance(self.dim, int) or self.dim < 1:
                raise DomainError("vector carrier needs a positive integer dimension")
        elif self.dim is not None:
            raise DomainError(f"carrier {self.kind.value} takes no dimension")

    @property
    def token(self) -> str:
        """Short name used on the CLI and in JSON documents."""
        return self.kind.value

    @property
    def is_additive(self) -> bool:
        return self.kind is not CarrierKind.POSITIVE_RATIONAL_MUL

    @property
    def operation_symbol(self) -> str:
        return "+" if self.is_additive else "*"

    def describe(self) -> str:
        if self.kind is CarrierKind.NATURAL_VECTOR_LEX_ADD:
            return f"lexadd (dim {self.dim})"
        return self.token

    # -- raw-value operations ------------------------------------------------
    # These work on unwrapped values (int / Fraction / tuple) and are the
    # hot path for exhaustive scans; Element wraps them.

    def validate_value(self, value) -> Value:
        """Normalize ``value`` into the carrier's domain or raise DomainError."""
        kind = self.kind
        if kind is CarrierKind.INTEGER_ADD:
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise DomainError(f"{value} is not an integer")
                return int(value)
            if isinstance(value, int):
                return int(value)
            raise DomainError(f"integer carrier cannot hold {value!r}")
        if kind in (CarrierKind.RATIONAL_ADD, CarrierKind.POSITIVE_RATIONAL_MUL):
            if not isinstance(value, (int, Fraction)):
                raise DomainError(f"rational carrier cannot hold {value!r}")
            value = Fraction(value)
            if kind is CarrierKind.POSITIVE_RATIONAL_MUL and value <= 0:
                raise DomainError(f"{value} is not strictly positive")
            return value
        # lexicographic vectors
        if not isinstance(value, (tuple, list)):
            raise DomainError(f"vector carrier cannot hold {value!r}")
        if len(value) != self.dim:
            raise DomainError(f"expected {self.dim} components, got {len(value)}")
        components = []
        for component in value:
            if not isinstance(component, int) or isinstance(component, bool):
                raise DomainError(f"vector component {component!r} is not an integer")
            if component < 0:
                raise DomainError(f"vector component {component} is negative")
            components.append(component)
        return tuple(components)

    def combine_values(self, a: Value, b: Value) -> Value:
        if self.kind is CarrierKind.POSITIVE_RATIONAL_MUL:
            return a * b
        if self.kind is CarrierKind.NATURAL_VECTOR_LEX_ADD:
            return tuple(x + y for x, y in zip(a, b))
        return a + b

    @staticmethod
    def compare_values(a: Value, b: Value) -> int:
        # tuples compare lexicographically, which is exactly the vector order
        return (a > b) - (a < b)

    def format_value(self, value: Value) -> str:
        if isinstance(value, tuple):
            return "(" + ",".join(str(c) for c in value) + ")"
        return str(value)

    def parse_value(self, text: str) -> Value:
        """Parse one textual literal into a raw domain value."""
        text = text.strip()
        kind = self.kind
        if kind is CarrierKind.INTEGER_ADD:
            if not _INT_RE.match(text):
                raise ElementParseError(f"bad integer literal {text!r}")
            return int(text)
        if kind in (CarrierKind.RATIONAL_ADD, CarrierKind.POSITIVE_RATIONAL_MUL):
            match = _RATIONAL_RE.match(text)
            if not match:
                raise ElementParseError(f"bad rational literal {text!r}")
            numerator, denominator = match.groups()
            if denominator is not None and int(denominator) == 0:
                raise ElementParseError(f"zero denominator in {text!r}")
            value = Fraction(int(numerator), int(denominator) if denominator else 1)
            return self.validate_value(value)
        if not (text.startswith("(") and text.endswith(")")):
            raise ElementParseError(f"bad vector literal {text!r}")
        parts = text[1:-1].split(",")
        components = []
        for part in parts:
            part = part.strip()
            if not _VECTOR_COMPONENT_RE.match(part):
                raise ElementParseError(f"bad vector component {part!r} in {text!r}")
            components.append(int(part))
        return self.validate_value(tuple(components))

    # -- element conveniences --------------------------------------------------

    def element(self, value) -> "Element":
        return Element(self, value)

    def parse(self, text: str) -> "Element":
        return Element(self, self.parse_value(text))


INTEGER_ADD = Carrier(CarrierKind.INTEGER_ADD)
RATIONAL_ADD = Carrier(CarrierKind.RATIONAL_ADD)
POSITIVE_RATIONAL_MUL = Carrier(CarrierKind.POSITIVE_RATIONAL_MUL)


def natural_vector_lex_add(dim: int) -> Carrier:
    return Carrier(CarrierKind.NATURAL_VECTOR_LEX_ADD, dim)


def carrier_from_token(token: str, dim: int | None = None) -> Carrier:
    """Resolve a CLI/JSON carrier name (``add``/``radd``/``mul``/``lexadd``)."""
    try:
        kind = CarrierKind(token)
    except ValueError:
        raise ElementParseError(f"unknown carrier {token!r}") from None
    if kind is CarrierKind.NATURAL_VECTOR_LEX_ADD:
        if dim is None:
            raise ElementParseError("carrier 'lexadd' needs a dimension")
        return Carrier(kind, dim)
    if dim is not None:
        raise ElementParseError(f"carrier {token!r} takes no dimension")
    return Carrier(kind)


@dataclass(frozen=True)
class Element:
    """An exact value tagged with its carrier.

    Rich comparisons delegate to the carrier's total order, so built-ins
    like ``sorted``, ``min`` and ``max`` work directly on elements of one
    carrier. Comparing across carriers raises.
    """

    carrier: Carrier
    value: Value

    def __post_init__(self):
        object.__setattr__(self, "value", self.carrier.validate_value(self.value))

    def text(self) -> str:
        return self.carrier.format_value(self.value)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"Element({self.text()!r}, {self.carrier.describe()})"

    def _require_same_carrier(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"cannot compare Element with {type(other).__name__}")
        if other.carrier != self.carrier:
            raise CarrierMismatchError(
                f"carrier mismatch: {self.carrier.describe()} vs {other.carrier.describe()}"
            )

    def __lt__(self, other: "Element") -> bool:
        self._require_same_carrier(other)
        return self.value < other.value

    def __le__(self, other: "Element") -> bool:
        self._require_same_carrier(other)
        return self.value <= other.value

    def __gt__(self, other: "Element") -> bool:
        self._require_same_carrier(other)
        return self.value > other.value

    def __ge__(self, other: "Element") -> bool:
        self._require_same_carrier(other)
        return self.value >= other.value


def combine(a: Element, b: Element) -> Element:
    """The semigroup operation: sum, product, or componentwise vector sum."""
    a._require_same_carrier(b)
    return Element(a.carrier, a.carrier.combine_values(a.value, b.value))


def compare(a: Element, b: Element) -> int:
    """Total-order comparison: negative, zero or positive like an old-style cmp."""
    a._require_same_carrier(b)
    return Carrier.compare_values(a.value, b.value)


def parse_element(carrier: Carrier, text: str) -> Element:
    return carrier.parse(text)


def check_monotonicity_law(
    carrier: Carrier, samples: Iterable[Sequence[Element]]
) -> list[tuple[Element, Element, Element, Element]]:
    """Return every quadruple (a, b, c, d) for which the order law fails.

    Each quadruple must already satisfy ``a <= b`` and ``c <= d``; the law
    then demands ``combine(a, c) <= combine(b, d)``. Built-in carriers are
    expected to return an empty list for any valid sample set.
    """
    violations = []
    for quad in samples:
        a, b, c, d = quad
        for element in (b, c, d):
            a._require_same_carrier(element)
        if a > b or c > d:
            raise ValueError(f"quadruple {quad!r} is not ordered (need a <= b and c <= d)")
        if combine(a, c) > combine(b, d):
            violations.append((a, b, c, d))
    return violations


def strictly_greater(element: Element) -> Element:
    """Some in-domain value strictly above ``element``.

    For integers and vectors this is the immediate successor (+1 on the
    value, or on the last component); rationals are dense, so any strictly
    larger value does, and +1 keeps multiplicative elements positive.
    """
    carrier = element.carrier
    if carrier.kind is CarrierKind.NATURAL_VECTOR_LEX_ADD:
        bumped = element.value[:-1] + (element.value[-1] + 1,)
        return Element(carrier, bumped)
    return Element(carrier, element.value + 1)


def strictly_less(element: Element) -> Element | None:
    """Some in-domain value strictly below ``element``, or None if none exists.

    Only the all-zero vector has nothing below it; positive rationals can
    always be halved and the additive carriers allow negatives.
    """
    carrier = element.carrier
    kind = carrier.kind
    if kind is CarrierKind.POSITIVE_RATIONAL_MUL:
        return Element(carrier, element.value / 2)
    if kind is CarrierKind.NATURAL_VECTOR_LEX_ADD:
        components = list(element.value)
        for index in range(len(components) - 1, -1, -1):
            if components[index] > 0:
                components[index] -= 1
                return Element(carrier, tuple(components))
        return None
    return Element(carrier, element.value - 1)


def random_element(carrier: Carrier, rng: Random, span: int = 1000) -> Element:
    """Draw a pseudo-random element, for law sampling and randomized scans."""
    kind = carrier.kind
    if kind is CarrierKind.INTEGER_ADD:
        return Element(carrier, rng.randint(-span, span))
    if kind is CarrierKind.RATIONAL_ADD:
        return Element(carrier, Fraction(rng.randint(-span, span), rng.randint(1, span)))
    if kind is CarrierKind.POSITIVE_RATIONAL_MUL:
        return Element(carrier, Fraction(rng.randint(1, span), rng.randint(1, span)))
    return Element(carrier, tuple(rng.randint(0, span) for _ in range(carrier.dim)))


@dataclass(frozen=True)
class LawCheckReport:
    """Outcome of randomized law sampling on one carrier."""

    carrier: Carrier
    samples: int
    seed: int
    monotonicity_violations: int
    commutativity_violations: int
    associativity_violations: int
    order_violations: int

    @property
    def ok(self) -> bool:
        return (
            self.monotonicity_violations
            == self.commutativity_violations
            == self.associativity_violations
            == self.order_violations
            == 0
        )


def run_law_samples(carrier: Carrier, samples: int = 1000, seed: int = 0) -> LawCheckReport:
    """Sample the carrier laws: monotonicity, commutativity, associativity, order.

    Draws ``samples`` quadruples with a deterministic RNG. Monotonicity goes
    through :func:`check_monotonicity_law` (quadruples oriented first);
    the remaining laws are checked directly on the same draws.
    """
    rng = Random(seed)
    quads = []
    commutativity = associativity = order = 0
    for _ in range(samples):
        a, b, c, d = (random_element(carrier, rng) for _ in range(4))
        lo_ab, hi_ab = (a, b) if a <= b else (b, a)
        lo_cd, hi_cd = (c, d) if c <= d else (d, c)
        quads.append((lo_ab, hi_ab, lo_cd, hi_cd))
        if combine(a, b) != combine(b, a):
            commutativity += 1
        if combine(combine(a, b), c) != combine(a, combine(b, c)):
            associativity += 1
        # reflexivity, antisymmetry of the comparison, and transitivity
        if compare(a, a) != 0 or compare(a, b) != -compare(b, a):
            order += 1
        if a <= b and b <= c and not a <= c:
            order += 1
    monotonicity = len(check_monotonicity_law(carrier, quads))
    return LawCheckReport(
        carrier=carrier,
        samples=samples,
        seed=seed,
        monotonicity_violations=monotonicity,
        commutativity_violations=commutativity,
        associativity_violations=associativity,
        order_violations=order,
    )
