"""Feasibility, the constructive exchange transform, certificates, and oracles.

Given 2n sorted elements, a bound N and a strict direction, a matching is
*feasible* when every pair value beats N strictly (all below N for the
upper direction, all above for the lower). The central fact this module
operationalizes: if any feasible matching exists, the symmetric matching
(1, 2n), (2, 2n-1), ... is feasible too, and it simultaneously minimizes
the maximum pair value and maximizes the minimum pair value.

The constructive side settles levels r = 1..n outside-in. At level r the
active indices are {r, ..., 2n+1-r}. If the pair (r, 2n+1-r) is already
present nothing happens; otherwise r's partner ell and 2n+1-r's partner
ell_prime are swapped into (r, 2n+1-r) and (ell, ell_prime), and the step
records three inequalities against N (for the upper direction, mirrored
for the lower):

1. the new companion pair: value(ell, ell_prime) < N,
2. the dominating removed pair: value(ell_prime, 2n+1-r) < N,
3. the new symmetric pair: value(r, 2n+1-r) < N, which follows from 2 by
   monotonicity since a_r <= a_ell_prime.

Inequality 1 can never fail (if it did, sortedness would force
N <= value(ell, ell_prime) <= value(ell_prime, 2n+1-r) < N); the engine
still checks it on every step and raises a hard theorem-violation
diagnostic rather than assuming it. At most n-1 steps are ever emitted:
the last level's two indices have no choice but to pair up.

Certificate files are JSON documents with fields ``instance`` (carrier,
elements, bound, direction), ``witness``, ``steps`` (each with level, ell,
ell_prime, removed, inserted, justifications) and ``final``. Elements use
the carriers' textual forms, matchings their canonical string form, steps
are ordered by level, and pairs by first index, so serialisation is
byte-stable and files diff cleanly. Verification never trusts a stored
value: it re-parses the document and recomputes every combine and compare.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import IO, Mapping, Union

from .errors import (
    CapExceededError,
    CarrierMismatchError,
    CertificateFormatError,
    InfeasibleWitnessError,
    MatchingError,
    PairboundError,
    TheoremViolationError,
)
from .matching import (
    EvaluationRow,
    IndexPair,
    Matching,
    SortedInput,
    count_matchings,
    evaluate,
    iter_pairings,
    symmetric_matching,
)
from .semigroup import Carrier, Element, carrier_from_token

DEFAULT_EXHAUSTIVE_CAP = 8


class Direction(Enum):
    """Which side of the bound every pair value must fall on, strictly."""

    UPPER_STRICT = "upper"
    LOWER_STRICT = "lower"

    @property
    def token(self) -> str:
        return self.value

    @property
    def relation_symbol(self) -> str:
        return "<" if self is Direction.UPPER_STRICT else ">"

    def satisfied(self, comparison: int) -> bool:
        """Whether ``compare(pair_value, bound) == comparison`` passes."""
        if self is Direction.UPPER_STRICT:
            return comparison < 0
        return comparison > 0

    @property
    def mirrored(self) -> "Direction":
        if self is Direction.UPPER_STRICT:
            return Direction.LOWER_STRICT
        return Direction.UPPER_STRICT

    @classmethod
    def from_token(cls, token: str) -> "Direction":
        for direction in cls:
            if direction.value == token:
                return direction
        raise CertificateFormatError(f"unknown direction {token!r}")


@dataclass(frozen=True)
class BoundingInstance:
    """Sorted input plus the bound and direction it is tested against."""

    input: SortedInput
    bound: Element
    direction: Direction

    def __post_init__(self):
        if self.bound.carrier != self.input.carrier:
            raise CarrierMismatchError("bound does not share the input's carrier")


@dataclass(frozen=True)
class Justification:
    """One checked inequality: the pair's value relates strictly to the bound."""

    pair: IndexPair
    value: Element
    relation: str


@dataclass(frozen=True)
class ExchangeStep:
    """One exchange: settle (level, 2n+1-level) from its two crossing pairs.

    All indices are absolute positions in the full sorted input. ``removed``
    is ((level, ell), (ell_prime, top)) and ``inserted`` is
    ((level, top), (min(ell, ell_prime), max(ell, ell_prime))).
    """

    level: int
    ell: int
    ell_prime: int
    removed: tuple[IndexPair, IndexPair]
    inserted: tuple[IndexPair, IndexPair]
    justifications: tuple[Justification, ...]

    def to_document(self) -> dict:
        return {
            "level": self.level,
            "ell": self.ell,
            "ell_prime": self.ell_prime,
            "removed": [list(pair) for pair in self.removed],
            "inserted": [list(pair) for pair in self.inserted],
            "justifications": [
                {"pair": list(j.pair), "value": j.value.text(), "relation": j.relation}
                for j in self.justifications
            ],
        }


@dataclass(frozen=True)
class Certificate:
    """A feasible witness plus exchange steps ending at the symmetric matching.

    Every field is independently checkable; :func:`verify_certificate`
    recomputes the lot from the instance elements alone.
    """

    instance: BoundingInstance
    witness: Matching
    steps: tuple[ExchangeStep, ...]
    final: Matching

    def to_document(self) -> dict:
        inst = self.instance
        carrier = inst.input.carrier
        carrier_doc: dict = {"op": carrier.token}
        if carrier.dim is not None:
            carrier_doc["dim"] = carrier.dim
        return {
            "instance": {
                "carrier": carrier_doc,
                "elements": [element.text() for element in inst.input.elements],
                "bound": inst.bound.text(),
                "direction": inst.direction.token,
            },
            "witness": str(self.witness),
            "steps": [step.to_document() for step in self.steps],
            "final": str(self.final),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2) + "\n"


def feasible(m: Matching, inst: BoundingInstance) -> bool:
    """True iff every pair value of ``m`` beats the bound strictly."""
    if m.size != inst.input.size:
        raise MatchingError(
            f"matching covers 1..{m.size} but instance has {inst.input.size} elements"
        )
    values = inst.input.values()
    bound = inst.bound.value
    carrier = inst.input.carrier
    direction = inst.direction
    return all(
        direction.satisfied(
            Carrier.compare_values(carrier.combine_values(values[i - 1], values[j - 1]), bound)
        )
        for i, j in m.pairs
    )


def theorem_check(inst: BoundingInstance, witness: Matching) -> bool:
    """Given a feasible witness, confirm the symmetric matching is feasible.

    The bounding theorems make the answer True for any lawful carrier, so a
    False outcome is never returned quietly: it raises
    :class:`TheoremViolationError` with a state dump, flagging a defect in
    a carrier law or in this package. An infeasible witness is a plain
    precondition error, distinct from a violation.
    """
    if not feasible(witness, inst):
        raise InfeasibleWitnessError(
            f"witness {witness} is not feasible for bound {inst.bound} "
            f"({inst.direction.token} direction)"
        )
    symmetric = symmetric_matching(inst.input.n)
    if not feasible(symmetric, inst):
        raise TheoremViolationError(
            "symmetric matching infeasible despite a feasible witness",
            state=_violation_state(inst, witness, symmetric=str(symmetric)),
        )
    return True


def _violation_state(inst: BoundingInstance, current: Matching, **extra) -> dict:
    state = {
        "carrier": inst.input.carrier.describe(),
        "elements": [element.text() for element in inst.input.elements],
        "bound": inst.bound.text(),
        "direction": inst.direction.token,
        "matching": str(current),
    }
    state.update(extra)
    return state


def _pair_element(inst: BoundingInstance, pair: IndexPair) -> Element:
    i, j = pair
    carrier = inst.input.carrier
    return Element(
        carrier,
        carrier.combine_values(inst.input.element(i).value, inst.input.element(j).value),
    )


def _holds(inst: BoundingInstance, value: Element) -> bool:
    return inst.direction.satisfied(Carrier.compare_values(value.value, inst.bound.value))


def exchange_transform(witness: Matching, inst: BoundingInstance) -> Certificate:
    """Transform a feasible witness into the symmetric matching, step by step.

    Returns a :class:`Certificate` with at most n-1 steps whose every
    intermediate matching stays feasible. Each step's inequalities are
    checked as they are recorded; a failed check means a broken carrier or
    engine and raises :class:`TheoremViolationError`.
    """
    if not feasible(witness, inst):
        raise InfeasibleWitnessError(
            f"witness {witness} is not feasible for bound {inst.bound} "
            f"({inst.direction.token} direction)"
        )
    n = inst.input.n
    size = inst.input.size
    relation = inst.direction.relation_symbol
    upper = inst.direction is Direction.UPPER_STRICT

    current = witness
    steps = []
    for level in range(1, n + 1):
        top = size + 1 - level
        partners = current.partner_map()
        if partners[level] == top:
            continue
        ell = partners[level]
        ell_prime = partners[top]
        removed = ((level, ell), (ell_prime, top))
        companion = (min(ell, ell_prime), max(ell, ell_prime))
        inserted = ((level, top), companion)
        # justification order is fixed: companion, dominating removed pair,
        # then the freshly settled symmetric pair
        dominating = (ell_prime, top) if upper else (level, ell)
        justifications = tuple(
            Justification(pair, _pair_element(inst, pair), relation)
            for pair in (companion, dominating, (level, top))
        )
        for justification in justifications:
            if not _holds(inst, justification.value):
                raise TheoremViolationError(
                    f"exchange step at level {level} failed its justification "
                    f"{justification.pair}: {justification.value} "
                    f"{relation} {inst.bound} is false",
                    state=_violation_state(
                        inst,
                        current,
                        level=level,
                        ell=ell,
                        ell_prime=ell_prime,
                        failing_pair=justification.pair,
                    ),
                )
        current = current.replace(removed, inserted)
        if not feasible(current, inst):
            raise TheoremViolationError(
                f"intermediate matching after level {level} is infeasible",
                state=_violation_state(inst, current, level=level),
            )
        steps.append(
            ExchangeStep(
                level=level,
                ell=ell,
                ell_prime=ell_prime,
                removed=removed,
                inserted=inserted,
                justifications=justifications,
            )
        )
    if current != symmetric_matching(n):
        raise TheoremViolationError(
            "exchange loop did not terminate at the symmetric matching",
            state=_violation_state(inst, current),
        )
    return Certificate(instance=inst, witness=witness, steps=tuple(steps), final=current)


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of certificate verification; truthy iff the certificate is valid."""

    ok: bool
    reason: str | None = None
    steps_checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


CertificateLike = Union[Certificate, Mapping]


def verify_certificate(cert: CertificateLike) -> VerificationResult:
    """Re-check a certificate from scratch; never raises.

    Accepts a typed :class:`Certificate` or a raw JSON-shaped mapping (the
    file format). Verification is total: malformed documents come back as
    failures with a reason, and no stored value is trusted - elements are
    re-parsed and every combine and compare is recomputed.
    """
    document = cert.to_document() if isinstance(cert, Certificate) else cert
    try:
        return _verify_document(document)
    except (PairboundError, KeyError, TypeError, ValueError, AttributeError, IndexError) as exc:
        return VerificationResult(False, f"malformed certificate: {exc!r}")


def _int_field(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise CertificateFormatError(f"expected an integer, got {value!r}")
    return value


def _as_pair_list(raw) -> tuple[IndexPair, ...]:
    return tuple((_int_field(pair[0]), _int_field(pair[1])) for pair in raw)


def _verify_document(document: Mapping) -> VerificationResult:
    def fail(reason: str) -> VerificationResult:
        return VerificationResult(False, reason)

    instance_doc = document["instance"]
    carrier_doc = instance_doc["carrier"]
    carrier = carrier_from_token(str(carrier_doc["op"]), carrier_doc.get("dim"))
    element_texts = instance_doc["elements"]
    values = [carrier.parse_value(str(text)) for text in element_texts]
    if len(values) < 2 or len(values) % 2:
        return fail("instance element count is not a positive even number")
    for left, right in zip(values, values[1:]):
        if Carrier.compare_values(left, right) > 0:
            return fail("instance elements are not sorted ascending")
    bound = carrier.parse_value(str(instance_doc["bound"]))
    direction = Direction.from_token(str(instance_doc["direction"]))
    n = len(values) // 2
    size = 2 * n
    upper = direction is Direction.UPPER_STRICT

    def pair_value(pair: IndexPair):
        i, j = pair
        return carrier.combine_values(values[i - 1], values[j - 1])

    def holds(value) -> bool:
        return direction.satisfied(Carrier.compare_values(value, bound))

    def matching_feasible(m: Matching) -> bool:
        return all(holds(pair_value(pair)) for pair in m.pairs)

    witness = Matching.parse(str(document["witness"]))
    if witness.size != size:
        return fail("witness does not cover the instance index range")
    if not matching_feasible(witness):
        return fail("witness is infeasible")

    current = witness
    previous_level = 0
    steps = document["steps"]
    if not isinstance(steps, (list, tuple)):
        return fail("steps is not a list")
    for number, step in enumerate(steps, start=1):
        level = _int_field(step["level"])
        ell = _int_field(step["ell"])
        ell_prime = _int_field(step["ell_prime"])
        if level <= previous_level:
            return fail(f"step {number}: levels are not strictly increasing")
        previous_level = level
        top = size + 1 - level
        if not (1 <= level < ell < top and level < ell_prime < top and ell != ell_prime):
            return fail(f"step {number}: exchange indices out of range")
        removed = _as_pair_list(step["removed"])
        inserted = _as_pair_list(step["inserted"])
        companion = (min(ell, ell_prime), max(ell, ell_prime))
        if removed != ((level, ell), (ell_prime, top)):
            return fail(f"step {number}: removed pairs do not match the exchange indices")
        if inserted != ((level, top), companion):
            return fail(f"step {number}: inserted pairs do not match the exchange indices")
        for pair in removed:
            if not current.contains_pair(pair):
                return fail(f"step {number}: removed pair {pair} is not present")
        for pair in inserted:
            if current.contains_pair(pair):
                return fail(f"step {number}: inserted pair {pair} is already present")

        dominating = (ell_prime, top) if upper else (level, ell)
        expected_pairs = (companion, dominating, (level, top))
        justifications = step["justifications"]
        if len(justifications) != len(expected_pairs):
            return fail(f"step {number}: expected {len(expected_pairs)} justifications")
        recomputed = {}
        for justification, expected_pair in zip(justifications, expected_pairs):
            stored_pair = (
                _int_field(justification["pair"][0]),
                _int_field(justification["pair"][1]),
            )
            if stored_pair != expected_pair:
                return fail(
                    f"step {number}: justification pair {stored_pair} does not "
                    f"match expected {expected_pair}"
                )
            value = pair_value(expected_pair)
            stored_value = carrier.parse_value(str(justification["value"]))
            if Carrier.compare_values(stored_value, value) != 0:
                return fail(
                    f"step {number}: justification mismatch for pair {expected_pair} "
                    f"(stored {carrier.format_value(stored_value)}, "
                    f"recomputed {carrier.format_value(value)})"
                )
            if str(justification["relation"]) != direction.relation_symbol:
                return fail(f"step {number}: justification relation mismatch")
            if not holds(value):
                return fail(
                    f"step {number}: justification inequality fails for pair {expected_pair}"
                )
            recomputed[expected_pair] = value
        # the settled symmetric pair must be dominated by (upper) or dominate
        # (lower) the removed pair it was deduced from
        deduction = Carrier.compare_values(recomputed[(level, top)], recomputed[dominating])
        if (upper and deduction > 0) or (not upper and deduction < 0):
            return fail(f"step {number}: monotonicity deduction violated")
        current = current.replace(removed, inserted)
        if not matching_feasible(current):
            return fail(f"step {number}: intermediate matching is infeasible")

    final = Matching.parse(str(document["final"]))
    if final != current:
        return fail("final matching does not equal the result of the steps")
    if final != symmetric_matching(n):
        return fail("final matching is not symmetric")
    return VerificationResult(True, None, steps_checked=len(steps))


def document_to_certificate(document: Mapping) -> Certificate:
    """Strictly convert a JSON-shaped document into a typed Certificate.

    Raises :class:`CertificateFormatError` on structural problems. Semantic
    validity is still :func:`verify_certificate`'s call.
    """
    try:
        instance_doc = document["instance"]
        carrier_doc = instance_doc["carrier"]
        carrier = carrier_from_token(str(carrier_doc["op"]), carrier_doc.get("dim"))
        elements = tuple(carrier.parse(str(text)) for text in instance_doc["elements"])
        input = SortedInput(elements, carrier)
        inst = BoundingInstance(
            input=input,
            bound=carrier.parse(str(instance_doc["bound"])),
            direction=Direction.from_token(str(instance_doc["direction"])),
        )
        steps = tuple(
            ExchangeStep(
                level=_int_field(step["level"]),
                ell=_int_field(step["ell"]),
                ell_prime=_int_field(step["ell_prime"]),
                removed=_as_pair_list(step["removed"]),
                inserted=_as_pair_list(step["inserted"]),
                justifications=tuple(
                    Justification(
                        pair=(_int_field(j["pair"][0]), _int_field(j["pair"][1])),
                        value=carrier.parse(str(j["value"])),
                        relation=str(j["relation"]),
                    )
                    for j in step["justifications"]
                ),
            )
            for step in _step_list(document["steps"])
        )
        return Certificate(
            instance=inst,
            witness=Matching.parse(str(document["witness"])),
            steps=steps,
            final=Matching.parse(str(document["final"])),
        )
    except CertificateFormatError:
        raise
    except (PairboundError, KeyError, TypeError, ValueError, IndexError) as exc:
        raise CertificateFormatError(f"cannot load certificate: {exc}") from exc


def _step_list(raw) -> list:
    if not isinstance(raw, (list, tuple)):
        raise CertificateFormatError("steps is not a list")
    return list(raw)


def dump_certificate(cert: Certificate, stream: IO[str]) -> None:
    stream.write(cert.to_json())


def load_certificate_document(stream: IO[str]) -> dict:
    """Read a certificate file into its raw document form (verification input)."""
    return json.load(stream)


def _require_within_cap(n: int, cap: int | None) -> None:
    limit = DEFAULT_EXHAUSTIVE_CAP if cap is None else cap
    if n > limit:
        raise CapExceededError(
            f"n={n} exceeds the exhaustive-scan cap {limit}; raise the cap to proceed"
        )


def _scan_extremes(input: SortedInput):
    """One pass over all pairings, tracking best max and best min pair values.

    First winner in enumeration order is kept on ties, which is also the
    lexicographically least canonical matching.
    """
    values = input.values()
    carrier = input.carrier
    combine_values = carrier.combine_values
    compare_values = Carrier.compare_values
    best_max = best_min = None
    best_max_pairs = best_min_pairs = None
    scanned = 0
    for pairs in iter_pairings(input.n):
        scanned += 1
        first_i, first_j = pairs[0]
        high = low = combine_values(values[first_i - 1], values[first_j - 1])
        for i, j in pairs[1:]:
            value = combine_values(values[i - 1], values[j - 1])
            if compare_values(value, high) > 0:
                high = value
            elif compare_values(value, low) < 0:
                low = value
        if best_max is None or compare_values(high, best_max) < 0:
            best_max = high
            best_max_pairs = pairs
        if best_min is None or compare_values(low, best_min) > 0:
            best_min = low
            best_min_pairs = pairs
    return best_max_pairs, best_max, best_min_pairs, best_min, scanned


def minimax_matching(
    input: SortedInput, cap: int | None = None
) -> tuple[Matching, Element]:
    """Brute-force matching minimizing the maximum pair value.

    Scans the full enumeration (ties: first in enumeration order), so the
    cap applies; it defaults to n <= 8.
    """
    _require_within_cap(input.n, cap)
    best_max_pairs, best_max, _, _, _ = _scan_extremes(input)
    return Matching(best_max_pairs), Element(input.carrier, best_max)


def maximin_matching(
    input: SortedInput, cap: int | None = None
) -> tuple[Matching, Element]:
    """Brute-force matching maximizing the minimum pair value."""
    _require_within_cap(input.n, cap)
    _, _, best_min_pairs, best_min, _ = _scan_extremes(input)
    return Matching(best_min_pairs), Element(input.carrier, best_min)


@dataclass(frozen=True)
class OptimalityReport:
    """Symmetric matching's extrema checked against the brute-force oracle."""

    input: SortedInput
    symmetric: EvaluationRow
    minimax_matching: Matching
    minimax_value: Element
    maximin_matching: Matching
    maximin_value: Element
    matchings_scanned: int

    @property
    def passed(self) -> bool:
        return (
            self.symmetric.max_value == self.minimax_value
            and self.symmetric.min_value == self.maximin_value
        )


def optimality_report(input: SortedInput, cap: int | None = None) -> OptimalityReport:
    """Evaluate the symmetric matching and compare with the exhaustive oracle.

    The symmetric max must equal the oracle's minimax value and the
    symmetric min the oracle's maximin value; ``passed`` says whether both
    held. Scanned count is (2n-1)!!.
    """
    _require_within_cap(input.n, cap)
    best_max_pairs, best_max, best_min_pairs, best_min, scanned = _scan_extremes(input)
    carrier = input.carrier
    symmetric = evaluate(symmetric_matching(input.n), input)
    assert scanned == count_matchings(input.n)
    return OptimalityReport(
        input=input,
        symmetric=symmetric,
        minimax_matching=Matching(best_max_pairs),
        minimax_value=Element(carrier, best_max),
        maximin_matching=Matching(best_min_pairs),
        maximin_value=Element(carrier, best_min),
        matchings_scanned=scanned,
    )
