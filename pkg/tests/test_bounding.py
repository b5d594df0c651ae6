"""Feasibility, the exchange transform, and the brute-force oracles."""

from __future__ import annotations

import random

import pytest

from helpers import random_input
from pairbound import (
    BoundingInstance,
    CapExceededError,
    CarrierMismatchError,
    CertificateFormatError,
    Direction,
    Element,
    InfeasibleWitnessError,
    Matching,
    TheoremViolationError,
    count_matchings,
    enumerate_matchings,
    evaluate,
    exchange_transform,
    feasible,
    maximin_matching,
    minimax_matching,
    optimality_report,
    sort_input,
    strictly_greater,
    strictly_less,
    symmetric_matching,
    theorem_check,
    verify_certificate,
)
from pairbound.semigroup import INTEGER_ADD, POSITIVE_RATIONAL_MUL, carrier_from_token
from table_fixtures import REFERENCE_TABLES


def int_input(*values):
    return sort_input([INTEGER_ADD.element(v) for v in values])


def upper(input, bound):
    return BoundingInstance(
        input=input,
        bound=input.carrier.element(bound),
        direction=Direction.UPPER_STRICT,
    )


def lower(input, bound):
    return BoundingInstance(
        input=input,
        bound=input.carrier.element(bound),
        direction=Direction.LOWER_STRICT,
    )


ONE_TO_SIX = int_input(1, 2, 3, 4, 5, 6)


# -- directions -----------------------------------------------------------------


def test_direction_tokens_and_symbols():
    assert Direction.UPPER_STRICT.token == "upper"
    assert Direction.LOWER_STRICT.token == "lower"
    assert Direction.UPPER_STRICT.relation_symbol == "<"
    assert Direction.LOWER_STRICT.relation_symbol == ">"
    assert Direction.UPPER_STRICT.mirrored is Direction.LOWER_STRICT
    assert Direction.LOWER_STRICT.mirrored is Direction.UPPER_STRICT


def test_direction_satisfied_is_strict():
    assert Direction.UPPER_STRICT.satisfied(-1)
    assert not Direction.UPPER_STRICT.satisfied(0)
    assert not Direction.UPPER_STRICT.satisfied(1)
    assert Direction.LOWER_STRICT.satisfied(1)
    assert not Direction.LOWER_STRICT.satisfied(0)


def test_direction_from_token():
    assert Direction.from_token("upper") is Direction.UPPER_STRICT
    assert Direction.from_token("lower") is Direction.LOWER_STRICT
    with pytest.raises(CertificateFormatError):
        Direction.from_token("sideways")


def test_instance_rejects_foreign_bound():
    with pytest.raises(CarrierMismatchError):
        BoundingInstance(
            input=ONE_TO_SIX,
            bound=POSITIVE_RATIONAL_MUL.element(10),
            direction=Direction.UPPER_STRICT,
        )


# -- feasibility ------------------------------------------------------------------


def test_feasible_upper_is_strictly_below():
    inst = upper(ONE_TO_SIX, 10)
    assert feasible(Matching.parse("(1,4)(2,6)(3,5)"), inst)
    assert not feasible(Matching.parse("(1,2)(3,4)(5,6)"), inst)  # 5+6 = 11
    # a pair value equal to the bound fails a strict test
    assert not feasible(Matching.parse("(1,6)(2,5)(3,4)"), upper(ONE_TO_SIX, 7))
    assert feasible(Matching.parse("(1,6)(2,5)(3,4)"), upper(ONE_TO_SIX, 8))


def test_feasible_lower_is_strictly_above():
    assert feasible(Matching.parse("(1,2)(3,4)(5,6)"), lower(ONE_TO_SIX, 2))
    assert not feasible(Matching.parse("(1,2)(3,4)(5,6)"), lower(ONE_TO_SIX, 3))


def test_feasible_size_mismatch_rejected():
    with pytest.raises(Exception):
        feasible(Matching.parse("(1,2)"), upper(ONE_TO_SIX, 10))


def test_theorem_check_confirms_symmetric_feasibility():
    assert theorem_check(upper(ONE_TO_SIX, 10), Matching.parse("(1,4)(2,6)(3,5)"))
    assert theorem_check(lower(ONE_TO_SIX, 2), Matching.parse("(1,2)(3,4)(5,6)"))


def test_theorem_check_rejects_infeasible_witness():
    with pytest.raises(InfeasibleWitnessError):
        theorem_check(upper(ONE_TO_SIX, 5), Matching.parse("(1,2)(3,4)(5,6)"))


def test_theorem_violation_error_carries_state():
    error = TheoremViolationError("broke", state={"bound": "10", "matching": "(1,2)"})
    text = str(error)
    assert "state dump" in text and "bound" in text and "(1,2)" in text


# -- the exchange transform ----------------------------------------------------------


def test_worked_example_steps_exactly():
    inst = upper(ONE_TO_SIX, 10)
    cert = exchange_transform(Matching.parse("(1,4)(2,6)(3,5)"), inst)
    assert len(cert.steps) == 2

    first, second = cert.steps
    assert (first.level, first.ell, first.ell_prime) == (1, 4, 2)
    assert first.removed == ((1, 4), (2, 6))
    assert first.inserted == ((1, 6), (2, 4))
    assert [(j.pair, j.value.value, j.relation) for j in first.justifications] == [
        ((2, 4), 6, "<"),
        ((2, 6), 8, "<"),
        ((1, 6), 7, "<"),
    ]

    assert (second.level, second.ell, second.ell_prime) == (2, 4, 3)
    assert second.removed == ((2, 4), (3, 5))
    assert second.inserted == ((2, 5), (3, 4))
    assert [(j.pair, j.value.value, j.relation) for j in second.justifications] == [
        ((3, 4), 7, "<"),
        ((3, 5), 8, "<"),
        ((2, 5), 7, "<"),
    ]

    assert cert.final == symmetric_matching(3)
    assert cert.witness == Matching.parse("(1,4)(2,6)(3,5)")
    result = verify_certificate(cert)
    assert result.ok and result.steps_checked == 2


def test_symmetric_witness_needs_no_steps():
    cert = exchange_transform(symmetric_matching(3), upper(ONE_TO_SIX, 12))
    assert cert.steps == ()
    assert cert.final == cert.witness == symmetric_matching(3)
    assert verify_certificate(cert)


def test_settled_levels_are_skipped():
    # (1,6) is already in place, so the transform starts at level 2
    cert = exchange_transform(Matching.parse("(1,6)(2,4)(3,5)"), upper(ONE_TO_SIX, 12))
    assert [step.level for step in cert.steps] == [2]
    assert cert.steps[0].removed == ((2, 4), (3, 5))
    assert cert.steps[0].inserted == ((2, 5), (3, 4))
    assert verify_certificate(cert)


def test_lower_direction_justifies_with_the_level_pair():
    inst = lower(int_input(2, 7, 11, 14, 16, 17), 17)
    cert = exchange_transform(Matching.parse("(1,5)(2,6)(3,4)"), inst)
    assert len(cert.steps) == 1
    step = cert.steps[0]
    assert (step.level, step.ell, step.ell_prime) == (1, 5, 2)
    # dominating pair under the lower bound is (level, ell): 2+16 = 18 > 17
    assert [(j.pair, j.value.value, j.relation) for j in step.justifications] == [
        ((2, 5), 23, ">"),
        ((1, 5), 18, ">"),
        ((1, 6), 19, ">"),
    ]
    assert verify_certificate(cert)


def test_infeasible_witness_is_rejected_up_front():
    with pytest.raises(InfeasibleWitnessError):
        exchange_transform(Matching.parse("(1,2)(3,4)(5,6)"), upper(ONE_TO_SIX, 10))


@pytest.mark.parametrize("direction", [Direction.UPPER_STRICT, Direction.LOWER_STRICT])
@pytest.mark.parametrize(
    "values",
    [
        (1, 2, 3, 4),
        (1, 1, 2, 2, 3, 3),
        (-5, -2, 0, 3, 3, 9),
        (4, 7, 9, 12, 15, 20, 22, 31),
    ],
)
def test_every_matching_round_trips(values, direction):
    input = int_input(*values)
    n = input.n
    for m in enumerate_matchings(n):
        row = evaluate(m, input)
        if direction is Direction.UPPER_STRICT:
            bound = strictly_greater(row.max_value)
        else:
            bound = strictly_less(row.min_value)
        inst = BoundingInstance(input=input, bound=bound, direction=direction)
        cert = exchange_transform(m, inst)
        assert len(cert.steps) <= n - 1
        assert cert.final == symmetric_matching(n)
        assert verify_certificate(cert)


def test_round_trip_on_rational_multiplication():
    carrier = POSITIVE_RATIONAL_MUL
    input = sort_input([carrier.parse(t) for t in ("1/3", "1/2", "2", "5/2", "3", "7")])
    for m in enumerate_matchings(3):
        row = evaluate(m, input)
        inst = BoundingInstance(
            input=input,
            bound=strictly_greater(row.max_value),
            direction=Direction.UPPER_STRICT,
        )
        cert = exchange_transform(m, inst)
        assert verify_certificate(cert)


def test_directions_build_identical_step_structure():
    # the step sequence depends only on the witness's pair structure; the
    # direction changes nothing but the recorded relations
    input = ONE_TO_SIX
    for m in enumerate_matchings(3):
        row = evaluate(m, input)
        up = exchange_transform(m, upper(input, row.max_value.value + 1))
        low = exchange_transform(m, lower(input, row.min_value.value - 1))
        assert len(up.steps) == len(low.steps)
        for s_up, s_low in zip(up.steps, low.steps):
            assert (s_up.level, s_up.ell, s_up.ell_prime) == (
                s_low.level,
                s_low.ell,
                s_low.ell_prime,
            )
            assert s_up.removed == s_low.removed
            assert s_up.inserted == s_low.inserted
            assert all(j.relation == "<" for j in s_up.justifications)
            assert all(j.relation == ">" for j in s_low.justifications)
            # companion pair and new symmetric pair agree; the middle
            # justification cites whichever removed pair dominates, which
            # mirrors with the direction
            top = 2 * input.n + 1 - s_up.level
            assert [j.pair for j in s_up.justifications] == [
                tuple(sorted((s_up.ell, s_up.ell_prime))),
                (s_up.ell_prime, top),
                (s_up.level, top),
            ]
            assert [j.pair for j in s_low.justifications] == [
                tuple(sorted((s_low.ell, s_low.ell_prime))),
                (s_low.level, s_low.ell),
                (s_low.level, top),
            ]
            assert s_up.justifications[0].value == s_low.justifications[0].value
            assert s_up.justifications[2].value == s_low.justifications[2].value


def test_upper_and_lower_are_mirror_images():
    # negating an integer input swaps the directions: pair (i, j) of the
    # original corresponds to (2n+1-j, 2n+1-i) of the negated, reversed input
    values = (1, 3, 6, 8, 9, 11)
    input = int_input(*values)
    negated = int_input(*(-v for v in values))
    size = len(values)
    for m in enumerate_matchings(3):
        mirrored = Matching(tuple((size + 1 - j, size + 1 - i) for i, j in m.pairs))
        for bound in range(3, 22):
            assert feasible(m, upper(input, bound)) == feasible(
                mirrored, lower(negated, -bound)
            )


# -- brute-force oracles ---------------------------------------------------------


def reference_input(table):
    carrier = carrier_from_token(table.op)
    return sort_input([carrier.element(v) for v in table.elements])


@pytest.mark.parametrize("table", REFERENCE_TABLES, ids=lambda t: t.name)
def test_oracle_extremes_match_reference_tables(table):
    input = reference_input(table)
    _, best_max = minimax_matching(input)
    _, best_min = maximin_matching(input)
    assert best_max.value == min(row[1] for row in table.rows)
    assert best_min.value == max(row[2] for row in table.rows)
    # the symmetric row (last) attains both extremes
    assert best_max.value == table.rows[-1][1]
    assert best_min.value == table.rows[-1][2]


def test_oracle_tie_break_keeps_first_in_enumeration_order():
    # products of 1,3,6,8,9,11: max 48 first occurs in row 12, min 11 in row 13
    input = reference_input(REFERENCE_TABLES[3])
    assert REFERENCE_TABLES[3].op == "mul"
    minimax, best_max = minimax_matching(input)
    maximin, best_min = maximin_matching(input)
    assert best_max.value == 48 and str(minimax) == "(1,5)(2,6)(3,4)"
    assert best_min.value == 11 and str(maximin) == "(1,6)(2,3)(4,5)"
    # values still agree with the symmetric matching, so the report passes
    assert optimality_report(input).passed


@pytest.mark.parametrize("table", REFERENCE_TABLES, ids=lambda t: t.name)
def test_optimality_report_passes_on_reference_tables(table):
    report = optimality_report(reference_input(table))
    assert report.passed
    assert report.matchings_scanned == count_matchings(3) == 15
    assert report.symmetric.matching == symmetric_matching(3)
    assert report.symmetric.max_value == report.minimax_value
    assert report.symmetric.min_value == report.maximin_value


def test_oracle_on_duplicates():
    input = int_input(5, 5, 5, 5, 5, 5)
    report = optimality_report(input)
    assert report.passed
    assert report.minimax_value == Element(INTEGER_ADD, 10)
    assert report.maximin_value == Element(INTEGER_ADD, 10)


def test_random_oracle_agreement_across_carriers():
    rng = random.Random(31)
    from helpers import ALL_CARRIERS

    for carrier in ALL_CARRIERS:
        for _ in range(5):
            input = random_input(carrier, rng.randint(1, 4), rng)
            assert optimality_report(input).passed


# -- caps -------------------------------------------------------------------------


def test_cap_guards_exhaustive_scans():
    input = int_input(1, 2, 3, 4, 5, 6)
    with pytest.raises(CapExceededError):
        minimax_matching(input, cap=2)
    with pytest.raises(CapExceededError):
        maximin_matching(input, cap=2)
    with pytest.raises(CapExceededError):
        optimality_report(input, cap=2)
    # explicit cap at n unblocks
    assert optimality_report(input, cap=3).passed


def test_default_cap_allows_small_instances():
    assert optimality_report(int_input(1, 2)).passed
