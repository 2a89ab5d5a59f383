"""Work-rate solver.

Three quantities (work done, subjects doing it, time taken) are linked by
the invariant ratio k = work / (subjects * time): double the subjects and
the same work takes half the time, and so on.  Solving a word problem means
reading k off the known scenario and isolating the one unknown.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import PuzzleKind, Quantity, Rational, Unit
from .errors import InvalidInstance


class RateField(Enum):
    WORK = "work"
    SUBJECTS = "subjects"
    TIME = "time"


def _check_positive(quantity: Quantity, name: str, unit: Unit) -> None:
    if quantity.unit is not unit:
        raise InvalidInstance(f"{name} must be a {unit.value} quantity")
    if quantity.magnitude <= 0:
        raise InvalidInstance(f"{name} must be strictly positive")


@dataclass(frozen=True)
class RateScenario:
    """A complete (work, subjects, time) triple, all strictly positive."""

    work: Quantity
    subjects: Quantity
    time: Quantity

    def __post_init__(self) -> None:
        _check_positive(self.work, "work", Unit.COUNT)
        _check_positive(self.subjects, "subjects", Unit.COUNT)
        _check_positive(self.time, "time", Unit.MINUTES)


def rate_constant(scenario: RateScenario) -> Rational:
    """The invariant ratio work / (subjects * time), exactly."""
    return scenario.work.magnitude / (
        scenario.subjects.magnitude * scenario.time.magnitude
    )


@dataclass(frozen=True)
class RateQuery:
    """A known scenario plus two given quantities; solve for the third.

    The field named by ``target`` must be None, the other two must be
    present, strictly positive, and carry the right unit.
    """

    known: RateScenario
    target: RateField
    work: Quantity | None = None
    subjects: Quantity | None = None
    time: Quantity | None = None

    puzzle_kind = PuzzleKind.RATE

    def __post_init__(self) -> None:
        by_field = {
            RateField.WORK: self.work,
            RateField.SUBJECTS: self.subjects,
            RateField.TIME: self.time,
        }
        if by_field[self.target] is not None:
            raise InvalidInstance(
                f"target '{self.target.value}' must not also be given"
            )
        for field, quantity in by_field.items():
            if field is self.target:
                continue
            if quantity is None:
                raise InvalidInstance(f"missing given quantity '{field.value}'")
            unit = Unit.MINUTES if field is RateField.TIME else Unit.COUNT
            _check_positive(quantity, field.value, unit)

    def given(self) -> dict[RateField, Quantity]:
        """The two given quantities, keyed by field."""
        pairs = (
            (RateField.WORK, self.work),
            (RateField.SUBJECTS, self.subjects),
            (RateField.TIME, self.time),
        )
        return {field: q for field, q in pairs if q is not None}


def solve_rate(query: RateQuery) -> Rational:
    """The unique unknown making the query's scenario share the known k."""
    k = rate_constant(query.known)
    if query.target is RateField.WORK:
        return k * query.subjects.magnitude * query.time.magnitude
    if query.target is RateField.SUBJECTS:
        return query.work.magnitude / (k * query.time.magnitude)
    return query.work.magnitude / (k * query.subjects.magnitude)


def completed_scenario(query: RateQuery, solution: Rational) -> RateScenario:
    """The query's scenario with the solved value plugged back in."""
    values = {
        RateField.WORK: query.work,
        RateField.SUBJECTS: query.subjects,
        RateField.TIME: query.time,
    }
    unit = Unit.MINUTES if query.target is RateField.TIME else Unit.COUNT
    values[query.target] = Quantity(solution, unit)
    return RateScenario(
        work=values[RateField.WORK],
        subjects=values[RateField.SUBJECTS],
        time=values[RateField.TIME],
    )


def ceil_subjects(value: Rational) -> int:
    """Smallest whole subject count covering an exact rational answer."""
    if value <= 0:
        raise InvalidInstance("subject count must be positive")
    return math.ceil(value)
