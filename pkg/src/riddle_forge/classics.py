"""Two background classics, each with a formula and an independent oracle.

Container transfer: move some objects at random from container A into
container B, draw one from B, ask for a probability.  The folklore answer
2n/(n+d) is evaluated as given; the oracle enumerates every distinguishable
transfer outcome exactly (hypergeometric weights, then a uniform draw), and
a survey op records where the two agree.

Station walk: a walker leaves the station X minutes early and walks toward
the car coming to fetch them; the pair arrives home Y minutes early.  The
identity walked = X - Y/2 is checked against a continuous-time kinematic
simulation that knows nothing about the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping, Union

from .core import PuzzleKind, Rational, _exact
from .errors import InvalidInstance, NoMeeting
from .pigeonhole import _normalize_counts


@dataclass(frozen=True)
class DrawnIsMoved:
    """Event: the object drawn from B is one of the transferred ones."""


@dataclass(frozen=True)
class DrawnHasColor:
    """Event: the object drawn from B has the given color."""

    color: str


Query = Union[DrawnIsMoved, DrawnHasColor]


@dataclass(frozen=True)
class TransferInstance:
    """Two containers, a uniform random transfer from A to B, one draw from B."""

    container_a: tuple[tuple[str, int], ...]
    container_b: tuple[tuple[str, int], ...]
    moved: int
    query: Query

    puzzle_kind = PuzzleKind.TRANSFER

    def __post_init__(self) -> None:
        a = _normalize_counts(self.container_a, "container_a")
        b = _normalize_counts(self.container_b, "container_b")
        object.__setattr__(self, "container_a", a)
        object.__setattr__(self, "container_b", b)
        if not isinstance(self.moved, int) or self.moved < 1:
            raise InvalidInstance("moved must be a positive integer")
        if self.moved > sum(count for _, count in a):
            raise InvalidInstance("cannot move more objects than container_a holds")
        if not isinstance(self.query, (DrawnIsMoved, DrawnHasColor)):
            raise InvalidInstance("query must be DrawnIsMoved or DrawnHasColor")


def transfer_probability_formula(n: int, d: int) -> Rational:
    """The folklore closed form 2n/(n+d), evaluated exactly as written.

    No claim is made that the result is a valid probability for all n, d.
    """
    if not isinstance(n, int) or n < 1 or not isinstance(d, int) or d < 1:
        raise InvalidInstance("n and d must both be positive integers")
    return Fraction(2 * n, n + d)


def _move_splits(limits: tuple[int, ...], total: int) -> Iterator[tuple[int, ...]]:
    """All per-color move vectors m with 0 <= m[i] <= limits[i], sum = total."""
    if not limits:
        if total == 0:
            yield ()
        return
    head, rest = limits[0], limits[1:]
    tail_room = sum(rest)
    for take in range(max(0, total - tail_room), min(head, total) + 1):
        for others in _move_splits(rest, total - take):
            yield (take, *others)


def transfer_probability_enumerate(inst: TransferInstance) -> Rational:
    """Exact probability of the query event by two-stage enumeration.

    Stage one enumerates every distinguishable transfer outcome (a per-color
    vector of moved counts) with its hypergeometric weight; stage two draws
    uniformly from the enlarged container B.  All arithmetic is rational.
    """
    colors = [label for label, _ in inst.container_a]
    colors += [label for label, _ in inst.container_b if label not in colors]
    a = dict(inst.container_a)
    b = dict(inst.container_b)
    a_counts = tuple(a.get(color, 0) for color in colors)
    total_a = sum(a_counts)
    total_b = sum(b.values())
    after = total_b + inst.moved
    ways = comb(total_a, inst.moved)
    probability = Fraction(0)
    for moves in _move_splits(a_counts, inst.moved):
        weight = Fraction(1, ways)
        for limit, take in zip(a_counts, moves):
            weight *= comb(limit, take)
        if isinstance(inst.query, DrawnIsMoved):
            favorable = inst.moved
        else:
            wanted = inst.query.color
            favorable = b.get(wanted, 0)
            if wanted in colors:
                favorable += moves[colors.index(wanted)]
        probability += weight * Fraction(favorable, after)
    return probability


@dataclass(frozen=True)
class SurveyRow:
    """One instance of the canonical survey family, with both answers.

    The family: container A holds ``source_total`` objects of one color
    ("alpha"); container B holds ``destination_same`` alphas and the rest
    "beta", ``destination_total`` in all; ``moved`` objects go across; the
    query is either DrawnIsMoved or DrawnHasColor("alpha").
    """

    source_total: int
    destination_total: int
    destination_same: int
    moved: int
    query: str  # "drawn_is_moved" | "drawn_has_color"
    enumerated: Rational
    formula: Rational

    @property
    def match(self) -> bool:
        return self.enumerated == self.formula

    def key(self) -> str:
        return (
            f"n={self.source_total} d={self.destination_total} "
            f"same={self.destination_same} moved={self.moved} query={self.query}"
        )


def transfer_formula_survey(max_n: int, max_d: int) -> list[SurveyRow]:
    """Compare 2n/(n+d) with exact enumeration over the canonical family.

    Rows are emitted in a fixed nested order (n, d, color split, moved,
    query), so the survey is deterministic for given bounds.  Agreement is
    recorded, never asserted.
    """
    if not isinstance(max_n, int) or max_n < 1 or not isinstance(max_d, int) or max_d < 1:
        raise InvalidInstance("survey bounds must be positive integers")
    rows: list[SurveyRow] = []
    for n in range(1, max_n + 1):
        for d in range(1, max_d + 1):
            formula = transfer_probability_formula(n, d)
            for same in range(d + 1):
                container_a = (("alpha", n),)
                container_b = (("alpha", same), ("beta", d - same))
                for moved in range(1, n + 1):
                    for name, query in (
                        ("drawn_is_moved", DrawnIsMoved()),
                        ("drawn_has_color", DrawnHasColor("alpha")),
                    ):
                        inst = TransferInstance(container_a, container_b, moved, query)
                        rows.append(
                            SurveyRow(
                                source_total=n,
                                destination_total=d,
                                destination_same=same,
                                moved=moved,
                                query=name,
                                enumerated=transfer_probability_enumerate(inst),
                                formula=formula,
                            )
                        )
    return rows


def format_survey(rows: Iterable[SurveyRow]) -> str:
    """Tab-separated survey report: instance key, both values, match flag."""
    lines = ["n\td\tsame\tmoved\tquery\tenumerated\tformula\tmatch"]
    for row in rows:
        lines.append(
            f"{row.source_total}\t{row.destination_total}\t{row.destination_same}"
            f"\t{row.moved}\t{row.query}\t{row.enumerated}\t{row.formula}"
            f"\t{'yes' if row.match else 'no'}"
        )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class StationInstance:
    """Walker leaves X minutes early; the pair gets home Y minutes early."""

    early_minutes: Rational
    saved_minutes: Rational

    puzzle_kind = PuzzleKind.STATION

    def __post_init__(self) -> None:
        early = _exact(self.early_minutes, "early_minutes")
        saved = _exact(self.saved_minutes, "saved_minutes")
        object.__setattr__(self, "early_minutes", early)
        object.__setattr__(self, "saved_minutes", saved)
        if early <= 0 or saved <= 0:
            raise InvalidInstance("early and saved minutes must be positive")
        if saved > 2 * early:
            raise InvalidInstance(
                "saved_minutes cannot exceed twice early_minutes; "
                "the meeting scenario would be inconsistent"
            )


def station_walk_formula(inst: StationInstance) -> Rational:
    """Minutes walked before pickup: early - saved/2, exactly."""
    return inst.early_minutes - inst.saved_minutes / 2


def station_walk_simulate(
    distance: float,
    car_speed: float,
    walk_speed: float,
    early_minutes: float,
) -> tuple[float, float]:
    """Continuous-time oracle for the walk-and-pickup identity.

    Home sits at position 0, the station at ``distance``.  The car leaves
    home so that it reaches the station exactly at the usual pickup time
    (t = 0); the walker leaves the station ``early_minutes`` before that and
    walks toward home.  The meeting instant is located by bisection on the
    gap between the two positions, then the walked time and the minutes
    saved against the usual round trip are read off the simulated motion.

    Returns (walked_minutes, saved_minutes).
    """
    if min(distance, car_speed, walk_speed, early_minutes) <= 0:
        raise InvalidInstance("all simulation parameters must be positive")
    if walk_speed >= car_speed:
        raise NoMeeting("the car must be faster than the walker")

    departure = -distance / car_speed  # car leaves home here to land at t = 0

    def car_position(t: float) -> float:
        return distance + car_speed * t

    def walker_position(t: float) -> float:
        return distance - walk_speed * (t + early_minutes)

    def gap(t: float) -> float:
        return car_position(t) - walker_position(t)

    t_low = max(-early_minutes, departure)
    if gap(t_low) >= 0:
        raise NoMeeting("the walker reaches home before the car sets out")
    t_high = 0.0  # gap(0) = walk_speed * early_minutes > 0
    for _ in range(200):
        mid = 0.5 * (t_low + t_high)
        if gap(mid) < 0:
            t_low = mid
        else:
            t_high = mid
    meeting_time = 0.5 * (t_low + t_high)
    meeting_point = walker_position(meeting_time)
    if meeting_point <= 0 or meeting_point >= distance:
        raise NoMeeting("meeting point is not strictly between home and station")

    walked_minutes = meeting_time + early_minutes
    usual_home_arrival = distance / car_speed
    today_home_arrival = meeting_time + meeting_point / car_speed
    saved_minutes = usual_home_arrival - today_home_arrival
    return walked_minutes, saved_minutes
