"""Guaranteed-draw calculator: blind draws until some color repeats enough.

The closed form n_colors * (required - 1) + 1 assumes every color has at
least required - 1 objects to stall with; the oracle drops that assumption
and works from the actual per-color counts, so the two can be compared on
any instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import PuzzleKind
from .errors import Infeasible, InvalidInstance


def _normalize_counts(
    raw: "Mapping[str, int] | Iterable[tuple[str, int]]", what: str
) -> tuple[tuple[str, int], ...]:
    pairs = tuple(raw.items()) if isinstance(raw, Mapping) else tuple(raw)
    seen = set()
    for label, count in pairs:
        if not isinstance(label, str) or not label:
            raise InvalidInstance(f"{what}: color labels must be nonempty strings")
        if label in seen:
            raise InvalidInstance(f"{what}: duplicate color '{label}'")
        seen.add(label)
        if not isinstance(count, int) or count < 0:
            raise InvalidInstance(f"{what}: count for '{label}' must be an integer >= 0")
    return pairs


@dataclass(frozen=True)
class PigeonholeInstance:
    """Ordered per-color counts plus the same-color run being asked for."""

    color_counts: tuple[tuple[str, int], ...]
    required: int

    puzzle_kind = PuzzleKind.PIGEONHOLE

    def __post_init__(self) -> None:
        pairs = _normalize_counts(self.color_counts, "color_counts")
        if not pairs:
            raise InvalidInstance("at least one color is required")
        object.__setattr__(self, "color_counts", pairs)
        if not isinstance(self.required, int) or self.required < 1:
            raise InvalidInstance("required must be a positive integer")


def guarantee_draws_formula(n_colors: int, required: int) -> int:
    """Closed form: n_colors * (required - 1) + 1 draws always suffice."""
    if not isinstance(n_colors, int) or n_colors < 1:
        raise InvalidInstance("n_colors must be a positive integer")
    if not isinstance(required, int) or required < 1:
        raise InvalidInstance("required must be a positive integer")
    return n_colors * (required - 1) + 1


def guarantee_draws_oracle(inst: PigeonholeInstance) -> int:
    """Smallest D such that every D-draw sequence holds ``required`` of a color.

    The adversary stalls by drawing at most required - 1 of each color and
    cannot do better, so the longest avoiding sequence has length
    sum(min(count, required - 1)); one more draw must complete some color.
    """
    if max(count for _, count in inst.color_counts) < inst.required:
        raise Infeasible(
            f"no color has {inst.required} objects; the goal is unreachable"
        )
    stall = sum(min(count, inst.required - 1) for _, count in inst.color_counts)
    return stall + 1


def adversarial_sequence(inst: PigeonholeInstance) -> list[str]:
    """A longest draw sequence avoiding the goal, cycling colors in order.

    Its length is guarantee_draws_oracle(inst) - 1, witnessing tightness.
    """
    answer = guarantee_draws_oracle(inst)  # validates feasibility
    budgets = [
        (label, min(count, inst.required - 1)) for label, count in inst.color_counts
    ]
    sequence: list[str] = []
    for round_no in range(inst.required - 1):
        for label, budget in budgets:
            if budget > round_no:
                sequence.append(label)
    assert len(sequence) == answer - 1
    return sequence


def formula_applicable(inst: PigeonholeInstance) -> bool:
    """True when the closed formula is exact for this instance.

    That is the regime where every color can stall fully (count >= required
    - 1) and the goal is reachable at all (some count >= required).
    """
    counts = [count for _, count in inst.color_counts]
    return max(counts) >= inst.required and min(counts) >= inst.required - 1
