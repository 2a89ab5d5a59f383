"""Test-side brute-force oracles, independent of the package's own oracles.

These deliberately re-derive answers from first principles (enumerating
elementary outcomes) so that package formulas and package oracles can both
be checked against a third route.
"""

from fractions import Fraction
from itertools import combinations, product


def exhaustive_max_avoiding(counts: tuple[int, ...], required: int) -> int:
    """Longest draw sequence with no color reaching ``required``, by brute force.

    A draw sequence is characterised by its per-color drawn vector (objects
    of one color are interchangeable), and every vector d <= counts is
    realisable by some order, so enumerating vectors enumerates every
    distinguishable outcome.  Returns -1 when even zero draws... never:
    the empty sequence always avoids, so the result is >= 0.
    """
    best = -1
    for vector in product(*(range(c + 1) for c in counts)):
        if all(v < required for v in vector):
            total = sum(vector)
            if total > best:
                best = total
    return best


def elementary_transfer(container_a, container_b, moved):
    """Equal-weight enumeration of every (transfer subset, draw) outcome.

    Objects are distinguishable here: each of the C(|A|, moved) transfer
    subsets is equally likely, then each object of the enlarged B is equally
    likely to be drawn.  Returns (p_drawn_is_moved, p_drawn_not_moved,
    {color: p_drawn_has_color}) as exact fractions.
    """
    a_objects = [color for color, count in container_a for _ in range(count)]
    b_objects = [color for color, count in container_b for _ in range(count)]
    total_events = 0
    moved_hits = 0
    color_hits: dict[str, int] = {}
    for subset in combinations(range(len(a_objects)), moved):
        pool = [(color, False) for color in b_objects]
        pool += [(a_objects[i], True) for i in subset]
        for color, was_moved in pool:
            total_events += 1
            if was_moved:
                moved_hits += 1
            color_hits[color] = color_hits.get(color, 0) + 1
    p_moved = Fraction(moved_hits, total_events)
    p_not_moved = Fraction(total_events - moved_hits, total_events)
    p_colors = {
        color: Fraction(hits, total_events) for color, hits in color_hits.items()
    }
    return p_moved, p_not_moved, p_colors
