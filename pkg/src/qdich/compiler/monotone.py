"""Monotone rewrite of integer cost functions, modulo 8."""

from __future__ import annotations

from qdich.errors import NotIntegerValued
from qdich.ir.cost import CostFunction, Term


def _monotone_table(table: tuple[int, ...]) -> tuple[int, ...]:
    size = len(table)
    out = [0] * size
    for index in sorted(range(size), key=lambda i: (bin(i).count("1"), i)):
        floor = max([0] + [out[sub] for sub in range(size) if sub != index and sub & index == sub])
        value = table[index] % 8
        if value < floor:
            value += 8 * -(-(floor - value) // 8)
        out[index] = value
    return tuple(out)


def make_monotone(cost: CostFunction) -> CostFunction:
    """Shift every table entry by a multiple of 8 so each term is nondecreasing in every bit.

    Each entry becomes the least value congruent to it mod 8 that is at least
    0 and at least every entry on an assignment with a subset of its ones.
    e^{-i pi C(z)/4} is unchanged and the total cost is maximised at 1^n.

    Raises:
        NotIntegerValued: the cost is not flagged integer-valued
    """
    if not cost.integer_valued:
        raise NotIntegerValued("make_monotone needs an integer-valued cost")
    terms = tuple(Term(t.support, _monotone_table(t.table)) for t in cost.terms)
    return CostFunction(cost.n_vars, terms, integer_valued=True)
