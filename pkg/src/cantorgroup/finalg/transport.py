"""Northwest-corner rule over exact values."""

from __future__ import annotations

from typing import Sequence

from ..errors import InvalidInput
from ..valueset import ZERO, Order, Value, ValueGroup, value_sum


def northwest_corner(V: ValueGroup, supply: Sequence[Value], demand: Sequence[Value]) -> list[list[Value]]:
    """A basic feasible plan with the given row and column sums.

    Every entry is an iterated min/difference of the marginals, so it lies in
    whatever additive group contains them.
    """
    if value_sum(supply) != value_sum(demand):
        raise InvalidInput("supply and demand totals differ")
    supply, demand = list(supply), list(demand)
    plan = [[ZERO] * len(demand) for _ in supply]
    i = j = 0
    while i < len(supply) and j < len(demand):
        q = V.min(supply[i], demand[j])
        plan[i][j] = q
        supply[i] = supply[i] - q
        demand[j] = demand[j] - q
        if supply[i].is_zero():
            i += 1
        if demand[j].is_zero():
            j += 1
    if any(not s.is_zero() for s in supply) or any(not d.is_zero() for d in demand):
        raise InvalidInput("negative marginal in transportation problem")
    return plan


def is_nonnegative_plan(V: ValueGroup, plan) -> bool:
    return all(V.sign(x) is not Order.LESS for row in plan for x in row)
