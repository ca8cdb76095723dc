"""Feasibility, certificates, prescriptions, and total-sum/cost optimization.

``solve`` returns either a matrix that meets every bound of the instance or
a certificate: a pair of cell subsets on which one of the four feasibility
inequalities (gen1a, gen1b, gen1alfa, gen1beta) strictly fails.  Exactly one
of the two branches is present, and both are re-verified before they are
returned.

Optimization over an unbounded polyhedron cannot be detected from a single
solve, because infinite bounds are modelled by a large finite K.  Both
optimizers therefore solve twice, with K and with 2K + 1: a finite optimum
yields the same value in both runs, an unbounded one cannot.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Iterable, Mapping

from .circulation import (
    Circulation,
    CutWitness,
    build_network,
    circulation_from_matrix,
    cut_to_certificate,
    find_feasible_circulation,
    matrix_from_circulation,
    min_cost_circulation,
)
from .core import NEG_INF, POS_INF, ExtInt, IntMatrix, PbmInstance, SubsetMask, fin
from .errors import (
    BoundViolation,
    DimensionMismatch,
    InternalError,
    PrescriptionOutOfEntryBounds,
)
from .strongpair import ConditionEval, condition_values

__all__ = [
    "Certificate",
    "FeasibilityResult",
    "ExtremalResult",
    "Prescription",
    "StrictCheck",
    "solve",
    "check_condition",
    "extremal_total_sum",
    "optimize_cost",
    "solve_with_prescription",
    "check_strict",
]


@dataclass(frozen=True, slots=True)
class Certificate:
    """A subset pair on which the named inequality strictly fails."""

    x1: SubsetMask
    x2: SubsetMask
    case: int
    violated: str
    lhs: ExtInt
    rhs: ExtInt


@dataclass(frozen=True, slots=True)
class FeasibilityResult:
    """Either a feasible matrix or a certificate, never both."""

    matrix: "IntMatrix | None"
    certificate: "Certificate | None"

    def __post_init__(self) -> None:
        if (self.matrix is None) == (self.certificate is None):
            raise InternalError("result must carry exactly one of matrix/certificate")

    @property
    def is_feasible(self) -> bool:
        return self.matrix is not None


@dataclass(frozen=True, slots=True)
class ExtremalResult:
    """Outcome of an optimization: optimal, infeasible, or unbounded."""

    status: str
    direction: str
    value: "int | None" = None
    matrix: "IntMatrix | None" = None
    certificate: "Certificate | None" = None


def _certificate_from_cut(net, witness: CutWitness) -> Certificate:
    x1, x2, case, violated = cut_to_certificate(net, witness)
    record = condition_values(net.instance, x1, x2).by_name(violated)
    if record.holds:
        raise InternalError("certificate re-evaluation did not confirm violation")
    return Certificate(
        x1=x1, x2=x2, case=case, violated=violated, lhs=record.lhs, rhs=record.rhs
    )


def solve(inst: PbmInstance, info: "dict | None" = None) -> FeasibilityResult:
    """Find a matrix meeting every bound, or a certificate that none exists."""
    net = build_network(inst)
    res = find_feasible_circulation(net, info)
    if isinstance(res, Circulation):
        mat = matrix_from_circulation(net, res)
        try:
            circulation_from_matrix(inst, mat)
        except BoundViolation as exc:
            raise InternalError(f"solver produced an invalid matrix: {exc}") from exc
        if info is not None:
            info["network"] = net
            info["circulation"] = res
        return FeasibilityResult(matrix=mat, certificate=None)
    if info is not None:
        info["network"] = net
    return FeasibilityResult(matrix=None, certificate=_certificate_from_cut(net, res))


def check_condition(inst: PbmInstance, x1: SubsetMask, x2: SubsetMask) -> ConditionEval:
    """Evaluate the four feasibility inequalities on one subset pair.

    An inequality with -inf on the left or +inf on the right holds
    vacuously; that is the natural reading of the extended order.
    """
    return condition_values(inst, x1, x2)


def _relax_total(inst: PbmInstance) -> PbmInstance:
    return dataclasses.replace(inst, alpha=NEG_INF, beta=POS_INF)


def extremal_total_sum(
    inst: PbmInstance, direction: str, info: "dict | None" = None
) -> ExtremalResult:
    """Largest or smallest total sum over all matrices meeting the bounds.

    The total-sum window [alpha, beta] is ignored: the extremum is taken
    over the prefix and entry bounds alone.
    """
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    relaxed = _relax_total(inst)
    net = build_network(relaxed)
    sign = -1 if direction == "max" else 1
    cost = {net.a0_id: sign}
    first = min_cost_circulation(net, cost, info)
    if isinstance(first, CutWitness):
        return ExtremalResult(
            status="infeasible",
            direction=direction,
            certificate=_certificate_from_cut(net, first),
        )
    v1 = first.value(net.a0_id)
    net2 = build_network(relaxed, k_override=2 * net.big_k + 1)
    second = min_cost_circulation(net2, cost)
    if isinstance(second, CutWitness):
        raise InternalError("feasibility changed when K grew")
    v2 = second.value(net2.a0_id)
    if v1 == v2:
        mat = matrix_from_circulation(net, first)
        circulation_from_matrix(relaxed, mat)
        return ExtremalResult(status="optimal", direction=direction, value=v1, matrix=mat)
    if (direction == "max" and v2 < v1) or (direction == "min" and v2 > v1):
        raise InternalError("optimum tightened when K grew")
    return ExtremalResult(status="unbounded", direction=direction)


def optimize_cost(
    inst: PbmInstance,
    costs: IntMatrix,
    direction: str = "min",
    info: "dict | None" = None,
) -> ExtremalResult:
    """Optimize a linear objective sum(costs[i,j] * A[i,j]) over the instance."""
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    if (costs.m, costs.n) != (inst.m, inst.n):
        raise DimensionMismatch(
            f"cost matrix is {costs.m}x{costs.n}, instance is {inst.m}x{inst.n}"
        )
    sign = -1 if direction == "max" else 1
    net = build_network(inst)
    cost_map = {
        net.n_arc_id(i, j): sign * costs.at(i, j)
        for i in range(1, inst.m + 1)
        for j in range(1, inst.n + 1)
    }
    first = min_cost_circulation(net, cost_map, info)
    if isinstance(first, CutWitness):
        return ExtremalResult(
            status="infeasible",
            direction=direction,
            certificate=_certificate_from_cut(net, first),
        )

    def objective(mat: IntMatrix) -> int:
        return sum(costs.at(i, j) * v for i, j, v in mat.cells())

    mat1 = matrix_from_circulation(net, first)
    v1 = objective(mat1)
    net2 = build_network(inst, k_override=2 * net.big_k + 1)
    second = min_cost_circulation(net2, cost_map)
    if isinstance(second, CutWitness):
        raise InternalError("feasibility changed when K grew")
    v2 = objective(matrix_from_circulation(net2, second))
    if v1 == v2:
        circulation_from_matrix(inst, mat1)
        return ExtremalResult(status="optimal", direction=direction, value=v1, matrix=mat1)
    if (direction == "max" and v2 < v1) or (direction == "min" and v2 > v1):
        raise InternalError("optimum tightened when K grew")
    return ExtremalResult(status="unbounded", direction=direction)


@dataclass(frozen=True, slots=True)
class Prescription:
    """Fixed integer values on a subset of cells."""

    mask: SubsetMask
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        positions = {(i, j) for (i, j, _) in self.entries}
        if positions != set(self.mask.cells) or len(positions) != len(self.entries):
            raise DimensionMismatch("prescribed values must cover the mask exactly once")

    @staticmethod
    def create(
        m: int,
        n: int,
        assignments: "Mapping[tuple[int, int], int] | Iterable[tuple[int, int, int]]",
    ) -> "Prescription":
        if isinstance(assignments, Mapping):
            triples = [(i, j, v) for (i, j), v in assignments.items()]
        else:
            triples = [(i, j, v) for (i, j, v) in assignments]
        mask = SubsetMask.from_cells(m, n, [(i, j) for (i, j, _) in triples])
        return Prescription(mask=mask, entries=tuple(sorted(triples)))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(i, j): v for (i, j, v) in self.entries}


def solve_with_prescription(
    inst: PbmInstance, prescription: Prescription, info: "dict | None" = None
) -> FeasibilityResult:
    """Feasibility with some entries pinned to prescribed values.

    Each prescribed value must lie within the entry bounds at its cell.  A
    certificate, if returned, refers to the instance with the prescribed
    cells' entry bounds pinched to their values, which proves that no
    completion of the prescription exists.
    """
    if (prescription.mask.m, prescription.mask.n) != (inst.m, inst.n):
        raise DimensionMismatch("prescription grid does not match instance")
    for i, j, v in prescription.entries:
        if not (inst.f.at(i, j) <= fin(v) <= inst.g.at(i, j)):
            raise PrescriptionOutOfEntryBounds(
                f"prescribed ({i},{j}) = {v} outside "
                f"[{inst.f.at(i, j)}, {inst.g.at(i, j)}]"
            )
    fixed = prescription.as_dict()
    new_f = [
        [
            fin(fixed[(i, j)]) if (i, j) in fixed else inst.f.at(i, j)
            for j in range(1, inst.n + 1)
        ]
        for i in range(1, inst.m + 1)
    ]
    new_g = [
        [
            fin(fixed[(i, j)]) if (i, j) in fixed else inst.g.at(i, j)
            for j in range(1, inst.n + 1)
        ]
        for i in range(1, inst.m + 1)
    ]
    pinched = dataclasses.replace(
        inst,
        f=inst.f.from_rows(new_f),
        g=inst.g.from_rows(new_g),
    )
    result = solve(pinched, info)
    if result.is_feasible:
        for i, j, v in prescription.entries:
            if result.matrix.at(i, j) != v:
                raise InternalError("solution ignores a prescribed value")
    return result


@dataclass(frozen=True, slots=True)
class StrictCheck:
    """Whether all full-line prefix windows pin the line sums to one total."""

    is_strict: bool
    common_sum: "int | None" = None
    mismatch: "str | None" = None


def check_strict(inst: PbmInstance) -> StrictCheck:
    """Detect pinned line sums: every row and column sum forced, equal total.

    Strict means phi1(i, n) == gamma1(i, n) for every row, phi2(m, j) ==
    gamma2(m, j) for every column, and the forced row sums and column sums
    add up to the same total H.
    """
    n, m = inst.n, inst.m
    row_sums = []
    for i in range(1, m + 1):
        lo, hi = inst.phi1.at(i, n), inst.gamma1.at(i, n)
        if lo != hi:
            return StrictCheck(
                is_strict=False,
                mismatch=f"row {i} sum not pinned: phi1({i},{n}) = {lo}, gamma1({i},{n}) = {hi}",
            )
        row_sums.append(lo.finite())
    col_sums = []
    for j in range(1, n + 1):
        lo, hi = inst.phi2.at(m, j), inst.gamma2.at(m, j)
        if lo != hi:
            return StrictCheck(
                is_strict=False,
                mismatch=f"column {j} sum not pinned: phi2({m},{j}) = {lo}, gamma2({m},{j}) = {hi}",
            )
        col_sums.append(lo.finite())
    if sum(row_sums) != sum(col_sums):
        return StrictCheck(
            is_strict=False,
            mismatch=(
                f"row sums add to {sum(row_sums)} but column sums add to {sum(col_sums)}"
            ),
        )
    return StrictCheck(is_strict=True, common_sum=sum(row_sums))
