"""Strong-pair values p*, b* and the four feasibility inequalities."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbm.core import NEG_INF, POS_INF, PbmInstance, SubsetMask, fin
from pbm.asmkit import asm_instance, pasm_instance
from pbm.strongpair import (
    INEQUALITY_NAMES,
    condition_values,
    elementary_pair,
    eval_strong_pair,
    mask_sum,
)

from helpers import finite_random


class TestElementaryPair:
    def test_asm_row_interior_segment(self):
        phi = [fin(0), fin(0), fin(1)]
        gamma = [fin(1), fin(1), fin(1)]
        p, b = elementary_pair(phi, gamma, 2, 3)
        assert (p, b) == (fin(0), fin(1))

    def test_asm_row_prefix(self):
        phi = [fin(0), fin(0), fin(1)]
        gamma = [fin(1), fin(1), fin(1)]
        p, b = elementary_pair(phi, gamma, 1, 2)
        assert (p, b) == (fin(0), fin(1))

    def test_infinite_lower_window(self):
        phi = [NEG_INF, NEG_INF]
        gamma = [fin(0), fin(0)]
        p, b = elementary_pair(phi, gamma, 2, 2)
        assert (p, b) == (NEG_INF, POS_INF)

    def test_position_zero_is_origin(self):
        phi = [fin(2), fin(5)]
        gamma = [fin(3), fin(6)]
        # h=1: phi(0), gamma(0) read as 0
        p, b = elementary_pair(phi, gamma, 1, 2)
        assert (p, b) == (fin(5), fin(6))


class TestEvalStrongPair:
    def test_asm3_full_first_row(self):
        inst = asm_instance(3)
        row1 = SubsetMask.from_cells(3, 3, [(1, 1), (1, 2), (1, 3)])
        ev = eval_strong_pair(inst, row1)
        assert ev.p1 == fin(1) and ev.b1 == fin(1)

    def test_asm3_single_interior_cell(self):
        inst = asm_instance(3)
        one = SubsetMask.from_cells(3, 3, [(1, 2)])
        ev = eval_strong_pair(inst, one)
        assert ev.p1 == fin(-1) and ev.b1 == fin(1)

    def test_pasm_full_grid(self):
        inst = pasm_instance(2, 2)
        full = SubsetMask.full(2, 2)
        ev = eval_strong_pair(inst, full)
        assert ev.b1 == fin(2) and ev.p1 == fin(0)

    def test_empty_subset_is_zero(self):
        ev = eval_strong_pair(asm_instance(2), SubsetMask.empty(2, 2))
        assert ev.p1 == ev.b1 == ev.p2 == ev.b2 == fin(0)

    def test_additive_over_separated_segments(self):
        inst = asm_instance(3)
        left = SubsetMask.from_cells(3, 3, [(2, 1)])
        right = SubsetMask.from_cells(3, 3, [(2, 3)])
        both = left | right
        for field in ("p1", "b1", "p2", "b2"):
            assert getattr(eval_strong_pair(inst, both), field) == getattr(
                eval_strong_pair(inst, left), field
            ) + getattr(eval_strong_pair(inst, right), field)


def test_mask_sum():
    from pbm.core import IntMatrix

    mat = IntMatrix.from_rows([[1, -2], [3, 4]])
    mask = SubsetMask.from_cells(2, 2, [(1, 1), (2, 2)])
    assert mask_sum(mat, mask) == 5
    assert mask_sum(mat, SubsetMask.empty(2, 2)) == 0


class TestConditionValues:
    def test_record_names(self):
        inst = asm_instance(2)
        ev = condition_values(inst, SubsetMask.empty(2, 2), SubsetMask.empty(2, 2))
        assert tuple(r.name for r in ev.records()) == INEQUALITY_NAMES
        assert ev.all_hold

    def test_by_name(self):
        inst = asm_instance(2)
        ev = condition_values(inst, SubsetMask.full(2, 2), SubsetMask.full(2, 2))
        for name in INEQUALITY_NAMES:
            assert ev.by_name(name).name == name

    def test_violation_detected_on_contradictory_instance(self):
        # horizontal pins total to 1, vertical pins it to 0
        inst = PbmInstance.create(
            1, 1, [[fin(1)]], [[fin(1)]], [[fin(0)]], [[fin(0)]]
        )
        full = SubsetMask.full(1, 1)
        ev = condition_values(inst, full, full)
        rec = ev.by_name("gen1a")
        assert not rec.holds and rec.lhs == fin(1) and rec.rhs == fin(0)

    def test_capped_entry_breaks_forced_one(self):
        import dataclasses

        from pbm.core import ExtMatrix

        # 1x1 ASM whose single entry is capped at 0: the row still demands 1
        inst = dataclasses.replace(asm_instance(1), g=ExtMatrix.from_rows([[0]]))
        ev = condition_values(inst, SubsetMask.full(1, 1), SubsetMask.empty(1, 1))
        rec = ev.by_name("gen1a")
        assert not rec.holds and rec.lhs == fin(1) and rec.rhs == fin(0)


@st.composite
def finite_windows(draw):
    n = draw(st.integers(1, 4))
    phi, gamma = [], []
    for _ in range(n):
        lo = draw(st.integers(-4, 4))
        phi.append(fin(lo))
        gamma.append(fin(draw(st.integers(lo, 4))))
    return phi, gamma


@given(finite_windows(), st.data())
@settings(max_examples=200)
def test_p_never_exceeds_b(windows, data):
    phi, gamma = windows
    n = len(phi)
    h = data.draw(st.integers(1, n))
    k = data.draw(st.integers(h, n))
    p, b = elementary_pair(phi, gamma, h, k)
    assert p <= b


def test_mask_pair_with_infinite_terms_still_evaluates():
    rng = random.Random(11)
    inst = finite_random(rng, 2, 3)
    x1 = SubsetMask.from_cells(2, 3, [(1, 1), (2, 2)])
    x2 = SubsetMask.from_cells(2, 3, [(1, 1), (1, 3)])
    ev = condition_values(inst, x1, x2)
    assert len(ev.records()) == 4
    for rec in ev.records():
        assert rec.holds == (not rec.lhs > rec.rhs)


def test_dimension_mismatch_rejected():
    from pbm.errors import DimensionMismatch

    inst = asm_instance(2)
    with pytest.raises(DimensionMismatch):
        eval_strong_pair(inst, SubsetMask.full(3, 3))
