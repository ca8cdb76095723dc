"""Extended integers, matrices, masks, instance validation, JSON round trips."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pbm.core import (
    NEG_INF,
    POS_INF,
    ExtInt,
    ExtMatrix,
    IntMatrix,
    PbmInstance,
    SubsetMask,
    as_ext,
    ext_sum,
    fin,
    instance_from_json,
    instance_to_json,
    mask_from_json,
    mask_to_json,
    matrix_from_json,
    matrix_to_json,
    validate_instance,
)
from pbm.errors import (
    BoundOrderViolation,
    DimensionMismatch,
    IllegalInfinity,
    InfinityClash,
    InstanceFormatError,
)

finite_ints = st.integers(min_value=-10**6, max_value=10**6)
ext_ints = st.one_of(st.just(NEG_INF), st.just(POS_INF), finite_ints.map(fin))


class TestExtInt:
    def test_ordering(self):
        assert NEG_INF < fin(-(10**9)) < fin(0) < fin(10**9) < POS_INF
        assert fin(3) == fin(3)
        assert not NEG_INF < NEG_INF

    def test_addition(self):
        assert fin(2) + fin(3) == fin(5)
        assert POS_INF + fin(7) == POS_INF
        assert NEG_INF + NEG_INF == NEG_INF
        with pytest.raises(InfinityClash):
            POS_INF + NEG_INF

    def test_negation_subtraction(self):
        assert -fin(4) == fin(-4)
        assert -POS_INF == NEG_INF
        assert fin(1) - fin(5) == fin(-4)
        assert POS_INF - fin(3) == POS_INF
        with pytest.raises(InfinityClash):
            POS_INF - POS_INF

    def test_times(self):
        assert fin(3).times(4) == fin(12)
        assert POS_INF.times(2) == POS_INF
        assert POS_INF.times(0) == fin(0)
        assert NEG_INF.times(5) == NEG_INF

    def test_division(self):
        assert fin(7).floor_div(2) == fin(3)
        assert fin(7).ceil_div(2) == fin(4)
        assert fin(-7).floor_div(2) == fin(-4)
        assert fin(-7).ceil_div(2) == fin(-3)
        assert POS_INF.floor_div(3) == POS_INF
        assert NEG_INF.ceil_div(3) == NEG_INF

    def test_clamp(self):
        assert POS_INF.clamp(100) == fin(100)
        assert NEG_INF.clamp(100) == fin(-100)
        assert fin(7).clamp(100) == fin(7)

    def test_finite_accessor(self):
        assert fin(9).finite() == 9
        with pytest.raises(InfinityClash):
            POS_INF.finite()

    def test_json(self):
        assert fin(5).to_json() == 5
        assert POS_INF.to_json() == "+inf"
        assert NEG_INF.to_json() == "-inf"
        assert ExtInt.from_json("inf") == POS_INF
        assert ExtInt.from_json("-infinity") == NEG_INF
        assert ExtInt.from_json(-3) == fin(-3)
        with pytest.raises(InstanceFormatError):
            ExtInt.from_json("seven")

    @given(ext_ints)
    def test_json_round_trip(self, x):
        assert ExtInt.from_json(x.to_json()) == x

    @given(finite_ints, finite_ints)
    def test_finite_addition_matches_int(self, a, b):
        assert (fin(a) + fin(b)).finite() == a + b

    @given(ext_ints, ext_ints)
    def test_ordering_total(self, x, y):
        assert (x < y) + (x == y) + (y < x) == 1

    def test_as_ext_and_sum(self):
        assert as_ext(3) == fin(3)
        assert as_ext(POS_INF) == POS_INF
        assert ext_sum([fin(1), fin(2), POS_INF]) == POS_INF
        assert ext_sum([]) == fin(0)


class TestIntMatrix:
    def test_prefixes_and_total(self):
        mat = IntMatrix.from_rows([[1, -2, 3], [0, 4, -1]])
        assert mat.at(1, 2) == -2
        assert mat.h_prefix(1, 2) == -1
        assert mat.h_prefix(2, 3) == 3
        assert mat.v_prefix(2, 2) == 2
        assert mat.total() == 5
        assert mat.row(2) == (0, 4, -1)
        assert mat.col(3) == (3, -1)

    def test_ragged_rows_rejected(self):
        with pytest.raises(DimensionMismatch):
            IntMatrix.from_rows([[1, 2], [3]])

    def test_add_and_cells(self):
        a = IntMatrix.from_rows([[1, 0], [0, 1]])
        b = IntMatrix.from_rows([[0, 1], [1, 0]])
        assert a.add(b).to_lists() == [[1, 1], [1, 1]]
        assert sorted(a.cells()) == [(1, 1, 1), (1, 2, 0), (2, 1, 0), (2, 2, 1)]

    def test_zeros(self):
        assert IntMatrix.zeros(2, 3).total() == 0


class TestExtMatrix:
    def test_mixed_input(self):
        mat = ExtMatrix.from_rows([[1, "-inf"], [POS_INF, 0]])
        assert mat.at(1, 1) == fin(1)
        assert mat.at(1, 2) == NEG_INF
        assert mat.at(2, 1) == POS_INF

    def test_constant(self):
        mat = ExtMatrix.constant(2, 2, fin(7))
        assert all(v == fin(7) for _, _, v in mat.cells())


class TestSubsetMask:
    def test_set_algebra(self):
        a = SubsetMask.from_cells(2, 2, [(1, 1), (1, 2)])
        b = SubsetMask.from_cells(2, 2, [(1, 2), (2, 1)])
        assert sorted((a | b).sorted_cells()) == [(1, 1), (1, 2), (2, 1)]
        assert (a & b).sorted_cells() == [(1, 2)]
        assert (a - b).sorted_cells() == [(1, 1)]
        assert a.complement().sorted_cells() == [(2, 1), (2, 2)]
        assert len(SubsetMask.full(2, 2)) == 4
        assert len(SubsetMask.empty(2, 2)) == 0

    def test_line_views(self):
        mask = SubsetMask.from_cells(2, 3, [(1, 1), (1, 3), (2, 3)])
        assert mask.row_cols(1) == [1, 3]
        assert mask.col_rows(3) == [1, 2]
        assert (1, 1) in mask and (2, 1) not in mask

    def test_out_of_range_cell_rejected(self):
        with pytest.raises(DimensionMismatch):
            SubsetMask.from_cells(2, 2, [(3, 1)])


class TestInstanceValidation:
    def test_create_defaults_are_infinite(self):
        inst = PbmInstance.create(
            1,
            1,
            [[fin(0)]],
            [[fin(1)]],
            [[fin(0)]],
            [[fin(1)]],
        )
        assert inst.f.at(1, 1) == NEG_INF
        assert inst.g.at(1, 1) == POS_INF
        assert inst.alpha == NEG_INF and inst.beta == POS_INF

    def test_bound_order_violation_names_position(self):
        with pytest.raises(BoundOrderViolation) as exc:
            PbmInstance.create(1, 2, [[fin(0), fin(2)]], [[fin(1), fin(1)]], [[fin(0), fin(0)]], [[fin(0), fin(0)]])
        assert "(1, 2)" in str(exc.value) or "(1,2)" in str(exc.value)

    def test_illegal_infinity(self):
        with pytest.raises(IllegalInfinity):
            PbmInstance.create(1, 1, [[POS_INF]], [[POS_INF]], [[fin(0)]], [[fin(0)]])
        with pytest.raises(IllegalInfinity):
            PbmInstance.create(1, 1, [[fin(0)]], [[NEG_INF]], [[fin(0)]], [[fin(0)]])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            PbmInstance.create(2, 1, [[fin(0)]], [[fin(0)]], [[fin(0)]], [[fin(0)]])

    def test_validate_passthrough(self):
        inst = PbmInstance.create(1, 1, [[fin(0)]], [[fin(0)]], [[fin(0)]], [[fin(0)]])
        validate_instance(inst)


class TestJson:
    def test_instance_round_trip(self):
        doc = {
            "m": 2,
            "n": 2,
            "phi1": [[0, "-inf"], [0, 1]],
            "gamma1": [[1, 1], [0, 1]],
            "phi2": [[0, 0], [1, 1]],
            "gamma2": [[1, 1], [1, 1]],
            "f": [[-1, -1], [-1, -1]],
            "g": [[1, 1], [1, 1]],
            "alpha": "-inf",
            "beta": 5,
        }
        inst = instance_from_json(doc)
        assert inst.phi1.at(1, 2) == NEG_INF
        assert inst.beta == fin(5)
        again = instance_from_json(instance_to_json(inst))
        assert again == inst

    def test_optional_blocks_default(self):
        doc = {
            "m": 1,
            "n": 1,
            "phi1": [[0]],
            "gamma1": [[1]],
            "phi2": [[0]],
            "gamma2": [[1]],
        }
        inst = instance_from_json(doc)
        assert inst.f.at(1, 1) == NEG_INF and inst.g.at(1, 1) == POS_INF

    def test_missing_key_rejected(self):
        with pytest.raises(InstanceFormatError):
            instance_from_json({"m": 1, "n": 1})

    def test_matrix_round_trip(self):
        mat = IntMatrix.from_rows([[1, 2], [3, 4]])
        assert matrix_from_json(matrix_to_json(mat)) == mat
        assert matrix_from_json({"matrix": [[1, 2], [3, 4]]}) == mat

    def test_mask_round_trip(self):
        mask = SubsetMask.from_cells(2, 2, [(1, 2), (2, 1)])
        assert mask_from_json(2, 2, mask_to_json(mask)) == mask
        assert mask_from_json(2, 2, [[1, 2], [2, 1]]) == mask
