"""Unit tests for operator construction, axiom checks and the biquandle file format."""

from __future__ import annotations

import numpy as np
import pytest

from ybhomology.algebra import FiniteYB
from ybhomology.algebra import from_dict
from ybhomology.algebra import from_tables
from ybhomology.algebra import invert_R
from ybhomology.algebra import load_biquandle
from ybhomology.algebra import make_alexander
from ybhomology.algebra import make_cyclic
from ybhomology.algebra import save_biquandle
from ybhomology.algebra import verify_axioms
from ybhomology.exceptions import BiquandleFileError
from ybhomology.exceptions import ConditionFails
from ybhomology.exceptions import EntryOutOfRange
from ybhomology.exceptions import NotAUnit
from ybhomology.exceptions import NotBijective
from ybhomology.exceptions import ShapeMismatch


def _swap() -> FiniteYB:
    return from_tables([[0, 1], [0, 1]], [[0, 0], [1, 1]])


def _diagonal_copy() -> FiniteYB:
    # R(a, b) = (a, a)
    return from_tables([[0, 0], [1, 1]], [[0, 0], [1, 1]])


def _xor() -> FiniteYB:
    # R(a, b) = (a xor b, a)
    return from_tables([[0, 1], [1, 0]], [[0, 0], [1, 1]])


class TestCyclic:
    def test_tables(self) -> None:
        X = make_cyclic(3)
        assert X.size == 3
        for i in range(3):
            for j in range(3):
                assert X.apply(i, j) == ((j + 1) % 3, (i - 1) % 3)

    def test_fixed_partner_is_predecessor(self) -> None:
        X = make_cyclic(5)
        assert [X.fixed_partner(a) for a in range(5)] == [4, 0, 1, 2, 3]

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_all_axioms_hold(self, n: int) -> None:
        report = verify_axioms(make_cyclic(n))
        assert report.all_hold, report.failures()

    def test_rejects_empty_carrier(self) -> None:
        with pytest.raises(ValueError, match="must be >= 1"):
            make_cyclic(0)


class TestAlexander:
    @pytest.mark.parametrize("n,s,t", [(8, 3, 5), (9, 4, 4), (8, 5, 5), (16, 13, 13)])
    def test_published_parameters_are_biquandles(self, n: int, s: int, t: int) -> None:
        report = verify_axioms(make_alexander(n, s, t))
        assert report.is_biquandle, report.failures()

    def test_formula(self) -> None:
        X = make_alexander(8, 3, 5)
        assert X.apply(1, 2) == ((-2 * 1 + 3 * 2) % 8, (5 * 1 - 4 * 2) % 8)

    def test_non_unit_parameter(self) -> None:
        with pytest.raises(NotAUnit, match="s=2 is not a unit mod 8") as exc:
            make_alexander(8, 2, 5)
        assert exc.value.witness == 2

    def test_condition_fails(self) -> None:
        with pytest.raises(ConditionFails, match="not 0 mod 8"):
            make_alexander(8, 3, 3)


class TestFromTables:
    def test_swap_is_a_biquandle_with_identity_bar(self) -> None:
        X = _swap()
        assert verify_axioms(X).all_hold
        assert [X.fixed_partner(a) for a in range(2)] == [0, 1]

    def test_non_square(self) -> None:
        with pytest.raises(ShapeMismatch, match="square"):
            from_tables([[0, 1]], [[0, 1]])

    def test_mismatched_shapes(self) -> None:
        with pytest.raises(ShapeMismatch, match="r2 has shape"):
            from_tables([[0, 1], [1, 0]], [[0]])

    def test_ragged(self) -> None:
        with pytest.raises(ShapeMismatch):
            from_tables([[0, 1], [1]], [[0, 1], [1, 0]])

    def test_entry_out_of_range(self) -> None:
        with pytest.raises(EntryOutOfRange, match=r"r1\[0\]\[1\] = 2") as exc:
            from_tables([[0, 2], [1, 0]], [[0, 0], [1, 1]])
        assert exc.value.witness == ("r1", 0, 1)

    def test_names_must_match_size(self) -> None:
        with pytest.raises(ShapeMismatch, match="element names"):
            from_tables([[0, 1], [0, 1]], [[0, 0], [1, 1]], names=["x"])

    def test_tables_are_read_only(self) -> None:
        X = make_cyclic(3)
        with pytest.raises(ValueError):
            X.r1[0, 0] = 2

    def test_equality_and_hash(self) -> None:
        assert make_cyclic(4) == make_cyclic(4)
        assert make_cyclic(4) != make_cyclic(3)
        assert len({make_cyclic(4), make_cyclic(4)}) == 1


class TestInverse:
    def test_inverse_of_cyclic(self) -> None:
        X = make_cyclic(4)
        inv = invert_R(X)
        for c in range(4):
            for d in range(4):
                assert X.apply(int(inv[c, d, 0]), int(inv[c, d, 1])) == (c, d)
                assert X.apply(*X.apply_inverse(c, d)) == (c, d)

    def test_not_bijective(self) -> None:
        X = _diagonal_copy()
        with pytest.raises(NotBijective) as exc:
            invert_R(X)
        p, q = exc.value.witness
        assert p != q and X.apply(*p) == X.apply(*q)

    def test_apply_inverse_without_inverse(self) -> None:
        with pytest.raises(NotBijective):
            _diagonal_copy().apply_inverse(0, 0)

    def test_divisions(self) -> None:
        X = make_alexander(8, 3, 5)
        for a in range(8):
            for b in range(8):
                c, d = X.apply(a, b)
                assert X.left_divide(a, c) == b
                assert X.right_divide(b, d) == a


class TestVerifyAxioms:
    def test_ybe_failure_has_real_witness(self) -> None:
        X = _xor()
        report = verify_axioms(X)
        assert not report.ybe_holds
        a, b, c = report.ybe_witness

        a1, b1 = X.apply(a, b)
        b2, c2 = X.apply(b1, c)
        lhs = (*X.apply(a1, b2), c2)
        b1, c1 = X.apply(b, c)
        a2, b2 = X.apply(a, b1)
        rhs = (a2, *X.apply(b2, c1))
        assert lhs != rhs
        assert any("Yang-Baxter" in line for line in report.failures())

    def test_xor_has_element_without_fixed_partner(self) -> None:
        report = verify_axioms(_xor())
        assert report.left_invertible and report.right_invertible
        assert not report.biquandle
        assert report.fixed_pair_witness == 1
        assert report.fixed_pair_count == 0

    def test_diagonal_copy_solves_ybe_but_is_not_a_birack(self) -> None:
        report = verify_axioms(_diagonal_copy())
        assert report.ybe_holds
        assert not report.left_invertible
        assert report.left_witness == (0, 0, 1)
        assert not report.is_birack
        assert any("left-invertible" in line for line in report.failures())

    def test_to_dict_is_plain(self) -> None:
        data = verify_axioms(make_cyclic(3)).to_dict()
        assert data["ybe_holds"] is True
        assert data["dual_fixed_pairs"] is True


class TestFileFormat:
    def test_save_and_load(self, tmp_path) -> None:
        X = from_tables([[0, 1], [0, 1]], [[0, 0], [1, 1]], names=["u", "v"])
        path = tmp_path / "swap.json"
        save_biquandle(X, path)
        assert load_biquandle(path) == X

    def test_not_an_object(self) -> None:
        with pytest.raises(BiquandleFileError, match="JSON object"):
            from_dict([[0]])

    def test_missing_keys(self) -> None:
        with pytest.raises(BiquandleFileError, match="missing keys: r2"):
            from_dict({"size": 1, "r1": [[0]]})

    def test_size_disagrees(self) -> None:
        with pytest.raises(ShapeMismatch, match="'size' says 3"):
            from_dict({"size": 3, "r1": [[0]], "r2": [[0]]})

    def test_invalid_json(self, tmp_path) -> None:
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(BiquandleFileError, match="not valid JSON"):
            load_biquandle(path)

    def test_tables_are_int64(self) -> None:
        X = from_dict({"size": 1, "r1": [[0]], "r2": [[0]]})
        assert X.r1.dtype == np.int64
