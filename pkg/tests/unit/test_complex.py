"""Unit tests for face maps, chain theories, boundary matrices and complex verification."""

from __future__ import annotations

import itertools

import pytest

from ybhomology.algebra import from_tables
from ybhomology.algebra import make_alexander
from ybhomology.algebra import make_cyclic
from ybhomology.complex import Theory
from ybhomology.complex import apply_boundary
from ybhomology.complex import boundary_matrix
from ybhomology.complex import chain_rank
from ybhomology.complex import enumerate_basis
from ybhomology.complex import face
from ybhomology.complex import face_left
from ybhomology.complex import face_right
from ybhomology.complex import get_theory
from ybhomology.complex import is_degenerate
from ybhomology.complex import verify_complex
from ybhomology.complex import write_matrix
from ybhomology.exceptions import BarUnavailable
from ybhomology.exceptions import IndexOutOfRange
from ybhomology.exceptions import NotYangBaxter
from ybhomology.families import builtin_biquandles
from ybhomology.smith import AbGroup
from ybhomology.smith import homology

C3 = make_cyclic(3)
UP_TO_FIVE = list(builtin_biquandles(5))
UP_TO_SIX = list(builtin_biquandles(6))


def _xor():
    return from_tables([[0, 1], [1, 0]], [[0, 0], [1, 1]])


def _slide_left(X, i: int, w: tuple[int, ...]) -> tuple[int, ...]:
    # move strand i to the front one crossing at a time, then drop it
    word = list(w)
    for k in range(i - 1, 0, -1):
        word[k - 1], word[k] = X.apply(word[k - 1], word[k])
    return tuple(word[1:])


def _slide_right(X, i: int, w: tuple[int, ...]) -> tuple[int, ...]:
    word = list(w)
    for k in range(i, len(word)):
        word[k - 1], word[k] = X.apply(word[k - 1], word[k])
    return tuple(word[:-1])


class TestTheory:
    def test_parse_aliases(self) -> None:
        assert Theory.parse("yb") is Theory.YB
        assert Theory.parse("degenerate") is Theory.DEG
        assert Theory.parse(Theory.NYB) is Theory.NYB

    def test_unknown(self) -> None:
        with pytest.raises(ValueError, match="Available theories: YB, DEG, NYB"):
            Theory.parse("cubical")


class TestFaces:
    def test_degree_two_faces_of_cyclic(self) -> None:
        # R(i, j) = (j + 1, i - 1)
        assert face(C3, "l", 1, (0, 0)) == (0,)
        assert face(C3, "l", 2, (0, 0)) == (2,)
        assert face(C3, "r", 1, (0, 0)) == (1,)
        assert face(C3, "r", 2, (0, 0)) == (0,)

    def test_faces_drop_one_letter(self) -> None:
        w = (0, 1, 2, 1)
        for i in range(1, 5):
            assert len(face(C3, "l", i, w)) == 3
            assert len(face(C3, "r", i, w)) == 3

    def test_extreme_faces_are_deletions(self) -> None:
        w = (2, 0, 1)
        assert face(C3, "l", 1, w) == (0, 1)
        assert face(C3, "r", 3, w) == (2, 0)

    def test_degree_three_faces_of_cyclic(self) -> None:
        w = (0, 1, 2)
        assert face_left(C3, 1, w) == (1, 2)
        assert face_left(C3, 2, w) == (2, 2)
        assert face_left(C3, 3, w) == (2, 0)
        assert face_right(C3, 1, w) == (2, 0)
        assert face_right(C3, 3, w) == (0, 1)

    @pytest.mark.parametrize("name,X", UP_TO_FIVE, ids=[name for name, _ in UP_TO_FIVE])
    def test_faces_match_sliding_the_strand(self, name: str, X) -> None:
        for n in range(2, 5):
            for w in itertools.product(range(X.size), repeat=n):
                for i in range(1, n + 1):
                    assert face_left(X, i, w) == _slide_left(X, i, w), (i, w)
                    assert face_right(X, i, w) == _slide_right(X, i, w), (i, w)

    def test_index_out_of_range(self) -> None:
        with pytest.raises(IndexOutOfRange, match="outside 1..2"):
            face(C3, "l", 3, (0, 0))

    def test_letter_outside_carrier(self) -> None:
        with pytest.raises(IndexOutOfRange, match="outside the carrier"):
            face(C3, "r", 1, (0, 5))

    def test_bad_side(self) -> None:
        with pytest.raises(ValueError, match="'l' or 'r'"):
            face(C3, "x", 1, (0,))


class TestTheories:
    def test_degenerate_words_follow_fixed_pairs(self) -> None:
        # bar(a) = a - 1 in C3
        assert is_degenerate(C3, (1, 0))
        assert is_degenerate(C3, (2, 2, 1))
        assert not is_degenerate(C3, (0, 1))

    def test_degenerate_rejects_letters_outside_the_carrier(self) -> None:
        with pytest.raises(IndexOutOfRange, match="outside the carrier"):
            is_degenerate(C3, (0, 7))

    @pytest.mark.parametrize("theory", ["YB", "DEG", "NYB"])
    def test_closed_form_ranks(self, theory: str) -> None:
        X = make_alexander(8, 3, 5)
        for n in range(0, 4):
            assert chain_rank(X, theory, n) == len(enumerate_basis(X, theory, n))

    def test_ranks_split(self) -> None:
        X = make_cyclic(4)
        for n in range(0, 5):
            assert chain_rank(X, "YB", n) == chain_rank(X, "DEG", n) + chain_rank(X, "NYB", n)

    def test_degenerate_needs_a_biquandle(self) -> None:
        with pytest.raises(BarUnavailable, match="need a biquandle"):
            get_theory("DEG", _xor())


class TestBoundaryMatrix:
    def test_column_of_cyclic_d2(self) -> None:
        bm = boundary_matrix(C3, "YB", 2)
        assert bm.shape == (3, 9)
        assert bm.column((0, 0)) == {(0,): 2, (1,): -1, (2,): -1}

    def test_degree_zero_and_one_vanish(self) -> None:
        assert boundary_matrix(C3, "YB", 0).shape == (0, 1)
        assert boundary_matrix(C3, "YB", 1).matrix.is_zero()

    def test_first_homology_of_cyclic(self) -> None:
        d1 = boundary_matrix(C3, "YB", 1).matrix
        d2 = boundary_matrix(C3, "YB", 2).matrix
        assert homology(d1, d2) == AbGroup.parse("Z + Z_3")

    def test_negative_degree(self) -> None:
        with pytest.raises(IndexOutOfRange):
            boundary_matrix(C3, "YB", -1)

    def test_requires_yang_baxter(self) -> None:
        with pytest.raises(NotYangBaxter) as exc:
            boundary_matrix(_xor(), "YB", 2)
        assert exc.value.witness is not None

    def test_normalized_matrix_matches_apply_boundary(self) -> None:
        bm = boundary_matrix(C3, "NYB", 3)
        for w in bm.col_basis:
            assert apply_boundary(C3, "NYB", {w: 1}) == bm.column(w)

    def test_write_matrix(self, tmp_path) -> None:
        bm = boundary_matrix(C3, "NYB", 2)
        paths = write_matrix(bm, tmp_path / "dump")
        lines = paths[0].read_text().splitlines()
        assert paths[0].name == "NYB_d2.txt"
        assert lines[0] == "2, 3, 6"
        assert len(lines) == 1 + bm.matrix.nnz
        assert len(paths[2].read_text().splitlines()) == 6


class TestVerifyComplex:
    @pytest.mark.parametrize("name,X", UP_TO_SIX, ids=[name for name, _ in UP_TO_SIX])
    def test_builtin_biquandles_pass_every_check(self, name: str, X) -> None:
        for theory in Theory:
            report = verify_complex(X, theory, 4)
            assert report.all_pass, (theory, report.failures())
            assert report.checked_degrees == [0, 1, 2, 3, 4]

    @pytest.mark.parametrize("name,X", UP_TO_SIX, ids=[name for name, _ in UP_TO_SIX])
    def test_degenerate_pairs_have_zero_boundary(self, name: str, X) -> None:
        bm = boundary_matrix(X, "YB", 2)
        degenerate = enumerate_basis(X, "DEG", 2)
        assert len(degenerate) == X.size
        for w in degenerate:
            assert bm.column(w) == {}, w

    def test_precubical_checked_for_full_theory_only(self) -> None:
        assert verify_complex(C3, "YB", 3).precubical_ok is True
        assert verify_complex(C3, "NYB", 3).precubical_ok is None

    def test_non_birack_solution_still_gives_a_complex(self) -> None:
        X = from_tables([[0, 0], [1, 1]], [[0, 0], [1, 1]])
        report = verify_complex(X, "YB", 3)
        assert report.boundary_ok
        assert report.precubical_ok

    def test_requires_yang_baxter(self) -> None:
        with pytest.raises(NotYangBaxter):
            verify_complex(_xor(), "YB", 2)

    def test_to_dict(self) -> None:
        data = verify_complex(C3, "DEG", 2).to_dict()
        assert data["theory"] == "DEG"
        assert data["closure_ok"] is True
