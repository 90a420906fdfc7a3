"""Unit tests for run configuration parsing and environment defaults."""

from __future__ import annotations

import pytest

from ybhomology.config import THEORY_NAMES
from ybhomology.config import RunConfig
from ybhomology.config import _env_flag
from ybhomology.config import _env_int
from ybhomology.config import parse_coeff
from ybhomology.config import parse_theories
from ybhomology.exceptions import NotPrime


class TestParseTheories:
    def test_all(self) -> None:
        assert parse_theories("all") == THEORY_NAMES

    def test_canonical_order(self) -> None:
        assert parse_theories("nyb, yb") == ("YB", "NYB")

    def test_unknown(self) -> None:
        with pytest.raises(ValueError, match="Unknown theory CUBE"):
            parse_theories("yb,cube")

    def test_empty(self) -> None:
        with pytest.raises(ValueError):
            parse_theories(" , ")


class TestParseCoeff:
    def test_integers(self) -> None:
        assert parse_coeff("Z") is None
        assert parse_coeff("z") is None

    def test_prime_fields(self) -> None:
        assert parse_coeff("p3") == 3
        assert parse_coeff("5") == 5

    def test_not_prime(self) -> None:
        with pytest.raises(NotPrime, match="4 is not prime"):
            parse_coeff("p4")

    def test_garbage(self) -> None:
        with pytest.raises(ValueError, match="must be Z or pP"):
            parse_coeff("Q")


class TestEnv:
    def test_flag(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("YBH_TEST_FLAG", "Yes")
        assert _env_flag("YBH_TEST_FLAG")
        monkeypatch.setenv("YBH_TEST_FLAG", "0")
        assert not _env_flag("YBH_TEST_FLAG")

    def test_int(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv("YBH_TEST_INT", raising=False)
        assert _env_int("YBH_TEST_INT", 7) == 7
        monkeypatch.setenv("YBH_TEST_INT", "12")
        assert _env_int("YBH_TEST_INT", 7) == 12
        monkeypatch.setenv("YBH_TEST_INT", "twelve")
        with pytest.raises(ValueError, match="YBH_TEST_INT"):
            _env_int("YBH_TEST_INT", 7)


class TestRunConfig:
    def test_defaults(self) -> None:
        config = RunConfig(command="homology")
        assert config.theories == THEORY_NAMES
        assert config.coeff_label == "Z"

    def test_coeff_label(self) -> None:
        assert RunConfig(command="homology", coeff=3).coeff_label == "Z/3"

    @pytest.mark.parametrize(
        "kwargs,message",
        [
            ({"max_degree": 0}, "max_degree"),
            ({"guard": 0}, "guard"),
            ({"workers": 0}, "workers"),
            ({"output_format": "yaml"}, "output format"),
            ({"theories": ("CUBE",)}, "Unknown theories"),
        ],
    )
    def test_rejects(self, kwargs: dict, message: str) -> None:
        with pytest.raises(ValueError, match=message):
            RunConfig(command="homology", **kwargs)

    def test_rejects_composite_coefficient(self) -> None:
        with pytest.raises(NotPrime):
            RunConfig(command="homology", coeff=6)
