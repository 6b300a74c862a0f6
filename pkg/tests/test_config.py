from __future__ import annotations

import pytest

from structura.config import DEFAULT_GRID, CommandConfig
from structura.errors import InvalidDomainError, InvalidParameterError
from structura.fields import Disk
from structura.wirtinger import StepPolicy


def test_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("STRUCTURA_GRID", raising=False)
    cfg = CommandConfig("check-holo")
    assert cfg.grid == DEFAULT_GRID
    assert cfg.mode == "reduced"
    assert cfg.format == "json"
    assert cfg.policy == StepPolicy(1e-5, 1e-3)
    assert cfg.make_grid().nx == DEFAULT_GRID


def test_grid_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("STRUCTURA_GRID", "32")
    assert CommandConfig("check-holo").grid == 32
    assert CommandConfig("check-holo", grid=8).grid == 8
    monkeypatch.setenv("STRUCTURA_GRID", "many")
    with pytest.raises(InvalidParameterError):
        CommandConfig("check-holo")


def test_from_dict() -> None:
    cfg = CommandConfig.from_dict(
        {"subcommand": "solve-dbar", "domain": "disk:0,0,1", "grid": 16, "margin": 0.25}
    )
    assert isinstance(cfg.shape, Disk)
    assert cfg.make_grid().n_valid < 16 * 16
    with pytest.raises(InvalidParameterError, match="Unknown field"):
        CommandConfig.from_dict({"subcommand": "diff", "colour": "red"})


@pytest.mark.parametrize(
    "values, error",
    [
        ({"grid": 1}, InvalidParameterError),
        ({"domain": "circle:0,0,1"}, InvalidDomainError),
        ({"domain": "disk:0,0,-1"}, InvalidDomainError),
        ({"box": "rect:1,0,0,1"}, InvalidDomainError),
        ({"mode": "partial"}, InvalidParameterError),
        ({"convention": "other"}, InvalidParameterError),
        ({"format": "xml"}, InvalidParameterError),
        ({"combination": "quotient"}, InvalidParameterError),
    ],
)
def test_invalid_settings(values: dict, error: type) -> None:
    with pytest.raises(error):
        CommandConfig("check-holo", **values)


def test_available_options() -> None:
    options = CommandConfig("diff", grid=4).available_options()
    assert "Name: grid" in options
    assert "Name: domain - Type: str - Default value: rect:-1,1,-1,1" in options
