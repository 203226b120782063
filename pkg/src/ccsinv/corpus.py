"""Bundled example systems."""

from __future__ import annotations

from importlib import resources

from .syntax import parse
from .terms import System

_DESCRIPTIONS = {
    "rem": "remove-index: nth element of a list plus the remaining list",
    "add": "addition of unary numbers",
    "ack": "the Ackermann function on unary numbers",
    "ack_2": "hand-written partial inverse of ack: first argument and result known",
    "ack_1": "hand-written partial inverse of ack: second argument and result known",
    "ack_0": "hand-written full inverse of ack: both arguments from the result",
}


def names() -> list[str]:
    return list(_DESCRIPTIONS)


def description(name: str) -> str:
    _check(name)
    return _DESCRIPTIONS[name]


def source(name: str) -> str:
    _check(name)
    return resources.files("ccsinv").joinpath(f"data/{name}.ctrs").read_text("utf-8")


def load(name: str) -> System:
    return parse(source(name))


def _check(name: str) -> None:
    if name not in _DESCRIPTIONS:
        raise KeyError(f"unknown example {name!r} (have: {', '.join(_DESCRIPTIONS)})")
