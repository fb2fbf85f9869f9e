"""Graph documents for the small graphs used as worked examples."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

NAMES = ("L1", "ACY1", "EX3", "EX4", "E1", "R2", "E3", "F")


def fixture_text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.graph").read_text()


@lru_cache(maxsize=None)
def load(name: str):
    from ..dsl import parse_graph

    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")
    return parse_graph(fixture_text(name))
