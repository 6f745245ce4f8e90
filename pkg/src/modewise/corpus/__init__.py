"""Bundled benchmark programs used by the golden and acceptance tests."""

from __future__ import annotations

from importlib import resources


def names() -> list[str]:
    """Benchmark names, without the ``.pl`` suffix."""
    root = resources.files(__name__)
    return sorted(p.name[:-3] for p in root.iterdir() if p.name.endswith(".pl"))


def source(name: str) -> str:
    try:
        return resources.files(__name__).joinpath(f"{name}.pl").read_text(encoding="utf-8")
    except FileNotFoundError:
        raise KeyError(f"no bundled program named {name!r}") from None


def load(name: str, **kw):
    """Analyse a bundled program; keyword arguments go to ``analyze_source``."""
    from ..analysis import analyze_source

    return analyze_source(source(name), f"{name}.pl", **kw)
