"""Per-predicate formula tables for success and call patterns."""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping

from .pos.domain import BoolFn
from .pos.syntax import format_formula

Pred = tuple[str, int]


class PatternTable(Mapping[Pred, BoolFn]):
    """Immutable map from predicate to a formula over ``x1..xN``.

    Lookups of absent predicates return ``default``: bottom for success
    tables, top for call tables.  Equality is pointwise over the union of
    keys, with absent entries read as the default.
    """

    def __init__(self, default: BoolFn, entries: Mapping[Pred, BoolFn] | None = None) -> None:
        self.default = default
        self._entries = dict(entries or {})

    def __getitem__(self, pred: Pred) -> BoolFn:
        return self._entries.get(pred, self.default)

    def __iter__(self) -> Iterator[Pred]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, pred: object) -> bool:
        return pred in self._entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PatternTable):
            return NotImplemented
        keys = set(self._entries) | set(other._entries)
        return self.default == other.default and all(self[k] == other[k] for k in keys)

    def __hash__(self) -> int:  # pragma: no cover - tables are not used as keys
        raise TypeError("PatternTable is unhashable")

    def updated(self, changes: Mapping[Pred, BoolFn]) -> PatternTable:
        entries = dict(self._entries)
        entries.update(changes)
        return PatternTable(self.default, entries)

    def format(self, preds: Iterable[Pred] | None = None, namer: Callable[[int], str] | None = None) -> list[str]:
        lines = []
        for p in preds if preds is not None else self._entries:
            if p in self._entries:
                lines.append(f"{p[0]}/{p[1]}: {format_formula(self[p], namer)}")
        return lines

    def __repr__(self) -> str:
        return "PatternTable({" + ", ".join(self.format()) + "})"
