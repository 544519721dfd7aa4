"""Frontier buffers, double-buffering across BSP steps, and status bitmaps."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import ID_DTYPE, UNVISITED

VERTEX = "vertex"
EDGE = "edge"


@dataclass
class Frontier:
    """A dense buffer of vertex or edge ids active in the current step.

    Capacity grows geometrically; operators that know their exact output
    size write it in one shot, so overflow cannot happen mid-step.
    """

    kind: str = VERTEX
    buf: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=ID_DTYPE))
    length: int = 0

    @classmethod
    def from_items(cls, items, kind: str = VERTEX) -> "Frontier":
        arr = np.asarray(items, dtype=ID_DTYPE)
        return cls(kind=kind, buf=arr, length=len(arr))

    @property
    def capacity(self) -> int:
        return len(self.buf)

    def to_array(self) -> np.ndarray:
        return self.buf[: self.length]

    def __len__(self) -> int:
        return self.length

    def clear(self) -> None:
        self.length = 0

    def set_items(self, items) -> None:
        items = np.asarray(items, dtype=ID_DTYPE)
        if len(items) > self.capacity:
            new_cap = max(len(items), 2 * self.capacity, 16)
            self.buf = np.empty(new_cap, dtype=ID_DTYPE)
        self.buf[: len(items)] = items
        self.length = len(items)


@dataclass
class FrontierPair:
    """Input/output frontier pair swapped at each BSP step; never aliased."""

    input: Frontier
    output: Frontier

    @classmethod
    def create(cls, kind: str = VERTEX) -> "FrontierPair":
        return cls(input=Frontier(kind=kind), output=Frontier(kind=kind))

    def swap(self) -> "FrontierPair":
        self.input, self.output = self.output, self.input
        self.output.clear()
        return self


def swap(pair: FrontierPair) -> FrontierPair:
    return pair.swap()


class StatusBitmap:
    """Per-vertex set-once marks (visited / in-frontier).

    Within one batched ``test_and_set`` the reads happen before the writes,
    so duplicates inside a batch all report "new"; callers relying on
    exact first-claim semantics must deduplicate separately.
    """

    def __init__(self, n: int):
        self.bits = np.zeros(n, dtype=bool)

    def __len__(self) -> int:
        return len(self.bits)

    def test_and_set(self, ids: np.ndarray) -> np.ndarray:
        fresh = ~self.bits[ids]
        self.bits[ids] = True
        return fresh

    def count(self) -> int:
        return int(self.bits.sum())


def generate_unvisited_frontier(labels: np.ndarray, sentinel=UNVISITED) -> Frontier:
    """Frontier of all vertices whose label still holds the unvisited
    sentinel, each exactly once, ascending."""
    return Frontier.from_items(np.flatnonzero(labels == sentinel), kind=VERTEX)
