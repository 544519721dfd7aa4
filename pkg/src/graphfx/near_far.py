"""Two-slice near/far priority queue for distance-bucketed processing.

The near slice holds items whose key sits under the current threshold and
is drained first; everything else parks in the far slice. When the near
slice empties, the threshold advances by one bucket width and the far
slice is re-split. Far items are stored with the key they were enqueued
under; an item whose label improved since enqueue is stale and gets
dropped at re-split time (its better copy is already near or processed).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .frontier import VERTEX, Frontier
from .graph import ID_DTYPE


def split(frontier: Frontier, key, threshold) -> tuple[Frontier, Frontier]:
    """Partition by key: strictly-under-threshold items go near, the rest
    far. Multiset-conserving."""
    items = frontier.to_array()
    keys = np.asarray(key(items)) if len(items) else np.empty(0, dtype=ID_DTYPE)
    near = keys < threshold
    return (
        Frontier.from_items(items[near], kind=frontier.kind),
        Frontier.from_items(items[~near], kind=frontier.kind),
    )


@dataclass
class NearFarPile:
    delta: float
    threshold: float
    near: Frontier = field(default_factory=lambda: Frontier(kind=VERTEX))
    far: Frontier = field(default_factory=lambda: Frontier(kind=VERTEX))
    far_keys: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=ID_DTYPE))

    def push(self, frontier: Frontier, key) -> None:
        """Split incoming items against the current threshold and append
        the far share (with its enqueue keys) to the far slice."""
        items = frontier.to_array()
        if len(items) == 0:
            return
        keys = np.asarray(key(items))
        near_mask = keys < self.threshold
        near_items = items[near_mask]
        if len(self.near):
            near_items = np.concatenate([self.near.to_array(), near_items])
        self.near = Frontier.from_items(near_items, kind=frontier.kind)
        far_items = items[~near_mask]
        if len(far_items):
            self.far = Frontier.from_items(
                np.concatenate([self.far.to_array(), far_items]), kind=frontier.kind
            )
            self.far_keys = np.concatenate([self.far_keys, keys[~near_mask]])

    def pop_near(self) -> Frontier:
        out = self.near
        self.near = Frontier(kind=out.kind)
        return out

    def empty(self) -> bool:
        return len(self.near) == 0 and len(self.far) == 0


def advance_bucket(pile: NearFarPile, key) -> NearFarPile:
    """Move to the next bucket: raise the threshold by delta, drop stale
    far entries (enqueue key no longer matches the live key), and re-split
    the survivors. Only legal once the near slice is drained."""
    if len(pile.near):
        raise ValueError("advance_bucket requires an empty near slice")
    if len(pile.far) == 0:
        raise ValueError("advance_bucket requires a nonempty far slice")
    pile.threshold = pile.threshold + pile.delta
    items = pile.far.to_array()
    live = np.asarray(key(items))
    fresh = live == pile.far_keys
    items, live = items[fresh], live[fresh]
    near_mask = live < pile.threshold
    pile.near = Frontier.from_items(items[near_mask], kind=pile.far.kind)
    pile.far = Frontier.from_items(items[~near_mask], kind=pile.far.kind)
    pile.far_keys = live[~near_mask]
    return pile
