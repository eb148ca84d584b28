"""L x L torus geometry: wrap-around Manhattan distance and distance shells.

All shell machinery is position-independent: a shell is stored as (drow, dcol)
offsets, canonically ordered row-major, and translated to a concrete source
node on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np


class NodeId(NamedTuple):
    """Grid coordinates, always kept reduced modulo the torus side."""

    row: int
    col: int


@dataclass(frozen=True)
class TorusGrid:
    """Square torus with side L and n = L*L nodes."""

    side: int

    def __post_init__(self) -> None:
        if int(self.side) != self.side or self.side < 2:
            raise ValueError(f"torus side must be an integer >= 2, got {self.side!r}")
        object.__setattr__(self, "side", int(self.side))

    @property
    def n(self) -> int:
        return self.side * self.side

    @property
    def max_distance(self) -> int:
        """Largest attainable distance, 2*floor(L/2); equals L only for even L."""
        return 2 * (self.side // 2)

    def node(self, row: int, col: int) -> NodeId:
        return NodeId(row % self.side, col % self.side)

    def flatten(self, u: NodeId) -> int:
        return u.row * self.side + u.col

    def unflatten(self, i: int) -> NodeId:
        return NodeId(i // self.side, i % self.side)

    def contains(self, u: NodeId) -> bool:
        return 0 <= u.row < self.side and 0 <= u.col < self.side


def torus_distance(g: TorusGrid, u: NodeId, v: NodeId) -> int:
    """Manhattan distance with per-axis wrap-around."""
    L = g.side
    dr = abs(u.row - v.row)
    dc = abs(u.col - v.col)
    return min(dr, L - dr) + min(dc, L - dc)


@lru_cache(maxsize=None)
def axis_multiplicity(L: int) -> np.ndarray:
    """m[a] = number of 1-d offsets in [0, L) at ring distance a."""
    a = np.arange(L)
    axd = np.minimum(a, L - a)
    m = np.bincount(axd, minlength=L // 2 + 1)
    m.setflags(write=False)
    return m


@lru_cache(maxsize=None)
def distance_counts(L: int) -> np.ndarray:
    """c[d] = number of nodes at torus distance d from any fixed node.

    c[0] = 0 by convention (the source itself is excluded); sum(c) = L*L - 1.
    Position-independent by torus symmetry.
    """
    m = axis_multiplicity(L)
    c = np.convolve(m, m).astype(np.int64)
    c[0] -= 1  # drop the (0, 0) offset
    c.setflags(write=False)
    return c


@lru_cache(maxsize=None)
def shell_offsets(L: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All nonzero offsets grouped by distance.

    Returns (drow, dcol, start): offsets sorted by distance, row-major within
    each shell; the shell at distance d occupies [start[d], start[d+1]).
    """
    a = np.arange(L)
    axd = np.minimum(a, L - a)
    dist = (axd[:, None] + axd[None, :]).ravel()
    order = np.argsort(dist, kind="stable")[1:]  # skip the zero offset
    drow = (order // L).astype(np.int64)
    dcol = (order % L).astype(np.int64)
    start = np.zeros(2 * (L // 2) + 2, dtype=np.int64)
    np.cumsum(distance_counts(L)[1:], out=start[2:])
    for arr in (drow, dcol, start):
        arr.setflags(write=False)
    return drow, dcol, start


@lru_cache(maxsize=None)
def ball_offsets(L: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Offsets of all nodes within distance 1..p (the strong-tie ball)."""
    if p < 1:
        raise ValueError(f"radius must be >= 1, got {p}")
    drow, dcol, start = shell_offsets(L)
    hi = start[min(p, 2 * (L // 2)) + 1]
    return drow[:hi], dcol[:hi]


def _check_distance_range(g: TorusGrid, d: int) -> None:
    if not 1 <= d <= g.max_distance:
        raise ValueError(
            f"distance {d} out of range [1, {g.max_distance}] on a {g.side}x{g.side} torus"
        )


def count_at_distance(g: TorusGrid, d: int) -> int:
    """Number of nodes at distance exactly d from any fixed node."""
    _check_distance_range(g, d)
    return int(distance_counts(g.side)[d])


def nodes_at_distance(g: TorusGrid, u: NodeId, d: int) -> list[NodeId]:
    """The distance-d shell around u, in canonical row-major offset order."""
    _check_distance_range(g, d)
    L = g.side
    drow, dcol, start = shell_offsets(L)
    lo, hi = start[d], start[d + 1]
    rows = (u.row + drow[lo:hi]) % L
    cols = (u.col + dcol[lo:hi]) % L
    return [NodeId(int(r), int(c)) for r, c in zip(rows, cols)]
