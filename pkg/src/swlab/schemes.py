"""Pluggable node-selection schemes for routing.

A scheme is a pure function of (DecentralizedView, rng): it may look only at
the activated nodes, their strong neighborhoods, and their revealed weak
out-ties.  The engine mirrors these selections with incremental fast paths;
replaying the pure form against serialized views must reproduce the engine's
choices exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .contagion import DecentralizedView
from .topology import NodeId, torus_distance


class NoCandidateError(Exception):
    """Raised when a selection is requested from an empty frontier."""


@dataclass(frozen=True)
class SchemeDescriptor:
    name: str
    kind: str  # "deterministic" | "randomized"
    params: tuple = field(default=())


def greedy_select(view: DecentralizedView, m: int) -> list[NodeId]:
    """The m exposed nodes closest to the target; ties broken row-major."""
    if view.target is None:
        raise ValueError("greedy selection requires a target")
    frontier = view.exposed_frontier()
    if not frontier:
        raise NoCandidateError("empty frontier")
    g = view.grid
    frontier.sort(key=lambda v: (torus_distance(g, v, view.target), g.flatten(v)))
    return frontier[: min(m, len(frontier))]


def random_select(view: DecentralizedView, m: int, rng: np.random.Generator) -> list[NodeId]:
    """Uniform sample without replacement from the frontier.

    The frontier is canonicalized to row-major order before index sampling so
    the draw depends only on (view, rng state).
    """
    frontier = view.exposed_frontier()
    if not frontier:
        raise NoCandidateError("empty frontier")
    cnt = min(m, len(frontier))
    pos = rng.choice(len(frontier), size=cnt, replace=False)
    return [frontier[int(j)] for j in pos]


def activate_all_select(view: DecentralizedView, m: int | None = None) -> list[NodeId]:
    """The entire frontier (the bridge scheme realizing diffusion); never errors."""
    return view.exposed_frontier()


class GreedyScheme:
    descriptor = SchemeDescriptor("greedy", "deterministic")
    needs_rng = False

    def select(self, view, m, rng=None):
        return greedy_select(view, m)


class RandomScheme:
    descriptor = SchemeDescriptor("random", "randomized")
    needs_rng = True

    def select(self, view, m, rng=None):
        if rng is None:
            raise ValueError("random scheme needs an rng")
        return random_select(view, m, rng)


class ActivateAllScheme:
    descriptor = SchemeDescriptor("activate-all", "deterministic")
    needs_rng = False

    def select(self, view, m, rng=None):
        return activate_all_select(view, m)


_REGISTRY = {
    "greedy": GreedyScheme,
    "random": RandomScheme,
    "activate-all": ActivateAllScheme,
}


def scheme_names() -> list[str]:
    return sorted(_REGISTRY)


def get_scheme(name: str):
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise ValueError(f"unknown scheme {name!r}; known: {', '.join(scheme_names())}") from None
