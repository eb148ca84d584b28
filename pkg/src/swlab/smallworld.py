"""Random small-world ensemble on the torus.

Each node u owns q long-range ("weak") out-ties whose endpoints are drawn with
probability proportional to 1/distance(u, v)^alpha, exactly, via an inverse
CDF over distance shells followed by a uniform pick inside the shell.  Short
"strong" ties are implicit: every pair within distance p is strongly tied.

Graphs materialize either eagerly (all ties up front, one master stream) or
lazily (per-node streams keyed by (seed, node), drawn at first reveal), so a
lazily revealed tie never depends on the order in which nodes were revealed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .topology import NodeId, TorusGrid, distance_counts, shell_offsets

DIRECTED = "directed"
UNDIRECTED = "undirected"


@dataclass(frozen=True)
class ModelParams:
    """One random-network ensemble: torus side, tie exponent, and contagion knobs."""

    side: int
    alpha: float
    p: int = 1
    q: int = 1
    k: int = 1
    directedness: str = DIRECTED

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", float(self.alpha))
        if self.side < 2:
            raise ValueError(f"side must be >= 2, got {self.side}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if self.q < 0:
            raise ValueError(f"q must be >= 0, got {self.q}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.directedness not in (DIRECTED, UNDIRECTED):
            raise ValueError(f"directedness must be {DIRECTED!r} or {UNDIRECTED!r}")

    @property
    def grid(self) -> TorusGrid:
        return TorusGrid(self.side)

    @property
    def n(self) -> int:
        return self.side * self.side

    @property
    def is_canonical_regime(self) -> bool:
        """p = q = k, the configuration whose routing is guaranteed to terminate."""
        return self.p == self.q == self.k


def _shell_weights(L: int, alpha: float) -> np.ndarray:
    counts = distance_counts(L)
    d = np.arange(1, len(counts), dtype=np.float64)
    w = counts[1:] * d ** (-alpha)
    if np.any(w <= 0.0):
        raise ValueError(f"alpha={alpha} underflows the weight of some shell on L={L}")
    return w


def normalizing_constant(g: TorusGrid, alpha: float) -> float:
    """Z = 1 / sum over all other nodes of distance^-alpha (source-independent)."""
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    return float(1.0 / _shell_weights(g.side, alpha).sum())


class WeakTieSampler:
    """Exact endpoint sampler: P(v) = Z * distance(u, v)^-alpha.

    Two uniforms per draw: one locates the distance shell through the
    cumulative shell weights, one picks a slot in the shell's canonical
    row-major offset ordering.
    """

    def __init__(self, grid: TorusGrid, alpha: float):
        self.grid = grid
        self.alpha = float(alpha)
        self._weights = _shell_weights(grid.side, alpha)
        self._cum = np.cumsum(self._weights)
        self.total_weight = float(self._cum[-1])
        self.z = 1.0 / self.total_weight
        self._drow, self._dcol, self._start = shell_offsets(grid.side)
        self._counts = distance_counts(grid.side)

    def shell_cdf_increments(self) -> np.ndarray:
        """Per-shell probabilities as the sampler actually realizes them."""
        diffs = np.diff(self._cum, prepend=0.0)
        return diffs / self.total_weight

    def node_probability(self, d: int) -> float:
        """Probability of any single endpoint at distance d."""
        return self.z * float(d) ** (-self.alpha)

    def sample_offsets(self, rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized draw of `size` endpoint offsets (drow, dcol)."""
        r = rng.random(size) * self.total_weight
        shell = np.searchsorted(self._cum, r, side="right")
        np.clip(shell, 0, len(self._cum) - 1, out=shell)
        d = shell + 1
        within = (rng.random(size) * self._counts[d]).astype(np.int64)
        np.minimum(within, self._counts[d] - 1, out=within)
        idx = self._start[d] + within
        return self._drow[idx], self._dcol[idx]

    def sample(self, u: NodeId, rng: np.random.Generator) -> NodeId:
        dr, dc = self.sample_offsets(rng, 1)
        L = self.grid.side
        return NodeId(int((u.row + dr[0]) % L), int((u.col + dc[0]) % L))


def sample_weak_tie(sampler: WeakTieSampler, u: NodeId, rng: np.random.Generator) -> NodeId:
    """Draw one weak-tie endpoint for u; never returns u itself."""
    return sampler.sample(u, rng)


_sampler_cache: dict[tuple[int, float], WeakTieSampler] = {}


def get_sampler(grid: TorusGrid, alpha: float) -> WeakTieSampler:
    key = (grid.side, float(alpha))
    s = _sampler_cache.get(key)
    if s is None:
        s = _sampler_cache[key] = WeakTieSampler(grid, alpha)
    return s


def _node_stream(seed: int, node_flat: int) -> np.random.Generator:
    return np.random.default_rng((seed, node_flat))


def _check_seed(seed: int) -> int:
    if seed < 0:
        raise ValueError(f"seed must be a non-negative integer, got {seed}")
    return int(seed)


@dataclass
class Graph:
    """Fully materialized network: per-node weak out-tie records.

    `ties[i]` holds node i's q endpoint flat indices in draw order; duplicate
    endpoints are kept as distinct tie records.  Strong ties are implicit.
    """

    params: ModelParams
    seed: int
    ties: np.ndarray  # shape (n, q), flat destination indices
    _exposure: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    def weak_out_ties(self, u: NodeId) -> list[NodeId]:
        g = self.params.grid
        return [g.unflatten(int(t)) for t in self.ties[g.flatten(u)]]

    def out_ties_flat(self, i: int) -> np.ndarray:
        return self.ties[i]

    def exposure_ties(self) -> tuple[np.ndarray, np.ndarray]:
        """Weak-tie exposure adjacency as CSR (indptr, dst).

        For each contributor s, the distinct endpoints it can expose beyond
        its strong ball: duplicate (s, v) records collapse to one and pairs
        already inside the strong radius are dropped (the strong tie counts
        that contributor once on its own).  In undirected mode both endpoints
        of a weak tie contribute to each other.
        """
        if self._exposure is None:
            self._exposure = _build_exposure_csr(self.params, self.ties)
        return self._exposure


def _build_exposure_csr(params: ModelParams, ties: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n, q = params.n, params.q
    L = params.side
    if q == 0:
        return np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int64)
    src = np.repeat(np.arange(n, dtype=np.int64), q)
    dst = ties.reshape(-1).astype(np.int64)
    if params.directedness == UNDIRECTED:
        src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
    dr = np.abs(src // L - dst // L)
    dc = np.abs(src % L - dst % L)
    dist = np.minimum(dr, L - dr) + np.minimum(dc, L - dc)
    keep = dist > params.p
    pair = src[keep] * n + dst[keep]
    pair = np.unique(pair)
    src, dst = pair // n, pair % n
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, dst


def generate_graph(params: ModelParams, seed: int) -> Graph:
    """Draw all n*q weak ties eagerly from one master stream."""
    seed = _check_seed(seed)
    n, q, L = params.n, params.q, params.side
    sampler = get_sampler(params.grid, params.alpha)
    rng = np.random.default_rng((seed,))
    if q == 0:
        ties = np.zeros((n, 0), dtype=np.int64)
        return Graph(params, seed, ties)
    # Node-major draw order: node i's ties occupy row i.
    drow, dcol = sampler.sample_offsets(rng, n * q)
    src = np.repeat(np.arange(n, dtype=np.int64), q)
    dst = ((src // L + drow) % L) * L + (src % L + dcol) % L
    return Graph(params, seed, dst.reshape(n, q))


class LazyGraphHandle:
    """Deferred-decision view of the same ensemble.

    A node's ties are drawn from its own stream, keyed by (seed, node), at the
    moment the node is first revealed, then cached.  Reveal order therefore
    cannot influence which ties a node gets.
    """

    def __init__(self, params: ModelParams, seed: int):
        if params.directedness != DIRECTED:
            raise ValueError("lazy revelation is only sound for directed weak ties")
        self.params = params
        self.seed = _check_seed(seed)
        self._sampler = get_sampler(params.grid, params.alpha)
        self._revealed: dict[int, np.ndarray] = {}

    def revealed_nodes(self) -> dict[int, np.ndarray]:
        return self._revealed

    def is_revealed(self, i: int) -> bool:
        return i in self._revealed

    def out_ties_flat(self, i: int) -> np.ndarray:
        ties = self._revealed.get(i)
        if ties is None:
            q, L = self.params.q, self.params.side
            rng = _node_stream(self.seed, i)
            drow, dcol = self._sampler.sample_offsets(rng, q)
            ties = ((i // L + drow) % L) * L + (i % L + dcol) % L
            ties.setflags(write=False)
            self._revealed[i] = ties
        return ties


def reveal_out_ties(lazy: LazyGraphHandle, u: NodeId) -> list[NodeId]:
    """Reveal (drawing on first call) and return u's q weak out-tie endpoints."""
    g = lazy.params.grid
    return [g.unflatten(int(t)) for t in lazy.out_ties_flat(g.flatten(u))]


def save_graph(graph: Graph, path: str | Path) -> None:
    """Plain-text edge list; header `L alpha p q k directedness seed`."""
    p = graph.params
    L = p.side
    lines = [f"{L} {p.alpha!r} {p.p} {p.q} {p.k} {p.directedness} {graph.seed}"]
    for i in range(p.n):
        sr, sc = i // L, i % L
        for t in graph.ties[i]:
            lines.append(f"{sr} {sc} {int(t) // L} {int(t) % L}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_graph(path: str | Path) -> Graph:
    text = Path(path).read_text().splitlines()
    if not text:
        raise ValueError(f"{path}: empty graph file")
    head = text[0].split()
    if len(head) != 7:
        raise ValueError(f"{path}: bad header {text[0]!r}")
    params = ModelParams(
        side=int(head[0]),
        alpha=float(head[1]),
        p=int(head[2]),
        q=int(head[3]),
        k=int(head[4]),
        directedness=head[5],
    )
    seed = int(head[6])
    L, n, q = params.side, params.n, params.q
    ties = np.zeros((n, q), dtype=np.int64)
    fill = np.zeros(n, dtype=np.int64)
    for lineno, line in enumerate(text[1:], start=2):
        if not line.strip():
            continue
        sr, sc, dr, dc = (int(x) for x in line.split())
        s = sr * L + sc
        if fill[s] >= q:
            raise ValueError(f"{path}:{lineno}: node ({sr},{sc}) has more than q={q} ties")
        ties[s, fill[s]] = dr * L + dc
        fill[s] += 1
    if not np.all(fill == q):
        raise ValueError(f"{path}: some nodes have fewer than q={q} ties")
    return Graph(params, seed, ties)
