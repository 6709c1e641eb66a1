"""Weighted graph model, residual graphs, instance generators and text I/O.

Graphs are undirected, vertices carry positive integer weights, and edges
are stored normalized (u < v) and sorted so that serialization and residual
edge ordering are canonical. Instances are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class GraphFormatError(ValueError):
    """Malformed instance text (bad header, bad line, inconsistent counts)."""


@dataclass(frozen=True)
class WeightedGraph:
    """Immutable weighted graph instance.

    n: number of vertices (>= 1), indexed 0..n-1.
    weights: per-vertex positive integer weights.
    edges: normalized (u < v), sorted, duplicate-free undirected edges.
    """

    n: int
    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def w_max(self) -> int:
        return max(self.weights)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @cached_property
    def _w64(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.int64)

    @cached_property
    def _edge_u(self) -> np.ndarray:
        return np.asarray([e[0] for e in self.edges], dtype=np.intp)

    @cached_property
    def _edge_v(self) -> np.ndarray:
        return np.asarray([e[1] for e in self.edges], dtype=np.intp)


@dataclass(frozen=True)
class ResidualGraph:
    """The graph left after deleting the vertices selected by a genotype.

    kept: original indices of the surviving vertices, ascending (this is the
        back-map: residual vertex i corresponds to original vertex kept[i]).
    edges: the uncovered edges, expressed in residual (kept) index space,
        normalized and sorted.
    """

    original_n: int
    kept: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.kept)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def original_edges(self) -> tuple[tuple[int, int], ...]:
        """The uncovered edges in original index space."""
        k = self.kept
        return tuple((k[u], k[v]) for u, v in self.edges)


def build_graph(n: int, weights: Sequence[int], edges: Iterable[tuple[int, int]]) -> WeightedGraph:
    """Validate and build an immutable instance.

    Weights must be positive integers; self-loops and out-of-range endpoints
    are rejected. Parallel edges collapse to a single edge.
    """
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    weights = [int(w) for w in weights]
    if len(weights) != n:
        raise ValueError(f"expected {n} weights, got {len(weights)}")
    for i, w in enumerate(weights):
        if w < 1:
            raise ValueError(f"weight of vertex {i} must be >= 1, got {w}")
    norm = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        norm.add((u, v) if u < v else (v, u))
    return WeightedGraph(n=n, weights=tuple(weights), edges=tuple(sorted(norm)))


# ---------------------------------------------------------------------------
# Genotypes
# ---------------------------------------------------------------------------

def as_genotype(x: Sequence[int] | np.ndarray, n: int) -> np.ndarray:
    """Coerce a 0/1 sequence to a uint8 bit array of length n."""
    bits = np.asarray(x, dtype=np.uint8)
    if bits.ndim != 1 or bits.size != n:
        raise ValueError(f"genotype length {bits.size} does not match n={n}")
    if bits.size and bits.max() > 1:
        raise ValueError("genotype entries must be 0 or 1")
    return bits


def genotype_from_string(s: str, n: int) -> np.ndarray:
    if len(s) != n or set(s) - {"0", "1"}:
        raise ValueError(f"expected a 0/1 string of length {n}, got {s!r}")
    return np.frombuffer(s.encode("ascii"), dtype=np.uint8) - ord("0")


def genotype_to_string(bits: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in bits)


def cost(g: WeightedGraph, x: Sequence[int] | np.ndarray) -> int:
    """Total weight of the selected vertices."""
    bits = as_genotype(x, g.n)
    return int(g._w64 @ bits)


def is_cover(g: WeightedGraph, x: Sequence[int] | np.ndarray) -> bool:
    """True iff every edge has a selected endpoint."""
    bits = as_genotype(x, g.n)
    if not g.edges:
        return True
    sel = bits.view(np.bool_)
    return bool((sel[g._edge_u] | sel[g._edge_v]).all())


def residual(g: WeightedGraph, x: Sequence[int] | np.ndarray) -> ResidualGraph:
    """Delete the selected vertices and every edge they cover."""
    bits = as_genotype(x, g.n)
    kept = tuple(int(i) for i in np.flatnonzero(bits == 0))
    pos = {orig: i for i, orig in enumerate(kept)}
    edges = tuple(
        (pos[u], pos[v]) for u, v in g.edges if not bits[u] and not bits[v]
    )
    return ResidualGraph(original_n=g.n, kept=kept, edges=edges)


# ---------------------------------------------------------------------------
# Instance generators
# ---------------------------------------------------------------------------

def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _draw_weights(rng: np.random.Generator, n: int, w_max: int) -> list[int]:
    if w_max < 1:
        raise ValueError(f"w_max must be >= 1, got {w_max}")
    return [int(w) for w in rng.integers(1, w_max, size=n, endpoint=True)]


def gnp(n: int, p: float, w_max: int = 1, seed: int = 0) -> WeightedGraph:
    """Erdos-Renyi G(n, p) with uniform random integer weights in [1, w_max]."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p must be in [0, 1], got {p}")
    rng = _rng(seed)
    weights = _draw_weights(rng, n, w_max)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return build_graph(n, weights, edges)


def path(n: int, w_max: int = 1, seed: int = 0) -> WeightedGraph:
    """Path on n vertices (n-1 edges)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = _rng(seed)
    weights = _draw_weights(rng, n, w_max)
    return build_graph(n, weights, [(i, i + 1) for i in range(n - 1)])


def star(k: int, w_max: int = 1, seed: int = 0) -> WeightedGraph:
    """Star with center 0 and k leaves (n = k + 1)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rng = _rng(seed)
    weights = _draw_weights(rng, k + 1, w_max)
    return build_graph(k + 1, weights, [(0, i) for i in range(1, k + 1)])


def complete_bipartite(a: int, b: int, w_max: int = 1, seed: int = 0) -> WeightedGraph:
    """K_{a,b}: left part 0..a-1, right part a..a+b-1."""
    if a < 1 or b < 1:
        raise ValueError(f"both sides must be >= 1, got {a}, {b}")
    rng = _rng(seed)
    weights = _draw_weights(rng, a + b, w_max)
    edges = [(i, a + j) for i in range(a) for j in range(b)]
    return build_graph(a + b, weights, edges)


GENERATOR_KINDS = ("gnp", "path", "star", "complete-bipartite")


def gen_instance(kind: str, params: dict, w_max: int = 1, seed: int = 0) -> WeightedGraph:
    """Dispatch on generator kind; deterministic for fixed (kind, params, seed)."""
    if kind == "gnp":
        return gnp(int(params["n"]), float(params["p"]), w_max, seed)
    if kind == "path":
        return path(int(params["n"]), w_max, seed)
    if kind == "star":
        return star(int(params["k"]), w_max, seed)
    if kind == "complete-bipartite":
        return complete_bipartite(int(params["a"]), int(params["b"]), w_max, seed)
    raise ValueError(f"unknown generator kind {kind!r}")


# ---------------------------------------------------------------------------
# Text instance format
# ---------------------------------------------------------------------------
#   p wvc <n> <m>
#   v <index> <weight>      (n lines, 0-based)
#   e <u> <v>               (m lines, u < v)
# Blank lines and lines starting with '#' are ignored.

def serialize_instance(g: WeightedGraph) -> str:
    lines = [f"p wvc {g.n} {g.m}"]
    lines.extend(f"v {i} {w}" for i, w in enumerate(g.weights))
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> WeightedGraph:
    n = m = None
    weights: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                if n is not None:
                    raise GraphFormatError(f"line {lineno}: duplicate header")
                if len(parts) != 4 or parts[1] != "wvc":
                    raise GraphFormatError(f"line {lineno}: expected 'p wvc <n> <m>'")
                n, m = int(parts[2]), int(parts[3])
            elif parts[0] == "v":
                if n is None:
                    raise GraphFormatError(f"line {lineno}: vertex line before header")
                if len(parts) != 3:
                    raise GraphFormatError(f"line {lineno}: expected 'v <index> <weight>'")
                i, w = int(parts[1]), int(parts[2])
                if not 0 <= i < n:
                    raise GraphFormatError(f"line {lineno}: vertex index {i} out of range")
                if i in weights:
                    raise GraphFormatError(f"line {lineno}: duplicate weight for vertex {i}")
                if w < 1:
                    raise GraphFormatError(f"line {lineno}: weight must be >= 1")
                weights[i] = w
            elif parts[0] == "e":
                if n is None:
                    raise GraphFormatError(f"line {lineno}: edge line before header")
                if len(parts) != 3:
                    raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>'")
                u, v = int(parts[1]), int(parts[2])
                if u == v:
                    raise GraphFormatError(f"line {lineno}: self-loop at {u}")
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphFormatError(f"line {lineno}: edge ({u}, {v}) out of range")
                key = (u, v) if u < v else (v, u)
                if key in seen_edges:
                    raise GraphFormatError(f"line {lineno}: duplicate edge ({u}, {v})")
                seen_edges.add(key)
                edges.append(key)
            else:
                raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise GraphFormatError("missing 'p wvc <n> <m>' header")
    if len(weights) != n:
        raise GraphFormatError(f"expected {n} weight lines, got {len(weights)}")
    if m != len(edges):
        raise GraphFormatError(f"header announces {m} edges, got {len(edges)}")
    return build_graph(n, [weights[i] for i in range(n)], edges)


def load_instance(path: str) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def save_instance(g: WeightedGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_instance(g))
