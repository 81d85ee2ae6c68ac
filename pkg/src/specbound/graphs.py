"""Simple undirected graphs: construction, graph6 I/O, and deterministic families.

Vertices are the contiguous integers 0..n-1. Edges are unordered pairs of
distinct vertices; the ordered-pair view (each edge counted in both
directions) is what the matrix summations elsewhere in the package use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GRAPH6_PREFIX = ">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 input."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1.

    ``edges`` holds each edge once as a tuple (u, v) with u < v.
    """

    n: int
    edges: frozenset

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"vertex count must be a non-negative integer, got {self.n!r}")
        for e in self.edges:
            if not (isinstance(e, tuple) and len(e) == 2):
                raise ValueError(f"edge {e!r} is not a pair")
            u, v = e
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge {e!r} is not a sorted pair of distinct vertices < {self.n}")

    @classmethod
    def from_edges(cls, n, edges) -> "Graph":
        """Build a graph from any iterable of vertex pairs, normalizing order."""
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            normalized.add((u, v))
        return cls(int(n), frozenset(normalized))

    @property
    def m(self) -> int:
        """Number of (unordered) edges."""
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def neighbor_sets(self) -> list:
        """Adjacency as a list of neighbor sets, indexed by vertex."""
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list:
        return [len(s) for s in self.neighbor_sets()]

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# graph6 format
#
# One graph per ASCII line.  Header byte chr(63 + n) for n <= 62; long forms
# '~' + 3 bytes (n <= 258047) and '~~' + 6 bytes (n < 2**36).  The upper
# triangle of the adjacency matrix is packed column by column -- pair order
# (0,1), (0,2), (1,2), (0,3), ... -- 6 bits per byte, most significant bit
# first, zero-padded, each byte offset by 63.
# ---------------------------------------------------------------------------


def _pair_order(n):
    for v in range(1, n):
        for u in range(v):
            yield u, v


def _check_chars(text: str, start: int):
    for i in range(start, len(text)):
        c = ord(text[i])
        if not 63 <= c <= 126:
            raise Graph6Error(
                f"character {text[i]!r} outside graph6 range [63, 126] at byte offset {i}"
            )


def parse_graph6(text: str) -> Graph:
    """Decode one graph6-encoded graph.

    Trailing whitespace and a leading '>>graph6<<' prefix are tolerated.
    Raises Graph6Error naming the byte offset of the first bad byte.
    """
    line = text.rstrip()
    offset = 0
    if line.startswith(_GRAPH6_PREFIX):
        line = line[len(_GRAPH6_PREFIX):]
        offset = len(_GRAPH6_PREFIX)
    if not line:
        raise Graph6Error(f"empty graph6 line (byte offset {offset})")
    _check_chars(line, 0)

    if line[0] != "~":
        n = ord(line[0]) - 63
        pos = 1
        if n > 62:
            raise Graph6Error(f"malformed header byte at byte offset {offset}")
    elif len(line) >= 2 and line[1] != "~":
        if len(line) < 4:
            raise Graph6Error(f"truncated long-form header at byte offset {offset + len(line)}")
        n = 0
        for i in range(1, 4):
            n = (n << 6) | (ord(line[i]) - 63)
        pos = 4
    else:
        if len(line) < 8:
            raise Graph6Error(f"truncated long-form header at byte offset {offset + len(line)}")
        n = 0
        for i in range(2, 8):
            n = (n << 6) | (ord(line[i]) - 63)
        pos = 8

    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    got = len(line) - pos
    if got < nchars:
        raise Graph6Error(
            f"truncated adjacency bit stream (need {nchars} bytes, got {got}) "
            f"at byte offset {offset + len(line)}"
        )
    if got > nchars:
        raise Graph6Error(f"unexpected trailing data at byte offset {offset + pos + nchars}")

    edges = []
    bit = 0
    pairs = _pair_order(n)
    for i in range(pos, len(line)):
        value = ord(line[i]) - 63
        for shift in (5, 4, 3, 2, 1, 0):
            if bit >= nbits:
                break
            if (value >> shift) & 1:
                edges.append(next(pairs))
            else:
                next(pairs)
            bit += 1
    return Graph(n, frozenset(edges))


def write_graph6(g: Graph) -> str:
    """Encode a graph in canonical (minimal length, zero-padded) graph6 form."""
    n = g.n
    if n <= 62:
        header = chr(63 + n)
    elif n <= 258047:
        header = "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    elif n < 1 << 36:
        header = "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))
    else:
        raise ValueError(f"graph too large for graph6: n={n}")

    chars = []
    value = 0
    nbits = 0
    for u, v in _pair_order(n):
        value = (value << 1) | ((u, v) in g.edges)
        nbits += 1
        if nbits == 6:
            chars.append(chr(63 + value))
            value, nbits = 0, 0
    if nbits:
        chars.append(chr(63 + (value << (6 - nbits))))
    return header + "".join(chars)


# ---------------------------------------------------------------------------
# Derived graphs and matrices
# ---------------------------------------------------------------------------


def complement(g: Graph) -> Graph:
    """Graph on the same vertices whose edges are exactly the non-adjacent pairs."""
    edges = frozenset(
        (u, v) for u, v in itertools.combinations(range(g.n), 2) if (u, v) not in g.edges
    )
    return Graph(g.n, edges)


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Dense 0/1 adjacency matrix (float64, exactly symmetric, zero diagonal)."""
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def complement_adjacency_matrix(g: Graph) -> np.ndarray:
    return adjacency_matrix(complement(g))


# ---------------------------------------------------------------------------
# Deterministic families
# ---------------------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise ValueError("part sizes must be non-negative")
    return Graph.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def kneser(n: int, k: int) -> Graph:
    """Vertices are the k-subsets of {0..n-1}; edges join disjoint subsets."""
    if not (k >= 1 and n >= 2 * k):
        raise ValueError(f"kneser requires n >= 2k >= 2, got n={n}, k={k}")
    subsets = [frozenset(c) for c in itertools.combinations(range(n), k)]
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(subsets)), 2)
        if not subsets[i] & subsets[j]
    ]
    return Graph.from_edges(len(subsets), edges)


def _splitmix64_stream(seed: int):
    """splitmix64: the documented PRNG behind gnp (one 64-bit word per call)."""
    state = seed
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p), reproducible across implementations.

    Unordered pairs are scanned in the fixed order (0,1), (0,2), (1,2),
    (0,3), ...; for each pair one splitmix64 word w is drawn and mapped to
    the unit interval as (w >> 11) * 2**-53; the edge is present iff that
    value is < p.
    """
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    if not (isinstance(seed, int) and 0 <= seed <= _MASK64):
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    stream = _splitmix64_stream(seed)
    edges = []
    for v in range(1, n):
        for u in range(v):
            if (next(stream) >> 11) * 2.0**-53 < p:
                edges.append((u, v))
    return Graph(n, frozenset(edges))


# ---------------------------------------------------------------------------
# Generator dispatch and the family:param[:param...] mini-grammar
# ---------------------------------------------------------------------------

GENERATOR_FAMILIES = {
    "complete": (complete, (int,)),
    "empty": (empty_graph, (int,)),
    "cycle": (cycle, (int,)),
    "path": (path, (int,)),
    "complete_bipartite": (complete_bipartite, (int, int)),
    "kneser": (kneser, (int, int)),
    "gnp": (gnp, (int, float, int)),
}


def generate(family: str, *params) -> Graph:
    """Build a graph from a named family; see GENERATOR_FAMILIES for arities."""
    if family not in GENERATOR_FAMILIES:
        raise ValueError(f"unknown graph family {family!r} (known: {sorted(GENERATOR_FAMILIES)})")
    func, types = GENERATOR_FAMILIES[family]
    if len(params) != len(types):
        raise ValueError(f"family {family!r} takes {len(types)} parameters, got {len(params)}")
    return func(*(t(p) for t, p in zip(types, params)))


def from_spec(spec: str, default_seed: int = 0) -> Graph:
    """Parse a generator spec like 'kneser:5:2' or 'gnp:20:0.5[:seed]'."""
    parts = spec.strip().split(":")
    family, params = parts[0], parts[1:]
    if family == "gnp" and len(params) == 2:
        params = params + [str(default_seed)]
    try:
        return generate(family, *params)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad generator spec {spec!r}: {exc}") from exc


def corpus_from_spec(spec: str, count: int = 1, default_seed: int = 0) -> list:
    """A list of ``count`` graphs from one spec.

    For gnp the seed advances by one per graph (starting from the spec's
    seed, or ``default_seed`` when the spec has none); deterministic
    families repeat the same graph.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    parts = spec.strip().split(":")
    if parts[0] == "gnp":
        if len(parts) == 3:
            base = default_seed
        elif len(parts) == 4:
            base = int(parts[3])
        else:
            raise ValueError(f"bad generator spec {spec!r}: gnp takes n:p[:seed]")
        return [from_spec(f"{parts[0]}:{parts[1]}:{parts[2]}:{base + i}") for i in range(count)]
    g = from_spec(spec, default_seed=default_seed)
    return [g] * count
