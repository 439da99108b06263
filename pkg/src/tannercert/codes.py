"""Tanner codes: local codes on a labeled bipartite graph, membership, induced subgraphs.

Conventions used throughout the package:

* a word is a tuple of 0/1 ints of length N;
* local codewords are packed into int bitmasks, bit k of the mask being the
  symbol seen on the edge with label k (0-based);
* graph nodes are plain ints: variable v is node v, the j-th local-code node
  is node N + j.  Everything downstream (trees, certifier, covers) works on
  this flat node id space.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

MAX_LOCAL_LEN = 16


def pack_bits(bits: Sequence[int]) -> int:
    """Pack a 0/1 sequence into a bitmask, index 0 -> LSB."""
    mask = 0
    for k, b in enumerate(bits):
        if b not in (0, 1):
            raise InputError(f"bit value {b!r} is not 0/1")
        if b:
            mask |= 1 << k
    return mask


def unpack_bits(mask: int, n: int) -> tuple[int, ...]:
    """Inverse of pack_bits for a known length."""
    return tuple((mask >> k) & 1 for k in range(n))


def gf2_row_echelon(rows: Iterable[int]) -> list[int]:
    """Reduce int-bitmask rows to a row-echelon basis over GF(2)."""
    basis: list[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
    return basis


class LocalCode:
    """A binary linear code given by its explicit codeword set.

    Stores the packed codeword set together with the derived dimension and
    minimum distance.  Construction validates linearity: the words must be
    exactly the GF(2) span of their own basis (equivalent to XOR closure plus
    containing zero).
    """

    __slots__ = ("n", "words", "k", "d", "basis")

    def __init__(self, n: int, words: Iterable[int]):
        if not 1 <= n <= MAX_LOCAL_LEN:
            raise InputError(f"local code length {n} outside 1..{MAX_LOCAL_LEN}")
        wordset = frozenset(words)
        if not wordset:
            raise InputError("local code has no codewords")
        for w in wordset:
            if not 0 <= w < (1 << n):
                raise InputError(f"codeword mask {w} does not fit length {n}")
        basis = gf2_row_echelon(wordset)
        k = len(basis)
        if len(wordset) != (1 << k):
            raise InputError(
                f"{len(wordset)} codewords are not a linear code of length {n} "
                f"(span rank {k})"
            )
        if k == 0:
            raise InputError("local code must contain a nonzero codeword")
        self.n = n
        self.words = wordset
        self.k = k
        self.basis = tuple(basis)
        self.d = min(w.bit_count() for w in wordset if w)

    @classmethod
    def from_bit_tuples(cls, vectors: Iterable[Sequence[int]]) -> "LocalCode":
        vecs = [tuple(v) for v in vectors]
        if not vecs:
            raise InputError("empty codeword list")
        n = len(vecs[0])
        if any(len(v) != n for v in vecs):
            raise InputError("codewords of unequal length")
        return cls(n, (pack_bits(v) for v in vecs))

    @classmethod
    def parity(cls, n: int) -> "LocalCode":
        """Single-parity-check code: all even-weight words of length n."""
        if n < 2:
            raise InputError("parity local code needs length >= 2")
        return cls(n, (w for w in range(1 << n) if w.bit_count() % 2 == 0))

    @classmethod
    def repetition(cls, n: int) -> "LocalCode":
        if n < 2:
            raise InputError("repetition local code needs length >= 2")
        return cls(n, (0, (1 << n) - 1))

    def __contains__(self, mask: int) -> bool:
        return mask in self.words

    def sorted_words(self) -> tuple[int, ...]:
        return tuple(sorted(self.words))

    def bit_vectors(self) -> list[tuple[int, ...]]:
        return [unpack_bits(w, self.n) for w in self.sorted_words()]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LocalCode)
            and self.n == other.n
            and self.words == other.words
        )

    def __hash__(self) -> int:
        return hash((self.n, self.words))

    def __repr__(self) -> str:
        return f"LocalCode(n={self.n}, k={self.k}, d={self.d})"


class TannerGraph:
    """Edge-labeled bipartite graph between variables and local-code nodes.

    ``check_neighbors[j]`` lists the variables of the j-th local-code node in
    edge-label order.  Immutable after construction; node ids follow the
    package-wide flat scheme (variables 0..N-1, check j at N + j).
    """

    def __init__(self, num_vars: int, check_neighbors: Sequence[Sequence[int]]):
        if num_vars < 1:
            raise InputError("need at least one variable node")
        neigh: list[tuple[int, ...]] = []
        var_checks: list[list[int]] = [[] for _ in range(num_vars)]
        for j, vs in enumerate(check_neighbors):
            vs = tuple(vs)
            if not vs:
                raise InputError(f"local-code node {j} has no neighbors")
            if len(set(vs)) != len(vs):
                raise InputError(f"local-code node {j} repeats a variable neighbor")
            for v in vs:
                if not 0 <= v < num_vars:
                    raise InputError(f"variable index {v} out of range in node {j}")
                var_checks[v].append(num_vars + j)
            neigh.append(vs)
        for v, cs in enumerate(var_checks):
            if not cs:
                raise InputError(f"variable {v} has degree 0")
        self.num_vars = num_vars
        self.num_checks = len(neigh)
        self.check_neighbors = tuple(neigh)
        self.var_neighbors = tuple(tuple(cs) for cs in var_checks)
        adj: dict[int, tuple[int, ...]] = {}
        for v in range(num_vars):
            adj[v] = self.var_neighbors[v]
        for j, vs in enumerate(self.check_neighbors):
            adj[num_vars + j] = vs
        self.adj = adj
        self.variables = tuple(range(num_vars))
        self.checks = tuple(range(num_vars, num_vars + self.num_checks))
        self.num_edges = sum(len(vs) for vs in self.check_neighbors)

    def is_variable(self, node: int) -> bool:
        return node < self.num_vars

    def check_index(self, node: int) -> int:
        return node - self.num_vars

    def degree(self, node: int) -> int:
        return len(self.adj[node])


class InducedSubgraph:
    """Node-induced subgraph of a TannerGraph, keeping base node ids.

    Exposes the same adjacency protocol as TannerGraph (num_vars, adj,
    variables, checks, degree, is_variable) so the tree machinery works on
    either.
    """

    def __init__(self, base: TannerGraph, var_nodes: Iterable[int]):
        keep_vars = sorted(set(var_nodes))
        for v in keep_vars:
            if not base.is_variable(v):
                raise InputError(f"node {v} is not a variable of the base graph")
        varset = set(keep_vars)
        adj: dict[int, tuple[int, ...]] = {}
        checks: list[int] = []
        for c in base.checks:
            kept = tuple(v for v in base.adj[c] if v in varset)
            if kept:
                checks.append(c)
                adj[c] = kept
        checkset = set(checks)
        for v in keep_vars:
            adj[v] = tuple(c for c in base.adj[v] if c in checkset)
        self.base = base
        self.num_vars = base.num_vars
        self.adj = adj
        self.variables = tuple(keep_vars)
        self.checks = tuple(checks)

    def is_variable(self, node: int) -> bool:
        return node < self.num_vars

    def degree(self, node: int) -> int:
        return len(self.adj[node])


class TannerCode:
    """A Tanner code: graph plus one local code per local-code node."""

    def __init__(self, graph: TannerGraph, local_codes: Sequence[LocalCode]):
        if len(local_codes) != graph.num_checks:
            raise InputError(
                f"{len(local_codes)} local codes for {graph.num_checks} nodes"
            )
        for j, lc in enumerate(local_codes):
            if lc.n != len(graph.check_neighbors[j]):
                raise InputError(
                    f"local code {j} has length {lc.n} but node degree is "
                    f"{len(graph.check_neighbors[j])}"
                )
        self.graph = graph
        self.local_codes = tuple(local_codes)
        self.n = graph.num_vars
        self.d_star = min(lc.d for lc in local_codes)

    def local_projection(self, x: Sequence[int], j: int) -> int:
        """Bitmask of x restricted to node j's neighborhood, in label order."""
        mask = 0
        for k, v in enumerate(self.graph.check_neighbors[j]):
            if x[v]:
                mask |= 1 << k
        return mask

    def is_codeword(self, x: Sequence[int]) -> bool:
        x = check_word(x, self.n)
        return all(
            self.local_projection(x, j) in self.local_codes[j].words
            for j in range(self.graph.num_checks)
        )

    def induced_support_graph(self, x: Sequence[int]) -> InducedSubgraph:
        """Subgraph induced by the support of x and its local-code neighbors."""
        x = check_word(x, self.n)
        return InducedSubgraph(self.graph, (v for v in range(self.n) if x[v]))

    def __repr__(self) -> str:
        return (
            f"TannerCode(N={self.n}, J={self.graph.num_checks}, d*={self.d_star})"
        )


def check_word(x: Sequence[int], n: int) -> tuple[int, ...]:
    """Validate a binary word of length n, returning it as a tuple."""
    x = tuple(x)
    if len(x) != n:
        raise InputError(f"word length {len(x)} != block length {n}")
    if any(b not in (0, 1) for b in x):
        raise InputError("word entries must be 0/1")
    return x


def parse_word(text: str) -> tuple[int, ...]:
    """Parse a 0/1 bitstring such as '0110'."""
    if not text or any(ch not in "01" for ch in text):
        raise InputError(f"not a bitstring: {text!r}")
    return tuple(int(ch) for ch in text)


def xor_words(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(ai ^ bi for ai, bi in zip(a, b))


def relative_point(x: Sequence[int], f: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Componentwise |x_v - f_v| for a binary word x and f in [0,1]^N."""
    x = check_word(x, len(x))
    if len(f) != len(x):
        raise InputError(f"length mismatch: {len(x)} vs {len(f)}")
    out = []
    for xv, fv in zip(x, f):
        fv = Fraction(fv)
        if not 0 <= fv <= 1:
            raise InputError(f"component {fv} outside [0,1]")
        out.append(abs(xv - fv))
    return tuple(out)
