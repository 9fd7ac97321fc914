"""Pivoting Bron-Kerbosch over the "sets intersect" graph of C([n], k).

Maximal cliques of that graph are exactly the inclusion-maximal intersecting
families.  Vertex sets are Python ints used as bitsets over vertex indices,
and vertices are indexed in canonical (ascending mask) order.

When a minimum family size is requested, branches are cut with a Katona
circle bound: for any cyclic order of [n], an intersecting family contains
at most as many arcs of that order as the largest pairwise-intersecting set of
arcs available to it.  Summing over a collection of cyclic orders and dividing
by the smallest number of orders in which a single k-set is an arc bounds the
family size from above.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .family import Family, k_subsets


class BudgetExceeded(Exception):
    pass


@dataclass
class EnumBudget:
    """Caps on an enumeration; ``None`` means unlimited."""

    max_families: int | None = None
    max_millis: int | None = 600_000
    max_nodes: int | None = 10**7
    seed: int = 0

    def to_dict(self) -> dict:
        return {"max_families": self.max_families, "max_millis": self.max_millis,
                "max_nodes": self.max_nodes, "seed": self.seed}


class Meter:
    def __init__(self, budget: EnumBudget):
        self.budget = budget
        self.nodes = 0
        self.emitted = 0
        self.start = time.monotonic()

    def tick(self):
        self.nodes += 1
        b = self.budget
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            raise BudgetExceeded("node budget")
        if b.max_millis is not None and self.nodes & 1023 == 0:
            if (time.monotonic() - self.start) * 1000 > b.max_millis:
                raise BudgetExceeded("time budget")

    def emit(self):
        self.emitted += 1
        b = self.budget
        if b.max_families is not None and self.emitted > b.max_families:
            raise BudgetExceeded("family budget")

    @property
    def millis(self) -> int:
        return int((time.monotonic() - self.start) * 1000)


# --------------------------------------------------------------------------
# cyclic orders for the circle bound


def _gf_tables(q: int) -> tuple[list[list[int]], list[list[int]]] | None:
    """Addition and multiplication tables of GF(q) for q prime or q in {4, 8, 9}."""
    if q >= 2 and all(q % d for d in range(2, int(q ** 0.5) + 1)):
        add = [[(a + b) % q for b in range(q)] for a in range(q)]
        mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        return add, mul
    polys = {4: (2, 2, 0b111), 8: (2, 3, 0b1011)}
    if q in polys:
        p, e, mod = polys[q]

        def pmul(a, b):
            r = 0
            for i in range(e):
                if b >> i & 1:
                    r ^= a << i
            for i in range(2 * e - 2, e - 1, -1):
                if r >> i & 1:
                    r ^= mod << (i - e)
            return r

        add = [[a ^ b for b in range(q)] for a in range(q)]
        mul = [[pmul(a, b) for b in range(q)] for a in range(q)]
        return add, mul
    if q == 9:
        # GF(3)[x] / (x^2 + 1), element a0 + 3*a1
        def split(a):
            return a % 3, a // 3

        def join(a0, a1):
            return a0 % 3 + 3 * (a1 % 3)

        add = [[join(split(a)[0] + split(b)[0], split(a)[1] + split(b)[1]) for b in range(9)] for a in range(9)]
        mul = []
        for a in range(9):
            a0, a1 = split(a)
            row = []
            for b in range(9):
                b0, b1 = split(b)
                row.append(join(a0 * b0 - a1 * b1, a0 * b1 + a1 * b0))
            mul.append(row)
        return add, mul
    return None


def _projective_group(q: int) -> list[tuple[int, ...]] | None:
    """PGL(2, q) acting on the q + 1 points of the projective line (infinity = q)."""
    tables = _gf_tables(q)
    if tables is None:
        return None
    add, mul = tables
    inv = {a: next(b for b in range(1, q) if mul[a][b] == 1) for a in range(1, q)}
    inf = q

    def mobius(a, b, c, d):
        out = []
        for z in range(q + 1):
            if z == inf:
                out.append(inf if c == 0 else mul[a][inv[c]])
                continue
            num = add[mul[a][z]][b]
            den = add[mul[c][z]][d]
            out.append(inf if den == 0 else mul[num][inv[den]])
        return tuple(out)

    gens = [mobius(1, 1, 0, 1), mobius(0, 1, 1, 0)]
    gens += [mobius(a, 0, 0, 1) for a in range(2, q)]
    group = {tuple(range(q + 1))}
    frontier = list(group)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                r = tuple(g[p[i]] for i in range(q + 1))
                if r not in group:
                    group.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(group)


def _canonical_cycle(order: tuple[int, ...]) -> tuple[int, ...]:
    n = len(order)
    best = None
    for r in range(n):
        rot = order[r:] + order[:r]
        for seq in (rot, tuple(reversed(rot))):
            if best is None or seq < best:
                best = seq
    return best


@lru_cache(maxsize=None)
def cyclic_orders(n: int, sample: int = 2000, seed: int = 0) -> tuple[tuple[int, ...], ...]:
    """Cyclic orders of {0..n-1} used for the circle bound.

    All (n-1)!/2 of them for n <= 8; the PGL(2, n-1) orbit of the identity
    order when that group is available; otherwise a seeded sample.  The bound
    is valid for any collection but only tight when every k-set is an arc
    equally often, which holds for the orbit at n = 9, k = 4 (18 each).
    """
    if n <= 3:
        return (tuple(range(n)),)
    if n <= 8:
        out = []
        for rest in itertools.permutations(range(1, n)):
            if rest[0] < rest[-1]:
                out.append((0,) + rest)
        return tuple(out)
    group = _projective_group(n - 1)
    if group is not None:
        return tuple(sorted({_canonical_cycle(g) for g in group}))
    rng = random.Random(seed)
    seen = set()
    while len(seen) < sample:
        perm = list(range(n))
        rng.shuffle(perm)
        seen.add(_canonical_cycle(tuple(perm)))
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def _arc_table(n: int, k: int) -> np.ndarray:
    """For each subset of the n arcs of length k, the largest pairwise-meeting subset."""
    arcs = [sum(1 << ((j + d) % n) for d in range(k)) for j in range(n)]
    meets = [sum(1 << b for b in range(n) if arcs[a] & arcs[b]) for a in range(n)]
    best = np.zeros(1 << n, dtype=np.int64)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        # either skip the lowest arc or keep it and restrict to arcs it meets
        best[mask] = max(best[rest], 1 + best[rest & meets[low]])
    return best


class CircleBound:
    """Katona circle upper bound on intersecting families inside a vertex set."""

    def __init__(self, n: int, k: int, vertices: list[int]):
        orders = cyclic_orders(n)
        index = {v: i for i, v in enumerate(vertices)}
        weights = np.zeros((len(orders), len(vertices)), dtype=np.int64)
        for r, order in enumerate(orders):
            for j in range(n):
                arc = 0
                for d in range(k):
                    arc |= 1 << order[(j + d) % n]
                weights[r, index[arc]] = 1 << j
        self.weights = weights
        self.table = _arc_table(n, k)
        self.multiplicity = int((weights != 0).sum(axis=0).min())
        self.size = len(vertices)

    def __call__(self, candidates: int) -> int:
        vec = np.frombuffer(candidates.to_bytes((self.size + 7) // 8, "little"), dtype=np.uint8)
        vec = np.unpackbits(vec, bitorder="little")[: self.size].astype(np.int64)
        return int(self.table[self.weights @ vec].sum()) // self.multiplicity


# --------------------------------------------------------------------------
# the graph and the search


class IntersectionGraph:
    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        self.vertices = list(k_subsets((1 << n) - 1, k))
        count = len(self.vertices)
        self.all = (1 << count) - 1
        self.adj = []
        for idx, v in enumerate(self.vertices):
            a = 0
            for jdx, w in enumerate(self.vertices):
                if jdx != idx and v & w:
                    a |= 1 << jdx
            self.adj.append(a)
        self._circle = None

    @property
    def circle(self) -> CircleBound | None:
        if self._circle is None and self.n <= 12:
            self._circle = CircleBound(self.n, self.k, self.vertices)
        return self._circle

    def family(self, clique: int) -> Family:
        out = []
        while clique:
            low = clique & -clique
            out.append(self.vertices[low.bit_length() - 1])
            clique ^= low
        return Family(self.n, self.k, tuple(out))


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


PIVOT_RULES = ("max", "first")


def _choose_pivot(graph: IntersectionGraph, p: int, x: int, rule: str) -> int:
    adj = graph.adj
    if rule == "first":
        px = p | x
        return (px & -px).bit_length() - 1
    best, best_v = -1, -1
    for u in _bits(p | x):
        c = (p & adj[u]).bit_count()
        if c > best:
            best, best_v = c, u
    return best_v


Branch = tuple[int, int, int]  # (vertex, P, X) just below the root


def top_level_branches(graph: IntersectionGraph, pivot_rule: str = "max") -> list[Branch]:
    """Root branches in the order a serial run visits them."""
    p, x = graph.all, 0
    pivot = _choose_pivot(graph, p, x, pivot_rule)
    out = []
    for v in list(_bits(p & ~graph.adj[pivot])):
        out.append((v, p & graph.adj[v], x & graph.adj[v]))
        p &= ~(1 << v)
        x |= 1 << v
    return out


def maximal_cliques(
    graph: IntersectionGraph,
    meter: Meter,
    min_size: int = 0,
    pivot_rule: str = "max",
    branch: Branch | None = None,
) -> Iterator[int]:
    """Yield maximal cliques (vertex bitsets) with at least ``min_size`` vertices."""
    if pivot_rule not in PIVOT_RULES:
        raise ValueError(f"unknown pivot rule {pivot_rule!r}")
    adj = graph.adj
    circle = graph.circle if min_size else None

    def expand(r: int, size: int, p: int, x: int) -> Iterator[int]:
        meter.tick()
        if not p:
            if not x and size >= min_size:
                meter.emit()
                yield r
            return
        if min_size:
            if size + p.bit_count() < min_size:
                return
            if circle is not None and circle(r | p) < min_size:
                return
        pivot = _choose_pivot(graph, p, x, pivot_rule)
        for v in list(_bits(p & ~adj[pivot])):
            bit = 1 << v
            yield from expand(r | bit, size + 1, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit
            if min_size and size + p.bit_count() < min_size:
                return

    if branch is None:
        yield from expand(0, 0, graph.all, 0)
    else:
        v, p, x = branch
        yield from expand(1 << v, 1, p, x)


def _run_branch(args) -> tuple[list[int], int, str | None]:
    n, k, branch, min_size, pivot_rule, budget = args
    graph = IntersectionGraph(n, k)
    meter = Meter(budget)
    found = []
    try:
        for c in maximal_cliques(graph, meter, min_size, pivot_rule, branch):
            found.append(c)
    except BudgetExceeded as exc:
        return found, meter.nodes, str(exc)
    return found, meter.nodes, None


class MaximalFamilies:
    """Iterable census of inclusion-maximal intersecting k-subsets of [n].

    ``rooted`` restricts to families containing [1, k], which covers every
    isomorphism class.  ``dedup`` keeps one family per isomorphism class.
    After iteration ``status`` is "complete" or "inconclusive".
    """

    def __init__(self, n: int, k: int, budget: EnumBudget | None = None, *,
                 min_size: int = 0, rooted: bool = False, dedup: bool = False,
                 pivot_rule: str = "max", workers: int = 1):
        if not 1 <= k or n <= 2 * k:
            raise ValueError(f"needs n > 2k >= 2, got n={n}, k={k}")
        if pivot_rule not in PIVOT_RULES:
            raise ValueError(f"unknown pivot rule {pivot_rule!r}")
        self.n, self.k = n, k
        self.budget = budget or EnumBudget()
        self.min_size = min_size
        self.rooted = rooted
        self.dedup = dedup
        self.pivot_rule = pivot_rule
        self.workers = max(1, workers)
        self.status = "pending"
        self.reason: str | None = None
        self.nodes = 0
        self.emitted = 0
        self.millis = 0
        self._done: list[Family] | None = None

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def describe(self) -> dict:
        return {"n": self.n, "k": self.k, "min_size": self.min_size, "rooted": self.rooted,
                "dedup": self.dedup, "pivot_rule": self.pivot_rule, "status": self.status,
                "reason": self.reason, "nodes": self.nodes, "emitted": self.emitted}

    def _branches(self, graph: IntersectionGraph) -> list[Branch]:
        if self.rooted:
            return [(0, graph.adj[0], 0)]
        return top_level_branches(graph, self.pivot_rule)

    def _cliques(self) -> Iterator[int]:
        graph = IntersectionGraph(self.n, self.k)
        self._graph = graph
        branches = self._branches(graph)
        if self.workers == 1:
            meter = Meter(self.budget)
            try:
                for branch in branches:
                    yield from maximal_cliques(graph, meter, self.min_size, self.pivot_rule, branch)
            except BudgetExceeded as exc:
                self.reason = str(exc)
            finally:
                self.nodes = meter.nodes
            return
        from concurrent.futures import ProcessPoolExecutor

        jobs = [(self.n, self.k, b, self.min_size, self.pivot_rule, self.budget) for b in branches]
        found = []
        with ProcessPoolExecutor(self.workers) as pool:
            for cliques, nodes, reason in pool.map(_run_branch, jobs):
                found.extend(cliques)
                self.nodes += nodes
                if reason and not self.reason:
                    self.reason = reason
        # serial order visits branches in sequence, so concatenation already matches it
        yield from found

    def __iter__(self) -> Iterator[Family]:
        if self._done is not None:
            yield from self._done
            return
        start = time.monotonic()
        out: list[Family] = []
        self.status, self.reason, self.nodes, self.emitted = "running", None, 0, 0
        seen: dict[tuple, list[Family]] = {}
        from .family import are_isomorphic, isomorphism_key

        for clique in self._cliques():
            fam = self._graph.family(clique)
            if self.dedup:
                bucket = seen.setdefault(isomorphism_key(fam), [])
                if any(are_isomorphic(fam, g) is not None for g in bucket):
                    continue
                bucket.append(fam)
            self.emitted += 1
            out.append(fam)
            yield fam
        self.millis = int((time.monotonic() - start) * 1000)
        self.status = "inconclusive" if self.reason else "complete"
        self._done = out
