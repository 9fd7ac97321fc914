"""Bitmask families of k-subsets of [n] and the primitive operations on them.

A set is a Python int whose bit ``i - 1`` is set iff element ``i`` belongs to
it.  A :class:`Family` stores its members as a strictly increasing tuple of
such masks, so two equal families are equal as values.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_N = 64


class FamilyError(ValueError):
    """Raised on malformed sets or families."""


# --------------------------------------------------------------------------
# set words


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def interval(a: int, b: int) -> int:
    """Mask of [a, b]; empty when a > b."""
    if a > b:
        return 0
    return ((1 << (b - a + 1)) - 1) << (a - 1)


def lowest_element(mask: int) -> int:
    return (mask & -mask).bit_length()


def k_subsets(ground: int, k: int) -> Iterator[int]:
    """All k-subsets of the set ``ground`` in increasing numeric order."""
    elems = elements_of(ground)
    masks = [mask_of(c) for c in itertools.combinations(elems, k)]
    masks.sort()
    return iter(masks)


def shift_set(a: int, i: int, j: int) -> int:
    """(i, j)-shift of a single set: replace j by i when j is in and i is out."""
    if i >= j:
        raise FamilyError(f"shift needs i < j, got ({i}, {j})")
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    if a & bi or not a & bj:
        return a
    return (a ^ bj) | bi


# --------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Family:
    """A k-uniform family over [n], members kept in ascending mask order."""

    n: int
    k: int
    sets: tuple[int, ...] = ()

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise FamilyError(f"ground set size must be in [1, {MAX_N}], got {self.n}")
        if not 0 <= self.k <= self.n:
            raise FamilyError(f"uniformity {self.k} outside [0, {self.n}]")
        full = (1 << self.n) - 1
        prev = -1
        for s in self.sets:
            if s <= prev:
                raise FamilyError("sets must be strictly increasing; use Family.of")
            if s & ~full:
                raise FamilyError(f"set {elements_of(s)} leaves [1, {self.n}]")
            if s.bit_count() != self.k:
                raise FamilyError(f"set {elements_of(s)} does not have {self.k} elements")
            prev = s

    @classmethod
    def of(cls, n: int, k: int, masks: Iterable[int]) -> "Family":
        """Build from masks in any order, collapsing duplicates."""
        return cls(n, k, tuple(sorted(set(masks))))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sets)

    def __contains__(self, mask: int) -> bool:
        return mask in self._lookup

    @property
    def _lookup(self) -> frozenset:
        # cached on first use; the dataclass is frozen so go through object
        try:
            return self.__dict__["_lookup_cache"]
        except KeyError:
            fs = frozenset(self.sets)
            object.__setattr__(self, "_lookup_cache", fs)
            return fs

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def as_lists(self) -> list[list[int]]:
        return [elements_of(s) for s in self.sets]

    def issubset(self, other: "Family") -> bool:
        return all(s in other for s in self.sets)

    def with_sets(self, masks: Iterable[int], k: int | None = None) -> "Family":
        return Family.of(self.n, self.k if k is None else k, masks)

    def __repr__(self) -> str:
        return f"Family(n={self.n}, k={self.k}, sets={self.as_lists()})"

    # JSON ---------------------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "sets": self.as_lists()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "Family":
        return make_family(int(data["n"]), int(data["k"]), data["sets"])

    @classmethod
    def from_json(cls, text: str) -> "Family":
        return cls.from_dict(json.loads(text))


def make_family(n: int, k: int, sets: Iterable[Sequence[int]]) -> Family:
    """Validate element lists and return the canonical family."""
    if not 1 <= n <= MAX_N:
        raise FamilyError(f"ground set size must be in [1, {MAX_N}], got {n}")
    if not 0 <= k <= n:
        raise FamilyError(f"uniformity {k} outside [0, {n}]")
    masks = []
    for s in sets:
        s = [int(e) for e in s]
        for e in s:
            if not 1 <= e <= n:
                raise FamilyError(f"element {e} out of range [1, {n}]")
        if len(set(s)) != len(s):
            raise FamilyError(f"repeated element in {s}")
        if len(s) != k:
            raise FamilyError(f"set {s} has {len(s)} elements, expected {k}")
        masks.append(mask_of(s))
    return Family.of(n, k, masks)


def all_k_sets(n: int, k: int) -> Family:
    return Family(n, k, tuple(k_subsets((1 << n) - 1, k)))


def _check_element(f: Family, i: int) -> None:
    if not 1 <= i <= f.n:
        raise FamilyError(f"element {i} out of range [1, {f.n}]")


# --------------------------------------------------------------------------
# intersection properties


def is_intersecting(f: Family) -> bool:
    sets = f.sets
    for idx, a in enumerate(sets):
        for b in sets[idx + 1:]:
            if not a & b:
                return False
    return True


def is_cross_intersecting(a: Family, b: Family) -> bool:
    if a.n != b.n:
        raise FamilyError(f"ground sets differ: {a.n} vs {b.n}")
    return all(x & y for x in a.sets for y in b.sets)


def link(f: Family, i: int) -> Family:
    """F(i): members through i, with i removed."""
    _check_element(f, i)
    bit = 1 << (i - 1)
    if f.k == 0:
        return Family(f.n, 0)
    return Family.of(f.n, f.k - 1, (s ^ bit for s in f.sets if s & bit))


def delete(f: Family, i: int) -> Family:
    """F(bar i): members avoiding i."""
    _check_element(f, i)
    bit = 1 << (i - 1)
    return Family(f.n, f.k, tuple(s for s in f.sets if not s & bit))


def degrees(f: Family) -> list[int]:
    """Occurrence count of each element, index i - 1 for element i."""
    counts = [0] * f.n
    for s in f.sets:
        for e in elements_of(s):
            counts[e - 1] += 1
    return counts


def diversity(f: Family) -> tuple[int, int]:
    """(min_i |F(bar i)|, smallest minimizing element)."""
    deg = degrees(f)
    m = len(f)
    best, arg = m - deg[0], 1
    for i in range(2, f.n + 1):
        v = m - deg[i - 1]
        if v < best:
            best, arg = v, i
    return best, arg


def relabel(f: Family, perm: Sequence[int]) -> Family:
    """Apply the permutation with ``perm[i - 1]`` the image of element i."""
    if sorted(perm) != list(range(1, f.n + 1)):
        raise FamilyError("not a permutation of the ground set")
    out = []
    for s in f.sets:
        t = 0
        for e in elements_of(s):
            t |= 1 << (perm[e - 1] - 1)
        out.append(t)
    return Family.of(f.n, f.k, out)


def transposition(n: int, a: int, b: int) -> tuple[int, ...]:
    perm = list(range(1, n + 1))
    perm[a - 1], perm[b - 1] = b, a
    return tuple(perm)


def normalize_diversity(f: Family) -> Family:
    """Swap 1 with the diversity argmin so that element 1 attains the minimum."""
    _, arg = diversity(f)
    if arg == 1:
        return f
    return relabel(f, transposition(f.n, 1, arg))


def covering_number(f: Family) -> int:
    """Smallest number of elements meeting every member (exhaustive)."""
    if not f.sets:
        raise FamilyError("covering number of an empty family is undefined")
    support = elements_of(_union(f.sets))
    for size in range(1, len(support) + 1):
        for cover in itertools.combinations(support, size):
            c = mask_of(cover)
            if all(s & c for s in f.sets):
                return size
    return 0  # only reached when k == 0 (member is the empty set)


def _union(masks: Iterable[int]) -> int:
    u = 0
    for s in masks:
        u |= s
    return u


def _meet(masks: Iterable[int], start: int) -> int:
    acc = start
    for s in masks:
        acc &= s
    return acc


def common_intersection(f: Family) -> int:
    if not f.sets:
        raise FamilyError("common intersection of an empty family is undefined")
    return _meet(f.sets, f.ground)


# --------------------------------------------------------------------------
# minimality w.r.t. common intersection


@dataclass(frozen=True)
class MinimalWitness:
    """Core of a minimal family plus one private element per member.

    ``witnesses[l]`` lies in every member except member ``l`` (members in the
    family's canonical order).
    """

    core: int
    witnesses: tuple[int, ...]

    def __bool__(self) -> bool:
        return True

    @property
    def t(self) -> int:
        return self.core.bit_count()


@dataclass(frozen=True)
class NotMinimal:
    reason: str
    member: int | None = None

    def __bool__(self) -> bool:
        return False


TOO_FEW_MEMBERS = "too few members"
NO_PRIVATE_ELEMENT = "dropping a member keeps the intersection"


def minimality_witness(m: Family) -> MinimalWitness | NotMinimal:
    """Certify that dropping any member strictly enlarges the intersection.

    Returns a falsy :class:`NotMinimal` (not an exception) when ``m`` is not
    minimal.  Singletons are rejected with ``TOO_FEW_MEMBERS``.
    """
    sets = m.sets
    if len(sets) < 2:
        return NotMinimal(TOO_FEW_MEMBERS)
    full = m.ground
    # prefix/suffix ANDs give every "all but one" meet in linear time
    prefix = [full]
    for s in sets:
        prefix.append(prefix[-1] & s)
    suffix = [full]
    for s in reversed(sets):
        suffix.append(suffix[-1] & s)
    suffix.reverse()
    core = prefix[-1]
    wit = []
    for idx in range(len(sets)):
        others = prefix[idx] & suffix[idx + 1]
        private = others & ~core
        if not private:
            return NotMinimal(NO_PRIVATE_ELEMENT, idx)
        wit.append(lowest_element(private))
    return MinimalWitness(core, tuple(wit))


# --------------------------------------------------------------------------
# shadows, shifts, quotients


def shadow(f: Family) -> Family:
    if f.k < 1:
        raise FamilyError("shadow needs uniformity >= 1")
    out = set()
    for s in f.sets:
        rest = s
        while rest:
            low = rest & -rest
            out.add(s ^ low)
            rest ^= low
    return Family.of(f.n, f.k - 1, out)


def shift_family(f: Family, i: int, j: int) -> Family:
    """Family (i, j)-shift; a set stays put when its image is already present."""
    if i >= j:
        raise FamilyError(f"shift needs i < j, got ({i}, {j})")
    _check_element(f, i)
    _check_element(f, j)
    present = f._lookup
    out = []
    for a in f.sets:
        b = shift_set(a, i, j)
        out.append(a if b == a or b in present else b)
    return Family.of(f.n, f.k, out)


def shift_closure(f: Family, pairs: Sequence[tuple[int, int]]) -> Family:
    """Apply the listed shifts in order, pass after pass, until nothing moves."""
    for i, j in pairs:
        if i >= j:
            raise FamilyError(f"shift needs i < j, got ({i}, {j})")
    while True:
        before = f
        for i, j in pairs:
            f = shift_family(f, i, j)
        if f == before:
            return f


def prefix_shift_pairs(n: int, t: int) -> list[tuple[int, int]]:
    """Pairs (i, j) with 2 <= i <= t + 1 and i < j <= n."""
    return [(i, j) for i in range(2, min(t + 1, n) + 1) for j in range(i + 1, n + 1)]


def quotient(f: Family, s: int, j: int) -> Family:
    """F(S, [j]): members G with G ∩ [j] = S, returned as G minus S."""
    if j < 1 or j > f.n:
        raise FamilyError(f"j = {j} out of range")
    if s & ~interval(2, j):
        raise FamilyError(f"{elements_of(s)} is not a subset of [2, {j}]")
    head = interval(1, j)
    size = s.bit_count()
    if size > f.k:
        return Family(f.n, 0)
    return Family.of(f.n, f.k - size, (g ^ s for g in f.sets if g & head == s))


# --------------------------------------------------------------------------
# isomorphism


def _codegrees(f: Family) -> list[list[int]]:
    co = [[0] * f.n for _ in range(f.n)]
    for s in f.sets:
        es = [e - 1 for e in elements_of(s)]
        for a in es:
            row = co[a]
            for b in es:
                row[b] += 1
    return co


def _invariant_key(f: Family) -> tuple:
    co = _codegrees(f)
    rows = sorted(tuple(sorted(r[:i] + r[i + 1:])) + (r[i],) for i, r in enumerate(co))
    return (f.n, f.k, len(f), tuple(rows))


def are_isomorphic(f: Family, g: Family) -> tuple[int, ...] | None:
    """Exact search for a relabeling taking f onto g.

    Returns the permutation as a tuple (``perm[i - 1]`` is the image of i) or
    None.  Backtracking over element images, pruned by occurrence counts, pair
    co-occurrence counts and completed members.
    """
    if (f.n, f.k, len(f)) != (g.n, g.k, len(g)):
        return None
    n = f.n
    cf, cg = _codegrees(f), _codegrees(g)
    df = [cf[i][i] for i in range(n)]
    dg = [cg[i][i] for i in range(n)]
    if sorted(df) != sorted(dg):
        return None
    sig_f = [tuple(sorted(cf[i])) for i in range(n)]
    sig_g = [tuple(sorted(cg[i])) for i in range(n)]
    if sorted(sig_f) != sorted(sig_g):
        return None

    candidates = [[y for y in range(n) if sig_g[y] == sig_f[x]] for x in range(n)]
    # assign the most constrained, most connected elements first
    order = sorted(range(n), key=lambda x: (len(candidates[x]), -df[x], x))
    pos = {x: p for p, x in enumerate(order)}
    closing: list[list[int]] = [[] for _ in range(n)]
    for s in f.sets:
        es = [e - 1 for e in elements_of(s)]
        if es:
            closing[max(pos[e] for e in es)].append(s)
    g_sets = g._lookup
    image = [-1] * n
    used = [False] * n

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        x = order[depth]
        for y in candidates[x]:
            if used[y]:
                continue
            ok = True
            for d in range(depth):
                x2 = order[d]
                if cf[x][x2] != cg[y][image[x2]]:
                    ok = False
                    break
            if not ok:
                continue
            image[x] = y
            for s in closing[depth]:
                t = 0
                for e in elements_of(s):
                    t |= 1 << image[e - 1]
                if t not in g_sets:
                    ok = False
                    break
            if ok:
                used[y] = True
                if extend(depth + 1):
                    return True
                used[y] = False
            image[x] = -1
        return False

    if not extend(0):
        return None
    perm = tuple(y + 1 for y in image)
    if relabel(f, perm) != g:  # defensive; closing checks cover every member
        return None
    return perm


def isomorphism_key(f: Family) -> tuple:
    """A relabeling-invariant fingerprint; equal keys are necessary for isomorphism."""
    return _invariant_key(f)


# --------------------------------------------------------------------------
# extensions and cross partners


def max_cross_partner(h: Family, r: int) -> Family:
    """Every r-set of [n] meeting all members of h."""
    return Family(h.n, r, tuple(a for a in k_subsets(h.ground, r) if all(a & b for b in h.sets)))


def maximal_extension(m: Family) -> Family:
    """m plus every {1} ∪ A, A a (k-1)-subset of [2, n] meeting all of m."""
    if m.k < 1:
        raise FamilyError("maximal extension needs uniformity >= 1")
    if any(s & 1 for s in m.sets):
        raise FamilyError("members must avoid element 1")
    if not is_intersecting(m):
        raise FamilyError("family is not intersecting")
    rest = interval(2, m.n)
    ones = (a | 1 for a in k_subsets(rest, m.k - 1) if all(a & b for b in m.sets))
    return Family.of(m.n, m.k, itertools.chain(m.sets, ones))


# --------------------------------------------------------------------------
# bipartite switching


@dataclass(frozen=True)
class SwitchContext:
    """Traces that select the two sides of a switching graph.

    a-side: (k-1)-subsets P of [2, n] with P ∩ (za ∪ zb) = za.
    b-side: k-subsets P of [2, n] with P ∩ (za ∪ zb) = zb.
    """

    za: int
    zb: int

    def __post_init__(self):
        if self.za & self.zb:
            raise FamilyError("za and zb overlap")
        if (self.za | self.zb) & 1:
            raise FamilyError("element 1 may not appear in a switching context")

    @classmethod
    def g_i(cls, i: int) -> "SwitchContext":
        """Context of G_i: a-side trace {i}, b-side trace [2, i - 1]."""
        return cls(1 << (i - 1), interval(2, i - 1))

    @classmethod
    def g_prefix(cls, t_prime: int, cover: Iterable[int]) -> "SwitchContext":
        """Context of G(t', I): a-side contains I, b-side contains [2, t']."""
        return cls(mask_of(cover), interval(2, t_prime))

    def a_side(self, n: int, k: int) -> list[int]:
        zone = self.za | self.zb
        return [p for p in k_subsets(interval(2, n), k - 1) if p & zone == self.za]

    def b_side(self, n: int, k: int) -> list[int]:
        zone = self.za | self.zb
        return [p for p in k_subsets(interval(2, n), k) if p & zone == self.zb]

    def in_a(self, p: int) -> bool:
        return p & (self.za | self.zb) == self.za

    def in_b(self, p: int) -> bool:
        return p & (self.za | self.zb) == self.zb


@dataclass(frozen=True)
class SwitchResult:
    family: Family
    size_delta: int
    intersecting: bool
    removed: tuple[int, ...] = field(default=())
    added: tuple[int, ...] = field(default=())


def bipartite_switch(f: Family, ctx: SwitchContext, b_target: Family | Iterable[int]) -> SwitchResult:
    """Swap the b-side of F(bar 1) for ``b_target`` and refill the a-side of F(1).

    The result is not guaranteed to be intersecting; ``SwitchResult.intersecting``
    reports whether it is.
    """
    if f.k < 1:
        raise FamilyError("switching needs uniformity >= 1")
    targets = tuple(b_target.sets if isinstance(b_target, Family) else sorted(set(b_target)))
    for p in targets:
        if p & 1 or p.bit_count() != f.k or not ctx.in_b(p):
            raise FamilyError(f"{elements_of(p)} is not on the b-side")
    target_set = set(targets)
    keep, removed = [], []
    for s in f.sets:
        if s & 1:
            if ctx.in_a(s ^ 1):
                removed.append(s)
            else:
                keep.append(s)
        elif ctx.in_b(s) and s not in target_set:
            removed.append(s)
        else:
            keep.append(s)
    new_a = [p | 1 for p in ctx.a_side(f.n, f.k) if all(p & b for b in targets)]
    out = Family.of(f.n, f.k, itertools.chain(keep, targets, new_a))
    added = tuple(sorted(set(out.sets) - set(f.sets)))
    gone = tuple(sorted(set(f.sets) - set(out.sets)))
    return SwitchResult(out, len(out) - len(f), is_intersecting(out), gone, added)
