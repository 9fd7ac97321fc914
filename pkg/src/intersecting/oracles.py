"""Brute-force and randomized verification at small parameters.

Every verifier folds a stream of families into a ``VerificationReport``.
Verdicts depend only on the set of families seen: counterexamples are
sorted canonically and statistics are plain counts, so reports are
reproducible byte for byte.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from . import bounds as B
from .constructions import e_l, full_star, h_u, j_i, t2s
from .family import (
    Family,
    FamilyError,
    are_isomorphic,
    common_intersection,
    delete,
    diversity,
    is_intersecting,
    isomorphism_key,
    k_subsets,
    maximal_extension,
    minimality_witness,
    relabel,
    transposition,
)
from .search import EnumBudget, MaximalFamilies

STATUSES = ("verified", "counterexample", "inconclusive")
MAX_STORED = 50


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    status: str = "verified"
    counterexamples: list[Family] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    budget: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": self.params,
            "status": self.status,
            "counterexamples": [f.to_dict() for f in self.counterexamples],
            "stats": self.stats,
            "budget": self.budget,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @property
    def exit_code(self) -> int:
        return {"verified": 0, "counterexample": 1, "inconclusive": 2}[self.status]


def worst_status(statuses: Iterable[str]) -> str:
    rank = {"verified": 0, "inconclusive": 1, "counterexample": 2}
    return max(statuses, key=rank.__getitem__, default="verified")


class _Fold:
    """Shared bookkeeping for the stream verifiers."""

    def __init__(self, theorem: str, params: dict):
        self.report = VerificationReport(theorem, params)
        self.counts: Counter = Counter()
        self.bad: dict[tuple, Family] = {}
        self.reasons: Counter = Counter()
        self.equality: dict[str, int] = Counter()
        self.unclassified: dict[tuple, Family] = {}

    def violation(self, f: Family, reason: str) -> None:
        self.bad.setdefault((f.n, f.k, f.sets), f)
        self.reasons[reason] += 1

    def finish(self, stream=None, extra_inconclusive: bool = False) -> VerificationReport:
        r = self.report
        bad = [self.bad[key] for key in sorted(self.bad)]
        r.counterexamples = bad[:MAX_STORED]
        r.stats.update({key: self.counts[key] for key in sorted(self.counts)})
        r.stats["counterexample_count"] = len(bad)
        if self.reasons:
            r.stats["violations"] = dict(sorted(self.reasons.items()))
        if self.equality:
            r.stats["equality_classes"] = dict(sorted(self.equality.items()))
        if self.unclassified:
            r.stats["unclassified_equality"] = [
                self.unclassified[key].to_dict() for key in sorted(self.unclassified)
            ]
        incomplete = extra_inconclusive
        if stream is not None and hasattr(stream, "status"):
            r.stats["stream"] = stream.describe()
            r.budget = {**stream.budget.to_dict(), "nodes_used": stream.nodes}
            if stream.status != "complete":
                incomplete = True
                r.notes.append(f"enumeration stopped early: {stream.reason}")
        if bad:
            r.status = "counterexample"
        elif incomplete:
            r.status = "inconclusive"
        else:
            r.status = "verified"
        return r


# --------------------------------------------------------------------------
# isomorphism classification against the named families


class Catalog:
    """Named families at fixed (n, k), matched up to isomorphism."""

    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        named: list[tuple[str, Family]] = [("star", full_star(n, k))]
        for i in range(1, k + 1):
            if n >= k + i:
                named.append((f"J_{i}", j_i(n, k, i)))
        for l in range(2, n - k + 1):
            named.append((f"E_{l}", e_l(n, k, l)))
        for u in range(2, k + 1):
            named.append((f"H_{u}", h_u(n, k, u)))
        self.named = named
        self._keys = [(label, isomorphism_key(f), f) for label, f in named]
        self._cache: dict[tuple, list[tuple[Family, tuple[str, ...]]]] = {}

    def labels(self, f: Family) -> tuple[str, ...]:
        key = isomorphism_key(f)
        bucket = self._cache.setdefault(key, [])
        for rep, labels in bucket:
            if rep.sets == f.sets or are_isomorphic(rep, f) is not None:
                return labels
        labels = tuple(label for label, k2, g in self._keys
                       if k2 == key and are_isomorphic(f, g) is not None)
        bucket.append((f, labels))
        return labels

    def classify(self, f: Family) -> str:
        labels = self.labels(f)
        return "=".join(labels) if labels else "unclassified"


def _record_equality(fold: _Fold, catalog: Catalog, f: Family) -> tuple[str, ...]:
    labels = catalog.labels(f)
    name = "=".join(labels) if labels else "unclassified"
    fold.equality[name] += 1
    if not labels:
        key = isomorphism_key(f)
        if not any(are_isomorphic(f, g) is not None
                   for k2, g in fold.unclassified.items() if k2[0] == key):
            fold.unclassified[(key, f.sets)] = f
    return labels


def _normalized(f: Family) -> tuple[Family, int]:
    gamma, at = diversity(f)
    if at != 1:
        f = relabel(f, transposition(f.n, 1, at))
    return f, gamma


# --------------------------------------------------------------------------
# enumeration entry points


def enumerate_maximal_intersecting(n: int, k: int, budget: EnumBudget | None = None,
                                   **options) -> MaximalFamilies:
    """All inclusion-maximal intersecting families; see ``MaximalFamilies`` for options."""
    return MaximalFamilies(n, k, budget or EnumBudget(), **options)


def enumerate_minimal_tau2(m: int, s: int, cap: int | None = -1) -> Iterator[Family]:
    """Families of s-sets over [m] with covering number 2, minimal for that property.

    Such a family has empty common intersection while every proper
    subfamily has a nonempty one.  Members are chosen in increasing mask
    order; every proper prefix must itself be minimal w.r.t. common
    intersection with a nonempty core.  ``cap`` bounds the family size
    (default s + 1); ``None`` searches without a cap.
    """
    if m <= 2 * s or s < 1:
        raise FamilyError(f"needs m > 2s >= 2, got m={m}, s={s}")
    if cap == -1:
        cap = B.bollobas_limit(s)
    universe = list(k_subsets((1 << m) - 1, s))

    def minimal(chosen: list[int]) -> bool:
        full = (1 << m) - 1
        core = full
        for c in chosen:
            core &= c
        for idx in range(len(chosen)):
            rest = full
            for jdx, c in enumerate(chosen):
                if jdx != idx:
                    rest &= c
            if rest == core:
                return False
        return True

    def extend(chosen: list[int], core: int, start: int) -> Iterator[Family]:
        for pos in range(start, len(universe)):
            x = universe[pos]
            new_core = core & x
            chosen.append(x)
            if len(chosen) >= 2 and minimal(chosen):
                if new_core == 0:
                    yield Family(m, s, tuple(chosen))
                elif cap is None or len(chosen) < cap:
                    yield from extend(chosen, new_core, pos + 1)
            elif len(chosen) == 1:
                yield from extend(chosen, new_core, pos + 1)
            chosen.pop()

    yield from extend([], (1 << m) - 1, 0)


def random_intersecting(n: int, k: int, target_diversity: int, seed: int,
                        attempts: int = 500) -> Family:
    """Seeded sample of a maximal intersecting family with the requested diversity.

    The part avoiding one element is drawn as ``target`` sets around a random
    core, the family is completed to the unique maximal extension and the
    labels are shuffled.
    """
    if n <= 2 * k:
        raise FamilyError(f"needs n > 2k, got n={n}, k={k}")
    rng = random.Random(seed)
    if target_diversity == 0:
        return full_star(n, k, rng.randint(1, n))
    if target_diversity < 0:
        raise FamilyError("diversity must be nonnegative")
    rest = list(range(2, n + 1))
    for _ in range(attempts):
        c = rng.randint(1, k - 1)
        core = rng.sample(rest, c)
        others = [x for x in rest if x not in core]
        if B.binom_exact(len(others), k - c) < target_diversity:
            continue
        picked: set[int] = set()
        base = sum(1 << (x - 1) for x in core)
        while len(picked) < target_diversity:
            picked.add(base | sum(1 << (x - 1) for x in rng.sample(others, k - c)))
        f = maximal_extension(Family.of(n, k, picked))
        if diversity(f)[0] != target_diversity:
            continue
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        return relabel(f, perm)
    raise FamilyError(f"no intersecting family with diversity {target_diversity} found at n={n}, k={k}")


# --------------------------------------------------------------------------
# theorem verifiers


def verify_ekr(n: int, k: int, families: Iterable[Family]) -> VerificationReport:
    """Size at most C(n-1, k-1), with equality only for full stars."""
    fold = _Fold("ekr", {"n": n, "k": k})
    cap = B.size_full_star(n, k)
    for f in families:
        fold.counts["examined"] += 1
        if not is_intersecting(f):
            fold.counts["rejected_not_intersecting"] += 1
            continue
        if len(f) > cap:
            fold.violation(f, "size above star")
        elif len(f) == cap:
            fold.counts["equality"] += 1
            if diversity(f)[0] != 0:
                fold.violation(f, "non-star at star size")
    fold.report.stats["bound"] = cap
    return fold.finish(families)


def verify_thm1(n: int, k: int, u: int, families: Iterable[Family]) -> VerificationReport:
    """Diversity at least C(n-u-1, n-k-1) forces the size bound kz_bound(n, k, u)."""
    if not (n > 2 * k and 3 <= u <= k):
        raise B.RegimeError(f"needs n > 2k and 3 <= u <= k, got n={n}, k={k}, u={u}")
    fold = _Fold("thm1", {"n": n, "k": k, "u": u})
    threshold = B.kz_diversity_threshold(n, k, u)
    bound = B.kz_bound(n, k, u)
    catalog = Catalog(n, k)
    for f in families:
        fold.counts["examined"] += 1
        if not is_intersecting(f):
            fold.counts["rejected_not_intersecting"] += 1
            continue
        if diversity(f)[0] < threshold:
            continue
        fold.counts["applicable"] += 1
        if len(f) > bound + B.TOLERANCE:
            fold.violation(f, "size above bound")
        elif len(f) == bound:
            _record_equality(fold, catalog, f)
    fold.report.stats.update(bound=bound, diversity_threshold=threshold)
    return fold.finish(families)


def verify_hk(n: int, k: int, families: Iterable[Family]) -> VerificationReport:
    """Diversity at least 2 forces |F| <= |J_2|; equality is J_2 alone for k >= 5."""
    if not (n > 2 * k and k >= 4):
        raise B.RegimeError(f"needs n > 2k and k >= 4, got n={n}, k={k}")
    fold = _Fold("hk", {"n": n, "k": k})
    bound = B.hk_bound(n, k)
    catalog = Catalog(n, k)
    for f in families:
        fold.counts["examined"] += 1
        if not is_intersecting(f):
            fold.counts["rejected_not_intersecting"] += 1
            continue
        if diversity(f)[0] < 2:
            continue
        fold.counts["applicable"] += 1
        if len(f) > bound:
            fold.violation(f, "size above bound")
        elif len(f) == bound:
            labels = _record_equality(fold, catalog, f)
            if k >= 5 and "J_2" not in labels:
                fold.violation(f, "equality outside J_2")
    fold.report.stats["bound"] = bound
    if k == 4:
        fold.report.notes.append("k=4: equality families are classified, not judged")
    return fold.finish(families)


def verify_thm4_part1(f: Family, m_sub: Family) -> VerificationReport:
    """|F| <= |F'| for the maximal extension F' of a minimal M inside F(bar 1)."""
    n, k = f.n, f.k
    fold = _Fold("thm4p1", {"n": n, "k": k})
    _thm4_part1_instance(fold, f, m_sub, Catalog(n, k) if k == 4 else None)
    incomplete = fold.counts["precondition_failed"] > 0
    return fold.finish(extra_inconclusive=incomplete)


def _thm4_part1_instance(fold: _Fold, f: Family, m_sub: Family, catalog: Catalog | None,
                         silent: bool = False) -> None:
    n, k = f.n, f.k
    notes = fold.report.notes

    def fail(reason: str) -> None:
        fold.counts["precondition_failed"] += 1
        if not silent:
            notes.append(f"precondition: {reason}")

    if n <= 2 * k or k < 4:
        return fail("needs n > 2k >= 8")
    if not is_intersecting(f):
        return fail("family is not intersecting")
    gamma, at = diversity(f)
    if at != 1:
        perm = transposition(n, 1, at)
        f, m_sub = relabel(f, perm), relabel(m_sub, perm)
        if not silent:
            notes.append(f"normalized: swapped 1 and {at}")
    if not m_sub.issubset(delete(f, 1)):
        return fail("m_sub is not inside F(bar 1)")
    witness = minimality_witness(m_sub)
    if not witness:
        return fail(f"m_sub is not minimal ({witness.reason})")
    t = witness.t
    if t < 3:
        return fail(f"core size {t} < 3")
    fold.counts["instances"] += 1
    ext = maximal_extension(m_sub)
    if len(f) > len(ext):
        fold.violation(f, "size above extension")
    elif len(f) == len(ext):
        fold.counts["equality"] += 1
        if k >= 5:
            if are_isomorphic(f, ext) is None:
                fold.violation(f, "equality but not isomorphic to extension")
        elif t == 3 and catalog is not None:
            labels = _record_equality(fold, catalog, f)
            if not {"J_2", f"E_{n - k}"} & set(labels):
                fold.violation(f, f"k=4 equality outside {{E_{n - k}, J_2}}")


def minimal_subfamilies(d: Family, t: int) -> Iterator[Family]:
    """Subfamilies of ``d`` (at least two members) minimal w.r.t. common intersection, core size t."""
    sets = d.sets
    for z in range(2, d.k - t + 2):
        for combo in combinations(sets, z):
            core = combo[0]
            for c in combo[1:]:
                core &= c
            if core.bit_count() != t:
                continue
            m = Family(d.n, d.k, combo)
            if minimality_witness(m):
                yield m


def verify_thm4_part1_exhaustive(n: int, k: int, t: int,
                                 families: Iterable[Family]) -> VerificationReport:
    """Theorem check on every (F, M) pair with F from the stream and M of core size t."""
    fold = _Fold("thm4p1", {"n": n, "k": k, "t": t, "mode": "exhaustive"})
    catalog = Catalog(n, k) if k == 4 else None
    for f in families:
        fold.counts["examined"] += 1
        if not is_intersecting(f):
            fold.counts["rejected_not_intersecting"] += 1
            continue
        g, gamma = _normalized(f)
        if gamma == 0:
            continue
        fold.counts["applicable"] += 1
        for m in minimal_subfamilies(delete(g, 1), t):
            m = Family(n, k, m.sets)
            _thm4_part1_instance(fold, g, m, catalog, silent=True)
    return fold.finish(families)


def verify_thm4_part2(n: int, k: int, t: int, families: Iterable[Family]) -> VerificationReport:
    """|F| <= |J_{k-t+1}| when the part avoiding 1 has common intersection of size <= t."""
    if not (n > 2 * k and k >= 4 and t >= 3):
        raise B.RegimeError(f"needs n > 2k >= 8 and t >= 3, got n={n}, k={k}, t={t}")
    fold = _Fold("thm4p2", {"n": n, "k": k, "t": t})
    i0 = k - t + 1
    bound = B.size_j_i(n, k, i0)
    catalog = Catalog(n, k)
    for f in families:
        fold.counts["examined"] += 1
        if not is_intersecting(f):
            fold.counts["rejected_not_intersecting"] += 1
            continue
        g, gamma = _normalized(f)
        if gamma == 0:
            continue
        if common_intersection(delete(g, 1)).bit_count() > t:
            continue
        fold.counts["applicable"] += 1
        if len(g) > bound:
            fold.violation(f, "size above bound")
        elif len(g) == bound:
            labels = _record_equality(fold, catalog, g)
            if k < 5:
                continue
            if n >= 3 * k - t:
                ok = f"J_{i0}" in labels
            else:
                ok = any(f"J_{i}" in labels for i in range(i0, k + 1))
            if not ok:
                fold.violation(f, "equality outside the J chain")
    fold.report.stats["bound"] = bound
    if k == 4:
        fold.report.notes.append("k=4: equality families are classified, not judged")
    return fold.finish(families)


def verify_cor5(n: int, k: int, families: Iterable[Family]) -> VerificationReport:
    """Families larger than |J_3| sit inside some E_l; at |J_3| they are J_3 (or J_i at n = 2k+1)."""
    if n <= 2 * k or k < 4:
        raise B.RegimeError(f"needs n > 2k >= 8, got n={n}, k={k}")
    label = "cor5" if k >= 5 else "cor5/theorem-4-derived"
    fold = _Fold(label, {"n": n, "k": k})
    bound = B.size_j_i(n, k, 3)
    catalog = Catalog(n, k)
    for f in families:
        fold.counts["examined"] += 1
        if not is_intersecting(f):
            fold.counts["rejected_not_intersecting"] += 1
            continue
        if len(f) < bound:
            continue
        g, gamma = _normalized(f)
        contained = gamma <= 1 or common_intersection(delete(g, 1)).bit_count() == k - 1
        fold.counts["applicable"] += 1
        if contained:
            fold.counts["contained_in_some_E"] += 1
            continue
        if len(f) > bound:
            fold.violation(f, "large family outside every E_l")
            continue
        labels = _record_equality(fold, catalog, g)
        wanted = ["J_3"] if n >= 2 * k + 2 else [f"J_{i}" for i in range(3, k + 1)]
        if not set(wanted) & set(labels):
            fold.violation(f, "equality outside " + "/".join(wanted))
    fold.report.stats["bound"] = bound
    if k < 5:
        fold.report.notes.append("k=4 is outside the literal hypothesis 2k >= 10")
    return fold.finish(families)


def _disjoint_masks(m: int, small: int, big: int) -> tuple[dict[int, int], int]:
    """Map each small-set mask to the bitset of big-set indices disjoint from it."""
    bigs = list(k_subsets((1 << m) - 1, big))
    table = {}
    for s in k_subsets((1 << m) - 1, small):
        table[s] = sum(1 << idx for idx, b in enumerate(bigs) if not s & b)
    return table, len(bigs)


def verify_lemma7(m: int, s: int, k: int, cap: int | None = None) -> VerificationReport:
    """Maximum of |F| + |H| over minimal covering-number-2 families H and their cross partners F."""
    if not (m >= k + s and k >= 4 and m > 2 * s):
        raise B.RegimeError(f"needs m >= k + s, k >= 4, m > 2s, got m={m}, s={s}, k={k}")
    fold = _Fold("lemma7", {"m": m, "s": s, "k": k})
    disjoint, total = _disjoint_masks(m, s, k - 1)
    expected = B.f2s_size(m, k, s) + 2
    reference = t2s(m, s)
    best, maximizers, by_size = -1, [], Counter()
    for h in enumerate_minimal_tau2(m, s, cap):
        z = len(h)
        by_size[z] += 1
        blocked = 0
        for x in h.sets:
            blocked |= disjoint[x]
        f_size = total - blocked.bit_count()
        if z > B.bollobas_limit(s):
            fold.violation(h, "above the set-pair cap")
        if f_size > B.f_of_z(m, k, s, z):
            fold.violation(h, "partner above f(z)")
        value = f_size + z
        if value > best:
            best, maximizers = value, [h]
        elif value == best:
            maximizers.append(h)
    non_t2s = [h for h in maximizers if are_isomorphic(h, reference) is None]
    if best != expected:
        fold.violation(maximizers[0], f"maximum {best} differs from {expected}")
    for h in non_t2s:
        fold.violation(h, "maximum attained off T_2^s")
    st = fold.report.stats
    st.update(maximum=best, expected=expected, maximizers=len(maximizers),
              maximizers_not_t2s=len(non_t2s), search_cap=cap,
              families_by_size={str(z): c for z, c in sorted(by_size.items())})
    fold.counts["examined"] = sum(by_size.values())
    return fold.finish()


def _sample_b(rng: random.Random, n: int, b: int, universe: list[int]) -> list[int]:
    mode = rng.randrange(6)
    if mode == 0:
        return []
    if mode == 1:
        return rng.sample(universe, rng.randint(1, min(6, len(universe))))
    if mode == 2:
        j = rng.randint(1, b)
        core = sum(1 << (x - 1) for x in rng.sample(range(1, n + 1), j))
        fam = [x for x in universe if x & core == core]
        if rng.random() < 0.5 and len(fam) > 1:
            fam = rng.sample(fam, rng.randint(1, len(fam)))
        if rng.random() < 0.3:
            fam = list(set(fam) | set(rng.sample(universe, rng.randint(1, 3))))
        return fam
    if mode == 3:
        x = 1 << rng.randrange(n)
        star = [y for y in universe if y & x]
        return rng.sample(star, rng.randint(1, len(star)))
    if mode == 4:
        return list(universe)
    return rng.sample(universe, rng.randint(1, len(universe)))


def verify_cross(n: int, a: int, b: int, samples: int, seed: int) -> VerificationReport:
    """Seeded random check of the two cross-intersecting bounds and their strictness clauses."""
    if not (n > a + b and a >= 1 and b >= 1):
        raise B.RegimeError(f"needs n > a + b, got n={n}, a={a}, b={b}")
    fold = _Fold("cross", {"n": n, "a": a, "b": b, "samples": samples, "seed": seed})
    rng = random.Random(seed)
    universe = list(k_subsets((1 << n) - 1, b))
    disjoint, total = _disjoint_masks(n, b, a)
    easy = B.cross_easy_bound(n, a, b)
    js = [j for j in range(1, b + 1)] if b < a else []
    for _ in range(samples):
        fam = sorted(set(_sample_b(rng, n, b, universe)))
        blocked = 0
        for x in fam:
            blocked |= disjoint[x]
        size_a, size_b = total - blocked.bit_count(), len(fam)
        fold.counts["samples"] += 1
        if B.cross_easy_applies(n, a, b, size_b):
            fold.counts["easy_applicable"] += 1
            value = size_a + size_b
            if value > easy or (value == easy and size_b > 0):
                fold.violation(Family(n, b, tuple(fam)), "easy bound")
            elif value == easy:
                fold.counts["easy_tight"] += 1
        for j in js:
            if size_b < B.cross_j_threshold(n, a, b, j):
                continue
            fold.counts[f"j{j}_applicable"] += 1
            value = size_a + size_b
            bound = B.cross_j_bound(n, a, b, j)
            if value > bound:
                fold.violation(Family(n, b, tuple(fam)), f"j={j} bound")
            elif value == bound:
                fold.counts[f"j{j}_tight"] += 1
                if not B.cross_j_equality_allowed(n, a, b, j, size_b):
                    fold.violation(Family(n, b, tuple(fam)), f"j={j} equality not permitted")
    return fold.finish()


def sampled_families(n: int, k: int, samples: int, seed: int) -> Iterator[Family]:
    """The named families at (n, k), then seeded random maximal families of varied diversity."""
    yield from (f for _, f in Catalog(n, k).named)
    rng = random.Random(seed)
    top = B.binom_exact(n - 3, k - 2)
    for _ in range(samples):
        target = rng.randint(0, top)
        try:
            yield random_intersecting(n, k, target, rng.randrange(2**32), attempts=50)
        except FamilyError:
            continue
