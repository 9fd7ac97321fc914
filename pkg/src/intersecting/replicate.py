"""Replication suites: formula identities, small exhaustive runs, sampled checks."""

from __future__ import annotations

from functools import lru_cache

from . import bounds as B
from .constructions import e_l, f2s, full_star, h_u, j_i, special_set
from .family import Family
from .oracles import (
    VerificationReport,
    _Fold,
    sampled_families,
    verify_cor5,
    verify_cross,
    verify_ekr,
    verify_hk,
    verify_lemma7,
    verify_thm1,
    verify_thm4_part1,
    verify_thm4_part1_exhaustive,
    verify_thm4_part2,
)
from .search import EnumBudget, MaximalFamilies

SUITES = ("formulas", "hm-kz", "hk", "thm4", "lemma7", "cross", "chains")

ANCHORS = {
    "hk_bound(9,4)": (lambda: B.hk_bound(9, 4), lambda: len(j_i(9, 4, 2)), 51),
    "hm_bound(9,4)": (lambda: B.hm_bound(9, 4), lambda: len(j_i(9, 4, 1)), 53),
    "size_j_i(9,4,3)": (lambda: B.size_j_i(9, 4, 3), lambda: len(j_i(9, 4, 3)), 50),
    "size_e_l(9,4,5)": (lambda: B.size_e_l(9, 4, 5), lambda: len(e_l(9, 4, 5)), 51),
    "f2s_size(8,4,3)": (lambda: B.f2s_size(8, 4, 3), lambda: len(f2s(8, 4, 3)), 36),
    "f_of_z(8,4,3,3)": (lambda: B.f_of_z(8, 4, 3, 3), None, 31),
}


@lru_cache(maxsize=8)
def census(n: int, k: int, min_size: int, max_millis: int | None = 600_000,
           max_nodes: int | None = 10**7) -> MaximalFamilies:
    """Rooted census of maximal families with at least ``min_size`` members, run once."""
    stream = MaximalFamilies(n, k, EnumBudget(max_millis=max_millis, max_nodes=max_nodes),
                             min_size=min_size, rooted=True)
    for _ in stream:
        pass
    return stream


def formula_identities() -> VerificationReport:
    """Closed-form sizes against constructed families, k in {4, 5}, 2k < n <= 12."""
    fold = _Fold("formulas", {"k": [4, 5], "n_max": 12})

    def check(name: str, formula: int, fam: Family) -> None:
        fold.counts["checked"] += 1
        if formula != len(fam):
            fold.violation(fam, f"{name}: formula {formula} vs {len(fam)}")

    for k in (4, 5):
        for n in range(2 * k + 1, 13):
            check(f"star({n},{k})", B.size_full_star(n, k), full_star(n, k))
            check(f"hm({n},{k})", B.hm_bound(n, k), j_i(n, k, 1))
            check(f"hm=H_k({n},{k})", B.hm_bound(n, k), h_u(n, k, k))
            check(f"hk({n},{k})", B.hk_bound(n, k), j_i(n, k, 2))
            for u in range(2, k + 1):
                fam = h_u(n, k, u)
                check(f"H_{u}({n},{k})", B.size_h_u(n, k, u), fam)
                if u >= 3:
                    check(f"kz({n},{k},{u})", B.kz_bound(n, k, u), fam)
            for i in range(1, k + 1):
                if n >= k + i:
                    check(f"J_{i}({n},{k})", B.size_j_i(n, k, i), j_i(n, k, i))
            for l in range(2, n - k + 1):
                check(f"E_{l}({n},{k})", B.size_e_l(n, k, l), e_l(n, k, l))
        for m in range(k + 1, 13):
            for s in range(1, m - k + 1):
                if m > 2 * s:
                    check(f"F2s({m},{k},{s})", B.f2s_size(m, k, s), f2s(m, k, s))
    for name, (formula, built, frozen) in ANCHORS.items():
        fold.counts["anchors"] += 1
        value = formula()
        enumerated = built() if built else frozen
        if not value == enumerated == frozen:
            fold.reasons[f"anchor {name}: {value} / {enumerated} / {frozen}"] += 1
            fold.bad[(0, 0, (len(fold.bad),))] = Family(1, 0, ())
    return fold.finish()


def chain_table(k_values=range(4, 9), n_max: int = 40) -> VerificationReport:
    """|J_i| - |J_{i+1}| against the closed forms and the strictness regimes."""
    fold = _Fold("chains", {"k": list(k_values), "n_max": n_max})
    rows = []
    for k in k_values:
        for n in range(2 * k, n_max + 1):
            gaps = []
            for i in range(1, k):
                if n < k + i + 1:
                    break
                gap = B.size_j_i(n, k, i) - B.size_j_i(n, k, i + 1)
                gaps.append(gap)
                fold.counts["checked"] += 1
                if gap != B.j_chain_gap(n, k, i):
                    fold.reasons[f"gap formula n={n} k={k} i={i}"] += 1
                strict = n >= 2 * k + 1 if i == 1 else n >= 2 * k + i - 1
                if (gap > 0) != strict or gap < 0:
                    fold.reasons[f"regime n={n} k={k} i={i}"] += 1
            rows.append([k, n, *gaps])
    fold.report.stats["table"] = rows
    for reason in list(fold.reasons):
        fold.bad[(0, 0, (len(fold.bad),))] = Family(1, 0, ())
    return fold.finish()


def run_suite(name: str, max_millis: int | None = 600_000, max_nodes: int | None = 10**7,
              seed: int = 0, samples: int = 10_000) -> list[VerificationReport]:
    if name == "formulas":
        return [formula_identities()]
    if name == "chains":
        return [chain_table()]
    if name == "lemma7":
        return [verify_lemma7(8, 3, 4), verify_lemma7(9, 3, 5)]
    if name == "cross":
        return [verify_cross(n, a, b, samples, seed) for n, a, b in ((9, 4, 3), (9, 3, 3), (10, 4, 2))]
    big = census(9, 4, 51, max_millis, max_nodes)
    if name == "hm-kz":
        return [
            verify_ekr(5, 2, MaximalFamilies(5, 2)),
            verify_ekr(7, 3, MaximalFamilies(7, 3)),
            verify_thm1(7, 3, 3, MaximalFamilies(7, 3)),
            verify_thm1(9, 4, 3, big),
            verify_thm1(9, 4, 4, big),
        ]
    if name == "hk":
        return [verify_hk(9, 4, big)]
    if name == "thm4":
        out = [verify_thm4_part2(9, 4, 3, big)]
        for n, k in ((9, 4), (11, 5)):
            pair = Family.of(n, k, [special_set(k, 1), special_set(k, 2)])
            rep = verify_thm4_part1(j_i(n, k, 2), pair)
            rep.params["instance"] = "J_2 with {I_1, I_2}"
            out.append(rep)
        out.append(verify_thm4_part1_exhaustive(9, 4, 3, census(9, 4, 48, max_millis, max_nodes)))
        out.append(verify_cor5(9, 4, census(9, 4, 50, max_millis, max_nodes)))
        rep = verify_cor5(11, 5, sampled_families(11, 5, 500, seed))
        rep.params.update(mode="sampled", samples=500, seed=seed)
        out.append(rep)
        return out
    raise ValueError(f"unknown suite {name!r}")
