"""Generators for the named extremal families."""

from __future__ import annotations

from .family import (
    Family,
    FamilyError,
    interval,
    k_subsets,
    max_cross_partner,
    maximal_extension,
)

KINDS = ("star", "h", "j", "e", "t2s", "f2s")


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k <= n <= 64:
        raise FamilyError(f"needs 1 <= k <= n <= 64, got n={n}, k={k}")


def full_star(n: int, k: int, center: int = 1) -> Family:
    _check_nk(n, k)
    if not 1 <= center <= n:
        raise FamilyError(f"center {center} out of range [1, {n}]")
    bit = 1 << (center - 1)
    return Family(n, k, tuple(s for s in k_subsets((1 << n) - 1, k) if s & bit))


def h_u(n: int, k: int, u: int) -> Family:
    """Sets containing [2, u+1], plus sets through 1 that meet [2, u+1]."""
    _check_nk(n, k)
    if not 2 <= u <= k or n < u + 1:
        raise FamilyError(f"needs 2 <= u <= k and n >= u + 1, got n={n}, k={k}, u={u}")
    block = interval(2, u + 1)
    return Family(n, k, tuple(
        s for s in k_subsets((1 << n) - 1, k)
        if s & block == block or (s & 1 and s & block)
    ))


def special_set(k: int, i: int) -> int:
    """I_i = [i + 1, k + i]."""
    return interval(i + 1, k + i)


def j_i(n: int, k: int, i: int) -> Family:
    """{I_1, I_i} plus sets through 1 meeting both I_1 and I_i."""
    _check_nk(n, k)
    if not 1 <= i <= k or n < k + i:
        raise FamilyError(f"needs 1 <= i <= k and n >= k + i, got n={n}, k={k}, i={i}")
    first, other = special_set(k, 1), special_set(k, i)
    ones = (s for s in k_subsets((1 << n) - 1, k) if s & 1 and s & first and s & other)
    return Family.of(n, k, [first, other, *ones])


def e_l_core(n: int, k: int, l: int) -> Family:
    """The part avoiding 1: [2, k] plus one tail element from [k + 1, k + l]."""
    _check_nk(n, k)
    if not 2 <= l <= n - k:
        raise FamilyError(f"needs 2 <= l <= n - k, got n={n}, k={k}, l={l}")
    core = interval(2, k)
    return Family.of(n, k, (core | (1 << (x - 1)) for x in range(k + 1, k + l + 1)))


def e_l(n: int, k: int, l: int) -> Family:
    return maximal_extension(e_l_core(n, k, l))


def t2s(m: int, s: int) -> Family:
    """The two disjoint s-sets [1, s] and [s + 1, 2s] over [m]."""
    if s < 1 or m <= 2 * s or m > 64:
        raise FamilyError(f"needs s >= 1 and 2s < m <= 64, got m={m}, s={s}")
    return Family.of(m, s, [interval(1, s), interval(s + 1, 2 * s)])


def f2s(m: int, k: int, s: int) -> Family:
    """Largest family of (k-1)-sets over [m] cross-intersecting the disjoint pair."""
    if k < 2 or m < k + s:
        raise FamilyError(f"needs k >= 2 and m >= k + s, got m={m}, k={k}, s={s}")
    return max_cross_partner(t2s(m, s), k - 1)


def construct(kind: str, n: int, k: int, index: int | None = None, m: int | None = None) -> Family:
    """Dispatch by family kind, as used by the command line."""
    if kind == "star":
        return full_star(n, k, index or 1)
    if kind in ("h", "j", "e") and index is None:
        raise FamilyError(f"family {kind!r} needs an index")
    if kind == "h":
        return h_u(n, k, index)
    if kind == "j":
        return j_i(n, k, index)
    if kind == "e":
        return e_l(n, k, index)
    if kind in ("t2s", "f2s"):
        if index is None:
            raise FamilyError(f"family {kind!r} needs --s")
        ground = m if m is not None else n
        return t2s(ground, index) if kind == "t2s" else f2s(ground, k, index)
    raise FamilyError(f"unknown family kind {kind!r}")
