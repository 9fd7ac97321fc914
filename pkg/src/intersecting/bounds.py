"""Closed-form sizes and bounds for intersecting and cross-intersecting families.

Integer formulas are evaluated exactly with Python ints.  Floating point shows
up only where a parameter is genuinely real: the diversity parameter ``u`` of
:func:`kz_bound` and the Kruskal-Katona threshold ``x``.
"""

from __future__ import annotations

import math
from numbers import Integral

TOLERANCE = 1e-9


class RegimeError(ValueError):
    """Parameters fall outside the range where a formula is stated."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise RegimeError(msg)


def binom_exact(n: int, r: int) -> int:
    _require(n >= 0, f"binomial top must be nonnegative, got {n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


def binom_real(x: float, r: int) -> float:
    """x (x - 1) ... (x - r + 1) / r! for real x >= r - 1."""
    _require(r >= 0, f"lower index must be nonnegative, got {r}")
    _require(x >= r - 1, f"binom_real needs x >= r - 1, got x={x}, r={r}")
    value = 1.0
    for d in range(r):
        value *= (x - d) / (d + 1)
    return value


def kk_threshold_x(size: int, r: int) -> float:
    """The real x >= r - 1 with C(x, r) = size, by bisection."""
    _require(size >= 1, "Kruskal-Katona threshold needs a nonempty family")
    _require(r >= 1, f"uniformity must be positive, got {r}")
    lo, hi = float(r - 1), float(r - 1 + size)
    while hi - lo > TOLERANCE:
        mid = (lo + hi) / 2
        if binom_real(mid, r) < size:
            lo = mid
        else:
            hi = mid
    return hi


def kk_shadow_lb(size: int, r: int) -> float:
    """Lovasz lower bound C(x, r - 1) on the shadow of ``size`` r-sets."""
    return binom_real(kk_threshold_x(size, r), r - 1)


# --------------------------------------------------------------------------
# single-family bounds


def hm_bound(n: int, k: int) -> int:
    _require(n > 2 * k, f"Hilton-Milner size needs n > 2k, got n={n}, k={k}")
    return binom_exact(n - 1, k - 1) - binom_exact(n - k - 1, k - 1) + 1


def kz_bound(n: int, k: int, u: float) -> int | float:
    """Upper bound on |F| given diversity at least C(n-u-1, n-k-1).

    Exact for integer ``u``; real ``u`` uses real-topped binomials.
    """
    _require(n > 2 * k, f"needs n > 2k, got n={n}, k={k}")
    _require(3 <= u <= k, f"u must lie in [3, k], got {u}")
    if isinstance(u, Integral) or float(u).is_integer():
        u = int(u)
        top = n - u - 1
        return binom_exact(n - 1, k - 1) + binom_exact(top, n - k - 1) - binom_exact(top, k - 1)
    top = n - u - 1
    return binom_exact(n - 1, k - 1) + binom_real(top, n - k - 1) - binom_real(top, k - 1)


def kz_diversity_threshold(n: int, k: int, u: float) -> int | float:
    """The diversity hypothesis C(n-u-1, n-k-1) that goes with :func:`kz_bound`."""
    _require(n > 2 * k, f"needs n > 2k, got n={n}, k={k}")
    _require(3 <= u <= k, f"u must lie in [3, k], got {u}")
    if isinstance(u, Integral) or float(u).is_integer():
        return binom_exact(n - int(u) - 1, n - k - 1)
    return binom_real(n - u - 1, n - k - 1)


def hk_bound(n: int, k: int) -> int:
    _require(n > 2 * k and k >= 4, f"needs n > 2k and k >= 4, got n={n}, k={k}")
    return (binom_exact(n - 1, k - 1) - binom_exact(n - k - 1, k - 1)
            - binom_exact(n - k - 2, k - 2) + 2)


# --------------------------------------------------------------------------
# sizes of the named families


def size_full_star(n: int, k: int) -> int:
    _require(1 <= k <= n, f"needs 1 <= k <= n, got n={n}, k={k}")
    return binom_exact(n - 1, k - 1)


def size_h_u(n: int, k: int, u: int) -> int:
    _require(2 <= u <= k and n >= u + 1, f"needs 2 <= u <= k and n >= u + 1, got n={n}, k={k}, u={u}")
    top = n - u - 1
    return binom_exact(n - 1, k - 1) - binom_exact(top, k - 1) + binom_exact(top, k - u)


def size_j_i(n: int, k: int, i: int) -> int:
    _require(1 <= i <= k and n >= k + i, f"needs 1 <= i <= k and n >= k + i, got n={n}, k={k}, i={i}")
    if i == 1:
        return binom_exact(n - 1, k - 1) - binom_exact(n - k - 1, k - 1) + 1
    return (2 + binom_exact(n - 1, k - 1) - 2 * binom_exact(n - k - 1, k - 1)
            + binom_exact(n - k - i, k - 1))


def size_e_l(n: int, k: int, l: int) -> int:
    _require(2 <= l <= n - k, f"needs 2 <= l <= n - k, got n={n}, k={k}, l={l}")
    value = l + binom_exact(n - 1, k - 1) - binom_exact(n - k, k - 1)
    if l <= k - 1:
        value += binom_exact(n - k - l, k - 1 - l)
    return value


def j_chain_gap(n: int, k: int, i: int) -> int:
    """|J_i| - |J_{i+1}| as the closed form from the J-chain comparison."""
    _require(1 <= i < k and n >= k + i + 1, f"needs 1 <= i < k and n >= k + i + 1, got n={n}, k={k}, i={i}")
    if i == 1:
        return binom_exact(n - k - 2, k - 2) - 1
    return binom_exact(n - k - i - 1, k - 2)


# --------------------------------------------------------------------------
# cross partners of a disjoint pair, and the ladder f(z)


def _check_ladder(m: int, k: int, s: int) -> None:
    _require(k >= 4, f"needs k >= 4, got {k}")
    _require(s >= 1 and m >= k + s, f"needs s >= 1 and m >= k + s, got m={m}, k={k}, s={s}")


def f2s_size(m: int, k: int, s: int) -> int:
    """Number of (k-1)-subsets of [m] meeting both [s] and [s+1, 2s]."""
    _check_ladder(m, k, s)
    _require(m > 2 * s, f"needs m > 2s, got m={m}, s={s}")
    return sum(binom_exact(m - r, k - 2) - binom_exact(m - s - r, k - 2) for r in range(1, s + 1))


def f_of_z(m: int, k: int, s: int, z: int) -> int:
    """Upper bound on the cross partner of a minimal cover-2 family of z s-sets."""
    _check_ladder(m, k, s)
    _require(m > 2 * s, f"needs m > 2s, got m={m}, s={s}")
    _require(2 <= z <= s + 1, f"needs 2 <= z <= s + 1, got z={z}")
    head = sum(binom_exact(m - l, k - 2) - binom_exact(m - s - 1, k - 2) for l in range(1, z))
    tail = sum(binom_exact(m - l, k - 2) - binom_exact(m - s - 2 - (l - z), k - 2)
               for l in range(z, s + 1))
    return head + tail


def bollobas_limit(s: int) -> int:
    _require(s >= 1, f"needs s >= 1, got {s}")
    return binom_exact(s + 1, s)


# --------------------------------------------------------------------------
# cross-intersecting pairs A (a-sets), B (b-sets) over [n]


def _check_cross(n: int, a: int, b: int) -> None:
    _require(a > 0 and b > 0 and n > a + b, f"needs a, b > 0 and n > a + b, got n={n}, a={a}, b={b}")


def cross_easy_bound(n: int, a: int, b: int) -> int:
    _check_cross(n, a, b)
    return binom_exact(n, a)


def cross_easy_applies(n: int, a: int, b: int, size_b: int) -> bool:
    """Whether |B| = size_b meets the hypothesis of :func:`cross_easy_bound`."""
    _check_cross(n, a, b)
    return b < a or size_b <= binom_exact(n - b - 1 + a, a - 1)


def cross_j_bound(n: int, a: int, b: int, j: int) -> int:
    _check_cross(n, a, b)
    _require(b < a and 1 <= j <= b, f"needs b < a and 1 <= j <= b, got a={a}, b={b}, j={j}")
    return binom_exact(n, a) + binom_exact(n - j, b - j) - binom_exact(n - j, a)


def cross_j_threshold(n: int, a: int, b: int, j: int) -> int:
    """Smallest |B| for which :func:`cross_j_bound` is claimed."""
    _check_cross(n, a, b)
    _require(b < a and 1 <= j <= b, f"needs b < a and 1 <= j <= b, got a={a}, b={b}, j={j}")
    return binom_exact(n - j, b - j)


def cross_j_equality_allowed(n: int, a: int, b: int, j: int, size_b: int) -> bool:
    """Whether equality in the j-bound is permitted for |B| = size_b.

    Equality is ruled out once |B| exceeds the threshold, except when b = a - 1,
    j = 1 and B is every b-set.
    """
    if size_b <= cross_j_threshold(n, a, b, j):
        return True
    return b == a - 1 and j == 1 and size_b == binom_exact(n, b)
