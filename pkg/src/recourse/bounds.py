"""Exact integer forms of the guarantees the traces are checked against.

All comparisons avoid floating point: logarithmic bounds are evaluated
through equivalent integer inequalities, rational bounds through
cross-multiplication.
"""
from __future__ import annotations


def sp_total_flip_bound(n: int, c: int = 2) -> int:
    """floor((n - log2(n) - 1) / log2(c)): largest k with 2*n*c**k <= 2**n."""
    if n < 1:
        return 0
    lo, hi = 0, n
    limit = 2 ** n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if 2 * n * c ** mid <= limit:
            lo = mid
        else:
            hi = mid - 1
    return lo


def sp_step_flip_bound(n: int, c: int = 2) -> int:
    """floor(log_c(n)): largest j with c**j <= n."""
    if n < 1:
        return 0
    j = 0
    power = c
    while power <= n:
        j += 1
        power *= c
    return j


def greedy_max_indegree_bound(n: int) -> int:
    """Reaching in-degree k needs at least 2**k - 1 edges: floor(log2(n+1))."""
    return (n + 1).bit_length() - 1


def allflip_total_ok(total_flips: int, n: int, delta: int, big_delta: int) -> bool:
    """total <= n * (Delta+1) / (Delta+1-2*delta), cross-multiplied."""
    slack = big_delta + 1 - 2 * delta
    return total_flips * slack <= n * (big_delta + 1)


def bmatch_swap_bound(n: int, C: int) -> int:
    """floor(n * C / (C-1)**2)."""
    return n * C // (C - 1) ** 2


def bmatch_swap_ok(total_swaps: int, n: int, C: int) -> bool:
    return total_swaps * (C - 1) ** 2 <= n * C
