"""Multi-index bookkeeping for tensor and exterior powers."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product


def sort_sign(idx: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sort ``idx`` and return ``(sign, sorted)``; sign is 0 on a repeated index."""
    if len(set(idx)) != len(idx):
        return 0, tuple(sorted(idx))
    inversions = sum(1 for i, j in combinations(range(len(idx)), 2) if idx[i] > idx[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(idx))


@lru_cache(maxsize=None)
def wedge_basis(dim: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Strictly increasing k-subsets of ``range(dim)`` in lexicographic order."""
    return tuple(combinations(range(dim), k))


@lru_cache(maxsize=None)
def wedge_index(dim: int, k: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(wedge_basis(dim, k))}


@lru_cache(maxsize=None)
def tensor_basis(dim: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(product(range(dim), repeat=k))


def tensor_flat(idx: tuple[int, ...], dim: int) -> int:
    f = 0
    for i in idx:
        f = f * dim + i
    return f


def wedge_label(idx: tuple[int, ...], prefix: str = "x") -> str:
    """``(0, 3)`` -> ``"x1^x4"``."""
    return "^".join(f"{prefix}{i + 1}" for i in idx)
