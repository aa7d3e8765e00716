"""Vectorized block sweeps over the full symmetric group.

The size maximization and the determinant expansion both need one pass over
all N! permutations in lexicographic order.  Permutations are materialized
in blocks and reduced with numpy; the permutation sign is recovered from the
lexicographic rank through its factorial-base digits (whose sum is the
inversion count).
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator

import numpy as np

_BLOCK = 1 << 16


def perm_blocks(n: int, block_size: int = _BLOCK) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (start_rank, block) over S_n in lexicographic order."""
    it = itertools.permutations(range(n))
    start = 0
    while True:
        chunk = list(itertools.islice(it, block_size))
        if not chunk:
            return
        yield start, np.asarray(chunk, dtype=np.int64)
        start += len(chunk)


def rank_parity(ranks: np.ndarray, n: int) -> np.ndarray:
    """Inversion-count parity of lexicographic ranks (0 even, 1 odd)."""
    ranks = np.asarray(ranks, dtype=np.int64)
    total = np.zeros_like(ranks)
    f = math.factorial(n - 1)
    for i in range(n - 1):
        total += (ranks // f) % (n - i)
        f //= n - 1 - i
    return total & 1


def v_blocks(d: np.ndarray) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (perms, V) blocks with V[r] = sum_j d[j, perm[r, j]]."""
    n = d.shape[0]
    ar = np.arange(n)
    for _, perms in perm_blocks(n):
        yield perms, d[ar, perms].sum(axis=1)


def term_arrays(d: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Frequencies, signed bond-length weights, and fixed-point masks.

    For every permutation in lexicographic order: the total bond length V,
    the weight sign * prod(1/length) over moved indices, and the bitmask of
    fixed points.  Arrays cover all of S_N (N <= 10 keeps this desk-scale).
    """
    n = d.shape[0]
    ar = np.arange(n)
    bits = 1 << ar
    v_parts, w_parts, m_parts = [], [], []
    for start, perms in perm_blocks(n):
        bond = d[ar, perms]
        fixed = perms == ar
        v_parts.append(bond.sum(axis=1))
        k1 = 1.0 / np.where(fixed, 1.0, bond).prod(axis=1)
        parity = rank_parity(np.arange(start, start + len(perms)), n)
        w_parts.append(np.where(parity, -k1, k1))
        m_parts.append((fixed * bits).sum(axis=1))
    return (
        np.concatenate(v_parts),
        np.concatenate(w_parts),
        np.concatenate(m_parts),
    )
