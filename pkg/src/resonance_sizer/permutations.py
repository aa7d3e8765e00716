"""Permutation combinatorics: cycles, signs, multigraphs, edge-equivalence.

Each permutation sigma of {1..N} carries an undirected multigraph on the N
vertex labels: vertex j is joined to sigma(j) for every j, a fixed point
contributing a loop and a 2-cycle a double edge.  Two permutations are
edge-equivalent when these multigraphs coincide with multiplicities, which
happens exactly when one is obtained from the other by inverting some of
its cycles.  The equivalence classes of the full symmetric group are
enumerated here with a deterministic choice of representatives.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import SizeMismatch, TooLarge, ValidationError

# Hard cap for full S_N enumeration (10! = 3,628,800 permutations).
MAX_ENUM_N = 10


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..N}; images stored 0-based in a tuple."""

    image: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(x) for x in self.image)
        n = len(img)
        if n == 0 or sorted(img) != list(range(n)):
            raise ValidationError(f"not a permutation of 0..{n - 1}: {img}")
        object.__setattr__(self, "image", img)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        """Build from 0-based cycles; omitted indices are fixed points."""
        img = list(range(n))
        for cyc in cycles:
            cyc = tuple(cyc)
            for i, j in zip(cyc, cyc[1:] + cyc[:1]):
                img[i] = j
        return cls(tuple(img))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, j: int) -> int:
        return self.image[j]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, k in enumerate(self.image):
            inv[k] = j
        return Permutation(tuple(inv))

    def __str__(self) -> str:
        cycles = cycle_decompose(self).cycles
        return "".join("[" + " ".join(str(j + 1) for j in c) + "]" for c in cycles)


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint cycles covering {1..N}, singletons included.

    Canonical form: each cycle rotated to start at its smallest element,
    cycles sorted by that element.
    """

    cycles: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class EdgeMultigraph:
    """Undirected multigraph of a permutation as a sorted tuple of pairs.

    Every index j contributes one normalized pair {j, sigma(j)} (loops
    included), so the total multiplicity is always N and the multiplicity
    of an edge is its repetition count.
    """

    pairs: tuple[tuple[int, int], ...]

    def multiplicity(self, j: int, k: int) -> int:
        key = (min(j, k), max(j, k))
        return sum(1 for p in self.pairs if p == key)


@dataclass(frozen=True)
class ClassRepresentatives:
    """One representative per edge-equivalence class of S_N."""

    representatives: tuple[Permutation, ...]
    class_sizes: tuple[int, ...]

    @property
    def n_classes(self) -> int:
        return len(self.representatives)


def cycle_decompose(sigma: Permutation) -> CycleDecomposition:
    """Decompose into disjoint cycles in canonical order."""
    seen = [False] * sigma.n
    cycles = []
    for start in range(sigma.n):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = sigma.image[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = sigma.image[j]
        cycles.append(tuple(cyc))
    # starts are visited in increasing order, so cycles are already sorted
    # by smallest element and each begins at it
    return CycleDecomposition(tuple(cycles))


def permutation_sign(sigma: Permutation) -> int:
    """Sign of the permutation, computed as (-1)**(N - #cycles)."""
    return -1 if (sigma.n - cycle_decompose(sigma).m) % 2 else 1


def edge_multigraph(sigma: Permutation) -> EdgeMultigraph:
    """Strip directions off the bonds j -> sigma(j)."""
    pairs = sorted((min(j, k), max(j, k)) for j, k in enumerate(sigma.image))
    return EdgeMultigraph(tuple(pairs))


def edge_equivalent(sigma: Permutation, tau: Permutation) -> bool:
    """True iff the two undirected multigraphs agree with multiplicities."""
    if sigma.n != tau.n:
        raise SizeMismatch(f"permutation sizes differ: {sigma.n} vs {tau.n}")
    return edge_multigraph(sigma) == edge_multigraph(tau)


def class_mates(sigma: Permutation) -> list[Permutation]:
    """All permutations obtained by inverting subsets of sigma's cycles.

    This is exactly the edge-equivalence class of sigma; its size is
    2**(number of cycles of length >= 3) since shorter cycles are
    self-inverse.
    """
    cycles = cycle_decompose(sigma).cycles
    invertible = [c for c in cycles if len(c) >= 3]
    rigid = [c for c in cycles if len(c) < 3]
    mates = set()
    for flips in itertools.product((False, True), repeat=len(invertible)):
        img = list(range(sigma.n))
        chosen = list(rigid) + [
            c[::-1] if flip else c for c, flip in zip(invertible, flips)
        ]
        for cyc in chosen:
            for i, j in zip(cyc, cyc[1:] + cyc[:1]):
                img[i] = j
        mates.add(tuple(img))
    return [Permutation(img) for img in sorted(mates)]


def _check_enum_n(n: int) -> None:
    if n < 2:
        raise ValidationError(f"need N >= 2, got {n}")
    if n > MAX_ENUM_N:
        raise TooLarge(f"full S_N enumeration capped at N <= {MAX_ENUM_N}, got {n}")


def _multigraph_codes(perms: np.ndarray) -> np.ndarray:
    """Per-row sorted pair codes lo*N+hi; equal rows <=> edge-equivalent."""
    n = perms.shape[1]
    ar = np.arange(n)
    lo = np.minimum(perms, ar)
    hi = np.maximum(perms, ar)
    return np.sort(lo * n + hi, axis=1)


@lru_cache(maxsize=None)
def enumerate_classes(n: int) -> ClassRepresentatives:
    """Partition S_N into edge-equivalence classes.

    The representative of each class is its lexicographically smallest
    member; representatives are returned in lexicographic order together
    with the class sizes (which sum to N!).
    """
    _check_enum_n(n)
    code_blocks = []
    perm_blocks = []
    it = itertools.permutations(range(n))
    while True:
        chunk = list(itertools.islice(it, 1 << 17))
        if not chunk:
            break
        perms = np.asarray(chunk, dtype=np.int8)
        perm_blocks.append(perms)
        code_blocks.append(_multigraph_codes(perms).astype(np.int8))
    codes = np.concatenate(code_blocks)
    perms = np.concatenate(perm_blocks)
    # first occurrence in lexicographic enumeration = lexicographically
    # smallest class member
    _, first, counts = np.unique(codes, axis=0, return_index=True, return_counts=True)
    order = np.lexsort(perms[first].T[::-1])
    reps = tuple(Permutation(tuple(int(x) for x in perms[i])) for i in first[order])
    sizes = tuple(int(c) for c in counts[order])
    assert sum(sizes) == math.factorial(n)
    return ClassRepresentatives(reps, sizes)
