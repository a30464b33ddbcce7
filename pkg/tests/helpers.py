"""Independent brute-force oracles used to cross-check the library.

Everything here is deliberately written from scratch against the raw
definitions (itertools sweeps, prefix checks, BFS in the Cayley graph)
so the tests never validate the library against itself.
"""
from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Iterator


def words(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(1, n + 1))


def word_is_connected(w: tuple[int, ...]) -> bool:
    """No proper prefix of the word closes on an initial segment."""
    for i in range(1, len(w)):
        if max(w[:i]) <= i:
            return False
    return True


def word_l1(w: tuple[int, ...]) -> int:
    return sum(abs(v - i) for i, v in enumerate(w, 1))


def word_inversions(w: tuple[int, ...]) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def word_cycles(w: tuple[int, ...]) -> int:
    """Number of nontrivial cycles."""
    seen = [False] * len(w)
    cycles = 0
    for i in range(len(w)):
        if not seen[i] and w[i] != i + 1:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = w[j] - 1
    return cycles


def word_split_type(w: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """The nontrivial connected slices of the word, each rebased to 1."""
    cuts = [0] + [i for i in range(1, len(w)) if max(w[:i]) <= i] + [len(w)]
    parts = []
    for lo, hi in zip(cuts, cuts[1:]):
        if hi - lo >= 2:
            parts.append(tuple(v - lo for v in w[lo:hi]))
    return tuple(parts)


def concat_words(parts: Iterable[tuple[int, ...]]) -> tuple[int, ...]:
    out: list[int] = []
    for p in parts:
        offset = len(out)
        out.extend(v + offset for v in p)
    return tuple(out)


def compositions(total: int, q: int, minimum: int = 1) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write ``total`` as q parts, each >= minimum."""
    if q == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (q - 1) + 1):
        for rest in compositions(total - first, q - 1, minimum):
            yield (first,) + rest


def direct_split_type_counts(dist, m: int) -> dict[tuple[int, int], int]:
    """Count split types of total degree m by assembling connected parts.

    Returns a map (distance, q) -> count, where the distance is computed on
    the fully assembled word (not summed over parts), so this path does not
    assume additivity.
    """
    connected: dict[int, list[tuple[int, ...]]] = {}
    for size in range(2, m + 1):
        connected[size] = [w for w in words(size) if word_is_connected(w)]
    counts: dict[tuple[int, int], int] = {}
    for q in range(1, m // 2 + 1):
        for sizes in compositions(m, q, minimum=2):
            for parts in itertools.product(*(connected[s] for s in sizes)):
                d = dist(concat_words(parts))
                key = (d, q)
                counts[key] = counts.get(key, 0) + 1
    return counts


def bfs_word_distance(target: tuple[int, ...], moves) -> int:
    """Length of the shortest product of ``moves`` reaching ``target``.

    ``moves`` maps a word to its neighbors; used to validate the Kendall
    (adjacent swaps) and Cayley (arbitrary swaps) formulas on small groups.
    """
    start = tuple(range(1, len(target) + 1))
    if target == start:
        return 0
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        word, depth = queue.popleft()
        for nxt in moves(word):
            if nxt == target:
                return depth + 1
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, depth + 1))
    raise AssertionError("unreachable permutation")


def adjacent_swaps(w: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    for i in range(len(w) - 1):
        yield w[:i] + (w[i + 1], w[i]) + w[i + 2 :]


def all_swaps(w: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            lst = list(w)
            lst[i], lst[j] = lst[j], lst[i]
            yield tuple(lst)
