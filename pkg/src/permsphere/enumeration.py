"""Exhaustive enumeration over S_m and the split-type counting pipeline.

Two independent counting paths live here:

* the brute-force oracle, which sweeps all of S_n and tallies distances,
* the pipeline, which combines connected-part counts through the
  composition convolution and weighs each (m, q) cell by the guarded
  binomial [n+q-m choose q].

Cross-validating the two is the whole point of the package, so nothing in
the pipeline reuses the oracle's sweep of S_n (the pipeline only ever
enumerates *connected* permutations, and only up to degree n + 1).
"""
from __future__ import annotations

import itertools
import logging
import math
import multiprocessing
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .metrics import MetricId, raw_distance_fn
from .perm import Permutation, guarded_binom

log = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 12
# Sweeps above this degree are legal (up to the cap) but get a loud warning.
_COMFORT_DEGREE = 10


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        log.warning("ignoring non-integer %s=%r", name, raw)
        return default


_max_degree = _env_int("MAX_ENUM_DEGREE", DEFAULT_MAX_DEGREE)
_threads = _env_int("THREADS", 1)


class EnumerationCapError(ValueError):
    """Raised when a request would enumerate a symmetric group above the cap."""


def set_max_degree(cap: int) -> None:
    global _max_degree
    if cap < 1:
        raise ValueError("cap must be positive")
    _max_degree = cap


def get_max_degree() -> int:
    return _max_degree


def set_threads(n: int) -> None:
    global _threads
    if n < 1:
        raise ValueError("thread count must be positive")
    _threads = n


def get_threads() -> int:
    return _threads


def _check_cap(m: int) -> None:
    if m > _max_degree:
        raise EnumerationCapError(
            f"enumerating S_{m} exceeds the configured cap of {_max_degree}"
        )
    if m > _COMFORT_DEGREE:
        log.warning("enumerating S_%d (%d permutations); this may take a while", m, math.factorial(m))


# -- deterministic iteration over S_m -------------------------------------


def _unrank(m: int, index: int) -> list[int]:
    """The ``index``-th word of S_m in lexicographic order (factorial base)."""
    available = list(range(1, m + 1))
    word = []
    for pos in range(m, 0, -1):
        f = math.factorial(pos - 1)
        d, index = divmod(index, f)
        word.append(available.pop(d))
    return word


def _advance(word: list[int]) -> bool:
    """In-place lexicographic successor; False at the last word."""
    n = len(word)
    i = n - 2
    while i >= 0 and word[i] >= word[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while word[j] <= word[i]:
        j -= 1
    word[i], word[j] = word[j], word[i]
    word[i + 1 :] = reversed(word[i + 1 :])
    return True


def iterate_group(m: int, *, start: int = 0, stop: int | None = None) -> Iterator[Permutation]:
    """Yield the permutations of S_m in lexicographic order.

    ``start``/``stop`` select a half-open index range so callers can
    partition the group into disjoint chunks for parallel consumption;
    chunked iteration visits exactly the same permutations in the same
    order as one full pass.
    """
    if m < 1:
        raise ValueError("m must be positive")
    _check_cap(m)
    total = math.factorial(m)
    if stop is None:
        stop = total
    if not (0 <= start <= stop <= total):
        raise ValueError(f"invalid index range [{start}, {stop}) for S_{m} with {total} elements")
    if start == stop:
        return
    word = _unrank(m, start)
    for _ in range(stop - start):
        yield Permutation(tuple(word))
        if not _advance(word):
            break


# -- histogram sweeps (cached) --------------------------------------------

_group_hist_cache: dict[tuple[MetricId, int], dict[int, int]] = {}
_conn_hist_cache: dict[tuple[MetricId, int], dict[int, int]] = {}


def _sweep_group(metric: MetricId, n: int) -> dict[int, int]:
    dist = raw_distance_fn(metric)
    hist: dict[int, int] = {}
    for w in itertools.permutations(range(1, n + 1)):
        d = dist(w)
        hist[d] = hist.get(d, 0) + 1
    return hist


def _sweep_connected_chunk(args: tuple[MetricId, int, int]) -> dict[int, int]:
    """Histogram over connected words of S_m starting with a fixed value.

    Any word starting with 1 has a cut at position 1 (for m >= 2), so the
    caller only dispatches first values 2..m.
    """
    metric, m, first = args
    dist = raw_distance_fn(metric)
    hist: dict[int, int] = {}
    rest = [v for v in range(1, m + 1) if v != first]
    last = m - 1
    for tail in itertools.permutations(rest):
        w = (first,) + tail
        running_max = first
        connected = True
        for i in range(1, last):
            v = w[i]
            if v > running_max:
                running_max = v
            if running_max == i + 1:
                connected = False
                break
        if connected:
            d = dist(w)
            hist[d] = hist.get(d, 0) + 1
    return hist


def group_histogram(metric: MetricId, n: int) -> dict[int, int]:
    """Distance histogram of all of S_n (the oracle's sweep)."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_cap(n)
    key = (metric, n)
    if key not in _group_hist_cache:
        _group_hist_cache[key] = _sweep_group(metric, n)
    return _group_hist_cache[key]


def connected_histogram(metric: MetricId, m: int) -> dict[int, int]:
    """Distance histogram of the connected permutations of S_m.

    Degree-1 words never occur as split-type parts, so m < 2 yields an
    empty histogram.
    """
    if m < 2:
        return {}
    _check_cap(m)
    key = (metric, m)
    if key not in _conn_hist_cache:
        chunks = [(metric, m, first) for first in range(2, m + 1)]
        if _threads > 1 and m >= 9:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(min(_threads, len(chunks))) as pool:
                partials = pool.map(_sweep_connected_chunk, chunks)
        else:
            partials = [_sweep_connected_chunk(c) for c in chunks]
        hist: dict[int, int] = {}
        for part in partials:
            for d, c in part.items():
                hist[d] = hist.get(d, 0) + c
        _conn_hist_cache[key] = hist
    return _conn_hist_cache[key]


# -- oracle ---------------------------------------------------------------


def oracle_sphere(metric: MetricId, n: int, radius: int) -> int:
    """Exact #{u in S_n : D(u) = radius} by exhaustive enumeration."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return group_histogram(metric, n).get(radius, 0)


def oracle_ball(metric: MetricId, n: int, radius: int) -> int:
    """Exact #{u in S_n : D(u) <= radius} by exhaustive enumeration."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return sum(c for d, c in group_histogram(metric, n).items() if d <= radius)


# -- the beta/alpha tables ------------------------------------------------


def radius_step(metric: MetricId) -> int:
    """Gap between attainable sphere radii: 2 for l1 (parity), 1 otherwise."""
    return 2 if metric.kind == "l1" else 1


def attainable_radii(metric: MetricId, max_radius: int) -> range:
    """The nonzero radii at which spheres can be nonempty, up to max_radius."""
    step = radius_step(metric)
    return range(step, max_radius + 1, step)


def connected_beta(metric: MetricId, radius: int, m: int) -> int:
    """Number of connected split-type parts of degree exactly m at this radius."""
    return connected_histogram(metric, m).get(radius, 0)


class BetaTable:
    """Memoized split-type counts beta_D(R, m, q) for an additive metric.

    q >= 2 cells are assembled from the connected base by folding one part
    at a time over the (radius, size) grid; this is the composition
    convolution without ever materializing compositions.
    """

    def __init__(self, metric: MetricId):
        if not metric.additive:
            raise ValueError(
                f"beta tables require an additive metric (l1 or kendall), got {metric.name}"
            )
        self.metric = metric
        self._memo: dict[tuple[int, int, int], int] = {}

    @property
    def connected_cap(self) -> int:
        """Largest part degree whose connected counts have been enumerated."""
        sizes = [m for (mt, m) in _conn_hist_cache if mt == self.metric]
        return max(sizes, default=0)

    @property
    def entries(self) -> dict[tuple[int, int, int], int]:
        return dict(self._memo)

    def beta(self, radius: int, m: int, q: int) -> int:
        step = radius_step(self.metric)
        if q < 1 or m < 2 * q or radius < q * step:
            return 0
        if q == 1:
            value = connected_beta(self.metric, radius, m)
            self._memo[(radius, m, 1)] = value
            return value
        key = (radius, m, q)
        if key not in self._memo:
            total = 0
            min_rest = (q - 1) * step
            for m1 in range(2, m - 2 * (q - 1) + 1):
                for r1, count in connected_histogram(self.metric, m1).items():
                    if r1 + min_rest <= radius:
                        rest = self.beta(radius - r1, m - m1, q - 1)
                        if rest:
                            total += count * rest
            self._memo[key] = total
        return self._memo[key]

    def alpha(self, radius: int, m: int, q: int) -> int:
        """Split types with distance at most ``radius``: beta summed over attainable radii."""
        return sum(self.beta(r, m, q) for r in attainable_radii(self.metric, radius))


_tables: dict[MetricId, BetaTable] = {}


def beta_table(metric: MetricId) -> BetaTable:
    if metric not in _tables:
        _tables[metric] = BetaTable(metric)
    return _tables[metric]


def beta(metric: MetricId, radius: int, m: int, q: int) -> int:
    return beta_table(metric).beta(radius, m, q)


def alpha(metric: MetricId, radius: int, m: int, q: int) -> int:
    return beta_table(metric).alpha(radius, m, q)


# -- the polynomial-growth pipeline ---------------------------------------


def size_bound(metric: MetricId, radius: int) -> int:
    """N(R): a bound with m(sigma) - q(sigma) <= N(R) whenever D(sigma) <= R.

    For l1 this is R/2; for Kendall, R itself (via l1(u) <= 2 I(u)).
    """
    if metric.kind == "l1":
        return radius // 2
    if metric.kind == "kendall":
        return radius
    raise ValueError(f"no split-type size bound available for {metric.name}")


def pipeline_sphere(metric: MetricId, n: int, radius: int) -> int:
    """Sphere cardinality via the split-type sum, exact for every n >= 1.

    Cells with m - q > n are skipped: their guarded binomial is zero, and
    skipping them keeps the connected base within S_{n+1}.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius == 0:
        return 1
    if metric.kind == "l1" and radius % 2 == 1:
        return 0
    bound = size_bound(metric, radius)
    table = beta_table(metric)
    total = 0
    for q in range(1, bound + 1):
        for m in range(2 * q, q + bound + 1):
            if m - q > n:
                break
            b = table.beta(radius, m, q)
            if b:
                total += b * guarded_binom(n + q - m, q)
    return total


def pipeline_ball(metric: MetricId, n: int, radius: int) -> int:
    """Ball cardinality: the identity plus all attainable smaller spheres."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return 1 + sum(pipeline_sphere(metric, n, r) for r in attainable_radii(metric, radius))


# -- reports --------------------------------------------------------------


@dataclass(frozen=True)
class CountReport:
    """A pipeline count paired with an optional oracle count and verdict."""

    metric: str
    n: int
    radius: int
    pipeline_count: int | None
    oracle_count: int | None

    @property
    def match(self) -> bool | None:
        if self.pipeline_count is None or self.oracle_count is None:
            return None
        return self.pipeline_count == self.oracle_count

    def as_dict(self) -> dict:
        return {
            "metric": self.metric,
            "n": self.n,
            "radius": self.radius,
            "pipeline": None if self.pipeline_count is None else str(self.pipeline_count),
            "oracle": None if self.oracle_count is None else str(self.oracle_count),
            "match": self.match,
        }


def count_report(
    metric: MetricId, n: int, radius: int, *, ball: bool = False, method: str = "pipeline"
) -> CountReport:
    """Run the requested counting method(s) and package the result."""
    if method not in ("pipeline", "oracle", "both"):
        raise ValueError(f"unknown method {method!r}")
    pipeline = oracle = None
    if method in ("pipeline", "both"):
        fn = pipeline_ball if ball else pipeline_sphere
        pipeline = fn(metric, n, radius)
    if method in ("oracle", "both"):
        fn = oracle_ball if ball else oracle_sphere
        oracle = fn(metric, n, radius)
    return CountReport(metric.name, n, radius, pipeline, oracle)
