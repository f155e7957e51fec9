"""Latency and throughput measurement for taggers.

Timing uses ``time.perf_counter``. Peak memory is the process's maximum
resident set size as reported by ``getrusage``; it covers everything the
process has touched so far, so it is approximate.
"""

from __future__ import annotations

import json
import resource
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .taggers import MessageLike, Tagger

SPOT_CHECK = 10


class BenchmarkError(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchReport:
    mode: str
    tagger: str
    message_count: int
    wall_time_s: float
    throughput_msgs_per_s: float
    latency_mean_ms: float
    latency_p50_ms: float
    latency_p95_ms: float
    latency_p99_ms: float
    batch_size: int
    workers: int
    peak_rss_bytes: int
    memory_note: str = "approximate (process peak RSS)"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        lat = "batch" if self.mode == "throughput" else "msg"
        return (
            f"{self.tagger} {self.mode}: {self.message_count} msgs in {self.wall_time_s:.2f}s, "
            f"{self.throughput_msgs_per_s:.1f} msg/s, {lat} latency p50 {self.latency_p50_ms:.2f} ms "
            f"p95 {self.latency_p95_ms:.2f} ms p99 {self.latency_p99_ms:.2f} ms, "
            f"batch {self.batch_size}, workers {self.workers}, peak RSS ~{self.peak_rss_bytes / 2**20:.0f} MiB"
        )


def peak_rss_bytes() -> int:
    rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    return int(rss if sys.platform == "darwin" else rss * 1024)


def _stats_ms(seconds: Sequence[float]) -> tuple[float, float, float, float]:
    ms = np.asarray(seconds) * 1000.0
    p50, p95, p99 = np.percentile(ms, [50, 95, 99])
    return float(ms.mean()), float(p50), float(p95), float(p99)


def _name(tagger) -> str:
    return getattr(tagger, "name", type(tagger).__name__)


def measure_latency(tagger: Tagger, messages: Sequence[MessageLike], warmup: int = 10, reps: int = 1) -> BenchReport:
    """Time ``tagger.tag`` on each message individually.

    Every timed output is compared with a reference produced beforehand by
    ``tag_batch``, so a tagger that skips work is caught.
    """
    if not messages:
        raise ValueError("measure_latency needs at least one message")
    if warmup < 0:
        raise ValueError("warmup must be >= 0")
    if reps < 1:
        raise ValueError("reps must be >= 1")
    reference = tagger.tag_batch(list(messages))
    for k in range(warmup):
        tagger.tag(messages[k % len(messages)])
    times = []
    start = time.perf_counter()
    for _ in range(reps):
        for m, ref in zip(messages, reference):
            t0 = time.perf_counter()
            out = tagger.tag(m)
            times.append(time.perf_counter() - t0)
            if out != ref:
                raise BenchmarkError(f"tagger output for {m.id!r} differs from the reference run")
    wall = time.perf_counter() - start
    mean, p50, p95, p99 = _stats_ms(times)
    return BenchReport("latency", _name(tagger), len(times), wall, len(times) / wall,
                       mean, p50, p95, p99, 1, 1, peak_rss_bytes())  # fmt: skip


def measure_throughput(
    tagger: Tagger,
    messages: Sequence[MessageLike],
    batch_size: int = 8,
    workers: int = 1,
    duration: float = 10.0,
) -> BenchReport:
    """Stream batches through ``workers`` threads for ``duration`` seconds.

    Batches are cut from the corpus in order, cycling. Latency fields hold
    per-batch latency. Throughput is messages completed over wall time.
    """
    if not messages:
        raise ValueError("measure_throughput needs at least one message")
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if not duration > 0:
        raise ValueError("duration must be positive")
    n = len(messages)
    check = list(range(min(SPOT_CHECK, n)))
    reference = {i: tagger.tag(messages[i]) for i in check}

    lock = threading.Lock()
    cursor = [0]
    seen: dict[int, list] = {}

    def worker() -> tuple[int, list[float]]:
        done, lat = 0, []
        while time.perf_counter() < deadline:
            with lock:
                first = cursor[0]
                cursor[0] += batch_size
            idx = [(first + j) % n for j in range(batch_size)]
            t0 = time.perf_counter()
            outs = tagger.tag_batch([messages[i] for i in idx])
            lat.append(time.perf_counter() - t0)
            done += len(idx)
            for i, out in zip(idx, outs):
                if i < len(check) and i not in seen:
                    seen[i] = out
        return done, lat

    start = time.perf_counter()
    deadline = start + duration
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = [f.result() for f in [pool.submit(worker) for _ in range(workers)]]
    wall = time.perf_counter() - start

    for i, out in seen.items():
        if out != reference[i]:
            raise BenchmarkError(f"benchmark output for {messages[i].id!r} differs from the reference")
    for i in check:
        if tagger.tag(messages[i]) != reference[i]:
            raise BenchmarkError(f"post-run output for {messages[i].id!r} differs from the reference")

    total = sum(d for d, _ in results)
    lat = [x for _, ls in results for x in ls]
    mean, p50, p95, p99 = _stats_ms(lat)
    return BenchReport("throughput", _name(tagger), total, wall, total / wall,
                       mean, p50, p95, p99, batch_size, workers, peak_rss_bytes())  # fmt: skip
