import json

import pytest

from payner.bench import BenchmarkError, measure_latency, measure_throughput
from payner.taggers import CrfTagger, RuleTagger


@pytest.fixture(scope="module")
def msgs(small_corpus):
    return [m.message for m in small_corpus[:40]]


@pytest.fixture(scope="module")
def crf(small_model):
    return CrfTagger(small_model)


def test_latency_report(crf, msgs):
    r = measure_latency(crf, msgs, warmup=2, reps=2)
    assert r.message_count == 80 and r.mode == "latency"
    assert 0 < r.latency_p50_ms <= r.latency_p95_ms <= r.latency_p99_ms
    assert r.throughput_msgs_per_s == pytest.approx(r.message_count / r.wall_time_s, rel=0.05)
    assert r.peak_rss_bytes > 0
    assert json.loads(r.to_json())["memory_note"].startswith("approximate")
    assert "msg/s" in r.summary()


@pytest.mark.parametrize("kw", [dict(reps=0), dict(warmup=-1)])
def test_latency_argument_errors(crf, msgs, kw):
    with pytest.raises(ValueError):
        measure_latency(crf, msgs, **kw)


def test_empty_input(crf):
    with pytest.raises(ValueError):
        measure_latency(crf, [])
    with pytest.raises(ValueError):
        measure_throughput(crf, [])


@pytest.mark.parametrize("kw", [dict(workers=0), dict(batch_size=0), dict(duration=0)])
def test_throughput_argument_errors(crf, msgs, kw):
    with pytest.raises(ValueError):
        measure_throughput(crf, msgs, **kw)


def test_throughput_self_consistent(crf, msgs):
    r = measure_throughput(crf, msgs, batch_size=4, workers=2, duration=0.5)
    assert r.workers == 2 and r.batch_size == 4
    assert r.message_count % 4 == 0 and r.message_count > 0
    assert r.throughput_msgs_per_s == pytest.approx(r.message_count / r.wall_time_s, rel=0.05)
    assert r.latency_p50_ms <= r.latency_p95_ms <= r.latency_p99_ms


def test_throughput_matches_latency(crf, msgs):
    # timing on a shared machine is noisy; any of five back-to-back pairs may agree
    ratios = []
    for _ in range(5):
        lat = measure_latency(crf, msgs, warmup=5, reps=10)
        thr = measure_throughput(crf, msgs, batch_size=1, workers=1, duration=1.0)
        ratios.append(thr.throughput_msgs_per_s * lat.latency_mean_ms / 1000.0)
        if abs(ratios[-1] - 1) <= 0.2:
            break
    assert abs(ratios[-1] - 1) <= 0.2, ratios


class Flaky:
    """Returns different spans after the reference run."""

    name = "flaky"

    def __init__(self, inner):
        self.inner, self.calls = inner, 0

    def tag(self, m):
        self.calls += 1
        return [] if self.calls > 1 else self.inner.tag(m)

    def tag_batch(self, ms):
        return [self.inner.tag(m) for m in ms]


def test_output_changes_detected(msgs):
    rules = RuleTagger()
    with pytest.raises(BenchmarkError):
        measure_latency(Flaky(rules), msgs[:5], warmup=0)
    with pytest.raises(BenchmarkError):
        measure_throughput(Flaky(rules), msgs[:5], duration=0.2)
