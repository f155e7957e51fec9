import os
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large]
)
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=50)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion gate")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _ACCEPTANCE[number] = (title, status, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status, duration = _ACCEPTANCE[number]
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} ({duration:.1f}s)")


# ------------------------------------------------------------ shared data


@pytest.fixture(scope="session")
def small_corpus():
    from payner.corpus import GeneratorConfig, generate_corpus

    return generate_corpus(GeneratorConfig(count=300, seed=11))


@pytest.fixture(scope="session")
def small_model(small_corpus):
    """Quick CRF on 250 messages; enough for behavioral checks."""
    from payner.crf import TrainConfig, train

    return train(small_corpus[:250], None, None, TrainConfig(max_iterations=40))


@pytest.fixture(scope="session")
def e2e_splits():
    """Seed-42 corpus cut into 1000 / 200 / 200 messages, stratified by format."""
    from payner.corpus import GeneratorConfig, generate_corpus, split_corpus

    corpus = generate_corpus(GeneratorConfig(count=1400, seed=42))
    return split_corpus(corpus, (5 / 7, 1 / 7, 1 / 7), seed=42)


@pytest.fixture(scope="session")
def e2e_training(e2e_splits):
    """Default-config CRF on the 1000-message train split, with its wall time in seconds."""
    from payner.crf import TrainConfig, train

    train_part, dev_part, _ = e2e_splits
    t0 = time.perf_counter()
    model = train(train_part, dev_part, None, TrainConfig(seed=42))
    return model, time.perf_counter() - t0


@pytest.fixture(scope="session")
def e2e_model(e2e_training):
    return e2e_training[0]
