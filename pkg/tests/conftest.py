"""Shared fixtures. The two 200-trial desk-scale sweeps are expensive, so
they run once per session and are reused by the harness and acceptance tests."""

import time

import pytest

from irskron.config import default_config
from irskron.experiments import run_adr_vs_k, run_fixed_budget


@pytest.fixture(scope="session")
def adr_sweep_desk():
    """(csv_text, seconds) for the default desk-scale rate-vs-K experiment."""
    cfg = default_config("adr-vs-k")
    start = time.perf_counter()
    csv_text = run_adr_vs_k(cfg)
    return csv_text, time.perf_counter() - start


@pytest.fixture(scope="session")
def fixed_budget_desk():
    """(csv_text, seconds) for the default desk-scale fixed-budget experiment."""
    cfg = default_config("fixed-budget")
    start = time.perf_counter()
    csv_text = run_fixed_budget(cfg)
    return csv_text, time.perf_counter() - start


def parse_rows(csv_text):
    import csv
    import io

    return list(csv.DictReader(io.StringIO(csv_text)))
