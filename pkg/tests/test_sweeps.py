"""Sweep helpers: pool behaviour and result merging."""

from __future__ import annotations

from twistcert import sweeps
from twistcert._parallel import worker_count


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("TWISTCERT_WORKERS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("TWISTCERT_WORKERS", "junk")
    assert worker_count() >= 1
    monkeypatch.delenv("TWISTCERT_WORKERS")
    assert worker_count() >= 1


def test_pool_and_sequential_agree():
    seq = sweeps.sweep_size_soundness(2, 5, workers=1)
    par = sweeps.sweep_size_soundness(2, 5, workers=2)
    assert seq.checked == par.checked == 420
    assert seq.violations == par.violations == []


def test_sweep_results_merge():
    a = sweeps.SweepResult("x", checked=2, violations=["v1"])
    b = sweeps.SweepResult("x", checked=3, violations=["v2"])
    a.merge(b)
    assert a.checked == 5
    assert a.violations == ["v1", "v2"]
    assert not a.passed
