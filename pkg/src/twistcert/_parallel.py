"""Worker-count policy shared by the subset sweeps and the verifier."""

from __future__ import annotations

import os


def worker_count() -> int:
    """Workers for bitmask-partitioned sweeps.  ``TWISTCERT_WORKERS``
    overrides; the default is the machine's available parallelism."""
    env = os.environ.get("TWISTCERT_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1
