from __future__ import annotations

import importlib.util
from pathlib import Path

import pytest

from hilbsing import kernels

BENCH = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
def test_benchmark_smoke(capsys):
    spec = importlib.util.spec_from_file_location("bench_kernels", BENCH)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["--pairs", "20", "--colength", "8", "--repeat", "1"]) == 0
    assert "tangent pieces" in capsys.readouterr().out
