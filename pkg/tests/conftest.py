import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, "tests"))

# criterion number -> (ok, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(params=["python", "compiled"])
def kernel_module(request):
    """Both kernel implementations (the compiled one is skipped when not built)."""
    if request.param == "python":
        from corfun import _pykernels
        return _pykernels
    try:
        from corfun import _ckernels
    except ImportError:
        pytest.skip("compiled kernels not built")
    return _ckernels
