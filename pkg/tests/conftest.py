import pytest


@pytest.fixture
def acceptance_report(pytestconfig):
    """Print a verdict line past pytest's capture, then enforce it."""
    capman = pytestconfig.pluginmanager.getplugin("capturemanager")

    def _report(name, ok, detail=""):
        tail = f" ({detail})" if detail else ""
        line = f"[ACCEPTANCE] {name}: {'PASS' if ok else 'FAIL'}{tail}"
        if capman is not None:
            with capman.global_and_fixture_disabled():
                print(line, flush=True)
        else:
            print(line, flush=True)
        assert ok, f"{name} failed: {detail}"

    return _report
