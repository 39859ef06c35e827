"""Acceptance suite: every criterion must pass at its stated scope.

Runs the shared registry from roachkit.acceptance and prints one line per
criterion (visible with ``pytest -s`` or on failure).
"""

import pytest

from roachkit import acceptance


@pytest.mark.parametrize("name,fn", acceptance.CRITERIA, ids=[n for n, _ in acceptance.CRITERIA])
def test_criterion(name, fn):
    passed, detail = fn()
    print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
    assert passed, f"{name}: {detail}"


def test_selftest_detects_injected_search_bug(monkeypatch):
    """Sanity check that the cross-check actually bites: silence the
    morphism search and the frame-formula criterion must fail."""
    from roachkit import morphisms

    monkeypatch.setattr(morphisms, "is_permissible", lambda *a, **k: None)
    passed, detail = acceptance.check_fine_jankov()
    assert not passed
