"""Shared fixtures: generated pattern bundles are cached per session."""
import pytest

from hexpatterns.patterns import generate_limit_pattern, generate_zalpha

_CACHE = {}


@pytest.fixture(scope="session")
def make_bundle():
    """Factory returning cached pattern bundles.

    make_bundle("zalpha", alpha, n, theta=None) or
    make_bundle("z32log"|"logz3", n).
    """
    def get(kind, *args, **kwargs):
        key = (kind, args, tuple(sorted(kwargs.items())))
        if key not in _CACHE:
            if kind == "zalpha":
                _CACHE[key] = generate_zalpha(*args, **kwargs)
            else:
                _CACHE[key] = generate_limit_pattern(kind, *args, **kwargs)
        return _CACHE[key]
    return get


@pytest.fixture(scope="session")
def bundle_03(make_bundle):
    """The alpha = 0.3, n = 10 workhorse pattern."""
    return make_bundle("zalpha", 0.3, 10)
