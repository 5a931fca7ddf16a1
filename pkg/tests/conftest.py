import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("deterministic", derandomize=True, deadline=None)
settings.load_profile("deterministic")

from contactcheck.lie import build_algebra, grade, killing
from contactcheck.rootsystem import builtin_root_system

_BUNDLES = {}


@pytest.fixture(scope="session")
def algebra_bundle():
    """Cached (root system, structure constants, killing, grading) per type."""

    def get(name):
        if name not in _BUNDLES:
            rs = builtin_root_system(name)
            sc = build_algebra(rs)
            kd = killing(sc)
            gd = grade(sc, kd)
            _BUNDLES[name] = (rs, sc, kd, gd)
        return _BUNDLES[name]

    return get
