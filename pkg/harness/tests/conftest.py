import json
import shutil
import subprocess
from pathlib import Path

import pytest


def _have_engine() -> bool:
    try:
        import snappy  # noqa: F401

        return True
    except Exception:
        return False


HAVE_ENGINE = _have_engine()

needs_engine = pytest.mark.skipif(
    not HAVE_ENGINE,
    reason="EngineUnavailable: SnapPy is not installed in this environment",
)


@pytest.fixture(scope="session")
def bundle_dir(tmp_path_factory) -> Path:
    """Bundles produced through the generator CLI (the external interface)."""
    out = tmp_path_factory.mktemp("bundles")
    exe = shutil.which("fslinks")
    if exe is None:
        pytest.skip("fslinks CLI not on PATH; cannot produce bundles")
    subprocess.run(
        [exe, "export", "verify", "--families", "L,J,K", "--k-max", "3",
         "--bk-max", "4", "--braid", "B2: 1 -1 -1", "--table-links",
         "--out-dir", str(out)],
        check=True, capture_output=True,
    )
    return out


class StubManifold:
    def __init__(self, name, volume, hyperbolic=True, iso_class=None):
        self.name = name
        self._volume = volume
        self._hyp = hyperbolic
        self.iso_class = iso_class if iso_class is not None else name

    def solution_type(self):
        return ("all tetrahedra positively oriented" if self._hyp
                else "not attempted")

    def volume(self):
        return self._volume

    def is_isometric_to(self, other):
        return self.iso_class == other.iso_class


class StubEngine:
    """Configurable fake of the geometry engine for unit tests."""

    version = "stub-engine 0"

    def __init__(self, volume_by_size=None, census=None):
        self.volume_by_size = volume_by_size or {}
        self.census = census or {}
        self.filled = []

    def complement_from_pd(self, pd_kt, fillings=None):
        if fillings:
            self.filled.append(tuple(fillings))
        size = len(pd_kt)
        vol, hyp, iso = self.volume_by_size.get(size, (1.0, True, None))
        return StubManifold(f"pd{size}", vol, hyp, iso)

    def census_manifold(self, name):
        if name not in self.census:
            raise ValueError(f"{name} not in stub census")
        vol, iso = self.census[name]
        return StubManifold(name, vol, True, iso)

    def volume_and_hyperbolicity(self, mfd):
        return mfd.volume(), mfd.solution_type().startswith("all tetrahedra")

    def is_isometric(self, m1, m2):
        return m1.is_isometric_to(m2)


@pytest.fixture
def stub_engine():
    return StubEngine
