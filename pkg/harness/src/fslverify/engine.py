"""Adapter around the hyperbolic-geometry engine (SnapPy).

Everything engine-specific funnels through this module so the rest of the
harness can be exercised with a stub in tests, and so a missing engine
degrades into one clear error.
"""

from __future__ import annotations

from typing import Optional

#: volume agreement tolerance for all checks
VOLUME_TOL = 1e-6

#: solution types the engine reports for (likely) hyperbolic structures
_HYPERBOLIC_SOLUTIONS = (
    "all tetrahedra positively oriented",
    "contains negatively oriented tetrahedra",
)


class EngineUnavailable(RuntimeError):
    """The hyperbolic-geometry engine is not importable in this environment."""


class SnapPyEngine:
    """Thin wrapper over snappy.Manifold / snappy.Link."""

    def __init__(self):
        try:
            import snappy
        except Exception as exc:  # pragma: no cover - environment dependent
            raise EngineUnavailable(
                "SnapPy is not installed; install the harness with the "
                "[engine] extra to run geometric verification"
            ) from exc
        self.snappy = snappy

    @property
    def version(self) -> str:
        return f"SnapPy {getattr(self.snappy, '__version__', 'unknown')}"

    def complement_from_pd(self, pd_kt: list, fillings: Optional[list] = None):
        """Manifold of the link exterior; 0-fill the cusps in ``fillings``."""
        link = self.snappy.Link([tuple(t) for t in pd_kt])
        mfd = link.exterior()
        if fillings:
            for cusp in fillings:
                mfd.dehn_fill((0, 1), cusp)
        return mfd

    def census_manifold(self, name: str):
        return self.snappy.Manifold(name)

    def volume_and_hyperbolicity(self, mfd) -> tuple:
        sol = mfd.solution_type()
        vol = float(mfd.volume())
        return vol, sol in _HYPERBOLIC_SOLUTIONS

    def is_isometric(self, m1, m2) -> bool:
        try:
            return bool(m1.is_isometric_to(m2))
        except RuntimeError:
            # the engine could not decide; retriangulate and retry once
            try:
                m1b = m1.filled_triangulation() if False else m1.copy()
                m1b.randomize()
                return bool(m1b.is_isometric_to(m2))
            except RuntimeError:
                return False


def load_engine() -> SnapPyEngine:
    return SnapPyEngine()
