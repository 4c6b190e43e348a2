"""Verification harness: checks exported link bundles against the
hyperbolic-geometry engine (SnapPy) for volumes and complement isometries."""

from fslverify.report import LinkRecord, VerificationReport
from fslverify.verify import EngineUnavailable, reproduce_table_links, verify_bundle

__all__ = [
    "EngineUnavailable",
    "LinkRecord",
    "VerificationReport",
    "reproduce_table_links",
    "verify_bundle",
]
