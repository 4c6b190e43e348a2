"""Command line for the verification harness.

Exit code reflects the report summary: 0 when every record is ok.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from fslverify.engine import EngineUnavailable
from fslverify.verify import reproduce_table_links, verify_bundle


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="verify exported link bundles with the hyperbolic engine"
    )
    parser.add_argument("path", type=Path,
                        help="bundle file or directory of bundles")
    parser.add_argument("--table-links", action="store_true",
                        help="run the census-identification table check")
    parser.add_argument("--json", type=Path, default=None,
                        help="also write the report as JSON here")
    args = parser.parse_args(argv)
    try:
        if args.table_links:
            report = reproduce_table_links(args.path)
        else:
            report = verify_bundle(args.path)
    except EngineUnavailable as exc:
        print(f"engine unavailable: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.to_text())
    if args.json:
        args.json.write_text(report.to_json())
    return 0 if report.summary_pass else 1


if __name__ == "__main__":
    raise SystemExit(main())
