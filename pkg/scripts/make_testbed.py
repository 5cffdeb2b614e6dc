#!/usr/bin/env python3
"""Write a synthetic nine-registry test bed for ``ipsumm simulate``.

Usage:
    python scripts/make_testbed.py [--out testbed] [--seed 2010]
    python scripts/ipsumm.py simulate --manifest testbed/registries.manifest --sweep
"""

from __future__ import annotations

import argparse
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from ip_summarizer.constants import MANIFEST_FILE_NAME, TESTBED_REGISTRY_NAMES
from ip_summarizer.utils import clustered_registries, write_testbed


def make_testbed(out_dir: str, seed: int, registries: int) -> str:
    """Generate the registries, write them, and print a per-registry line."""
    names = TESTBED_REGISTRY_NAMES[:registries]
    generated = clustered_registries(seed, names=names)
    manifest = write_testbed(out_dir, generated, MANIFEST_FILE_NAME)
    for registry in generated:
        print(f"  {registry.name:<10} {registry.size:5d} addresses")
    print(f"Total: {sum(r.size for r in generated)} addresses")
    print(f"Manifest: {manifest}")
    return str(manifest)


def main():
    parser = argparse.ArgumentParser(
        description="Write a synthetic clustered registry test bed"
    )
    parser.add_argument("--out", default="testbed",
                        help="Directory for the address files and manifest")
    parser.add_argument("--seed", type=int, default=2010,
                        help="Random seed (same seed, same test bed)")
    parser.add_argument("--registries", type=int,
                        choices=range(1, len(TESTBED_REGISTRY_NAMES) + 1),
                        default=len(TESTBED_REGISTRY_NAMES),
                        metavar=f"1..{len(TESTBED_REGISTRY_NAMES)}",
                        help="Number of registries to generate")
    args = parser.parse_args()
    make_testbed(args.out, args.seed, args.registries)


if __name__ == "__main__":
    main()
