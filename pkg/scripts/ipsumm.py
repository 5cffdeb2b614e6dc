#!/usr/bin/env python3
"""Run the ip_summarizer command line from a source checkout.

Usage:
    python scripts/ipsumm.py summarize hosts.txt --granularity 0
    python scripts/ipsumm.py simulate --manifest testbed/registries.manifest
    python scripts/ipsumm.py tree hosts.txt
"""

from __future__ import annotations

import os
import sys

# Add parent dir to path so ip_summarizer is importable
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from ip_summarizer.cli import main

if __name__ == "__main__":
    sys.exit(main())
