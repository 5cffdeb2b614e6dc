"""Pytest fixtures for ip_summarizer tests."""

from __future__ import annotations

import os
import sys

import pytest
from hypothesis import settings

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from ip_summarizer.ipcore import parse_address
from ip_summarizer.patricia import PatriciaTree
from ip_summarizer.utils import clustered_registries, write_testbed

# Tree builds for a few hundred addresses can exceed hypothesis' default deadline.
settings.register_profile("ip_summarizer", deadline=None, max_examples=150)
settings.load_profile("ip_summarizer")

FOUR_HOSTS_TEXT = ["10.10.0.1", "10.10.0.2", "10.10.0.3", "10.10.0.4"]
TESTBED_SEED = 2010


@pytest.fixture
def four_hosts_addresses():
    """The four-host example set, in its original insertion order."""
    return [parse_address(t) for t in FOUR_HOSTS_TEXT]


@pytest.fixture
def four_hosts_tree(four_hosts_addresses):
    return PatriciaTree.build(four_hosts_addresses)


@pytest.fixture
def write_addresses(tmp_path):
    """Return a helper writing address lines to ``tmp_path/<name>.txt``."""
    def _write(name: str, lines: list[str]) -> str:
        path = tmp_path / f"{name}.txt"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def four_hosts_file(write_addresses):
    return write_addresses("four_hosts", FOUR_HOSTS_TEXT)


@pytest.fixture(scope="session")
def clustered_testbed():
    """Nine clustered registries, one dedicated /16 each."""
    return clustered_registries(TESTBED_SEED)


@pytest.fixture
def testbed_manifest(tmp_path, clustered_testbed):
    return write_testbed(tmp_path / "testbed", clustered_testbed,
                         "registries.manifest")
