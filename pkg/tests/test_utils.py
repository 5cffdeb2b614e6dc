"""Tests for address files, manifests and the synthetic test bed."""

from __future__ import annotations

import pytest

from ip_summarizer.constants import TESTBED_REGISTRY_NAMES
from ip_summarizer.heuristic import ConfigurationError
from ip_summarizer.ipcore import Prefix, parse_address
from ip_summarizer.utils import (
    InputFileError,
    clustered_registries,
    read_address_file,
    read_manifest,
    read_registry_files,
    write_address_file,
    write_manifest,
    write_testbed,
)


# ── Address files ────────────────────────────────────────────────────


def test_read_skips_comments_and_blanks(write_addresses):
    path = write_addresses("hosts", ["# header", "", "10.0.0.1", "  10.0.0.2  ",
                                     "10.0.0.1"])
    assert [str(a) for a in read_address_file(path)] == \
        ["10.0.0.1", "10.0.0.2", "10.0.0.1"]


def test_read_reports_line_number(write_addresses):
    path = write_addresses("bad", ["10.0.0.1", "10.0.0.300"])
    with pytest.raises(InputFileError) as excinfo:
        read_address_file(path)
    assert excinfo.value.line == 2
    assert str(excinfo.value).startswith(f"{path}:2: ")
    assert "'300'" in str(excinfo.value)


def test_read_missing_file(tmp_path):
    missing = tmp_path / "nope.txt"
    with pytest.raises(InputFileError) as excinfo:
        read_address_file(missing)
    assert excinfo.value.line is None
    assert str(excinfo.value).startswith(f"{missing}: ")


def test_line_numbers_count_newlines_only(tmp_path):
    path = tmp_path / "tabbed.txt"
    path.write_bytes(b"10.10.0.1\r\n10.10.0.2\x0b\n10.10.0.256\n")
    with pytest.raises(InputFileError) as excinfo:
        read_address_file(path)
    assert excinfo.value.line == 3


def test_read_binary_file(tmp_path):
    path = tmp_path / "blob.txt"
    path.write_bytes(b"\xff\xfe\x00")
    with pytest.raises(InputFileError):
        read_address_file(path)


def test_write_then_read(tmp_path):
    addresses = [parse_address("192.0.2.1"), parse_address("10.0.0.1")]
    path = write_address_file(tmp_path / "out.txt", addresses, header="two hosts")
    assert path.read_text().splitlines()[0] == "# two hosts"
    assert read_address_file(path) == addresses


# ── Registries and manifests ─────────────────────────────────────────


def test_registry_files_named_by_stem(write_addresses):
    paths = [write_addresses("GARR", ["10.0.0.1"]),
             write_addresses("FCCN", ["10.0.0.2", "10.0.0.2"])]
    registries = read_registry_files(paths)
    assert [(r.name, r.size) for r in registries] == [("GARR", 1), ("FCCN", 1)]


def test_registry_files_reject_duplicate_stems(tmp_path):
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    first = write_address_file(tmp_path / "a" / "net.txt", [])
    second = write_address_file(tmp_path / "b" / "net.txt", [])
    with pytest.raises(ConfigurationError):
        read_registry_files([first, second])


def test_manifest_resolves_relative_paths(tmp_path):
    (tmp_path / "data").mkdir()
    write_address_file(tmp_path / "data" / "one.txt", [parse_address("10.0.0.1")])
    absolute = write_address_file(tmp_path / "two.txt", [parse_address("10.0.0.2")])
    manifest = write_manifest(tmp_path / "data" / "set.manifest",
                              [("One", "one.txt"), ("Two", absolute)])
    registries = read_manifest(manifest)
    assert [r.name for r in registries] == ["One", "Two"]
    assert [sorted(str(a) for a in r.addresses) for r in registries] == \
        [["10.0.0.1"], ["10.0.0.2"]]


@pytest.mark.parametrize("line", ["no separator", "=x.txt", "name="])
def test_manifest_rejects_bad_lines(tmp_path, line):
    manifest = tmp_path / "bad.manifest"
    manifest.write_text(f"# comment\n{line}\n")
    with pytest.raises(InputFileError) as excinfo:
        read_manifest(manifest)
    assert excinfo.value.line == 2


def test_manifest_rejects_duplicate_names(tmp_path):
    write_address_file(tmp_path / "x.txt", [])
    manifest = write_manifest(tmp_path / "m", [("A", "x.txt"), ("A", "x.txt")])
    with pytest.raises(ConfigurationError):
        read_manifest(manifest)


def test_testbed_round_trip(tmp_path, clustered_testbed):
    manifest = write_testbed(tmp_path, clustered_testbed, "registries.manifest")
    assert read_manifest(manifest) == clustered_testbed


# ── Synthetic workload ───────────────────────────────────────────────


def test_clustered_registries_are_deterministic():
    assert clustered_registries(5) == clustered_registries(5)
    assert clustered_registries(5) != clustered_registries(6)


def test_clustered_registries_own_their_slash16(clustered_testbed):
    assert [r.name for r in clustered_testbed] == list(TESTBED_REGISTRY_NAMES)
    for index, registry in enumerate(clustered_testbed):
        region = Prefix.truncate((10 << 24) | ((index + 1) << 16), 16)
        assert registry.size > 0
        assert all(a in region for a in registry.addresses)


def test_clustered_registries_limit():
    with pytest.raises(ConfigurationError):
        clustered_registries(1, names=[str(i) for i in range(256)])
