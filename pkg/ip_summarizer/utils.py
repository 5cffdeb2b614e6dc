"""Utility helpers for ip_summarizer: address files, manifests, test beds."""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from pathlib import Path

from ip_summarizer.constants import (
    ADDRESS_FILE_SUFFIX,
    COMMENT_PREFIX,
    MANIFEST_SEPARATOR,
    TESTBED_REGISTRY_NAMES,
)
from ip_summarizer.directory import RegistrySet
from ip_summarizer.heuristic import ConfigurationError
from ip_summarizer.ipcore import (
    AddressParseError,
    Ipv4Address,
    format_address,
    parse_address,
)


class InputFileError(ValueError):
    """Raised for an unreadable input file or a malformed line in one.

    The message reads ``<path>:<line>: <reason>``, or ``<path>: <reason>``
    when the problem is not tied to a line.
    """

    def __init__(self, path: str | Path, reason: str, line: int | None = None):
        location = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{location}: {reason}")
        self.path = str(path)
        self.line = line


def _read_lines(path: str | Path) -> list[tuple[int, str]]:
    """Return ``(line_number, text)`` for every non-blank, non-comment line."""
    try:
        content = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputFileError(path, e.strerror or str(e)) from e
    except UnicodeDecodeError as e:
        raise InputFileError(path, f"not UTF-8 text ({e.reason})") from e
    lines = []
    for number, raw in enumerate(content.split("\n"), start=1):
        text = raw.strip()
        if not text or text.startswith(COMMENT_PREFIX):
            continue
        lines.append((number, text))
    return lines


def read_address_file(path: str | Path) -> list[Ipv4Address]:
    """Read one dotted-quad per line; ``#`` lines and blank lines are skipped.

    Repeated addresses are kept; sets are built downstream.
    """
    addresses = []
    for number, text in _read_lines(path):
        try:
            addresses.append(parse_address(text))
        except AddressParseError as e:
            raise InputFileError(path, str(e), number) from e
    return addresses


def _check_unique(names: Iterable[str]) -> None:
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise ConfigurationError(f"Duplicate registry name: {name}")
        seen.add(name)


def read_registry_files(paths: Sequence[str | Path]) -> list[RegistrySet]:
    """One registry per address file, named after the file stem."""
    names = [Path(p).stem for p in paths]
    _check_unique(names)
    return [RegistrySet.from_addresses(name, read_address_file(p))
            for name, p in zip(names, paths)]


def read_manifest(path: str | Path) -> list[RegistrySet]:
    """Read ``name=path`` lines; relative paths resolve against the manifest.

    Registries come back in manifest order.
    """
    base = Path(path).parent
    entries = []
    for number, text in _read_lines(path):
        name, sep, target = text.partition(MANIFEST_SEPARATOR)
        name, target = name.strip(), target.strip()
        if not sep or not name or not target:
            raise InputFileError(path, f"expected name{MANIFEST_SEPARATOR}path, "
                                       f"got {text!r}", number)
        entries.append((name, base / target))
    _check_unique(name for name, _ in entries)
    return [RegistrySet.from_addresses(name, read_address_file(target))
            for name, target in entries]


def write_address_file(path: str | Path, addresses: Iterable[Ipv4Address],
                       header: str | None = None) -> Path:
    """Write addresses one per line, optionally under a ``#`` header line."""
    path = Path(path)
    lines = [f"{COMMENT_PREFIX} {header}"] if header else []
    lines += [format_address(a) for a in addresses]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_manifest(path: str | Path,
                   entries: Iterable[tuple[str, str | Path]]) -> Path:
    path = Path(path)
    lines = [f"{name}{MANIFEST_SEPARATOR}{target}" for name, target in entries]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_testbed(directory: str | Path, registries: Sequence[RegistrySet],
                  manifest_name: str) -> Path:
    """Write one address file per registry plus a manifest; return the
    manifest path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for registry in registries:
        file_name = f"{registry.name}{ADDRESS_FILE_SUFFIX}"
        write_address_file(directory / file_name, sorted(registry.addresses),
                           header=f"registry {registry.name}")
        entries.append((registry.name, file_name))
    return write_manifest(directory / manifest_name, entries)


# ── Synthetic workload ─────────────────────────────────────────────────

def clustered_registries(seed: int,
                         names: Sequence[str] = TESTBED_REGISTRY_NAMES,
                         first_octet: int = 10,
                         blocks: tuple[int, int] = (2, 4),
                         runs_per_block: tuple[int, int] = (1, 3),
                         run_length: tuple[int, int] = (16, 64),
                         straggler_chance: float = 0.5) -> list[RegistrySet]:
    """Build a deterministic, clustered registry set.

    Registry ``i`` owns ``<first_octet>.<i+1>.0.0/16`` alone. Inside it a
    few /24 blocks each hold contiguous runs of hosts, the way services
    tend to be numbered, plus the odd straggler anywhere in the block.
    """
    if len(names) > 255:
        raise ConfigurationError("At most 255 registries fit under one /8")
    rng = random.Random(seed)
    registries = []
    for index, name in enumerate(names):
        region = (first_octet << 24) | ((index + 1) << 16)
        addresses: set[int] = set()
        for third in rng.sample(range(256), rng.randint(*blocks)):
            block = region | (third << 8)
            for _ in range(rng.randint(*runs_per_block)):
                length = rng.randint(*run_length)
                start = rng.randrange(0, 256 - length + 1, 4)
                addresses.update(block | host
                                 for host in range(start, start + length))
            if rng.random() < straggler_chance:
                addresses.add(block | rng.randrange(256))
        registries.append(RegistrySet.from_addresses(
            name, (Ipv4Address(a) for a in addresses)))
    return registries
