"""Two-level directory simulation.

Each lower-level registry summarizes its own address set and publishes
the result; the global registry concatenates the published pieces without
summarizing them again. Single mode instead summarizes the union of all
registries as one set.
"""

from __future__ import annotations

import logging
import warnings
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ip_summarizer.constants import (
    GRANULARITIES,
    MODE_BOTH,
    MODE_DISTRIBUTED,
    MODE_SINGLE,
    SINGLE_REGISTRY_NAME,
)
from ip_summarizer.heuristic import (
    ConfigurationError,
    SummaryConfig,
    SummaryResult,
    summarize,
)
from ip_summarizer.ipcore import Ipv4Address, Prefix, format_prefix
from ip_summarizer.patricia import PatriciaTree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegistrySet:
    """A named lower-level registry and the addresses registered with it."""

    name: str
    addresses: frozenset[Ipv4Address]

    @classmethod
    def from_addresses(cls, name: str,
                       addresses: Iterable[Ipv4Address]) -> RegistrySet:
        return cls(name, frozenset(addresses))

    @property
    def size(self) -> int:
        return len(self.addresses)


@dataclass(frozen=True)
class MergedSummary:
    """What the global registry holds after collecting summaries.

    ``total_original`` counts each registry's addresses separately, so an
    address registered twice counts twice; ``distinct_original`` collapses
    such repeats.
    """

    mode: str
    config: SummaryConfig
    per_registry: tuple[tuple[str, SummaryResult], ...]
    merged_prefixes: tuple[Prefix, ...]
    total_original: int
    distinct_original: int
    duplicate_prefixes: tuple[Prefix, ...] = ()

    @property
    def merged_size(self) -> int:
        return len(self.merged_prefixes)

    @property
    def compression_rate(self) -> float | None:
        if self.total_original == 0:
            return None
        return self.merged_size / self.total_original


@dataclass(frozen=True)
class ModeComparison:
    """Distributed and single runs over the same registries and config."""

    distributed: MergedSummary
    single: MergedSummary

    @property
    def config(self) -> SummaryConfig:
        return self.distributed.config

    @property
    def decrease(self) -> float | None:
        return decrease(self.distributed, self.single)


def _check_registries(registries: Sequence[RegistrySet]) -> None:
    if not registries:
        raise ConfigurationError("At least one registry is required")
    repeated = sorted(name for name, count
                      in Counter(r.name for r in registries).items() if count > 1)
    if repeated:
        raise ConfigurationError(
            f"Duplicate registry names: {', '.join(repeated)}")


def _summarize_registry(registry: RegistrySet,
                        config: SummaryConfig) -> SummaryResult:
    tree = PatriciaTree.build(sorted(registry.addresses))
    result = summarize(tree, config)
    logger.debug("Registry %s: %d addresses -> %d prefixes", registry.name,
                 result.original_size, result.summarized_size)
    return result


def _summarize_all(registries: Sequence[RegistrySet], config: SummaryConfig,
                   jobs: int) -> list[SummaryResult]:
    if jobs < 1:
        raise ConfigurationError(f"jobs must be at least 1, got {jobs}")
    if jobs == 1 or len(registries) == 1:
        return [_summarize_registry(r, config) for r in registries]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda r: _summarize_registry(r, config),
                             registries))


def _distinct_count(registries: Sequence[RegistrySet]) -> int:
    return len(frozenset().union(*(r.addresses for r in registries)))


# ── Operations ─────────────────────────────────────────────────────────

def publish_and_merge(registries: Sequence[RegistrySet], config: SummaryConfig,
                      jobs: int = 1) -> MergedSummary:
    """Summarize each registry on its own and merge the published pieces.

    Only exact duplicate prefixes are dropped from the merged list; a
    prefix inside another registry's wider prefix is kept.
    """
    _check_registries(registries)
    ordered = sorted(registries, key=lambda r: r.name)
    results = _summarize_all(ordered, config, jobs)

    counts = Counter(p for result in results for p in result.prefixes)
    duplicates = tuple(sorted(p for p, n in counts.items() if n > 1))
    if duplicates:
        message = (f"{len(duplicates)} prefix(es) published by more than one "
                   f"registry were merged: "
                   f"{', '.join(format_prefix(p) for p in duplicates)}")
        warnings.warn(message, stacklevel=2)

    merged = MergedSummary(
        mode=MODE_DISTRIBUTED,
        config=config,
        per_registry=tuple((r.name, res) for r, res in zip(ordered, results)),
        merged_prefixes=tuple(sorted(counts)),
        total_original=sum(res.original_size for res in results),
        distinct_original=_distinct_count(ordered),
        duplicate_prefixes=duplicates,
    )
    logger.info("Distributed: %d registries, %d addresses -> %d prefixes",
                len(ordered), merged.total_original, merged.merged_size)
    return merged


def summarize_single(registries: Sequence[RegistrySet], config: SummaryConfig,
                     jobs: int = 1) -> MergedSummary:
    """Summarize the union of every registry's addresses as one set.

    ``jobs`` is accepted for symmetry with :func:`publish_and_merge`; a
    single set is summarized on one thread.
    """
    _check_registries(registries)
    if jobs < 1:
        raise ConfigurationError(f"jobs must be at least 1, got {jobs}")
    union = RegistrySet(SINGLE_REGISTRY_NAME,
                        frozenset().union(*(r.addresses for r in registries)))
    result = _summarize_registry(union, config)
    merged = MergedSummary(
        mode=MODE_SINGLE,
        config=config,
        per_registry=((union.name, result),),
        merged_prefixes=result.prefixes,
        total_original=sum(r.size for r in registries),
        distinct_original=union.size,
    )
    logger.info("Single: %d addresses -> %d prefixes",
                merged.distinct_original, merged.merged_size)
    return merged


def decrease(distributed: MergedSummary, single: MergedSummary) -> float | None:
    """1 - single/distributed merged size; None when distributed is empty."""
    if distributed.merged_size == 0:
        return None
    return 1 - single.merged_size / distributed.merged_size


def compare_modes(registries: Sequence[RegistrySet], config: SummaryConfig,
                  jobs: int = 1) -> ModeComparison:
    return ModeComparison(
        distributed=publish_and_merge(registries, config, jobs),
        single=summarize_single(registries, config, jobs),
    )


def sweep(registries: Sequence[RegistrySet], config: SummaryConfig,
          mode: str = MODE_DISTRIBUTED, jobs: int = 1
          ) -> list[MergedSummary] | list[ModeComparison]:
    """Run every granularity at ``config``'s mask floor.

    ``mode`` is ``"distributed"``, ``"single"`` or ``"both"``; ``"both"``
    returns ModeComparison objects.
    """
    runners = {
        MODE_DISTRIBUTED: publish_and_merge,
        MODE_SINGLE: summarize_single,
        MODE_BOTH: compare_modes,
    }
    if mode not in runners:
        raise ConfigurationError(
            f"Mode must be one of {', '.join(runners)}, got {mode!r}")
    runner = runners[mode]
    return [runner(registries, config.with_granularity(g), jobs)
            for g in GRANULARITIES]
