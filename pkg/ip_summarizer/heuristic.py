"""Summarization heuristic: pick summarizing prefixes from a PatriciaTree.

A node is made a summarizing node when its mask is longer than the
Minimum Subnet Mask, no child sits more than the Distance threshold bits
below it, and no child is sparser than the Density threshold. Leaves are
always summarizing nodes. Everything below a summarizing node is pruned.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass, replace

from ip_summarizer.constants import (
    DEFAULT_GRANULARITY,
    DEFAULT_MIN_SUBNET_MASK,
    DENSITY_INTERPOLATION_RATE,
    DENSITY_INTERPOLATION_SCALE,
    DISTANCE_INTERPOLATION_OFFSET,
    DISTANCE_INTERPOLATION_SLOPE,
    GRANULARITY_THRESHOLDS,
    MAX_MASK,
)
from ip_summarizer.ipcore import Ipv4Address, Prefix
from ip_summarizer.patricia import PatriciaTree, TrieNode


class ConfigurationError(ValueError):
    """Raised for invalid summarization or simulation settings."""


# ── Metrics ────────────────────────────────────────────────────────────

def distance(parent: TrieNode, child: TrieNode) -> int:
    """Mask bits between a node and one of its direct children."""
    return child.prefix.mask_len - parent.prefix.mask_len


def branch_capacity(d: int) -> int:
    """Possible addresses in a branch ``d`` bits long, 2^(d-1)."""
    if d < 1:
        raise ValueError(f"Distance must be at least 1 bit, got {d}")
    return 1 << (d - 1)


def vacant_addresses(parent: TrieNode, child: TrieNode) -> int:
    """Addresses a summary at ``parent`` would claim in the child's branch
    without holding them.

    Distance is only an estimate, so a child holding more leaves than the
    branch capacity reports 0 rather than a negative count.
    """
    return max(branch_capacity(distance(parent, child)) - child.leaf_count, 0)


def density(node: TrieNode) -> float:
    """Fraction of the node's address span occupied by leaves."""
    return node.leaf_count / (1 << (MAX_MASK - node.prefix.mask_len))


# ── Granularity ────────────────────────────────────────────────────────

def thresholds_for(granularity: int) -> tuple[int, float]:
    """Return ``(distance_threshold, density_threshold)`` for a granularity."""
    if isinstance(granularity, bool) or granularity not in GRANULARITY_THRESHOLDS:
        raise ConfigurationError(
            f"Granularity must be one of {sorted(GRANULARITY_THRESHOLDS)}, "
            f"got {granularity!r}")
    return GRANULARITY_THRESHOLDS[granularity]


def distance_interpolated(x: float) -> float:
    """Linear fit of the Distance column: 4x + 4."""
    return DISTANCE_INTERPOLATION_SLOPE * x + DISTANCE_INTERPOLATION_OFFSET


def density_interpolated(x: float) -> float:
    """Exponential fit of the Density column: 1e-5 * e^(-2.303x).

    Matches the table to within 0.2%; the table stays authoritative.
    """
    return DENSITY_INTERPOLATION_SCALE * math.exp(-DENSITY_INTERPOLATION_RATE * x)


@dataclass(frozen=True)
class SummaryConfig:
    """Settings for one summarization run.

    ``granularity`` selects the threshold pair from the table. Passing both
    ``distance_override`` and ``density_override`` replaces that pair.
    """

    granularity: int = DEFAULT_GRANULARITY
    min_subnet_mask: int = DEFAULT_MIN_SUBNET_MASK
    distance_override: int | None = None
    density_override: float | None = None

    def __post_init__(self):
        thresholds_for(self.granularity)
        if isinstance(self.min_subnet_mask, bool) \
                or not isinstance(self.min_subnet_mask, int) \
                or not 0 <= self.min_subnet_mask <= MAX_MASK:
            raise ConfigurationError(
                f"Minimum subnet mask must be in 0..{MAX_MASK}, "
                f"got {self.min_subnet_mask!r}")
        if (self.distance_override is None) != (self.density_override is None):
            raise ConfigurationError(
                "Distance and density overrides must be given together")
        if self.distance_override is not None:
            if not 0 <= self.distance_override <= MAX_MASK:
                raise ConfigurationError(
                    f"Distance threshold must be in 0..{MAX_MASK}, "
                    f"got {self.distance_override!r}")
            if not 0 < self.density_override <= 1:
                raise ConfigurationError(
                    f"Density threshold must be in (0, 1], "
                    f"got {self.density_override!r}")

    @classmethod
    def with_thresholds(cls, distance_threshold: int, density_threshold: float,
                        min_subnet_mask: int = DEFAULT_MIN_SUBNET_MASK
                        ) -> SummaryConfig:
        return cls(min_subnet_mask=min_subnet_mask,
                   distance_override=distance_threshold,
                   density_override=density_threshold)

    @property
    def has_overrides(self) -> bool:
        return self.distance_override is not None

    @property
    def distance_threshold(self) -> int:
        if self.has_overrides:
            return self.distance_override
        return thresholds_for(self.granularity)[0]

    @property
    def density_threshold(self) -> float:
        if self.has_overrides:
            return self.density_override
        return thresholds_for(self.granularity)[1]

    def with_granularity(self, granularity: int) -> SummaryConfig:
        """Copy at another granularity, keeping the mask floor."""
        if self.has_overrides:
            raise ConfigurationError(
                "Explicit thresholds cannot be combined with a granularity sweep")
        return replace(self, granularity=granularity)


@dataclass(frozen=True)
class SummaryResult:
    """Summarizing prefixes for one address set, in ascending order."""

    prefixes: tuple[Prefix, ...]
    original_size: int
    config: SummaryConfig

    @property
    def summarized_size(self) -> int:
        return len(self.prefixes)

    @property
    def compression_rate(self) -> float | None:
        """summarized / original; None for an empty input."""
        if self.original_size == 0:
            return None
        return self.summarized_size / self.original_size


# ── Selection ──────────────────────────────────────────────────────────

def _is_summarizing(node: TrieNode, config: SummaryConfig) -> bool:
    if node.prefix.mask_len <= config.min_subnet_mask:
        return False
    children = node.children
    if any(distance(node, c) > config.distance_threshold for c in children):
        return False
    if any(density(c) < config.density_threshold for c in children):
        return False
    return True


def _select(node: TrieNode, config: SummaryConfig, out: list[Prefix]) -> None:
    if node.is_leaf or _is_summarizing(node, config):
        out.append(node.prefix)
        return
    for child in node.children:
        _select(child, config, out)


def summarize(tree: PatriciaTree, config: SummaryConfig) -> SummaryResult:
    """Walk ``tree`` in order and collect summarizing prefixes.

    The tree is not modified. An empty tree yields no prefixes.
    """
    selected: list[Prefix] = []
    _select(tree.root, config, selected)
    return SummaryResult(prefixes=tuple(sorted(selected)),
                         original_size=tree.size, config=config)


def summarize_addresses(addresses: Iterable[Ipv4Address],
                        config: SummaryConfig) -> SummaryResult:
    return summarize(PatriciaTree.build(addresses), config)
