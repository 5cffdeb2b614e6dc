"""Test-only oracles, generators and hypothesis strategies."""

from __future__ import annotations

import bisect
import random
from collections import defaultdict
from collections.abc import Iterator, Sequence

from hypothesis import strategies as st

from ip_summarizer.constants import ALL_ONES
from ip_summarizer.directory import RegistrySet
from ip_summarizer.heuristic import SummaryConfig
from ip_summarizer.ipcore import Ipv4Address, Prefix, mask_bits, parse_prefix
from ip_summarizer.patricia import PatriciaTree, TrieNode

# Per-registry (original, summarized) sizes at granularity 0 for the merge fixtures.
REGISTRY_SIZES = {
    "APAN": (104, 19),
    "ESnet": (618, 58),
    "FCCN": (43, 4),
    "GARR": (163, 2),
    "GEANT": (30, 5),
    "Internet2": (282, 86),
    "Indiana": (79, 14),
    "PIONIER": (27, 5),
    "SWITCH": (214, 15),
}


def node_at(tree: PatriciaTree, cidr: str) -> TrieNode:
    target = parse_prefix(cidr)
    for node in tree.nodes():
        if node.prefix == target:
            return node
    raise KeyError(cidr)


# ── Brute-force trie oracle ────────────────────────────────────────────
# Works on bit strings so it shares no code with the prefix algebra.

def _bit_string(prefix: Prefix) -> str:
    return format(prefix.bits, "032b")[:prefix.mask_len]


def _from_bit_string(bits: str) -> Prefix:
    return Prefix(int(bits.ljust(32, "0"), 2), len(bits))


def _longest_common(a: str, b: str) -> str:
    length = 0
    while length < min(len(a), len(b)) and a[length] == b[length]:
        length += 1
    return a[:length]


def oracle_nodes(addresses: Sequence[Ipv4Address]
                 ) -> dict[Prefix, tuple[int, Prefix | None]]:
    """Map every trie node to ``(leaf_count, parent)``.

    The internal nodes of a binary PATRICIA trie are exactly the pairwise
    longest common prefixes of its leaves, plus the root.
    """
    leaves = sorted({_bit_string(a.to_prefix()) for a in addresses})
    labels = {""} | set(leaves)
    for i, a in enumerate(leaves):
        for b in leaves[i + 1:]:
            labels.add(_longest_common(a, b))
    result = {}
    for label in labels:
        count = sum(1 for leaf in leaves if leaf.startswith(label))
        ancestors = [other for other in labels
                     if len(other) < len(label) and label.startswith(other)]
        parent = max(ancestors, key=len) if ancestors else None
        result[_from_bit_string(label)] = (
            count, None if parent is None else _from_bit_string(parent))
    return result


def trie_nodes(tree: PatriciaTree) -> dict[Prefix, tuple[int, Prefix | None]]:
    parents: dict[Prefix, Prefix | None] = {tree.root.prefix: None}
    for node in tree.nodes():
        for child in node.children:
            parents[child.prefix] = node.prefix
    return {node.prefix: (node.leaf_count, parents[node.prefix])
            for node in tree.nodes()}


def oracle_summary(addresses: Sequence[Ipv4Address],
                   config: SummaryConfig) -> list[Prefix]:
    """Straight-line evaluation of the selection rules on the oracle tree."""
    nodes = oracle_nodes(addresses)
    children = defaultdict(list)
    for prefix, (_count, parent) in nodes.items():
        if parent is not None:
            children[parent].append(prefix)
    root = Prefix(0, 0)
    selected = []
    pending = [root]
    while pending:
        prefix = pending.pop()
        kids = children[prefix]
        if prefix.mask_len == 32:
            selected.append(prefix)
            continue
        accept = prefix.mask_len > config.min_subnet_mask
        for kid in kids:
            if kid.mask_len - prefix.mask_len > config.distance_threshold:
                accept = False
        for kid in kids:
            if nodes[kid][0] / 2 ** (32 - kid.mask_len) < config.density_threshold:
                accept = False
        if accept:
            selected.append(prefix)
        else:
            pending.extend(kids)
    return sorted(selected)


# ── Coverage checks ────────────────────────────────────────────────────

def covering_prefix(prefixes: Sequence[Prefix], target: Prefix) -> Prefix | None:
    """The prefix of a sorted, disjoint list that contains ``target``."""
    starts = [p.bits for p in prefixes]
    index = bisect.bisect_right(starts, target.bits) - 1
    if index < 0:
        return None
    candidate = prefixes[index]
    if target.bits & mask_bits(candidate.mask_len) == candidate.bits \
            and candidate.mask_len <= target.mask_len:
        return candidate
    return None


def pairwise_disjoint(prefixes: Sequence[Prefix]) -> bool:
    """True when no prefix of a sorted list overlaps the next one."""
    for current, following in zip(prefixes, prefixes[1:]):
        if current.bits + current.size > following.bits:
            return False
    return True


# ── Generators ─────────────────────────────────────────────────────────

def random_address_set(rng: random.Random, min_size: int = 1,
                       max_size: int = 200) -> list[Ipv4Address]:
    """Uniform, clustered or mixed addresses, in arbitrary order."""
    target = rng.randint(min_size, max_size)
    style = rng.choice(("uniform", "clustered", "mixed"))
    clusters = []
    for _ in range(rng.randint(1, 6)):
        mask = rng.randint(16, 28)
        clusters.append((rng.getrandbits(32) & mask_bits(mask), mask))
    values: set[int] = set()
    for _ in range(target * 20):
        if len(values) >= target:
            break
        if style == "uniform" or (style == "mixed" and rng.random() < 0.3):
            values.add(rng.getrandbits(32))
        else:
            base, mask = rng.choice(clusters)
            values.add(base | rng.getrandbits(32 - mask))
    addresses = [Ipv4Address(v) for v in values]
    rng.shuffle(addresses)
    return addresses


def _dense_hosts(count: int) -> list[int]:
    """Host offsets that summarize to one aligned block: every even offset
    of the block plus the smallest odd ones."""
    if count == 1:
        return [0]
    width = (count - 1).bit_length()
    evens = list(range(0, 1 << width, 2))
    odds = list(range(1, 1 << width, 2))[:count - len(evens)]
    return evens + odds


def registry_with_summary_size(name: str, original: int, summarized: int,
                               octets: Iterator[int]) -> RegistrySet:
    """A registry of ``original`` addresses that summarizes to exactly
    ``summarized`` prefixes at any granularity with the mask floor at 8.

    Every prefix lives in its own /8, consumed from ``octets``.
    """
    addresses = [Ipv4Address((next(octets) << 24) | 1)
                 for _ in range(summarized - 1)]
    base = next(octets) << 24
    addresses += [Ipv4Address(base | host)
                  for host in _dense_hosts(original - summarized + 1)]
    return RegistrySet.from_addresses(name, addresses)


def sized_registries() -> list[RegistrySet]:
    octets = iter(range(1, 256))
    return [registry_with_summary_size(name, original, summarized, octets)
            for name, (original, summarized) in REGISTRY_SIZES.items()]


# ── Hypothesis strategies ──────────────────────────────────────────────

uniform_addresses = st.lists(
    st.integers(min_value=0, max_value=ALL_ONES).map(Ipv4Address),
    max_size=64,
)


@st.composite
def clustered_addresses(draw, max_size: int = 64) -> list[Ipv4Address]:
    mask = draw(st.integers(min_value=12, max_value=28))
    base = draw(st.integers(min_value=0, max_value=ALL_ONES)) & mask_bits(mask)
    span = (1 << (32 - mask)) - 1
    hosts = draw(st.lists(st.integers(min_value=0, max_value=span),
                          min_size=1, max_size=max_size))
    return [Ipv4Address(base | host) for host in hosts]


address_lists = st.one_of(uniform_addresses, clustered_addresses())
granularities = st.integers(min_value=0, max_value=3)
mask_floors = st.integers(min_value=0, max_value=31)
