"""ip_summarizer: heuristic CIDR summarization of IPv4 address sets."""

from ip_summarizer.directory import RegistrySet, publish_and_merge, summarize_single
from ip_summarizer.heuristic import SummaryConfig, summarize, summarize_addresses
from ip_summarizer.ipcore import Ipv4Address, Prefix, parse_address, parse_prefix
from ip_summarizer.patricia import PatriciaTree

__all__ = [
    "Ipv4Address",
    "PatriciaTree",
    "Prefix",
    "RegistrySet",
    "SummaryConfig",
    "parse_address",
    "parse_prefix",
    "publish_and_merge",
    "summarize",
    "summarize_addresses",
    "summarize_single",
]
__version__ = "0.1.0"
