"""Ipv4Address and Prefix: IPv4 value types and prefix algebra."""

from __future__ import annotations

from dataclasses import dataclass

from ip_summarizer.constants import ALL_ONES, MAX_MASK, OCTET_MAX


class AddressParseError(ValueError):
    """Raised when dotted-quad or CIDR text cannot be parsed.

    ``token`` is the offending piece of input (an octet, a mask, or the
    whole text when its overall shape is wrong).
    """

    def __init__(self, message: str, token: str):
        super().__init__(message)
        self.token = token


class PrefixError(ValueError):
    """Raised for out-of-range values or a prefix with host bits set."""


def mask_bits(mask_len: int) -> int:
    """Return the 32-bit network mask for a prefix length."""
    if not 0 <= mask_len <= MAX_MASK:
        raise PrefixError(f"Mask length out of range: {mask_len}")
    return ALL_ONES ^ ((1 << (MAX_MASK - mask_len)) - 1)


def bit_at(bits: int, position: int) -> int:
    """Return bit ``position`` of ``bits``, counting 0 from the leftmost bit."""
    return (bits >> (MAX_MASK - 1 - position)) & 1


def _format_dotted(value: int) -> str:
    return ".".join(str((value >> shift) & 0xFF) for shift in (24, 16, 8, 0))


def _parse_octet(token: str, text: str) -> int:
    if not (token.isascii() and token.isdigit()) or len(token) > 3:
        raise AddressParseError(f"Invalid octet {token!r} in address: {text!r}",
                                token)
    value = int(token)
    if value > OCTET_MAX:
        raise AddressParseError(f"Octet {token!r} exceeds {OCTET_MAX} in "
                                f"address: {text!r}", token)
    return value


@dataclass(frozen=True, order=True)
class Ipv4Address:
    """A single 32-bit host address; bit 31 is the leftmost dotted-quad bit."""

    value: int

    def __post_init__(self):
        if not 0 <= self.value <= ALL_ONES:
            raise PrefixError(f"Address value out of range: {self.value}")

    def to_prefix(self) -> Prefix:
        """Return this host as a /32 prefix."""
        return Prefix(self.value, MAX_MASK)

    def __str__(self) -> str:
        return _format_dotted(self.value)


@dataclass(frozen=True, order=True)
class Prefix:
    """A CIDR subnet: network bits plus mask length, host bits always zero.

    Ordering is numeric on ``bits`` first, then ``mask_len``.
    """

    bits: int
    mask_len: int

    def __post_init__(self):
        if not 0 <= self.mask_len <= MAX_MASK:
            raise PrefixError(f"Mask length out of range: {self.mask_len}")
        if not 0 <= self.bits <= ALL_ONES:
            raise PrefixError(f"Prefix value out of range: {self.bits}")
        if self.bits & ~mask_bits(self.mask_len) & ALL_ONES:
            raise PrefixError(f"Host bits set in {_format_dotted(self.bits)}"
                              f"/{self.mask_len}")

    @classmethod
    def truncate(cls, bits: int, mask_len: int) -> Prefix:
        """Build the prefix of length ``mask_len`` covering ``bits``."""
        return cls(bits & mask_bits(mask_len), mask_len)

    @property
    def is_host(self) -> bool:
        return self.mask_len == MAX_MASK

    @property
    def size(self) -> int:
        """Number of addresses the prefix spans, 2^(32 - mask_len)."""
        return 1 << (MAX_MASK - self.mask_len)

    def to_address(self) -> Ipv4Address:
        """Return the host address of a /32 prefix."""
        if not self.is_host:
            raise PrefixError(f"{self} is not a host prefix")
        return Ipv4Address(self.bits)

    def __contains__(self, other: Prefix | Ipv4Address) -> bool:
        if isinstance(other, Ipv4Address):
            other = other.to_prefix()
        return contains(self, other)

    def __str__(self) -> str:
        return f"{_format_dotted(self.bits)}/{self.mask_len}"


UNIVERSAL_PREFIX = Prefix(0, 0)


# ── Parsing ────────────────────────────────────────────────────────────

def parse_address(text: str) -> Ipv4Address:
    """Parse a dotted-quad such as ``"10.10.0.1"``.

    Exactly four decimal octets 0-255; no whitespace or other junk.
    """
    tokens = text.split(".")
    if len(tokens) != 4:
        raise AddressParseError(
            f"Expected 4 octets, got {len(tokens)} in address: {text!r}", text)
    value = 0
    for token in tokens:
        value = (value << 8) | _parse_octet(token, text)
    return Ipv4Address(value)


def parse_prefix(text: str) -> Prefix:
    """Parse CIDR text such as ``"10.10.0.0/29"``.

    Host bits must be zero; ``"10.10.0.1/29"`` is rejected.
    """
    address_text, sep, mask_text = text.partition("/")
    if not sep:
        raise AddressParseError(f"Missing '/' in prefix: {text!r}", text)
    address = parse_address(address_text)
    if not (mask_text.isascii() and mask_text.isdigit()) or len(mask_text) > 2:
        raise AddressParseError(f"Invalid mask {mask_text!r} in prefix: {text!r}",
                                mask_text)
    mask_len = int(mask_text)
    if mask_len > MAX_MASK:
        raise AddressParseError(f"Mask {mask_text!r} exceeds {MAX_MASK} in "
                                f"prefix: {text!r}", mask_text)
    return Prefix(address.value, mask_len)


def format_address(address: Ipv4Address) -> str:
    return str(address)


def format_prefix(prefix: Prefix) -> str:
    return str(prefix)


# ── Prefix algebra ─────────────────────────────────────────────────────

def contains(p: Prefix, q: Prefix) -> bool:
    """True when every address of ``q`` lies inside ``p``."""
    return (p.mask_len <= q.mask_len
            and q.bits & mask_bits(p.mask_len) == p.bits)


def common_prefix(a: Prefix, b: Prefix) -> Prefix:
    """Return the longest prefix containing both ``a`` and ``b``."""
    diverging = a.bits ^ b.bits
    agreeing = MAX_MASK - diverging.bit_length()
    return Prefix.truncate(a.bits, min(agreeing, a.mask_len, b.mask_len))
