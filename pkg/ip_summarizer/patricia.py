"""PatriciaTree and TrieNode: binary radix trie over /32 host addresses.

Internal nodes are the common prefixes of their descendants, so every
internal node below the root has exactly two children. The root is always
0.0.0.0/0 and is the one node allowed a single child.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from ip_summarizer.constants import MAX_MASK
from ip_summarizer.ipcore import (
    UNIVERSAL_PREFIX,
    Ipv4Address,
    Prefix,
    bit_at,
    common_prefix,
    contains,
)


class TrieStructureError(ValueError):
    """Raised by :func:`validate` when a tree breaks a structural invariant."""


class TrieNode:
    """A trie node labelled with a prefix.

    ``left`` holds the child whose bit at position ``prefix.mask_len`` is 0,
    ``right`` the child whose bit is 1.
    """

    __slots__ = ("prefix", "left", "right", "leaf_count")

    def __init__(self, prefix: Prefix, leaf_count: int = 0):
        self.prefix = prefix
        self.left: TrieNode | None = None
        self.right: TrieNode | None = None
        self.leaf_count = leaf_count

    @property
    def is_leaf(self) -> bool:
        return self.prefix.mask_len == MAX_MASK

    @property
    def children(self) -> tuple[TrieNode, ...]:
        """Present children, left before right."""
        return tuple(c for c in (self.left, self.right) if c is not None)

    def child_towards(self, prefix: Prefix) -> TrieNode | None:
        """Return the child on the side ``prefix`` branches to."""
        if bit_at(prefix.bits, self.prefix.mask_len):
            return self.right
        return self.left

    def attach(self, child: TrieNode) -> None:
        """Place ``child`` on its side, replacing whatever was there."""
        if bit_at(child.prefix.bits, self.prefix.mask_len):
            self.right = child
        else:
            self.left = child

    def __repr__(self):
        return f"TrieNode({self.prefix}, leaves={self.leaf_count})"


class PatriciaTree:
    """PATRICIA trie with per-node leaf counts.

    Usage::

        tree = PatriciaTree.build(addresses)
        print(tree.dump())
    """

    def __init__(self):
        self.root = TrieNode(UNIVERSAL_PREFIX)
        self.size = 0

    @classmethod
    def build(cls, addresses: Iterable[Ipv4Address]) -> PatriciaTree:
        tree = cls()
        for address in addresses:
            tree.insert(address)
        return tree

    def insert(self, address: Ipv4Address) -> bool:
        """Insert ``address`` as a /32 leaf.

        Returns False (and leaves the tree untouched) when the address is
        already present.
        """
        leaf = TrieNode(address.to_prefix(), leaf_count=1)
        path = [self.root]
        node = self.root
        while True:
            child = node.child_towards(leaf.prefix)
            if child is None:
                # Only the root can have an empty side.
                node.attach(leaf)
                break
            if child.prefix == leaf.prefix:
                return False
            if contains(child.prefix, leaf.prefix):
                node = child
                path.append(child)
                continue
            joint = TrieNode(common_prefix(child.prefix, leaf.prefix),
                             leaf_count=child.leaf_count)
            joint.attach(child)
            joint.attach(leaf)
            node.attach(joint)
            path.append(joint)
            break
        for ancestor in path:
            ancestor.leaf_count += 1
        self.size += 1
        return True

    # ── Traversal ──────────────────────────────────────────────────────

    def walk(self) -> Iterator[tuple[TrieNode, int]]:
        """Yield ``(node, depth)`` in order: node, left branch, right branch."""
        stack = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            yield node, depth
            for child in reversed(node.children):
                stack.append((child, depth + 1))

    def nodes(self) -> Iterator[TrieNode]:
        for node, _depth in self.walk():
            yield node

    def leaves(self) -> Iterator[TrieNode]:
        return (node for node in self.nodes() if node.is_leaf)

    def addresses(self) -> list[Ipv4Address]:
        """Stored addresses in ascending order."""
        return [leaf.prefix.to_address() for leaf in self.leaves()]

    def __len__(self) -> int:
        return self.size

    def __contains__(self, address: Ipv4Address) -> bool:
        target = address.to_prefix()
        node = self.root
        while node is not None and not node.is_leaf:
            node = node.child_towards(target)
            if node is not None and not contains(node.prefix, target):
                return False
        return node is not None and node.prefix == target

    def dump(self) -> str:
        """One node per line, two spaces of indent per depth level."""
        return "\n".join(f"{'  ' * depth}{node.prefix} leaves={node.leaf_count}"
                         for node, depth in self.walk())

    def __repr__(self):
        return f"PatriciaTree(size={self.size})"


# ── Module-level operations ────────────────────────────────────────────

def insert(tree: PatriciaTree, address: Ipv4Address) -> PatriciaTree:
    """Insert ``address`` into ``tree`` and return the tree."""
    tree.insert(address)
    return tree


def build(addresses: Iterable[Ipv4Address]) -> PatriciaTree:
    return PatriciaTree.build(addresses)


def leaf_count_below(node: TrieNode) -> int:
    return node.leaf_count


def validate(tree: PatriciaTree) -> None:
    """Check every structural invariant, raising TrieStructureError."""
    if tree.root.prefix != UNIVERSAL_PREFIX:
        raise TrieStructureError(f"Root is {tree.root.prefix}, not 0.0.0.0/0")
    if tree.root.leaf_count != tree.size:
        raise TrieStructureError(
            f"Root counts {tree.root.leaf_count} leaves, tree size is {tree.size}")
    for node in tree.nodes():
        children = node.children
        if node.is_leaf:
            if children:
                raise TrieStructureError(f"Leaf {node.prefix} has children")
            if node.leaf_count != 1:
                raise TrieStructureError(
                    f"Leaf {node.prefix} counts {node.leaf_count} leaves")
            continue
        if node is not tree.root and len(children) != 2:
            raise TrieStructureError(
                f"Internal node {node.prefix} has {len(children)} children")
        for side, child in ((0, node.left), (1, node.right)):
            if child is None:
                continue
            if not contains(node.prefix, child.prefix) \
                    or child.prefix.mask_len <= node.prefix.mask_len:
                raise TrieStructureError(
                    f"{child.prefix} is not strictly below {node.prefix}")
            if bit_at(child.prefix.bits, node.prefix.mask_len) != side:
                raise TrieStructureError(
                    f"{child.prefix} sits on the wrong side of {node.prefix}")
        expected = sum(child.leaf_count for child in children)
        if node.leaf_count != expected:
            raise TrieStructureError(
                f"{node.prefix} counts {node.leaf_count} leaves, children "
                f"hold {expected}")
