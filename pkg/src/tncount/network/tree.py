"""Contraction trees stored as static-single-assignment merge lists."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from tncount.errors import ParseError, TreeMismatchError

_TOKEN = re.compile(r"\(|\)|\d+|\S")


@dataclass(frozen=True)
class ContractionTree:
    """Rooted binary tree whose leaves are the tensors ``0..num_leaves-1``.

    Merge ``j`` joins two existing nodes into node ``num_leaves + j``; the
    last merge is the root. Every node is used as a child exactly once except
    the root, so the merge list is also a valid contraction order.
    """

    num_leaves: int
    merges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "merges", tuple(tuple(m) for m in self.merges))
        if self.num_leaves < 1:
            raise TreeMismatchError("a contraction tree needs at least one leaf")
        if len(self.merges) != self.num_leaves - 1:
            raise TreeMismatchError(
                f"{self.num_leaves} leaves need {self.num_leaves - 1} merges, got {len(self.merges)}"
            )
        used = set()
        for j, (a, b) in enumerate(self.merges):
            node = self.num_leaves + j
            for child in (a, b):
                if not 0 <= child < node:
                    raise TreeMismatchError(f"merge {j} refers to unknown node {child}")
                if child in used:
                    raise TreeMismatchError(f"node {child} merged twice")
                used.add(child)
            if a == b:
                raise TreeMismatchError(f"merge {j} joins node {a} with itself")

    @property
    def root(self) -> int:
        return self.num_leaves + len(self.merges) - 1

    @property
    def num_nodes(self) -> int:
        return self.num_leaves + len(self.merges)

    def children(self, node: int) -> Optional[tuple[int, int]]:
        if node < self.num_leaves:
            return None
        return self.merges[node - self.num_leaves]

    def validate(self, size: int) -> None:
        """Raise unless the leaves match a network of ``size`` tensors."""
        if self.num_leaves != size:
            raise TreeMismatchError(
                f"tree has {self.num_leaves} leaves, network has {size} tensors"
            )

    def leaf_sets(self) -> list[frozenset[int]]:
        """Leaves below every node, indexed by node id."""
        sets: list[frozenset[int]] = [frozenset((leaf,)) for leaf in range(self.num_leaves)]
        for a, b in self.merges:
            sets.append(sets[a] | sets[b])
        return sets

    def depth(self) -> int:
        depths = [0] * self.num_leaves
        for a, b in self.merges:
            depths.append(1 + max(depths[a], depths[b]))
        return depths[-1]

    def to_text(self) -> str:
        """Nested parenthesized form, e.g. ``((0 1) 2)``."""
        parts = [str(leaf) for leaf in range(self.num_leaves)]
        for a, b in self.merges:
            parts.append(f"({parts[a]} {parts[b]})")
        return parts[-1]

    def canonical(self) -> "ContractionTree":
        """Same shape with children ordered by their smallest leaf."""
        sets = self.leaf_sets()
        ordered = tuple(
            (a, b) if min(sets[a]) < min(sets[b]) else (b, a) for a, b in self.merges
        )
        return ContractionTree(self.num_leaves, ordered)

    def same_shape(self, other: "ContractionTree") -> bool:
        """True if both trees induce the same set of leaf clusters."""
        if self.num_leaves != other.num_leaves:
            return False
        return set(self.leaf_sets()) == set(other.leaf_sets())

    @classmethod
    def from_text(cls, text: str) -> "ContractionTree":
        """Parse the nested parenthesized form.

        Raises:
            ParseError: On unbalanced parentheses, non-binary nodes or
                leaves that are not exactly ``0..k-1``.
        """
        Ref = tuple[str, int]
        merges: list[tuple[Ref, Ref]] = []
        leaves: list[int] = []
        # Each frame collects child ids as ("leaf", n) or ("merge", j).
        stack: list[list[tuple[str, int]]] = [[]]
        for token in _TOKEN.findall(text):
            if token == "(":
                stack.append([])
            elif token == ")":
                if len(stack) == 1:
                    raise ParseError("unbalanced ')' in contraction tree")
                frame = stack.pop()
                if len(frame) != 2:
                    raise ParseError(f"tree node with {len(frame)} children")
                merges.append((frame[0], frame[1]))
                stack[-1].append(("merge", len(merges) - 1))
            elif token.isdigit():
                leaves.append(int(token))
                stack[-1].append(("leaf", int(token)))
            else:
                raise ParseError(f"unexpected token {token!r} in contraction tree")
        if len(stack) != 1 or len(stack[0]) != 1:
            raise ParseError("contraction tree text must hold exactly one tree")
        k = len(leaves)
        if sorted(leaves) != list(range(k)):
            raise ParseError("contraction tree leaves must be exactly 0..k-1")

        def node_id(ref: Ref) -> int:
            kind, value = ref
            return value if kind == "leaf" else k + value

        return cls(k, tuple((node_id(a), node_id(b)) for a, b in merges))

    def __str__(self) -> str:
        return self.to_text()
