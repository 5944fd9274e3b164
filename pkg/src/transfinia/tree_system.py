"""Labeled trees of cell strings over a finite decreasing sequence.

Each level ``n`` of a :class:`CellDecomposition` assigns every element a cell
label, or ``None`` when the element has left level ``n``.  The tree has a
node for each label string realized by some element; nodes of even length
are labeled 0 and nodes of odd length 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ordinals import ordinal
from .staged_sets import DECREASING, Constant, DecSegment, Member, SeqSpec

__all__ = [
    "CellDecomposition",
    "TreeNode",
    "LabeledTree",
    "build_tree",
    "check_wellfounded",
    "sigma_x",
    "recover_membership",
    "tree_dump",
]


@dataclass(frozen=True)
class CellDecomposition:
    """``theta[x][n]`` is the cell of ``x`` at level ``n`` or None."""

    levels: int
    theta: tuple
    schedules: tuple | None = None

    def __post_init__(self):
        theta = tuple(tuple(row) for row in self.theta)
        object.__setattr__(self, "theta", theta)
        for x, row in enumerate(theta):
            if len(row) != self.levels:
                raise ValueError(f"element {x} needs {self.levels} cell entries")
            gone = False
            for n, cell in enumerate(row):
                if cell is None:
                    gone = True
                elif gone:
                    raise ValueError(f"element {x} reenters level {n}; levels must decrease")

    @property
    def size(self) -> int:
        return len(self.theta)

    def depth(self, x: int) -> int:
        row = self.theta[x]
        n = 0
        while n < self.levels and row[n] is not None:
            n += 1
        return n

    @property
    def seq(self) -> SeqSpec:
        """The truncated decreasing sequence of levels."""
        members = []
        for x in range(self.size):
            sched = self.schedules[x] if self.schedules else Constant(0)
            members.append(Member(DecSegment(self.depth(x)), sched))
        return SeqSpec(ordinal(self.levels), DECREASING, tuple(members))

    def cells(self, n: int) -> dict:
        out: dict = {}
        for x, row in enumerate(self.theta):
            if row[n] is not None:
                out.setdefault(row[n], set()).add(x)
        return {k: frozenset(v) for k, v in out.items()}


@dataclass
class TreeNode:
    sigma: tuple
    label: int
    q: frozenset
    children: dict = field(default_factory=dict)

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class LabeledTree:
    nodes: dict

    @property
    def root(self) -> TreeNode:
        return self.nodes[()]

    @property
    def depth(self) -> int:
        return max(len(s) for s in self.nodes)

    def __contains__(self, sigma) -> bool:
        return tuple(sigma) in self.nodes


def build_tree(cd: CellDecomposition) -> LabeledTree:
    members: dict = {(): set(range(cd.size))}
    for x in range(cd.size):
        row = cd.theta[x]
        for n in range(cd.depth(x)):
            members.setdefault(tuple(row[: n + 1]), set()).add(x)
    nodes = {s: TreeNode(s, len(s) % 2, frozenset(q)) for s, q in members.items()}
    for s, node in nodes.items():
        if s:
            nodes[s[:-1]].children[s[-1]] = node
    return LabeledTree(nodes)


def check_wellfounded(t: LabeledTree, cd: CellDecomposition) -> bool:
    """True iff no element survives every level of the truncation."""
    return cd.size == 0 or t.depth < cd.levels


def sigma_x(cd: CellDecomposition, x: int) -> tuple:
    return tuple(cd.theta[x][: cd.depth(x)])


def recover_membership(cd: CellDecomposition, x: int, tree: LabeledTree | None = None) -> int:
    """Evaluate the node-value recursion from the root along ``x``'s cells."""
    tree = tree or build_tree(cd)
    row = cd.theta[x]

    def value(node: TreeNode) -> int:
        if node.is_leaf:
            return node.label
        n = len(node.sigma)
        if n < cd.levels and row[n] is not None and row[n] in node.children:
            return value(node.children[row[n]])
        return node.label

    return value(tree.root)


def tree_dump(t: LabeledTree) -> list:
    out = []
    for sigma in sorted(t.nodes, key=lambda s: (len(s), [str(c) for c in s])):
        node = t.nodes[sigma]
        out.append({
            "sigma": [str(c) for c in sigma],
            "label": node.label,
            "q": sorted(node.q),
        })
    return out
