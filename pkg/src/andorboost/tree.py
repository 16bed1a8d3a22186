"""Depth- and leaf-limited decision trees used as a boosting baseline.

Splits minimize weighted misclassification (not Gini or entropy), the same
error the boosting loop measures.  There is no pruning; the leaf budget
plays that role.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .stump import exact_error, train_stump

__all__ = ["TreeNode", "DecisionTree", "train_tree", "predict_tree",
           "DEFAULT_MAX_DEPTH", "DEFAULT_MAX_LEAVES"]

DEFAULT_MAX_DEPTH = 7
DEFAULT_MAX_LEAVES = 16


@dataclass(frozen=True)
class TreeNode:
    """Leaf when ``label`` is set; otherwise ``x[feature] >= threshold`` goes right."""

    label: int | None = None
    feature: int = -1
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.label is not None


@dataclass(frozen=True)
class DecisionTree:
    root: TreeNode

    @property
    def depth(self) -> int:
        def walk(node):
            return 0 if node.is_leaf else 1 + max(walk(node.left), walk(node.right))
        return walk(self.root)

    @property
    def n_leaves(self) -> int:
        def walk(node):
            return 1 if node.is_leaf else walk(node.left) + walk(node.right)
        return walk(self.root)

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        single = X.ndim == 1
        X2 = X.reshape(1, -1) if single else X
        out = np.empty(X2.shape[0], dtype=np.int8)
        stack = [(self.root, np.arange(X2.shape[0]))]
        while stack:
            node, idx = stack.pop()
            if node.is_leaf:
                out[idx] = node.label
                continue
            if node.feature >= X2.shape[1]:
                raise ValueError(f"tree uses feature {node.feature} but input has {X2.shape[1]} features")
            right = X2[idx, node.feature] >= node.threshold
            stack.append((node.left, idx[~right]))
            stack.append((node.right, idx[right]))
        return int(out[0]) if single else out

    def to_dict(self) -> dict:
        # preorder list of node records
        nodes = []

        def walk(node):
            if node.is_leaf:
                nodes.append({"leaf": node.label})
            else:
                nodes.append({"feature": node.feature, "threshold": node.threshold})
                walk(node.left)
                walk(node.right)

        walk(self.root)
        return {"type": "tree", "nodes": nodes}

    @classmethod
    def from_dict(cls, d: dict) -> "DecisionTree":
        records = iter(d["nodes"])

        def build():
            r = next(records)
            if "leaf" in r:
                return TreeNode(label=int(r["leaf"]))
            left = build()
            right = build()
            return TreeNode(feature=int(r["feature"]), threshold=float(r["threshold"]), left=left, right=right)

        return cls(build())


def predict_tree(tree: DecisionTree, x):
    return tree.predict(x)


def _majority(y, w) -> tuple[int, float]:
    pos = math.fsum(w[y > 0])
    neg = math.fsum(w[y < 0])
    # ties go to -1
    return (1, neg) if pos > neg else (-1, pos)


def train_tree(data: Dataset, w, max_depth: int = DEFAULT_MAX_DEPTH,
               max_leaves: int = DEFAULT_MAX_LEAVES) -> DecisionTree:
    """Greedy best-first tree induction.

    The open node whose best split lowers the weighted error the most is
    expanded next (earlier-created nodes win ties).  A node stays a leaf
    when it is pure, at ``max_depth``, when the leaf budget is spent, or
    when no split strictly lowers its error.  The one exception is a split
    that leaves the error unchanged while its children could still split:
    it is kept as a lowest-priority candidate, and collapsed back into a
    leaf afterwards if both children end up with the same label.  Each
    split is the :func:`train_stump` optimum on the node's own samples.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    if max_leaves < 2:
        raise ValueError("max_leaves must be >= 2")
    w = np.asarray(w, dtype=np.float64)
    X, y = data.features, data.labels

    def best_split(idx, depth):
        label, leaf_err = _majority(y[idx], w[idx])
        if depth >= max_depth or leaf_err == 0 or idx.size < 2:
            return label, None
        node_data = data.subset(idx)
        stump, err = train_stump(node_data, w[idx])
        # a split that gains nothing now may still let its children gain
        # (xor); allow it only while the children can split again
        lookahead = depth + 1 < max_depth
        if not (err < leaf_err or (lookahead and err == leaf_err)):
            return label, None
        right = X[idx, stump.feature_index] >= stump.threshold
        if right.all() or not right.any():
            return label, None
        return label, (leaf_err - err, stump, idx[~right], idx[right])

    # node table: id -> [label, split info or None, children ids]
    nodes: dict[int, dict] = {}
    counter = 0
    heap: list = []

    def open_node(idx, depth):
        nonlocal counter
        nid = counter
        counter += 1
        label, cand = best_split(idx, depth)
        nodes[nid] = {"label": label, "split": None, "children": None}
        if cand is not None:
            heapq.heappush(heap, (-cand[0], nid, depth, cand))
        return nid

    root = open_node(np.arange(data.n_samples), 0)
    leaves = 1
    while heap and leaves < max_leaves:
        _, nid, depth, (_, stump, left_idx, right_idx) = heapq.heappop(heap)
        nodes[nid]["split"] = (stump.feature_index, stump.threshold)
        nodes[nid]["children"] = (open_node(left_idx, depth + 1), open_node(right_idx, depth + 1))
        leaves += 1

    def build(nid):
        rec = nodes[nid]
        if rec["split"] is None:
            return TreeNode(label=rec["label"])
        left, right = build(rec["children"][0]), build(rec["children"][1])
        if left.is_leaf and right.is_leaf and left.label == right.label:
            # a zero-gain split whose children never paid off
            return TreeNode(label=rec["label"])
        return TreeNode(feature=rec["split"][0], threshold=rec["split"][1], left=left, right=right)

    return DecisionTree(build(root))


def tree_error(tree: DecisionTree, data: Dataset, w) -> float:
    return exact_error(tree.predict(data.features), data.labels, w)
