"""Full binary trees, Catalan numbers, nested commutators and the Catalan majorant."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .algebra import Element
from .errors import ResourceError

TREE_CAP = 16


@dataclass(frozen=True)
class Leaf:
    label: str | None = None  # "x", "y", or None for bare shapes

    @property
    def leaf_count(self) -> int:
        return 1

    def __str__(self):
        return self.label or "*"


@dataclass(frozen=True)
class Node:
    left: "Leaf | Node"
    right: "Leaf | Node"

    @property
    def leaf_count(self) -> int:
        return self.left.leaf_count + self.right.leaf_count

    def __str__(self):
        return f"[{self.left},{self.right}]"


BinaryTree = Leaf | Node
X, Y = Leaf("x"), Leaf("y")


def leaves(t: BinaryTree) -> list:
    if isinstance(t, Leaf):
        return [t.label]
    return leaves(t.left) + leaves(t.right)


# ---------------------------------------------------------------------------
# Catalan numbers


@lru_cache(maxsize=None)
def _catalan_table(k: int) -> tuple:
    c = [1]
    for n in range(k):
        c.append(sum(c[i] * c[n - i] for i in range(n + 1)))
    return tuple(c)


def catalan(k: int) -> int:
    """C_k via C_{k+1} = sum_i C_i C_{k-i} (Python ints, so no overflow)."""
    if k < 0:
        raise ValueError(f"catalan index must be >= 0, got {k}")
    return _catalan_table(k)[k]


def catalan_binomial(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


# ---------------------------------------------------------------------------
# enumeration


def _check_cap(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError(f"trees need at least one leaf, got {n}")
    if n > cap:
        raise ResourceError(f"{n} leaves exceeds the tree cap {cap}")


def enumerate_trees(n: int, labeled: bool = False, cap: int = TREE_CAP) -> Iterator[BinaryTree]:
    """Stream full binary trees with n leaves.

    Order: split by left-subtree size ascending, then left tree, then right
    tree, recursively.  ``labeled`` gives every x/y leaf labeling
    (C_{n-1} 2^n trees), otherwise C_{n-1} bare shapes.
    """
    _check_cap(n, cap)
    return _trees(n, labeled)


def _trees(n, labeled):
    if n == 1:
        if labeled:
            yield X
            yield Y
        else:
            yield Leaf()
        return
    for k in range(1, n):
        for left in _trees(k, labeled):
            for right in _trees(n - k, labeled):
                yield Node(left, right)


def count_trees(n: int, labeled: bool = False) -> int:
    return catalan(n - 1) * (2 ** n if labeled else 1)


# ---------------------------------------------------------------------------
# nested commutators


def tree_commutator(t: BinaryTree, x: Element, y: Element, model) -> Element:
    """[x, y]_T: leaves become x or y, internal nodes brackets."""
    if isinstance(t, Leaf):
        if t.label == "x":
            return x
        if t.label == "y":
            return y
        raise ValueError("tree_commutator needs a labeled tree")
    return model.bracket(tree_commutator(t.left, x, y, model), tree_commutator(t.right, x, y, model))


class TreeEvaluator:
    """Nested commutators of all labeled trees, level by level, in enumeration order.

    Lower levels are cached; the top level is streamed so that memory stays
    at the size of level n-1.
    """

    def __init__(self, x: Element, y: Element, model, cap: int = TREE_CAP):
        self.model = model
        self.cap = cap
        self._levels = {1: [x, y]}
        self._zero = Element.zero(x.backend)

    def _bracket(self, a, b):
        if a.is_zero or b.is_zero:
            return self._zero
        return self.model.bracket(a, b)

    def level(self, n: int) -> list:
        _check_cap(n, self.cap)
        if n not in self._levels:
            self._levels[n] = list(self.iter_level(n))
        return self._levels[n]

    def iter_level(self, n: int) -> Iterator[Element]:
        _check_cap(n, self.cap)
        if n in self._levels:
            yield from self._levels[n]
            return
        for k in range(1, n):
            lefts, rights = self.level(k), self.level(n - k)
            for a in lefts:
                for b in rights:
                    yield self._bracket(a, b)


def iter_labeled_tree_values(x, y, model, n: int, cap: int = TREE_CAP):
    """Yield (tree, [x,y]_T) for every labeled tree with n leaves."""
    values = TreeEvaluator(x, y, model, cap).iter_level(n)
    for t, v in zip(enumerate_trees(n, labeled=True, cap=cap), values):
        yield t, v


def _closure(model, seeds: set, n_max: int) -> list:
    levels = {1: set(seeds)}
    for n in range(2, n_max + 1):
        keys = set()
        for k in range(1, n):
            for a in levels[k]:
                for b in levels[n - k]:
                    keys.update(key for key, _ in model.basis_bracket(a, b))
        levels[n] = keys
    return sorted(set().union(*levels.values()))


def tree_commutator_norms(x: Element, y: Element, model, n_max: int, cap: int = TREE_CAP) -> dict:
    """{n: array of ||[x,y]_T|| over labeled trees with n leaves} (float, enumeration order).

    Vectorized: every level is a matrix of coordinate rows over the finite
    basis reachable from the supports of x and y.
    """
    _check_cap(n_max, cap)
    model.check_element(x)
    model.check_element(y)
    if model.shift_cap is not None:
        # truncation bookkeeping lives in the sparse path
        ev = TreeEvaluator(x.to_backend("float"), y.to_backend("float"), model, cap)
        return {n: np.array([model.norm(v) for v in ev.iter_level(n)]) for n in range(1, n_max + 1)}
    basis = _closure(model, set(x) | set(y), n_max)
    index = {k: i for i, k in enumerate(basis)}
    d = len(basis)
    # group structure constants by output coordinate
    by_out = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            for k, c in model.basis_bracket(a, b):
                if k in index:
                    by_out.setdefault(index[k], ([], [], []))
                    lst = by_out[index[k]]
                    lst[0].append(i)
                    lst[1].append(j)
                    lst[2].append(float(c))
    groups = [(k, np.array(I), np.array(J), np.array(C)) for k, (I, J, C) in sorted(by_out.items())]

    def vec(e):
        v = np.zeros(d)
        for k, c in e.items():
            v[index[k]] = float(c)
        return v

    levels = {1: np.vstack([vec(x), vec(y)])}
    for n in range(2, n_max + 1):
        blocks = []
        for k in range(1, n):
            L, R = levels[k], levels[n - k]
            out = np.zeros((L.shape[0], R.shape[0], d))
            for col, I, J, C in groups:
                out[:, :, col] = (L[:, I] * C) @ R[:, J].T
            blocks.append(out.reshape(-1, d))
        levels[n] = np.vstack(blocks)
    return {n: model.norm_dense(v, basis) for n, v in levels.items()}


# ---------------------------------------------------------------------------
# Catalan majorant


def majorant(n: int, K: float, B: float, s: float) -> float:
    """K C_{n-1} B^{n-1} s^n: bound on the degree-n homogeneous BCH term."""
    if n < 1:
        raise ValueError(f"majorant levels start at n = 1, got {n}")
    return K * catalan(n - 1) * B ** (n - 1) * s ** n


def catalan_generating(z: float) -> float:
    """C(z) = (1 - sqrt(1 - 4z)) / (2z), |z| <= 1/4."""
    if z == 0:
        return 1.0
    return (1.0 - math.sqrt(1.0 - 4.0 * z)) / (2.0 * z)


@dataclass(frozen=True)
class MajorantSeries:
    """K sum_n C_{n-1} B^{n-1} s^n with s = ||x|| + ||y|| (the diamond variable)."""

    K: float
    B: float
    s: float

    @property
    def r(self) -> float:
        return self.B * self.s

    @property
    def converges(self) -> bool:
        """B(||x|| + ||y||) < 1/(4K)."""
        return self.K * self.r < 0.25

    def levels(self, n_max: int) -> list:
        return [majorant(n, self.K, self.B, self.s) for n in range(1, n_max + 1)]

    def _terms(self, n_max):
        # C_{n-1} r^n by the ratio C_n / C_{n-1} = (4n - 2)/(n + 1); floats only
        out = np.empty(n_max)
        t = self.r
        for n in range(1, n_max + 1):
            out[n - 1] = t
            t *= self.r * (4 * n - 2) / (n + 1)
        return out * self.K / self.B if self.B else out * self.K

    def partial_sums(self, n_max: int) -> np.ndarray:
        return np.cumsum(self._terms(n_max))

    def limit(self) -> float:
        """Closed-form sum (finite only for r <= 1/4)."""
        if self.r > 0.25:
            return math.inf
        if self.B == 0:
            return self.K * self.s
        return self.K / self.B * self.r * catalan_generating(self.r)

    def cauchy_check(self, level: int = 200) -> dict:
        """Partial-sum behaviour at ``level``.

        Past level n every term ratio is below 4r, so for r < 1/4 the remainder
        is at most a_n 4r / (1 - 4r); for r > 1/4 the ratios eventually exceed
        one and the partial sums grow without bound.
        """
        terms = self._terms(level)
        sums = np.cumsum(terms)
        ratio = terms[-1] / terms[-2] if terms[-2] else 0.0
        q = 4 * self.r
        remainder = terms[-1] * q / (1 - q) if q < 1 else math.inf
        return {
            "level": level,
            "partial_sum": float(sums[-1]),
            "last_increment": float(terms[-1]),
            "term_ratio": float(ratio),
            "remainder_bound": float(remainder),
            "increasing_terms": bool(ratio > 1),
            "cauchy": bool(q < 1 and ratio < 1),
        }


def in_diamond(norm_x: float, norm_y: float, K: float, B: float) -> bool:
    return B * (norm_x + norm_y) < 1 / (4 * K)


def in_ball(norm_x: float, norm_y: float, K: float, B: float) -> bool:
    """Symmetric sufficient condition ||x||, ||y|| < 1/(4KB)."""
    rho = 1 / (4 * K * B)
    return norm_x < rho and norm_y < rho


# ---------------------------------------------------------------------------
# good trees


def _pure_x(t) -> bool:
    return all(lab == "x" for lab in leaves(t))


def is_good_tree(t: BinaryTree) -> bool:
    """Every internal node has one x-only child and one child containing a y.

    A bare leaf has no internal node, so it is (vacuously) good.
    """
    return _good_nodes(t)


def _good_nodes(t) -> bool:
    if isinstance(t, Leaf):
        return True
    lx, rx = _pure_x(t.left), _pure_x(t.right)
    if lx == rx:  # both pure-x, or both contain y
        return False
    return _good_nodes(t.left) and _good_nodes(t.right)


@lru_cache(maxsize=None)
def _good_counts(n: int) -> tuple:
    """(valid pure-x subtrees, valid y-containing subtrees) with n leaves."""
    if n == 1:
        return 1, 1
    ycount = 0
    for k in range(1, n):
        ax, ay = _good_counts(k)
        bx, by = _good_counts(n - k)
        ycount += ax * by + ay * bx
    return 0, ycount


def good_tree_count(n: int, cap: int = 64) -> tuple:
    """(|G_n|, |G_n| / C_{n-1}).

    Counted by recursion over subtree classes: a node is good exactly when one
    child subtree is pure-x and the other holds a y, so a pure-x subtree with
    an internal node can never appear.
    """
    _check_cap(n, cap)
    g = sum(_good_counts(n))
    return g, g / catalan(n - 1)
