"""Rank transformation and the empirical copula.

The pseudo-observations of an n x d data matrix are the per-column ranks
scaled by 1/(n+1); the empirical copula is the step function

    Chat(u) = #{i : U_i <= u componentwise} / (n + 1).

The 1/(n+1) scaling means Chat(1, ..., 1) = n/(n+1): the empirical copula
is deliberately a sub-copula.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata

from .errors import InputError


def as_data_matrix(data):
    """Coerce raw observations to a validated (n, d) float matrix."""
    X = np.asarray(data, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise InputError(f"expected a 2-D data matrix, got shape {X.shape}")
    if np.isnan(X).any():
        raise InputError("data contains NaN entries")
    return X


@dataclass(frozen=True)
class PseudoSample:
    """Rank-transformed observations in (0, 1)^d.

    ``ties`` flags columns of the raw data that contained ties, which were
    resolved by average ranks.
    """

    U: np.ndarray
    ties: bool = False

    @property
    def n(self):
        return self.U.shape[0]

    @property
    def d(self):
        return self.U.shape[1]


def pseudo_observations(data):
    """Rank-transform raw data to a :class:`PseudoSample`.

    Invariant under strictly increasing per-column transformations of the
    input.  Ties within a column are resolved by average ranks and flagged.
    """
    X = as_data_matrix(data)
    n, d = X.shape
    U = np.empty_like(X)
    ties = False
    for j in range(d):
        col = X[:, j]
        ties = ties or np.unique(col).size < n
        U[:, j] = rankdata(col, method="average") / (n + 1.0)
    return PseudoSample(U=U, ties=ties)


def _count_dominated_naive(rows, queries, block=256):
    """#{i : rows_i <= q componentwise} for each query row, in blocks."""
    counts = np.empty(queries.shape[0], dtype=np.int64)
    for start in range(0, queries.shape[0], block):
        q = queries[start : start + block]
        dominated = (rows[None, :, :] <= q[:, None, :]).all(axis=2)
        counts[start : start + block] = dominated.sum(axis=1)
    return counts


def _count_dominated_sweep(U):
    """Bivariate pairwise domination counts by a Fenwick-tree sweep.

    O(n log n); used for eval_at_sample when d = 2.  Equal first
    coordinates are processed in batches so that ties count mutually.
    """
    n = U.shape[0]
    y_sorted = np.unique(U[:, 1])
    y_rank = np.searchsorted(y_sorted, U[:, 1]) + 1  # 1-based dense ranks
    size = y_sorted.size
    tree = [0] * (size + 1)

    def update(i):
        while i <= size:
            tree[i] += 1
            i += i & (-i)

    def query(i):
        s = 0
        while i > 0:
            s += tree[i]
            i -= i & (-i)
        return s

    order = np.lexsort((U[:, 1], U[:, 0]))
    counts = np.empty(n, dtype=np.int64)
    i = 0
    while i < n:
        j = i
        while j < n and U[order[j], 0] == U[order[i], 0]:
            j += 1
        for k in range(i, j):
            update(int(y_rank[order[k]]))
        for k in range(i, j):
            counts[order[k]] = query(int(y_rank[order[k]]))
        i = j
    return counts


@dataclass
class EmpiricalCopula:
    """Step-function copula estimate built from a :class:`PseudoSample`."""

    sample: PseudoSample
    _at_sample: np.ndarray = field(default=None, repr=False)

    @property
    def n(self):
        return self.sample.n

    @property
    def d(self):
        return self.sample.d

    def eval(self, u):
        """Chat(u) = #{i : U_i <= u} / (n + 1) for one or many points u."""
        pts = np.asarray(u, dtype=float)
        single = pts.ndim == 1
        if single:
            pts = pts[None, :]
        if pts.shape[1] != self.d:
            raise InputError(f"query dimension {pts.shape[1]} != sample dimension {self.d}")
        if np.isnan(pts).any():
            raise InputError("query points contain NaN")
        if (pts < 0).any() or (pts > 1).any():
            raise InputError("query points must lie in [0, 1]^d")
        counts = _count_dominated_naive(self.sample.U, pts)
        vals = counts / (self.n + 1.0)
        return float(vals[0]) if single else vals

    def eval_at_sample(self):
        """Vector (Chat(U_1), ..., Chat(U_n)); cached after the first call."""
        if self._at_sample is None:
            U = self.sample.U
            if self.d == 2:
                counts = _count_dominated_sweep(U)
            else:
                counts = _count_dominated_naive(U, U)
            self._at_sample = counts / (self.n + 1.0)
        return self._at_sample
