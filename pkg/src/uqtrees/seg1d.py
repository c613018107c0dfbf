"""1D segment tree with lazy update values.

Nodes live in an index-addressed arena of parallel lists, built once; node 0
is the root and covers ``[0, N-1]``.  A node over ``[l, r]`` with ``l < r``
splits at ``m = (l + r) // 2`` into ``[l, m]`` and ``[m+1, r]``, which gives
exactly ``2N - 1`` nodes for any N, power of two or not.

Each node ``n`` caches two things:

* ``val[n]`` -- the fold (under ``query_op``) of a snapshot of the elements
  it covers, and
* ``laz[n]`` -- a pending update value meaning "every element below here
  still has to absorb ``laz[n]``"; equivalently, the fold cached at any
  descendant ``m`` must be read as ``aggregator(val[m], laz[n], size[m])``.

``update`` stamps the pending value onto the maximal nodes fully inside the
target span (the same nodes :meth:`decompose` returns) and repairs ``val``
on the partially covered nodes above them, children first::

    val[n] = query_op(aggregator(val[l], laz[l], size[l]),
                      aggregator(val[r], laz[r], size[r]))

``query`` never pushes pending values down -- it accumulates them on the way
back up -- so queries are pure and any number of readers may run
concurrently; ``update`` needs exclusive access.  Both visit O(log N) nodes.

``cell_weight`` scales every node size: a tree whose slots each stand for
``w`` real cells (the 2D structure in :mod:`uqtrees.grid2d` uses this) gets
correct aggregator calls simply by building with ``cell_weight=w``.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .algebra import OperatorPair
from .counters import OpCounters
from .dense import DenseTensor


class ValidationError(AssertionError):
    pass


class SegTree1D:
    def __init__(self, values: Sequence, pair: OperatorPair, *,
                 cell_weight: int = 1, counters: Optional[OpCounters] = None):
        if len(values) == 0:
            raise ValueError("cannot build over an empty array")
        self.size = len(values)
        self.pair = pair
        self.cell_weight = cell_weight
        self._own = counters is None
        self.counters = counters if counters is not None else OpCounters()
        n = self.size
        self.lo: List[int] = []
        self.hi: List[int] = []
        self.sz: List[int] = []  # covered cells, pre-scaled by cell_weight
        self.left: List[int] = []
        self.right: List[int] = []
        self.val: list = []
        self.laz: list = []
        self.last_lazy_spans: List[Tuple[int, int]] = []
        self._build(values, 0, n - 1)
        self.counters.visits_total += self.node_count

    def _build(self, values, lo, hi) -> int:
        i = len(self.lo)
        self.lo.append(lo)
        self.hi.append(hi)
        self.sz.append((hi - lo + 1) * self.cell_weight)
        self.left.append(-1)
        self.right.append(-1)
        self.val.append(None)
        self.laz.append(self.pair.update_identity)
        if lo == hi:
            self.val[i] = values[lo]
        else:
            m = (lo + hi) // 2
            l = self._build(values, lo, m)
            r = self._build(values, m + 1, hi)
            self.left[i] = l
            self.right[i] = r
            self.val[i] = self.pair.query_op(self.val[l], self.val[r])
        return i

    @property
    def node_count(self) -> int:
        return len(self.lo)

    def reinit(self, values: Sequence) -> None:
        """Reset folds from fresh leaf values, clearing all pending updates.

        Reuses the arena (the shape never changes); counts one visit per node.
        """
        if len(values) != self.size:
            raise ValueError("length mismatch")
        lo, left, right = self.lo, self.left, self.right
        val, laz = self.val, self.laz
        u_id = self.pair.update_identity
        q = self.pair.query_op
        for i in range(self.node_count - 1, -1, -1):
            l = left[i]
            val[i] = values[lo[i]] if l < 0 else q(val[l], val[right[i]])
            laz[i] = u_id
        self.counters.visits_total += self.node_count

    def _check(self, qlo: int, qhi: int) -> None:
        if qlo > qhi or qlo < 0 or qhi >= self.size:
            raise ValueError(f"span ({qlo}, {qhi}) out of bounds for length {self.size}")

    def update(self, qlo: int, qhi: int, value) -> None:
        self._check(qlo, qhi)
        lo, hi = self.lo, self.hi
        left, right, sz = self.left, self.right, self.sz
        val, laz = self.val, self.laz
        u = self.pair.update_op
        q = self.pair.query_op
        agg = self.pair.aggregator
        touched: List[Tuple[int, int]] = []
        visits = 0

        def un(i):
            nonlocal visits
            visits += 1
            ilo = lo[i]
            ihi = hi[i]
            if qlo <= ilo and ihi <= qhi:
                laz[i] = u(laz[i], value)
                touched.append((ilo, ihi))
            elif ilo <= qhi and qlo <= ihi:
                l = left[i]
                r = right[i]
                un(l)
                un(r)
                val[i] = q(agg(val[l], laz[l], sz[l]), agg(val[r], laz[r], sz[r]))

        un(0)
        self.last_lazy_spans = touched
        self.counters.visits_total += visits
        if self._own:
            self.counters.note_update(visits)

    def query(self, qlo: int, qhi: int):
        self._check(qlo, qhi)
        lo, hi = self.lo, self.hi
        left, right, sz = self.left, self.right, self.sz
        val, laz = self.val, self.laz
        q = self.pair.query_op
        agg = self.pair.aggregator
        q_id = self.pair.query_identity
        w = self.cell_weight
        visits = 0

        def qn(i):
            nonlocal visits
            visits += 1
            ilo = lo[i]
            ihi = hi[i]
            if qlo <= ilo and ihi <= qhi:
                return agg(val[i], laz[i], sz[i])
            if ilo > qhi or ihi < qlo:
                return q_id
            part = q(qn(left[i]), qn(right[i]))
            span = (ihi if ihi < qhi else qhi) - (ilo if ilo > qlo else qlo) + 1
            return agg(part, laz[i], span * w)

        out = qn(0)
        self.counters.visits_total += visits
        if self._own:
            self.counters.note_query(visits)
        return out

    def decompose(self, qlo: int, qhi: int) -> List[Tuple[int, int]]:
        """The canonical disjoint node spans whose union is ``[qlo, qhi]``.

        At most ``2 * ceil(log2 N)`` spans for N >= 2 (a single span for
        N == 1); these are exactly the nodes an update stamps its pending
        value onto.
        """
        self._check(qlo, qhi)
        lo, hi = self.lo, self.hi
        left, right = self.left, self.right
        out: List[Tuple[int, int]] = []
        visits = 0

        def walk(i):
            nonlocal visits
            visits += 1
            ilo = lo[i]
            ihi = hi[i]
            if qlo <= ilo and ihi <= qhi:
                out.append((ilo, ihi))
            elif ilo <= qhi and qlo <= ihi:
                walk(left[i])
                walk(right[i])

        walk(0)
        self.counters.visits_total += visits
        return out

    def to_array(self) -> list:
        """True element values, one pass: exactly ``node_count`` visits.

        Walks the tree once, carrying the combined pending values of the
        ancestors; each leaf emits ``aggregator(val, carried, leaf size)``.
        """
        lo, left, right = self.lo, self.left, self.right
        val, laz = self.val, self.laz
        u = self.pair.update_op
        agg = self.pair.aggregator
        w = self.cell_weight
        out = [None] * self.size

        def dfs(i, z):
            z = u(z, laz[i])
            l = left[i]
            if l < 0:
                out[lo[i]] = agg(val[i], z, w)
            else:
                dfs(l, z)
                dfs(right[i], z)

        dfs(0, self.pair.update_identity)
        self.counters.visits_total += self.node_count
        return out

    def validate(self, reference: DenseTensor) -> None:
        """Check every node's effective fold against a same-history oracle.

        The effective fold of node ``n`` is ``aggregator(val[n], z, size[n])``
        with ``z`` the combination of pending values on the path from the
        root down to and including ``n``; it must equal the oracle fold of
        the span ``n`` covers.  Raises :class:`ValidationError` naming the
        first offending node.
        """
        if reference.dims != (self.size,):
            raise ValueError("reference shape mismatch")
        agg = self.pair.aggregator
        u = self.pair.update_op
        stack = [(0, self.pair.update_identity)]
        while stack:
            i, z = stack.pop()
            z = u(z, self.laz[i])
            got = agg(self.val[i], z, self.sz[i])
            want = reference.query(((self.lo[i], self.hi[i]),))
            if got != want:
                raise ValidationError(
                    f"node {i} over [{self.lo[i]}, {self.hi[i]}]: "
                    f"effective fold {got!r} != oracle {want!r}")
            if self.left[i] >= 0:
                stack.append((self.left[i], z))
                stack.append((self.right[i], z))
