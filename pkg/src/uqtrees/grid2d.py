"""2D structure for arbitrary operator pairs: a row tree of column trees.

Any pair with a constant-time aggregator fits -- no fold-commuting property
is needed -- at the price of asymmetric costs: queries visit
O(log N * log M) nodes, updates O(N log M + M log N).

An outer 1D node arena spans the rows.  Outer node ``n`` covering ``w`` rows
holds an inner :class:`~uqtrees.seg1d.SegTree1D` over the columns whose
slot ``y`` stands for the fold of column ``y`` restricted to ``n``'s rows.
Each inner slot therefore represents ``w`` real cells, which is exactly what
``SegTree1D(..., cell_weight=w)`` encodes: one slot absorbing an update
value means ``aggregator(slot, v, w)``, and the inner tree's aggregator
calls see cell counts, not slot counts.  :class:`ScaledPair` spells out the
same reweighting as an operator-pair value for law checks.

There are no pending values at the outer level.  An update splits its box
into the row span and the column span; outer nodes inside the row span
forward a lazy column update to their inner tree, while partially overlapped
outer nodes cannot be patched in place (how their column folds change
depends on which rows were hit), so they rebuild: read both children's true
column arrays, fold element-wise, and reinitialize their inner tree.
Children are always finalized before their parent rebuilds (post-order); the
rebuild events of the latest update are left in ``last_events`` for
inspection.  A query folds inner-tree column queries over the outer
decomposition of the row span and never mutates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .algebra import OperatorPair
from .boxes import Box, check_box
from .counters import OpCounters
from .dense import DenseTensor
from .seg1d import SegTree1D


@dataclass(frozen=True)
class ScaledPair:
    """The operator pair seen by an inner tree whose slots weigh ``scale`` cells.

    Element semantics: a slot absorbing ``v`` becomes ``aggregator(slot, v,
    scale)`` (exposed as :meth:`element_update`).  Stacked update values still
    combine with the *base* update operator -- applying ``x`` then ``y`` to a
    slot is one application of ``update_op(x, y)`` -- and the aggregator for
    ``k`` slots is the base aggregator for ``scale * k`` cells.
    """

    base: OperatorPair
    scale: int

    @property
    def update_op(self):
        return self.base.update_op

    @property
    def query_op(self):
        return self.base.query_op

    @property
    def update_identity(self):
        return self.base.update_identity

    @property
    def query_identity(self):
        return self.base.query_identity

    @property
    def aggregator(self):
        agg = self.base.aggregator
        x = self.scale
        return lambda a, v, k: agg(a, v, x * k)

    def element_update(self, a, v):
        return self.base.aggregator(a, v, self.scale)


class Grid2D:
    def __init__(self, tensor: DenseTensor, pair: OperatorPair, *,
                 counters: Optional[OpCounters] = None):
        if len(tensor.dims) != 2:
            raise ValueError(f"need a 2D tensor, got extents {tensor.dims}")
        self.dims = tensor.dims
        self.pair = pair
        self._own = counters is None
        self.counters = counters if counters is not None else OpCounters()
        n, m = tensor.dims
        q = pair.query_op
        self.lo: List[int] = []
        self.hi: List[int] = []
        self.left: List[int] = []
        self.right: List[int] = []
        self.inner: List[SegTree1D] = []
        self.last_events: List[Tuple[str, int]] = []

        def build(lo, hi) -> tuple:
            i = len(self.lo)
            self.lo.append(lo)
            self.hi.append(hi)
            self.left.append(-1)
            self.right.append(-1)
            self.inner.append(None)  # type: ignore[arg-type]
            if lo == hi:
                tmp = tensor.first_axis_slice(lo)
            else:
                mid = (lo + hi) // 2
                l, tl = build(lo, mid)
                r, tr = build(mid + 1, hi)
                self.left[i] = l
                self.right[i] = r
                tmp = [q(a, b) for a, b in zip(tl, tr)]
            self.inner[i] = SegTree1D(tmp, pair, cell_weight=hi - lo + 1,
                                      counters=self.counters)
            return i, tmp

        build(0, n - 1)
        self.counters.visits_total += len(self.lo)

    @property
    def node_count(self) -> int:
        return len(self.lo)

    def update(self, box: Box, value) -> None:
        check_box(box, self.dims)
        c = self.counters
        before = c.visits_total
        (xlo, xhi), (ylo, yhi) = box
        lo, hi = self.lo, self.hi
        left, right = self.left, self.right
        inner = self.inner
        q = self.pair.query_op
        events: List[Tuple[str, int]] = []
        visits = 0

        def un(i):
            nonlocal visits
            visits += 1
            ilo = lo[i]
            ihi = hi[i]
            if xlo <= ilo and ihi <= xhi:
                # no pending values at the outer level: every node inside the
                # row span, descendants included, updates its own column tree
                if left[i] >= 0:
                    un(left[i])
                    un(right[i])
                inner[i].update(ylo, yhi, value)
                events.append(("inner-update", i))
            elif ilo <= xhi and xlo <= ihi:
                un(left[i])
                un(right[i])
                cols_l = inner[left[i]].to_array()
                cols_r = inner[right[i]].to_array()
                inner[i].reinit([q(a, b) for a, b in zip(cols_l, cols_r)])
                events.append(("rebuild", i))

        un(0)
        self.last_events = events
        c.visits_total += visits
        if self._own:
            c.note_update(c.visits_total - before)

    def query(self, box: Box):
        check_box(box, self.dims)
        c = self.counters
        before = c.visits_total
        (xlo, xhi), (ylo, yhi) = box
        lo, hi = self.lo, self.hi
        left, right = self.left, self.right
        inner = self.inner
        q = self.pair.query_op
        q_id = self.pair.query_identity
        visits = 0

        def qn(i):
            nonlocal visits
            visits += 1
            ilo = lo[i]
            ihi = hi[i]
            if xlo <= ilo and ihi <= xhi:
                return inner[i].query(ylo, yhi)
            if ilo > xhi or ihi < xlo:
                return q_id
            return q(qn(left[i]), qn(right[i]))

        out = qn(0)
        c.visits_total += visits
        if self._own:
            c.note_query(c.visits_total - before)
        return out
