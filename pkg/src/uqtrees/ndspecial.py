"""d-dimensional tree for fold-commuting operator pairs.

Works for pairs satisfying ``query_op(update_op(a, v), b) ==
update_op(query_op(a, b), v)`` (checked at construction): when only ``j`` of
the elements inside a fold absorb an update ``v``, the fold itself simply
absorbs ``v`` repeated ``j`` times, no matter *which* elements were hit.
That collapses the cross-axis bookkeeping that blocks the general case and
yields O(log n_0 * ... * log n_{d-1}) updates and queries.

Structure, recursively over axis 0:

* ``d == 1``: a plain :class:`~uqtrees.seg1d.SegTree1D`.
* ``d >= 2``: a 1D node arena over axis 0 where node ``n`` (covering ``w``
  rows) holds two (d-1)-dimensional trees over the remaining axes:

  - ``row_fold[n]``  -- the element-wise fold of the rows ``n`` covers,
  - ``row_lazy[n]``  -- pending update values, folded under ``update_op``
    itself (see :func:`uqtrees.algebra.update_fold_pair`), meaning "every
    descendant's ``row_fold`` entry at coordinate ``c`` still has to absorb
    ``row_lazy[n](c)`` repeated (descendant row count) times".

An update splits its box into the axis-0 span ``X`` and the remainder ``C``:
nodes inside ``X`` stamp ``v`` into ``row_lazy`` over ``C``; partially
overlapped nodes recurse, then repair ``row_fold`` over ``C`` with ``v``
repeated ``|overlap with X|`` times.  A query mirrors this, folding child
results and absorbing each visited node's pending values.  Queries are pure;
updates need exclusive access.

All nested trees share one visit counter, so a top-level operation's visit
count includes every inner-tree node it touched.
"""

from __future__ import annotations

from typing import List, Optional

from .algebra import OperatorPair, check_special, update_fold_pair
from .boxes import Box, check_box
from .counters import OpCounters
from .dense import DenseTensor
from .seg1d import SegTree1D


class NDTree:
    def __init__(self, tensor: DenseTensor, pair: OperatorPair, *,
                 counters: Optional[OpCounters] = None):
        if not pair.is_special:
            ok, witness = check_special(pair)
            detail = f"; counterexample (a, b, v) = {witness}" if not ok else ""
            raise ValueError(f"pair {pair.name!r} is not fold-commuting{detail}")
        self.dims = tensor.dims
        self.pair = pair
        self._own = counters is None
        self.counters = counters if counters is not None else OpCounters()
        self.line: Optional[SegTree1D] = None
        if len(self.dims) == 1:
            self.line = SegTree1D(tensor.data, pair, counters=self.counters)
            return
        n = self.dims[0]
        sub_dims = self.dims[1:]
        lazy_pair = update_fold_pair(pair)
        blank = [pair.update_identity] * (len(tensor.data) // n)
        q = pair.query_op
        self.lo: List[int] = []
        self.hi: List[int] = []
        self.left: List[int] = []
        self.right: List[int] = []
        self.row_fold: List[NDTree] = []
        self.row_lazy: List[NDTree] = []

        def build(lo, hi) -> tuple:
            # returns (index, element-wise fold of rows lo..hi)
            i = len(self.lo)
            self.lo.append(lo)
            self.hi.append(hi)
            self.left.append(-1)
            self.right.append(-1)
            self.row_fold.append(None)  # type: ignore[arg-type]
            self.row_lazy.append(None)  # type: ignore[arg-type]
            if lo == hi:
                tmp = tensor.first_axis_slice(lo)
            else:
                m = (lo + hi) // 2
                l, tl = build(lo, m)
                r, tr = build(m + 1, hi)
                self.left[i] = l
                self.right[i] = r
                tmp = [q(a, b) for a, b in zip(tl, tr)]
            self.row_fold[i] = NDTree(DenseTensor(sub_dims, tmp, pair),
                                      pair, counters=self.counters)
            self.row_lazy[i] = NDTree(DenseTensor(sub_dims, blank, lazy_pair),
                                      lazy_pair, counters=self.counters)
            return i, tmp

        build(0, n - 1)
        self.counters.visits_total += len(self.lo)

    @property
    def node_count(self) -> int:
        """Outer nodes on axis 0 (the wrapped tree's nodes for d == 1)."""
        return self.line.node_count if self.line is not None else len(self.lo)

    def update(self, box: Box, value) -> None:
        check_box(box, self.dims)
        c = self.counters
        before = c.visits_total
        if self.line is not None:
            self.line.update(box[0][0], box[0][1], value)
        else:
            self._update(box, value)
        if self._own:
            c.note_update(c.visits_total - before)

    def _update(self, box: Box, value) -> None:
        xlo, xhi = box[0]
        rest = box[1:]
        lo, hi = self.lo, self.hi
        left, right = self.left, self.right
        folds, lazies = self.row_fold, self.row_lazy
        rep = self.pair.repeat
        visits = 0

        def un(i):
            nonlocal visits
            visits += 1
            ilo = lo[i]
            ihi = hi[i]
            if xlo <= ilo and ihi <= xhi:
                lazies[i].update(rest, value)
            elif ilo <= xhi and xlo <= ihi:
                un(left[i])
                un(right[i])
                j = (ihi if ihi < xhi else xhi) - (ilo if ilo > xlo else xlo) + 1
                folds[i].update(rest, rep(value, j))

        un(0)
        self.counters.visits_total += visits

    def query(self, box: Box):
        check_box(box, self.dims)
        c = self.counters
        before = c.visits_total
        if self.line is not None:
            out = self.line.query(box[0][0], box[0][1])
        else:
            out = self._query(box)
        if self._own:
            c.note_query(c.visits_total - before)
        return out

    def _query(self, box: Box):
        xlo, xhi = box[0]
        rest = box[1:]
        lo, hi = self.lo, self.hi
        left, right = self.left, self.right
        folds, lazies = self.row_fold, self.row_lazy
        u = self.pair.update_op
        q = self.pair.query_op
        q_id = self.pair.query_identity
        rep = self.pair.repeat
        visits = 0

        def qn(i):
            nonlocal visits
            visits += 1
            ilo = lo[i]
            ihi = hi[i]
            if xlo <= ilo and ihi <= xhi:
                base = folds[i].query(rest)
                pend = lazies[i].query(rest)
                return u(base, rep(pend, ihi - ilo + 1))
            if ilo > xhi or ihi < xlo:
                return q_id
            part = q(qn(left[i]), qn(right[i]))
            pend = lazies[i].query(rest)
            j = (ihi if ihi < xhi else xhi) - (ilo if ilo > xlo else xlo) + 1
            return u(part, rep(pend, j))

        out = qn(0)
        self.counters.visits_total += visits
        return out
