"""Exact rank of large sparse matrices by Gaussian elimination with a greedy low-fill pivot order."""

from __future__ import annotations

import heapq
from collections import defaultdict

import numpy as np

from .fields import Field, PrimeField


def sparse_rank(fld: Field, rows, cols, vals) -> int:
    """Rank of the matrix with entries ``vals`` at ``(rows, cols)``; repeated positions are summed."""
    if isinstance(fld, PrimeField):
        p = fld.p

        def norm(x):
            return int(x) % p

        def inv(x):
            return pow(x, -1, p)

    else:
        p = None

        def norm(x):
            return fld(x)

        inv = fld.inv
    table: dict = defaultdict(dict)
    for r, c, v in zip(np.asarray(rows).tolist(), np.asarray(cols).tolist(), np.asarray(vals).tolist()):
        table[r][c] = table[r].get(c, 0) + v
    for r in list(table):
        row = {c: norm(v) for c, v in table[r].items()}
        row = {c: v for c, v in row.items() if v != 0}
        if row:
            table[r] = row
        else:
            del table[r]
    where = defaultdict(set)  # column -> rows containing it
    for r, row in table.items():
        for c in row:
            where[c].add(r)
    heap = [(len(row), r) for r, row in table.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        length, r = heapq.heappop(heap)
        row = table.get(r)
        if row is None or len(row) != length:
            continue  # stale entry
        c = min(row, key=lambda k: (len(where[k]), k))
        scale = inv(row[c])
        rank += 1
        del table[r]
        for k in row:
            where[k].discard(r)
        for other in list(where[c]):
            target = table[other]
            f = target[c] * scale
            for k, v in row.items():
                nv = target.get(k, 0) - f * v
                if p is not None:
                    nv %= p
                if nv == 0:
                    if k in target:
                        del target[k]
                        where[k].discard(other)
                else:
                    if k not in target:
                        where[k].add(other)
                    target[k] = nv
            if target:
                heapq.heappush(heap, (len(target), other))
            else:
                del table[other]
        where.pop(c, None)
    return rank


__all__ = ["sparse_rank"]
