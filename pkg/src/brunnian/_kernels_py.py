"""Pure-Python versions of the compiled kernels.

``bracket_histogram`` contracts crossings one at a time and merges partial
states that leave the same open-end pairing.  Plain enumeration of all 2**c
states would be far too slow for the 20+ crossing diagrams certified here.
The compiled module runs the same algorithm and imports the crossing order
from this file.
"""

from __future__ import annotations

from collections import defaultdict

import numpy as np


def _crossing_order(pd):
    """Greedy order that keeps the set of half-processed arcs small."""
    c = len(pd)
    remaining = set(range(c))
    seen = defaultdict(int)
    order = []
    while remaining:
        best = min(remaining, key=lambda i: (-sum(seen[x] == 1 for x in pd[i]), i))
        remaining.discard(best)
        order.append(best)
        for x in pd[best]:
            seen[x] += 1
    return order


def _join(match, x, y, loops):
    """Join the path ends at arc labels x and y; returns the updated loop count."""
    if x == y:
        if x in match:
            # both occurrences of x sit in this pair: the path through x closes
            del match[x]
            return loops + 1
        return loops + 1
    px = match.pop(x, None)
    py = match.pop(y, None)
    if px is None and py is None:
        match[x] = y
        match[y] = x
        return loops
    if px is None:
        # x is fresh; path from py now ends at x
        match[py] = x
        match[x] = py
        return loops
    if py is None:
        match[px] = y
        match[y] = px
        return loops
    if px == y:
        return loops + 1
    match[px] = py
    match[py] = px
    return loops


def bracket_histogram(pd, narcs):
    pd = [tuple(int(v) for v in row) for row in np.asarray(pd).reshape(-1, 4)]
    c = len(pd)
    hist = np.zeros((c + 1, narcs + 2), dtype=np.int64)
    if c == 0:
        hist[0, 0] = 1
        return hist
    # state key: sorted tuple of open pairs -> {(a, loops): count}
    states = {(): {(0, 0): 1}}
    for i in _crossing_order(pd):
        a, b, cc, d = pd[i]
        nxt = defaultdict(lambda: defaultdict(int))
        for key, tally in states.items():
            for set_bit, pairs in ((1, ((a, b), (cc, d))), (0, ((a, d), (b, cc)))):
                match = {}
                for u, v in key:
                    match[u] = v
                    match[v] = u
                closed = 0
                for u, v in pairs:
                    closed = _join(match, u, v, closed)
                newkey = tuple(sorted((u, v) for u, v in match.items() if u < v))
                bucket = nxt[newkey]
                for (na, nl), cnt in tally.items():
                    bucket[(na + set_bit, nl + closed)] += cnt
        states = nxt
    for (na, nl), cnt in states[()].items():
        hist[na, nl] += cnt
    return hist


def fourier_clausen(x, nterms):
    k = np.arange(int(nterms), 0, -1, dtype=np.float64)
    return float(np.sum(np.sin(k * x) / (k * k)))
