"""Independent brute-force oracles for small spaces.

Everything here works from first definitions by enumerating all subsets,
deliberately avoiding the minimal-open shortcuts used by the library.
Only usable for spaces with a handful of points.
"""

from itertools import chain, combinations

from cislim.finspace import CtsMap, FinSpace


def all_subsets(points):
    pts = sorted(points)
    return [frozenset(c) for r in range(len(pts) + 1) for c in combinations(pts, r)]


def open_sets(space: FinSpace):
    """All open sets: unions of minimal opens, i.e. sets containing U_x per point."""
    return [s for s in all_subsets(space.points) if all(space.min_open[x] <= s for x in s)]


def closed_sets(space: FinSpace):
    """Complements of open sets; downward-closed families under specialization."""
    return [space.points - o for o in open_sets(space)]


def brute_closure(space: FinSpace, a):
    a = frozenset(a)
    return min((c for c in closed_sets(space) if a <= c), key=len)


def brute_continuous(m: CtsMap):
    return all(m.preimage(o) in set(open_sets(m.source)) for o in open_sets(m.target))


def brute_closed_map(m: CtsMap):
    closed_tgt = set(closed_sets(m.target))
    return all(m.image(c) in closed_tgt for c in closed_sets(m.source))


def brute_embedding(m: CtsMap):
    if len(set(m.assignment.values())) != len(m.assignment):
        return False
    if not brute_continuous(m):
        return False
    img = m.image()
    image_opens = {o & img for o in open_sets(m.target)}
    pushed_opens = {m.image(o) for o in open_sets(m.source)}
    return pushed_opens == image_opens


def brute_quotient_min_open(space: FinSpace, label: dict):
    """Minimal opens of the quotient topology, from the full open-set family."""
    classes = sorted(set(label.values()))
    class_sets = [frozenset(c) for r in range(len(classes) + 1) for c in combinations(classes, r)]
    opens_up = set(open_sets(space))
    q_opens = [
        cs for cs in class_sets
        if frozenset(p for p in space.points if label[p] in cs) in opens_up
    ]
    out = {}
    for c in classes:
        out[c] = min((cs for cs in q_opens if c in cs), key=len)
    return out


def brute_final_min_open(points, maps):
    """Minimal opens of the finest topology making every map continuous."""
    pts = frozenset(points)
    opens = []
    for s in all_subsets(pts):
        ok = True
        for m in maps:
            pre = frozenset(p for p, q in m.assignment.items() if q in s)
            if not m.source.is_open(pre):
                ok = False
                break
        if ok:
            opens.append(s)
    out = {}
    for x in pts:
        out[x] = min((s for s in opens if x in s), key=len)
    return out


def powerset_nonempty(iterable):
    s = sorted(iterable)
    return [frozenset(c) for c in chain.from_iterable(combinations(s, r) for r in range(1, len(s) + 1))]
