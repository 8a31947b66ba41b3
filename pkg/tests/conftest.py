import sys
from pathlib import Path

import hypothesis.strategies as st
import pytest
from hypothesis import assume

sys.path.insert(0, str(Path(__file__).parent))

from cislim.finspace import CtsMap, FinSpace


@pytest.fixture
def sierpinski():
    return FinSpace(frozenset("ab"), {"a": frozenset("a"), "b": frozenset("ab")})


@pytest.fixture
def circle4():
    # Minimal circle model: two open arcs p,q under two closed poles a,b.
    return FinSpace(
        frozenset("abpq"),
        {
            "a": frozenset("apq"),
            "b": frozenset("bpq"),
            "p": frozenset("p"),
            "q": frozenset("q"),
        },
    )


def space_from_edges(n: int, edges) -> FinSpace:
    """Reflexive-transitive closure of a digraph on n points, read as minimal opens."""
    labels = [f"x{i}" for i in range(n)]
    reach = {i: {i} for i in range(n)}
    changed = True
    while changed:
        changed = False
        for i, j in edges:
            add = reach[j] - reach[i]
            if add:
                reach[i] |= add
                changed = True
    return FinSpace(
        frozenset(labels),
        {labels[i]: frozenset(labels[j] for j in reach[i]) for i in range(n)},
    )


@st.composite
def finspaces(draw, max_points: int = 5):
    n = draw(st.integers(min_value=1, max_value=max_points))
    edges = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
            max_size=2 * n,
        )
    )
    return space_from_edges(n, edges)


@st.composite
def spaces_with_subsets(draw, max_points: int = 5):
    space = draw(finspaces(max_points))
    pts = sorted(space.points)
    a = draw(st.sets(st.sampled_from(pts)))
    return space, frozenset(a)


@st.composite
def continuous_maps(draw, max_points: int = 4, source=None, target=None):
    """A genuinely continuous map: each point's image is drawn from the
    targets still compatible with the relation constraints of the points
    assigned so far; draws that paint themselves into a corner are retried."""
    src = source if source is not None else draw(finspaces(max_points))
    tgt = target if target is not None else draw(finspaces(max_points))
    asg = {}
    for p in sorted(src.points):
        allowed = [
            t
            for t in sorted(tgt.points)
            if all(asg[q] in tgt.min_open[t] for q in src.min_open[p] if q in asg)
            and all(
                t in tgt.min_open[asg[q]]
                for q in sorted(src.points)
                if q in asg and p in src.min_open[q]
            )
        ]
        assume(allowed)
        asg[p] = draw(st.sampled_from(allowed))
    return CtsMap(src, tgt, asg)
