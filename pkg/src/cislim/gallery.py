"""Canonical example systems at desk scale, plus the bounded search for
limit spaces that fail to be fundamental.

Sphere models grow by adding each new antipodal pair as *open* points, so
that every older model sits inside the next as a closed subspace and the
equatorial inclusion is a closed embedding.  (The more common minimal
models add new points closed, which would break closedness of the
inclusions and hence the system axioms.)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .cis import Cis, Cutoff, Stationary, make_stage, validate_cis
from .finspace import CtsMap, FinSpace, TopologyError, product
from .limit import LimitSpace, build_fundamental, has_weak_topology, verify_limit_axioms

MAX_CHAIN = 6
MAX_TORUS = 3


def point_space(label: str = "pt") -> FinSpace:
    return FinSpace(frozenset({label}), {label: frozenset({label})})


def sierpinski_space() -> FinSpace:
    return FinSpace(frozenset("ab"), {"a": frozenset("a"), "b": frozenset("ab")})


def discrete_space(labels) -> FinSpace:
    labels = frozenset(labels)
    return FinSpace(labels, {p: frozenset({p}) for p in labels})


def sphere_space(n: int) -> FinSpace:
    """The 2n+2 point sphere model: pole pair at every level, new pairs open."""
    if n < 0:
        raise TopologyError("sphere dimension must be >= 0")
    levels = [("a", "b")] + [(f"p{k}", f"q{k}") for k in range(1, n + 1)]
    points = [p for pair in levels for p in pair]
    min_open = {}
    for k, pair in enumerate(levels):
        above = frozenset(p for later in levels[k + 1 :] for p in later)
        for p in pair:
            min_open[p] = frozenset({p}) | above
    return FinSpace(frozenset(points), min_open)


def interval_space(i: int) -> FinSpace:
    """Three-point interval: open midpoint under two closed endpoints."""
    l, m, r = f"l{i}", f"m{i}", f"r{i}"
    return FinSpace(
        frozenset({l, m, r}),
        {m: frozenset({m}), l: frozenset({l, m}), r: frozenset({r, m})},
    )


def torus_space(n: int) -> FinSpace:
    """Product of n copies of the 4-point circle."""
    if n < 1:
        raise TopologyError("torus dimension must be >= 1")
    out = sphere_space(1)
    for _ in range(n - 1):
        out = product(out, sphere_space(1))
    return out


def identity_system(space: FinSpace, stages: int, stationary: bool = False) -> Cis:
    if stages < 1:
        raise TopologyError("need at least one stage")
    sts = []
    for i in range(stages):
        nxt = space if i < stages - 1 else None
        sts.append(make_stage(space, space.points, nxt, {p: p for p in space.points}))
    tail = Stationary(stages - 1) if stationary else Cutoff()
    return Cis(tuple(sts), tail)


def sphere_chain(n: int, stationary: bool = False) -> Cis:
    """S^0 through S^n with equatorial (label-identical) inclusions."""
    if not 0 <= n <= MAX_CHAIN:
        raise TopologyError(f"sphere chain truncation must be within 0..{MAX_CHAIN}")
    spheres = [sphere_space(k) for k in range(n + 1)]
    sts = []
    for k, sp in enumerate(spheres):
        nxt = spheres[k + 1] if k < n else None
        sts.append(make_stage(sp, sp.points, nxt, {p: p for p in sp.points}))
    tail = Stationary(n) if stationary else Cutoff()
    return Cis(tuple(sts), tail)


def stationary_sphere(n: int) -> Cis:
    return sphere_chain(n, stationary=True)


def torus_chain(n: int) -> Cis:
    """T^1 through T^n, each included at the closed basepoint of a new circle factor."""
    if not 1 <= n <= MAX_TORUS:
        raise TopologyError(f"torus chain truncation must be within 1..{MAX_TORUS}")
    tori = [torus_space(k) for k in range(1, n + 1)]
    sts = []
    for k, sp in enumerate(tori):
        if k < n - 1:
            sts.append(make_stage(sp, sp.points, tori[k + 1], {p: f"({p},a)" for p in sp.points}))
        else:
            sts.append(make_stage(sp, sp.points, None, None))
    return Cis(tuple(sts), Cutoff())


def interval_chain(n: int) -> Cis:
    """n abutting intervals, each right endpoint glued to the next left one.

    Consecutive attachment images miss the consecutive gluing sets, so the
    system is finitely semicomponible and the limit is one long interval.
    """
    if not 1 <= n <= MAX_CHAIN:
        raise TopologyError(f"interval chain length must be within 1..{MAX_CHAIN}")
    spaces = [interval_space(i) for i in range(n)]
    sts = []
    for i, sp in enumerate(spaces):
        if i < n - 1:
            sts.append(make_stage(sp, {f"r{i}"}, spaces[i + 1], {f"r{i}": f"l{i + 1}"}))
        else:
            sts.append(make_stage(sp, {f"r{i}"}, None, None))
    return Cis(tuple(sts), Cutoff())


def non_semicomponible() -> Cis:
    """Three stages whose first attachment image misses the second gluing set."""
    x0 = sierpinski_space()
    x1 = discrete_space("cd")
    x2 = point_space("e")
    return Cis(
        (
            make_stage(x0, {"b"}, x1, {"b": "d"}),
            make_stage(x1, {"c"}, x2, {"c": "e"}),
            make_stage(x2, {"e"}, None, None),
        ),
        Cutoff(),
    )


_BASE_SPACES = {
    "point": point_space,
    "sierpinski": sierpinski_space,
    "circle": lambda: sphere_space(1),
}


def build_example(name: str, *params, stationary: bool = False) -> Cis:
    """Gallery dispatcher used by the command line; raises on unknown names
    or parameters outside the documented caps."""
    if name == "identity":
        base = str(params[0]) if params else "sierpinski"
        stages = int(params[1]) if len(params) > 1 else 3
        if base not in _BASE_SPACES:
            raise TopologyError(f"unknown base space {base!r}; pick from {sorted(_BASE_SPACES)}")
        if not 1 <= stages <= MAX_CHAIN:
            raise TopologyError(f"identity system length must be within 1..{MAX_CHAIN}")
        return identity_system(_BASE_SPACES[base](), stages, stationary=stationary)
    if name == "sphere_chain":
        return sphere_chain(int(params[0]) if params else 2, stationary=stationary)
    if name == "stationary_sphere":
        return stationary_sphere(int(params[0]) if params else 2)
    if name == "torus_chain":
        return torus_chain(int(params[0]) if params else 2)
    if name == "interval_chain":
        return interval_chain(int(params[0]) if params else 3)
    if name == "non_semicomponible":
        return non_semicomponible()
    raise TopologyError(f"unknown gallery system {name!r}")


GALLERY_NAMES = (
    "identity",
    "sphere_chain",
    "stationary_sphere",
    "torus_chain",
    "interval_chain",
    "non_semicomponible",
)


@dataclass(frozen=True)
class NonFundamentalSearch:
    """Outcome of the exhaustive topology search.

    status "undecided" means the limit was larger than the cap and nothing
    was enumerated; "completed" means every Alexandrov topology on the
    limit's point set was examined.
    """

    status: str  # "completed" | "undecided"
    found: tuple[LimitSpace, ...]
    examined: int


def _all_preorder_spaces(points: tuple[str, ...]):
    """Every reflexive transitive relation on the points, as a FinSpace."""
    n = len(points)
    others = [[j for j in range(n) if j != i] for i in range(n)]
    rows_choices = []
    for i in range(n):
        rows = []
        for mask in range(1 << (n - 1)):
            row = 1 << i
            for b, j in enumerate(others[i]):
                if mask >> b & 1:
                    row |= 1 << j
            rows.append(row)
        rows_choices.append(rows)
    for combo in iproduct(*rows_choices):
        transitive = True
        for i in range(n):
            row = combo[i]
            rest = row
            while rest:
                j = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if combo[j] & ~row:
                    transitive = False
                    break
            if not transitive:
                break
        if not transitive:
            continue
        min_open = {
            points[i]: frozenset(points[j] for j in range(n) if combo[i] >> j & 1)
            for i in range(n)
        }
        yield FinSpace(frozenset(points), min_open)


def search_non_fundamental(c: Cis, cap: int = 4) -> NonFundamentalSearch:
    """Exhaustively look for limit spaces of c that are not fundamental.

    Enumerates every topology on the fundamental limit's point set, keeps
    the candidates that satisfy the limit-space axioms with the same stage
    assignments, and returns those without the weak topology.
    """
    rep = validate_cis(c)
    if not rep.ok:
        raise TopologyError("cannot search an invalid system:\n" + rep.render())
    base = build_fundamental(c)
    pts = tuple(sorted(base.x.points))
    if len(pts) > cap:
        return NonFundamentalSearch("undecided", (), 0)
    found = []
    examined = 0
    for space in _all_preorder_spaces(pts):
        examined += 1
        cand = LimitSpace(
            space,
            tuple(CtsMap(phi.source, space, phi.assignment) for phi in base.phis),
        )
        if not verify_limit_axioms(c, cand).passed:
            continue
        if not has_weak_topology(c, cand):
            found.append(cand)
    return NonFundamentalSearch("completed", tuple(found), examined)
