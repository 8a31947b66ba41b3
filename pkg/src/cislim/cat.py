"""The category of closed injective systems: stagewise morphisms, their
composition and isomorphisms, the induced map between fundamental limits,
and direct limits of finite chains of systems.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cis import Cis, Stage, make_stage, validate_cis
from .finspace import (
    CtsMap,
    TopologyError,
    classify_map,
    compose,
    final_space,
    restrict_map,
    subspace,
)
from .limit import LimitSpace, attaching_space, build_fundamental


@dataclass(frozen=True)
class CisMorphism:
    """A stagewise family of closed continuous maps h_i: X_i -> Z_i that
    sends gluing sets into gluing sets and commutes with the attachments."""

    source: Cis
    target: Cis
    h: tuple[CtsMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(self.h))
        if self.source.stage_count != self.target.stage_count:
            raise TopologyError("morphism between systems of different lengths")
        if type(self.source.tail) is not type(self.target.tail):
            raise TopologyError("morphism between systems with incompatible tails")
        if len(self.h) != self.source.stage_count:
            raise TopologyError("morphism needs one stage map per stage")
        for i, m in enumerate(self.h):
            if m.source != self.source.stages[i].space:
                raise TopologyError(f"stage map {i} is not defined on the source stage")
            if m.target != self.target.stages[i].space:
                raise TopologyError(f"stage map {i} does not land in the target stage")


@dataclass(frozen=True)
class MorphismValidation:
    failures: tuple[tuple[int, str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self) -> str:
        if not self.failures:
            return "valid cis-morphism"
        return "\n".join(f"stage {i}: {clause}: {detail}" for i, clause, detail in self.failures)


def validate_morphism(m: CisMorphism) -> MorphismValidation:
    failures = []
    for i, (st, tt, hi) in enumerate(zip(m.source.stages, m.target.stages, m.h)):
        prof = classify_map(hi)
        if not prof.continuous:
            failures.append((i, "stage map continuous", "minimal opens are not respected"))
        if not prof.closed:
            failures.append((i, "stage map closed", "some point-closure image is not closed"))
        escaped = sorted(frozenset(hi(y) for y in st.y) - tt.y)
        if escaped:
            failures.append(
                (i, "gluing sets preserved", f"images {escaped} leave the target gluing set")
            )
    for i in range(m.source.stage_count - 1):
        st = m.source.stages[i]
        tt = m.target.stages[i]
        if st.f is None or tt.f is None:
            continue
        for y in sorted(st.y):
            hy = m.h[i](y)
            if hy not in tt.y:
                continue  # already reported by the gluing-set clause
            left = m.h[i + 1](st.f(y))
            right = tt.f(hy)
            if left != right:
                failures.append(
                    (
                        i,
                        "commutes with attachments",
                        f"{y}: forward-then-map gives {left}, map-then-forward gives {right}",
                    )
                )
    return MorphismValidation(tuple(failures))


def identity_morphism(c: Cis) -> CisMorphism:
    from .finspace import identity_map

    return CisMorphism(c, c, tuple(identity_map(st.space) for st in c.stages))


def compose_morphisms(late: CisMorphism, early: CisMorphism) -> CisMorphism:
    if early.target != late.source:
        raise TopologyError("morphism composition mismatch")
    return CisMorphism(
        early.source,
        late.target,
        tuple(compose(lm, em) for lm, em in zip(late.h, early.h)),
    )


def is_cis_isomorphism(m: CisMorphism) -> bool:
    """Each stage map a homeomorphism carrying the gluing set onto the
    target's gluing set homeomorphically."""
    for st, tt, hi in zip(m.source.stages, m.target.stages, m.h):
        prof = classify_map(hi)
        if not (prof.embedding and prof.surjective):
            return False
        if frozenset(hi(y) for y in st.y) != tt.y:
            return False
        restricted = restrict_map(hi, st.y)
        wsub, _ = subspace(tt.space, tt.y)
        onto_w = CtsMap(restricted.source, wsub, restricted.assignment)
        wprof = classify_map(onto_w)
        if not (wprof.embedding and wprof.surjective):
            return False
    return True


def induced_fundamental_map(
    m: CisMorphism,
    source_limit: LimitSpace | None = None,
    target_limit: LimitSpace | None = None,
) -> CtsMap:
    """The unique closed continuous map between the fundamental limits
    commuting with every stage map.  Defined pointwise through the covers;
    agreement on overlaps is checked while assembling."""
    rep = validate_morphism(m)
    if not rep.ok:
        raise TopologyError("invalid cis-morphism:\n" + rep.render())
    lx = source_limit if source_limit is not None else build_fundamental(m.source)
    lz = target_limit if target_limit is not None else build_fundamental(m.target)
    asg: dict[str, str] = {}
    for phi, psi, hi in zip(lx.phis, lz.phis, m.h):
        for p in sorted(phi.source.points):
            key = phi(p)
            val = psi(hi(p))
            if asg.setdefault(key, val) != val:
                raise TopologyError(
                    f"induced map is not well defined at {key}: {asg[key]} vs {val}"
                )
    out = CtsMap(lx.x, lz.x, asg)
    prof = classify_map(out)
    if not (prof.continuous and prof.closed):
        raise RuntimeError("construction bug: induced map is not closed continuous")
    for phi, psi, hi in zip(lx.phis, lz.phis, m.h):
        for p in phi.source.points:
            if out(phi(p)) != psi(hi(p)):
                raise RuntimeError("construction bug: induced map fails to commute")
    return out


@dataclass(frozen=True)
class CisDiagram:
    """A finite chain of systems and connecting morphisms; composites and
    identities are derived.  Finite chains stand in for arbitrary inductive
    systems the same way cutoffs stand in for infinite sequences."""

    objects: tuple[Cis, ...]
    arrows: tuple[CisMorphism, ...]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if not self.objects:
            raise TopologyError("diagram needs at least one object")
        if len(self.arrows) != len(self.objects) - 1:
            raise TopologyError("diagram needs exactly one arrow between consecutive objects")
        for n, arr in enumerate(self.arrows):
            if arr.source != self.objects[n] or arr.target != self.objects[n + 1]:
                raise TopologyError(f"arrow {n} does not connect objects {n} and {n + 1}")

    def hom(self, m: int, n: int) -> CisMorphism:
        """The derived morphism from object m to object n (m <= n)."""
        if not 0 <= m <= n < len(self.objects):
            raise TopologyError("diagram indices out of range")
        out = identity_morphism(self.objects[m])
        for k in range(m, n):
            out = compose_morphisms(self.arrows[k], out)
        return out


@dataclass(frozen=True)
class DirectLimitResult:
    limit: Cis
    cocone: tuple[CisMorphism, ...]
    column_limits: tuple[LimitSpace, ...]  # one glued column per stage index


def cis_direct_limit(d: CisDiagram) -> DirectLimitResult:
    """The direct limit system: stagewise columns are glued along the arrow
    maps, gluing sets are unions of the embedded stage gluing sets, and the
    attachments are pieced together from the embedded ones.

    Arrow stage maps need not be injective, so columns are glued by the
    plain attaching construction rather than via system validation; the
    assembled result is itself validated, and the cocone identities are
    checked on the spot.
    """
    counts = {o.stage_count for o in d.objects}
    if len(counts) != 1:
        raise TopologyError("diagram objects must share their stage count")
    tails = {o.tail for o in d.objects}
    if len(tails) != 1:
        raise TopologyError("diagram objects must share their tail policy")
    s = d.objects[0].stage_count
    n_obj = len(d.objects)

    columns = []
    for i in range(s):
        spaces = [o.stages[i].space for o in d.objects]
        attachments = [dict(arr.h[i].assignment) for arr in d.arrows]
        att = attaching_space(spaces, attachments)
        columns.append(att)

    ys = []
    for i in range(s):
        y = frozenset()
        for n in range(n_obj):
            y |= columns[i].projections[n].image(d.objects[n].stages[i].y)
        ys.append(y)

    stages = []
    for i in range(s):
        if i == s - 1:
            stages.append(Stage(columns[i].space, ys[i], None))
            continue
        asg: dict[str, str] = {}
        for n in range(n_obj):
            st = d.objects[n].stages[i]
            xi = columns[i].projections[n]
            xi_next = columns[i + 1].projections[n]
            for y in sorted(st.y):
                key, val = xi(y), xi_next(st.f(y))
                if asg.setdefault(key, val) != val:
                    raise RuntimeError(
                        f"construction bug: glued attachment conflicts at {key}"
                    )
        stages.append(make_stage(columns[i].space, ys[i], columns[i + 1].space, asg))
    limit = Cis(tuple(stages), d.objects[0].tail)
    rep = validate_cis(limit)
    if not rep.ok:
        raise RuntimeError("construction bug: direct limit is not a valid system\n" + rep.render())

    cocone = []
    for n in range(n_obj):
        morph = CisMorphism(
            d.objects[n],
            limit,
            tuple(columns[i].projections[n] for i in range(s)),
        )
        mrep = validate_morphism(morph)
        if not mrep.ok:
            raise RuntimeError("construction bug: cocone leg invalid\n" + mrep.render())
        cocone.append(morph)
    for m_idx in range(n_obj):
        for n_idx in range(m_idx, n_obj):
            left = compose_morphisms(cocone[n_idx], d.hom(m_idx, n_idx))
            if tuple(mm.assignment for mm in left.h) != tuple(
                mm.assignment for mm in cocone[m_idx].h
            ):
                raise RuntimeError("construction bug: cocone identities fail")
    column_limits = tuple(
        LimitSpace(col.space, col.projections, col.rho) for col in columns
    )
    return DirectLimitResult(limit, tuple(cocone), column_limits)


@dataclass(frozen=True)
class CompatibilityReport:
    mediating_continuous: bool
    cocone_identities: bool
    final_topology: bool
    witnesses: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.mediating_continuous and self.cocone_identities and self.final_topology


def check_limit_compatibility(d: CisDiagram) -> CompatibilityReport:
    """Transitioning to fundamental limits commutes with the direct limit:
    the mediating maps out of each object's limit are continuous, form a
    cocone over the induced maps, and exhibit the direct limit's fundamental
    limit as carrying their final topology."""
    res = cis_direct_limit(d)
    big = build_fundamental(res.limit)
    obj_limits = [build_fundamental(o) for o in d.objects]
    mediating = [
        induced_fundamental_map(res.cocone[n], obj_limits[n], big)
        for n in range(len(d.objects))
    ]
    witnesses = []
    cts = True
    for n, theta in enumerate(mediating):
        if not classify_map(theta).continuous:
            cts = False
            witnesses.append(f"mediating map {n} is not continuous")
    identities = True
    for m_idx in range(len(d.objects)):
        for n_idx in range(m_idx + 1, len(d.objects)):
            lh = induced_fundamental_map(
                d.hom(m_idx, n_idx), obj_limits[m_idx], obj_limits[n_idx]
            )
            left = compose(mediating[n_idx], lh)
            if left.assignment != mediating[m_idx].assignment:
                identities = False
                witnesses.append(
                    f"mediating cocone fails between objects {m_idx} and {n_idx}"
                )
    finest = final_space(big.x.points, mediating)
    final_ok = finest.min_open == big.x.min_open
    if not final_ok:
        witnesses.append("limit topology is not the final topology of the mediating maps")
    return CompatibilityReport(cts, identities, final_ok, tuple(witnesses))
