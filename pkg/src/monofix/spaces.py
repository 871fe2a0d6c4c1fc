"""Monoid-valued distance spaces, convergence detectors, and falsifiers.

A `DistanceSpaceSpec` couples a point carrier with a symmetric positive
distance into a partially ordered monoid, a declared kind (dislocated,
distance, or pseudo), and a test ladder.  Detectors reduce sequence questions
to trace decisions; falsifiers search for counterexamples to the
Frechet-Wilson chain properties and are one-sided: they can prove violation,
never satisfaction.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Iterable, Optional, Sequence

from ._rng import child_rng
from ._util import format_value, generic_eq
from .monoid import (
    MonoidSpec,
    MTrace,
    TestLadder,
    cauchy_series_check,
    is_null_trace,
)
from .reporting import CheckResult, Counterexample, Decision, ValidationReport


class SpaceKind(str, Enum):
    DISLOCATED = "dislocated"
    DISTANCE = "distance"
    PSEUDO = "pseudo"


# Rank used when combining spaces: a product can only promise the weakest
# guarantee among its factors.
_KIND_RANK = {SpaceKind.PSEUDO: 0, SpaceKind.DISLOCATED: 1, SpaceKind.DISTANCE: 2}


@dataclass(frozen=True)
class DistanceSpaceSpec:
    """A point carrier with a symmetric monoid-valued distance.

    The capability flags are catalog declarations, not derived facts:
    `weierstrass_capable` marks (monoid, ladder) pairs where bounded partial
    sums force Cauchy series, and `regular_order`/`co_regular_order` mark
    spaces whose convergence respects a point order from below/above.
    """

    point_descr: str
    distance: Callable[[Any, Any], Any]
    kind: SpaceKind
    monoid: MonoidSpec
    ladder: TestLadder
    point_eq: Callable[[Any, Any], bool] = generic_eq
    weierstrass_capable: bool = False
    regular_order: bool = False
    co_regular_order: bool = False


@dataclass(frozen=True)
class ZetaSpec:
    """A relaxed triangle combiner: phi(d(x,y)) <= zeta(d(x,z), d(z,y)).

    `zeta` must send pairs of null traces to null traces and `phi` must
    reflect null traces; both are checked on a finite battery by
    `validate_zeta`, not proven.
    """

    phi: Callable[[Any], Any]
    zeta: Callable[[Any, Any], Any]
    domain_excludes_zero: bool = False


@dataclass(frozen=True)
class PointTrace:
    """A finite orbit prefix with its derived consecutive-distance trace."""

    points: tuple
    consec: MTrace

    @classmethod
    def from_points(
        cls, space: DistanceSpaceSpec, points: Sequence[Any], budget: Optional[int] = None
    ) -> "PointTrace":
        points = tuple(points)
        if not points:
            raise ValueError("point trace needs at least one point")
        consec = tuple(
            space.distance(points[i], points[i + 1]) for i in range(len(points) - 1)
        )
        b = budget if budget is not None else max(len(points), 1)
        return cls(points=points, consec=MTrace(elements=consec, budget=b))

    @property
    def budget(self) -> int:
        return self.consec.budget

    def __len__(self) -> int:
        return len(self.points)


def validate_space(
    space: DistanceSpaceSpec,
    samples: Sequence[Any],
    trials: int,
    seed: int = 0,
) -> ValidationReport:
    """Sampled audit of symmetry, positivity, and the declared kind axioms."""
    if not samples:
        raise ValueError("samples must be non-empty")
    rng = child_rng(seed, "validate_space")
    samples = list(samples)
    m = space.monoid
    checks: list[CheckResult] = []

    def sampled(name: str, predicate: Callable[[Any, Any], Optional[str]]) -> None:
        for t in range(trials):
            x, y = rng.choice(samples), rng.choice(samples)
            issue = predicate(x, y)
            if issue is not None:
                checks.append(CheckResult(name, False, trials=t + 1, counterexample=issue))
                return
        checks.append(CheckResult(name, True, trials=trials))

    sampled(
        "symmetry",
        lambda x, y: None
        if m.eq(space.distance(x, y), space.distance(y, x))
        else f"d({format_value(x)},{format_value(y)}) != d({format_value(y)},{format_value(x)})",
    )
    sampled(
        "positivity",
        lambda x, y: None
        if m.is_positive(space.distance(x, y))
        else f"d({format_value(x)},{format_value(y)}) outside the positive cone",
    )

    if space.kind in (SpaceKind.DISLOCATED, SpaceKind.DISTANCE):
        sampled(
            "zero_implies_equal",
            lambda x, y: None
            if not m.eq(space.distance(x, y), m.identity) or space.point_eq(x, y)
            else f"d=identity for distinct {format_value(x)}, {format_value(y)}",
        )
    if space.kind in (SpaceKind.PSEUDO, SpaceKind.DISTANCE):
        bad = None
        for t in range(trials):
            x = rng.choice(samples)
            if not m.eq(space.distance(x, x), m.identity):
                bad = (t + 1, x)
                break
        checks.append(
            CheckResult(
                "equal_implies_zero",
                bad is None,
                trials=trials if bad is None else bad[0],
                counterexample=None
                if bad is None
                else f"d(x,x) != identity for x={format_value(bad[1])}",
            )
        )
    if space.kind is SpaceKind.DISLOCATED:
        dislocated = sum(
            1
            for x in rng.choices(samples, k=min(trials, 256))
            if not m.eq(space.distance(x, x), m.identity)
        )
        checks.append(
            CheckResult(
                "dislocation_observed",
                True,
                trials=min(trials, 256),
                detail=f"{dislocated} sampled points with d(x,x) != identity",
            )
        )
    return ValidationReport(subject=space.point_descr, checks=tuple(checks))


def check_triangle(space: DistanceSpaceSpec, triples: Iterable[tuple]) -> ValidationReport:
    """Check d(x,y) <= d(x,z) + d(z,y) on the given triples."""
    m = space.monoid
    count = 0
    for x, y, z in triples:
        count += 1
        lhs = space.distance(x, y)
        rhs = m.combine(space.distance(x, z), space.distance(z, y))
        # m.eq breaks rounding-noise ties in float carriers; exact carriers
        # have exact eq, so nothing is forgiven there
        if not (m.leq(lhs, rhs) or m.eq(lhs, rhs)):
            return ValidationReport(
                subject=space.point_descr,
                checks=(
                    CheckResult(
                        "triangle",
                        False,
                        trials=count,
                        counterexample=(
                            f"x={format_value(x)} y={format_value(y)} z={format_value(z)} "
                            f"d(x,y)={format_value(lhs)} d(x,z)+d(z,y)={format_value(rhs)}"
                        ),
                    ),
                ),
            )
    return ValidationReport(
        subject=space.point_descr, checks=(CheckResult("triangle", True, trials=count),)
    )


def check_zeta_triangle(
    space: DistanceSpaceSpec, zspec: ZetaSpec, triples: Iterable[tuple]
) -> ValidationReport:
    """Check phi(d(x,y)) <= zeta(d(x,z), d(z,y)) on the given triples.

    When the combiner's domain excludes the identity, triples producing an
    identity distance are skipped and counted rather than judged.
    """
    m = space.monoid
    count = 0
    skipped = 0
    for x, y, z in triples:
        count += 1
        dxy, dxz, dzy = space.distance(x, y), space.distance(x, z), space.distance(z, y)
        if zspec.domain_excludes_zero and any(
            m.eq(d, m.identity) for d in (dxy, dxz, dzy)
        ):
            skipped += 1
            continue
        lhs, rhs = zspec.phi(dxy), zspec.zeta(dxz, dzy)
        if not (m.leq(lhs, rhs) or m.eq(lhs, rhs)):
            return ValidationReport(
                subject=space.point_descr,
                checks=(
                    CheckResult(
                        "zeta_triangle",
                        False,
                        trials=count,
                        counterexample=(
                            f"x={format_value(x)} y={format_value(y)} z={format_value(z)} "
                            f"phi(d(x,y))={format_value(lhs)} zeta={format_value(rhs)}"
                        ),
                    ),
                ),
            )
    return ValidationReport(
        subject=space.point_descr,
        checks=(
            CheckResult(
                "zeta_triangle", True, trials=count, detail=f"{skipped} skipped on zero distance"
            ),
        ),
    )


def validate_zeta(
    monoid: MonoidSpec,
    ladder: TestLadder,
    zspec: ZetaSpec,
    null_battery: Sequence[MTrace],
    notnull_battery: Sequence[MTrace],
) -> ValidationReport:
    """Battery check of the combiner contracts.

    zeta must map pairs of null traces to null traces; phi must reflect null
    traces, which on finite evidence is checked contrapositively: traces that
    are not null must not become null under phi.
    """
    checks: list[CheckResult] = []
    bad = None
    pairs = list(itertools.product(null_battery, null_battery))
    for a, b in pairs:
        n = min(len(a), len(b))
        t = MTrace(
            elements=tuple(zspec.zeta(x, y) for x, y in zip(a.elements, b.elements)),
            budget=min(a.budget, b.budget, n),
        )
        if is_null_trace(t, ladder, monoid) is not Decision.NULL:
            bad = t
            break
    checks.append(
        CheckResult(
            "zeta_preserves_null",
            bad is None,
            trials=len(pairs),
            counterexample=None if bad is None else "zeta image of null traces is not null",
        )
    )
    bad = None
    for t in notnull_battery:
        img = MTrace(elements=tuple(zspec.phi(x) for x in t.elements), budget=t.budget)
        if is_null_trace(img, ladder, monoid) is Decision.NULL:
            bad = t
            break
    checks.append(
        CheckResult(
            "phi_reflects_null",
            bad is None,
            trials=len(notnull_battery),
            counterexample=None
            if bad is None
            else "phi maps a non-null trace onto a null trace",
        )
    )
    return ValidationReport(subject="zeta/phi combiner", checks=tuple(checks))


# ---------------------------------------------------------------------------
# Sequence detectors


def converges_to(space: DistanceSpaceSpec, trace: PointTrace, limit: Any) -> Decision:
    """NULL iff the distances to the limit fall and stay below the bottom rung."""
    dists = tuple(space.distance(p, limit) for p in trace.points)
    return is_null_trace(
        MTrace(elements=dists, budget=trace.budget), space.ladder, space.monoid
    )


def is_cauchy_sequence(space: DistanceSpaceSpec, trace: PointTrace) -> Decision:
    """NULL iff beyond some start index within budget all strict pairs are
    strictly below the bottom rung."""
    pts = trace.points
    if len(pts) < 2:
        raise ValueError("need at least two points")
    m = space.monoid
    bottom = space.ladder.bottom
    last_bad = -1
    for i in range(len(pts) - 1):
        for j in range(i + 1, len(pts)):
            if not m.strictly_below(space.distance(pts[i], pts[j]), bottom):
                last_bad = max(last_bad, i)
    n = len(pts)
    if last_bad == -1:
        return Decision.NULL
    if last_bad + 1 <= n - 2 and last_bad + 2 <= trace.budget:
        return Decision.NULL
    if n >= trace.budget:
        return Decision.NOT_NULL_WITHIN
    return Decision.INDETERMINATE


def is_cw_sequence(space: DistanceSpaceSpec, trace: PointTrace) -> Decision:
    """NULL iff the consecutive-distance series is a Cauchy series."""
    if len(trace.points) < 2:
        raise ValueError("need at least two points")
    return cauchy_series_check(trace.consec, space.ladder, space.monoid)


# ---------------------------------------------------------------------------
# Frechet-Wilson falsifiers

FW_LEVELS = ("weak", "standard", "strong")


def falsify_frechet_wilson(
    space: DistanceSpaceSpec,
    level: str,
    sampler: Callable[[random.Random], Any],
    trials: int,
    seed: int = 0,
) -> Optional[Counterexample]:
    """Search for a counterexample to the chosen Frechet-Wilson property.

    strong: the sampler yields finite chains x_1..x_n; a witness is a chain
    whose consecutive-distance sum is strictly below the bottom rung while
    the endpoint distance fails to sit strictly below some rung.
    weak: the sampler yields (xs, ys, z); standard: (xs, zs, ys).  A witness
    is a sampled prefix where the two premise traces are null but the
    conclusion trace is decisively not null.

    Returns None when no counterexample was found, which is evidence, not
    proof, that the property holds.
    """
    if level not in FW_LEVELS:
        raise ValueError(f"unknown level {level!r}")
    m = space.monoid
    ladder = space.ladder
    bottom = ladder.bottom
    rng = child_rng(seed, f"fw-{level}")

    for trial in range(trials):
        cand = sampler(rng)
        if level == "strong":
            chain = tuple(cand)
            if len(chain) < 2:
                continue
            total = m.fold(
                space.distance(chain[i], chain[i + 1]) for i in range(len(chain) - 1)
            )
            if not m.strictly_below(total, bottom):
                continue
            endpoint = space.distance(chain[0], chain[-1])
            rung_idx = None
            for i, eps in enumerate(ladder.rungs):
                if not m.strictly_below(endpoint, eps):
                    rung_idx = i
                    break
            if rung_idx is not None:
                return Counterexample(
                    kind="fw-strong",
                    points=chain,
                    rung_index=rung_idx,
                    distances=(total, endpoint),
                    detail=(
                        f"sum of consecutive distances {format_value(total)} is below the "
                        f"bottom rung but d(x_1,x_n)={format_value(endpoint)} is not below "
                        f"rung {rung_idx} ({format_value(ladder.rungs[rung_idx])}); "
                        f"found on trial {trial}"
                    ),
                )
        else:
            # both levels reduce to: two premise traces through a middle
            # sequence, one conclusion trace between the outer sequences
            if level == "weak":
                seq_x, seq_y, z_point = cand
                heads, middles = tuple(seq_x), tuple(seq_y)
                tails = tuple(z_point for _ in heads)
            else:
                seq_x, seq_z, seq_y = cand
                heads, middles, tails = tuple(seq_x), tuple(seq_z), tuple(seq_y)
            n = min(len(heads), len(middles), len(tails))
            if n < 2:
                continue
            heads, middles, tails = heads[:n], middles[:n], tails[:n]
            prem1 = MTrace.of([space.distance(a, b) for a, b in zip(heads, middles)])
            prem2 = MTrace.of([space.distance(b, c) for b, c in zip(middles, tails)])
            concl = MTrace.of([space.distance(a, c) for a, c in zip(heads, tails)])
            if (
                is_null_trace(prem1, ladder, m) is Decision.NULL
                and is_null_trace(prem2, ladder, m) is Decision.NULL
                and is_null_trace(concl, ladder, m) is Decision.NOT_NULL_WITHIN
            ):
                return Counterexample(
                    kind=f"fw-{level}",
                    points=(heads, middles, tails),
                    rung_index=len(ladder.rungs) - 1,
                    distances=(concl.elements[-1],),
                    detail=(
                        "premise traces are null but the conclusion trace stays above "
                        f"the bottom rung; found on trial {trial}"
                    ),
                )
    return None


# ---------------------------------------------------------------------------
# Entourage spaces over the relation monoid


def relation_compose(a: frozenset, b: frozenset) -> frozenset:
    succ: dict[Any, list] = {}
    for u, v in b:
        succ.setdefault(u, []).append(v)
    out = set()
    for x, z in a:
        for y in succ.get(z, ()):
            out.add((x, y))
    return frozenset(out)


def diagonal(points: Iterable[Any]) -> frozenset:
    return frozenset((p, p) for p in points)


def full_relation(points: Iterable[Any]) -> frozenset:
    pts = list(points)
    return frozenset((a, b) for a in pts for b in pts)


def relation_monoid(points: Sequence[Any], identity: Optional[frozenset] = None) -> MonoidSpec:
    """The composition monoid of relations over a finite point set, ordered by
    inclusion, with union as the supremum.

    The identity defaults to the diagonal; passing a larger reflexive kernel
    (all pairs a pseudometric cannot separate) keeps the identity axiom valid
    on kernel-saturated relations.
    """
    ident = diagonal(points) if identity is None else frozenset(identity)
    cache: dict[tuple[frozenset, frozenset], frozenset] = {}

    def combine(a: frozenset, b: frozenset) -> frozenset:
        key = (a, b)
        got = cache.get(key)
        if got is None:
            got = relation_compose(a, b)
            cache[key] = got
        return got

    return MonoidSpec(
        carrier_descr=f"relations on {len(points)} points (compose, ordered by inclusion)",
        combine=combine,
        identity=ident,
        leq=lambda a, b: a <= b,
        sup=lambda a, b: a | b,
        eq=lambda a, b: a == b,
    )


def entourage_distance(base: Sequence[frozenset], x: Any, y: Any) -> frozenset:
    """Intersection of all base relations containing (x, y).

    The empty intersection (no base relation contains the pair) is the full
    relation, the top of the inclusion order.
    """
    if not base:
        raise ValueError("base must be non-empty")
    members = [r for r in base if (x, y) in r]
    if not members:
        universe = {p for r in base for pair in r for p in pair}
        return full_relation(universe)
    out = members[0]
    for r in members[1:]:
        out = out & r
    return out


def make_uniform_from_pseudometric(
    points: Sequence[Any],
    rho: Callable[[Any, Any], float],
    thresholds: Sequence[float],
) -> tuple[DistanceSpaceSpec, TestLadder]:
    """Build an entourage space from a pseudometric's sublevel relations.

    The base relations are {(x,y): rho(x,y) <= r}; the ladder is the base
    ordered by threshold, with rungs equal to the identity dropped (rungs must
    be strictly positive) and duplicates collapsed.  Thresholds must descend
    and each must be at most half its predecessor so that composition of a
    rung with itself lands inside the rung above.
    """
    pts = tuple(points)
    if not pts:
        raise ValueError("points must be non-empty")
    for i in range(1, len(thresholds)):
        if not thresholds[i] < thresholds[i - 1]:
            raise ValueError("thresholds must be strictly descending")
        if thresholds[i] > thresholds[i - 1] / 2:
            raise ValueError(
                f"threshold {thresholds[i]} exceeds half of {thresholds[i - 1]}; "
                "the halving property would fail"
            )
    for a in pts:
        if rho(a, a) != 0:
            raise ValueError(f"rho({a!r},{a!r}) != 0")
    for a in pts:
        for b in pts:
            if rho(a, b) != rho(b, a):
                raise ValueError(f"rho is not symmetric at ({a!r}, {b!r})")

    def sublevel(r: float) -> frozenset:
        return frozenset((a, b) for a in pts for b in pts if rho(a, b) <= r)

    base = [sublevel(r) for r in thresholds]
    kernel = frozenset((a, b) for a in pts for b in pts if rho(a, b) == 0)
    monoid = relation_monoid(pts, identity=kernel)

    rungs: list[frozenset] = []
    for rel in base:
        if rel == kernel:
            continue
        if rungs and rungs[-1] == rel:
            continue
        rungs.append(rel)
    if not rungs:
        raise ValueError("all sublevel relations equal the kernel; no usable rungs")
    ladder = TestLadder.build(monoid, rungs)

    table = {(a, b): entourage_distance(base, a, b) for a in pts for b in pts}
    separating = kernel == diagonal(pts)
    if base[-1] == kernel:
        kind = SpaceKind.DISTANCE if separating else SpaceKind.PSEUDO
    else:
        kind = SpaceKind.DISLOCATED

    space = DistanceSpaceSpec(
        point_descr=f"{len(pts)}-point entourage space over a pseudometric base",
        distance=lambda a, b: table[(a, b)],
        kind=kind,
        monoid=monoid,
        ladder=ladder,
    )
    return space, ladder


# ---------------------------------------------------------------------------
# Space combinators


def _shared_monoid(spaces: Sequence[DistanceSpaceSpec]) -> MonoidSpec:
    first = spaces[0].monoid
    for s in spaces[1:]:
        if s.monoid is not first and s.monoid.carrier_descr != first.carrier_descr:
            raise ValueError("factors must share one monoid for sigma/vee products")
    return first


def _weakest_kind(spaces: Sequence[DistanceSpaceSpec]) -> SpaceKind:
    return min((s.kind for s in spaces), key=lambda k: _KIND_RANK[k])


def product_monoid(factors: Sequence[MonoidSpec]) -> MonoidSpec:
    """Coordinatewise product of monoids on tuples."""
    factors = tuple(factors)

    def combine(a: tuple, b: tuple) -> tuple:
        return tuple(m.combine(x, y) for m, x, y in zip(factors, a, b))

    def leq(a: tuple, b: tuple) -> bool:
        return all(m.leq(x, y) for m, x, y in zip(factors, a, b))

    def eq(a: tuple, b: tuple) -> bool:
        return all(m.eq(x, y) for m, x, y in zip(factors, a, b))

    sup = None
    if all(m.sup is not None for m in factors):

        def sup(a: tuple, b: tuple) -> tuple:  # noqa: F811
            return tuple(m.sup(x, y) for m, x, y in zip(factors, a, b))

    return MonoidSpec(
        carrier_descr="product(" + ", ".join(m.carrier_descr for m in factors) + ")",
        combine=combine,
        identity=tuple(m.identity for m in factors),
        leq=leq,
        sup=sup,
        eq=eq,
        cancellative=all(m.cancellative for m in factors),
        subtract=(
            (lambda a, b: tuple(m.subtract(x, y) for m, x, y in zip(factors, a, b)))
            if all(m.cancellative and m.subtract is not None for m in factors)
            else None
        ),
    )


def product_ladder(ladders: Sequence[TestLadder], monoid: MonoidSpec) -> TestLadder:
    depth = min(len(l.rungs) for l in ladders)
    rungs = [tuple(l.rungs[i] for l in ladders) for i in range(depth)]
    return TestLadder.build(monoid, rungs)


def product_space(spaces: Sequence[DistanceSpaceSpec], mode: str) -> DistanceSpaceSpec:
    """Combine finitely many spaces over a tuple carrier.

    sigma sums the factor distances, vee takes their supremum (requires the
    Riesz property), and coordinatewise moves to the product monoid with the
    product ladder.
    """
    if not spaces:
        raise ValueError("need at least one factor")
    kind = _weakest_kind(spaces)
    descr = " x ".join(s.point_descr for s in spaces)

    def point_eq(a: tuple, b: tuple) -> bool:
        return all(s.point_eq(x, y) for s, x, y in zip(spaces, a, b))

    if mode == "sigma":
        m = _shared_monoid(spaces)

        def dist(a: tuple, b: tuple) -> Any:
            return m.fold(s.distance(x, y) for s, x, y in zip(spaces, a, b))

        return DistanceSpaceSpec(
            point_descr=f"sigma-product({descr})",
            distance=dist,
            kind=kind,
            monoid=m,
            ladder=spaces[0].ladder,
            point_eq=point_eq,
            weierstrass_capable=all(s.weierstrass_capable for s in spaces),
        )
    if mode == "vee":
        m = _shared_monoid(spaces)
        if m.sup is None:
            raise ValueError("vee product needs a supremum on the shared monoid")

        def dist(a: tuple, b: tuple) -> Any:
            parts = [s.distance(x, y) for s, x, y in zip(spaces, a, b)]
            acc = parts[0]
            for p in parts[1:]:
                acc = m.sup(acc, p)
            return acc

        return DistanceSpaceSpec(
            point_descr=f"vee-product({descr})",
            distance=dist,
            kind=kind,
            monoid=m,
            ladder=spaces[0].ladder,
            point_eq=point_eq,
            weierstrass_capable=all(s.weierstrass_capable for s in spaces),
        )
    if mode == "coordinatewise":
        pm = product_monoid([s.monoid for s in spaces])
        pl = product_ladder([s.ladder for s in spaces], pm)

        def dist(a: tuple, b: tuple) -> tuple:
            return tuple(s.distance(x, y) for s, x, y in zip(spaces, a, b))

        return DistanceSpaceSpec(
            point_descr=f"coordinatewise-product({descr})",
            distance=dist,
            kind=kind,
            monoid=pm,
            ladder=pl,
            point_eq=point_eq,
            weierstrass_capable=all(s.weierstrass_capable for s in spaces),
            regular_order=all(s.regular_order for s in spaces),
            co_regular_order=all(s.co_regular_order for s in spaces),
        )
    raise ValueError(f"unknown product mode {mode!r}")


def gauge_space(
    pseudo_spaces: Sequence[DistanceSpaceSpec],
    samples: Optional[Sequence[Any]] = None,
) -> DistanceSpaceSpec:
    """Bundle pseudo-distances on one carrier into a product-monoid distance.

    The result is declared a distance space only when the sampled separation
    condition holds (some factor separates every sampled distinct pair);
    otherwise it stays pseudo.
    """
    if not pseudo_spaces:
        raise ValueError("need at least one factor")
    pm = product_monoid([s.monoid for s in pseudo_spaces])
    pl = product_ladder([s.ladder for s in pseudo_spaces], pm)

    def dist(x: Any, y: Any) -> tuple:
        return tuple(s.distance(x, y) for s in pseudo_spaces)

    kind = SpaceKind.PSEUDO
    if samples:
        separating = True
        for x, y in itertools.combinations(samples, 2):
            if pseudo_spaces[0].point_eq(x, y):
                continue
            if all(
                s.monoid.eq(s.distance(x, y), s.monoid.identity) for s in pseudo_spaces
            ):
                separating = False
                break
        if separating:
            kind = SpaceKind.DISTANCE

    return DistanceSpaceSpec(
        point_descr=f"gauge({pseudo_spaces[0].point_descr}; {len(pseudo_spaces)} factors)",
        distance=dist,
        kind=kind,
        monoid=pm,
        ladder=pl,
        point_eq=pseudo_spaces[0].point_eq,
        weierstrass_capable=all(s.weierstrass_capable for s in pseudo_spaces),
        regular_order=all(s.regular_order for s in pseudo_spaces),
        co_regular_order=all(s.co_regular_order for s in pseudo_spaces),
    )
