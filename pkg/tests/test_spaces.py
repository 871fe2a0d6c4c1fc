"""Distance-space axioms, detectors, falsifiers, and example spaces."""
import itertools
import random

import pytest

from monofix import (
    Decision,
    DistanceSpaceSpec,
    PointTrace,
    SpaceKind,
    ZetaSpec,
    check_triangle,
    check_zeta_triangle,
    converges_to,
    dyadic_ladder,
    entourage_distance,
    falsify_frechet_wilson,
    gauge_space,
    is_cauchy_sequence,
    is_cw_sequence,
    make_uniform_from_pseudometric,
    product_space,
    validate_space,
    validate_zeta,
)
from monofix.catalog import (
    get_space,
    hierarchical_rho,
    interleaved_sequence,
    real_nonneg_monoid,
)
from monofix.spaces import diagonal, full_relation

REAL_ABS = get_space("real_abs")
SNOWFLAKE = get_space("snowflake")
SQUARED = get_space("squared")
OMEGA = get_space("omega_counterexample{128}")


def test_validate_real_metric():
    rep = validate_space(REAL_ABS.space, REAL_ABS.samples, trials=2000, seed=1)
    assert rep.ok, rep.render()


def test_validate_dislocated_max_reports_dislocation():
    entry = get_space("dislocated_max")
    rep = validate_space(entry.space, entry.samples, trials=2000, seed=2)
    assert rep.ok, rep.render()
    # dislocation is reported, not penalized: d(2,2) = 2 != 0
    assert entry.space.distance(2.0, 2.0) == 2.0
    note = next(c for c in rep.checks if c.name == "dislocation_observed")
    assert "d(x,x)" in note.detail


def test_validate_collapsing_distance_declared_distance_fails():
    entry = get_space("broken_pseudo_as_distance")
    rep = validate_space(entry.space, entry.samples, trials=2000, seed=3)
    assert not rep.ok
    assert any(c.name == "zero_implies_equal" for c in rep.failures)


# ---------------------------------------------------------------------------
# triangle checks


def test_triangle_real_random_triples():
    rng = random.Random(4)
    triples = [(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(500)]
    assert check_triangle(REAL_ABS.space, triples).ok


def test_triangle_snowflake_violation():
    # hand oracle: d(0,2) = 4 while d(0,1) + d(1,2) = 2
    d = SNOWFLAKE.space.distance
    assert d(0.0, 2.0) == 4.0 and d(0.0, 1.0) + d(1.0, 2.0) == 2.0
    rep = check_triangle(SNOWFLAKE.space, [(0.0, 2.0, 1.0)])
    assert not rep.ok


def test_triangle_entourage_space_exhaustive():
    entry = get_space("uniform_pseudometric{8}")
    triples = itertools.product(entry.finite_carrier, repeat=3)
    assert check_triangle(entry.space, triples).ok


def test_zeta_triangle_identity_sum_reduces_to_triangle():
    rng = random.Random(5)
    zspec = ZetaSpec(phi=lambda a: a, zeta=lambda a, b: a + b)
    triples = [(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(500)]
    assert check_zeta_triangle(REAL_ABS.space, zspec, triples).ok


def test_zeta_triangle_doubled_sum_on_squared_distance():
    # oracle: (x-y)^2 <= 2 (x-z)^2 + 2 (z-y)^2, checked numerically
    rng = random.Random(6)
    triples = [(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(500)]
    for x, y, z in triples:
        assert (x - y) ** 2 <= 2 * (x - z) ** 2 + 2 * (z - y) ** 2 + 1e-12
    zspec = ZetaSpec(phi=lambda a: a, zeta=lambda a, b: 2 * (a + b))
    assert check_zeta_triangle(SQUARED.space, zspec, triples).ok


def test_zeta_triangle_plain_sum_on_squared_distance_fails():
    zspec = ZetaSpec(phi=lambda a: a, zeta=lambda a, b: a + b)
    rep = check_zeta_triangle(SQUARED.space, zspec, [(0.0, 2.0, 1.0)])
    assert not rep.ok  # 4 > 1 + 1


def test_validate_zeta_battery():
    from monofix.catalog import get_monoid

    entry = get_monoid("real_nonneg")
    good = ZetaSpec(phi=lambda a: a, zeta=lambda a, b: a + b)
    rep = validate_zeta(entry.spec, entry.ladder, good, entry.null_battery, entry.notnull_battery)
    assert rep.ok, rep.render()
    offset = ZetaSpec(phi=lambda a: a, zeta=lambda a, b: a + b + 0.3)
    rep = validate_zeta(entry.spec, entry.ladder, offset, entry.null_battery, entry.notnull_battery)
    assert any(c.name == "zeta_preserves_null" for c in rep.failures)
    crushing = ZetaSpec(phi=lambda a: 0.0, zeta=lambda a, b: a + b)
    rep = validate_zeta(entry.spec, entry.ladder, crushing, entry.null_battery, entry.notnull_battery)
    assert any(c.name == "phi_reflects_null" for c in rep.failures)


# ---------------------------------------------------------------------------
# Frechet-Wilson falsifiers


def test_fw_strong_squared_canonical_chain_is_a_witness():
    # the arithmetic of the canonical chain, checked by hand
    h, n = 0.01, 100
    chain = [i * h for i in range(1, n + 1)]
    consec = sum((chain[i + 1] - chain[i]) ** 2 for i in range(n - 1))
    assert abs(consec - 99 * 1e-4) < 1e-12
    endpoint = (chain[-1] - chain[0]) ** 2
    assert 0.97 < endpoint < 0.99
    bottom = SQUARED.space.ladder.bottom
    assert consec < bottom or bottom < consec  # chain scale depends on the ladder

    cex = falsify_frechet_wilson(
        SQUARED.space, "strong", SQUARED.fw_sampler("strong"), trials=20_000, seed=7
    )
    assert cex is not None
    total, endpoint = cex.distances
    assert total < bottom
    assert not SQUARED.space.monoid.strictly_below(
        endpoint, SQUARED.space.ladder.rungs[cex.rung_index]
    )


def test_fw_strong_snowflake_not_falsified():
    cex = falsify_frechet_wilson(
        SNOWFLAKE.space, "strong", SNOWFLAKE.fw_sampler("strong"), trials=5000, seed=8
    )
    assert cex is None


def test_fw_strong_real_abs_not_falsified():
    cex = falsify_frechet_wilson(
        REAL_ABS.space, "strong", REAL_ABS.fw_sampler("strong"), trials=5000, seed=9
    )
    assert cex is None


def test_fw_standard_omega_falsified():
    cex = falsify_frechet_wilson(
        OMEGA.space, "standard", OMEGA.fw_sampler("standard"), trials=2000, seed=10
    )
    assert cex is not None
    assert cex.kind == "fw-standard"


def test_fw_standard_squared_not_falsified():
    cex = falsify_frechet_wilson(
        SQUARED.space, "standard", SQUARED.fw_sampler("standard"), trials=2000, seed=11
    )
    assert cex is None


def test_fw_weak_omega_not_falsified():
    cex = falsify_frechet_wilson(
        OMEGA.space, "weak", OMEGA.fw_sampler("weak"), trials=2000, seed=12
    )
    assert cex is None


def test_fw_rejects_unknown_level():
    with pytest.raises(ValueError):
        falsify_frechet_wilson(REAL_ABS.space, "superstrong", lambda rng: [], 1)


# ---------------------------------------------------------------------------
# sequence detectors


def coarse(space_entry, depth=4):
    # same space, coarser ladder: detector examples live at the 1/16 scale
    import dataclasses

    return dataclasses.replace(space_entry.space, ladder=dyadic_ladder(depth))


def test_cauchy_sequence_one_over_n():
    space = coarse(REAL_ABS)
    pts = [1.0 / n for n in range(1, 101)]
    trace = PointTrace.from_points(space, pts, budget=50)
    assert is_cauchy_sequence(space, trace) is Decision.NULL


def test_cauchy_sequence_constant():
    trace = PointTrace.from_points(REAL_ABS.space, [0.7] * 20)
    assert is_cauchy_sequence(REAL_ABS.space, trace) is Decision.NULL


def test_omega_interleaved_triple_pattern():
    space = OMEGA.space
    prefix = interleaved_sequence(240)
    trace = PointTrace.from_points(space, prefix, budget=120)
    assert is_cw_sequence(space, trace) is Decision.NULL
    assert is_cauchy_sequence(space, trace) is Decision.NOT_NULL_WITHIN
    assert converges_to(space, trace, ("inf",)) is Decision.NULL
    # oracle for the non-Cauchy claim: distinct naturals stay at distance 1
    assert space.distance(("n", 3), ("n", 77)) == 1.0


def test_cw_geometric_orbit():
    pts = [2.0 ** -n for n in range(30)]
    trace = PointTrace.from_points(REAL_ABS.space, pts)
    assert is_cw_sequence(REAL_ABS.space, trace) is Decision.NULL


def test_cw_harmonic_walk_fails_within_budget():
    sums = list(itertools.accumulate(1.0 / k for k in range(1, 1001)))
    trace = PointTrace.from_points(REAL_ABS.space, sums, budget=500)
    # oracle: consecutive distances are 1/k, whose tails past index 500 still
    # exceed the bottom rung of the depth-20 ladder
    assert sum(1.0 / k for k in range(501, 1001)) > REAL_ABS.space.ladder.bottom
    assert is_cw_sequence(REAL_ABS.space, trace) is Decision.NOT_NULL_WITHIN


def test_converges_to_wrong_limit():
    space = coarse(REAL_ABS)
    pts = [1.0 / n for n in range(1, 101)]
    trace = PointTrace.from_points(space, pts)
    assert converges_to(space, trace, 0.0) is Decision.NULL
    assert converges_to(space, trace, 1.0) is Decision.NOT_NULL_WITHIN


# ---------------------------------------------------------------------------
# entourage distances


def _sublevels(pts, rho, thresholds):
    return [
        frozenset((a, b) for a in pts for b in pts if rho(a, b) <= r) for r in thresholds
    ]


def test_entourage_distance_diagonal_for_separating_base():
    pts = tuple(range(8))
    base = _sublevels(pts, hierarchical_rho, [1.0, 0.5, 0.25, 0.125])
    assert entourage_distance(base, 3, 3) == diagonal(pts)


def test_entourage_distance_three_point_example():
    pts = ("a", "b", "c")
    table = {
        frozenset(("a", "b")): 1.5,
        frozenset(("a", "c")): 0.8,
        frozenset(("b", "c")): 0.9,
    }

    def rho(x, y):
        return 0.0 if x == y else table[frozenset((x, y))]

    base = _sublevels(pts, rho, [2.0, 1.0])
    # oracle: only the sublevel-2 relation contains (a, b)
    assert ("a", "b") in base[0] and ("a", "b") not in base[1]
    assert entourage_distance(base, "a", "b") == base[0]


def test_entourage_distance_empty_intersection_is_full():
    pts = ("a", "b")
    base = [diagonal(pts)]
    assert entourage_distance(base, "a", "b") == full_relation(pts)


def test_entourage_distance_empty_base_rejected():
    with pytest.raises(ValueError):
        entourage_distance([], "a", "b")


# ---------------------------------------------------------------------------
# uniform construction


def test_make_uniform_hierarchical_validates():
    from monofix import validate_ladder

    pts = tuple(range(8))
    space, ladder = make_uniform_from_pseudometric(
        pts, hierarchical_rho, [1.0, 0.5, 0.25, 0.125]
    )
    assert space.kind is SpaceKind.DISTANCE
    assert validate_ladder(space.monoid, ladder).ok
    assert check_triangle(space, itertools.product(pts, repeat=3)).ok
    rep = validate_space(space, pts, trials=2000, seed=13)
    assert rep.ok, rep.render()


def test_make_uniform_non_separating_is_pseudo():
    pts = ("a", "b", "c")

    def rho(x, y):
        if {x, y} <= {"a", "b"}:
            return 0.0
        return 0.0 if x == y else 1.0

    space, _ = make_uniform_from_pseudometric(pts, rho, [2.0, 1.0, 0.5])
    assert space.kind is SpaceKind.PSEUDO
    assert space.distance("a", "b") == space.monoid.identity


def test_make_uniform_single_point_degenerates():
    with pytest.raises(ValueError):
        make_uniform_from_pseudometric(("p",), lambda a, b: 0.0, [1.0, 0.5])


def test_make_uniform_rejects_bad_thresholds():
    pts = (0, 1)
    with pytest.raises(ValueError):
        make_uniform_from_pseudometric(pts, lambda a, b: abs(a - b), [1.0, 0.6])
    with pytest.raises(ValueError):
        make_uniform_from_pseudometric(pts, lambda a, b: abs(a - b), [1.0, 1.0])


# ---------------------------------------------------------------------------
# products and gauges


def test_product_sigma_is_taxicab():
    plane = product_space([REAL_ABS.space, REAL_ABS.space], mode="sigma")
    assert plane.distance((0.0, 0.0), (1.0, 2.0)) == 3.0


def test_product_vee_is_chebyshev():
    plane = product_space([REAL_ABS.space, REAL_ABS.space], mode="vee")
    assert plane.distance((0.0, 0.0), (1.0, 2.0)) == 2.0


def test_product_coordinatewise():
    plane = product_space([REAL_ABS.space, REAL_ABS.space], mode="coordinatewise")
    assert plane.distance((0.0, 0.0), (1.0, 2.0)) == (1.0, 2.0)
    assert plane.ladder.rungs[0] == (0.5, 0.5)


def test_product_mixed_monoids_rejected():
    entry = get_space("uniform_pseudometric{8}")
    with pytest.raises(ValueError):
        product_space([REAL_ABS.space, entry.space], mode="sigma")


def test_gauge_separating_vs_single_factor():
    entry = get_space("gauge{3}")
    assert entry.space.kind is SpaceKind.DISTANCE
    single = DistanceSpaceSpec(
        point_descr="plane with the first-coordinate pseudo-distance",
        distance=lambda x, y: abs(x[0] - y[0]),
        kind=SpaceKind.PSEUDO,
        monoid=real_nonneg_monoid(),
        ladder=dyadic_ladder(8),
    )
    g = gauge_space([single], samples=[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)])
    assert g.kind is SpaceKind.PSEUDO


def test_gauge_convergence_matches_plain_metric():
    entry = get_space("gauge{3}")
    rng = random.Random(14)
    for _ in range(50):
        limit = rng.uniform(-2, 2)
        scale = rng.uniform(0.1, 2.0)
        pts = [limit + scale * 2.0 ** -n for n in range(40)]
        gdec = converges_to(entry.space, PointTrace.from_points(entry.space, pts), limit)
        rdec = converges_to(REAL_ABS.space, PointTrace.from_points(REAL_ABS.space, pts), limit)
        assert gdec is rdec is Decision.NULL
        off = limit + 1.0
        gbad = converges_to(entry.space, PointTrace.from_points(entry.space, pts), off)
        rbad = converges_to(REAL_ABS.space, PointTrace.from_points(REAL_ABS.space, pts), off)
        assert gbad is rbad is Decision.NOT_NULL_WITHIN


# ---------------------------------------------------------------------------
# invariants


def test_classical_epsilon_convergence_agreement():
    rng = random.Random(15)
    bottom = REAL_ABS.space.ladder.bottom
    for _ in range(100):
        limit = rng.uniform(-3, 3)
        converging = rng.random() < 0.5
        if converging:
            pts = [limit + rng.uniform(0.5, 2.0) * 2.0 ** -n for n in range(60)]
        else:
            pts = [limit + rng.uniform(0.2, 1.0) for _ in range(60)]
        dec = converges_to(REAL_ABS.space, PointTrace.from_points(REAL_ABS.space, pts), limit)
        # classical oracle with the bottom rung as epsilon
        classical = any(
            all(abs(p - limit) < bottom for p in pts[n:]) and n < len(pts)
            for n in range(len(pts))
        )
        assert (dec is Decision.NULL) == classical


def test_hausdorff_uniqueness_at_trace_scale():
    rng = random.Random(16)
    space = REAL_ABS.space
    bottom = space.ladder.bottom
    for _ in range(50):
        a = rng.uniform(-2, 2)
        pts = [a + 2.0 ** -n for n in range(60)]
        trace = PointTrace.from_points(space, pts)
        b = a + bottom / 4
        if converges_to(space, trace, a) is Decision.NULL and (
            converges_to(space, trace, b) is Decision.NULL
        ):
            assert space.distance(a, b) < bottom


def test_exhaustive_triangle_implies_strong_fw_not_falsified():
    # triangle on the whole finite carrier, so the strong chain property
    # cannot be falsified from within it
    entry = get_space("uniform_pseudometric{8}")
    assert check_triangle(
        entry.space, itertools.product(entry.finite_carrier, repeat=3)
    ).ok
    cex = falsify_frechet_wilson(
        entry.space, "strong", entry.fw_sampler("strong"), trials=3000, seed=17
    )
    assert cex is None


def test_fw_weak_falsifier_detects_synthetic_violation():
    # synthetic space: a_n meets b_n and b_n meets z quadratically fast, yet
    # a_n stays one unit away from z
    def dist(x, y):
        if x == y:
            return 0.0
        pair = {x[0], y[0]}
        if pair == {"a", "b"} and x[1] == y[1]:
            return 1.0 / x[1] ** 2
        if pair == {"b", "z"}:
            n = x[1] if x[0] == "b" else y[1]
            return 1.0 / n**2
        return 1.0

    space = DistanceSpaceSpec(
        point_descr="weak chain-condition violator",
        distance=dist,
        kind=SpaceKind.DISTANCE,
        monoid=real_nonneg_monoid(),
        ladder=dyadic_ladder(4),
    )

    def sampler(rng):
        n = 64
        return (
            [("a", k) for k in range(1, n + 1)],
            [("b", k) for k in range(1, n + 1)],
            ("z", 0),
        )

    cex = falsify_frechet_wilson(space, "weak", sampler, trials=5, seed=18)
    assert cex is not None
    assert cex.kind == "fw-weak"
