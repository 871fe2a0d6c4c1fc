"""Named built-in monoids, spaces, and maps selectable from config and tests.

Names accept an optional brace parameter, e.g. ``omega_counterexample{128}``
or ``grid_function{8}``.  Deliberately broken instances carry a ``broken_``
prefix and exist so that the validators have something to catch.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

import numpy as np

from ._rng import child_rng
from .engine import CaristiData, LambdaSequence, MeirKeelerData, next_rung_choice
from .monoid import MonoidSpec, MTrace, TestLadder, dyadic_ladder
from ._util import close_eq
from .spaces import (
    DistanceSpaceSpec,
    SpaceKind,
    make_uniform_from_pseudometric,
    product_space,
    gauge_space,
    relation_monoid,
    diagonal,
)


@dataclass(frozen=True)
class MonoidEntry:
    name: str
    spec: MonoidSpec
    ladder: TestLadder
    samples: tuple
    null_battery: tuple = ()
    notnull_battery: tuple = ()
    broken: bool = False


@dataclass(frozen=True)
class SpaceEntry:
    name: str
    space: DistanceSpaceSpec
    samples: tuple
    fw_sampler: Optional[Callable[[str], Callable[[random.Random], Any]]] = None
    finite_carrier: Optional[tuple] = None
    broken: bool = False


@dataclass(frozen=True)
class MapEntry:
    name: str
    space_name: str
    fn: Callable[[float], float]
    descr: str
    x0_default: float
    monotone_x0: float
    meir_keeler: MeirKeelerData
    caristi: CaristiData
    lam: LambdaSequence
    sample_pairs: tuple


def _parse_name(name: str) -> tuple[str, Optional[str]]:
    if "{" in name and name.endswith("}"):
        base, arg = name[:-1].split("{", 1)
        return base, arg
    return name, None


# ---------------------------------------------------------------------------
# Monoids


def real_nonneg_monoid() -> MonoidSpec:
    return MonoidSpec(
        carrier_descr="nonnegative reals (+, 0, <=)",
        combine=lambda a, b: a + b,
        identity=0.0,
        leq=lambda a, b: a <= b,
        sup=max,
        eq=close_eq(),
        cancellative=True,
        subtract=lambda a, b: a - b,
    )


def real_vector_monoid(dim: int) -> MonoidSpec:
    return MonoidSpec(
        carrier_descr=f"real {dim}-vectors (pointwise + and <=)",
        combine=lambda a, b: a + b,
        identity=np.zeros(dim),
        leq=lambda a, b: bool(np.all(a <= b)),
        sup=np.maximum,
        eq=close_eq(),
        cancellative=True,
        subtract=lambda a, b: a - b,
    )


_HIER_POINTS = tuple(range(8))


def hierarchical_rho(a: int, b: int) -> float:
    """An eight-point ultrametric: distance by the deepest shared block."""
    if a == b:
        return 0.0
    if a // 4 != b // 4:
        return 1.0
    if a // 2 != b // 2:
        return 0.5
    return 0.25


def _relation_samples(points: Sequence[int]) -> tuple:
    delta = diagonal(points)

    def sublevel(r: float) -> frozenset:
        return frozenset(
            (a, b) for a in points for b in points if hierarchical_rho(a, b) <= r
        )

    rng = child_rng(0, "relation-samples")
    extras = []
    for _ in range(5):
        pairs = set(delta)
        for a in points:
            for b in points:
                if a < b and rng.random() < 0.18:
                    pairs.add((a, b))
                    pairs.add((b, a))
        extras.append(frozenset(pairs))
    return (delta, sublevel(0.25), sublevel(0.5), sublevel(1.0), *extras)


def _real_batteries() -> tuple[tuple, tuple]:
    # equal lengths, and every trace (hence every pairwise sum) falls well
    # below the depth-20 rung inside the common prefix
    null = (
        MTrace.of([2.0 ** -(n + 1) for n in range(80)]),
        MTrace.of([5.0 * 3.0 ** -(n + 1) for n in range(80)]),
        MTrace.of([0.0] * 80),
    )
    notnull = (
        MTrace.of([0.3] * 40),
        MTrace.of([0.5 + 1.0 / (n + 1) for n in range(40)]),
    )
    return null, notnull


def get_monoid(name: str) -> MonoidEntry:
    base, arg = _parse_name(name)
    if base == "real_nonneg":
        null, notnull = _real_batteries()
        return MonoidEntry(
            name=name,
            spec=real_nonneg_monoid(),
            ladder=dyadic_ladder(20),
            samples=(0.0, 1.0, 2.5, 0.25, 1.0 / 3.0, 0.7, 5.0, 0.001, 12.0, 0.0625),
            null_battery=null,
            notnull_battery=notnull,
        )
    if base == "real_vector":
        dim = int(arg or 3)
        spec = real_vector_monoid(dim)
        rng = child_rng(0, f"real_vector{dim}-samples")
        samples = [np.zeros(dim), np.ones(dim), np.arange(dim, dtype=float)]
        samples += [
            np.array([rng.uniform(0, 3) for _ in range(dim)]) for _ in range(7)
        ]
        rungs = tuple(np.full(dim, 2.0 ** -(i + 1)) for i in range(20))
        ladder = TestLadder(
            rungs=rungs, halving_witness=tuple(i + 1 if i + 1 < 20 else None for i in range(20))
        )
        return MonoidEntry(name=name, spec=spec, ladder=ladder, samples=tuple(samples))
    if base == "grid_function":
        m = int(arg or 8)
        from .fredholm import grid_function_monoid, grid_ladder

        spec = grid_function_monoid(m)
        rng = child_rng(0, f"grid_function{m}-samples")
        samples = [np.zeros(m), np.full(m, 0.5), np.linspace(0, 1, m)]
        samples += [np.array([rng.uniform(0, 2) for _ in range(m)]) for _ in range(7)]
        null = (
            MTrace.of([np.full(m, 2.0 ** -(n + 1)) for n in range(80)]),
            MTrace.of([np.full(m, 0.7 * 2.0 ** -(n + 1)) for n in range(80)]),
        )
        notnull = (MTrace.of([np.full(m, 0.3)] * 40),)
        return MonoidEntry(
            name=name,
            spec=spec,
            ladder=grid_ladder(m),
            samples=tuple(samples),
            null_battery=null,
            notnull_battery=notnull,
        )
    if base == "relation":
        pts = _HIER_POINTS if arg in (None, "8") else tuple(range(int(arg)))
        spec = relation_monoid(pts)
        if pts == _HIER_POINTS:
            samples = _relation_samples(pts)
            rungs = [s for s in (samples[3], samples[2], samples[1]) if s != spec.identity]
        else:
            delta = diagonal(pts)
            full = frozenset((a, b) for a in pts for b in pts)
            samples = (delta, full)
            rungs = [full]
        ladder = TestLadder.build(spec, rungs)
        return MonoidEntry(name=name, spec=spec, ladder=ladder, samples=tuple(samples))
    if base == "product":
        parts = [get_monoid(p.strip()) for p in (arg or "real_nonneg,real_nonneg").split(",")]
        from .spaces import product_ladder, product_monoid

        spec = product_monoid([p.spec for p in parts])
        ladder = product_ladder([p.ladder for p in parts], spec)
        combos = list(itertools.product(*[p.samples[:4] for p in parts]))
        return MonoidEntry(name=name, spec=spec, ladder=ladder, samples=tuple(combos))
    if base == "broken_subtraction":
        spec = MonoidSpec(
            carrier_descr="reals with subtraction (deliberately not a monoid)",
            combine=lambda a, b: a - b,
            identity=0.0,
            leq=lambda a, b: a <= b,
            eq=close_eq(),
        )
        return MonoidEntry(
            name=name,
            spec=spec,
            ladder=dyadic_ladder(4),
            samples=(0.0, 1.0, 2.0, 3.0, 2.5),
            broken=True,
        )
    raise KeyError(f"unknown monoid {name!r}")


MONOID_NAMES = (
    "real_nonneg",
    "real_vector{3}",
    "grid_function{8}",
    "relation{8}",
    "product{real_nonneg,real_nonneg}",
    "broken_subtraction",
)


# ---------------------------------------------------------------------------
# Spaces


def _real_space(
    name: str,
    dist: Callable[[float, float], float],
    kind: SpaceKind,
    ladder_depth: int,
    descr: str,
) -> DistanceSpaceSpec:
    return DistanceSpaceSpec(
        point_descr=descr,
        distance=dist,
        kind=kind,
        monoid=real_nonneg_monoid(),
        ladder=dyadic_ladder(ladder_depth),
        weierstrass_capable=True,
        regular_order=True,
        co_regular_order=True,
    )


def snowflake_distance(x: float, y: float) -> float:
    d = abs(x - y)
    return d if d <= 1.0 else d * d


def _real_fw_sampler(space: DistanceSpaceSpec, nonneg: bool = False):
    bottom = space.ladder.rungs[-1]

    def factory(level: str):
        if level == "strong":

            def sample(rng: random.Random):
                n = rng.randint(2, 32)
                if rng.random() < 0.5:
                    h = rng.uniform(0.0, 2.0 * bottom / n)
                else:
                    h = rng.uniform(0.0, 1.2 * math.sqrt(bottom / n))
                a = rng.uniform(0.0, 2.0) if nonneg else rng.uniform(-2.0, 2.0)
                sign = 1.0 if nonneg or rng.random() < 0.5 else -1.0
                return [a + sign * i * h for i in range(n)]

            return sample

        def sample(rng: random.Random):
            z = rng.uniform(0.0, 2.0) if nonneg else rng.uniform(-2.0, 2.0)
            amp = rng.uniform(0.1, 1.0)
            n = 48
            xs = [z + amp / (i + 1) ** 2 for i in range(n)]
            ys = [z - amp / (i + 1) ** 2 for i in range(n)]
            if nonneg:
                xs = [abs(v) for v in xs]
                ys = [abs(v) for v in ys]
            if level == "weak":
                return xs, ys, z
            zs = [z + amp / (2 * (i + 1) ** 2) for i in range(n)]
            return xs, zs, ys

        return sample

    return factory


def omega_point(kind: str, index: int = 0) -> tuple:
    if kind == "inf":
        return ("inf",)
    return (kind, index)


def omega_distance(x: tuple, y: tuple) -> float:
    if x == y:
        return 0.0
    kx, ky = x[0], y[0]
    if kx == "n" and ky == "n":
        return 1.0
    if kx == "w" and ky == "w":
        return 1.0
    if kx == "n":
        return 1.0 / x[1] ** 2
    if ky == "n":
        return 1.0 / y[1] ** 2
    j = x[1] if kx == "w" else y[1]
    return 1.0 / j**2


def omega_space(n_max: int = 128) -> DistanceSpaceSpec:
    """Naturals, a parallel copy of marked points, and one point at infinity.

    Distinct naturals sit at distance one from each other while both copies
    converge quadratically to the infinity point, so the interleaved walk has
    a summable consecutive-distance series without ever being Cauchy.
    """
    return DistanceSpaceSpec(
        point_descr=f"omega interleaving space (n<={n_max})",
        distance=omega_distance,
        kind=SpaceKind.DISTANCE,
        monoid=real_nonneg_monoid(),
        ladder=dyadic_ladder(4),
    )


def interleaved_sequence(length: int) -> list[tuple]:
    """The canonical walk 1, w1, 2, w2, ... of the requested length."""
    out = []
    k = 1
    while len(out) < length:
        out.append(("n", k))
        if len(out) < length:
            out.append(("w", k))
        k += 1
    return out


def _omega_fw_sampler(n_max: int):
    def factory(level: str):
        if level == "strong":

            def sample(rng: random.Random):
                k = rng.randint(2, n_max - 1)
                return [("n", k), ("w", k), ("n", k + 1)]

            return sample

        def sample(rng: random.Random):
            start = rng.randint(1, max(1, n_max - 65))
            n = min(64, n_max - start)
            xs = [("n", start + i) for i in range(n)]
            if level == "weak":
                choice = rng.random()
                if choice < 0.5:
                    return xs, [("w", start + i) for i in range(n)], ("inf",)
                return xs, [("inf",)] * n, ("inf",)
            zs = [("w", start + i) for i in range(n)]
            ys = [("n", start + i + 1) for i in range(n)]
            return xs, zs, ys

        return sample

    return factory


def get_space(name: str) -> SpaceEntry:
    base, arg = _parse_name(name)
    if base == "real_abs":
        space = _real_space(
            name, lambda x, y: abs(x - y), SpaceKind.DISTANCE, 20, "reals with |x-y|"
        )
        return SpaceEntry(
            name=name,
            space=space,
            samples=tuple([-2.0, -0.5, 0.0, 0.3, 1.0, 1.5, 2.0, 3.25, -1.25, 0.0625]),
            fw_sampler=_real_fw_sampler(space),
        )
    if base == "snowflake":
        space = _real_space(
            name,
            snowflake_distance,
            SpaceKind.DISTANCE,
            4,
            "reals with |x-y| below one and (x-y)^2 above",
        )
        return SpaceEntry(
            name=name,
            space=space,
            samples=tuple([-2.0, -0.5, 0.0, 0.3, 1.0, 1.5, 2.0, 3.25]),
            fw_sampler=_real_fw_sampler(space),
        )
    if base == "squared":
        space = _real_space(
            name, lambda x, y: (x - y) ** 2, SpaceKind.DISTANCE, 4, "reals with (x-y)^2"
        )
        return SpaceEntry(
            name=name,
            space=space,
            samples=tuple([-2.0, -0.5, 0.0, 0.3, 1.0, 1.5, 2.0, 3.25]),
            fw_sampler=_real_fw_sampler(space),
        )
    if base == "dislocated_max":
        space = DistanceSpaceSpec(
            point_descr="nonnegative reals with max(x, y)",
            distance=lambda x, y: max(x, y),
            kind=SpaceKind.DISLOCATED,
            monoid=real_nonneg_monoid(),
            ladder=dyadic_ladder(4),
        )
        return SpaceEntry(
            name=name,
            space=space,
            samples=tuple([0.0, 0.25, 0.5, 1.0, 1.75, 2.0, 3.0]),
            fw_sampler=_real_fw_sampler(space, nonneg=True),
        )
    if base == "omega_counterexample":
        n_max = int(arg or 128)
        space = omega_space(n_max)
        samples = [("inf",)]
        for k in (1, 2, 3, 5, 8, 13, min(21, n_max), n_max):
            samples += [("n", k), ("w", k)]
        return SpaceEntry(
            name=name,
            space=space,
            samples=tuple(samples),
            fw_sampler=_omega_fw_sampler(n_max),
        )
    if base == "uniform_pseudometric":
        pts = _HIER_POINTS if arg in (None, "8") else tuple(range(int(arg)))
        space, _ladder = make_uniform_from_pseudometric(
            pts, hierarchical_rho, [1.0, 0.5, 0.25, 0.125]
        )
        rng = child_rng(0, "uniform-fw")

        def factory(level: str):
            def sample(r: random.Random):
                n = r.randint(2, 6)
                chain = [r.choice(pts) for _ in range(n)]
                if level == "strong":
                    return chain
                z = r.choice(pts)
                xs = chain * 8
                ys = list(reversed(chain)) * 8
                if level == "weak":
                    return xs, ys, z
                return xs, [z] * len(xs), ys

            return sample

        return SpaceEntry(
            name=name,
            space=space,
            samples=tuple(pts),
            fw_sampler=factory,
            finite_carrier=tuple(pts),
        )
    if base == "gauge":
        count = int(arg or 3)
        scales = [1.0, 0.5, 2.0, 0.25, 4.0][:count]
        factors = [
            DistanceSpaceSpec(
                point_descr=f"reals with {c}|x-y|",
                distance=(lambda c_: lambda x, y: c_ * abs(x - y))(c),
                kind=SpaceKind.PSEUDO,
                monoid=real_nonneg_monoid(),
                ladder=dyadic_ladder(20),
                weierstrass_capable=True,
                regular_order=True,
                co_regular_order=True,
            )
            for c in scales
        ]
        samples = (-2.0, -0.5, 0.0, 0.3, 1.0, 1.5, 2.0)
        space = gauge_space(factors, samples=samples)
        return SpaceEntry(name=name, space=space, samples=samples)
    if base == "product":
        parts = (arg or "real_abs,real_abs,sigma").split(",")
        mode = parts[-1].strip()
        factor_entries = [get_space(p.strip()) for p in parts[:-1]]
        space = product_space([e.space for e in factor_entries], mode=mode)
        combos = tuple(
            itertools.islice(
                itertools.product(*[e.samples[:4] for e in factor_entries]), 16
            )
        )
        return SpaceEntry(name=name, space=space, samples=combos)
    if base == "broken_pseudo_as_distance":
        space = DistanceSpaceSpec(
            point_descr="plane with the first-coordinate distance, wrongly declared a distance",
            distance=lambda x, y: abs(x[0] - y[0]),
            kind=SpaceKind.DISTANCE,
            monoid=real_nonneg_monoid(),
            ladder=dyadic_ladder(4),
        )
        samples = tuple((a, b) for a in (0.0, 1.0, 2.0) for b in (0.0, 1.0, 3.0))
        return SpaceEntry(name=name, space=space, samples=samples, broken=True)
    raise KeyError(f"unknown space {name!r}")


SPACE_NAMES = (
    "real_abs",
    "snowflake",
    "squared",
    "dislocated_max",
    "omega_counterexample{128}",
    "uniform_pseudometric{8}",
    "gauge{3}",
    "product{real_abs,real_abs,sigma}",
    "broken_pseudo_as_distance",
)


# ---------------------------------------------------------------------------
# Named maps for the map solver


def default_sample_pairs(ladder: TestLadder) -> tuple:
    pairs = []
    for r in ladder.rungs:
        pairs.append((0.0, r))
        pairs.append((-r, 0.4 * r))
        pairs.append((0.17, 0.17 + 1.4 * r))
    return tuple(pairs)


def get_map(name: str) -> MapEntry:
    entry = get_space("real_abs")
    ladder = entry.space.ladder
    plus = entry.space.monoid.combine
    pairs = default_sample_pairs(ladder)
    mk = MeirKeelerData(delta_of=next_rung_choice(ladder), zeta=plus)

    if name == "halving":
        return MapEntry(
            name=name,
            space_name="real_abs",
            fn=lambda x: x / 2.0,
            descr="x -> x/2",
            x0_default=8.0,
            monotone_x0=-8.0,
            meir_keeler=mk,
            caristi=CaristiData(potential=lambda x: 2.0 * abs(x), eta=lambda a: a),
            lam=LambdaSequence.constant(lambda t: t / 2.0, description="t -> t/2"),
            sample_pairs=pairs,
        )
    if name == "affine_to_two":
        return MapEntry(
            name=name,
            space_name="real_abs",
            fn=lambda x: x / 2.0 + 1.0,
            descr="x -> x/2 + 1",
            x0_default=0.0,
            monotone_x0=0.0,
            meir_keeler=mk,
            caristi=CaristiData(
                potential=lambda x: 2.0 * abs(x - 2.0), eta=lambda a: a
            ),
            lam=LambdaSequence.constant(lambda t: t / 2.0, description="t -> t/2"),
            sample_pairs=pairs,
        )
    if name == "increment":
        return MapEntry(
            name=name,
            space_name="real_abs",
            fn=lambda x: x + 1.0,
            descr="x -> x + 1",
            x0_default=0.0,
            monotone_x0=0.0,
            meir_keeler=mk,
            caristi=CaristiData(potential=lambda x: abs(x), eta=lambda a: a),
            lam=LambdaSequence.constant(lambda t: t / 2.0, description="t -> t/2"),
            sample_pairs=pairs,
        )
    if name == "identity":
        return MapEntry(
            name=name,
            space_name="real_abs",
            fn=lambda x: x,
            descr="x -> x",
            x0_default=5.0,
            monotone_x0=5.0,
            meir_keeler=mk,
            caristi=CaristiData(potential=lambda x: abs(x), eta=lambda a: a),
            lam=LambdaSequence.constant(lambda t: t, description="t -> t"),
            sample_pairs=pairs,
        )
    raise KeyError(f"unknown map {name!r}")


MAP_NAMES = ("halving", "affine_to_two", "increment", "identity")
