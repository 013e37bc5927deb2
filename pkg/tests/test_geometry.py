"""Poincare-disc tiling: reflections, generation, matching, and SVG output."""

import cmath
import math
import random

import pytest

from pentaca import geometry
from pentaca.engine import Configuration
from pentaca.geometry import (
    GeometryError,
    Pentagon,
    central_pentagon,
    generate,
    geo_adjacency,
    match_coordinates,
    matched_tiling,
    orthocircle,
    reflect,
    render_svg,
)
from pentaca.grid import CENTRAL, circle_of, circle_size, neighbors
from pentaca.rules import B, W


def test_central_pentagon_basics():
    pent = central_pentagon()
    assert len(pent.vertices) == 5
    assert pent.center == 0
    r0 = abs(pent.vertices[0])
    # cosh R = cot(pi/5) cot(pi/4); Euclidean radius tanh(R/2)
    want = math.tanh(math.acosh(1 / math.tan(math.pi / 5)) / 2)
    assert abs(r0 - want) < 1e-12
    assert abs(pent.vertices[0].imag) < 1e-12  # one vertex on the +x axis
    assert all(abs(abs(v) - r0) < 1e-12 for v in pent.vertices)


def _tangent_toward(v, other):
    if geometry._is_diameter(v, other):
        d = other - v
    else:
        c, _ = orthocircle(v, other)
        d = 1j * (v - c)
        if (d.conjugate() * (other - v)).real < 0:
            d = -d
    return d / abs(d)


def test_interior_angles_are_right():
    pent = central_pentagon()
    vs = pent.vertices
    for k in range(5):
        a, v, b = vs[k - 1], vs[k], vs[(k + 1) % 5]
        t1 = _tangent_toward(v, a)
        t2 = _tangent_toward(v, b)
        angle = math.acos(max(-1.0, min(1.0, (t1.conjugate() * t2).real)))
        assert abs(angle - math.pi / 2) < 1e-9
    # and the same at a vertex of a depth-2 tile
    tiling = generate(2)
    tile = tiling.tiles[-1]
    vs = tile.vertices
    for k in range(5):
        t1 = _tangent_toward(vs[k], vs[k - 1])
        t2 = _tangent_toward(vs[k], vs[(k + 1) % 5])
        angle = math.acos(max(-1.0, min(1.0, (t1.conjugate() * t2).real)))
        assert abs(angle - math.pi / 2) < 1e-9


def test_reflect_involution_and_disc_preservation():
    rng = random.Random(4)
    for _ in range(300):
        p = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
        a = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
        b = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
        if abs(a - b) < 1e-3 or abs(p) >= 1:
            continue
        q = reflect(p, a, b)
        assert abs(q) < 1.0
        assert abs(reflect(q, a, b) - p) < 1e-12


def test_reflect_across_diameter_fixes_origin():
    assert abs(reflect(0j, 0.5 + 0j, -0.3 + 0j)) < 1e-15


def test_reflect_degenerate_side():
    with pytest.raises(GeometryError):
        reflect(0.1 + 0.1j, 0.2 + 0.2j, 0.2 + 0.2j)


def test_center_reflection_distance_is_two_apothems():
    pent = central_pentagon()
    img = reflect(0j, pent.vertices[0], pent.vertices[1])
    assert abs(2 * math.atanh(abs(img)) - 2 * geometry.apothem()) < 1e-10


def test_generation_counts():
    for depth, want in [(0, 1), (1, 6), (2, 21), (3, 61), (4, 166), (5, 441)]:
        assert len(generate(depth).tiles) == want
    with pytest.raises(ValueError):
        generate(8)


def test_edges_and_degrees():
    assert len(geo_adjacency(generate(1))) == 5
    tiling = generate(4)
    degree = {t.id: 0 for t in tiling.tiles}
    for e in tiling.edges:
        for i in e:
            degree[i] += 1
    for tile in tiling.tiles:
        if tile.depth <= 3:
            assert degree[tile.id] == 5


def test_match_coordinates_depth6_certifies_d5():
    tiling, match = matched_tiling(6)
    assert match.to_geo[CENTRAL] == 0
    assert len(match.to_geo) == 1 + sum(circle_size(n) for n in range(1, 7))
    checked = 0
    for t, gid in match.to_geo.items():
        if circle_of(t) > 5:
            continue
        got = set(tiling.side_neighbor[gid].values())
        want = {match.to_geo[u] for u in neighbors(t)}
        assert got == want, t
        checked += 1
    assert checked == 441
    # sector-1 root is the first petal counterclockwise from the +x axis
    root_center = tiling.tiles[match.to_geo[(1, 1)]].center
    angle = cmath.phase(root_center) % (2 * math.pi)
    assert angle == min(
        cmath.phase(tiling.tiles[match.to_geo[(s, 1)]].center) % (2 * math.pi)
        for s in range(1, 6)
    )


def test_match_rejects_corrupted_adjacency():
    tiling = generate(3)
    # scramble the ring of one petal: swap two of its outward sides
    sn = {k: dict(v) for k, v in tiling.side_neighbor.items()}
    petal = next(iter(sn[0].values()))
    outward = [s for s, nbr in sorted(sn[petal].items()) if nbr != 0]
    a, b = outward[0], outward[1]
    sn[petal][a], sn[petal][b] = sn[petal][b], sn[petal][a]
    broken = geometry.GeoTiling(
        depth=tiling.depth, tiles=tiling.tiles, edges=tiling.edges, side_neighbor=sn
    )
    with pytest.raises(geometry.ModelMismatchError):
        match_coordinates(broken)


def test_render_svg_deterministic_and_filled():
    empty = render_svg(Configuration(frozenset()), 2)
    assert empty == render_svg(Configuration(frozenset()), 2)
    assert empty.count("<path") == 21
    assert DEFAULT_B_COLOR not in empty

    one = render_svg(Configuration.from_tiles([CENTRAL]), 2)
    assert one.count(DEFAULT_B_COLOR) == 1

    custom = render_svg(
        Configuration.from_tiles([CENTRAL]), 2, colors={B: "#ff0000", W: "#eeeeee"}
    )
    assert custom.count("#ff0000") == 1
    assert custom.count("#eeeeee") == 20


DEFAULT_B_COLOR = geometry.DEFAULT_COLORS[B]


def test_render_three_step_evolution_snapshot():
    # three steps of the all-front-rules table from one seed: 29 cells on the
    # front circle plus the cells accumulated behind it; the byte snapshot
    # was frozen after the first verified render
    import hashlib

    from pentaca.analysis import variant_table
    from pentaca.engine import step

    table = variant_table((B, B, B))
    config = Configuration.from_tiles([(1, 3)])
    for _ in range(3):
        config = step(table, config)
    svg = render_svg(config, 5)
    digest = hashlib.sha256(svg.encode("ascii")).hexdigest()
    assert svg.count(DEFAULT_B_COLOR) == 49
    assert digest == RENDER_SNAPSHOT_SHA256


RENDER_SNAPSHOT_SHA256 = (
    "0bceea9c91c2fcb7c58e1ebc4eb0ba4a7b7e30c92a30d83a864dc213edf2181e"
)
