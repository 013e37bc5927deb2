"""Ground-truth pentagrid in the Poincare disc, plus the SVG renderer.

The tiling is built from the central right-angled pentagon by breadth-first
reflections across sides.  Hyperbolic lines are circles orthogonal to the
unit circle (or diameters), so a reflection is a Euclidean circle inversion
(or a mirror reflection).  Tiles are deduplicated by their centers; the
edge-sharing relation recovered from coincident side endpoints is an
adjacency oracle completely independent of the Fibonacci-tree model, and
match_coordinates certifies the two against each other.

Points are complex numbers in the open unit disc.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from . import grid
from .grid import CENTRAL, circle_of, circle_size, neighbors
from .rules import B, W

DEDUP_TOL = 1e-9        # centers closer than this are one tile
MARGIN_TOL = 1e-6       # distinct centers closer than this abort the build
VERTEX_TOL = 1e-7       # coincident side endpoints
MAX_DEPTH = 7

P_SIDES = 5
Q_AROUND_VERTEX = 4


class GeometryError(ValueError):
    """Degenerate geometric input (e.g. a side through coincident points)."""


class GenerationError(RuntimeError):
    """Tile deduplication became ambiguous; the tolerances no longer hold."""


class ModelMismatchError(RuntimeError):
    """Tree adjacency and geometric edge sharing could not be reconciled."""


def _is_diameter(a, b):
    return abs((a.conjugate() * b).imag) < 1e-14 * max(1.0, abs(a) * abs(b))


def orthocircle(a, b):
    """Center and radius of the circle through a, b orthogonal to the unit circle."""
    ra, rb = abs(a) ** 2 + 1.0, abs(b) ** 2 + 1.0
    det = 2.0 * (a.real * b.imag - a.imag * b.real)
    if abs(det) < 1e-15:
        raise GeometryError("points lie on a diameter; no orthogonal circle")
    cx = (ra * b.imag - rb * a.imag) / det
    cy = (rb * a.real - ra * b.real) / det
    c = complex(cx, cy)
    return c, math.sqrt(abs(c) ** 2 - 1.0)


def reflect(p, a, b):
    """Reflect p across the hyperbolic line through a and b.

    Mirror reflection when the line is a diameter, inversion in the
    orthogonal circle otherwise; an involution preserving the unit disc.
    """
    if abs(a - b) < 1e-14:
        raise GeometryError("side endpoints coincide")
    if _is_diameter(a, b):
        u = (b - a) / abs(b - a)
        return u * u * p.conjugate()
    c, r = orthocircle(a, b)
    d = p - c
    return c + (r * r) * d / (abs(d) ** 2)


@dataclass(frozen=True)
class Pentagon:
    """One tile of the generated disc."""

    id: int
    center: complex
    vertices: tuple
    depth: int
    parent: tuple  # (tile id, side index) or None for the root
    ccw: bool      # orientation of the vertex list (flips per reflection)


def circumradius():
    """Euclidean circumradius of the central {5,4} pentagon.

    Center-vertex-side-midpoint is a hyperbolic right triangle with angles
    pi/5 and pi/4, so the hypotenuse R satisfies cosh R = cot(pi/5)cot(pi/4);
    the matching apothem relation cosh a = cos(pi/4)/sin(pi/5) is checked by
    the tests.  Euclidean distance in the disc is tanh(R/2).
    """
    cosh_r = 1.0 / (math.tan(math.pi / P_SIDES) * math.tan(math.pi / Q_AROUND_VERTEX))
    return math.tanh(math.acosh(cosh_r) / 2.0)


def apothem():
    """Hyperbolic apothem of the central pentagon."""
    return math.acosh(math.cos(math.pi / Q_AROUND_VERTEX) / math.sin(math.pi / P_SIDES))


def central_pentagon():
    """The regular right-angled pentagon centered at the origin.

    One vertex lies on the positive x-axis; the vertex list runs
    counterclockwise.
    """
    r0 = circumradius()
    verts = tuple(r0 * cmath.exp(2j * math.pi * k / P_SIDES) for k in range(P_SIDES))
    return Pentagon(id=0, center=0j, vertices=verts, depth=0, parent=None, ccw=True)


def reflect_pentagon(tile, side, new_id):
    """Image of a tile under reflection across one of its sides."""
    a = tile.vertices[side]
    b = tile.vertices[(side + 1) % P_SIDES]
    verts = tuple(reflect(v, a, b) for v in tile.vertices)
    return Pentagon(
        id=new_id,
        center=reflect(tile.center, a, b),
        vertices=verts,
        depth=tile.depth + 1,
        parent=(tile.id, side),
        ccw=not tile.ccw,
    )


class _PointIndex:
    """Grid-hashed point store: near-coincident points get one id."""

    def __init__(self, tol, margin=None):
        self.tol = tol
        self.margin = margin
        self.cell = max(tol, 1e-7) * 10.0
        self.points = []
        self._grid = {}

    def _cells_near(self, p):
        cx, cy = int(math.floor(p.real / self.cell)), int(math.floor(p.imag / self.cell))
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                yield (cx + dx, cy + dy)

    def find(self, p):
        best, best_d = None, None
        for key in self._cells_near(p):
            for idx in self._grid.get(key, ()):
                d = abs(self.points[idx] - p)
                if best_d is None or d < best_d:
                    best, best_d = idx, d
        if best is None or best_d >= self.tol:
            if self.margin is not None and best_d is not None and best_d < self.margin:
                raise GenerationError(
                    f"distinct points {best_d:.2e} apart: below the safety margin"
                )
            return None
        return best

    def add(self, p):
        idx = len(self.points)
        self.points.append(p)
        key = (int(math.floor(p.real / self.cell)), int(math.floor(p.imag / self.cell)))
        self._grid.setdefault(key, []).append(idx)
        return idx

    def canonical(self, p):
        found = self.find(p)
        return self.add(p) if found is None else found


@dataclass
class GeoTiling:
    """Generated disc: tiles in BFS order plus the edge-sharing relation."""

    depth: int
    tiles: list
    edges: set            # frozensets {id, id}
    side_neighbor: dict   # tile id -> {side index: neighbor id}


def generate(depth):
    """Breadth-first reflection tiling of the disc out to the given depth."""
    if not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must be within 0..{MAX_DEPTH}")
    centers = _PointIndex(DEDUP_TOL, margin=MARGIN_TOL)
    root = central_pentagon()
    tiles = [root]
    centers.add(root.center)
    frontier = [root]
    for _ in range(depth):
        next_frontier = []
        for tile in frontier:
            for side in range(P_SIDES):
                cand = reflect_pentagon(tile, side, new_id=len(tiles))
                if centers.find(cand.center) is not None:
                    continue
                centers.add(cand.center)
                tiles.append(cand)
                next_frontier.append(cand)
        frontier = next_frontier
    edges, side_neighbor = _edge_sharing(tiles)
    return GeoTiling(depth=depth, tiles=tiles, edges=edges, side_neighbor=side_neighbor)


def _edge_sharing(tiles):
    """Pairs of tiles sharing a full side (both endpoints coincide)."""
    vertex_ids = _PointIndex(VERTEX_TOL)
    by_side = {}
    for tile in tiles:
        ids = [vertex_ids.canonical(v) for v in tile.vertices]
        for side in range(P_SIDES):
            key = frozenset((ids[side], ids[(side + 1) % P_SIDES]))
            by_side.setdefault(key, []).append((tile.id, side))
    edges = set()
    side_neighbor = {tile.id: {} for tile in tiles}
    for key, owners in by_side.items():
        if len(owners) > 2:
            raise GenerationError(f"side shared by {len(owners)} tiles")
        if len(owners) == 2:
            (ta, sa), (tb, sb) = owners
            edges.add(frozenset((ta, tb)))
            side_neighbor[ta][sa] = tb
            side_neighbor[tb][sb] = ta
    return edges, side_neighbor


def geo_adjacency(tiling):
    """The edge-sharing relation of a generated tiling."""
    return tiling.edges


def _ordered_ring(tiling, tile_id, first_neighbor, clockwise):
    """The 5 neighbors of a tile in rotational order, starting at a given one.

    Uses the vertex-list cyclic order of the pentagon (exact combinatorics;
    the ccw flag undoes the orientation flips of the generating reflections).
    """
    tile = tiling.tiles[tile_id]
    ring_sides = list(range(P_SIDES)) if tile.ccw else list(reversed(range(P_SIDES)))
    if clockwise:
        ring_sides.reverse()
    nbrs = tiling.side_neighbor[tile_id]
    ring = [nbrs.get(s) for s in ring_sides]
    if first_neighbor not in ring:
        raise ModelMismatchError(f"anchor neighbor missing around tile {tile_id}")
    k = ring.index(first_neighbor)
    return ring[k:] + ring[:k]


@dataclass(frozen=True)
class MatchResult:
    """Certified correspondence between tree coordinates and disc tiles."""

    to_geo: dict     # TileCoord -> tile id
    to_tree: dict    # tile id -> TileCoord
    clockwise: bool  # orientation the match succeeded with


def match_coordinates(tiling):
    """Anchor the tree model to the disc and certify the adjacencies agree.

    The central tile maps to the origin tile and sector 1's root to the
    first petal counterclockwise from the positive x-axis.  Both rotational
    orientations of the side numbering are tried; the match must extend to a
    full isomorphism on the disc of radius depth-1, else the model and the
    geometry disagree and we fail loudly.
    """
    failures = []
    for clockwise in (False, True):
        try:
            return _match_oriented(tiling, clockwise)
        except ModelMismatchError as exc:
            failures.append(str(exc))
    raise ModelMismatchError(
        "no rotational orientation reconciles the tree model with the disc: "
        + "; ".join(failures)
    )


def _match_oriented(tiling, clockwise):
    origin = tiling.tiles[0]
    if abs(origin.center) > 1e-12:
        raise ModelMismatchError("tile 0 is not at the origin")
    petals = sorted(
        tiling.side_neighbor[0].values(),
        key=lambda i: cmath.phase(tiling.tiles[i].center) % (2 * math.pi),
    )
    if len(petals) != 5:
        raise ModelMismatchError("origin tile does not have 5 side neighbors")
    if clockwise:
        petals = [petals[0]] + petals[1:][::-1]
    to_geo = {CENTRAL: 0}
    to_tree = {0: CENTRAL}
    for s in range(1, 6):
        to_geo[(s, 1)] = petals[s - 1]
        to_tree[petals[s - 1]] = (s, 1)

    for n in range(1, tiling.depth):
        t = grid.tile_at(n, 0)
        for _ in range(circle_size(n)):
            gid = to_geo.get(t)
            if gid is None:
                raise ModelMismatchError(f"tile {t} unreached on circle {n}")
            expected = neighbors(t)
            father_gid = to_geo.get(expected[0])
            if father_gid is None:
                raise ModelMismatchError(f"father of {t} unmapped")
            ring = _ordered_ring(tiling, gid, father_gid, clockwise)
            for i in range(1, 5):
                u, gu = expected[i], ring[i]
                if gu is None:
                    raise ModelMismatchError(f"missing geo neighbor on side {i + 1} of {t}")
                if u in to_geo:
                    if to_geo[u] != gu:
                        raise ModelMismatchError(
                            f"side {i + 1} of {t}: tree says {u}, geometry disagrees"
                        )
                elif gu in to_tree:
                    raise ModelMismatchError(
                        f"geo tile {gu} claimed by both {to_tree[gu]} and {u}"
                    )
                else:
                    to_geo[u] = gu
                    to_tree[gu] = u
            t = grid.circle_succ(t)

    # full cross-certification on the disc where geo adjacency is complete
    for t, gid in to_geo.items():
        if circle_of(t) > tiling.depth - 1:
            continue
        tree_side = {to_geo.get(u) for u in neighbors(t)}
        if None in tree_side:
            raise ModelMismatchError(f"unmapped tree neighbor of {t}")
        geo_side = set(tiling.side_neighbor[gid].values())
        if tree_side != geo_side:
            raise ModelMismatchError(f"adjacency sets differ at {t}")
    return MatchResult(to_geo=to_geo, to_tree=to_tree, clockwise=clockwise)


@lru_cache(maxsize=4)
def matched_tiling(depth):
    """Generated disc plus certified coordinates, cached per depth."""
    tiling = generate(depth)
    return tiling, match_coordinates(tiling)


DEFAULT_COLORS = {W: "#ffffff", B: "#2b4ba6"}
_SVG_SCALE = 500.0


def _fmt(x):
    out = f"{x:.5f}"
    return "0.00000" if out == "-0.00000" else out


def _svg_point(z):
    return _fmt(_SVG_SCALE * z.real), _fmt(-_SVG_SCALE * z.imag)


def _side_path(a, b):
    """SVG path segment from a to b along the hyperbolic line through them."""
    x, y = _svg_point(b)
    if _is_diameter(a, b):
        return f"L {x} {y}"
    c, r = orthocircle(a, b)
    cross = (a - c).real * (b - c).imag - (a - c).imag * (b - c).real
    sweep = 0 if cross > 0 else 1  # y-axis flip inverts the sweep sense
    rr = _fmt(_SVG_SCALE * r)
    return f"A {rr} {rr} 0 0 {sweep} {x} {y}"


def _pentagon_path(tile):
    x0, y0 = _svg_point(tile.vertices[0])
    parts = [f"M {x0} {y0}"]
    for k in range(P_SIDES):
        a = tile.vertices[k]
        b = tile.vertices[(k + 1) % P_SIDES]
        parts.append(_side_path(a, b))
    parts.append("Z")
    return " ".join(parts)


def render_svg(config, depth, colors=None, states=None):
    """Deterministic SVG image of a configuration on the disc of given depth.

    `config` supplies the B-cells; `states` may instead give a sparse
    {tile: state} mapping for multi-state renders.  Same input, same bytes.
    """
    if not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must be within 0..{MAX_DEPTH}")
    palette = dict(DEFAULT_COLORS)
    if colors:
        palette.update(colors)
    tiling, match = matched_tiling(depth)
    if states is None:
        states = {t: B for t in config.cells}
    span = _fmt(_SVG_SCALE * 1.04)
    size = _fmt(2 * _SVG_SCALE * 1.04)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="-{span} -{span} {size} {size}">',
        f'<circle cx="0" cy="0" r="{_fmt(_SVG_SCALE)}" fill="none" '
        'stroke="#888888" stroke-width="1"/>',
    ]
    for tile in tiling.tiles:
        coord = match.to_tree.get(tile.id)
        state = states.get(coord, W) if coord is not None else W
        fill = palette.get(state)
        if fill is None:
            raise ValueError(f"no color for state {state!r}")
        lines.append(
            f'<path d="{_pentagon_path(tile)}" fill="{fill}" '
            'stroke="#404040" stroke-width="0.8"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
