"""Tile addressing and side-numbered adjacency of the pentagrid.

A tile is the central tile or a pair (sector, node number) with sectors
1..5, each sector spanned by one Fibonacci tree (see fib).  Tiles are plain
tuples; the central tile is the sentinel (0, 0).  Text form: "C" for the
central tile, "s:nu" otherwise.

Sides are numbered 1..5, side 1 facing the father.  The neighbour model:

  * central          -> the five sector roots
  * white node       -> [father, black son, white son, white son,
                         black son of the circle successor]
  * black node       -> [father, circle predecessor of the father,
                         black son, white son,
                         black son of the circle successor]

A black node therefore has exactly two neighbours on the previous circle
and every tile has exactly five neighbours.  The model is certified against
the geometric tiling built by the geometry module.
"""

from functools import lru_cache

from . import fib
from .fib import BLACK, fib as _f, father, kind_of, level_first, level_last, level_of, sons

CENTRAL = (0, 0)


class AdjacencyError(ValueError):
    """Raised when two tiles are not side-adjacent."""


def is_central(t):
    return t == CENTRAL


def check_tile(t):
    """Validate a tile coordinate, returning it."""
    if t == CENTRAL:
        return t
    s, nu = t
    if not 1 <= s <= 5:
        raise ValueError(f"sector {s} outside 1..5")
    if nu < 1:
        raise ValueError(f"node number must be >= 1, got {nu}")
    if nu > fib.MAX_NODE:
        raise fib.FibRangeError(f"node number {nu} beyond supported range")
    return t


def parse_tile(text):
    """Parse "C" or "s:nu" into a tile."""
    text = text.strip()
    if text == "C":
        return CENTRAL
    try:
        s_str, nu_str = text.split(":")
        t = (int(s_str), int(nu_str))
    except ValueError:
        raise ValueError(f"malformed tile {text!r} (expected 'C' or 's:nu')") from None
    return check_tile(t)


def format_tile(t):
    """Inverse of parse_tile."""
    if t == CENTRAL:
        return "C"
    return f"{t[0]}:{t[1]}"


def circle_of(t):
    """Index of the Fibonacci circle the tile lies on (central tile: 0)."""
    if t == CENTRAL:
        return 0
    check_tile(t)
    return level_of(t[1]) + 1


def circle_size(n):
    """Number of tiles on circle n: 1 for n = 0, else 5 * f_{2n-1}."""
    if n < 0:
        raise ValueError("circle index must be >= 0")
    if n == 0:
        return 1
    return 5 * _f(2 * n - 1)


def circle_succ(t):
    """Next tile on the same circle in the global rotational order."""
    if t == CENTRAL:
        raise ValueError("the central tile has no circle order")
    s, nu = check_tile(t)
    m = level_of(nu)
    if nu < level_last(m):
        return (s, nu + 1)
    return (s % 5 + 1, level_first(m))


def circle_pred(t):
    """Previous tile on the same circle (inverse of circle_succ)."""
    if t == CENTRAL:
        raise ValueError("the central tile has no circle order")
    s, nu = check_tile(t)
    m = level_of(nu)
    if nu > level_first(m):
        return (s, nu - 1)
    return ((s - 2) % 5 + 1, level_last(m))


@lru_cache(maxsize=1 << 20)
def neighbors(t):
    """The five neighbours of a tile, tuple index i holding side i+1."""
    if t == CENTRAL:
        return ((1, 1), (2, 1), (3, 1), (4, 1), (5, 1))
    s, nu = check_tile(t)
    fa = father(nu)
    father_tile = CENTRAL if fa is None else (s, fa)
    own_sons = sons(nu)
    succ = circle_succ(t)
    succ_black_son = (succ[0], sons(succ[1])[0])
    if kind_of(nu) == BLACK:
        return (
            father_tile,
            circle_pred(father_tile),
            (s, own_sons[0]),
            (s, own_sons[1]),
            succ_black_son,
        )
    return (
        father_tile,
        (s, own_sons[0]),
        (s, own_sons[1]),
        (s, own_sons[2]),
        succ_black_son,
    )


def side_between(a, b):
    """Side index (1..5) of a facing b; AdjacencyError if not neighbours."""
    if a == b:
        raise ValueError("a tile is not adjacent to itself")
    try:
        return neighbors(a).index(b) + 1
    except ValueError:
        raise AdjacencyError(f"{format_tile(a)} and {format_tile(b)} share no side") from None


def circle_position(t):
    """(circle, position) of a tile, positions counted in circle order.

    Position 0 of circle n is the tile (1, level_first(n - 1)), the canonical
    start of front words.
    """
    if t == CENTRAL:
        return (0, 0)
    s, nu = check_tile(t)
    m = level_of(nu)
    return (m + 1, (s - 1) * fib.level_size(m) + (nu - level_first(m)))


def tile_at(n, pos):
    """Tile at circle-order position pos on circle n (inverse of circle_position)."""
    if n == 0:
        if pos != 0:
            raise ValueError("circle 0 has a single tile")
        return CENTRAL
    size = circle_size(n)
    if not 0 <= pos < size:
        raise ValueError(f"position {pos} outside circle {n} of size {size}")
    m = n - 1
    per_sector = fib.level_size(m)
    return (pos // per_sector + 1, level_first(m) + pos % per_sector)
