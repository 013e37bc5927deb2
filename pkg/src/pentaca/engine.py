"""Synchronous evolution of finite configurations on the pentagrid.

A configuration is the finite set of cells in the non-quiescent state B,
stored sparsely; the exponentially growing grid is never materialized.  One
step evaluates the rule table over the candidate set (current B-cells plus
their neighbours), which is exact because the mandatory quiescent rule fixes
every other cell.

The front index N_t is the smallest circle index whose disc contains every
configuration seen up to time t; it is non-decreasing along a trajectory.
Front words are read along a circle in circle order starting from the tile
(1, leftmost node of the level).
"""

from dataclasses import dataclass

from . import grid
from .grid import CENTRAL, check_tile, circle_of, circle_position, circle_size, neighbors
from .rules import B, W


@dataclass(frozen=True)
class Configuration:
    """Finite set of B-cells at one time step."""

    cells: frozenset
    time: int = 0

    @classmethod
    def from_tiles(cls, tiles, time=0):
        cells = frozenset(check_tile(t) for t in tiles)
        return cls(cells, time)

    @property
    def is_empty(self):
        return not self.cells

    def state(self, tile):
        return B if tile in self.cells else W

    def max_circle(self):
        """Largest circle index holding a B-cell (0 for the empty set)."""
        if not self.cells:
            return 0
        return max(circle_of(t) for t in self.cells)


def parse_config(text):
    """Parse a configuration file: one tile per line, '#' comments."""
    tiles = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            tiles.append(grid.parse_tile(line))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return Configuration.from_tiles(tiles)


def format_config(config):
    """Canonical text form of a configuration (sorted tile lines)."""
    return "".join(grid.format_tile(t) + "\n" for t in sorted(config.cells))


def canonical_key(config):
    """Comparable key equal exactly when the B-sets are equal."""
    return config.cells


def step(table, config):
    """One synchronous update of a two-state configuration."""
    cells = config.cells
    candidates = set(cells)
    for t in cells:
        candidates.update(neighbors(t))
    new_cells = set()
    for t in candidates:
        self_state = B if t in cells else W
        ctx = tuple(B if n in cells else W for n in neighbors(t))
        if table(self_state, ctx) == B:
            new_cells.add(t)
    return Configuration(frozenset(new_cells), config.time + 1)


def step_states(table, states):
    """General k-state update over a sparse {tile: state} mapping.

    Cells absent from the mapping are quiescent.  Returns the same sparse
    form, holding only non-quiescent cells.
    """
    candidates = set(states)
    for t in states:
        candidates.update(neighbors(t))
    new_states = {}
    for t in candidates:
        self_state = states.get(t, W)
        ctx = tuple(states.get(n, W) for n in neighbors(t))
        out = table(self_state, ctx)
        if out != W:
            new_states[t] = out
    return new_states


def rotate(config, shift=1):
    """Rotate a configuration by whole sectors (the central tile is fixed)."""
    moved = frozenset(
        t if t == CENTRAL else ((t[0] - 1 + shift) % 5 + 1, t[1]) for t in config.cells
    )
    return Configuration(moved, config.time)


def front_positions(config, n):
    """Circle-order positions of the B-cells lying on circle n."""
    if n < 1:
        raise ValueError("front words exist on circles n >= 1 only")
    return {
        circle_position(t)[1] for t in config.cells if t != CENTRAL and circle_of(t) == n
    }


def front_word(config, n):
    """States along circle n in circle order, as a string over W/B."""
    size = circle_size(n)
    word = [W] * size
    for pos in front_positions(config, n):
        word[pos] = B
    return "".join(word)


@dataclass(frozen=True)
class FrontInfo:
    """Front index N_t plus the state word along the front circle."""

    n: int
    word: str


def front_update(prev, config):
    """Advance the front bookkeeping: N is the monotone max of B circles."""
    n = config.max_circle()
    if prev is not None:
        n = max(n, prev.n)
    word = front_word(config, n) if n >= 1 else ""
    return FrontInfo(n, word)
