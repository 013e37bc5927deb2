"""Quantitative front propagation analyses.

Under a table whose program ignites the white sons of a front B-cell
(bw = B), a non-empty configuration pushes its front outward by one circle
per step forever, so the quantitative behaviour lives entirely on the front
words.  This module checks the structural front laws (white sons copy a
white father's state; the (B,B,W) class never shows an isolated B or a
four-run after t = 3), traces the diagonal lines of BW patterns grown by the
wb rule, and runs the single-seed census of the four bw = B rule variants.

All checks return violation lists and raise only on precondition misuse.
"""

from dataclasses import dataclass

import numpy as np

from . import fastsim, fib
from .decider import classify
from .engine import Configuration, front_positions, step
from .fib import BLACK, WHITE, kind_of, level_first, sons
from .grid import circle_position, circle_size, tile_at
from .rules import B, W, make_table


class PreconditionError(ValueError):
    """The analysed table is outside the rule class the law speaks about."""


@dataclass(frozen=True)
class PatternReport:
    """Circular occurrences of a state pattern in one front word."""

    pattern: str
    positions: tuple
    time: int = None
    circle: int = None


def scan(word, pattern, time=None, circle=None):
    """All circular occurrence positions of `pattern` in `word`."""
    if not pattern or len(pattern) > len(word):
        raise ValueError("pattern must be non-empty and no longer than the word")
    doubled = word + word[: len(pattern) - 1]
    hits = tuple(
        i for i in range(len(word)) if doubled[i : i + len(pattern)] == pattern
    )
    return PatternReport(pattern=pattern, positions=hits, time=time, circle=circle)


def hereditary_white(nu):
    """True iff the path from the tree root to nu uses white sons only."""
    while True:
        if kind_of(nu) == BLACK:
            return False
        if nu == 1:
            return True
        nu = fib.father(nu)


def hereditary_white_descendants(nu, depth):
    """Nodes reached from nu (taken as reference root) by white sons only."""
    if kind_of(nu) != WHITE:
        raise ValueError(f"node {nu} is black, no white-son chain starts there")
    layer = [nu]
    for _ in range(depth):
        layer = [s for v in layer for s in sons(v) if kind_of(s) == WHITE]
    return layer


def _word_series(table, init, n_words):
    """Front words along a strictly advancing front, from the initial border.

    Valid for bw = B tables with non-empty init: the front then advances by
    one circle per step, so each word determines the next.
    """
    n0 = init.max_circle()
    bits = fastsim.config_word_bits(init, n0)
    series = list(fastsim.advancing_front_words(table, bits, n0, n_words - 1))
    if len(series) != n_words:
        raise AssertionError(
            "front stopped advancing under a bw = B table; engine defect"
        )
    return series


def check_lemma_whites(table, init, horizon, word_step=None):
    """Violations of: white sons of a front white node copy its state.

    Checks every time 0 <= t <= horizon and every white node on the front
    circle; both its white sons one circle out must carry the node's state
    at the next time.  Expected empty whenever bw = B.  `word_step` may
    replace the front-word stepper (used to sanity-check the detector).
    """
    cls = classify(table)
    if cls.bw != B:
        raise PreconditionError("the white-son law requires bw = B")
    if init.is_empty:
        return []
    stepper = word_step or fastsim.front_word_step
    luts = fastsim.word_luts(table)
    n = init.max_circle()
    bits = fastsim.config_word_bits(init, n)
    violations = []
    for t in range(horizon + 1):
        nxt = stepper(bits, n, luts)
        m = n - 1  # tree level of the front circle
        size = fib.level_size(m)
        next_size = fib.level_size(m + 1)
        pos = np.arange(5 * size, dtype=np.int64)
        in_level = pos % size
        white = fastsim.level_kinds(m)[in_level] == 0
        son_base = (pos // size) * next_size + fastsim.level_sons_start(m)[in_level]
        for offset in (1, 2):  # the two white sons of a white node
            bad = white & (nxt[son_base + offset] != bits)
            for j in np.flatnonzero(bad):
                violations.append((t, tile_at(n, int(j))))
        bits, n = nxt, n + 1
    return violations


def check_lemma_nofour(table, init, horizon):
    """Circular WBW or BBBB occurrences on the front for 3 <= t <= horizon.

    The law holds for the rule class (bw, wb, bb) = (B, B, W); other classes
    are rejected rather than checked vacuously.
    """
    cls = classify(table)
    if (cls.bw, cls.wb, cls.bb) != (B, B, W):
        raise PreconditionError("the no-WBW/no-BBBB law requires the class (B, B, W)")
    if init.is_empty:
        return []
    violations = []
    for t, (n, bits) in enumerate(_word_series(table, init, horizon + 1)):
        if t < 3:
            continue
        left = np.roll(bits, 1)
        right = np.roll(bits, -1)
        isolated = (bits == 1) & (left == 0) & (right == 0)
        for j in np.flatnonzero(isolated):
            violations.append((t, "WBW", int((j - 1) % len(bits))))
        four = (
            (bits == 1)
            & (np.roll(bits, -1) == 1)
            & (np.roll(bits, -2) == 1)
            & (np.roll(bits, -3) == 1)
        )
        for j in np.flatnonzero(four):
            violations.append((t, "BBBB", int(j)))
    return violations


class LineTraceError(RuntimeError):
    """A traced BW line broke: its B-cell vanished or lost isolation."""


def trace_bw_lines(table, init, horizon):
    """Trace the lines of BW patterns grown by the wb rule.

    Requires the class (bw, wb) = (W, B).  Each isolated front B-cell whose
    circle successor is quiescent starts (or continues) a line: the black
    son of the successor is the next B of the line one circle out.  Returns
    one list of (time, circle position) per line.
    """
    cls = classify(table)
    if (cls.bw, cls.wb) != (W, B):
        raise PreconditionError("BW lines require the class (bw, wb) = (W, B)")
    configs = [init]
    for t in range(horizon):
        configs.append(step(table, configs[-1]))
    fronts = []
    n = 0
    for c in configs:
        n = max(n, c.max_circle())
        fronts.append(n)

    def isolated_positions(config, n):
        if n < 1:
            return set()
        size = circle_size(n)
        on = front_positions(config, n)
        return {j for j in on if (j - 1) % size not in on and (j + 1) % size not in on}

    lines = []
    active = {}  # position on the current front -> line
    for t, config in enumerate(configs):
        n = fronts[t]
        patterns = isolated_positions(config, n)
        continued = {}
        for j, line in active.items():
            if j not in patterns:
                raise LineTraceError(f"line lost its isolated B at t={t}, position {j}")
            line.append((t, j))
            continued[j] = line
        for j in sorted(patterns - set(continued)):
            line = [(t, j)]
            lines.append(line)
            continued[j] = line
        if t == horizon:
            break
        # the next B of each line is the black son of the pattern's W tile
        active = {}
        for j, line in continued.items():
            succ = tile_at(n, (j + 1) % circle_size(n))
            son = (succ[0], sons(succ[1])[0])
            n_son, j_son = circle_position(son)
            if n_son != fronts[t + 1]:
                raise LineTraceError(
                    f"line son landed on circle {n_son}, front is {fronts[t + 1]}"
                )
            if j_son in active:
                raise LineTraceError(f"two lines merged at t={t + 1}, position {j_son}")
            active[j_son] = line
    return lines


@dataclass(frozen=True)
class CensusReport:
    """Front-word census of one time step of a single-seed run."""

    variant: tuple
    start: tuple
    k: int
    circle: int
    b_count: int
    arc_start: int
    arc_width: int
    runs: tuple
    arc_word: str


def variant_table(variant):
    """Two-state table realised by a (bw, wb, bb) front-rule triple.

    Front words depend on those three contexts only; every other W-context
    maps to W and B-cells keep their state.
    """
    bw, wb, bb = variant
    return make_table(
        {
            (W, (B, W, W, W, W)): bw,
            (W, (W, B, W, W, W)): wb,
            (W, (B, B, W, W, W)): bb,
        }
    )


def _circular_runs(bits):
    """Lengths of circular B-runs with their start positions."""
    size = len(bits)
    if size == 0 or not bits.any():
        return []
    if bits.all():
        return [(0, size)]
    # rotate so the word starts on a W, making runs non-wrapping
    first_w = int(np.flatnonzero(bits == 0)[0])
    rolled = np.roll(bits, -first_w)
    padded = np.concatenate(([0], rolled, [0]))
    diff = np.diff(padded.astype(np.int8))
    starts = np.flatnonzero(diff == 1)
    ends = np.flatnonzero(diff == -1)
    return [
        (int((s + first_w) % size), int(e - s)) for s, e in zip(starts, ends)
    ]


def census_series(variant, start, k_max):
    """Census reports for times 1..k_max of the single-seed run from start."""
    if variant[0] != B:
        raise PreconditionError("the census presupposes bw = B")
    if kind_of(start[1]) != WHITE:
        raise PreconditionError(f"census start {start} must be a white node")
    n0 = circle_position(start)[0]
    if n0 < 2:
        raise PreconditionError("census starts on circles n >= 2 (the node needs a father)")
    table = variant_table(variant)
    init = Configuration.from_tiles([start])
    reports = []
    for t, (n, bits) in enumerate(fastsim.advancing_front_words(
        table, fastsim.config_word_bits(init, n0), n0, k_max
    )):
        if t == 0:
            continue
        runs = _circular_runs(bits)
        positions = np.flatnonzero(bits)
        size = len(bits)
        if len(positions) == 0:
            arc_start, arc_width, arc_word = 0, 0, ""
        else:
            gaps = np.diff(np.concatenate((positions, [positions[0] + size])))
            widest = int(np.argmax(gaps))
            arc_start = int(positions[(widest + 1) % len(positions)])
            arc_width = size - int(gaps[widest]) + 1
            arc = [bits[(arc_start + i) % size] for i in range(arc_width)]
            arc_word = "".join(B if b else W for b in arc)
        reports.append(
            CensusReport(
                variant=tuple(variant),
                start=start,
                k=t,
                circle=n,
                b_count=int(bits.sum()),
                arc_start=arc_start,
                arc_width=arc_width,
                runs=tuple(length for _, length in runs),
                arc_word=arc_word,
            )
        )
    if len(reports) != k_max:
        raise AssertionError("single-seed front stopped advancing; engine defect")
    return reports


def census(variant, start, k):
    """Front-word census at time k of the single-seed run from start."""
    return census_series(variant, start, k)[-1]
