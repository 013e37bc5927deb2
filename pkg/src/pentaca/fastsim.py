"""Vectorized front-circle machinery.

While a front keeps advancing, the state word on the next circle is a
function of the current front word alone: a cell one circle out is quiescent
and sees at most its father and the father's circle predecessor in a
non-quiescent state, everything else being beyond the front.  This module
evolves front words as numpy bit arrays, which keeps the quantitative front
analyses and verdict replays linear in the circle size instead of walking
tile neighbourhoods.

The structural arrays (kinds, son offsets, father positions per level) are
shared by all five sectors and cached per level.  Equivalence with the
sparse engine step is asserted by the test suite.
"""

from functools import lru_cache

import numpy as np

from . import fib
from .rules import B, W

_LEVEL_CACHE_MAX = 64


@lru_cache(maxsize=_LEVEL_CACHE_MAX)
def level_kinds(m):
    """Kind bits of level m (1 = black), one sector, length f_{2m+1}."""
    if m == 0:
        return np.zeros(1, dtype=np.uint8)
    out = np.zeros(fib.level_size(m), dtype=np.uint8)
    out[level_sons_start(m - 1)] = 1  # the first son of every node is black
    return out


@lru_cache(maxsize=_LEVEL_CACHE_MAX)
def level_sons_start(m):
    """Offset of each level-m node's first son within level m+1."""
    kinds = level_kinds(m)
    # blacks contribute 2 sons, whites 3
    before = np.cumsum(kinds, dtype=np.int64) - kinds
    return 3 * np.arange(len(kinds), dtype=np.int64) - before


@lru_cache(maxsize=_LEVEL_CACHE_MAX)
def level_father_pos(m):
    """Position on level m-1 of each level-m node's father (m >= 1)."""
    if m < 1:
        raise ValueError("the root has no father position")
    kinds = level_kinds(m - 1)
    return np.repeat(np.arange(len(kinds), dtype=np.int64), 3 - kinds)


@lru_cache(maxsize=_LEVEL_CACHE_MAX)
def circle_kind_bits(n):
    """Kind bits for the full circle n (five sectors), 1 = black."""
    if n < 1:
        raise ValueError("circle index must be >= 1")
    return np.tile(level_kinds(n - 1), 5)


@lru_cache(maxsize=_LEVEL_CACHE_MAX)
def circle_father_cpos(n):
    """Circle position on circle n-1 of each circle-n tile's father (n >= 2)."""
    if n < 2:
        raise ValueError("fathers on a circle exist for n >= 2 only")
    m = n - 1
    prev_size = fib.level_size(m - 1)
    fpos = level_father_pos(m)
    sector = np.repeat(np.arange(5, dtype=np.int64) * prev_size, len(fpos))
    return sector + np.tile(fpos, 5)


def word_luts(table):
    """Lookup tables for quiescent cells one circle beyond the front.

    Returns (white_lut, black_lut): white cells index by the father bit,
    black cells by 2*father + predecessor-of-father.
    """
    bit = {W: 0, B: 1}
    bw = bit[table(W, (B, W, W, W, W))]
    wb = bit[table(W, (W, B, W, W, W))]
    bb = bit[table(W, (B, B, W, W, W))]
    white = np.array([0, bw], dtype=np.uint8)
    black = np.array([0, wb, bw, bb], dtype=np.uint8)
    return white, black


def front_word_step(bits, n, luts):
    """Word on circle n+1 from the word on circle n (all beyond quiescent).

    Exact whenever every cell beyond circle n is quiescent, which holds when
    n is the current front index.
    """
    white_lut, black_lut = luts
    fa = circle_father_cpos(n + 1)
    f = bits[fa]
    p = bits[(fa - 1) % len(bits)]
    is_black = circle_kind_bits(n + 1)
    return np.where(is_black == 1, black_lut[2 * f + p], white_lut[f]).astype(np.uint8)


def config_word_bits(config, n):
    """Bit array of the configuration's states along circle n."""
    from .engine import front_positions

    bits = np.zeros(5 * fib.level_size(n - 1), dtype=np.uint8)
    pos = sorted(front_positions(config, n))
    if pos:
        bits[np.array(pos, dtype=np.int64)] = 1
    return bits


def bits_to_word(bits):
    return "".join(B if b else W for b in bits)


def word_to_bits(word):
    return (np.frombuffer(word.encode("ascii"), dtype=np.uint8) == ord(B)).astype(np.uint8)


def advancing_front_words(table, start_bits, start_circle, steps):
    """Yield (circle, bits) along a strictly advancing front.

    Stops early (without yielding) as soon as a stepped word is empty, i.e.
    the front failed to advance; callers treat that as the property under
    test being violated or as the end of word-only validity.
    """
    luts = word_luts(table)
    bits = np.asarray(start_bits, dtype=np.uint8)
    n = start_circle
    yield n, bits
    for _ in range(steps):
        bits = front_word_step(bits, n, luts)
        n += 1
        if not bits.any():
            return
        yield n, bits
