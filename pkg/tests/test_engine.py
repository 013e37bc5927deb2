"""Sparse stepping against brute force, fronts, and configuration identity."""

import itertools
import random

import pytest

from pentaca.engine import (
    Configuration,
    canonical_key,
    format_config,
    front_update,
    front_word,
    parse_config,
    rotate,
    step,
    step_states,
)
from pentaca.grid import CENTRAL, circle_size, neighbors, tile_at
from pentaca.rules import (
    B,
    W,
    make_table,
    random_rotation_invariant_table,
    random_table,
)


def disc_tiles(radius):
    tiles = [CENTRAL]
    for n in range(1, radius + 1):
        tiles.extend(tile_at(n, j) for j in range(circle_size(n)))
    return tiles


def brute_force_step(table, config, radius):
    """Oracle: evaluate the rule on every tile of the disc, no candidate set."""
    cells = config.cells
    new = set()
    for t in disc_tiles(radius):
        self_state = B if t in cells else W
        ctx = tuple(B if u in cells else W for u in neighbors(t))
        if table(self_state, ctx) == B:
            new.add(t)
    return frozenset(new)


def random_config(rng, pool):
    return Configuration.from_tiles(t for t in pool if rng.random() < 0.3)


def test_step_quiescence():
    rng = random.Random(3)
    empty = Configuration(frozenset())
    for _ in range(25):
        assert step(random_table(rng), empty).cells == frozenset()


def test_step_examples():
    ignite = make_table({(W, (B, W, W, W, W)): B})
    got = step(ignite, Configuration.from_tiles([CENTRAL]))
    assert got.cells == frozenset({CENTRAL, (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)})
    assert got.time == 1

    kill = {}
    for s in (W, B):
        for nbrs in itertools.product((W, B), repeat=5):
            if s == B or B in nbrs:
                kill[(s, nbrs)] = W
    table = make_table(kill)
    assert step(table, Configuration.from_tiles([CENTRAL])).cells == frozenset()


def test_locality_oracle_500_cases():
    # candidate-set stepping equals whole-disc brute force
    rng = random.Random(17)
    pool = disc_tiles(3)
    for _ in range(500):
        table = random_table(rng)
        config = random_config(rng, pool)
        assert step(table, config).cells == brute_force_step(table, config, 4)


def test_rotation_equivariance():
    rng = random.Random(23)
    pool = disc_tiles(3)
    for _ in range(100):
        table = random_rotation_invariant_table(rng)
        config = random_config(rng, pool)
        shift = rng.randrange(1, 5)
        assert rotate(step(table, config), shift).cells == step(
            table, rotate(config, shift)
        ).cells


def test_front_word_examples():
    assert front_word(Configuration(frozenset()), 1) == "WWWWW"
    assert front_word(Configuration.from_tiles([(1, 1)]), 1) == "BWWWW"
    got = front_word(Configuration.from_tiles([(1, 2), (1, 3)]), 2)
    assert got == "BB" + "W" * 13
    with pytest.raises(ValueError):
        front_word(Configuration.from_tiles([CENTRAL]), 0)


def test_front_update_examples():
    assert front_update(None, Configuration.from_tiles([CENTRAL])).n == 0
    info = front_update(None, Configuration.from_tiles([(1, 8)]))
    assert info.n == 3
    assert front_update(info, Configuration.from_tiles([(1, 1)])).n == 3


def test_front_monotone_along_trajectories():
    rng = random.Random(5)
    pool = disc_tiles(2)
    for _ in range(25):
        table = random_table(rng)
        config = random_config(rng, pool)
        info = front_update(None, config)
        for _ in range(8):
            config = step(table, config)
            prev = info.n
            info = front_update(info, config)
            assert info.n >= prev
            if len(config.cells) > 1500:  # growth cases are settled; stay fast
                break


def test_lemma_one_consequence():
    # rotation invariant and bw = B: a B on the front pushes it out each step
    rng = random.Random(31)
    pool = disc_tiles(2)
    checked = 0
    while checked < 30:
        table = random_rotation_invariant_table(rng)
        if table(W, (B, W, W, W, W)) != B:
            continue
        config = random_config(rng, pool)
        info = front_update(None, config)
        for _ in range(4):
            has_front_b = B in front_word(config, info.n) if info.n >= 1 else False
            config = step(table, config)
            new_info = front_update(info, config)
            if has_front_b:
                assert new_info.n == info.n + 1
            info = new_info
        checked += 1


def test_canonical_key():
    a = Configuration.from_tiles([(1, 2), (2, 1)], time=0)
    b = Configuration.from_tiles([(2, 1), (1, 2)], time=9)
    assert canonical_key(a) == canonical_key(b)
    assert canonical_key(a) != canonical_key(Configuration(frozenset()))


def test_config_file_round_trip():
    config = Configuration.from_tiles([CENTRAL, (2, 7), (1, 1)])
    assert parse_config(format_config(config)).cells == config.cells
    parsed = parse_config("# seed\nC\n\n1:3  # trailing comment\n")
    assert parsed.cells == frozenset({CENTRAL, (1, 3)})
    with pytest.raises(ValueError, match="line 2"):
        parse_config("C\n7:1\n")


def test_step_states_three_state():
    # R acts as a second non-quiescent state for simulation only
    table_text = "default: identity\nW BWWWW -> R\nR BWWWW -> W\n"
    from pentaca.rules import parse_rules

    table = parse_rules(table_text)
    states = {CENTRAL: B}
    nxt = step_states(table, states)
    assert nxt[CENTRAL] == B
    assert all(nxt[(s, 1)] == "R" for s in range(1, 6))
    again = step_states(table, nxt)
    assert all((s, 1) not in again for s in range(1, 6))
    assert again[CENTRAL] == B
