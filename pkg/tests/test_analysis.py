"""Front-propagation laws, BW lines, and the single-seed census."""

import random

import numpy as np
import pytest

from pentaca import fastsim, fib
from pentaca.analysis import (
    CensusReport,
    LineTraceError,
    PreconditionError,
    census,
    census_series,
    check_lemma_nofour,
    check_lemma_whites,
    hereditary_white,
    hereditary_white_descendants,
    scan,
    trace_bw_lines,
    variant_table,
)
from pentaca.engine import Configuration, front_word, step
from pentaca.grid import CENTRAL, circle_position, circle_size, tile_at
from pentaca.rules import B, W, make_table, random_configuration_tiles, random_table

D3_POOL = [CENTRAL] + [(s, nu) for s in range(1, 6) for nu in range(1, 13)]


def seeded_tables_with(rng, predicate, count):
    out = []
    while len(out) < count:
        table = random_table(rng)
        if predicate(table):
            out.append(table)
    return out


def test_scan_examples():
    assert scan("BWWWW", "BW").positions == (0,)
    assert scan("BBBBB", "BW").positions == ()
    assert scan("WBWBW", "BW").positions == (1, 3)
    with pytest.raises(ValueError):
        scan("BW", "BWW")


def test_hereditary_white_examples():
    assert hereditary_white(1)
    assert not hereditary_white(2)
    assert hereditary_white(8)
    # counts double level by level under white-son chains
    for k in range(6):
        assert len(hereditary_white_descendants(1, k)) == 2**k


def test_lemma_whites_single_seed():
    table = variant_table((B, B, B))
    assert check_lemma_whites(table, Configuration.from_tiles([(1, 3)]), 6) == []


def test_lemma_whites_random_runs():
    rng = random.Random(101)
    for table in seeded_tables_with(rng, lambda t: t(W, (B, W, W, W, W)) == B, 25):
        init = Configuration.from_tiles(random_configuration_tiles(rng, D3_POOL))
        assert check_lemma_whites(table, init, 8) == []


def test_lemma_whites_precondition():
    with pytest.raises(PreconditionError):
        check_lemma_whites(make_table({}), Configuration(frozenset()), 3)


def test_lemma_whites_detector_sanity():
    table = variant_table((B, B, B))

    def corrupted(bits, n, luts):
        return (1 - fastsim.front_word_step(bits, n, luts)).astype(np.uint8)

    bad = check_lemma_whites(
        table, Configuration.from_tiles([(1, 3)]), 3, word_step=corrupted
    )
    assert bad


def test_lemma_nofour_single_seed_and_random():
    table = variant_table((B, B, W))
    assert check_lemma_nofour(table, Configuration.from_tiles([(1, 3)]), 10) == []
    rng = random.Random(55)
    for _ in range(25):
        init = Configuration.from_tiles(random_configuration_tiles(rng, D3_POOL))
        assert check_lemma_nofour(table, init, 10) == []


def test_lemma_nofour_precondition():
    with pytest.raises(PreconditionError):
        check_lemma_nofour(variant_table((B, B, B)), Configuration(frozenset()), 5)


def test_bw_line_single_seed():
    table = variant_table((W, B, W))
    lines = trace_bw_lines(table, Configuration.from_tiles([(1, 3)]), 8)
    assert len(lines) == 1
    times = [t for t, _ in lines[0]]
    assert times == list(range(9))
    # each chained B is the black son of the previous pattern's W tile
    for (t0, j0), (t1, j1) in zip(lines[0], lines[0][1:]):
        n = 2 + t0
        succ = tile_at(n, (j0 + 1) % circle_size(n))
        son = (succ[0], fib.sons(succ[1])[0])
        assert circle_position(son) == (n + 1, j1)


def test_bw_lines_disjoint_seeds():
    table = variant_table((W, B, W))
    lines = trace_bw_lines(
        table, Configuration.from_tiles([(1, 3), (3, 3)]), 6
    )
    assert len(lines) == 2
    assert all(len(line) == 7 for line in lines)


def test_bw_lines_need_a_pattern_first():
    # an all-B front has no isolated B, so no line starts at t = 0
    table = variant_table((W, B, W))
    init = Configuration.from_tiles([(s, 1) for s in range(1, 6)])
    lines = trace_bw_lines(table, init, 3)
    assert all(line[0][0] > 0 for line in lines)


def test_bw_lines_precondition():
    with pytest.raises(PreconditionError):
        trace_bw_lines(variant_table((B, B, B)), Configuration(frozenset()), 3)


def test_census_start_validation():
    with pytest.raises(PreconditionError):
        census((W, B, W), (1, 3), 2)     # bw must be B
    with pytest.raises(PreconditionError):
        census((B, B, B), (1, 2), 2)     # black start node
    with pytest.raises(PreconditionError):
        census((B, B, B), (1, 1), 2)     # root sits on circle 1


def test_census_bwb_matches_subtree_levels():
    # the (B, W, B) cone is exactly the seed's subtree, level by level
    for k, report in enumerate(census_series((B, W, B), (1, 3), 8), start=1):
        assert report.b_count == fib.fib(2 * k + 1)
        assert report.runs == (fib.fib(2 * k + 1),)
        assert report.arc_width == report.b_count


def test_census_bbb_count_law():
    # solid block; the right edge grows by a wb-ignited spine every step,
    # so the count telescopes to f_{2k+1} + f_{2k-1}
    for k, report in enumerate(census_series((B, B, B), (1, 3), 8), start=1):
        assert report.runs == (report.b_count,)
        assert report.b_count == fib.fib(2 * k + 1) + fib.fib(2 * k - 1)


def test_census_bbw_blocks_and_arc():
    reports = census_series((B, B, W), (1, 3), 8)
    for k, report in enumerate(reports, start=1):
        if k < 2:
            continue
        assert set(report.runs) <= {2, 3}
        assert report.arc_width > fib.fib(2 * k + 1) + fib.fib(2 * k - 2)


def test_census_bww_contains_hereditary_whites():
    # B-cells strictly contain the hereditary-white descendants: the black
    # son of every run-start B-cell also ignites under bw = B
    for k, report in enumerate(census_series((B, W, W), (1, 3), 6), start=1):
        hw = hereditary_white_descendants(3, k)
        hw_positions = {circle_position((1, nu))[1] for nu in hw}
        table = variant_table((B, W, W))
        init = Configuration.from_tiles([(1, 3)])
        for _ in range(k):
            init = step(table, init)
        word = front_word(init, 2 + k)
        b_positions = {i for i, c in enumerate(word) if c == B}
        assert hw_positions < b_positions
        assert report.b_count == len(b_positions)


def test_census_bww_independent_recursion():
    # independent oracle: sons of B-cells ignite except a black son whose
    # father's circle predecessor is also B
    variant = (B, W, W)
    reports = census_series(variant, (1, 3), 7)
    cells = {3}
    level = 1
    for report in reports:
        nxt = set()
        for nu in sorted(cells):
            ss = fib.sons(nu)
            black, whites = ss[0], ss[1:]
            nxt.update(whites)
            if nu - 1 not in cells:
                nxt.add(black)
        cells = nxt
        level += 1
        assert report.b_count == len(cells)
        positions = {circle_position((1, nu))[1] for nu in cells}
        assert report.arc_width == max(positions) - min(positions) + 1


def test_front_word_autonomy_under_b_self_perturbation():
    # behind-front rules cannot touch the front words of an advancing run
    base = variant_table((B, B, W))
    flipped = {}
    for (s, nbrs), out in base.items():
        flipped[(s, nbrs)] = W if s == B else out  # every B-cell dies now
    perturbed = make_table(flipped, default_identity=False)
    init = Configuration.from_tiles([(1, 3)])
    a = census_series((B, B, W), (1, 3), 6)
    cfg = init
    for k in range(1, 7):
        cfg = step(perturbed, cfg)
        word = front_word(cfg, 2 + k)
        assert word.count(B) == a[k - 1].b_count
        bits = fastsim.config_word_bits(cfg, 2 + k)
        assert fastsim.bits_to_word(bits) == word


def test_census_report_shape():
    report = census((B, W, B), (1, 3), 3)
    assert isinstance(report, CensusReport)
    assert report.circle == 5
    assert report.arc_word.count(B) == report.b_count


def test_census_laws_hold_from_other_white_starts():
    # circles 2..4, including (1, 4) whose right edge crosses into sector 2
    for start in [(1, 4), (2, 6), (3, 17)]:
        for k, report in enumerate(census_series((B, W, B), start, 5), start=1):
            assert report.b_count == fib.fib(2 * k + 1)
        for k, report in enumerate(census_series((B, B, B), start, 5), start=1):
            assert report.b_count == fib.fib(2 * k + 1) + fib.fib(2 * k - 1)
            assert report.runs == (report.b_count,)
        for k, report in enumerate(census_series((B, B, W), start, 5), start=1):
            if k >= 2:
                assert set(report.runs) <= {2, 3}


def test_bw_lines_with_bb_ignition():
    # bb = B spawns additional isolated-B lines under BB patterns; existing
    # lines must survive untouched and no two lines may ever merge
    table = variant_table((W, B, B))
    init = Configuration.from_tiles([(1, 2), (1, 3), (3, 3)])
    lines = trace_bw_lines(table, init, 6)
    assert len(lines) >= 2
    solo = [line for line in lines if line[0] == (0, circle_position((3, 3))[1])]
    assert len(solo) == 1 and len(solo[0]) == 7
