"""Command-line interface.

Subcommands: simulate, decide, census, check, render, validate, gen-rules,
crossval.  Outputs are deterministic text (SVG on request); identical
invocations, including the seed, produce identical bytes.  The environment
variable PENTACA_SEED supplies the default seed.

Exit codes: 0 success (for decide: the automaton halts), 10 never halts,
1 a validation/check suite failed, 2 malformed input.
"""

import argparse
import json
import os
import sys
from pathlib import Path
from random import Random

from . import analysis, decider, engine, geometry, grid, rules
from .engine import Configuration
from .rules import B, W

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NEVER_HALTS = 10


class InputError(Exception):
    """User-facing input problem; reported without a traceback."""


def _read(path, what):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {what} {path}: {exc}") from None


def _load_rules(path):
    try:
        return rules.parse_rules(_read(path, "rule file"))
    except rules.RuleFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_config(path):
    try:
        return engine.parse_config(_read(path, "configuration file"))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _default_seed():
    raw = os.environ.get("PENTACA_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"PENTACA_SEED must be an integer, got {raw!r}") from None


def _parse_variant(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3 or any(p not in (W, B) for p in parts):
        raise InputError(f"variant must be three of W/B like 'B,W,B', got {text!r}")
    return tuple(parts)


def _parse_colors(text):
    colors = {}
    for item in text.split(","):
        try:
            state, color = item.split("=")
        except ValueError:
            raise InputError(f"malformed color assignment {item!r}") from None
        colors[state.strip()] = color.strip()
    return colors


def cmd_simulate(args, out):
    table = _load_rules(args.rules)
    config = _load_config(args.init)
    svg_dir = Path(args.svg_dir) if args.svg_dir else None
    if svg_dir:
        svg_dir.mkdir(parents=True, exist_ok=True)
    two_state = table.is_two_state
    states = {t: B for t in config.cells}
    front = None
    for t in range(args.steps + 1):
        cfg = Configuration(frozenset(states), t)
        front = engine.front_update(front, cfg)
        out.write(f"t={t} cells={len(states)} front={front.n}\n")
        if svg_dir:
            svg = geometry.render_svg(cfg, args.depth, states=dict(states))
            (svg_dir / f"step_{t:04d}.svg").write_text(svg, encoding="utf-8")
        if t == args.steps:
            break
        if two_state:
            states = {c: B for c in engine.step(table, cfg).cells}
        else:
            states = engine.step_states(table, states)
    if args.out:
        final = Configuration(frozenset(states), args.steps)
        Path(args.out).write_text(engine.format_config(final), encoding="utf-8")
    return EXIT_OK


def cmd_decide(args, out):
    table = _load_rules(args.rules)
    config = _load_config(args.init)
    try:
        if args.rotation_invariant:
            verdict = decider.decide_rotation_invariant(table, config)
        else:
            verdict = decider.decide(table, config)
    except (decider.UnsupportedStatesError, decider.RotationInvarianceError) as exc:
        raise InputError(str(exc)) from None
    out.write(verdict.summary() + "\n")
    if args.witness:
        payload = {
            "kind": verdict.kind,
            "t": verdict.t,
            "preperiod": verdict.preperiod,
            "period": verdict.period,
            "t0": verdict.t0,
            "reason": verdict.reason,
            "trajectory": [
                sorted(grid.format_tile(t) for t in cells) for cells in verdict.witness
            ],
        }
        Path(args.witness).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    return EXIT_OK if verdict.halts else EXIT_NEVER_HALTS


def cmd_census(args, out):
    variant = _parse_variant(args.variant)
    start = grid.parse_tile(args.start)
    if start == grid.CENTRAL:
        raise InputError("census starts from a fathered white node, not the central tile")
    try:
        reports = analysis.census_series(variant, start, args.k)
    except analysis.PreconditionError as exc:
        raise InputError(str(exc)) from None
    for r in reports:
        runs = ",".join(str(x) for x in r.runs)
        out.write(
            f"k={r.k} circle={r.circle} count={r.b_count}"
            f" arc_start={r.arc_start} arc_width={r.arc_width} runs={runs}\n"
        )
    return EXIT_OK


def cmd_check(args, out):
    table = _load_rules(args.rules)
    config = _load_config(args.init)
    try:
        if args.lemma == "whites":
            violations = analysis.check_lemma_whites(table, config, args.horizon)
        else:
            violations = analysis.check_lemma_nofour(table, config, args.horizon)
    except (analysis.PreconditionError, decider.UnsupportedStatesError) as exc:
        raise InputError(str(exc)) from None
    out.write(f"lemma={args.lemma} horizon={args.horizon} violations={len(violations)}\n")
    for v in violations:
        out.write("violation " + " ".join(str(x) for x in v) + "\n")
    return EXIT_OK if not violations else EXIT_FAIL


def cmd_render(args, out):
    config = _load_config(args.init)
    colors = _parse_colors(args.colors) if args.colors else None
    try:
        svg = geometry.render_svg(config, args.depth, colors=colors)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    Path(args.svg).write_text(svg, encoding="utf-8")
    out.write(f"wrote {args.svg}\n")
    return EXIT_OK


def _validate_suites(depth):
    """Yield (suite name, ok, detail) for the oracle and adjacency suites."""
    tiling = geometry.generate(depth)
    want = 1 + sum(grid.circle_size(k) for k in range(1, depth + 1))
    yield "tile-count", len(tiling.tiles) == want, f"{len(tiling.tiles)}/{want}"

    try:
        match = geometry.match_coordinates(tiling)
        ok, detail = True, f"mapped={len(match.to_geo)}"
    except geometry.ModelMismatchError as exc:
        ok, detail = False, str(exc)
    yield "oracle-equivalence", ok, detail

    frontier, seen = {grid.CENTRAL}, {grid.CENTRAL}
    ok, detail = True, ""
    for n in range(depth + 1):
        if len(frontier) != grid.circle_size(n) or any(
            grid.circle_of(t) != n for t in frontier
        ):
            ok, detail = False, f"depth {n}: {len(frontier)} tiles"
            break
        nxt = set()
        for t in frontier:
            nxt.update(grid.neighbors(t))
        frontier = nxt - seen
        seen |= frontier
    yield "bfs-circles", ok, detail or f"reached={len(seen)}"

    ok, detail = True, ""
    for t in sorted(seen):
        if grid.circle_of(t) >= depth:
            continue
        for u in grid.neighbors(t):
            if sum(1 for x in grid.neighbors(u) if x == t) != 1:
                ok, detail = False, f"{grid.format_tile(t)}~{grid.format_tile(u)}"
                break
        if not ok:
            break
    yield "symmetry", ok, detail or "5-regular"

    ok, detail = True, ""
    for n in range(1, depth + 1):
        t0 = grid.tile_at(n, 0)
        t, steps = t0, 0
        while True:
            t = grid.circle_succ(t)
            steps += 1
            if t == t0 or steps > grid.circle_size(n):
                break
        if steps != grid.circle_size(n):
            ok, detail = False, f"circle {n} closed after {steps}"
            break
    yield "circle-closure", ok, detail or f"circles 1..{depth}"


def cmd_validate(args, out):
    all_ok = True
    for name, ok, detail in _validate_suites(args.depth):
        out.write(f"suite={name} result={'pass' if ok else 'FAIL'} {detail}\n")
        all_ok = all_ok and ok
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_gen_rules(args, out):
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = Random(args.seed)
    for i in range(args.count):
        if args.mode == "random":
            table = rules.random_table(rng)
        else:
            table = rules.random_rotation_invariant_table(rng)
        path = out_dir / f"rules_{i:03d}.txt"
        path.write_text(rules.table_to_text(table), encoding="utf-8")
        out.write(f"wrote {path}\n")
    return EXIT_OK


def d2_tiles():
    """The 21 tiles of the disc of radius 2, the random-configuration pool."""
    return [grid.CENTRAL] + [(s, nu) for s in range(1, 6) for nu in range(1, 5)]


def cmd_crossval(args, out):
    rng = Random(args.seed)
    tables = [rules.random_table(rng) for _ in range(args.tables)]
    pool = d2_tiles()
    configs = [
        Configuration.from_tiles(rules.random_configuration_tiles(rng, pool))
        for _ in range(args.configs)
    ]
    kinds = {}
    disagreements = 0
    safety = 0
    for ti, table in enumerate(tables):
        for ci, config in enumerate(configs):
            try:
                verdict = decider.decide(table, config)
            except decider.SafetyBoundExceeded:
                safety += 1
                out.write(f"pair table={ti} config={ci} SAFETY-BOUND-EXCEEDED\n")
                continue
            kinds[verdict.kind] = kinds.get(verdict.kind, 0) + 1
            issues = decider.verdict_issues(table, config, verdict, horizon=args.horizon)
            if rules.is_rotation_invariant(table):
                v2 = decider.decide_rotation_invariant(table, config)
                if v2.summary() != verdict.summary():
                    issues.append("rotation-invariant specialisation disagrees")
            if issues:
                disagreements += 1
                out.write(
                    f"pair table={ti} config={ci} {verdict.summary()}"
                    f" issues={'; '.join(issues)}\n"
                )
                _dump_pair(args.out_dir, ti, ci, table, config, out)
    out.write(
        f"pairs={args.tables * args.configs}"
        f" disagreements={disagreements} safety_bound_exceeded={safety}"
    )
    for kind in sorted(kinds):
        out.write(f" {kind}={kinds[kind]}")
    out.write("\n")
    return EXIT_OK if disagreements == 0 and safety == 0 else EXIT_FAIL


def _dump_pair(out_dir, ti, ci, table, config, out):
    if not out_dir:
        return
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    rp = d / f"fail_t{ti:03d}_c{ci:03d}.rules"
    cp = d / f"fail_t{ti:03d}_c{ci:03d}.init"
    rp.write_text(rules.table_to_text(table), encoding="utf-8")
    cp.write_text(engine.format_config(config), encoding="utf-8")
    out.write(f"serialized offending pair to {rp} / {cp}\n")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pentaca",
        description="Cellular automata on the pentagrid: simulation, halting"
        " decision, front analysis, geometric validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a finite configuration forward")
    p.add_argument("--rules", required=True)
    p.add_argument("--init", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--svg-dir", default=None)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--out", default=None, help="write the final configuration here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("decide", help="decide the halting problem")
    p.add_argument("--rules", required=True)
    p.add_argument("--init", required=True)
    p.add_argument("--rotation-invariant", action="store_true")
    p.add_argument("--witness", default=None, help="write the witness as JSON")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("census", help="single-seed front census of a rule variant")
    p.add_argument("--variant", required=True, help="bw,wb,bb e.g. B,W,B")
    p.add_argument("--start", default="1:3")
    p.add_argument("--k", type=int, default=8)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("check", help="front-law suites over a trajectory")
    p.add_argument("--lemma", choices=("whites", "nofour"), required=True)
    p.add_argument("--rules", required=True)
    p.add_argument("--init", required=True)
    p.add_argument("--horizon", type=int, default=10)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("render", help="render a configuration to SVG")
    p.add_argument("--init", required=True)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--svg", required=True)
    p.add_argument("--colors", default=None, help="e.g. W=#ffffff,B=#2b4ba6")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("validate", help="adjacency suites against the geometric oracle")
    p.add_argument("--depth", type=int, default=5)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen-rules", help="emit seeded random rule tables")
    p.add_argument("--mode", choices=("random", "rotation"), default="random")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_gen_rules)

    p = sub.add_parser("crossval", help="decider versus replay over random pairs")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tables", type=int, default=50)
    p.add_argument("--configs", type=int, default=20)
    p.add_argument("--horizon", type=int, default=200)
    p.add_argument("--out-dir", default=None, help="where to serialize failures")
    p.set_defaults(func=cmd_crossval)

    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "seed") and args.seed is None:
        try:
            args.seed = _default_seed()
        except InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (geometry.GenerationError, geometry.ModelMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
