"""Decision procedure for the halting problem of two-state automata.

A deterministic two-state automaton with quiescent state W, started from a
finite configuration, halts exactly when two consecutive configurations are
equal.  The procedure classifies the three W-contexts that can ignite a cell
one circle beyond the front,

    bw = out(W | BWWWW)   wb = out(W | WBWWW)   bb = out(W | BBWWW),

and decides as follows.  If bw = B, any B-cell on the front ignites its
white sons, so the front advances forever.  If bw = W, the front can only be
crossed through wb or bb ignitions of black nodes; before every step two
monitors are checked on the current front word:

  * wb = B and the word holds a B followed by a W: the black son of the W
    tile ignites and regenerates the pattern one circle out, so the front
    advances forever from now on;
  * wb = B, bb = B and the word is all B: every black node of the next
    circle ignites, the new word holds a B followed by a W, and the first
    monitor's argument applies from the next step on.

When neither monitor ever fires the configuration is confined to a fixed
disc, a finite state space, so the trajectory must repeat: an immediate
repeat is a halt, a longer one a cycle.  A step cap only guards against
implementation defects; reaching it raises instead of returning a verdict.

Every verdict carries a replayable witness; check_verdict replays it with
the plain engine step, independent of the decision path.
"""

from dataclasses import dataclass, field

from . import fastsim
from .engine import Configuration, canonical_key, front_positions, step
from .grid import circle_size
from .rules import B, W, is_rotation_invariant

SAFETY_BOUND = 10**6

HALTS = "halts"
NEVER_PERIODIC = "never-halts-periodic"
NEVER_FRONT_ADVANCE = "never-halts-front-advance"

RULE_BW = "rule-bw"
FRONT_PATTERN_BW = "front-pattern-bw"
ALL_BLACK_WITH_BB = "all-black-with-bb"

ADVANCE_WINDOW = 10


class UnsupportedStatesError(ValueError):
    """The decider handles exactly two states with W quiescent."""


class RotationInvarianceError(ValueError):
    """decide_rotation_invariant was given a non-invariant table."""


class SafetyBoundExceeded(RuntimeError):
    """Confined simulation failed to repeat within the step cap.

    This signals a defect in the confinement reasoning or the engine, never
    a property of the automaton; it is deliberately not a Verdict.
    """


@dataclass(frozen=True)
class RuleClass:
    """Outputs of the three front-crossing W-contexts."""

    bw: str
    wb: str
    bb: str


@dataclass(frozen=True)
class Verdict:
    """Decider output with a replayable trajectory prefix as witness.

    kind HALTS:                t is the first time with config_t = config_{t+1}
    kind NEVER_PERIODIC:       config_{preperiod} = config_{preperiod+period}, period >= 2
    kind NEVER_FRONT_ADVANCE:  N_{t+1} = N_t + 1 for every t >= t0
    """

    kind: str
    t: int = None
    preperiod: int = None
    period: int = None
    t0: int = None
    reason: str = None
    witness: tuple = field(default=(), repr=False)

    @property
    def halts(self):
        return self.kind == HALTS

    def summary(self):
        return (
            f"verdict={self.kind}"
            f" t={'-' if self.t is None else self.t}"
            f" preperiod={'-' if self.preperiod is None else self.preperiod}"
            f" period={'-' if self.period is None else self.period}"
            f" t0={'-' if self.t0 is None else self.t0}"
            f" reason={'-' if self.reason is None else self.reason}"
        )


def _require_two_state(table):
    if not table.is_two_state:
        raise UnsupportedStatesError(
            f"decider supports exactly the states {{W, B}}, got {sorted(table.alphabet)}"
        )


def classify(table):
    """Read the three front rules; nothing else enters the classification."""
    _require_two_state(table)
    return RuleClass(
        bw=table(W, (B, W, W, W, W)),
        wb=table(W, (W, B, W, W, W)),
        bb=table(W, (B, B, W, W, W)),
    )


def decide(table, init, safety_bound=SAFETY_BOUND):
    """Decide the halting problem for (table, init)."""
    _require_two_state(table)
    if init.is_empty:
        return Verdict(HALTS, t=0, witness=(frozenset(),))
    cls = classify(table)
    cells = init.cells
    if cls.bw == B:
        # a B-cell sits on the front by definition of the border number and
        # its white sons see the context (W | BWWWW)
        return Verdict(NEVER_FRONT_ADVANCE, t0=0, reason=RULE_BW, witness=(cells,))

    trajectory = [cells]
    seen = {cells: 0}
    n_front = init.max_circle()
    t = 0
    while True:
        if n_front >= 1 and cls.wb == B:
            on_front = front_positions(Configuration(trajectory[t]), n_front)
            if on_front:
                if len(on_front) < circle_size(n_front):
                    # circular word holds both letters, so BW occurs somewhere
                    return Verdict(
                        NEVER_FRONT_ADVANCE,
                        t0=t,
                        reason=FRONT_PATTERN_BW,
                        witness=tuple(trajectory),
                    )
                if cls.bb == B:
                    return Verdict(
                        NEVER_FRONT_ADVANCE,
                        t0=t,
                        reason=ALL_BLACK_WITH_BB,
                        witness=tuple(trajectory),
                    )
        if t >= safety_bound:
            raise SafetyBoundExceeded(
                f"no repeat within {safety_bound} steps; confinement reasoning violated"
            )
        nxt = step(table, Configuration(trajectory[t], time=t)).cells
        t += 1
        if nxt:
            n_front = max(n_front, Configuration(nxt).max_circle())
        if nxt == trajectory[-1]:
            return Verdict(HALTS, t=t - 1, witness=tuple(trajectory) + (nxt,))
        if nxt in seen:
            p = seen[nxt]
            return Verdict(
                NEVER_PERIODIC,
                preperiod=p,
                period=t - p,
                witness=tuple(trajectory) + (nxt,),
            )
        seen[nxt] = t
        trajectory.append(nxt)


def decide_rotation_invariant(table, init, safety_bound=SAFETY_BOUND):
    """decide() specialised to rotation-invariant tables.

    Under rotation invariance the contexts of bw and wb share one orbit, so
    either the front advances forever (bw = B) or it freezes after at most
    one advance and the bounded simulation must repeat.
    """
    _require_two_state(table)
    if not is_rotation_invariant(table):
        raise RotationInvarianceError("table is not rotation invariant")
    return decide(table, init, safety_bound)


def check_verdict(table, init, verdict, advance_window=ADVANCE_WINDOW):
    """Replay a verdict's claim from scratch; True iff it holds."""
    return not verdict_issues(table, init, verdict, advance_window)


def verdict_issues(table, init, verdict, advance_window=ADVANCE_WINDOW, horizon=None):
    """Replay a verdict and list every discrepancy found (empty = valid).

    The replay uses the plain engine step, plus the front-word fast path for
    the advance window; it never consults the decision path.  An advance
    verdict is checked for N_{t+1} = N_t + 1 over t in [t0, t0+window].
    With a finite `horizon`, claims about times beyond it are only checked
    for consistency within the window (no contradicting fixed point).
    """
    issues = []
    witness = verdict.witness

    def replay(n_steps):
        configs = [init.cells]
        for i in range(n_steps):
            configs.append(step(table, Configuration(configs[-1], time=i)).cells)
        return configs

    def check_witness(configs):
        k = min(len(witness), len(configs))
        if witness and tuple(witness[:k]) != tuple(configs[:k]):
            issues.append("witness trajectory disagrees with replay")

    def no_fixed_point_before(configs, bound, claim):
        for s in range(min(bound, len(configs) - 1)):
            if configs[s] == configs[s + 1]:
                issues.append(f"fixed point at {s} contradicts {claim}")
                return

    if verdict.kind == HALTS:
        t = verdict.t
        if t is None or t < 0:
            return [f"halts verdict with bad time {t}"]
        if horizon is not None and t + 1 > horizon:
            configs = replay(horizon)
            no_fixed_point_before(configs, horizon, f"first halt at {t}")
        else:
            configs = replay(t + 1)
            if configs[t] != configs[t + 1]:
                issues.append(f"config at {t} is not a fixed point")
            no_fixed_point_before(configs, t, f"first halt at {t}")
        check_witness(configs)
    elif verdict.kind == NEVER_PERIODIC:
        p, q = verdict.preperiod, verdict.period
        if p is None or q is None or p < 0 or q < 2:
            return [f"periodic verdict with bad parameters preperiod={p} period={q}"]
        if horizon is not None and p + q > horizon:
            configs = replay(horizon)
            no_fixed_point_before(configs, horizon, f"a cycle of period {q}")
        else:
            configs = replay(p + q)
            if configs[p] != configs[p + q]:
                issues.append(f"config at {p} does not recur at {p + q}")
            no_fixed_point_before(configs, p + q - 1, f"a cycle of period {q}")
        check_witness(configs)
    elif verdict.kind == NEVER_FRONT_ADVANCE:
        t0 = verdict.t0
        if t0 is None or t0 < 0:
            return [f"front-advance verdict with bad start {t0}"]
        if horizon is not None and t0 > horizon:
            configs = replay(horizon)
            no_fixed_point_before(configs, horizon, "a perpetual front advance")
            check_witness(configs)
            return issues
        configs = replay(t0)
        check_witness(configs)
        n_front = max(Configuration(c).max_circle() for c in configs)
        remaining = advance_window + 1  # advances for t = t0 .. t0 + window
        if n_front < 1:
            # grow one sparse step so a circular front word exists
            grown = step(table, Configuration(configs[-1], time=t0)).cells
            if Configuration(grown).max_circle() != 1:
                issues.append(f"front did not advance at t={t0}")
                return issues
            configs.append(grown)
            n_front = 1
            remaining -= 1
        bits = fastsim.config_word_bits(Configuration(configs[-1]), n_front)
        if not bits.any():
            issues.append(f"no B-cell on the front at claimed advance start t={t0}")
            return issues
        advances = -1
        for _ in fastsim.advancing_front_words(table, bits, n_front, remaining):
            advances += 1
        if advances < remaining:
            issues.append(
                f"front stopped advancing after {advances} of"
                f" {remaining} steps past t={t0}"
            )
    else:
        issues.append(f"unknown verdict kind {verdict.kind!r}")
    return issues
