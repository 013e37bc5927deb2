"""Rule tables of deterministic cellular automata on the pentagrid.

A rule maps a context (current state, five neighbour states in side order)
to a new state.  Tables are total over their alphabet and must contain the
quiescent rule: a W cell with all-W neighbours stays W.  The decidable core
uses two states; tables over larger alphabets are accepted for simulation
only.

Rule file format, one rule per line::

    # comment
    default: identity
    closure: rotation
    W BWWWW -> B

`default: identity` lets unlisted contexts keep their current state;
`closure: rotation` closes the listed rules under circular permutation of
the neighbour word.
"""

import itertools
import random

W = "W"
B = "B"

QUIESCENT_CONTEXT = (W, (W, W, W, W, W))


class RuleFormatError(ValueError):
    """Malformed rule file."""


class DeterminismError(RuleFormatError):
    """Same context listed with two different outputs."""


class QuiescenceError(RuleFormatError):
    """The quiescent rule is missing or overridden."""


class TotalityError(RuleFormatError):
    """Some context has no rule and no default applies."""


class RotationConflictError(RuleFormatError):
    """Two rules in one rotation orbit disagree on the output."""


def _rotations(nbrs):
    return [nbrs[i:] + nbrs[:i] for i in range(5)]


class RuleTable:
    """Total deterministic map from contexts to states."""

    def __init__(self, mapping, alphabet=None):
        self.alphabet = frozenset(alphabet) if alphabet else _infer_alphabet(mapping)
        if W not in self.alphabet:
            raise QuiescenceError("the quiescent state W must belong to the alphabet")
        self._map = dict(mapping)
        self._validate()

    def _validate(self):
        expected = 0
        for self_state in self.alphabet:
            for nbrs in itertools.product(sorted(self.alphabet), repeat=5):
                expected += 1
                out = self._map.get((self_state, nbrs))
                if out is None:
                    raise TotalityError(f"no rule for context {self_state} {''.join(nbrs)}")
                if out not in self.alphabet:
                    raise RuleFormatError(f"output {out!r} outside alphabet")
        if len(self._map) != expected:
            extra = set(self._map) - {
                (s, n)
                for s in self.alphabet
                for n in itertools.product(sorted(self.alphabet), repeat=5)
            }
            raise RuleFormatError(f"contexts outside alphabet: {sorted(extra)[:3]}")
        if self._map[QUIESCENT_CONTEXT] != W:
            raise QuiescenceError("a W cell with all-W neighbours must stay W")

    def __call__(self, self_state, nbrs):
        return self._map[(self_state, tuple(nbrs))]

    def get(self, self_state, nbrs):
        return self._map[(self_state, tuple(nbrs))]

    def items(self):
        return self._map.items()

    @property
    def n_states(self):
        return len(self.alphabet)

    @property
    def is_two_state(self):
        return self.alphabet == frozenset((W, B))

    def __eq__(self, other):
        return isinstance(other, RuleTable) and self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))


def _infer_alphabet(mapping):
    letters = {W, B}  # the two-state core; extra letters widen the alphabet
    for (self_state, nbrs), out in mapping.items():
        letters.add(self_state)
        letters.update(nbrs)
        letters.add(out)
    return frozenset(letters)


def _parse_line(line, lineno):
    try:
        lhs, out = line.split("->")
        self_state, nbr_word = lhs.split()
        out = out.strip()
    except ValueError:
        raise RuleFormatError(f"line {lineno}: malformed rule {line!r}") from None
    if len(self_state) != 1 or len(nbr_word) != 5 or len(out) != 1:
        raise RuleFormatError(f"line {lineno}: malformed rule {line!r}")
    for c in self_state + nbr_word + out:
        if not c.isalpha() or not c.isupper():
            raise RuleFormatError(f"line {lineno}: bad state letter {c!r}")
    return (self_state, tuple(nbr_word)), out


def _complete(listed, alphabet, default_identity, origin="rule set"):
    mapping = {}
    for self_state in alphabet:
        for nbrs in itertools.product(sorted(alphabet), repeat=5):
            ctx = (self_state, nbrs)
            if ctx in listed:
                mapping[ctx] = listed[ctx]
            elif default_identity:
                mapping[ctx] = self_state
            else:
                raise TotalityError(
                    f"{origin} lists no rule for context {self_state} {''.join(nbrs)}"
                    " and has no 'default: identity' header"
                )
    return mapping


def parse_rules(text):
    """Parse the rule file format into a validated RuleTable."""
    listed = {}
    sources = {}
    default_identity = False
    rotation = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("default:"):
            value = line.split(":", 1)[1].strip().lower()
            if value != "identity":
                raise RuleFormatError(f"line {lineno}: unknown default {value!r}")
            default_identity = True
            continue
        if line.lower().startswith("closure:"):
            value = line.split(":", 1)[1].strip().lower()
            if value != "rotation":
                raise RuleFormatError(f"line {lineno}: unknown closure {value!r}")
            rotation = True
            continue
        ctx, out = _parse_line(line, lineno)
        if ctx in listed and listed[ctx] != out:
            raise DeterminismError(
                f"line {lineno}: context {ctx[0]} {''.join(ctx[1])} already maps to"
                f" {listed[ctx]} (line {sources[ctx]})"
            )
        if ctx not in listed:
            listed[ctx] = out
            sources[ctx] = lineno
    if rotation:
        listed = _close_rotations(listed, sources)
    alphabet = _infer_alphabet(listed)
    mapping = _complete(listed, alphabet, default_identity, origin="rule file")
    return RuleTable(mapping, alphabet)


def _close_rotations(listed, sources=None):
    closed = {}
    origin = {}
    for (self_state, nbrs), out in listed.items():
        for rot in _rotations(nbrs):
            ctx = (self_state, rot)
            if ctx in closed and closed[ctx] != out:
                a = origin[ctx]
                b = (self_state, nbrs)
                where = ""
                if sources:
                    where = f" (lines {sources.get(a)} and {sources.get(b)})"
                raise RotationConflictError(
                    f"rules {a[0]} {''.join(a[1])} -> {closed[ctx]} and"
                    f" {b[0]} {''.join(b[1])} -> {out} conflict under rotation{where}"
                )
            if ctx not in closed:
                closed[ctx] = out
                origin[ctx] = (self_state, nbrs)
    return closed


def rotation_closure(rules, default_identity=True):
    """Close a (possibly partial) rule mapping under neighbour rotations.

    `rules` maps (state, neighbour tuple) to an output state.  The closure
    is completed with the identity default and validated; the result always
    satisfies is_rotation_invariant.
    """
    listed = {(s, tuple(n)): out for (s, n), out in dict(rules).items()}
    closed = _close_rotations(listed)
    alphabet = _infer_alphabet(closed)
    mapping = _complete(closed, alphabet, default_identity, origin="rotation closure")
    return RuleTable(mapping, alphabet)


def is_rotation_invariant(table):
    """True iff every context's output is constant on its rotation orbit."""
    for (self_state, nbrs), out in table.items():
        for rot in _rotations(nbrs):
            if table.get(self_state, rot) != out:
                return False
    return True


def make_table(partial, default_identity=True, alphabet=(W, B)):
    """Build a table from a partial context map plus the identity default."""
    listed = {(s, tuple(n)): out for (s, n), out in dict(partial).items()}
    mapping = _complete(listed, frozenset(alphabet), default_identity)
    return RuleTable(mapping, frozenset(alphabet))


def table_to_text(table, header=None):
    """Canonical text form of a table: sorted explicit rule lines."""
    lines = [] if header is None else [header]
    for (self_state, nbrs), out in sorted(table.items()):
        lines.append(f"{self_state} {''.join(nbrs)} -> {out}")
    return "\n".join(lines) + "\n"


def random_table(rng, alphabet=(W, B)):
    """Uniform random total table with the quiescent rule forced."""
    alphabet = sorted(alphabet)
    mapping = {}
    for self_state in alphabet:
        for nbrs in itertools.product(alphabet, repeat=5):
            mapping[(self_state, nbrs)] = rng.choice(alphabet)
    mapping[QUIESCENT_CONTEXT] = W
    return RuleTable(mapping, frozenset(alphabet))


def random_rotation_invariant_table(rng, alphabet=(W, B)):
    """Random table constant on every rotation orbit (quiescent rule forced)."""
    alphabet = sorted(alphabet)
    mapping = {}
    for self_state in alphabet:
        for nbrs in itertools.product(alphabet, repeat=5):
            ctx = (self_state, nbrs)
            if ctx in mapping:
                continue
            out = rng.choice(alphabet)
            for rot in _rotations(nbrs):
                mapping[(self_state, rot)] = out
    for rot in _rotations((W, W, W, W, W)):
        mapping[(W, rot)] = W
    return RuleTable(mapping, frozenset(alphabet))


def random_configuration_tiles(rng, tiles, density=1 / 3, min_cells=1, max_cells=12):
    """Seeded sample of B-cells from `tiles` with the corpus density bounds."""
    tiles = list(tiles)
    while True:
        chosen = [t for t in tiles if rng.random() < density]
        if min_cells <= len(chosen) <= max_cells:
            return chosen
