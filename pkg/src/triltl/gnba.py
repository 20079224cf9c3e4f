"""Construction of the three-valued Buchi automaton for a core formula.

For a formula and a truth value, the generalized automaton's states are
the elementary sets of the formula's closure; the chosen truth value
selects the initial states and nothing else.  Transitions are guarded
by the state's own literal pattern: a state can only read letters that
agree with it on the atoms the closure mentions, while atoms outside
the closure are unconstrained.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .elementary import (
    ABSENT,
    DEFAULT_CANDIDATE_CAP,
    NEG,
    POS,
    StateVec,
    enumerate_elementary,
    enumerate_states,
    format_state,
    member,
    member_negated,
)
from .letters import Letter, UnknownAtomError, restrict_letter
from .syntax import Closure, Formula, atoms_of, closure_of
from .truth import Truth

_ALL_MARKS = frozenset((ABSENT, POS, NEG))


def state_pattern(vec: Sequence[int], closure: Closure) -> Letter:
    """The literal pattern of a state: its positive and negated atoms."""
    literals = []
    for i, name in closure.atom_coords:
        if vec[i] == POS:
            literals.append((name, True))
        elif vec[i] == NEG:
            literals.append((name, False))
    return frozenset(literals)


def _successor_allowed(
    vec: Sequence[int], closure: Closure
) -> Optional[list[Optional[frozenset[int]]]]:
    """Per-coordinate marks a successor state may take, or None if no
    successor can satisfy the next/until linkage."""
    allowed: list[Optional[frozenset[int]]] = [None] * len(closure.bases)

    def restrict(i: int, marks: frozenset[int]) -> bool:
        current = allowed[i]
        marks = marks if current is None else (current & marks)
        allowed[i] = marks
        return bool(marks)

    for i, (j, positive) in closure.nexts:
        value = vec[i]
        if value == POS:
            required = POS if positive else NEG
        elif value == NEG:
            required = NEG if positive else POS
        else:
            required = ABSENT
        if not restrict(j, frozenset((required,))):
            return None

    for i, lref, rref in closure.untils:
        value = vec[i]
        m1, m2 = member(vec, lref), member(vec, rref)
        n1, n2 = member_negated(vec, lref), member_negated(vec, rref)
        marks = _ALL_MARKS
        if value == POS:
            if not m2:
                if not m1:
                    return None
                marks = marks & {POS}
        else:
            if m2:
                return None
            if m1:
                marks = marks - {POS}
        if value == NEG:
            if not n2:
                return None
            if not n1:
                marks = marks & {NEG}
        else:
            if n1 and n2:
                return None
            if n2:
                marks = marks - {NEG}
        if not restrict(i, marks):
            return None

    return allowed


def successors(vec: StateVec, letter: Letter, closure: Closure) -> list[StateVec]:
    """States reachable from `vec` when reading `letter`.

    Empty unless the letter, restricted to the closure's atoms, equals
    the state's own literal pattern; otherwise all elementary states
    whose marks satisfy the next/until linkage with `vec`.
    """
    if restrict_letter(letter, closure.atoms) != state_pattern(vec, closure):
        return []
    allowed = _successor_allowed(vec, closure)
    if allowed is None:
        return []
    return enumerate_states(closure, allowed)


def acceptance_sets(
    states: Sequence[StateVec], closure: Closure
) -> list[frozenset[int]]:
    """One acceptance set per until base, in closure order, then the
    full state set."""
    out = []
    for i, _lref, rref in closure.untils:
        members = frozenset(
            sid
            for sid, vec in enumerate(states)
            if (vec[i] != POS or member(vec, rref))
            and (not member_negated(vec, rref) or vec[i] == NEG)
        )
        out.append(members)
    out.append(frozenset(range(len(states))))
    return out


@dataclass(frozen=True)
class Gnba:
    """Generalized Buchi automaton over letters of signed atoms.

    Transitions are stored per source state as the successor id list;
    the required letter pattern is `patterns[sid]`, free on atoms the
    closure does not mention.
    """

    closure: Closure
    alphabet: tuple[str, ...]
    states: tuple[StateVec, ...]
    initial: frozenset[int]
    patterns: tuple[Letter, ...]
    succ: tuple[tuple[int, ...], ...]
    acceptance: tuple[frozenset[int], ...]

    def transitions(self, sid: int, letter: Letter) -> tuple[int, ...]:
        """Successor ids for a state under a letter (empty on guard mismatch)."""
        if restrict_letter(letter, self.closure.atoms) != self.patterns[sid]:
            return ()
        return self.succ[sid]

    def state_label(self, sid: int) -> str:
        return format_state(self.states[sid], self.closure)


def _initial_ids(
    states: Sequence[StateVec], closure: Closure, value: Truth
) -> frozenset[int]:
    idx, positive = closure.ref(closure.formula)
    if value is Truth.TRUE:
        wanted = POS if positive else NEG
    elif value is Truth.FALSE:
        wanted = NEG if positive else POS
    else:
        wanted = ABSENT
    return frozenset(sid for sid, vec in enumerate(states) if vec[idx] == wanted)


class _CoreAutomaton:
    """The truth-value-independent part of the construction, so the
    three automata of one formula can share everything but Q0."""

    def __init__(self, psi: Formula, alphabet: Sequence[str], cap: int):
        alphabet = tuple(alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet contains duplicate atoms")
        missing = sorted(atoms_of(psi) - set(alphabet))
        if missing:
            raise UnknownAtomError(
                f"formula atom {missing[0]!r} is not in the alphabet"
            )
        self.alphabet = alphabet
        self.closure = closure_of(psi)
        self.states = tuple(enumerate_elementary(self.closure, cap))
        state_ids = {vec: sid for sid, vec in enumerate(self.states)}
        self.patterns = tuple(
            state_pattern(vec, self.closure) for vec in self.states
        )
        succ = []
        for vec in self.states:
            allowed = _successor_allowed(vec, self.closure)
            if allowed is None:
                succ.append(())
            else:
                succ.append(
                    tuple(
                        state_ids[nxt]
                        for nxt in enumerate_states(self.closure, allowed)
                    )
                )
        self.succ = tuple(succ)
        self.acceptance = tuple(acceptance_sets(self.states, self.closure))

    def with_value(self, value: Truth) -> Gnba:
        return Gnba(
            closure=self.closure,
            alphabet=self.alphabet,
            states=self.states,
            initial=_initial_ids(self.states, self.closure, value),
            patterns=self.patterns,
            succ=self.succ,
            acceptance=self.acceptance,
        )


def build_automaton(
    psi: Formula,
    alphabet: Sequence[str],
    value: Truth,
    cap: int = DEFAULT_CANDIDATE_CAP,
) -> Gnba:
    """Build the generalized automaton accepting exactly the words that
    give `psi` the truth value `value`.

    `psi` must be a canonical core formula whose atoms all appear in
    `alphabet`.  Raises UnknownAtomError otherwise, and
    StateSpaceLimitError when the closure is too large for `cap`.
    """
    return _CoreAutomaton(psi, alphabet, cap).with_value(value)


def build_family(
    psi: Formula, alphabet: Sequence[str], cap: int = DEFAULT_CANDIDATE_CAP
) -> dict[Truth, Gnba]:
    """All three automata of a formula, sharing states and transitions."""
    core = _CoreAutomaton(psi, alphabet, cap)
    return {value: core.with_value(value) for value in Truth}


@dataclass(frozen=True)
class Nba:
    """Ordinary Buchi automaton produced by the counter construction.

    State k*gid + (counter-1) is the pair (gnba state gid, counter).
    """

    closure: Closure
    alphabet: tuple[str, ...]
    counters: int
    states: tuple[tuple[int, int], ...]
    initial: frozenset[int]
    patterns: tuple[Letter, ...]
    succ: tuple[tuple[int, ...], ...]
    accepting: frozenset[int]


def degeneralize(g: Gnba) -> Nba:
    """Counter construction: track which acceptance set is owed next.

    The counter advances exactly when leaving a state of the currently
    owed set; accepting states are those of the first set at counter 1.
    The accepted language is unchanged.
    """
    k = len(g.acceptance)
    states = tuple(
        (gid, counter) for gid in range(len(g.states)) for counter in range(1, k + 1)
    )
    patterns = tuple(g.patterns[gid] for gid, _ in states)
    succ = []
    for gid, counter in states:
        nxt = counter % k + 1 if gid in g.acceptance[counter - 1] else counter
        succ.append(tuple(tgt * k + (nxt - 1) for tgt in g.succ[gid]))
    initial = frozenset(gid * k for gid in g.initial)
    accepting = frozenset(gid * k for gid in g.acceptance[0])
    return Nba(
        closure=g.closure,
        alphabet=g.alphabet,
        counters=k,
        states=states,
        initial=initial,
        patterns=patterns,
        succ=tuple(succ),
        accepting=accepting,
    )
