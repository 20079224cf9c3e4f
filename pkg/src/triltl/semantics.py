"""Direct evaluation of three-valued LTL on ultimately periodic words.

A lasso denotes the infinite word stem followed by the loop repeated
forever.  Evaluation labels every subformula at every one of the
n = |stem| + |loop| positions with two predicates, "definitely true"
and "definitely false", computed bottom-up; the until labels are the
least (true side) and greatest (false side) fixpoints of their
one-step unfoldings on the position graph with wrap-around.  This is
independent of the automaton construction, which makes it a usable
oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Sequence

from .gnba import Nba
from .letters import (
    Letter,
    UnknownAtomError,
    all_letters,
    letter_atoms,
    make_letter,
    parse_letter_sequence,
    restrict_letter,
)
from .syntax import And, Atom, Formula, Next, Not, TrueConst, Until, atoms_of
from .truth import Truth


class LassoFormatError(ValueError):
    """Malformed lasso (empty loop or letters outside the alphabet)."""


class NonTotalLetterError(ValueError):
    """A letter leaves some alphabet atom unassigned."""


@dataclass(frozen=True)
class LassoWord:
    """The infinite word stem . loop . loop . loop ..."""

    stem: tuple[Letter, ...]
    loop: tuple[Letter, ...]
    alphabet: tuple[str, ...]

    def __post_init__(self):
        if not self.loop:
            raise LassoFormatError("lasso loop must not be empty")
        atoms = set(self.alphabet)
        for letter in (*self.stem, *self.loop):
            make_letter(letter)
            extra = letter_atoms(letter) - atoms
            if extra:
                raise LassoFormatError(
                    f"letter uses atom {sorted(extra)[0]!r} outside the alphabet"
                )

    @property
    def length(self) -> int:
        return len(self.stem) + len(self.loop)

    @property
    def letters(self) -> tuple[Letter, ...]:
        return self.stem + self.loop

    def successor(self, i: int) -> int:
        """Next position: i + 1, wrapping from the last back to the loop start."""
        return i + 1 if i + 1 < self.length else len(self.stem)

    def is_total(self) -> bool:
        """Does every letter assign every alphabet atom?"""
        return all(
            letter_atoms(letter) == set(self.alphabet) for letter in self.letters
        )


def lasso(stem, loop, alphabet) -> LassoWord:
    return LassoWord(tuple(stem), tuple(loop), tuple(alphabet))


def parse_lasso(
    stem_text: str, loop_text: str, alphabet: Optional[Sequence[str]] = None
) -> LassoWord:
    """Parse stem and loop strings ("a;!a" and "a,!b" style) into a lasso.

    Without an explicit alphabet, the atoms mentioned in the letters are
    used.
    """
    stem = parse_letter_sequence(stem_text)
    loop = parse_letter_sequence(loop_text)
    if not loop:
        raise LassoFormatError("lasso loop must not be empty")
    if alphabet is None:
        names: set[str] = set()
        for letter in (*stem, *loop):
            names |= letter_atoms(letter)
        alphabet = sorted(names)
    return lasso(stem, loop, alphabet)


def _subformulas_bottom_up(psi: Formula) -> list[Formula]:
    seen: set[Formula] = set()
    order: list[Formula] = []

    def visit(g: Formula) -> None:
        if g in seen:
            return
        seen.add(g)
        if isinstance(g, (Not, Next)):
            visit(g.child)
        elif isinstance(g, (And, Until)):
            visit(g.left)
            visit(g.right)
        order.append(g)

    visit(psi)
    return order


def _fixpoint_sweeps(n: int) -> int:
    # Each sweep stabilises at least one position; one extra detects it.
    return n + 1


def _label_tables(
    psi: Formula, word: LassoWord, sweep_budget: Optional[int] = None
) -> dict[Formula, tuple[list[bool], list[bool]]]:
    """For each subformula, positionwise (definitely-true, definitely-false)."""
    n = word.length
    succ = [word.successor(i) for i in range(n)]
    letters = word.letters
    budget = _fixpoint_sweeps(n) if sweep_budget is None else sweep_budget

    tables: dict[Formula, tuple[list[bool], list[bool]]] = {}
    for g in _subformulas_bottom_up(psi):
        if isinstance(g, Atom):
            t = [(g.name, True) in letters[i] for i in range(n)]
            f = [(g.name, False) in letters[i] for i in range(n)]
        elif isinstance(g, TrueConst):
            t = [True] * n
            f = [False] * n
        elif isinstance(g, Not):
            ct, cf = tables[g.child]
            t, f = list(cf), list(ct)
        elif isinstance(g, Next):
            ct, cf = tables[g.child]
            t = [ct[succ[i]] for i in range(n)]
            f = [cf[succ[i]] for i in range(n)]
        elif isinstance(g, And):
            lt, lf = tables[g.left]
            rt, rf = tables[g.right]
            t = [lt[i] and rt[i] for i in range(n)]
            f = [lf[i] or rf[i] for i in range(n)]
        elif isinstance(g, Until):
            lt, lf = tables[g.left]
            rt, rf = tables[g.right]
            # Least fixpoint of t[i] = rt[i] or (lt[i] and t[succ(i)]).
            t = [False] * n
            sweeps = 0
            changed = True
            while changed:
                changed = False
                sweeps += 1
                assert sweeps <= budget, "until fixpoint failed to converge"
                for i in range(n - 1, -1, -1):
                    if not t[i] and (rt[i] or (lt[i] and t[succ[i]])):
                        t[i] = True
                        changed = True
            # Greatest fixpoint of f[i] = rf[i] and (lf[i] or f[succ(i)]).
            f = [True] * n
            sweeps = 0
            changed = True
            while changed:
                changed = False
                sweeps += 1
                assert sweeps <= budget, "until fixpoint failed to converge"
                for i in range(n - 1, -1, -1):
                    if f[i] and not (rf[i] and (lf[i] or f[succ[i]])):
                        f[i] = False
                        changed = True
        else:
            raise ValueError(f"not a core formula: {g!r}")
        assert not any(a and b for a, b in zip(t, f)), "label tables overlap"
        tables[g] = (t, f)
    return tables


def eval_lasso(psi: Formula, word: LassoWord) -> Truth:
    """The three-valued value of `psi` on the infinite word at position 0."""
    missing = atoms_of(psi) - set(word.alphabet)
    if missing:
        raise UnknownAtomError(
            f"formula atom {sorted(missing)[0]!r} is not in the lasso alphabet"
        )
    t, f = _label_tables(psi, word)[psi]
    if t[0]:
        return Truth.TRUE
    if f[0]:
        return Truth.FALSE
    return Truth.UNKNOWN


def eval_lasso_two_valued(psi: Formula, word: LassoWord) -> bool:
    """Classical satisfaction on a word whose letters are all total.

    Runs the same fixpoint machinery with falsehood as the complement
    of truth, so only the true-side tables are needed.
    """
    missing = atoms_of(psi) - set(word.alphabet)
    if missing:
        raise UnknownAtomError(
            f"formula atom {sorted(missing)[0]!r} is not in the lasso alphabet"
        )
    n = word.length
    for i, letter in enumerate(word.letters):
        if letter_atoms(letter) != set(word.alphabet):
            raise NonTotalLetterError(f"letter at position {i} is not total")
    succ = [word.successor(i) for i in range(n)]
    letters = word.letters
    tables: dict[Formula, list[bool]] = {}
    for g in _subformulas_bottom_up(psi):
        if isinstance(g, Atom):
            t = [(g.name, True) in letters[i] for i in range(n)]
        elif isinstance(g, TrueConst):
            t = [True] * n
        elif isinstance(g, Not):
            t = [not v for v in tables[g.child]]
        elif isinstance(g, Next):
            ct = tables[g.child]
            t = [ct[succ[i]] for i in range(n)]
        elif isinstance(g, And):
            lt, rt = tables[g.left], tables[g.right]
            t = [lt[i] and rt[i] for i in range(n)]
        elif isinstance(g, Until):
            lt, rt = tables[g.left], tables[g.right]
            t = [False] * n
            changed = True
            while changed:
                changed = False
                for i in range(n - 1, -1, -1):
                    if not t[i] and (rt[i] or (lt[i] and t[succ[i]])):
                        t[i] = True
                        changed = True
        else:
            raise ValueError(f"not a core formula: {g!r}")
        tables[g] = t
    return tables[psi][0]


def nba_accepts_lasso(automaton: Nba, word: LassoWord) -> bool:
    """Does some run of the automaton over the lasso word hit an
    accepting state infinitely often?

    Decided on the product of automaton states with word positions
    (wrap-around at the end of the loop): accepted iff a cycle through
    an accepting product node is reachable from an initial node.
    """
    n = word.length
    succ_pos = [word.successor(i) for i in range(n)]
    closure_atoms = set(automaton.closure.atoms)
    restricted = [restrict_letter(letter, closure_atoms) for letter in word.letters]
    patterns = automaton.patterns
    succ = automaton.succ
    accepting = automaton.accepting

    def out_edges(node: int) -> list[int]:
        q, i = divmod(node, n)
        if patterns[q] != restricted[i]:
            return []
        j = succ_pos[i]
        return [q2 * n + j for q2 in succ[q]]

    roots = [q * n for q in automaton.initial]

    # Forward reachability first: most runs die on the letter guard.
    reachable: set[int] = set()
    stack = list(roots)
    while stack:
        node = stack.pop()
        if node in reachable:
            continue
        reachable.add(node)
        stack.extend(out_edges(node))
    if not any((node // n) in accepting for node in reachable):
        return False

    # Iterative Tarjan over the reachable subgraph; accept on the first
    # cyclic component that contains an accepting node.
    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    scc_stack: list[int] = []
    counter = 0
    for root in roots:
        if root in index:
            continue
        work = [(root, iter(out_edges(root)))]
        index[root] = lowlink[root] = counter
        counter += 1
        scc_stack.append(root)
        on_stack.add(root)
        while work:
            node, edges = work[-1]
            advanced = False
            for target in edges:
                if target not in index:
                    index[target] = lowlink[target] = counter
                    counter += 1
                    scc_stack.append(target)
                    on_stack.add(target)
                    work.append((target, iter(out_edges(target))))
                    advanced = True
                    break
                if target in on_stack:
                    lowlink[node] = min(lowlink[node], index[target])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index[node]:
                component = []
                while True:
                    member = scc_stack.pop()
                    on_stack.remove(member)
                    component.append(member)
                    if member == node:
                        break
                cyclic = len(component) > 1 or any(
                    target == component[0] for target in out_edges(component[0])
                )
                if cyclic and any((m // n) in accepting for m in component):
                    return True
    return False


def enumerate_lassos(
    alphabet: Sequence[str], max_stem: int, max_loop: int
) -> Iterator[LassoWord]:
    """All lassos with the given stem and loop bounds over consistent
    letters, in deterministic order and without syntactic duplicates."""
    if max_loop < 1:
        raise ValueError("max_loop must be at least 1")
    alphabet = tuple(alphabet)
    letters = all_letters(alphabet)
    for stem_len in range(max_stem + 1):
        for stem in product(letters, repeat=stem_len):
            for loop_len in range(1, max_loop + 1):
                for loop in product(letters, repeat=loop_len):
                    yield LassoWord(stem, loop, alphabet)
