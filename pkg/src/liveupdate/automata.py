"""Nondeterministic Buchi automata from LTL, products and emptiness.

The translation reuses the after-derivative calculus: an automaton state is a
set of obligation conjuncts, a transition picks one disjunct of the derivative
of the state under a letter, and acceptance bookkeeping tracks one set per
until subformula (a transition fulfills an until when the target either drops
it or carries a residue of its right-hand side).  The generalized condition is
then degeneralized with the usual round-robin counter.

Counterexamples and emptiness witnesses are extracted shortest-prefix,
shortest-loop by BFS layering, so regression outputs stay readable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .formula import Formula, f_and, neg, subformulas, t_true
from .machine import MooreMachine
from .rewrite import af
from .traces import Cube, LassoTrace, Letter

__all__ = [
    "BuchiAutomaton",
    "CounterexampleLasso",
    "Verdict",
    "AutomatonBudgetError",
    "ltl_to_nba",
    "nba_emptiness",
    "accepts_lasso",
    "mc_ltl",
    "to_hoa",
]


class AutomatonBudgetError(RuntimeError):
    pass


@dataclass
class BuchiAutomaton:
    """Cube-labeled nondeterministic Buchi automaton."""

    ap: tuple[str, ...]
    labels: list[Hashable]
    initial: list[int]
    edges: list[list[tuple[Cube, int]]]
    accepting: frozenset[int]

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class CounterexampleLasso:
    """A violating trace of a checked machine together with the machine-state
    cycle that produces its loop."""

    lasso: LassoTrace
    machine_state_cycle: tuple[int, ...]
    input_prefix: tuple[Letter, ...] = ()
    input_loop: tuple[Letter, ...] = ()


@dataclass
class Verdict:
    outcome: str  # "pass" | "fail"
    witness: CounterexampleLasso | None = None
    failing_obligation: Formula | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"


# -- LTL -> NBA ---------------------------------------------------------------


def _dnf(f: Formula) -> list[frozenset[Formula]]:
    """Disjuncts of a positive boolean combination, as sets of non-boolean
    conjunct units; subsumed (strictly stronger) disjuncts are pruned."""
    if f.kind == "true":
        return [frozenset()]
    if f.kind == "false":
        return []
    if f.kind == "or":
        out: list[frozenset[Formula]] = []
        for c in f.children:
            out.extend(_dnf(c))
        return _prune(out)
    if f.kind == "and":
        acc: list[frozenset[Formula]] = [frozenset()]
        for c in f.children:
            parts = _dnf(c)
            acc = [a | p for a in acc for p in parts]
        return _prune(acc)
    return [frozenset((f,))]


def _prune(disjuncts: list[frozenset[Formula]]) -> list[frozenset[Formula]]:
    uniq = list(dict.fromkeys(disjuncts))
    kept = []
    for d in uniq:
        if not any(other < d for other in uniq):
            kept.append(d)
    return kept


def _conj(units: frozenset[Formula]) -> Formula:
    return f_and(sorted(units, key=lambda g: g.key)) if units else t_true()


def ltl_to_nba(f: Formula, max_states: int = 20000, prune: bool = True) -> BuchiAutomaton:
    """Translate a PNF formula into an NBA over its atoms."""
    untils = tuple(g for g in subformulas(f) if g.kind == "U")
    m = len(untils)

    if f.kind == "and":
        init_units = frozenset(f.children)
    elif f.kind == "true":
        init_units = frozenset()
    else:
        init_units = frozenset((f,))

    # generalized automaton over conjunct-set states
    gstates: dict[frozenset[Formula], int] = {init_units: 0}
    order: list[frozenset[Formula]] = [init_units]
    gtrans: list[list[tuple[Cube, int, frozenset[int]]]] = []  # cube, dst, fulfilled untils
    idx = 0
    while idx < len(order):
        units = order[idx]
        idx += 1
        state_formula = _conj(units)
        atoms = sorted(state_formula.atoms)
        out: list[tuple[Cube, int, frozenset[int]]] = []
        for bits in range(1 << len(atoms)):
            letter = frozenset(a for k, a in enumerate(atoms) if bits >> k & 1)
            cube = Cube(letter, frozenset(atoms) - letter)
            succ = af(state_formula, letter)
            for d in _dnf(succ):
                fulfilled = frozenset(
                    i for i, u in enumerate(untils)
                    if u not in d or any(rd <= d for rd in _dnf(af(u.right, letter)))
                )
                if d not in gstates:
                    if len(gstates) >= max_states:
                        raise AutomatonBudgetError(
                            f"automaton exceeds {max_states} states (frontier {len(order) - idx})")
                    gstates[d] = len(order)
                    order.append(d)
                out.append((cube, gstates[d], fulfilled))
        gtrans.append(out)

    # degeneralize with a round-robin counter; counter value m is accepting
    if m == 0:
        labels: list[Hashable] = [(_conj(u), 0) for u in order]
        edges = [[(cube, dst) for cube, dst, _ in row] for row in gtrans]
        nba = BuchiAutomaton(
            ap=tuple(sorted(f.atoms)),
            labels=labels,
            initial=[0],
            edges=edges,
            accepting=frozenset(range(len(order))),
        )
    else:
        index: dict[tuple[int, int], int] = {}
        rev: list[tuple[int, int]] = []
        labels = []

        def node(g: int, c: int) -> int:
            key = (g, c)
            if key not in index:
                index[key] = len(labels)
                rev.append(key)
                labels.append((_conj(order[g]), c))
            return index[key]

        start = node(0, 0)
        todo = [start]
        seen = {start}
        edge_map: dict[int, list[tuple[Cube, int]]] = {}
        while todo:
            nid = todo.pop()
            g, c = rev[nid]
            row = []
            base = 0 if c == m else c
            for cube, dst, fulfilled in gtrans[g]:
                j = base
                while j < m and j in fulfilled:
                    j += 1
                tgt = node(dst, j)
                row.append((cube, tgt))
                if tgt not in seen:
                    seen.add(tgt)
                    todo.append(tgt)
            edge_map[nid] = row
        edges = [edge_map.get(i, []) for i in range(len(labels))]
        nba = BuchiAutomaton(
            ap=tuple(sorted(f.atoms)),
            labels=labels,
            initial=[start],
            accepting=frozenset(i for i, (_, c) in enumerate(labels) if c == m),
            edges=edges,
        )
    if prune:
        nba = _prune_coreachable(nba)
    return nba


def _sccs(n: int, succ: list[list[int]]) -> list[list[int]]:
    """Tarjan SCC, iterative."""
    indexv = [-1] * n
    low = [0] * n
    onstack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = [0]
    for root in range(n):
        if indexv[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                indexv[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                onstack[v] = True
            advanced = False
            for i in range(pi, len(succ[v])):
                w = succ[v][i]
                if indexv[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if onstack[w]:
                    low[v] = min(low[v], indexv[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == indexv[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def _accepting_cycle_states(nba: BuchiAutomaton) -> set[int]:
    """States that lie on a cycle through an accepting state."""
    n = len(nba.labels)
    succ = [[dst for _, dst in row] for row in nba.edges]
    good: set[int] = set()
    for comp in _sccs(n, succ):
        comp_set = set(comp)
        nontrivial = len(comp) > 1 or any(d == comp[0] for d in succ[comp[0]])
        if nontrivial and any(q in nba.accepting for q in comp):
            good |= comp_set
    return good


def _prune_coreachable(nba: BuchiAutomaton) -> BuchiAutomaton:
    """Keep only states from which some accepting cycle is reachable."""
    n = len(nba.labels)
    targets = _accepting_cycle_states(nba)
    pred: list[list[int]] = [[] for _ in range(n)]
    for src, row in enumerate(nba.edges):
        for _, dst in row:
            pred[dst].append(src)
    keep = set(targets)
    todo = list(targets)
    while todo:
        v = todo.pop()
        for p in pred[v]:
            if p not in keep:
                keep.add(p)
                todo.append(p)
    if len(keep) == n:
        return nba
    remap = {old: new for new, old in enumerate(sorted(keep))}
    return BuchiAutomaton(
        ap=nba.ap,
        labels=[nba.labels[old] for old in sorted(keep)],
        initial=[remap[i] for i in nba.initial if i in keep],
        edges=[
            [(cube, remap[dst]) for cube, dst in nba.edges[old] if dst in keep]
            for old in sorted(keep)
        ],
        accepting=frozenset(remap[q] for q in nba.accepting if q in keep),
    )


# -- emptiness and membership -------------------------------------------------


def nba_emptiness(nba: BuchiAutomaton) -> LassoTrace | None:
    """None if the language is empty, else a shortest-prefix witness lasso."""
    n = len(nba.labels)
    if n == 0 or not nba.initial:
        return None
    good = _accepting_cycle_states(nba) & set(_reachable(nba))
    good_accepting = [q for q in good if q in nba.accepting]
    if not good_accepting:
        return None
    prefix_path = _bfs_path(nba, nba.initial, set(good_accepting))
    assert prefix_path is not None
    target = prefix_path[-1][1] if prefix_path else nba.initial[0]
    loop_path = _bfs_cycle(nba, target)
    assert loop_path
    prefix = tuple(cube.pos for cube, _ in prefix_path)
    loop = tuple(cube.pos for cube, _ in loop_path)
    return LassoTrace(prefix, loop)


def _reachable(nba: BuchiAutomaton) -> list[int]:
    seen = set(nba.initial)
    todo = list(nba.initial)
    while todo:
        v = todo.pop()
        for _, dst in nba.edges[v]:
            if dst not in seen:
                seen.add(dst)
                todo.append(dst)
    return sorted(seen)


def _bfs_path(nba: BuchiAutomaton, sources: Iterable[int], targets: set[int]) -> list[tuple[Cube, int]] | None:
    frontier = list(sources)
    parents: dict[int, tuple[int, Cube] | None] = {s: None for s in frontier}
    for s in frontier:
        if s in targets:
            return []
    while frontier:
        nxt = []
        for v in frontier:
            for cube, dst in nba.edges[v]:
                if dst in parents:
                    continue
                parents[dst] = (v, cube)
                if dst in targets:
                    path = []
                    cur = dst
                    while parents[cur] is not None:
                        prev, c = parents[cur]
                        path.append((c, cur))
                        cur = prev
                    return list(reversed(path))
                nxt.append(dst)
        frontier = nxt
    return None


def _bfs_cycle(nba: BuchiAutomaton, q: int) -> list[tuple[Cube, int]] | None:
    first: list[tuple[Cube, int]] = []
    for cube, dst in nba.edges[q]:
        if dst == q:
            return [(cube, q)]
        first.append((cube, dst))
    for cube, dst in first:
        back = _bfs_path(nba, [dst], {q})
        if back is not None:
            return [(cube, dst)] + back
    return None


def accepts_lasso(nba: BuchiAutomaton, sigma: LassoTrace) -> bool:
    """Exact membership of an ultimately periodic word."""
    p, total = len(sigma.prefix), sigma.positions
    nodes: dict[tuple[int, int], int] = {}
    succ: list[list[int]] = []
    acc: list[bool] = []

    def node(q: int, pos: int) -> int:
        key = (q, pos)
        if key not in nodes:
            nodes[key] = len(succ)
            succ.append([])
            acc.append(q in nba.accepting)
        return nodes[key]

    todo = [(q, 0) for q in nba.initial]
    for q in nba.initial:
        node(q, 0)
    seen = set(todo)
    while todo:
        q, pos = todo.pop()
        letter = sigma.letter(pos)
        nxt_pos = sigma.succ(pos)
        src = node(q, pos)
        for cube, dst in nba.edges[q]:
            if cube.matches(letter):
                tgt = (dst, nxt_pos)
                succ[src].append(node(*tgt))
                if tgt not in seen:
                    seen.add(tgt)
                    todo.append(tgt)
    for comp in _sccs(len(succ), succ):
        comp_set = set(comp)
        nontrivial = len(comp) > 1 or any(d == comp[0] for d in succ[comp[0]])
        if nontrivial and any(acc[v] for v in comp):
            return True
    return False


# -- model checking -----------------------------------------------------------


def mc_ltl(machine: MooreMachine, f: Formula, nba: BuchiAutomaton | None = None) -> Verdict:
    """Check that every trace of the machine satisfies ``f``.

    A failure carries a counterexample lasso found via the product with the
    automaton for the negation (shortest prefix, then shortest loop).
    """
    if nba is None:
        nba = ltl_to_nba(neg(f))
    ce = product_counterexample(machine, nba)
    if ce is None:
        return Verdict("pass")
    return Verdict("fail", witness=ce)


def product_counterexample(machine: MooreMachine, nba: BuchiAutomaton) -> CounterexampleLasso | None:
    """Search the machine x automaton product for an accepting lasso."""
    if not nba.initial or not nba.labels:
        return None
    letters = machine.input_letters()
    n_m = len(machine)
    n_q = len(nba.labels)

    def nid(ms: int, q: int) -> int:
        return ms * n_q + q

    succ_cache: dict[int, list[tuple[Letter, int]]] = {}

    def psucc(node: int) -> list[tuple[Letter, int]]:
        got = succ_cache.get(node)
        if got is not None:
            return got
        ms, q = divmod(node, n_q)
        out = []
        for inp in letters:
            letter = machine.letter(ms, inp)
            ms2 = machine.delta(ms, inp)
            for cube, q2 in nba.edges[q]:
                if cube.matches(letter):
                    out.append((inp, nid(ms2, q2)))
        succ_cache[node] = out
        return out

    initials = [nid(machine.initial, q) for q in nba.initial]
    seen = set(initials)
    todo = list(initials)
    order = []
    while todo:
        v = todo.pop()
        order.append(v)
        for _, w in psucc(v):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    remap = {v: i for i, v in enumerate(order)}
    succ_list = [[remap[w] for _, w in psucc(v)] for v in order]
    good: set[int] = set()
    for comp in _sccs(len(order), succ_list):
        comp_set = set(comp)
        nontrivial = len(comp) > 1 or any(d == comp[0] for d in succ_list[comp[0]])
        if not nontrivial:
            continue
        if any(order[v] % n_q in nba.accepting for v in comp):
            good |= {order[v] for v in comp if order[v] % n_q in nba.accepting}
    if not good:
        return None

    # shortest prefix to an accepting product node on a cycle, then shortest loop
    def bfs(srcs: list[int], targets: set[int], forbid_empty: bool) -> list[tuple[Letter, int]] | None:
        parents: dict[int, tuple[int, Letter] | None] = {s: None for s in srcs}
        if not forbid_empty and any(s in targets for s in srcs):
            return []
        frontier = list(srcs)
        while frontier:
            nxt = []
            for v in frontier:
                for inp, w in psucc(v):
                    if w in parents:
                        continue
                    parents[w] = (v, inp)
                    if w in targets:
                        path = []
                        cur = w
                        while parents[cur] is not None:
                            prev, i2 = parents[cur]
                            path.append((i2, cur))
                            cur = prev
                        return list(reversed(path))
                    nxt.append(w)
            frontier = nxt
        return None

    prefix_path = bfs(initials, good, forbid_empty=False)
    assert prefix_path is not None
    anchor = prefix_path[-1][1] if prefix_path else initials[0]
    if anchor not in good:
        anchor = next(iter(good))
        prefix_path = bfs(initials, {anchor}, forbid_empty=False)
    loop_path = None
    for inp, w in psucc(anchor):
        if w == anchor:
            loop_path = [(inp, w)]
            break
    if loop_path is None:
        for inp, w in psucc(anchor):
            back = bfs([w], {anchor}, forbid_empty=False)
            if back is not None:
                loop_path = [(inp, w)] + back
                break
    assert loop_path is not None

    def mstate(node: int) -> int:
        return node // n_q

    in_pre = tuple(inp for inp, _ in prefix_path)
    in_loop = tuple(inp for inp, _ in loop_path)
    lasso = machine.lasso_for(in_pre, in_loop)
    cycle_states = tuple(mstate(w) for _, w in loop_path)
    return CounterexampleLasso(lasso, cycle_states, in_pre, in_loop)


# -- HOA export ---------------------------------------------------------------


def to_hoa(nba: BuchiAutomaton, name: str = "nba") -> str:
    """HOA v1 serialization with Buchi acceptance and cube-labeled edges."""
    ap = list(nba.ap)
    apidx = {a: i for i, a in enumerate(ap)}

    def guard(cube: Cube) -> str:
        lits = [str(apidx[a]) for a in sorted(cube.pos)] + [f"!{apidx[a]}" for a in sorted(cube.neg)]
        return "&".join(lits) if lits else "t"

    lines = [
        "HOA: v1",
        f'name: "{name}"',
        f"States: {len(nba.labels)}",
        *(f"Start: {q}" for q in nba.initial),
        f"AP: {len(ap)} " + " ".join(f'"{a}"' for a in ap),
        "Acceptance: 1 Inf(0)",
        "acc-name: Buchi",
        "--BODY--",
    ]
    for q in range(len(nba.labels)):
        acc = " {0}" if q in nba.accepting else ""
        lines.append(f"State: {q}{acc}")
        for cube, dst in nba.edges[q]:
            lines.append(f"  [{guard(cube)}] {dst}")
    lines.append("--END--")
    return "\n".join(lines) + "\n"
