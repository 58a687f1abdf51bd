"""Formula rewriting: the after-derivative, expansion, strip and the
update-obligation calculus built from them.

``af`` consumes one letter and returns the formula the rest of the word must
satisfy; folding it over a finite trace and stripping the release nodes yields
``evolve``, the obligation handed to an update system.  ``liveltl_to_ltl``
packages the same information as a single plain-LTL formula.

``edge_step`` is a variant of ``af`` used by the obligation monitor's
display form: obligations raised by a release keep their next-step guards, so
labels read as obligations anchored at the transition being taken rather than
at the position after it (see the monitor module).
"""

from __future__ import annotations

from .formula import (
    Formula,
    atom,
    canonical,
    f_and,
    f_next,
    f_or,
    f_until,
    natom,
    t_false,
    t_true,
)
from .traces import FiniteTrace, Letter

__all__ = [
    "af",
    "af_word",
    "edge_step",
    "expand",
    "expand_n",
    "strip",
    "evolve",
    "liveltl_to_ltl",
    "trace_formula",
    "x_power",
]


def af(f: Formula, letter: Letter) -> Formula:
    """One-letter after-derivative, with propositional simplification.

    Results are kept in canonical two-level form so that iterated
    derivatives stay shallow and their closure is finite."""
    return canonical(_af(f, letter))


def _af(f: Formula, letter: Letter) -> Formula:
    k = f.kind
    if k in ("true", "false"):
        return f
    if k == "atom":
        return t_true() if f.name in letter else t_false()
    if k == "natom":
        return t_false() if f.name in letter else t_true()
    if k == "and":
        return f_and(_af(c, letter) for c in f.children)
    if k == "or":
        return f_or(_af(c, letter) for c in f.children)
    if k == "X":
        return f.left
    if k == "U":
        return f_or((_af(f.right, letter), f_and((_af(f.left, letter), f))))
    if k == "R":
        ar = _af(f.right, letter)
        return f_or((f_and((_af(f.left, letter), ar)), f_and((ar, f))))
    raise ValueError(f"unknown formula kind {k!r}")


def af_word(f: Formula, word: FiniteTrace) -> Formula:
    """Left fold of ``af`` over a finite trace; the empty trace is identity."""
    for letter in word:
        f = af(f, letter)
    return f


def _pe(f: Formula, letter: Letter) -> Formula:
    """Positional evaluation: like ``af`` but next-guarded parts stay guarded."""
    return canonical(_pe_raw(f, letter))


def _pe_raw(f: Formula, letter: Letter) -> Formula:
    k = f.kind
    if k in ("true", "false"):
        return f
    if k == "atom":
        return t_true() if f.name in letter else t_false()
    if k == "natom":
        return t_false() if f.name in letter else t_true()
    if k == "and":
        return f_and(_pe_raw(c, letter) for c in f.children)
    if k == "or":
        return f_or(_pe_raw(c, letter) for c in f.children)
    if k == "X":
        return f
    if k == "U":
        return f_or((_pe_raw(f.right, letter), f_and((_pe_raw(f.left, letter), f_next(f)))))
    if k == "R":
        pr = _pe_raw(f.right, letter)
        return f_or((f_and((_pe_raw(f.left, letter), pr)), f_and((pr, f_next(f)))))
    raise ValueError(f"unknown formula kind {k!r}")


def edge_step(f: Formula, letter: Letter) -> Formula:
    """Monitor transition with transition-anchored obligation raising.

    Identical to ``af`` except that a release raises its residue with the
    next-step guards kept, so a fresh obligation shows up as ``X ...`` in the
    state rather than already advanced past the consumed letter.
    """
    return canonical(_edge_step(f, letter))


def _edge_step(f: Formula, letter: Letter) -> Formula:
    k = f.kind
    if k in ("true", "false"):
        return f
    if k == "atom":
        return t_true() if f.name in letter else t_false()
    if k == "natom":
        return t_false() if f.name in letter else t_true()
    if k == "and":
        return f_and(_edge_step(c, letter) for c in f.children)
    if k == "or":
        return f_or(_edge_step(c, letter) for c in f.children)
    if k == "X":
        return f.left
    if k == "U":
        return f_or((_edge_step(f.right, letter), f_and((_edge_step(f.left, letter), f))))
    if k == "R":
        pr = _pe_raw(f.right, letter)
        return f_or((f_and((_pe_raw(f.left, letter), pr)), f_and((pr, f))))
    raise ValueError(f"unknown formula kind {k!r}")


def expand(f: Formula) -> Formula:
    """One expansion pass: every temporal operator present before the pass is
    unrolled once; recurrence copies introduced under a fresh next are not
    re-expanded within the pass."""
    k = f.kind
    if k in ("true", "false", "atom", "natom"):
        return f
    if k == "and":
        return f_and(expand(c) for c in f.children)
    if k == "or":
        return f_or(expand(c) for c in f.children)
    if k == "X":
        return f_next(expand(f.left))
    if k == "U":
        return f_or((expand(f.right), f_and((expand(f.left), f_next(f)))))
    if k == "R":
        er = expand(f.right)
        return f_or((f_and((expand(f.left), er)), f_and((er, f_next(f)))))
    raise ValueError(f"unknown formula kind {k!r}")


def expand_n(f: Formula, n: int) -> Formula:
    for _ in range(n):
        f = expand(f)
    return f


def strip(f: Formula) -> Formula:
    """Replace every release node by true; the result is release-free."""
    k = f.kind
    if k in ("true", "false", "atom", "natom"):
        return f
    if k == "and":
        return f_and(strip(c) for c in f.children)
    if k == "or":
        return f_or(strip(c) for c in f.children)
    if k == "X":
        return f_next(strip(f.left))
    if k == "U":
        return f_until(strip(f.left), strip(f.right))
    if k == "R":
        return t_true()
    raise ValueError(f"unknown formula kind {k!r}")


def evolve(eta: FiniteTrace, phi: Formula) -> Formula:
    """Residual obligation of ``phi`` after the recorded execution ``eta``.

    Release-free; for every continuation lasso the obligation holds exactly
    when the combined word satisfies ``phi`` under the bounded-release
    semantics with boundary ``len(eta)``.
    """
    return strip(af_word(phi, eta))


def x_power(f: Formula, n: int) -> Formula:
    for _ in range(n):
        f = f_next(f)
    return f


def trace_formula(eta: FiniteTrace, all_aps: frozenset[str]) -> Formula:
    """LTL encoding of a finite trace: position i carries exactly eta[i]."""
    conjuncts = []
    for i, letter in enumerate(eta):
        cube = f_and(
            [atom(a) if a in letter else natom(a) for a in sorted(all_aps)]
        )
        conjuncts.append(x_power(cube, i))
    return f_and(conjuncts)


def liveltl_to_ltl(phi: Formula, psi: Formula, eta: FiniteTrace, all_aps: frozenset[str]) -> Formula:
    """Plain-LTL formula whose language equals the update language of
    (phi, psi, eta): psi delayed past the recorded trace, phi unrolled for
    ``len(eta)`` steps with the remaining release recurrences stripped, and
    the trace itself pinned letter by letter."""
    n = len(eta)
    return f_and((
        x_power(psi, n),
        strip(expand_n(phi, n)),
        trace_formula(eta, all_aps),
    ))


def eval_now(f: Formula, letter: Letter) -> Formula:
    """Public alias of the positional evaluation used by ``edge_step``."""
    return _pe(f, letter)
