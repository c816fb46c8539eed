"""The nondeterministic reduction systems driving the decision procedures.

Pipeline (fixed phase order, out-of-phase moves are rejected)::

    Init?  ->  choice of domain  ->  CF  ->  PCF  ->  -o elimination

* Init (consequence problems only): the goal ``phi |- psi`` becomes
  ``_a |- _b`` over fresh letters, with ``_a |- phi`` and ``psi |- _b``
  added as hypotheses.  A model then violates the new goal exactly when
  it can be extended to violate the old one, and witnesses transfer both
  ways.
* Domain: each letter is branched over its possible regions.  PL mode is
  three-way: finite-positive (FP), infinity (substitute ``bot``) and zero
  (substitute ``0 * I``).  AL mode is two-way: finite (zero allowed) and
  infinity, which suffices because canonicalization is value-preserving
  on all finite models when multiplication is absent.
* CF: canonicalize everything; in decision mode also fold closed
  subformulas to constants (value-preserving in every model) and
  re-canonicalize.
* PCF: drop hypotheses ``bot |- phi`` (always true); a hypothesis
  ``theta |- bot`` with ``theta != bot`` prunes the branch in decision
  mode and is replaced by the unsatisfiable polynomial judgement
  ``0*I |- I`` in completeness-faithful mode.
* Elimination: branch per ``-o`` occurrence until none remain.

Two move sets eliminate ``-o``: the duplicating ("naive") one and the
fresh-letter ("efficient") one.  Both operate on an occurrence that is
outermost (not nested under another ``-o``), decomposed against its
judgement side as ``Delta (+) rho.(theta' -o gamma)`` where ``rho`` is the
product of the multiplicative cofactors along the path and ``Delta``
collects the additive cofactors (each times its own multiplier); the
decomposition is value-preserving in every model.  With ``rho`` empty
these are exactly the tensor-shape moves, otherwise the multiplication-
shape moves; left/right symmetric cases are handled by the same
decomposition.

Modes: ``logic`` in {"al", "pl"}, ``faithful`` (completeness-faithful
artifacts: auxiliary positivity judgements, finiteness markers, the
unsatisfiable filler) vs decision (domain log marks and pruning), and
``moves`` in {"naive", "efficient"}.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .canonical import (
    canonicalize,
    canonicalize_judgement,
    classify,
    fold_constants,
    FormClass,
)
from .quantale import EXT_ZERO, Ext
from .semantics import evaluate
from .syntax import (
    BOT,
    ONE,
    ZERO,
    Bot,
    Formula,
    Judgement,
    Lollipop,
    Mult,
    Problem,
    Prop,
    Scalar,
    Tensor,
    collapse,
    const,
    count_lollipops,
    format_judgement,
    fresh_name,
    has_mult,
    judgement_letters,
    neg,
    substitute_judgement,
)

__all__ = [
    "DomainChoice",
    "Mode",
    "ReductionState",
    "NormalForm",
    "PRUNED",
    "ReductionError",
    "NoGoalError",
    "InvalidPhaseError",
    "AlreadyDecidedError",
    "NoLollipopError",
    "ALModeViolationError",
    "move_init",
    "domain_branches",
    "move_cf",
    "move_pcf",
    "lolli_branches_complete",
    "lolli_branches_efficient",
    "iter_normal_forms",
    "enumerate_normal_forms",
]


class DomainChoice(Enum):
    FINITE_POSITIVE = "finite-positive"
    FINITE = "finite"
    ZERO = "zero"
    INFINITY = "infinity"


@dataclass(frozen=True)
class Mode:
    logic: str = "pl"  # "al" | "pl"
    faithful: bool = False
    moves: str = "efficient"  # "naive" | "efficient"

    def __post_init__(self):
        if self.logic not in ("al", "pl"):
            raise ValueError(f"logic must be 'al' or 'pl', got {self.logic!r}")
        if self.moves not in ("naive", "efficient"):
            raise ValueError(f"moves must be 'naive' or 'efficient', got {self.moves!r}")


@dataclass(frozen=True)
class ReductionState:
    """Hypotheses (collapsed to single antecedents), optional goal, fresh
    counter and the write-once domain log."""

    hypotheses: Tuple[Judgement, ...]
    goal: Optional[Judgement]
    fresh: int
    domain_log: Tuple[Tuple[str, DomainChoice], ...] = ()

    def log(self) -> Dict[str, DomainChoice]:
        return dict(self.domain_log)

    def logged(self, name: str) -> Optional[DomainChoice]:
        for k, v in self.domain_log:
            if k == name:
                return v
        return None

    def with_log(self, name: str, choice: DomainChoice) -> "ReductionState":
        if self.logged(name) is not None:
            raise AlreadyDecidedError(name)
        return replace(self, domain_log=self.domain_log + ((name, choice),))


@dataclass
class NormalForm:
    """A reduction leaf: polynomial-form hypotheses plus the records needed
    to rebuild a model on the user letters (goal sides may be ``bot`` or
    ``0 * I`` after substitutions)."""

    hypotheses: Tuple[Judgement, ...]
    goal: Optional[Judgement]
    domain_log: Dict[str, DomainChoice]


class _PrunedType:
    def __repr__(self):
        return "PRUNED"


PRUNED = _PrunedType()


class ReductionError(RuntimeError):
    pass


class NoGoalError(ReductionError):
    pass


class InvalidPhaseError(ReductionError):
    pass


class AlreadyDecidedError(ReductionError):
    def __init__(self, name: str):
        self.letter = name
        super().__init__(f"letter {name!r} already has a domain decision")


class NoLollipopError(ReductionError):
    pass


class ALModeViolationError(ReductionError):
    pass


# --------------------------------------------------------------------------
# Shared memo context


class _Ctx:
    """Per-enumeration caches; substitution and cf results are shared
    across sibling branches (formula objects are shared aggressively)."""

    def __init__(self):
        self.cf: dict = {}
        self.fold: dict = {}
        self.values: dict = {}
        self.subst: Dict[Tuple[str, str], dict] = {}
        self.lolli: dict = {}

    def substitute(self, j: Judgement, name: str, repl: Formula) -> Judgement:
        kind = "bot" if repl is BOT else "zero"
        memo = self.subst.setdefault((name, kind), {})
        return substitute_judgement(j, name, repl, memo)


def _state_digest(state: ReductionState) -> str:
    text = "\n".join(format_judgement(j) for j in state.hypotheses)
    if state.goal is not None:
        text += "\ngoal: " + format_judgement(state.goal)
    return hashlib.sha1(text.encode()).hexdigest()[:12]


# --------------------------------------------------------------------------
# Phase 1: initialisation


def problem_state(problem: Problem) -> ReductionState:
    hyps = tuple(collapse(j) for j in problem.hypotheses)
    goal = collapse(problem.goal) if problem.goal is not None else None
    return ReductionState(hyps, goal, 0)


def _goal_initialized(goal: Judgement) -> bool:
    return (len(goal.antecedents) == 1
            and isinstance(goal.antecedents[0], Prop)
            and goal.antecedents[0].name.startswith("_")
            and isinstance(goal.consequent, Prop)
            and goal.consequent.name.startswith("_"))


def move_init(state: ReductionState) -> ReductionState:
    """Reduce the goal ``phi |- psi`` to ``_a |- _b`` over fresh letters.

    Adds the hypotheses ``_a |- phi`` and ``psi |- _b``; a model violates
    ``_a |- _b`` under them exactly when ``phi < psi`` can be realized,
    so countermodels transfer in both directions.
    """
    if state.goal is None:
        raise NoGoalError("init needs a goal judgement")
    if _goal_initialized(state.goal):
        raise InvalidPhaseError("goal is already two fresh letters")
    a = Prop(fresh_name(state.fresh))
    b = Prop(fresh_name(state.fresh + 1))
    phi = state.goal.antecedents[0]
    psi = state.goal.consequent
    hyps = state.hypotheses + (
        Judgement((a,), phi),
        Judgement((psi,), b),
    )
    return ReductionState(hyps, Judgement((a,), b), state.fresh + 2,
                          state.domain_log)


# --------------------------------------------------------------------------
# Phase 2: choice of domain


def domain_branches(state: ReductionState, letter: str,
                    mode: Mode = Mode("pl", faithful=True),
                    ctx: Optional[_Ctx] = None) -> Tuple[ReductionState, ...]:
    """Successor states for the domain decision on ``letter``.

    PL: finite-positive, infinity, zero (in this order).  The FP branch
    in faithful mode adds ``|- ~~p`` and ``q.q.p |- I`` with ``q`` fresh;
    in decision mode positivity is recorded in the domain log instead.
    AL: finite and infinity only.
    """
    if ctx is None:
        ctx = _Ctx()
    occurring = judgement_letters(
        state.hypotheses + ((state.goal,) if state.goal else ()))
    if letter not in occurring:
        raise ReductionError(f"letter {letter!r} does not occur in the state")
    if state.logged(letter) is not None:
        raise AlreadyDecidedError(letter)

    branches: List[ReductionState] = []
    p = Prop(letter)

    # finite(-positive) branch
    if mode.logic == "pl":
        fp = state.with_log(letter, DomainChoice.FINITE_POSITIVE)
        if mode.faithful:
            q = Prop(fresh_name(fp.fresh))
            fp = replace(fp, fresh=fp.fresh + 1)
            fp = fp.with_log(q.name, DomainChoice.FINITE)
            fp = replace(fp, hypotheses=fp.hypotheses + (
                Judgement((ZERO,), neg(neg(p))),
                Judgement((Mult(Mult(q, q), p),), ONE),
            ))
        branches.append(fp)
    else:
        fin = state.with_log(letter, DomainChoice.FINITE)
        if mode.faithful:
            fin = replace(fin, hypotheses=fin.hypotheses + (
                Judgement((ZERO,), neg(neg(p))),))
        branches.append(fin)

    def substituted(choice: DomainChoice, repl: Formula) -> ReductionState:
        hyps = tuple(ctx.substitute(j, letter, repl) for j in state.hypotheses)
        goal = ctx.substitute(state.goal, letter, repl) if state.goal else None
        return replace(state.with_log(letter, choice), hypotheses=hyps, goal=goal)

    branches.append(substituted(DomainChoice.INFINITY, BOT))
    if mode.logic == "pl":
        branches.append(substituted(DomainChoice.ZERO, ZERO))
    return tuple(branches)


# --------------------------------------------------------------------------
# Phase 3: reduction to canonical form


def _live_letters(state: ReductionState) -> Tuple[str, ...]:
    occurring = judgement_letters(
        state.hypotheses + ((state.goal,) if state.goal else ()))
    log = state.log()
    return tuple(
        name for name in occurring
        if log.get(name) in (DomainChoice.FINITE, DomainChoice.FINITE_POSITIVE))


def move_cf(state: ReductionState, mode: Mode = Mode("pl", faithful=True),
            ctx: Optional[_Ctx] = None) -> ReductionState:
    """Canonicalize all hypotheses and the goal.

    Faithful mode re-adds the finiteness markers ``|- ~~p`` for the live
    letters (canonicalization just turned the earlier copies into
    ``|- 0*I``).  Decision mode instead folds closed subformulas to
    constants and re-canonicalizes; finiteness stays in the domain log.
    """
    if ctx is None:
        ctx = _Ctx()
    occurring = judgement_letters(
        state.hypotheses + ((state.goal,) if state.goal else ()))
    log = state.log()
    missing = [name for name in occurring if name not in log]
    if missing:
        raise InvalidPhaseError(f"letters without a domain decision: {missing}")

    def canon(j: Judgement) -> Judgement:
        j = canonicalize_judgement(j, ctx.cf)
        if not mode.faithful:
            ants = tuple(fold_constants(a, ctx.fold, ctx.values) for a in j.antecedents)
            cons = fold_constants(j.consequent, ctx.fold, ctx.values)
            j = Judgement(ants, cons)
            j = canonicalize_judgement(j, ctx.cf)
        return j

    hyps = tuple(canon(j) for j in state.hypotheses)
    goal = canon(state.goal) if state.goal is not None else None
    if mode.faithful:
        hyps = hyps + tuple(
            Judgement((ZERO,), neg(neg(Prop(name)))) for name in _live_letters(state))
    return replace(state, hypotheses=hyps, goal=goal)


# --------------------------------------------------------------------------
# Phase 4: reduction to proper canonical form


def move_pcf(state: ReductionState, mode: Mode = Mode("pl", faithful=True),
             ctx: Optional[_Ctx] = None):
    """Resolve the non-PCF judgement shapes left by canonicalization.

    Hypotheses ``bot |- phi`` are dropped (true in every model).  A
    hypothesis ``theta |- bot`` with ``theta != bot`` is finitely
    unsatisfiable: decision mode prunes (returns :data:`PRUNED`),
    faithful mode substitutes the unsatisfiable polynomial-form filler
    ``0*I |- I``.  Faithful mode first canonicalizes any hypothesis the
    cf move re-added raw (the finiteness markers).
    """
    if ctx is None:
        ctx = _Ctx()
    out: List[Judgement] = []
    for j in state.hypotheses:
        if mode.faithful:
            j = canonicalize_judgement(j, ctx.cf)
        if len(j.antecedents) == 1 and isinstance(j.antecedents[0], Bot):
            continue  # trivially valid
        if isinstance(j.consequent, Bot):
            if not mode.faithful:
                return PRUNED
            out.append(Judgement((ZERO,), ONE))
            continue
        out.append(j)
    return replace(state, hypotheses=tuple(out))


# --------------------------------------------------------------------------
# Phase 5: -o elimination


def _mk_tensor(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return ZERO
    acc = parts[0]
    for f in parts[1:]:
        acc = Tensor(acc, f)
    return acc


def _mk_mult(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return ONE
    acc = parts[0]
    for f in parts[1:]:
        acc = Mult(acc, f)
    return acc


def _apply_mult(rho: Tuple[Formula, ...], f: Formula) -> Formula:
    return f if not rho else Mult(_mk_mult(rho), f)


@dataclass(frozen=True)
class _Occurrence:
    delta: Tuple[Formula, ...]  # additive cofactors, multipliers applied
    rho: Tuple[Formula, ...]    # multiplicative cofactors along the path
    lolli: Lollipop

    @property
    def rho_clean(self) -> bool:
        return all(count_lollipops(f) == 0 for f in self.rho)


def _occurrences(f: Formula) -> List[_Occurrence]:
    """Outermost ``-o`` occurrences with their side decompositions.

    Each occurrence sees the side as ``Delta_1 (+) ... (+) Delta_k (+)
    rho . lolli``; distributing the multiplicative context over tensors
    is value-preserving in every model, so each successor judgement set
    below is exactly equivalent to (or equi-satisfiable with) the
    original.
    """
    out: List[_Occurrence] = []

    def walk(node: Formula, mult_ctx: Tuple[Formula, ...],
             add_ctx: Tuple[Formula, ...]):
        if isinstance(node, Lollipop):
            out.append(_Occurrence(add_ctx, mult_ctx, node))
        elif isinstance(node, Tensor):
            walk(node.left, mult_ctx, add_ctx + (_apply_mult(mult_ctx, node.right),))
            walk(node.right, mult_ctx, add_ctx + (_apply_mult(mult_ctx, node.left),))
        elif isinstance(node, Mult):
            walk(node.left, mult_ctx + (node.right,), add_ctx)
            walk(node.right, mult_ctx + (node.left,), add_ctx)
        elif isinstance(node, Scalar):
            walk(node.body, mult_ctx + (const(node.coeff),), add_ctx)

    walk(f, (), ())
    return out


def _pick_occurrence(state: ReductionState):
    """Deterministic choice: first -o-bearing hypothesis, antecedent side
    first; occurrences with -o-free multiplicative cofactors are preferred
    (they keep the occurrence count strictly decreasing for the naive
    moves)."""
    for idx, j in enumerate(state.hypotheses):
        for side in ("ante", "cons"):
            f = j.antecedents[0] if side == "ante" else j.consequent
            occs = _occurrences(f)
            if occs:
                best = next((o for o in occs if o.rho_clean), occs[0])
                return idx, side, best
    return None


def _splice(state: ReductionState, idx: int, new_judgements: Sequence[Judgement],
            fresh: Optional[int] = None,
            new_log: Sequence[Tuple[str, DomainChoice]] = ()) -> ReductionState:
    hyps = state.hypotheses[:idx] + tuple(new_judgements) + state.hypotheses[idx + 1:]
    out = replace(state, hypotheses=hyps)
    if fresh is not None:
        out = replace(out, fresh=fresh)
    for name, choice in new_log:
        out = out.with_log(name, choice)
    return out


def _lolli_successors(state: ReductionState, efficient: bool
                      ) -> Tuple[ReductionState, ...]:
    found = _pick_occurrence(state)
    if found is None:
        raise NoLollipopError("no -o occurrence in any hypothesis")
    idx, side, occ = found
    j = state.hypotheses[idx]
    theta, gamma = occ.lolli.ante, occ.lolli.cons  # lolli = theta -o gamma
    delta = list(occ.delta)
    rho = occ.rho

    def tens(parts):
        return _mk_tensor([p for p in parts if p is not None])

    if side == "ante":
        psi = j.consequent
        # branch 1: the -o evaluates to 0 (theta >= gamma)
        b1 = _splice(state, idx, (
            Judgement((tens(delta),), psi),
            Judgement((theta,), gamma),
        ))
        if not efficient:
            # branch 2: gamma >= theta, move rho.theta across
            b2 = _splice(state, idx, (
                Judgement((tens(delta + [_apply_mult(rho, gamma)]),),
                          Tensor(psi, _apply_mult(rho, theta))),
                Judgement((gamma,), theta),
            ))
            return (b1, b2)
        if not rho:
            p = Prop(fresh_name(state.fresh))
            q = Prop(fresh_name(state.fresh + 1))
            b2 = _splice(state, idx, (
                Judgement((tens(delta + [p]),), Tensor(psi, q)),
                Judgement((gamma,), p),
                Judgement((p,), q),
                Judgement((q,), theta),
            ), fresh=state.fresh + 2,
                new_log=((p.name, DomainChoice.FINITE), (q.name, DomainChoice.FINITE)))
        else:
            p = Prop(fresh_name(state.fresh))
            q = Prop(fresh_name(state.fresh + 1))
            r = Prop(fresh_name(state.fresh + 2))
            b2 = _splice(state, idx, (
                Judgement((tens(delta + [Mult(p, q)]),), Tensor(Mult(p, r), psi)),
                Judgement((_mk_mult(rho),), p),
                Judgement((gamma,), q),
                Judgement((q,), r),
                Judgement((r,), theta),
            ), fresh=state.fresh + 3,
                new_log=((p.name, DomainChoice.FINITE), (q.name, DomainChoice.FINITE),
                         (r.name, DomainChoice.FINITE)))
        return (b1, b2)

    # consequent side
    phi = j.antecedents[0]
    if efficient:
        p = Prop(fresh_name(state.fresh))
        succ = _splice(state, idx, (
            Judgement((phi,), tens(delta + [_apply_mult(rho, p)])),
            Judgement((Tensor(p, theta),), gamma),
        ), fresh=state.fresh + 1,
            new_log=((p.name, DomainChoice.FINITE),))
        return (succ,)
    # branch 1: the -o evaluates to 0 (theta >= gamma)
    new1: List[Judgement] = [Judgement((theta,), gamma)]
    if delta:
        new1.insert(0, Judgement((phi,), tens(delta)))
    b1 = _splice(state, idx, tuple(new1))
    # branch 2: gamma >= theta
    b2 = _splice(state, idx, (
        Judgement((Tensor(phi, _apply_mult(rho, theta)),),
                  tens(delta + [_apply_mult(rho, gamma)])),
        Judgement((gamma,), theta),
    ))
    return (b1, b2)


def lolli_branches_complete(state: ReductionState) -> Tuple[ReductionState, ...]:
    """Successors by the duplicating move set (both numeric branches)."""
    return _lolli_successors(state, efficient=False)


def lolli_branches_efficient(state: ReductionState) -> Tuple[ReductionState, ...]:
    """Successors by the fresh-letter move set: left occurrences branch
    two ways, right occurrences are a single deterministic successor."""
    return _lolli_successors(state, efficient=True)


# --------------------------------------------------------------------------
# Exhaustive enumeration


def _state_lollis(state: ReductionState) -> int:
    memo: dict = {}
    n = sum(count_lollipops(j.antecedents[0], memo) + count_lollipops(j.consequent, memo)
            for j in state.hypotheses)
    return n


def _weighted_lollis(f: Formula, memo: dict) -> int:
    """Occurrences weighted 3^(nesting depth under other -o nodes); the
    naive moves strictly decrease the state sum whenever the eliminated
    occurrence has -o-free multiplicative cofactors."""
    key = id(f)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(f, Lollipop):
        n = 1 + 3 * (_weighted_lollis(f.ante, memo) + _weighted_lollis(f.cons, memo))
    elif isinstance(f, Scalar):
        n = _weighted_lollis(f.body, memo)
    elif isinstance(f, (Tensor, Mult)):
        n = _weighted_lollis(f.left, memo) + _weighted_lollis(f.right, memo)
    else:
        n = 0
    memo[key] = (f, n)
    return n


def _state_weighted(state: ReductionState) -> int:
    memo: dict = {}
    return sum(_weighted_lollis(j.antecedents[0], memo) + _weighted_lollis(j.consequent, memo)
               for j in state.hypotheses)


def _closed_sweep(state: ReductionState) -> object:
    """Drop hypotheses with letter-free sides that hold outright; prune
    when one fails (closed judgements have model-independent values)."""
    out: List[Judgement] = []
    changed = False
    for j in state.hypotheses:
        if judgement_letters((j,)):
            out.append(j)
            continue
        lhs = evaluate({}, j.antecedents[0]) if j.antecedents else EXT_ZERO
        if lhs >= evaluate({}, j.consequent):
            changed = True
            continue
        return PRUNED
    if not changed:
        return state
    return replace(state, hypotheses=tuple(out))


_ELIM_FUSE = 100000


def iter_normal_forms(problem: Problem, mode: Mode,
                      on_trace: Optional[Callable] = None) -> Iterator[NormalForm]:
    """Depth-first exhaustive expansion of all nondeterministic choices.

    Yields every leaf as a :class:`NormalForm`; pruned branches are
    skipped.  Leaf order is deterministic.  AL mode rejects inputs with
    multiplication.
    """
    ctx = _Ctx()
    state = problem_state(problem)
    if mode.logic == "al":
        formulas = [a for j in state.hypotheses for a in j.antecedents]
        formulas += [j.consequent for j in state.hypotheses]
        if state.goal is not None:
            formulas += list(state.goal.antecedents) + [state.goal.consequent]
        if any(has_mult(f) for f in formulas):
            raise ALModeViolationError("AL mode requires multiplication-free input")

    def trace(tag, before, after):
        if on_trace is not None:
            on_trace(tag, _state_digest(before), _state_digest(after))

    if state.goal is not None:
        before = state
        state = move_init(state)
        trace("init", before, state)

    letters = judgement_letters(
        state.hypotheses + ((state.goal,) if state.goal else ()))

    def domain_phase(st: ReductionState, remaining: Tuple[str, ...]
                     ) -> Iterator[ReductionState]:
        if not mode.faithful:
            swept = _closed_sweep(st)
            if swept is PRUNED:
                return
            st = swept
        if not remaining:
            yield st
            return
        name, rest = remaining[0], remaining[1:]
        if st.logged(name) is not None:  # decided as a faithful auxiliary
            yield from domain_phase(st, rest)
            return
        for branch in domain_branches(st, name, mode, ctx):
            trace(f"domain:{name}", st, branch)
            yield from domain_phase(branch, rest)

    def eliminate(st: ReductionState, depth: int) -> Iterator[ReductionState]:
        if depth > _ELIM_FUSE:
            raise ReductionError("elimination exceeded the move fuse")
        before_lollis = _state_lollis(st)
        if before_lollis == 0:
            yield st
            return
        if mode.moves == "efficient":
            succs = lolli_branches_efficient(st)
            rho_clean = True
        else:
            succs = lolli_branches_complete(st)
            picked = _pick_occurrence(st)
            rho_clean = picked is not None and picked[2].rho_clean
            before_weighted = _state_weighted(st)
        for succ in succs:
            for j in succ.hypotheses:  # form preservation
                assert classify(j.antecedents[0]) is not FormClass.NONE
                assert classify(j.consequent) is not FormClass.NONE
            if mode.moves == "efficient":
                assert _state_lollis(succ) < before_lollis, \
                    "efficient move did not reduce the -o count"
            elif rho_clean:
                assert _state_weighted(succ) < before_weighted, \
                    "naive move did not reduce the weighted -o measure"
            trace(f"lolli:{mode.moves}", st, succ)
            if not mode.faithful:
                swept = _closed_sweep(succ)
                if swept is PRUNED:
                    continue
                succ = swept
            yield from eliminate(succ, depth + 1)

    for decided in domain_phase(state, letters):
        after_cf = move_cf(decided, mode, ctx)
        trace("cf", decided, after_cf)
        after_pcf = move_pcf(after_cf, mode, ctx)
        if after_pcf is PRUNED:
            continue
        trace("pcf", after_cf, after_pcf)
        if not mode.faithful:
            swept = _closed_sweep(after_pcf)
            if swept is PRUNED:
                continue
            after_pcf = swept
        for leaf in eliminate(after_pcf, 0):
            for j in leaf.hypotheses:
                assert classify(j.antecedents[0]) in (
                    FormClass.POLYNOMIAL, FormClass.AFFINE), format_judgement(j)
                assert classify(j.consequent) in (
                    FormClass.POLYNOMIAL, FormClass.AFFINE), format_judgement(j)
            yield NormalForm(leaf.hypotheses, leaf.goal, leaf.log())


def enumerate_normal_forms(problem: Problem, mode: Mode,
                           on_trace: Optional[Callable] = None) -> List[NormalForm]:
    return list(iter_normal_forms(problem, mode, on_trace))
