"""Bounded search for finite structures satisfying a validated module.

The search assigns operation-table cells in a fixed order, backtracking on
conflict. Every axiom is grounded over the carriers up front; after each
assignment the affected ground constraints are re-evaluated, pruning or
forcing the remaining cells (unit propagation). Completeness comes from the
backtracking, so the propagation only has to be sound, never clever.

Partiality: a partial operation's cell may hold the UNDEF marker. An
equation instance with an undefined side holds vacuously, as does a boolean
axiom (or hypothesis) over an undefined application. A definedness
condition that is itself undefined yields an undefined entry.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

from .errors import BudgetExhaustedError, NoModelError
from .specast import (BOOLEAN, And, App, Axiom, BoolLit, Not, OpKind, OpSig,
                      Or, Term, Var)
from .validate import ValidatedModule

DEFAULT_CORE_COUNT = 4
DEFAULT_PARAM_COUNT = 2
DEFAULT_BUDGET = 2_000_000


class _Undef:
    __slots__ = ()

    def __repr__(self) -> str:
        return "UNDEF"


UNDEF = _Undef()

Cell = tuple[str, tuple[int, ...]]
Value = object  # int | bool | _Undef


@dataclass(frozen=True)
class Scope:
    counts: dict[str, int] = field(default_factory=dict)

    @staticmethod
    def default_for(vm: ValidatedModule, **overrides: int) -> "Scope":
        counts = {}
        for s in vm.module.sorts:
            if s.name == vm.core:
                counts[s.name] = DEFAULT_CORE_COUNT
            elif s.name in vm.params:
                counts[s.name] = DEFAULT_PARAM_COUNT
            else:
                counts[s.name] = DEFAULT_CORE_COUNT
        counts.update(overrides)
        return Scope(counts)

    def count(self, sort: str) -> int:
        return self.counts[sort]

    def validate(self, vm: ValidatedModule) -> None:
        for s in vm.module.sorts:
            if self.counts.get(s.name, 0) < 1:
                raise ValueError(f"scope for sort {s.name} must be at least 1")


@dataclass(frozen=True)
class Structure:
    """Finite carriers plus one (partial) result table per operation."""

    carriers: dict[str, int]
    tables: dict[str, dict[tuple[int, ...], Value]]

    def lookup(self, op: str, args: tuple[int, ...]) -> Value:
        """Result for the tuple, or UNDEF when the entry is absent."""
        return self.tables[op].get(args, UNDEF)

    def defined(self, op: str, args: tuple[int, ...]) -> bool:
        return args in self.tables[op]

    def elements(self, sort: str) -> range:
        return range(self.carriers[sort])


def arg_space(op: OpSig, carriers: dict[str, int]) -> itertools.product:
    return itertools.product(*(range(carriers[s]) for s in op.arg_sorts))


# ---------------------------------------------------------------------------
# Term evaluation over a partial assignment

_UNASSIGNED = object()

VAL, VUNDEF, UNKNOWN = 0, 1, 2


def _eval(t: Term, env: dict[str, int], cells: dict[Cell, Value]):
    """Evaluate under a partial assignment.

    Returns (VAL, value), (VUNDEF, None) or (UNKNOWN, (blocker, root))
    where blocker is an unassigned cell that stopped evaluation and root
    says whether it is this term's own application with all arguments
    known (the only case where the cell may be forced to a value).
    """
    if isinstance(t, Var):
        return VAL, env[t.name]
    if isinstance(t, BoolLit):
        return VAL, t.value
    if isinstance(t, Not):
        s, v = _eval(t.arg, env, cells)
        if s == UNKNOWN:
            return UNKNOWN, (v[0], False)
        return (VAL, not v) if s == VAL else (s, v)
    if isinstance(t, (And, Or)):
        ls, lv = _eval(t.left, env, cells)
        rs, rv = _eval(t.right, env, cells)
        if ls == VUNDEF or rs == VUNDEF:
            return VUNDEF, None
        if ls == UNKNOWN:
            return UNKNOWN, (lv[0], False)
        if rs == UNKNOWN:
            return UNKNOWN, (rv[0], False)
        return VAL, (lv and rv) if isinstance(t, And) else (lv or rv)
    assert isinstance(t, App)
    args = []
    for a in t.args:
        s, v = _eval(a, env, cells)
        if s == VUNDEF:
            return VUNDEF, None
        if s == UNKNOWN:
            return UNKNOWN, (v[0], False)
        args.append(v)
    cell = (t.op, tuple(args))
    v = cells.get(cell, _UNASSIGNED)
    if v is _UNASSIGNED:
        return UNKNOWN, (cell, True)
    if v is UNDEF:
        return VUNDEF, None
    return VAL, v


# ---------------------------------------------------------------------------
# Ground constraints

SAT, VIOLATED, PENDING = 0, 1, 2


class _Ground:
    """One ground axiom instance or definedness condition."""

    __slots__ = ("axiom", "env", "dom_op", "dom_args", "label")

    def __init__(self, axiom: Axiom | None, env: dict[str, int],
                 dom_op: OpSig | None = None,
                 dom_args: tuple[int, ...] = (), label: str = ""):
        self.axiom = axiom
        self.env = env
        self.dom_op = dom_op
        self.dom_args = dom_args
        self.label = label

    def check(self, search: "_Search"):
        """Returns (status, blocker_cell, prunings).

        prunings is a list of (cell, allowed_values_set); an allowed set
        never excludes a value the constraint might still tolerate.
        """
        if self.dom_op is not None:
            return self._check_definedness(search)
        return self._check_axiom(search)

    # definedness: table entry present <=> domain condition holds
    def _check_definedness(self, search: "_Search"):
        op = self.dom_op
        cell = (op.name, self.dom_args)
        env = dict(zip(op.domain.arg_vars, self.dom_args))
        cs, cv = _eval(op.domain.cond, env, search.assignment)
        cur = search.assignment.get(cell, _UNASSIGNED)
        if cs == VAL and cv is True:
            if cur is UNDEF:
                return VIOLATED, None, []
            if cur is _UNASSIGNED:
                return PENDING, cell, [(cell, None)]  # None = "strip UNDEF"
            return SAT, None, []
        if cs == VAL and cv is False or cs == VUNDEF:
            if cur is _UNASSIGNED:
                return PENDING, cell, [(cell, {UNDEF})]
            return (SAT, None, []) if cur is UNDEF else (VIOLATED, None, [])
        # condition unknown; nudge it when the entry is already decided
        prunes = []
        if cur is not _UNASSIGNED:
            prunes = _force_bool(op.domain.cond, env, search, cur is not UNDEF)
            if prunes is None:
                return VIOLATED, None, []
        return PENDING, cv[0], prunes

    def _check_axiom(self, search: "_Search"):
        ax = self.axiom
        env = self.env
        cells = search.assignment
        if ax.hypothesis is not None:
            hs, hv = _eval(ax.hypothesis, env, cells)
            if hs == VUNDEF:
                return SAT, None, []
            if hs == VAL and hv is False:
                return SAT, None, []
            if hs == UNKNOWN:
                prunes = []
                if self._body_definitely_false(search):
                    forced = _force_bool(ax.hypothesis, env, search, False)
                    prunes = [] if forced is None else forced
                return PENDING, hv[0], prunes
        if ax.rhs is None:
            bs, bv = _eval(ax.lhs, env, cells)
            if bs == VUNDEF or (bs == VAL and bv is True):
                return SAT, None, []
            if bs == VAL:
                return VIOLATED, None, []
            forced = _force_bool(ax.lhs, env, search, True)
            return PENDING, bv[0], (forced or [])
        ls, lv = _eval(ax.lhs, env, cells)
        rs, rv = _eval(ax.rhs, env, cells)
        if ls == VUNDEF or rs == VUNDEF:
            return SAT, None, []
        if ls == VAL and rs == VAL:
            return (SAT, None, []) if lv == rv else (VIOLATED, None, [])
        prunes = []
        if ls == VAL and rs == UNKNOWN and rv[1]:
            prunes = [(rv[0], _allowed(rv[0][0], lv, search))]
        elif rs == VAL and ls == UNKNOWN and lv[1]:
            prunes = [(lv[0], _allowed(lv[0][0], rv, search))]
        blocker = lv[0] if ls == UNKNOWN else rv[0]
        return PENDING, blocker, prunes

    def _body_definitely_false(self, search: "_Search") -> bool:
        ax = self.axiom
        if ax.rhs is None:
            bs, bv = _eval(ax.lhs, self.env, search.assignment)
            return bs == VAL and bv is False
        ls, lv = _eval(ax.lhs, self.env, search.assignment)
        rs, rv = _eval(ax.rhs, self.env, search.assignment)
        return ls == VAL and rs == VAL and lv != rv


def _allowed(op_name: str, value: Value, search: "_Search") -> set:
    if search.partial_ops.get(op_name):
        return {value, UNDEF}
    return {value}


def _force_bool(t: Term, env: dict[str, int], search: "_Search",
                want: bool):
    """Best-effort prunings making `t` evaluate to `want`.

    Returns a pruning list, or None when `t` is already known to contradict
    `want` outright.
    """
    if isinstance(t, BoolLit):
        return [] if t.value == want else None
    if isinstance(t, Not):
        return _force_bool(t.arg, env, search, not want)
    if isinstance(t, App):
        args = []
        for a in t.args:
            s, v = _eval(a, env, search.assignment)
            if s != VAL:
                return []
            args.append(v)
        cell = (t.op, tuple(args))
        cur = search.assignment.get(cell, _UNASSIGNED)
        if cur is _UNASSIGNED:
            return [(cell, _allowed(t.op, want, search))]
        return []
    if isinstance(t, (And, Or)):
        decompose = (isinstance(t, And) and want) or (isinstance(t, Or) and not want)
        if decompose:
            left = _force_bool(t.left, env, search, want)
            right = _force_bool(t.right, env, search, want)
            if left is None or right is None:
                return None
            return left + right
        # and-False / or-True: only forceable once one side is known
        ls, lv = _eval(t.left, env, search.assignment)
        rs, rv = _eval(t.right, env, search.assignment)
        anti = not want
        if ls == VAL and lv is anti:
            return _force_bool(t.right, env, search, want)
        if rs == VAL and rv is anti:
            return _force_bool(t.left, env, search, want)
        return []
    return []


# ---------------------------------------------------------------------------
# Search

class _Search:
    def __init__(self, vm: ValidatedModule, scope: Scope, seed: int,
                 budget: int):
        self.vm = vm
        self.budget = budget
        self.nodes = 0
        module = vm.module
        self.carriers = {s.name: scope.count(s.name) for s in module.sorts}
        self.partial_ops = {o.name: o.partial for o in module.ops}

        rng = random.Random(seed)
        ordered = self._cell_order(vm)
        self.cells: list[Cell] = []
        self.base_domains: dict[Cell, list[Value]] = {}
        first_creator = next((o for o in module.ops if o.kind is OpKind.CREATOR), None)
        for op in ordered:
            seeded = False
            for args in arg_space(op, self.carriers):
                cell = (op.name, args)
                if op is first_creator and not seeded:
                    dom: list[Value] = [0]  # symmetry: pin the first creator
                    seeded = True
                else:
                    if op.result_sort == BOOLEAN:
                        dom = [False, True]
                    else:
                        dom = list(range(self.carriers[op.result_sort]))
                    rng.shuffle(dom)
                    if op.partial:
                        dom.append(UNDEF)
                self.cells.append(cell)
                self.base_domains[cell] = dom

        self.assignment: dict[Cell, Value] = {}
        self.domains: dict[Cell, list[Value]] = {c: list(d) for c, d in
                                                 self.base_domains.items()}
        self.watchers: dict[Cell, list[_Ground]] = {}
        self.trail: list[tuple] = []
        self.constraints = self._ground_constraints(vm)

    @staticmethod
    def _cell_order(vm: ValidatedModule) -> list[OpSig]:
        param_ops = [o for o in vm.module.ops if o.owner in vm.params]
        rest = [o for o in vm.module.ops if o.owner not in vm.params]
        return param_ops + rest

    def _ground_constraints(self, vm: ValidatedModule) -> list[_Ground]:
        out = []
        for ax in vm.module.axioms:
            names = [v for v, _ in ax.universals]
            spaces = [range(self.carriers[s]) for _, s in ax.universals]
            for combo in itertools.product(*spaces):
                out.append(_Ground(ax, dict(zip(names, combo)), label=str(ax)))
        for op in vm.module.ops:
            if op.partial:
                for args in arg_space(op, self.carriers):
                    out.append(_Ground(None, {}, op, args,
                                       label=f"domain of {op.name}"))
        return out

    # -- trail ----------------------------------------------------------------

    def _assign(self, cell: Cell, value: Value) -> None:
        self.assignment[cell] = value
        self.trail.append(("assign", cell))

    def _prune(self, cell: Cell, allowed) -> bool:
        """Intersect a domain; returns False on wipeout."""
        dom = self.domains[cell]
        if allowed is None:  # strip UNDEF only
            new = [v for v in dom if v is not UNDEF]
        else:
            new = [v for v in dom if v in allowed]
        if len(new) == len(dom):
            return True
        self.trail.append(("domain", cell, dom))
        self.domains[cell] = new
        return bool(new)

    def _watch(self, cell: Cell, c: _Ground) -> None:
        self.watchers.setdefault(cell, []).append(c)
        self.trail.append(("watch_add", cell, c))

    def _unwatch(self, cell: Cell, c: _Ground) -> None:
        self.watchers[cell].remove(c)
        self.trail.append(("watch_del", cell, c))

    def _mark(self) -> int:
        return len(self.trail)

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            entry = self.trail.pop()
            tag = entry[0]
            if tag == "assign":
                del self.assignment[entry[1]]
            elif tag == "domain":
                self.domains[entry[1]] = entry[2]
            elif tag == "watch_add":
                self.watchers[entry[1]].remove(entry[2])
            else:
                self.watchers.setdefault(entry[1], []).append(entry[2])

    # -- propagation ------------------------------------------------------------

    def _settle(self, constraint: _Ground, queue: list[Cell]) -> bool:
        while True:
            status, blocker, prunes = constraint.check(self)
            if status == VIOLATED:
                return False
            for cell, allowed in prunes:
                if cell in self.assignment:
                    continue
                if not self._prune(cell, allowed):
                    return False
                dom = self.domains[cell]
                if len(dom) == 1:
                    self._assign(cell, dom[0])
                    queue.append(cell)
            if status == SAT:
                return True
            watch_on = blocker
            if watch_on is None:
                watch_on = next((c for c in self.cells
                                 if c not in self.assignment), None)
                if watch_on is None:
                    return True  # fully assigned; final check passes elsewhere
            if watch_on not in self.assignment:
                self._watch(watch_on, constraint)
                return True
            # our own pruning assigned the blocker; evaluate again

    def _propagate(self, changed: list[Cell]) -> bool:
        queue = list(changed)
        while queue:
            cell = queue.pop()
            for constraint in list(self.watchers.get(cell, ())):
                self._unwatch(cell, constraint)
                if not self._settle(constraint, queue):
                    return False
        return True

    # -- driver -----------------------------------------------------------------

    def run(self) -> Structure:
        queue: list[Cell] = []
        ok = True
        for constraint in self.constraints:
            if not self._settle(constraint, queue):
                ok = False
                break
        if ok and not self._propagate(queue):
            ok = False
        if not ok:
            raise NoModelError("axioms are unsatisfiable at this scope")
        if not self._dfs(0):
            raise NoModelError("search space exhausted without a model")
        return self._extract()

    def _dfs(self, start: int) -> bool:
        idx = start
        while idx < len(self.cells) and self.cells[idx] in self.assignment:
            idx += 1
        if idx == len(self.cells):
            return True
        cell = self.cells[idx]
        for value in list(self.domains[cell]):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExhaustedError(
                    f"node budget {self.budget} exhausted")
            mark = self._mark()
            self._assign(cell, value)
            if self._propagate([cell]) and self._dfs(idx + 1):
                return True
            self._undo(mark)
        return False

    def _extract(self) -> Structure:
        tables: dict[str, dict[tuple[int, ...], Value]] = {}
        for op in self.vm.module.ops:
            table = {}
            for args in arg_space(op, self.carriers):
                v = self.assignment[(op.name, args)]
                if v is not UNDEF:
                    table[args] = v
            tables[op.name] = table
        return Structure(dict(self.carriers), tables)


def find_structure(vm: ValidatedModule, scope: Scope, seed: int = 0,
                   budget: int = DEFAULT_BUDGET) -> Structure:
    """Search for a structure satisfying every axiom at the given scope.

    Deterministic for a fixed (module, scope, seed). Raises NoModelError when
    the whole space is exhausted and BudgetExhaustedError when the node
    budget runs out first.
    """
    scope.validate(vm)
    return _Search(vm, scope, seed, budget).run()


# ---------------------------------------------------------------------------
# Serialization

def structure_to_dict(st: Structure) -> dict:
    ops = {}
    for name, table in st.tables.items():
        rows = []
        for args in sorted(table):
            rows.append({"args": list(args), "result": table[args]})
        ops[name] = rows
    return {"carriers": dict(sorted(st.carriers.items())), "ops": ops}


def structure_to_json(st: Structure) -> str:
    return json.dumps(structure_to_dict(st), sort_keys=True, indent=2)


def structure_from_dict(data: dict) -> Structure:
    tables = {}
    for name, rows in data["ops"].items():
        tables[name] = {tuple(r["args"]): r["result"] for r in rows}
    return Structure(dict(data["carriers"]), tables)
