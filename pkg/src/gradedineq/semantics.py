"""Finite algebras with fuzzy order: evaluation, models, enumeration, factors.

An algebra carries a finite universe of named elements, one (possibly
partial) operation table per signature symbol, and an L-relation `order`
subject to three conditions:

  (1) order(a,b) = order(b,a) = 1  iff  a = b
  (2) order(a,b) (x) order(b,c) <= order(a,c)
  (3) order(a1,b1) (x) ... (x) order(ak,bk) <= order(f(a..), f(b..))

Bounded model enumeration walks every algebra up to a universe size under a
candidate budget; it never truncates silently.  The infimum of truth degrees
over the enumerated family is an upper bound for the entailment degree; the
syntactic engine supplies the matching lower bound.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

from .errors import (BudgetExceededError, EvaluationOutOfBoundsError,
                     LatticeMismatchError, MalformedModelError,
                     PreorderViolationError, SemanticError)
from .lattice import Degree, Lattice, LRelation, inf_degrees
from .syntax import (GradedTheory, Inequality, Signature, Term, TermUniverse,
                     ineq_vars, render_term)

DEFAULT_BUDGET = 10_000_000


def _tnorm_num(lattice: Lattice) -> Callable[[int, int], int]:
    if lattice.kind == "lukasiewicz":
        n = lattice.n
        return lambda a, b: max(0, a + b - n)
    return min


def order_universe_id(universe: tuple[str, ...]) -> str:
    return "alg:" + ",".join(universe)


@dataclass
class FuzzyOrderedAlgebra:
    """Finite universe, per-symbol operation tables, fuzzy order relation."""

    lattice: Lattice
    signature: Signature
    universe: tuple[str, ...]
    ops: dict[str, dict[tuple[str, ...], str]]
    order: LRelation

    def op_value(self, symbol: str, args: tuple[str, ...]) -> str | None:
        table = self.ops.get(symbol)
        if table is None:
            return None
        return table.get(args)

    def order_degree(self, a: str, b: str) -> Degree:
        return self.order.degree_between(a, b)

    def validate(self) -> None:
        """Raise MalformedModelError on tables inconsistent with the signature."""
        elems = set(self.universe)
        if len(elems) != len(self.universe):
            raise MalformedModelError("duplicate universe elements")
        for symbol, table in self.ops.items():
            arity = self.signature.arity_of(symbol)
            if arity is None:
                raise MalformedModelError(f"table for unknown symbol {symbol!r}")
            for args, value in table.items():
                if len(args) != arity:
                    raise MalformedModelError(
                        f"{symbol!r} table keyed by {len(args)} arguments, arity {arity}")
                if any(a not in elems for a in args) or value not in elems:
                    raise MalformedModelError(
                        f"{symbol!r} table mentions elements outside the universe")
        for (a, b), _ in self.order.items():
            if a not in elems or b not in elems:
                raise MalformedModelError("order entry outside the universe")


@dataclass
class ConditionCheck:
    ok: bool
    witness: tuple | None = None


@dataclass
class AlgebraReport:
    reflexive_antisymmetric: ConditionCheck
    transitive: ConditionCheck
    compatible: ConditionCheck

    @property
    def passed(self) -> bool:
        return (self.reflexive_antisymmetric.ok and self.transitive.ok
                and self.compatible.ok)


def check_fuzzy_ordered_algebra(algebra: FuzzyOrderedAlgebra) -> AlgebraReport:
    """Verify conditions (1)-(3); each verdict carries a counterexample."""
    algebra.validate()
    lat = algebra.lattice
    one = lat.n
    tnorm = _tnorm_num(lat)
    deg = {}
    for a in algebra.universe:
        for b in algebra.universe:
            deg[a, b] = algebra.order.degree_between(a, b).num

    cond1 = ConditionCheck(True)
    for a in algebra.universe:
        if deg[a, a] != one:
            cond1 = ConditionCheck(False, (a, a))
            break
    if cond1.ok:
        for a, b in itertools.combinations(algebra.universe, 2):
            if deg[a, b] == one and deg[b, a] == one:
                cond1 = ConditionCheck(False, (a, b))
                break

    cond2 = ConditionCheck(True)
    for a, b, c in itertools.product(algebra.universe, repeat=3):
        if tnorm(deg[a, b], deg[b, c]) > deg[a, c]:
            cond2 = ConditionCheck(False, (a, b, c))
            break

    cond3 = ConditionCheck(True)
    for symbol, table in sorted(algebra.ops.items()):
        for (args_a, val_a), (args_b, val_b) in itertools.product(table.items(),
                                                                  repeat=2):
            prod = one
            for x, y in zip(args_a, args_b):
                prod = tnorm(prod, deg[x, y])
                if prod == 0:
                    break
            if prod > deg[val_a, val_b]:
                cond3 = ConditionCheck(False, (symbol, args_a, args_b))
                break
        if not cond3.ok:
            break
    return AlgebraReport(cond1, cond2, cond3)


# ---------------------------------------------------------------------------
# Term evaluation and truth degrees

def eval_term(algebra: FuzzyOrderedAlgebra, valuation: Mapping[str, str],
              t: Term) -> str:
    if t.is_var:
        try:
            return valuation[t.head]
        except KeyError:
            raise SemanticError(f"valuation missing variable {t.head!r}") from None
    args = tuple(eval_term(algebra, valuation, a) for a in t.args)
    value = algebra.op_value(t.head, args)
    if value is None:
        raise EvaluationOutOfBoundsError(
            f"operation {t.head!r} undefined on {args}")
    return value


def truth_degree_at(algebra: FuzzyOrderedAlgebra, valuation: Mapping[str, str],
                    ineq: Inequality) -> Degree:
    a = eval_term(algebra, valuation, ineq.lhs)
    b = eval_term(algebra, valuation, ineq.rhs)
    return algebra.order.degree_between(a, b)


def truth_degree(algebra: FuzzyOrderedAlgebra, ineq: Inequality) -> Degree:
    """Infimum over all valuations of the variables occurring in the query."""
    names = sorted(ineq_vars(ineq))
    if not names:
        return truth_degree_at(algebra, {}, ineq)
    degrees = (truth_degree_at(algebra, dict(zip(names, values)), ineq)
               for values in itertools.product(algebra.universe, repeat=len(names)))
    return inf_degrees(algebra.lattice, degrees)


def model_preorder(algebra: FuzzyOrderedAlgebra,
                   universe: TermUniverse) -> LRelation:
    """The algebra's degree table over the bounded term universe."""
    rel = LRelation(algebra.lattice, universe.fingerprint())
    for t in universe.terms:
        for t2 in universe.terms:
            rel.set_pair(t, t2, truth_degree(algebra, Inequality(t, t2)))
    return rel


def is_model(algebra: FuzzyOrderedAlgebra, assumptions: GradedTheory) -> bool:
    if assumptions.lattice != algebra.lattice:
        raise LatticeMismatchError("theory and algebra use different lattices")
    return all(deg.num <= truth_degree(algebra, ineq).num
               for ineq, deg in assumptions.items())


# ---------------------------------------------------------------------------
# Compatible preorder checks

@dataclass
class PreorderReport:
    contains_base: ConditionCheck
    transitive: ConditionCheck
    compatible: ConditionCheck

    @property
    def passed(self) -> bool:
        return (self.contains_base.ok and self.transitive.ok
                and self.compatible.ok)

    def raise_on_failure(self) -> None:
        if not self.contains_base.ok:
            raise PreorderViolationError("containment of the base order",
                                         self.contains_base.witness)
        if not self.transitive.ok:
            raise PreorderViolationError("transitivity", self.transitive.witness)
        if not self.compatible.ok:
            raise PreorderViolationError("compatibility", self.compatible.witness)


def check_preorder_on_algebra(q: LRelation,
                              algebra: FuzzyOrderedAlgebra) -> PreorderReport:
    """Conditions for a compatible preorder on an algebra: contains the
    order, transitive, compatible with every defined table entry."""
    lat = algebra.lattice
    tnorm = _tnorm_num(lat)
    qd = {(a, b): q.degree_between(a, b).num
          for a in algebra.universe for b in algebra.universe}

    contains = ConditionCheck(True)
    for a in algebra.universe:
        for b in algebra.universe:
            if algebra.order.degree_between(a, b).num > qd[a, b]:
                contains = ConditionCheck(False, (a, b))
                break
        if not contains.ok:
            break

    transitive = ConditionCheck(True)
    for a, b, c in itertools.product(algebra.universe, repeat=3):
        if tnorm(qd[a, b], qd[b, c]) > qd[a, c]:
            transitive = ConditionCheck(False, (a, b, c))
            break

    compatible = ConditionCheck(True)
    for symbol, table in sorted(algebra.ops.items()):
        for (args_a, val_a), (args_b, val_b) in itertools.product(table.items(),
                                                                  repeat=2):
            prod = lat.n
            for x, y in zip(args_a, args_b):
                prod = tnorm(prod, qd[x, y])
                if prod == 0:
                    break
            if prod > qd[val_a, val_b]:
                compatible = ConditionCheck(False, (symbol, args_a, args_b))
                break
        if not compatible.ok:
            break
    return PreorderReport(contains, transitive, compatible)


def check_preorder_on_universe(q: LRelation, universe: TermUniverse,
                               lattice: Lattice) -> PreorderReport:
    """Same conditions over a term universe, whose own order is the identity;
    compatibility ranges over applications that stay inside the universe."""
    tnorm = _tnorm_num(lattice)
    one = lattice.n

    contains = ConditionCheck(True)
    for t in universe.terms:
        if q.degree_between(t, t).num != one:
            contains = ConditionCheck(False, (t, t))
            break

    transitive = ConditionCheck(True)
    nonzero = [(a, b, d.num) for (a, b), d in q.items()]
    for (a, b, d1) in nonzero:
        for (b2, c, d2) in nonzero:
            if b2 != b:
                continue
            if tnorm(d1, d2) > q.degree_between(a, c).num:
                transitive = ConditionCheck(False, (a, b, c))
                break
        if not transitive.ok:
            break

    compatible = ConditionCheck(True)
    apps: dict[str, list[Term]] = {}
    for t in universe.terms:
        if not t.is_var and t.args:
            apps.setdefault(t.head, []).append(t)
    for symbol in sorted(apps):
        for s, s2 in itertools.product(apps[symbol], repeat=2):
            prod = one
            for x, y in zip(s.args, s2.args):
                prod = tnorm(prod, q.degree_between(x, y).num)
                if prod == 0:
                    break
            if prod > q.degree_between(s, s2).num:
                compatible = ConditionCheck(False, (symbol, s, s2))
                break
        if not compatible.ok:
            break
    return PreorderReport(contains, transitive, compatible)


# ---------------------------------------------------------------------------
# Homomorphisms and factor algebras

@dataclass
class HomReport:
    ok: bool
    witness: tuple | None = None


def check_homomorphism(h: Mapping[str, str], source: FuzzyOrderedAlgebra,
                       target: FuzzyOrderedAlgebra) -> HomReport:
    """h commutes with all operations and never decreases order degrees."""
    for a in source.universe:
        if a not in h or h[a] not in target.universe:
            return HomReport(False, ("total", a))
    for symbol, table in sorted(source.ops.items()):
        for args, value in table.items():
            mapped = tuple(h[a] for a in args)
            target_value = target.op_value(symbol, mapped)
            if target_value is None or target_value != h[value]:
                return HomReport(False, ("operation", symbol, args))
    for a in source.universe:
        for b in source.universe:
            if (source.order.degree_between(a, b).num
                    > target.order.degree_between(h[a], h[b]).num):
                return HomReport(False, ("order", a, b))
    return HomReport(True)


def preorder_from_hom(h: Mapping[str, str], source: FuzzyOrderedAlgebra,
                      target: FuzzyOrderedAlgebra) -> LRelation:
    """The preorder pulled back along a surjective homomorphism."""
    report = check_homomorphism(h, source, target)
    if not report.ok:
        raise SemanticError(f"not a homomorphism: {report.witness}")
    if set(h[a] for a in source.universe) != set(target.universe):
        raise SemanticError("homomorphism is not surjective")
    q = LRelation(source.lattice, order_universe_id(source.universe))
    for a in source.universe:
        for b in source.universe:
            q.set_pair(a, b, target.order.degree_between(h[a], h[b]))
    return q


@dataclass
class FactorResult:
    algebra: FuzzyOrderedAlgebra
    natural_hom: dict
    classes: list[list]
    partial: bool
    undefined_entries: int


def _factor_classes(carrier: list, degree_between: Callable,
                    one: int) -> tuple[list[list], dict]:
    classes: list[list] = []
    assignment: dict = {}
    for a in carrier:
        if a in assignment:
            continue
        members = [b for b in carrier
                   if degree_between(a, b) == one and degree_between(b, a) == one]
        classes.append(members)
        for b in members:
            assignment[b] = len(classes) - 1
    return classes, assignment


def factor_algebra(carrier: FuzzyOrderedAlgebra | TermUniverse,
                   q: LRelation) -> FactorResult:
    """Quotient by a compatible preorder, merging mutually-1 related elements.

    For a term-universe carrier the operation tables are partial: an entry is
    defined only when the syntactic application of representatives stays
    inside the universe.
    """
    if isinstance(carrier, FuzzyOrderedAlgebra):
        lattice = carrier.lattice
        check_preorder_on_algebra(q, carrier).raise_on_failure()

        elems = list(carrier.universe)
        one = lattice.n
        deg = lambda a, b: q.degree_between(a, b).num
        classes, assignment = _factor_classes(elems, deg, one)
        reps = [cls[0] for cls in classes]
        ids = [f"[{rep}]" for rep in reps]

        ops: dict[str, dict[tuple[str, ...], str]] = {}
        undefined = 0
        for symbol, arity in carrier.signature.symbols:
            table: dict[tuple[str, ...], str] = {}
            for arg_classes in itertools.product(range(len(classes)), repeat=arity):
                rep_args = tuple(reps[i] for i in arg_classes)
                value = carrier.op_value(symbol, rep_args)
                if value is None:
                    undefined += 1
                    continue
                table[tuple(ids[i] for i in arg_classes)] = ids[assignment[value]]
            ops[symbol] = table

        order = LRelation(lattice, order_universe_id(tuple(ids)))
        for i, a in enumerate(reps):
            for j, b in enumerate(reps):
                order.set_pair(ids[i], ids[j], q.degree_between(a, b))
        algebra = FuzzyOrderedAlgebra(lattice, carrier.signature, tuple(ids),
                                      ops, order)
        hom = {a: ids[assignment[a]] for a in elems}
        return FactorResult(algebra, hom, classes, undefined > 0, undefined)

    # Term-universe carrier: the absolutely free algebra restricted to U.
    universe: TermUniverse = carrier
    lattice = q.lattice
    check_preorder_on_universe(q, universe, lattice).raise_on_failure()

    one = lattice.n
    terms = list(universe.terms)
    deg = lambda a, b: q.degree_between(a, b).num
    classes, assignment = _factor_classes(terms, deg, one)
    reps = [cls[0] for cls in classes]
    ids = [f"[{render_term(rep)}]" for rep in reps]

    ops = {}
    undefined = 0
    for symbol, arity in universe.signature.symbols:
        table = {}
        for arg_classes in itertools.product(range(len(classes)), repeat=arity):
            applied = Term(symbol, tuple(reps[i] for i in arg_classes))
            if applied in universe:
                table[tuple(ids[i] for i in arg_classes)] = ids[assignment[applied]]
            else:
                undefined += 1
        ops[symbol] = table

    order = LRelation(lattice, order_universe_id(tuple(ids)))
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            order.set_pair(ids[i], ids[j], q.degree_between(a, b))
    algebra = FuzzyOrderedAlgebra(lattice, universe.signature, tuple(ids), ops,
                                  order)
    hom = {t: ids[assignment[t]] for t in terms}
    return FactorResult(algebra, hom, classes, undefined > 0, undefined)


# ---------------------------------------------------------------------------
# Bounded model enumeration

def _element_names(size: int) -> tuple[str, ...]:
    letters = string.ascii_lowercase
    if size <= len(letters):
        return tuple(letters[:size])
    return tuple(f"e{i}" for i in range(size))


_ORDER_CACHE: dict[tuple[str, int, int], tuple[tuple[int, ...], ...]] = {}


def _valid_orders(lattice: Lattice, size: int) -> tuple[tuple[int, ...], ...]:
    """All flat order tables over `size` elements passing conditions (1)-(2)."""
    key = (lattice.kind, lattice.n, size)
    cached = _ORDER_CACHE.get(key)
    if cached is not None:
        return cached
    n = lattice.n
    tnorm = _tnorm_num(lattice)
    cells = [(i, j) for i in range(size) for j in range(size) if i != j]
    triples = [(a, b, c) for a in range(size) for b in range(size)
               for c in range(size) if a != b or b != c]
    out: list[tuple[int, ...]] = []
    for combo in itertools.product(range(n + 1), repeat=len(cells)):
        tab = [n] * (size * size)
        for (i, j), v in zip(cells, combo):
            tab[i * size + j] = v
        ok = True
        for i in range(size):
            for j in range(i + 1, size):
                if tab[i * size + j] == n and tab[j * size + i] == n:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for a, b, c in triples:
                if tnorm(tab[a * size + b], tab[b * size + c]) > tab[a * size + c]:
                    ok = False
                    break
        if ok:
            out.append(tuple(tab))
    result = tuple(out)
    _ORDER_CACHE[key] = result
    return result


def _op_table_space(signature: Signature, size: int) -> int:
    total = 1
    for _, arity in signature.symbols:
        total *= size ** (size ** arity)
    return total


def _eval_idx(t: Term, valuation: dict[str, int],
              tables: dict[str, tuple[int, ...]], size: int) -> int:
    if t.is_var:
        return valuation[t.head]
    idx = 0
    for a in t.args:
        idx = idx * size + _eval_idx(a, valuation, tables, size)
    return tables[t.head][idx]


def _truth_num(ineq: Inequality, order_tab: tuple[int, ...],
               tables: dict[str, tuple[int, ...]], size: int,
               names: list[str]) -> int:
    best = None
    if not names:
        a = _eval_idx(ineq.lhs, {}, tables, size)
        b = _eval_idx(ineq.rhs, {}, tables, size)
        return order_tab[a * size + b]
    for values in itertools.product(range(size), repeat=len(names)):
        valuation = dict(zip(names, values))
        a = _eval_idx(ineq.lhs, valuation, tables, size)
        b = _eval_idx(ineq.rhs, valuation, tables, size)
        cur = order_tab[a * size + b]
        if best is None or cur < best:
            best = cur
            if best == 0:
                break
    return best


def _build_algebra(lattice: Lattice, signature: Signature, size: int,
                   order_tab: tuple[int, ...],
                   tables: dict[str, tuple[int, ...]]) -> FuzzyOrderedAlgebra:
    names = _element_names(size)
    ops: dict[str, dict[tuple[str, ...], str]] = {}
    for symbol, arity in signature.symbols:
        table: dict[tuple[str, ...], str] = {}
        for flat, args in enumerate(itertools.product(range(size), repeat=arity)):
            table[tuple(names[i] for i in args)] = names[tables[symbol][flat]]
        ops[symbol] = table
    order = LRelation(lattice, order_universe_id(names))
    for i in range(size):
        for j in range(size):
            order.set_pair(names[i], names[j], lattice.degree(order_tab[i * size + j]))
    return FuzzyOrderedAlgebra(lattice, signature, names, ops, order)


def enumerate_models(signature: Signature, lattice: Lattice, max_size: int,
                     assumptions: GradedTheory | None = None,
                     budget: int = DEFAULT_BUDGET) -> Iterator[FuzzyOrderedAlgebra]:
    """Yield every fuzzy-ordered algebra of universe size <= max_size that
    models the assumptions, once per fixed element naming.

    The candidate space counted against the budget for size s is
    |L|^(s*s-s) order tables plus (valid orders) * (operation tables); the
    whole size block is charged before it is scanned.
    """
    if max_size < 1:
        raise SemanticError("max_size must be >= 1")
    if assumptions is not None and assumptions.lattice != lattice:
        raise LatticeMismatchError("assumptions use a different lattice")
    tnorm = _tnorm_num(lattice)
    ineqs = []
    if assumptions is not None:
        ineqs = [(ineq, deg.num, sorted(ineq_vars(ineq)))
                 for ineq, deg in assumptions.items()]

    seen = 0
    for size in range(1, max_size + 1):
        order_space = (lattice.n + 1) ** (size * size - size)
        if seen + order_space > budget:
            raise BudgetExceededError(
                f"order enumeration for size {size} needs {order_space} candidates",
                seen)
        seen += order_space
        orders = _valid_orders(lattice, size)
        block = len(orders) * _op_table_space(signature, size)
        if seen + block > budget:
            raise BudgetExceededError(
                f"size {size} needs {block} structure candidates", seen)
        seen += block

        per_symbol = [(symbol, arity, size ** arity)
                      for symbol, arity in signature.symbols]
        symbol_tables = [
            list(itertools.product(range(size), repeat=slots))
            for _, _, slots in per_symbol]
        arg_tuples = {arity: list(itertools.product(range(size), repeat=arity))
                      for _, arity, _ in per_symbol}
        for order_tab in orders:
            for assignment in itertools.product(*symbol_tables):
                tables = {symbol: tab
                          for (symbol, _, _), tab in zip(per_symbol, assignment)}
                ok = True
                for symbol, arity, _ in per_symbol:
                    if arity == 0 or not ok:
                        continue
                    tab = tables[symbol]
                    tuples = arg_tuples[arity]
                    for ia, args_a in enumerate(tuples):
                        for ib, args_b in enumerate(tuples):
                            prod = lattice.n
                            for x, y in zip(args_a, args_b):
                                prod = tnorm(prod, order_tab[x * size + y])
                                if prod == 0:
                                    break
                            if prod > order_tab[tab[ia] * size + tab[ib]]:
                                ok = False
                                break
                        if not ok:
                            break
                if not ok:
                    continue
                model_ok = True
                for ineq, wanted, names in ineqs:
                    if wanted > _truth_num(ineq, order_tab, tables, size, names):
                        model_ok = False
                        break
                if model_ok:
                    yield _build_algebra(lattice, signature, size, order_tab,
                                         tables)


@dataclass
class SemanticBound:
    """Infimum of truth degrees over the enumerated model family."""

    degree: Degree
    model_count: int
    no_models: bool
    stopped_early: bool = False


def semantic_degree_bounded(assumptions: GradedTheory, signature: Signature,
                            ineq: Inequality, max_size: int,
                            budget: int = DEFAULT_BUDGET,
                            stop_at: Degree | None = None) -> SemanticBound:
    """Upper bound for the entailment degree; degree 1 (flagged) if the bound
    admits no model at all.

    `stop_at` may carry a known sound lower bound: since every model's truth
    degree is at least the true entailment degree, the running infimum can
    never drop below it, so scanning may stop once it is reached.
    """
    lattice = assumptions.lattice
    floor = 0 if stop_at is None else stop_at.num
    best = lattice.n
    count = 0
    stopped = False
    for algebra in enumerate_models(signature, lattice, max_size, assumptions,
                                    budget):
        count += 1
        value = truth_degree(algebra, ineq).num
        if value < best:
            best = value
            if best <= floor:
                stopped = True
                break
    return SemanticBound(lattice.degree(best), count, count == 0, stopped)


def semantic_closure_bounded(assumptions: GradedTheory, signature: Signature,
                             universe: TermUniverse, max_size: int,
                             budget: int = DEFAULT_BUDGET
                             ) -> tuple[LRelation, int, bool]:
    """Pointwise intersection of model preorders over the enumerated models.

    Returns (relation, model count, no-models flag); with no models every
    entry is 1 by the empty-infimum convention.
    """
    lattice = assumptions.lattice
    table: dict[tuple[Term, Term], int] = {}
    for a in universe.terms:
        for b in universe.terms:
            table[a, b] = lattice.n
    count = 0
    for algebra in enumerate_models(signature, lattice, max_size, assumptions,
                                    budget):
        count += 1
        rel = model_preorder(algebra, universe)
        for pair in table:
            value = rel.degree_of(pair).num
            if value < table[pair]:
                table[pair] = value
    out = LRelation(lattice, universe.fingerprint())
    for (a, b), value in table.items():
        out.set_pair(a, b, lattice.degree(value))
    return out, count, count == 0


# ---------------------------------------------------------------------------
# Model description files

def parse_lattice_text(text: str) -> Lattice:
    parts = text.split()
    if parts == ["boolean"]:
        return Lattice("boolean")
    if len(parts) == 2 and parts[0] in ("lukasiewicz", "goedel"):
        try:
            return Lattice(parts[0], int(parts[1]))
        except ValueError:
            pass
    raise MalformedModelError(f"bad lattice declaration {text!r}")


def _flatten_op_table(symbol: str, node, prefix: tuple[str, ...],
                      out: dict[tuple[str, ...], str]) -> int:
    if isinstance(node, str):
        out[prefix] = node
        return len(prefix)
    if isinstance(node, dict):
        depth = None
        for key, sub in node.items():
            d = _flatten_op_table(symbol, sub, prefix + (key,), out)
            if depth is None:
                depth = d
            elif depth != d:
                raise MalformedModelError(f"ragged table for {symbol!r}")
        return depth if depth is not None else len(prefix) + 1
    raise MalformedModelError(f"bad table node for {symbol!r}: {node!r}")


def load_model(data: dict) -> FuzzyOrderedAlgebra:
    """Build an algebra from its JSON description; unlisted order pairs are 0."""
    if not isinstance(data, dict):
        raise MalformedModelError("model file must be a JSON object")
    for key in ("lattice", "universe", "ops", "order"):
        if key not in data:
            raise MalformedModelError(f"model file missing {key!r}")
    lattice = parse_lattice_text(data["lattice"])
    universe = tuple(data["universe"])
    ops: dict[str, dict[tuple[str, ...], str]] = {}
    arities: dict[str, int] = {}
    declared = data.get("signature")
    for symbol, node in data["ops"].items():
        table: dict[tuple[str, ...], str] = {}
        if isinstance(node, str):
            table[()] = node
            arity = 0
        else:
            arity = _flatten_op_table(symbol, node, (), table)
            if table:
                arity = len(next(iter(table)))
            elif declared and symbol in declared:
                arity = declared[symbol]
            else:
                raise MalformedModelError(
                    f"cannot infer arity of {symbol!r} from an empty table")
        if declared and symbol in declared and declared[symbol] != arity:
            raise MalformedModelError(
                f"{symbol!r} declared arity {declared[symbol]}, table arity {arity}")
        ops[symbol] = table
        arities[symbol] = arity
    if declared:
        for symbol, arity in declared.items():
            arities.setdefault(symbol, arity)
            ops.setdefault(symbol, {})
    signature = Signature(tuple(sorted(arities.items())))
    order = LRelation(lattice, order_universe_id(universe))
    for entry in data["order"]:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 3):
            raise MalformedModelError(f"bad order entry {entry!r}")
        a, b, text = entry
        order.set_pair(a, b, lattice.parse_degree(text))
    algebra = FuzzyOrderedAlgebra(lattice, signature, universe, ops, order)
    algebra.validate()
    return algebra


def dump_model(algebra: FuzzyOrderedAlgebra) -> dict:
    ops_node: dict = {}
    for symbol, arity in algebra.signature.symbols:
        table = algebra.ops.get(symbol, {})
        if arity == 0:
            if () in table:
                ops_node[symbol] = table[()]
            else:
                ops_node[symbol] = {}
            continue
        node: dict = {}
        for args, value in sorted(table.items()):
            cursor = node
            for a in args[:-1]:
                cursor = cursor.setdefault(a, {})
            cursor[args[-1]] = value
        ops_node[symbol] = node
    order_entries = [[a, b, d.render()]
                     for (a, b), d in sorted(algebra.order.items())]
    return {
        "lattice": algebra.lattice.describe(),
        "universe": list(algebra.universe),
        "signature": {s: a for s, a in algebra.signature.symbols},
        "ops": ops_node,
        "order": order_entries,
    }
