"""Terms, signatures, inequalities, substitutions, and the theory DSL.

A theory file looks like::

    lattice lukasiewicz 4
    signature { f:2, g:1, c:0 }
    variables { x, y }
    assume f(x,c) <= g(x) @ 3/4
    assume c <= g(c) @ 1

`#` starts a comment; whitespace and newlines are insignificant between
statements.  Degrees are written `k/n` (denominator must match the declared
lattice exactly) or `0`/`1`.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (ArityError, ParseError, SemanticError,
                     UnknownSymbolError)
from .lattice import Degree, Lattice, LSet


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Term:
    """A variable leaf or an application of a signature symbol."""

    head: str
    args: tuple["Term", ...] = ()
    is_var: bool = False

    def __post_init__(self) -> None:
        if self.is_var and self.args:
            raise SemanticError("variables take no arguments")

    def __repr__(self) -> str:
        return f"Term({render_term(self)})"


def var(name: str) -> Term:
    return Term(name, (), True)


def app(symbol: str, *args: Term) -> Term:
    return Term(symbol, tuple(args))


def const(name: str) -> Term:
    return Term(name, ())


@functools.lru_cache(maxsize=None)
def term_depth(t: Term) -> int:
    if not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


@functools.lru_cache(maxsize=None)
def render_term(t: Term) -> str:
    if not t.args:
        return t.head
    return f"{t.head}({','.join(render_term(a) for a in t.args)})"


def free_vars(t: Term) -> frozenset[str]:
    if t.is_var:
        return frozenset((t.head,))
    out: frozenset[str] = frozenset()
    for a in t.args:
        out |= free_vars(a)
    return out


def term_sort_key(t: Term) -> tuple[int, str]:
    """Canonical ordering: depth first, then lexicographic on the rendering."""
    return (term_depth(t), render_term(t))


@dataclass(frozen=True)
class Inequality:
    lhs: Term
    rhs: Term

    @property
    def pair(self) -> tuple[Term, Term]:
        return (self.lhs, self.rhs)

    def render(self) -> str:
        return f"{render_term(self.lhs)} <= {render_term(self.rhs)}"

    def __repr__(self) -> str:
        return f"Inequality({self.render()})"


def ineq_vars(ineq: Inequality) -> frozenset[str]:
    return free_vars(ineq.lhs) | free_vars(ineq.rhs)


# ---------------------------------------------------------------------------
# Signatures

@dataclass(frozen=True)
class Signature:
    """Ranked alphabet of function symbols."""

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for name, arity in self.symbols:
            if name in seen:
                raise SemanticError(f"duplicate symbol {name!r} in signature")
            if arity < 0:
                raise ArityError(f"negative arity for {name!r}")
            seen.add(name)

    def arity_of(self, name: str) -> int | None:
        for sym, arity in self.symbols:
            if sym == name:
                return arity
        return None

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def constants(self) -> tuple[str, ...]:
        return tuple(name for name, arity in self.symbols if arity == 0)


def check_term(t: Term, signature: Signature, variables: frozenset[str]) -> None:
    """Raise if t uses a symbol outside the signature or with the wrong arity."""
    if t.is_var:
        if t.head not in variables:
            raise UnknownSymbolError(f"undeclared variable {t.head!r}")
        return
    arity = signature.arity_of(t.head)
    if arity is None:
        raise UnknownSymbolError(f"unknown symbol {t.head!r}")
    if arity != len(t.args):
        raise ArityError(
            f"symbol {t.head!r} has arity {arity}, applied to {len(t.args)} arguments")
    for a in t.args:
        check_term(a, signature, variables)


# ---------------------------------------------------------------------------
# Substitutions (endomorphisms of the term algebra)

Substitution = Mapping[str, Term]


def apply_substitution(subst: Substitution, t: Term) -> Term:
    """Simultaneous substitution; unmapped variables stay themselves."""
    if t.is_var:
        return subst.get(t.head, t)
    if not t.args:
        return t
    return Term(t.head, tuple(apply_substitution(subst, a) for a in t.args))


def subterm_at(t: Term, path: tuple[int, ...]) -> Term:
    for i in path:
        if t.is_var or not 0 <= i < len(t.args):
            raise SemanticError(f"invalid path {path} in {render_term(t)}")
        t = t.args[i]
    return t


def replace_subterm(s: Term, path: tuple[int, ...], replacement: Term) -> Term:
    """Replace exactly the one occurrence addressed by the argument-index path."""
    if not path:
        return replacement
    i, rest = path[0], path[1:]
    if s.is_var or not 0 <= i < len(s.args):
        raise SemanticError(f"invalid path {path} in {render_term(s)}")
    new_args = list(s.args)
    new_args[i] = replace_subterm(s.args[i], rest, replacement)
    return Term(s.head, tuple(new_args))


def positions(t: Term) -> Iterator[tuple[tuple[int, ...], Term]]:
    """All (path, subterm) pairs of t, root first."""
    yield (), t
    for i, a in enumerate(t.args):
        for path, sub in positions(a):
            yield (i,) + path, sub


# ---------------------------------------------------------------------------
# Bounded term universes

@dataclass(frozen=True)
class TermUniverse:
    """All terms of depth <= depth_bound, in canonical (depth, lex) order."""

    signature: Signature
    variables: tuple[str, ...]
    depth_bound: int
    terms: tuple[Term, ...]
    index: Mapping[Term, int] = field(compare=False, repr=False, default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index",
                           {t: i for i, t in enumerate(self.terms)})

    def __contains__(self, t: Term) -> bool:
        return t in self.index

    def __len__(self) -> int:
        return len(self.terms)

    def index_of(self, t: Term) -> int:
        return self.index[t]

    def fingerprint(self) -> str:
        sig = ",".join(f"{n}:{a}" for n, a in self.signature.symbols)
        return f"U[d{self.depth_bound};{sig};{','.join(self.variables)}]"


def generate_universe(signature: Signature, variables: Iterable[str],
                      depth: int) -> TermUniverse:
    """Enumerate every well-formed term of depth <= depth over the language."""
    if depth < 0:
        raise SemanticError("depth bound must be >= 0")
    vars_sorted = tuple(sorted(set(variables)))
    level0 = [var(x) for x in vars_sorted] + [const(c) for c in signature.constants()]
    if not level0:
        raise SemanticError(
            "empty term universe: no variables and no constant symbols")
    levels: list[list[Term]] = [sorted(level0, key=term_sort_key)]
    proper = [(name, arity) for name, arity in signature.symbols if arity > 0]
    for d in range(1, depth + 1):
        below = [t for level in levels for t in level]
        fresh: list[Term] = []
        for name, arity in proper:
            for args in itertools.product(below, repeat=arity):
                if 1 + max(term_depth(a) for a in args) == d:
                    fresh.append(Term(name, args))
        if not fresh:
            break
        levels.append(sorted(fresh, key=term_sort_key))
    terms = tuple(t for level in levels for t in level)
    return TermUniverse(signature, vars_sorted, depth, terms)


# ---------------------------------------------------------------------------
# Graded theories

class GradedTheory:
    """L-set of inequalities: prescribed lower bounds for validity in models."""

    def __init__(self, lattice: Lattice,
                 entries: Mapping[Inequality, Degree] | None = None):
        self.lattice = lattice
        self._lset = LSet(lattice, "Fml")
        if entries:
            for ineq, deg in entries.items():
                self.assume(ineq, deg)

    def assume(self, ineq: Inequality, degree: Degree) -> None:
        """Record an assumption; repeated pairs keep the larger degree."""
        current = self._lset.degree_of(ineq)
        if degree.num > current.num:
            self._lset.set(ineq, degree)

    def degree_of(self, ineq: Inequality) -> Degree:
        return self._lset.degree_of(ineq)

    def items(self) -> Iterator[tuple[Inequality, Degree]]:
        return self._lset.items()

    def __len__(self) -> int:
        return len(self._lset)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedTheory):
            return NotImplemented
        return self.lattice == other.lattice and self._lset == other._lset

    def is_crisp(self) -> bool:
        return all(deg.num == self.lattice.n for _, deg in self.items())

    def copy(self) -> "GradedTheory":
        out = GradedTheory(self.lattice)
        out._lset = self._lset.copy()
        return out


@dataclass
class Theory:
    """A fully resolved theory file."""

    lattice: Lattice
    signature: Signature
    variables: tuple[str, ...]
    assumptions: GradedTheory
    options: dict

    def render(self) -> str:
        lines = [f"lattice {self.lattice.describe()}"]
        sig = ", ".join(f"{n}:{a}" for n, a in self.signature.symbols)
        lines.append(f"signature {{ {sig} }}")
        if self.variables:
            lines.append(f"variables {{ {', '.join(self.variables)} }}")
        entries = sorted(self.assumptions.items(),
                         key=lambda e: (term_sort_key(e[0].lhs), term_sort_key(e[0].rhs)))
        for ineq, deg in entries:
            lines.append(f"assume {ineq.render()} @ {deg.render()}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Tokenizer and parser for the DSL

_PUNCT = {"{", "}", "(", ")", ",", ":", "@", "/"}


@dataclass(frozen=True)
class _Token:
    kind: str  # 'ident' | 'number' | 'punct' | 'leq' | 'eof'
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if c == "<" and i + 1 < n and text[i + 1] == "=":
            tokens.append(_Token("leq", "<=", line, start_col))
            i += 2
            col += 2
            continue
        if c in _PUNCT:
            tokens.append(_Token("punct", c, line, start_col))
            i += 1
            col += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("number", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        # The attribute layer's composition and identity glyphs count as
        # identifier characters so its terms round-trip through proof files.
        if c.isalpha() or c in "_·⊤":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'·⊤"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", line, start_col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    """Recursive-descent parser over the token stream."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> _Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise ParseError(f"expected {want!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.col)
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.text == word

    # -- shared grammar pieces ------------------------------------------

    def parse_name_list(self) -> list[str]:
        self.expect("punct", "{")
        names: list[str] = []
        if not (self.peek().kind == "punct" and self.peek().text == "}"):
            names.append(self.expect("ident").text)
            while self.peek().kind == "punct" and self.peek().text == ",":
                self.advance()
                names.append(self.expect("ident").text)
        self.expect("punct", "}")
        return names

    def parse_term(self) -> Term:
        tok = self.expect("ident")
        if self.peek().kind == "punct" and self.peek().text == "(":
            self.advance()
            args = [self.parse_term()]
            while self.peek().kind == "punct" and self.peek().text == ",":
                self.advance()
                args.append(self.parse_term())
            self.expect("punct", ")")
            return Term(tok.text, tuple(args))
        return Term(tok.text, ())

    def parse_degree_literal(self, lattice: Lattice) -> Degree:
        tok = self.expect("number")
        if self.peek().kind == "punct" and self.peek().text == "/":
            self.advance()
            den = self.expect("number")
            return lattice.parse_degree(f"{tok.text}/{den.text}")
        return lattice.parse_degree(tok.text)

    def parse_lattice_decl(self) -> Lattice:
        self.expect("ident", "lattice")
        kind = self.expect("ident").text
        if kind == "boolean":
            return Lattice("boolean")
        if kind in ("lukasiewicz", "goedel"):
            n = int(self.expect("number").text)
            return Lattice(kind, n)
        tok = self.tokens[self.pos - 1]
        raise ParseError(f"unknown lattice kind {kind!r}", tok.line, tok.col)


def _resolve_term(raw: Term, signature: Signature,
                  variables: frozenset[str]) -> Term:
    """Mark identifier leaves as variables or constants and validate arities."""
    if not raw.args:
        if raw.head in variables:
            return var(raw.head)
        arity = signature.arity_of(raw.head)
        if arity is None:
            raise UnknownSymbolError(f"unknown symbol {raw.head!r}")
        if arity != 0:
            raise ArityError(f"symbol {raw.head!r} has arity {arity}, used as constant")
        return raw
    arity = signature.arity_of(raw.head)
    if arity is None:
        raise UnknownSymbolError(f"unknown symbol {raw.head!r}")
    if arity != len(raw.args):
        raise ArityError(
            f"symbol {raw.head!r} has arity {arity}, applied to {len(raw.args)} arguments")
    return Term(raw.head, tuple(_resolve_term(a, signature, variables) for a in raw.args))


def parse_theory(text: str) -> Theory:
    """Parse a theory file into its lattice, signature, variables and L-set."""
    p = _Parser(text)
    lattice: Lattice | None = None
    signature: Signature | None = None
    variables: tuple[str, ...] = ()
    pending: list[tuple[Term, Term, Degree]] = []

    while p.peek().kind != "eof":
        tok = p.peek()
        if p.at_keyword("lattice"):
            if lattice is not None:
                raise ParseError("duplicate lattice declaration", tok.line, tok.col)
            lattice = p.parse_lattice_decl()
        elif p.at_keyword("signature"):
            if signature is not None:
                raise ParseError("duplicate signature declaration", tok.line, tok.col)
            p.advance()
            p.expect("punct", "{")
            symbols: list[tuple[str, int]] = []
            if not (p.peek().kind == "punct" and p.peek().text == "}"):
                while True:
                    name = p.expect("ident").text
                    p.expect("punct", ":")
                    arity = int(p.expect("number").text)
                    symbols.append((name, arity))
                    if p.peek().kind == "punct" and p.peek().text == ",":
                        p.advance()
                        continue
                    break
            p.expect("punct", "}")
            signature = Signature(tuple(symbols))
        elif p.at_keyword("variables"):
            p.advance()
            variables = tuple(sorted(set(p.parse_name_list())))
        elif p.at_keyword("assume"):
            if lattice is None:
                raise ParseError("assume before lattice declaration", tok.line, tok.col)
            p.advance()
            lhs = p.parse_term()
            p.expect("leq")
            rhs = p.parse_term()
            p.expect("punct", "@")
            deg = p.parse_degree_literal(lattice)
            pending.append((lhs, rhs, deg))
        else:
            raise ParseError(f"unknown statement {tok.text!r}", tok.line, tok.col)

    if lattice is None:
        raise ParseError("missing lattice declaration")
    if signature is None:
        raise ParseError("missing signature declaration")
    var_set = frozenset(variables)
    overlap = var_set & set(signature.names())
    if overlap:
        raise SemanticError(
            f"names declared both as variables and symbols: {sorted(overlap)}")
    assumptions = GradedTheory(lattice)
    for lhs, rhs, deg in pending:
        ineq = Inequality(_resolve_term(lhs, signature, var_set),
                          _resolve_term(rhs, signature, var_set))
        assumptions.assume(ineq, deg)
    return Theory(lattice, signature, variables, assumptions, {})


def parse_term_text(text: str, signature: Signature,
                    variables: Iterable[str]) -> Term:
    p = _Parser(text)
    raw = p.parse_term()
    p.expect("eof")
    return _resolve_term(raw, signature, frozenset(variables))


def parse_inequality(text: str, signature: Signature,
                     variables: Iterable[str]) -> Inequality:
    """Parse a query of the form `t <= t'`."""
    p = _Parser(text)
    lhs = p.parse_term()
    p.expect("leq")
    rhs = p.parse_term()
    p.expect("eof")
    var_set = frozenset(variables)
    return Inequality(_resolve_term(lhs, signature, var_set),
                      _resolve_term(rhs, signature, var_set))
