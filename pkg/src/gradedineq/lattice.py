"""Structures of truth degrees: finite residuated chains and L-sets.

Degrees are exact rationals k/n represented by their integer numerator over
the chain 0, 1/n, ..., n/n.  The two-element Boolean algebra is the chain
with n = 1.  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping

from .errors import DegreeError, LatticeMismatchError, UniverseMismatchError

BOOLEAN = "boolean"
LUKASIEWICZ = "lukasiewicz"
GOEDEL = "goedel"

_KINDS = (BOOLEAN, LUKASIEWICZ, GOEDEL)


@dataclass(frozen=True)
class Lattice:
    """A complete residuated chain: Boolean, Lukasiewicz k/n or Goedel k/n."""

    kind: str
    n: int = 1

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise DegreeError(f"unknown lattice kind {self.kind!r}")
        if self.n < 1:
            raise DegreeError("chain denominator must be a positive integer")
        if self.kind == BOOLEAN and self.n != 1:
            raise DegreeError("the Boolean algebra has denominator 1")

    @property
    def zero(self) -> Degree:
        return Degree(0, self)

    @property
    def one(self) -> Degree:
        return Degree(self.n, self)

    def degree(self, num: int) -> Degree:
        if not 0 <= num <= self.n:
            raise DegreeError(f"numerator {num} outside 0..{self.n}")
        return Degree(num, self)

    def carrier(self) -> tuple[Degree, ...]:
        return tuple(Degree(k, self) for k in range(self.n + 1))

    def parse_degree(self, text: str) -> Degree:
        """Parse `k/n` (denominator must match exactly) or the words `0`/`1`."""
        text = text.strip()
        if text == "0":
            return self.zero
        if text == "1":
            return self.one
        if "/" in text:
            num_part, _, den_part = text.partition("/")
            try:
                num, den = int(num_part), int(den_part)
            except ValueError:
                raise DegreeError(f"malformed degree literal {text!r}") from None
            if den != self.n:
                raise DegreeError(
                    f"degree {text} has denominator {den}, lattice expects {self.n}")
            if not 0 <= num <= den:
                raise DegreeError(f"degree {text} outside [0, 1]")
            return Degree(num, self)
        raise DegreeError(f"malformed degree literal {text!r}")

    def describe(self) -> str:
        if self.kind == BOOLEAN:
            return "boolean"
        return f"{self.kind} {self.n}"


@dataclass(frozen=True)
class Degree:
    """Exact truth degree num/n in its owning lattice."""

    num: int
    lattice: Lattice

    def render(self) -> str:
        if self.num == 0:
            return "0"
        if self.num == self.lattice.n:
            return "1"
        return f"{self.num}/{self.lattice.n}"

    def __repr__(self) -> str:
        return f"Degree({self.render()} in {self.lattice.describe()})"

    def __le__(self, other: Degree) -> bool:
        _require_same_lattice(self, other)
        return self.num <= other.num

    def __lt__(self, other: Degree) -> bool:
        _require_same_lattice(self, other)
        return self.num < other.num

    def __ge__(self, other: Degree) -> bool:
        return other.__le__(self)

    def __gt__(self, other: Degree) -> bool:
        return other.__lt__(self)


def _require_same_lattice(a: Degree, b: Degree) -> Lattice:
    if a.lattice != b.lattice:
        raise LatticeMismatchError(
            f"operands from different lattices: {a.lattice.describe()} "
            f"vs {b.lattice.describe()}")
    return a.lattice


def otimes(a: Degree, b: Degree) -> Degree:
    """Monoidal multiplication of the chain."""
    lat = _require_same_lattice(a, b)
    if lat.kind == LUKASIEWICZ:
        return Degree(max(0, a.num + b.num - lat.n), lat)
    # Goedel multiplication is min; Boolean conjunction is min on {0, 1}.
    return Degree(min(a.num, b.num), lat)


def residuum(a: Degree, b: Degree) -> Degree:
    """The greatest c with a (x) c <= b, by the closed form of each chain."""
    lat = _require_same_lattice(a, b)
    if lat.kind == LUKASIEWICZ:
        return Degree(min(lat.n, lat.n - a.num + b.num), lat)
    # Goedel: 1 if a <= b else b; Boolean material implication coincides.
    if a.num <= b.num:
        return lat.one
    return b


def residuum_by_search(a: Degree, b: Degree) -> Degree:
    """Independent oracle: scan the chain for max{c : a (x) c <= b}."""
    lat = _require_same_lattice(a, b)
    best = 0
    for k in range(lat.n + 1):
        if otimes(a, Degree(k, lat)).num <= b.num:
            best = k
    return Degree(best, lat)


def meet(a: Degree, b: Degree) -> Degree:
    lat = _require_same_lattice(a, b)
    return Degree(min(a.num, b.num), lat)


def join(a: Degree, b: Degree) -> Degree:
    lat = _require_same_lattice(a, b)
    return Degree(max(a.num, b.num), lat)


def inf_degrees(lattice: Lattice, degrees: Iterable[Degree]) -> Degree:
    """Chain infimum; the empty infimum is 1."""
    best = lattice.n
    for d in degrees:
        if d.lattice != lattice:
            raise LatticeMismatchError("infimum across different lattices")
        if d.num < best:
            best = d.num
            if best == 0:
                break
    return Degree(best, lattice)


def sup_degrees(lattice: Lattice, degrees: Iterable[Degree]) -> Degree:
    """Chain supremum; the empty supremum is 0."""
    best = 0
    for d in degrees:
        if d.lattice != lattice:
            raise LatticeMismatchError("supremum across different lattices")
        if d.num > best:
            best = d.num
            if best == lattice.n:
                break
    return Degree(best, lattice)


class LSet:
    """Sparse fuzzy set: element -> degree, absent meaning degree 0.

    Entries with degree 0 are normalized away so structural equality of the
    backing map is equality of L-sets.
    """

    __slots__ = ("lattice", "universe_id", "_entries")

    def __init__(self, lattice: Lattice, universe_id: str,
                 entries: Mapping[Hashable, Degree] | None = None):
        self.lattice = lattice
        self.universe_id = universe_id
        self._entries: dict[Hashable, Degree] = {}
        if entries:
            for elem, deg in entries.items():
                self.set(elem, deg)

    def set(self, elem: Hashable, degree: Degree) -> None:
        if degree.lattice != self.lattice:
            raise LatticeMismatchError("degree from a different lattice")
        if degree.num == 0:
            self._entries.pop(elem, None)
        else:
            self._entries[elem] = degree

    def degree_of(self, elem: Hashable) -> Degree:
        return self._entries.get(elem, self.lattice.zero)

    def support(self) -> list[Hashable]:
        return list(self._entries)

    def items(self) -> Iterator[tuple[Hashable, Degree]]:
        return iter(self._entries.items())

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LSet):
            return NotImplemented
        return (self.lattice == other.lattice
                and self.universe_id == other.universe_id
                and self._entries == other._entries)

    def __repr__(self) -> str:
        inner = ", ".join(f"{e!r}: {d.render()}" for e, d in self._entries.items())
        return f"LSet({self.universe_id}, {{{inner}}})"

    def copy(self) -> LSet:
        out = type(self)(self.lattice, self.universe_id)
        out._entries = dict(self._entries)
        return out


class LRelation(LSet):
    """Binary L-relation: an L-set over ordered pairs of the universe."""

    def degree_between(self, a: Hashable, b: Hashable) -> Degree:
        return self.degree_of((a, b))

    def set_pair(self, a: Hashable, b: Hashable, degree: Degree) -> None:
        self.set((a, b), degree)


def _require_same_universe(sets: Iterable[LSet]) -> tuple[LSet, ...]:
    family = tuple(sets)
    if not family:
        raise ValueError("empty family of L-sets")
    first = family[0]
    for s in family[1:]:
        if s.universe_id != first.universe_id:
            raise UniverseMismatchError(
                f"universe mismatch: {first.universe_id!r} vs {s.universe_id!r}")
        if s.lattice != first.lattice:
            raise LatticeMismatchError("L-sets over different lattices")
    return family


def lset_includes(a1: LSet, a2: LSet) -> bool:
    """Pointwise test a1(x) <= a2(x) for all x."""
    _require_same_universe([a1, a2])
    return all(deg.num <= a2.degree_of(elem).num for elem, deg in a1.items())


def lset_intersect(sets: Iterable[LSet]) -> LSet:
    family = _require_same_universe(sets)
    out = family[0].copy()
    for s in family[1:]:
        for elem in out.support():
            out.set(elem, meet(out.degree_of(elem), s.degree_of(elem)))
    return out


def lset_union(sets: Iterable[LSet]) -> LSet:
    family = _require_same_universe(sets)
    out = family[0].copy()
    for s in family[1:]:
        for elem, deg in s.items():
            out.set(elem, join(out.degree_of(elem), deg))
    return out
