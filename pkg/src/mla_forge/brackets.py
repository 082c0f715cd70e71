"""Bracket structures: a second binary operation on a group satisfying the
commutator-style identities.

A bracket on G is a table star[x][y] subject to (writing ^u v = u v u^-1):

  A1  x*x = 1
  A2  x*(y z) = (x*y) ^y(x*z)
  A3  (x y)*z = ^x(y*z) (x*z)
  A4  ((x*y) * ^y z) ((y*z) * ^z x) ((z*x) * ^x y) = 1
  A5  ^z(x*y) = ^z x * ^z y

The all-identity table and the commutator table always qualify. Every valid
bracket also satisfies the derived identities x*1 = 1*x = 1 and
y*x = (x*y)^-1, which the search and propagation code relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import BoundExceededError, ValidationError
from .groups import (
    FiniteGroup,
    GroupMap,
    Subgroup,
    automorphisms,
    endomorphisms,
    subgroup_generated,
)

DEFAULT_VIOLATION_CAP = 16
AXIOM_NAMES = ("A1", "A2", "A3", "A4", "A5")


@dataclass(frozen=True)
class LieBracket:
    """A candidate or verified bracket table on a group."""

    group: FiniteGroup
    star: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, group: FiniteGroup, star: Sequence[Sequence[int]]) -> "LieBracket":
        rows = tuple(tuple(int(v) for v in row) for row in star)
        n = group.order
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValidationError("star table shape does not match group order")
        for row in rows:
            for v in row:
                if not (0 <= v < n):
                    raise ValidationError(f"star value {v} out of range 0..{n - 1}")
        return cls(group, rows)

    def value(self, x: int, y: int) -> int:
        return self.star[x][y]

    def is_trivial(self) -> bool:
        e = self.group.identity
        return all(v == e for row in self.star for v in row)


@dataclass(frozen=True)
class MlaViolation:
    """One failed bracket axiom with its witness and both evaluated sides."""

    axiom: str
    witness: tuple[int, ...]
    left: int
    right: int


def verify_mla(
    group: FiniteGroup,
    star: Union[LieBracket, Sequence[Sequence[int]]],
    max_violations: int = DEFAULT_VIOLATION_CAP,
) -> list[MlaViolation]:
    """Exhaustively check A1-A5; an empty list means a verified bracket.

    Axioms are scanned in order A1..A5 and witnesses within an axiom in
    lexicographic order, collecting violations until ``max_violations``.
    """
    table = star.star if isinstance(star, LieBracket) else tuple(tuple(r) for r in star)
    n = group.order
    if len(table) != n or any(len(r) != n for r in table):
        raise ValidationError("star table shape does not match group order")
    mul = group.cayley
    conj = group.conj_table
    e = group.identity
    out: list[MlaViolation] = []

    def push(axiom: str, witness: tuple[int, ...], left: int, right: int) -> bool:
        out.append(MlaViolation(axiom, witness, left, right))
        return len(out) >= max_violations

    for x in range(n):
        if table[x][x] != e and push("A1", (x,), table[x][x], e):
            return out
    for x in range(n):
        sx = table[x]
        for y in range(n):
            sxy = sx[y]
            cy = conj[y]
            my = mul[y]
            for z in range(n):
                lhs = sx[my[z]]
                rhs = mul[sxy][cy[sx[z]]]
                if lhs != rhs and push("A2", (x, y, z), lhs, rhs):
                    return out
    for x in range(n):
        cx = conj[x]
        mx = mul[x]
        for y in range(n):
            sy = table[y]
            for z in range(n):
                lhs = table[mx[y]][z]
                rhs = mul[cx[sy[z]]][table[x][z]]
                if lhs != rhs and push("A3", (x, y, z), lhs, rhs):
                    return out
    for x in range(n):
        sx = table[x]
        cx = conj[x]
        for y in range(n):
            sy = table[y]
            cy = conj[y]
            sxy = sx[y]
            for z in range(n):
                t1 = table[sxy][cy[z]]
                t2 = table[sy[z]][conj[z][x]]
                t3 = table[table[z][x]][cx[y]]
                val = mul[mul[t1][t2]][t3]
                if val != e and push("A4", (x, y, z), val, e):
                    return out
    for x in range(n):
        sx = table[x]
        for y in range(n):
            sxy = sx[y]
            for z in range(n):
                cz = conj[z]
                lhs = cz[sxy]
                rhs = table[cz[x]][cz[y]]
                if lhs != rhs and push("A5", (x, y, z), lhs, rhs):
                    return out
    return out


def trivial_bracket(group: FiniteGroup) -> LieBracket:
    e = group.identity
    row = (e,) * group.order
    return LieBracket(group, (row,) * group.order)


def commutator_bracket(group: FiniteGroup) -> LieBracket:
    star = tuple(
        tuple(group.comm(x, y) for y in range(group.order)) for x in range(group.order)
    )
    return LieBracket(group, star)


def reverse_bracket(bracket: LieBracket) -> LieBracket:
    """Arguments swapped: star'[x][y] = star[y][x].

    On a verified bracket this equals the pointwise inverse, since
    y*x = (x*y)^-1 holds in every valid structure.
    """
    n = bracket.group.order
    star = tuple(tuple(bracket.star[y][x] for y in range(n)) for x in range(n))
    return LieBracket(bracket.group, star)


def derived_subalgebra(bracket: LieBracket) -> Subgroup:
    """Subgroup generated by all bracket values."""
    values = {v for row in bracket.star for v in row}
    return subgroup_generated(bracket.group, values)


def is_ideal(bracket: LieBracket, sub: Union[Subgroup, Iterable[int]]) -> bool:
    """True iff sub is normal and closed under bracketing with all of G."""
    group = bracket.group
    members = sub.members if isinstance(sub, Subgroup) else tuple(sorted(set(sub)))
    subgroup = sub if isinstance(sub, Subgroup) else Subgroup(group, members)
    if not subgroup.is_normal:
        return False
    mem = frozenset(members)
    star = bracket.star
    for g in range(group.order):
        row = star[g]
        for s in members:
            if row[s] not in mem or star[s][g] not in mem:
                return False
    return True


def bracket_equivalent(
    first: LieBracket, second: LieBracket, bound: int = 64
) -> Optional[GroupMap]:
    """An automorphism f with f(x *1 y) = f(x) *2 f(y) for all x, y, or None."""
    _require_same_group(first, second)
    for phi in automorphisms(first.group, bound=bound):
        if _intertwines(phi.images, first.star, second.star):
            return phi
    return None


def bracket_equivalent_mod_reversal(
    first: LieBracket, second: LieBracket, bound: int = 64
) -> Optional[tuple[GroupMap, bool]]:
    """Like bracket_equivalent, but also allows swapping argument order.

    Returns (map, reversed) where reversed says the map matches ``first``
    against the reversal of ``second``. Structure counting uses this coarser
    relation: a bracket and its reversal describe the same structure.
    """
    _require_same_group(first, second)
    rev = reverse_bracket(second).star
    for phi in automorphisms(first.group, bound=bound):
        if _intertwines(phi.images, first.star, second.star):
            return phi, False
        if _intertwines(phi.images, first.star, rev):
            return phi, True
    return None


def _require_same_group(first: LieBracket, second: LieBracket) -> None:
    if first.group.cayley != second.group.cayley:
        raise ValidationError("brackets live on different groups")


def _intertwines(
    images: tuple[int, ...],
    star1: tuple[tuple[int, ...], ...],
    star2: tuple[tuple[int, ...], ...],
) -> bool:
    n = len(images)
    for x in range(n):
        fx = images[x]
        row = star1[x]
        for y in range(n):
            if images[row[y]] != star2[fx][images[y]]:
                return False
    return True


def pushforward_table(
    images: tuple[int, ...], star: tuple[tuple[int, ...], ...]
) -> tuple[tuple[int, ...], ...]:
    """Relabel a star table along a bijective image table."""
    n = len(images)
    pre = [0] * n
    for i, v in enumerate(images):
        pre[v] = i
    return tuple(tuple(images[star[pre[x]][pre[y]]] for y in range(n)) for x in range(n))


def canonical_bracket_key(
    bracket: LieBracket,
    autos: Optional[Sequence[GroupMap]] = None,
    include_reversal: bool = True,
) -> tuple[tuple[int, ...], ...]:
    """Lexicographically smallest table over the automorphism orbit, optionally
    also over argument reversal. Equal keys mean equivalent brackets."""
    if autos is None:
        autos = automorphisms(bracket.group)
    tables = [bracket.star]
    if include_reversal:
        tables.append(reverse_bracket(bracket).star)
    return min(pushforward_table(phi.images, t) for phi in autos for t in tables)


def end_mla(group: FiniteGroup, max_order: int = 64) -> tuple[FiniteGroup, LieBracket]:
    """The endomorphism structure of an abelian group.

    Elements are the endomorphism tables of H in sorted order; the group
    operation is the pointwise product (F.G)(h) = F(h)G(h) and the bracket is
    (F*G)(h) = F(G(h)) G(F(h^-1)). The returned pair passes verify_mla.
    """
    if not group.is_abelian:
        raise ValidationError("end_mla requires an abelian group")
    endos = endomorphisms(group)
    if len(endos) > max_order:
        raise BoundExceededError(
            f"End({group.name}) has {len(endos)} elements, beyond supported order {max_order}"
        )
    index = {t: i for i, t in enumerate(endos)}
    mul_h, inv_h = group.cayley, group.inverse
    hs = range(group.order)

    def dot(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(mul_h[f[h]][g[h]] for h in hs)

    def star_op(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(mul_h[f[g[h]]][g[f[inv_h[h]]]] for h in hs)

    size = len(endos)
    cayley = [[index[dot(endos[i], endos[j])] for j in range(size)] for i in range(size)]
    end_group = FiniteGroup.from_table(f"End({group.name})", cayley)
    star = [[index[star_op(endos[i], endos[j])] for j in range(size)] for i in range(size)]
    return end_group, LieBracket.make(end_group, star)
