"""Finite groups as validated Cayley tables over elements 0..order-1."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import BoundExceededError, ValidationError

DEFAULT_AUT_BOUND = 64
MAX_GROUP_ORDER = 64
VIOLATION_CAP = 32


@dataclass(frozen=True)
class GroupViolation:
    """One violated group axiom, with the witnessing elements."""

    axiom: str
    witness: tuple[int, ...]
    message: str


def verify_group(
    cayley: Sequence[Sequence[int]],
    generators: Optional[Sequence[int]] = None,
    cap: int = VIOLATION_CAP,
) -> list[GroupViolation]:
    """Check the group axioms on a candidate Cayley table.

    Returns every violation found (up to ``cap``); an empty list means the
    table is a group and, if generators were supplied, that they generate it.
    """
    out: list[GroupViolation] = []
    n = len(cayley)
    if n == 0:
        return [GroupViolation("shape", (), "table is empty")]
    for i, row in enumerate(cayley):
        if len(row) != n:
            return [GroupViolation("shape", (i,), f"row {i} has length {len(row)}, expected {n}")]
        for j, v in enumerate(row):
            if not isinstance(v, int) or not (0 <= v < n):
                return [GroupViolation("shape", (i, j), f"entry [{i}][{j}]={v!r} out of range 0..{n - 1}")]

    for i in range(n):
        if len(set(cayley[i])) != n:
            out.append(GroupViolation("latin-row", (i,), f"row {i} is not a permutation"))
        if len({cayley[x][i] for x in range(n)}) != n:
            out.append(GroupViolation("latin-column", (i,), f"column {i} is not a permutation"))
        if len(out) >= cap:
            return out[:cap]

    identity = None
    for e in range(n):
        if all(cayley[e][x] == x and cayley[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        out.append(GroupViolation("identity", (), "no two-sided identity element"))

    if identity is not None:
        for x in range(n):
            if not any(cayley[x][y] == identity and cayley[y][x] == identity for y in range(n)):
                out.append(GroupViolation("inverse", (x,), f"element {x} has no two-sided inverse"))
                if len(out) >= cap:
                    return out[:cap]

    for x, y, z in product(range(n), repeat=3):
        if cayley[cayley[x][y]][z] != cayley[x][cayley[y][z]]:
            out.append(
                GroupViolation("associativity", (x, y, z), f"(x*y)*z != x*(y*z) at ({x},{y},{z})")
            )
            if len(out) >= cap:
                return out[:cap]

    if generators is not None and not out and identity is not None:
        gens = tuple(int(g) for g in generators)
        if any(not (0 <= g < n) for g in gens):
            out.append(GroupViolation("generators", gens, "generator index out of range"))
        else:
            reached = _closure(cayley, identity, gens)
            if len(reached) != n:
                out.append(
                    GroupViolation(
                        "generators", gens, f"generators reach only {len(reached)} of {n} elements"
                    )
                )
    return out[:cap]


def _closure(cayley: Sequence[Sequence[int]], identity: int, seeds: Iterable[int]) -> set[int]:
    reached = {identity}
    frontier = [identity]
    seeds = tuple(seeds)
    while frontier:
        nxt = []
        for x in frontier:
            for g in seeds:
                y = cayley[x][g]
                if y not in reached:
                    reached.add(y)
                    nxt.append(y)
        frontier = nxt
    return reached


class FiniteGroup:
    """Immutable finite group given by its Cayley table.

    Elements are the indices 0..order-1; ``cayley[x][y]`` is the product x*y.
    Instances are only built through :meth:`from_table` or the preset
    constructors, so the table is always a verified group.
    """

    def __init__(
        self,
        name: str,
        cayley: tuple[tuple[int, ...], ...],
        identity: int,
        inverse: tuple[int, ...],
        generators: Optional[tuple[int, ...]] = None,
        element_names: Optional[tuple[str, ...]] = None,
    ):
        self.name = name
        self.cayley = cayley
        self.order = len(cayley)
        self.identity = identity
        self.inverse = inverse
        self.generators = generators
        self.element_names = element_names

    @classmethod
    def from_table(
        cls,
        name: str,
        cayley: Sequence[Sequence[int]],
        generators: Optional[Sequence[int]] = None,
        element_names: Optional[Sequence[str]] = None,
    ) -> "FiniteGroup":
        rows = tuple(tuple(int(v) for v in row) for row in cayley)
        if len(rows) > MAX_GROUP_ORDER:
            raise BoundExceededError(f"group order {len(rows)} exceeds supported bound {MAX_GROUP_ORDER}")
        problems = verify_group(rows, generators=generators)
        if problems:
            summary = "; ".join(v.message for v in problems[:4])
            raise ValidationError(f"{name!r} is not a valid group: {summary}")
        identity = next(
            e for e in range(len(rows)) if all(rows[e][x] == x and rows[x][e] == x for x in range(len(rows)))
        )
        inverse = tuple(row.index(identity) for row in rows)
        gens = tuple(int(g) for g in generators) if generators is not None else None
        names = tuple(element_names) if element_names is not None else None
        if names is not None and len(names) != len(rows):
            raise ValidationError("element_names length does not match group order")
        return cls(name, rows, identity, inverse, gens, names)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, x: int, g: int) -> int:
        """x g x^-1."""
        return self.cayley[self.cayley[x][g]][self.inverse[x]]

    def comm(self, x: int, y: int) -> int:
        """x y x^-1 y^-1."""
        return self.cayley[self.conj(x, y)][self.inverse[y]]

    def element_name(self, i: int) -> str:
        if self.element_names is not None:
            return self.element_names[i]
        return str(i)

    @cached_property
    def conj_table(self) -> tuple[tuple[int, ...], ...]:
        """conj_table[z][x] = z x z^-1."""
        mul, inv = self.cayley, self.inverse
        return tuple(tuple(mul[mul[z][x]][inv[z]] for x in range(self.order)) for z in range(self.order))

    @cached_property
    def is_abelian(self) -> bool:
        c = self.cayley
        return all(c[a][b] == c[b][a] for a in range(self.order) for b in range(self.order))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.cayley[x][a]
            k += 1
        return k

    @cached_property
    def order_profile(self) -> tuple[int, ...]:
        """Sorted multiset of element orders; an isomorphism invariant."""
        return tuple(sorted(self.element_order(a) for a in range(self.order)))

    def generator_set(self) -> tuple[int, ...]:
        if self.generators:
            return self.generators
        return find_generators(self)


def find_generators(group: FiniteGroup) -> tuple[int, ...]:
    """Greedy generating set: repeatedly add the first element outside the
    closure so far. Deterministic, at most log2(order) generators."""
    if group.order == 1:
        return ()
    gens: list[int] = []
    reached = {group.identity}
    while len(reached) < group.order:
        nxt = next(x for x in range(group.order) if x not in reached)
        gens.append(nxt)
        reached = _closure(group.cayley, group.identity, gens)
    return tuple(gens)


# ---------------------------------------------------------------------------
# presets


def make_cyclic(n: int) -> FiniteGroup:
    """Z_n with element i = residue class i and identity 0."""
    if n < 1:
        raise ValidationError(f"cyclic order must be >= 1, got {n}")
    cayley = [[(i + j) % n for j in range(n)] for i in range(n)]
    gens = (1,) if n > 1 else ()
    names = tuple(str(i) for i in range(n))
    return FiniteGroup.from_table(f"Z{n}", cayley, generators=gens, element_names=names)


def make_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n on <a, b | a^2 = b^n = 1, a b = b^-1 a>.

    Element b^i a^j is index j*n + i, so b = 1 and a = n.
    """
    if n < 2:
        raise ValidationError(f"dihedral index must be >= 2, got {n}")
    size = 2 * n

    def enc(i: int, j: int) -> int:
        return (j % 2) * n + (i % n)

    cayley = [[0] * size for _ in range(size)]
    for i, j, k, l in product(range(n), range(2), range(n), range(2)):
        s = 1 if j == 0 else -1
        cayley[enc(i, j)][enc(k, l)] = enc(i + s * k, j + l)
    names = tuple(_power_name("b", i) if j == 0 else _power_name("b", i, "a") for j in range(2) for i in range(n))
    return FiniteGroup.from_table(f"D{n}", cayley, generators=(1, n), element_names=names)


def make_quaternion(n: int) -> FiniteGroup:
    """Generalized quaternion group of order 4n on
    <a, b | a^(2n) = 1, b^2 = a^n, b^-1 a b = a^-1>.

    Element a^i b^j is index j*2n + i, so a = 1 and b = 2n.
    """
    if n < 1:
        raise ValidationError(f"quaternion index must be >= 1, got {n}")
    m = 2 * n
    size = 4 * n

    def enc(i: int, j: int) -> int:
        return (j % 2) * m + (i % m)

    cayley = [[0] * size for _ in range(size)]
    for i, j, k, l in product(range(m), range(2), range(m), range(2)):
        s = 1 if j == 0 else -1
        ii = i + s * k
        jj = j + l
        if jj == 2:
            ii += n
            jj = 0
        cayley[enc(i, j)][enc(k, l)] = enc(ii, jj)
    names = tuple(_power_name("a", i) if j == 0 else _power_name("a", i, "b") for j in range(2) for i in range(m))
    return FiniteGroup.from_table(f"Q{size}", cayley, generators=(1, m), element_names=names)


def _power_name(sym: str, i: int, suffix: str = "") -> str:
    if i == 0:
        return suffix or "1"
    body = sym if i == 1 else f"{sym}^{i}"
    return body + suffix


def pair_index(h: int, x: int, h_order: int) -> int:
    return h + h_order * x


def pair_split(i: int, h_order: int) -> tuple[int, int]:
    return i % h_order, i // h_order


def validate_action_tables(
    H: FiniteGroup, K: FiniteGroup, sigma: Sequence[Sequence[int]]
) -> None:
    """Check sigma is a homomorphism K -> Aut(H) given as per-element tables."""
    if len(sigma) != K.order:
        raise ValidationError(f"action needs {K.order} tables, got {len(sigma)}")
    for x, row in enumerate(sigma):
        if len(row) != H.order or sorted(row) != list(range(H.order)):
            raise ValidationError(f"action table for element {x} is not a permutation of H")
        for a, b in product(range(H.order), repeat=2):
            if row[H.cayley[a][b]] != H.cayley[row[a]][row[b]]:
                raise ValidationError(f"action table for element {x} is not an automorphism of H")
    idx = sigma[K.identity]
    if tuple(idx) != tuple(range(H.order)):
        raise ValidationError("action at the identity of K must be the identity map")
    for x, y in product(range(K.order), repeat=2):
        composed = tuple(sigma[x][sigma[y][h]] for h in range(H.order))
        if composed != tuple(sigma[K.cayley[x][y]]):
            raise ValidationError(f"action is not a homomorphism: fails at ({x},{y})")


def make_semidirect(
    H: FiniteGroup, K: FiniteGroup, sigma: Sequence[Sequence[int]], name: Optional[str] = None
) -> FiniteGroup:
    """Semidirect product H x| K for an action of K on abelian H.

    Pairs (h, x) are encoded as h + |H|*x and multiply by
    (h, x)(k, y) = (h * sigma_x(k), x y). A trivial action gives the direct
    product table.
    """
    if not H.is_abelian:
        raise ValidationError("semidirect construction requires abelian H")
    validate_action_tables(H, K, sigma)
    return _pair_product(H, K, sigma, name or f"{H.name}:{K.name}")


def direct_product(A: FiniteGroup, B: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    """Direct product with the same pair encoding as make_semidirect."""
    sigma = [list(range(A.order)) for _ in range(B.order)]
    return _pair_product(A, B, sigma, name or f"{A.name}x{B.name}")


def _pair_product(
    H: FiniteGroup, K: FiniteGroup, sigma: Sequence[Sequence[int]], name: str
) -> FiniteGroup:
    nH, nK = H.order, K.order
    size = nH * nK
    if size > MAX_GROUP_ORDER:
        raise BoundExceededError(f"product order {size} exceeds supported bound {MAX_GROUP_ORDER}")
    cayley = [[0] * size for _ in range(size)]
    for h, x, k, y in product(range(nH), range(nK), range(nH), range(nK)):
        hh = H.cayley[h][sigma[x][k]]
        xx = K.cayley[x][y]
        cayley[pair_index(h, x, nH)][pair_index(k, y, nH)] = pair_index(hh, xx, nH)
    gens = tuple(pair_index(g, K.identity, nH) for g in H.generator_set()) + tuple(
        pair_index(H.identity, g, nH) for g in K.generator_set()
    )
    names = tuple(
        f"({H.element_name(h)},{K.element_name(x)})" for x in range(nK) for h in range(nH)
    )
    return FiniteGroup.from_table(name, cayley, generators=gens, element_names=names)


# ---------------------------------------------------------------------------
# free functions mirroring the table methods


def conjugate(group: FiniteGroup, x: int, g: int) -> int:
    """x g x^-1."""
    return group.conj(x, g)


def commutator(group: FiniteGroup, x: int, y: int) -> int:
    """x y x^-1 y^-1."""
    return group.comm(x, y)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` as a sorted tuple of element indices."""

    parent: FiniteGroup
    members: tuple[int, ...]

    def __contains__(self, x: int) -> bool:
        return x in self._member_set

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def is_normal(self) -> bool:
        G = self.parent
        mem = self._member_set
        return all(G.conj(g, s) in mem for g in range(G.order) for s in self.members)

    def as_group(self, name: Optional[str] = None) -> FiniteGroup:
        """The subgroup as a standalone group, elements re-indexed in member order."""
        G = self.parent
        pos = {m: i for i, m in enumerate(self.members)}
        cayley = [[pos[G.cayley[a][b]] for b in self.members] for a in self.members]
        label = name or f"{G.name}-sub{len(self.members)}"
        names = tuple(G.element_name(m) for m in self.members)
        return FiniteGroup.from_table(label, cayley, element_names=names)


def subgroup_generated(group: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Closure of the seed set (plus identity) under products and inverses."""
    members = {group.identity}
    frontier = [group.identity]
    seeds = sorted({int(s) for s in seeds} | {group.identity})
    for s in seeds:
        if not (0 <= s < group.order):
            raise ValidationError(f"seed {s} out of range for {group.name}")
    # closing under products with the seeds and their inverses suffices in a
    # finite group (inverses are positive powers)
    step = sorted(set(seeds) | {group.inverse[s] for s in seeds})
    while frontier:
        nxt = []
        for x in frontier:
            for s in step:
                y = group.cayley[x][s]
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(group, tuple(sorted(members)))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupMap:
    """A homomorphism between finite groups, stored as an image table."""

    domain: FiniteGroup
    codomain: FiniteGroup
    images: tuple[int, ...]

    @classmethod
    def make(cls, domain: FiniteGroup, codomain: FiniteGroup, images: Sequence[int]) -> "GroupMap":
        imgs = tuple(int(v) for v in images)
        if len(imgs) != domain.order:
            raise ValidationError("image table length does not match domain order")
        if any(not (0 <= v < codomain.order) for v in imgs):
            raise ValidationError("image out of range for codomain")
        if imgs[domain.identity] != codomain.identity:
            raise ValidationError("map does not send identity to identity")
        for a, b in product(range(domain.order), repeat=2):
            if imgs[domain.cayley[a][b]] != codomain.cayley[imgs[a]][imgs[b]]:
                raise ValidationError(f"map is not a homomorphism: fails at ({a},{b})")
        return cls(domain, codomain, imgs)

    def __call__(self, x: int) -> int:
        return self.images[x]

    @property
    def is_bijective(self) -> bool:
        return len(set(self.images)) == self.domain.order == self.codomain.order

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other."""
        if other.codomain.cayley != self.domain.cayley:
            raise ValidationError("composition domains do not match")
        return GroupMap(other.domain, self.codomain, tuple(self.images[v] for v in other.images))

    def inverse_map(self) -> "GroupMap":
        if not self.is_bijective:
            raise ValidationError("map is not bijective")
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return GroupMap(self.codomain, self.domain, tuple(inv))


def _extend_from_generators(
    domain: FiniteGroup,
    codomain: FiniteGroup,
    gens: Sequence[int],
    images: Sequence[int],
) -> Optional[tuple[int, ...]]:
    """Extend generator images to a full homomorphism table, or None.

    BFS over right multiplication defines the candidate on all of the domain;
    a full pairwise check then accepts or rejects it.
    """
    n = domain.order
    val = [-1] * n
    val[domain.identity] = codomain.identity
    queue = [domain.identity]
    mul_d, mul_c = domain.cayley, codomain.cayley
    while queue:
        x = queue.pop()
        for g, img in zip(gens, images):
            y = mul_d[x][g]
            w = mul_c[val[x]][img]
            if val[y] == -1:
                val[y] = w
                queue.append(y)
            elif val[y] != w:
                return None
    if -1 in val:
        return None
    for a in range(n):
        row, va = mul_d[a], val[a]
        crow = mul_c[va]
        for b in range(n):
            if val[row[b]] != crow[val[b]]:
                return None
    return tuple(val)


def homomorphisms(domain: FiniteGroup, codomain: FiniteGroup) -> list[GroupMap]:
    """All homomorphisms domain -> codomain, in image-table order."""
    gens = domain.generator_set()
    if not gens:
        return [GroupMap(domain, codomain, (codomain.identity,) * 1)] if domain.order == 1 else []
    cand = []
    for g in gens:
        og = domain.element_order(g)
        cand.append([y for y in range(codomain.order) if og % codomain.element_order(y) == 0])
    found = []
    for images in product(*cand):
        ext = _extend_from_generators(domain, codomain, gens, images)
        if ext is not None:
            found.append(ext)
    found = sorted(set(found))
    return [GroupMap(domain, codomain, t) for t in found]


def automorphisms(group: FiniteGroup, bound: int = DEFAULT_AUT_BOUND) -> list[GroupMap]:
    """All automorphisms, found by matching generator images among elements of
    equal order. Sorted by image table, so the identity map comes first."""
    if group.order > bound:
        raise BoundExceededError(f"automorphism search bound {bound} exceeded by order {group.order}")
    n = group.order
    if n == 1:
        return [GroupMap(group, group, (0,))]
    gens = group.generator_set()
    orders = [group.element_order(x) for x in range(n)]
    cand = [[y for y in range(n) if orders[y] == orders[g]] for g in gens]
    found = []
    for images in product(*cand):
        ext = _extend_from_generators(group, group, gens, images)
        if ext is not None and len(set(ext)) == n:
            found.append(ext)
    found = sorted(set(found))
    return [GroupMap(group, group, t) for t in found]


def endomorphisms(group: FiniteGroup) -> list[tuple[int, ...]]:
    """All endomorphism tables of an abelian group, sorted.

    Candidate generator images are pruned by order divisibility before the
    extension check.
    """
    if not group.is_abelian:
        raise ValidationError("endomorphism enumeration requires an abelian group")
    return [m.images for m in homomorphisms(group, group)]


def is_isomorphic(a: FiniteGroup, b: FiniteGroup) -> Optional[GroupMap]:
    """An explicit isomorphism a -> b, or None."""
    if a.order != b.order:
        return None
    if a.order > DEFAULT_AUT_BOUND:
        raise BoundExceededError(f"isomorphism search unsupported above order {DEFAULT_AUT_BOUND}")
    if a.is_abelian != b.is_abelian or a.order_profile != b.order_profile:
        return None
    if a.order == 1:
        return GroupMap(a, b, (b.identity,))
    gens = a.generator_set()
    orders_b = [b.element_order(x) for x in range(b.order)]
    cand = [[y for y in range(b.order) if orders_b[y] == a.element_order(g)] for g in gens]
    for images in product(*cand):
        ext = _extend_from_generators(a, b, gens, images)
        if ext is not None and len(set(ext)) == a.order:
            return GroupMap(a, b, ext)
    return None


def invariant_factors(group: FiniteGroup) -> tuple[int, ...]:
    """Invariant factor chain d1 | d2 | ... of an abelian group, ascending.

    Derived from element-order statistics: for each prime p the counts
    #{x : x^(p^k) = 1} determine the partition of the p-part.
    """
    if not group.is_abelian:
        raise ValidationError("invariant factors only defined for abelian groups")
    n = group.order
    if n == 1:
        return ()
    orders = [group.element_order(x) for x in range(n)]
    primes = _prime_factors(n)
    per_prime: list[list[int]] = []
    for p in primes:
        exps = []
        k = 0
        prev = 0
        while True:
            k += 1
            c = sum(1 for o in orders if p ** k % o == 0)
            e = _int_log(c, p)
            parts_ge_k = e - prev
            if parts_ge_k == 0:
                break
            exps.append(parts_ge_k)
            prev = e
        # exps is the conjugate partition; transpose back
        lam = [sum(1 for m in exps if m >= i + 1) for i in range(max(exps))] if exps else []
        per_prime.append(sorted((p ** l for l in lam), reverse=True))
    width = max(len(ls) for ls in per_prime)
    factors = []
    for i in range(width):
        d = 1
        for ls in per_prime:
            if i < len(ls):
                d *= ls[i]
        factors.append(d)
    return tuple(sorted(factors))


def _int_log(c: int, p: int) -> int:
    e = 0
    while c > 1:
        if c % p:
            raise ValidationError("order statistics inconsistent with an abelian group")
        c //= p
        e += 1
    return e


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def abelian_label(group: FiniteGroup) -> str:
    factors = invariant_factors(group)
    if not factors:
        return "Z1"
    return "x".join(f"Z{d}" for d in factors)


def identify_small_group(group: FiniteGroup) -> str:
    """Match against the preset catalog: cyclics and their products (via
    abelian invariants), dihedral and quaternion groups. Anything else is
    reported with its order profile."""
    if group.order == 1:
        return "Z1"
    if group.is_abelian:
        return abelian_label(group)
    if group.order % 2 == 0 and group.order >= 6:
        n = group.order // 2
        if is_isomorphic(group, make_dihedral(n)) is not None:
            return f"D{n}"
    if group.order % 4 == 0 and group.order >= 8:
        if is_isomorphic(group, make_quaternion(group.order // 4)) is not None:
            return f"Q{group.order}"
    profile = ",".join(str(o) for o in group.order_profile)
    return f"unidentified order-{group.order} group (orders {profile})"
