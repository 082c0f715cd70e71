"""Bracket induction on split products H x| K.

Given an action of K on an abelian H, a verified bracket on K, a family of
endomorphisms Gamma_x of H indexed by K, and a pairing table beta on K x K
with values in H, the induced candidate bracket on the product is

    (h, x) * (k, y) = (h k Gamma_x(k) sigma_{x*y}(h^-1 k^-1 Gamma_y(h^-1))
                       beta(x, y),  x * y)

Six conditions C1..C6 characterize when this is a valid structure. C1 and C2
are direct statements about beta and Gamma. C3..C6 are evaluated here as
two-sided expansions on the product group, comparing the direct formula
evaluation of one side against the axiom-shaped expansion of the other:

    C3  ((h,x)(k,y)) * (l,z)   =  ^(h,x)((k,y)*(l,z)) . ((h,x)*(l,z))
    C4  (h,x) * ((k,y)(l,z))   =  ((h,x)*(k,y)) . ^(k,y)((h,x)*(l,z))
    C5  ((A*B) * ^B C)((B*C) * ^C A)((C*A) * ^A B) = 1
    C6  ^(l,z)((h,x)*(k,y))    =  ^(l,z)(h,x) * ^(l,z)(k,y)

Each side is computed independently from the candidate table and the group
law, which avoids any ambiguity in flattened one-line forms of C3 and C5.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Optional, Sequence

from .brackets import LieBracket, is_ideal, trivial_bracket, verify_mla
from .errors import (
    ConditionsViolatedError,
    NotIdealError,
    ReconstructionMismatchError,
    ValidationError,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    find_generators,
    make_semidirect,
    pair_index,
    validate_action_tables,
)

CONDITION_NAMES = ("C1", "C2", "C3", "C4", "C5", "C6")
CONDITION_EVAL_ORDER = ("C1", "C2", "C6", "C3", "C4", "C5")  # cheap first


@dataclass(frozen=True)
class Action:
    """A homomorphism K -> Aut(H) as per-element permutation tables."""

    H: FiniteGroup
    K: FiniteGroup
    sigma: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, H: FiniteGroup, K: FiniteGroup, sigma: Sequence[Sequence[int]]) -> "Action":
        if not H.is_abelian:
            raise ValidationError("actions are only supported on abelian H")
        rows = tuple(tuple(int(v) for v in row) for row in sigma)
        validate_action_tables(H, K, rows)
        return cls(H, K, rows)

    @classmethod
    def trivial(cls, H: FiniteGroup, K: FiniteGroup) -> "Action":
        row = tuple(range(H.order))
        return cls.make(H, K, (row,) * K.order)

    @classmethod
    def by_inversion(cls, H: FiniteGroup, K: FiniteGroup, inverting: Sequence[int]) -> "Action":
        """Elements listed in ``inverting`` act by h -> h^-1, the rest trivially."""
        ident = tuple(range(H.order))
        inv = tuple(H.inverse)
        flipped = set(inverting)
        return cls.make(H, K, tuple(inv if x in flipped else ident for x in range(K.order)))

    @property
    def is_trivial(self) -> bool:
        ident = tuple(range(self.H.order))
        return all(row == ident for row in self.sigma)

    def apply(self, x: int, h: int) -> int:
        return self.sigma[x][h]


def semidirect_product(action: Action, name: Optional[str] = None) -> FiniteGroup:
    return make_semidirect(action.H, action.K, action.sigma, name=name)


@dataclass(frozen=True)
class GammaMap:
    """A family of endomorphisms of H indexed by the elements of K."""

    H: FiniteGroup
    K: FiniteGroup
    gamma: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, H: FiniteGroup, K: FiniteGroup, gamma: Sequence[Sequence[int]]) -> "GammaMap":
        rows = tuple(tuple(int(v) for v in row) for row in gamma)
        if len(rows) != K.order:
            raise ValidationError(f"gamma needs {K.order} tables, got {len(rows)}")
        for x, row in enumerate(rows):
            if len(row) != H.order:
                raise ValidationError(f"gamma table for element {x} has wrong length")
            for a, b in product(range(H.order), repeat=2):
                if row[H.cayley[a][b]] != H.cayley[row[a]][row[b]]:
                    raise ValidationError(f"gamma table for element {x} is not an endomorphism of H")
        if rows[K.identity] != (H.identity,) * H.order:
            raise ValidationError("gamma at the identity of K must be the zero endomorphism")
        return cls(H, K, rows)

    @classmethod
    def zero(cls, H: FiniteGroup, K: FiniteGroup) -> "GammaMap":
        row = (H.identity,) * H.order
        return cls(H, K, (row,) * K.order)

    def apply(self, x: int, h: int) -> int:
        return self.gamma[x][h]

    def is_zero(self) -> bool:
        e = self.H.identity
        return all(v == e for row in self.gamma for v in row)


@dataclass(frozen=True)
class PairingMap:
    """A table K x K -> H; valid instances vanish on the border and diagonal."""

    H: FiniteGroup
    K: FiniteGroup
    beta: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, H: FiniteGroup, K: FiniteGroup, beta: Sequence[Sequence[int]]) -> "PairingMap":
        rows = tuple(tuple(int(v) for v in row) for row in beta)
        if len(rows) != K.order or any(len(r) != K.order for r in rows):
            raise ValidationError("beta table shape does not match |K| x |K|")
        for row in rows:
            for v in row:
                if not (0 <= v < H.order):
                    raise ValidationError(f"beta value {v} out of range for H")
        return cls(H, K, rows)

    @classmethod
    def trivial(cls, H: FiniteGroup, K: FiniteGroup) -> "PairingMap":
        row = (H.identity,) * K.order
        return cls(H, K, (row,) * K.order)

    def apply(self, x: int, y: int) -> int:
        return self.beta[x][y]

    def is_trivial(self) -> bool:
        e = self.H.identity
        return all(v == e for row in self.beta for v in row)

    @property
    def is_normalized(self) -> bool:
        e, eK = self.H.identity, self.K.identity
        return all(
            self.beta[x][eK] == e and self.beta[eK][x] == e and self.beta[x][x] == e
            for x in range(self.K.order)
        )


@dataclass(frozen=True)
class ConstructionData:
    """The full input tuple for bracket induction on H x| K."""

    action: Action
    star_k: LieBracket
    gamma: GammaMap
    beta: PairingMap

    @classmethod
    def make(
        cls, action: Action, star_k: LieBracket, gamma: GammaMap, beta: PairingMap
    ) -> "ConstructionData":
        H, K = action.H, action.K
        if star_k.group.cayley != K.cayley:
            raise ValidationError("star_k is not a bracket on K")
        for part, label in ((gamma, "gamma"), (beta, "beta")):
            if part.H.cayley != H.cayley or part.K.cayley != K.cayley:
                raise ValidationError(f"{label} does not match the action's H and K")
        if verify_mla(K, star_k):
            raise ValidationError("star_k is not a verified bracket on K")
        return cls(action, star_k, gamma, beta)

    @classmethod
    def all_trivial(cls, action: Action) -> "ConstructionData":
        return cls.make(
            action,
            trivial_bracket(action.K),
            GammaMap.zero(action.H, action.K),
            PairingMap.trivial(action.H, action.K),
        )

    @property
    def H(self) -> FiniteGroup:
        return self.action.H

    @property
    def K(self) -> FiniteGroup:
        return self.action.K

    @cached_property
    def product_group(self) -> FiniteGroup:
        return semidirect_product(self.action)


@dataclass(frozen=True)
class GammaViolation:
    identity: str  # "G1" or "G2"
    witness: tuple[int, int, int]  # (x, y, h)
    left: int
    right: int


def check_gamma_identities(
    action: Action,
    gamma: GammaMap,
    star_k: LieBracket,
    max_violations: int = 16,
) -> list[GammaViolation]:
    """Exhaustive check of the two compatibility identities, over x, y in K
    and h in H:

      G1  Gamma_{x y}(h)   = Gamma_x(h) sigma_x(Gamma_y(h))
      G2  Gamma_{x*y}(sigma_y(h)) = Gamma_x(Gamma_y(h)) Gamma_{x y x^-1}(Gamma_x(h^-1))

    Empty list = pass; this is exactly condition C2.
    """
    H, K = action.H, action.K
    if gamma.H.cayley != H.cayley or star_k.group.cayley != K.cayley:
        raise ValidationError("gamma/star_k do not match the action")
    mul_h, inv_h = H.cayley, H.inverse
    mul_k = K.cayley
    conj_k = K.conj_table
    g = gamma.gamma
    sig = action.sigma
    star = star_k.star
    out: list[GammaViolation] = []
    for x, y, h in product(range(K.order), range(K.order), range(H.order)):
        lhs = g[mul_k[x][y]][h]
        rhs = mul_h[g[x][h]][sig[x][g[y][h]]]
        if lhs != rhs:
            out.append(GammaViolation("G1", (x, y, h), lhs, rhs))
            if len(out) >= max_violations:
                return out
    for x, y, h in product(range(K.order), range(K.order), range(H.order)):
        lhs = g[star[x][y]][sig[y][h]]
        rhs = mul_h[g[x][g[y][h]]][g[conj_k[x][y]][g[x][inv_h[h]]]]
        if lhs != rhs:
            out.append(GammaViolation("G2", (x, y, h), lhs, rhs))
            if len(out) >= max_violations:
                return out
    return out


@dataclass(frozen=True)
class ConditionStatus:
    passed: Optional[bool]  # None = not evaluated (short-circuited run)
    witness: Optional[tuple[int, ...]]


@dataclass(frozen=True)
class ConditionReport:
    """Per-condition outcome for C1..C6."""

    statuses: tuple[tuple[str, ConditionStatus], ...]

    def status(self, name: str) -> ConditionStatus:
        for key, st in self.statuses:
            if key == name:
                return st
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        return all(st.passed is True for _, st in self.statuses)

    def first_failure(self) -> Optional[tuple[str, ConditionStatus]]:
        for key, st in self.statuses:
            if st.passed is False:
                return key, st
        return None

    @property
    def fully_evaluated(self) -> bool:
        return all(st.passed is not None for _, st in self.statuses)


def _report(results: dict[str, ConditionStatus]) -> ConditionReport:
    return ConditionReport(
        tuple((name, results.get(name, ConditionStatus(None, None))) for name in CONDITION_NAMES)
    )


def induced_star_table(data: ConstructionData) -> tuple[tuple[int, ...], ...]:
    """Evaluate the induction formula on every pair; always defined, valid only
    when the conditions hold."""
    H, K = data.H, data.K
    nH = H.order
    mul_h, inv_h = H.cayley, H.inverse
    sig = data.action.sigma
    star_k = data.star_k.star
    g = data.gamma.gamma
    b = data.beta.beta
    size = nH * K.order
    table = [[0] * size for _ in range(size)]
    for x in range(K.order):
        gx = g[x]
        bx = b[x]
        for h in range(nH):
            row = table[pair_index(h, x, nH)]
            ih = inv_h[h]
            for y in range(K.order):
                s = star_k[x][y]
                sig_s = sig[s]
                gy_ih = g[y][ih]
                for k in range(nH):
                    t = mul_h[mul_h[h][k]][gx[k]]
                    u = mul_h[mul_h[ih][inv_h[k]]][gy_ih]
                    t = mul_h[mul_h[t][sig_s[u]]][bx[y]]
                    row[pair_index(k, y, nH)] = pair_index(t, s, nH)
    return tuple(tuple(r) for r in table)


def direct_star_table(data: ConstructionData) -> tuple[tuple[int, ...], ...]:
    """The simplified formula for the trivial action:
    (h,x)*(k,y) = (Gamma_x(k) Gamma_y(h^-1) beta(x,y), x*y)."""
    H, K = data.H, data.K
    nH = H.order
    mul_h, inv_h = H.cayley, H.inverse
    star_k = data.star_k.star
    g = data.gamma.gamma
    b = data.beta.beta
    size = nH * K.order
    table = [[0] * size for _ in range(size)]
    for x in range(K.order):
        gx = g[x]
        bx = b[x]
        for h in range(nH):
            row = table[pair_index(h, x, nH)]
            ih = inv_h[h]
            for y in range(K.order):
                s = star_k[x][y]
                gy_ih = g[y][ih]
                for k in range(nH):
                    t = mul_h[mul_h[gx[k]][gy_ih]][bx[y]]
                    row[pair_index(k, y, nH)] = pair_index(t, s, nH)
    return tuple(tuple(r) for r in table)


def check_theorem_conditions(data: ConstructionData, short_circuit: bool = False) -> ConditionReport:
    """Evaluate C1..C6 exhaustively (evaluation order C1, C2, C6, C3, C4, C5;
    with ``short_circuit`` later conditions are skipped after a failure).

    Witnesses are the lexicographically first failing tuples: (x,) for C1,
    (x, y, h) for C2 and (x, y, z, h, k, l) for C3..C6.
    """
    results: dict[str, ConditionStatus] = {}
    checks: dict[str, Callable[[], Optional[tuple[int, ...]]]] = {
        "C1": lambda: _check_c1(data),
        "C2": lambda: _check_c2(data),
        "C6": None,  # filled below, shares precomputed tables
        "C3": None,
        "C4": None,
        "C5": None,
    }
    lazy: dict[str, Callable[[], Optional[tuple[int, ...]]]] = {}

    def ensure_tables():
        G = data.product_group
        star = induced_star_table(data)
        return G, star

    tables: list = []

    def table_check(kind: str) -> Callable[[], Optional[tuple[int, ...]]]:
        def run() -> Optional[tuple[int, ...]]:
            if not tables:
                tables.append(ensure_tables())
            G, star = tables[0]
            return _expansion_witness(data, G, star, kind)

        return run

    for kind in ("C6", "C3", "C4", "C5"):
        lazy[kind] = table_check(kind)
    checks.update(lazy)

    failed = False
    for name in CONDITION_EVAL_ORDER:
        if failed and short_circuit:
            continue
        witness = checks[name]()
        if witness is None:
            results[name] = ConditionStatus(True, None)
        else:
            results[name] = ConditionStatus(False, witness)
            failed = True
    return _report(results)


def _check_c1(data: ConstructionData) -> Optional[tuple[int, ...]]:
    b = data.beta.beta
    eH, eK = data.H.identity, data.K.identity
    for x in range(data.K.order):
        if b[x][eK] != eH or b[eK][x] != eH or b[x][x] != eH:
            return (x,)
    return None


def _check_c2(data: ConstructionData) -> Optional[tuple[int, ...]]:
    viol = check_gamma_identities(data.action, data.gamma, data.star_k, max_violations=1)
    return viol[0].witness if viol else None


def _expansion_witness(
    data: ConstructionData,
    G: FiniteGroup,
    star: tuple[tuple[int, ...], ...],
    kind: str,
) -> Optional[tuple[int, ...]]:
    """First witness (x, y, z, h, k, l) violating one two-sided expansion."""
    nH, nK = data.H.order, data.K.order
    mul = G.cayley
    conj = G.conj_table
    e = G.identity
    rng_k, rng_h = range(nK), range(nH)
    for x in rng_k:
        for y in rng_k:
            for z in rng_k:
                for h in rng_h:
                    A = h + nH * x
                    sA = star[A]
                    cA = conj[A]
                    for k in rng_h:
                        B = k + nH * y
                        sB = star[B]
                        cB = conj[B]
                        AB = mul[A][B]
                        sAB_row = star[AB]
                        vAB = sA[B]
                        for l in rng_h:
                            C = l + nH * z
                            if kind == "C3":
                                if sAB_row[C] != mul[cA[sB[C]]][sA[C]]:
                                    return (x, y, z, h, k, l)
                            elif kind == "C4":
                                if sA[mul[B][C]] != mul[vAB][cB[sA[C]]]:
                                    return (x, y, z, h, k, l)
                            elif kind == "C5":
                                t1 = star[vAB][cB[C]]
                                t2 = star[sB[C]][conj[C][A]]
                                t3 = star[star[C][A]][cA[B]]
                                if mul[mul[t1][t2]][t3] != e:
                                    return (x, y, z, h, k, l)
                            else:  # C6
                                cC = conj[C]
                                if cC[vAB] != star[cC[A]][cC[B]]:
                                    return (x, y, z, h, k, l)
    return None


def check_direct_conditions(data: ConstructionData) -> ConditionReport:
    """The simplified condition set for a trivial action, evaluated directly on
    the maps:

      C1  beta vanishes on border and diagonal
      C2  Gamma_{x y} = Gamma_x . Gamma_y   and
          Gamma_{x*y}(h) = Gamma_x(Gamma_y(h)) Gamma_y(Gamma_x(h^-1))
      C3  beta(x y, z) = beta(x, z) beta(y, z)
      C4  beta(x, y z) = beta(x, y) beta(x, z)
      C5  Gamma_{x*y}(l) Gamma_{y*z}(h) Gamma_{z*x}(k)
          Gamma_z(beta(x,y)^-1) Gamma_x(beta(y,z)^-1) Gamma_y(beta(z,x)^-1)
          beta(x*y, ^y z) beta(y*z, ^z x) beta(z*x, ^x y) = 1
      C6  beta(^z x, ^z y) = beta(x, y)

    Accepts exactly the data accepted by check_theorem_conditions when the
    action is trivial.
    """
    if not data.action.is_trivial:
        raise ValidationError("direct conditions require the trivial action")
    H, K = data.H, data.K
    mul_h, inv_h = H.cayley, H.inverse
    mul_k = K.cayley
    conj_k = K.conj_table
    g = data.gamma.gamma
    b = data.beta.beta
    star = data.star_k.star
    eH = H.identity
    nK, nH = K.order, H.order
    results: dict[str, ConditionStatus] = {}

    results["C1"] = _status_from(_check_c1(data))

    wit = None
    for x, y, h in product(range(nK), range(nK), range(nH)):
        if g[mul_k[x][y]][h] != mul_h[g[x][h]][g[y][h]]:
            wit = (x, y, h)
            break
        lhs = g[star[x][y]][h]
        rhs = mul_h[g[x][g[y][h]]][g[y][g[x][inv_h[h]]]]
        if lhs != rhs:
            wit = (x, y, h)
            break
    results["C2"] = _status_from(wit)

    wit = None
    for x, y, z in product(range(nK), repeat=3):
        if b[mul_k[x][y]][z] != mul_h[b[x][z]][b[y][z]]:
            wit = (x, y, z)
            break
    results["C3"] = _status_from(wit)

    wit = None
    for x, y, z in product(range(nK), repeat=3):
        if b[x][mul_k[y][z]] != mul_h[b[x][y]][b[x][z]]:
            wit = (x, y, z)
            break
    results["C4"] = _status_from(wit)

    wit = None
    for x in range(nK):
        for y in range(nK):
            sxy = star[x][y]
            for z in range(nK):
                syz = star[y][z]
                szx = star[z][x]
                const = mul_h[g[z][inv_h[b[x][y]]]][g[x][inv_h[b[y][z]]]]
                const = mul_h[const][g[y][inv_h[b[z][x]]]]
                const = mul_h[const][b[sxy][conj_k[y][z]]]
                const = mul_h[const][b[syz][conj_k[z][x]]]
                const = mul_h[const][b[szx][conj_k[x][y]]]
                for h in range(nH):
                    gh = g[syz][h]
                    for k in range(nH):
                        ghk = mul_h[gh][g[szx][k]]
                        for l in range(nH):
                            val = mul_h[mul_h[g[sxy][l]][ghk]][const]
                            if val != eH:
                                wit = (x, y, z, h, k, l)
                                break
                        if wit:
                            break
                    if wit:
                        break
                if wit:
                    break
            if wit:
                break
        if wit:
            break
    results["C5"] = _status_from(wit)

    wit = None
    for x, y, z in product(range(nK), repeat=3):
        if b[conj_k[z][x]][conj_k[z][y]] != b[x][y]:
            wit = (x, y, z)
            break
    results["C6"] = _status_from(wit)
    return _report(results)


def _status_from(witness: Optional[tuple[int, ...]]) -> ConditionStatus:
    return ConditionStatus(witness is None, witness)


def induce_bracket(data: ConstructionData, check: bool = True) -> LieBracket:
    """Build the induced bracket; raises ConditionsViolatedError when the data
    fails the conditions (the report is attached to the error)."""
    if check:
        report = check_theorem_conditions(data, short_circuit=True)
        if not report.passed:
            raise ConditionsViolatedError(report)
    return LieBracket(data.product_group, induced_star_table(data))


def induce_bracket_direct(data: ConstructionData, check: bool = True) -> LieBracket:
    """Direct-product specialization; agrees cell-for-cell with induce_bracket."""
    if not data.action.is_trivial:
        raise ValidationError("induce_bracket_direct requires the trivial action")
    if check:
        report = check_direct_conditions(data)
        if not report.passed:
            raise ConditionsViolatedError(report)
    return LieBracket(data.product_group, direct_star_table(data))


def split_factor_subgroup(action: Action, group: FiniteGroup) -> Subgroup:
    """The embedded copy of H inside the pair-encoded product."""
    nH = action.H.order
    members = tuple(sorted(pair_index(h, action.K.identity, nH) for h in range(nH)))
    return Subgroup(group, members)


def decompose_bracket(action: Action, bracket: LieBracket) -> ConstructionData:
    """Extract (star on K, Gamma, beta) from a verified bracket on H x| K for
    which H is an ideal, and verify the round trip reproduces the input.

    star_K[x][y] and beta(x,y) are the K- and H-components of (1,x)*(1,y);
    Gamma_x(k) is the H-component of (1,x)*(k,1).
    """
    H, K = action.H, action.K
    nH = H.order
    G = semidirect_product(action)
    if bracket.group.cayley != G.cayley:
        raise ValidationError("bracket does not live on the product of the given action")
    if verify_mla(bracket.group, bracket):
        raise ValidationError("bracket is not a verified structure")
    h_sub = split_factor_subgroup(action, bracket.group)
    if not is_ideal(bracket, h_sub):
        raise NotIdealError("H is not an ideal of the given bracket")

    star = bracket.star
    eH, eK = H.identity, K.identity
    for h in range(nH):
        for k in range(nH):
            if star[pair_index(h, eK, nH)][pair_index(k, eK, nH)] != G.identity:
                raise ReconstructionMismatchError(
                    "bracket is nontrivial on H itself; outside the split parametrization"
                )
    star_k_rows = []
    beta_rows = []
    for x in range(K.order):
        sk_row = []
        b_row = []
        for y in range(K.order):
            v = star[pair_index(eH, x, nH)][pair_index(eH, y, nH)]
            b_row.append(v % nH)
            sk_row.append(v // nH)
        star_k_rows.append(sk_row)
        beta_rows.append(b_row)
    gamma_rows = []
    for x in range(K.order):
        row = []
        for k in range(nH):
            v = star[pair_index(eH, x, nH)][pair_index(k, eK, nH)]
            if v // nH != eK:
                raise ReconstructionMismatchError(
                    f"(1,{x})*({k},1) leaves H; outside the split parametrization"
                )
            row.append(v % nH)
        gamma_rows.append(row)
    try:
        data = ConstructionData.make(
            action,
            LieBracket.make(K, star_k_rows),
            GammaMap.make(H, K, gamma_rows),
            PairingMap.make(H, K, beta_rows),
        )
    except ValidationError as exc:
        raise ReconstructionMismatchError(f"extracted data is not valid construction data: {exc}")
    report = check_theorem_conditions(data, short_circuit=True)
    if not report.passed:
        name, st = report.first_failure()
        raise ReconstructionMismatchError(f"extracted data fails condition {name} at {st.witness}")
    if induced_star_table(data) != bracket.star:
        raise ReconstructionMismatchError("induced bracket does not reproduce the input table")
    return data


def section_independence_check(action: Action, bracket: LieBracket) -> bool:
    """Recompute the conjugation action and bracket family against every
    section x -> (g(x), x) with g(identity) = identity; true iff all sections
    give the canonical values."""
    H, K = action.H, action.K
    nH = H.order
    G = semidirect_product(action)
    if bracket.group.cayley != G.cayley:
        raise ValidationError("bracket does not live on the product of the given action")
    mul, inv = G.cayley, G.inverse
    star = bracket.star
    eH, eK = H.identity, K.identity
    sig = action.sigma
    canon_gamma = []
    for x in range(K.order):
        row = []
        for k in range(nH):
            v = star[pair_index(eH, x, nH)][pair_index(k, eK, nH)]
            if v // nH != eK:
                return False
            row.append(v % nH)
        canon_gamma.append(row)
    others = [x for x in range(K.order) if x != eK]
    h_elems = [pair_index(k, eK, nH) for k in range(nH)]
    for assignment in product(range(nH), repeat=len(others)):
        g = [eH] * K.order
        for pos, x in enumerate(others):
            g[x] = assignment[pos]
        ok = True
        for x in range(K.order):
            t_x = pair_index(g[x], x, nH)
            t_inv = inv[t_x]
            row_mul = mul[t_x]
            srow = star[t_x]
            sig_x = sig[x]
            cg_x = canon_gamma[x]
            for k in range(nH):
                he = h_elems[k]
                if mul[row_mul[he]][t_inv] != pair_index(sig_x[k], eK, nH):
                    ok = False
                    break
                if srow[he] != pair_index(cg_x[k], eK, nH):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            return False
    return True


def sigma_gamma_commute_check(action: Action, gamma: GammaMap) -> bool:
    """For abelian K: sigma_x and Gamma_z commute as maps on H, for all x, z."""
    if not action.K.is_abelian:
        raise ValidationError("commuting check only applies to abelian K")
    sig = action.sigma
    g = gamma.gamma
    for x, z, h in product(range(action.K.order), range(action.K.order), range(action.H.order)):
        if sig[x][g[z][h]] != g[z][sig[x][h]]:
            return False
    return True


# ---------------------------------------------------------------------------
# pairing enumeration


def enumerate_bilinear_pairings(
    K: FiniteGroup,
    H: FiniteGroup,
    alternating: bool = True,
    conj_invariant: bool = True,
) -> list[PairingMap]:
    """All bilinear tables K x K -> H (beta(xy,z) = beta(x,z)beta(y,z) and
    symmetrically), optionally alternating (vanishing diagonal) and invariant
    under simultaneous conjugation. Built by assigning values on generator
    pairs, propagating bilinearity, then filtering."""
    action = Action.trivial(H, K)
    return enumerate_pairing_tables(
        action, trivial_bracket(K), alternating=alternating, conj_invariant=conj_invariant
    )


def enumerate_pairing_tables(
    action: Action,
    star_k: LieBracket,
    alternating: bool = True,
    conj_invariant: bool = True,
) -> list[PairingMap]:
    """Pairing tables compatible with the induction conditions.

    Setting h = k = l = 1 in the two-sided expansions C3, C4 and C6 leaves
    constraints on beta alone:

      T1  beta(x y, z) = sigma_x(beta(y, z)) sigma_{^x(y*z)}(beta(x, z))
      T2  beta(x, y z) = beta(x, y) sigma_{(x*y) y}(beta(x, z))
      T3  beta(^z x, ^z y) = sigma_z(beta(x, y))

    For the trivial action these are plain bilinearity plus conjugation
    invariance. Values on generator pairs determine the table through T1/T2;
    every candidate is then checked against all constraint instances.
    """
    H, K = action.H, action.K
    nH, nK = H.order, K.order
    eH, eK = H.identity, K.identity
    mul_h = H.cayley
    mul_k, inv_k = K.cayley, K.inverse
    conj_k = K.conj_table
    sig = action.sigma
    star = star_k.star
    gens = find_generators(K)
    if not gens:
        return [PairingMap.trivial(H, K)]
    word: dict[int, tuple[int, ...]] = {eK: ()}
    frontier = [eK]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul_k[x][g]
                if y not in word:
                    word[y] = word[x] + (g,)
                    nxt.append(y)
        frontier = nxt

    cells = [(a, b) for a in gens for b in gens if not (alternating and a == b)]

    def build(seed: dict[tuple[int, int], int]) -> tuple[tuple[int, ...], ...]:
        memo: dict[tuple[int, int], int] = dict(seed)

        def beta(x: int, y: int) -> int:
            if x == eK or y == eK:
                return eH
            got = memo.get((x, y))
            if got is not None:
                return got
            if alternating and x == y and len(word[x]) == 1:
                v = eH
            elif len(word[x]) > 1:
                s = word[x][0]
                rest = mul_k[inv_k[s]][x]
                v = mul_h[sig[s][beta(rest, y)]][sig[conj_k[s][star[rest][y]]][beta(s, y)]]
            else:
                s = word[y][0]
                rest = mul_k[inv_k[s]][y]
                v = mul_h[beta(x, s)][sig[mul_k[star[x][s]][s]][beta(x, rest)]]
            memo[(x, y)] = v
            return v

        return tuple(tuple(beta(x, y) for y in range(nK)) for x in range(nK))

    def acceptable(b: tuple[tuple[int, ...], ...]) -> bool:
        for x in range(nK):
            if b[x][eK] != eH or b[eK][x] != eH:
                return False
            if alternating and b[x][x] != eH:
                return False
        for x, y, z in product(range(nK), repeat=3):
            if b[mul_k[x][y]][z] != mul_h[sig[x][b[y][z]]][sig[conj_k[x][star[y][z]]][b[x][z]]]:
                return False
            if b[x][mul_k[y][z]] != mul_h[b[x][y]][sig[mul_k[star[x][y]][y]][b[x][z]]]:
                return False
            if conj_invariant and b[conj_k[z][x]][conj_k[z][y]] != sig[z][b[x][y]]:
                return False
        return True

    found = []
    for values in product(range(nH), repeat=len(cells)):
        seed = dict(zip(cells, values))
        table = build(seed)
        if acceptable(table):
            found.append(table)
    found = sorted(set(found))
    return [PairingMap(H, K, t) for t in found]
