from itertools import product

import pytest

from mla_forge.brackets import (
    bracket_equivalent,
    bracket_equivalent_mod_reversal,
    commutator_bracket,
    derived_subalgebra,
    end_mla,
    is_ideal,
    reverse_bracket,
    trivial_bracket,
    verify_mla,
)
from mla_forge.errors import BoundExceededError, ValidationError
from mla_forge.groups import (
    direct_product,
    endomorphisms,
    identify_small_group,
    make_cyclic,
    make_dihedral,
    make_quaternion,
    subgroup_generated,
)


def small_catalog():
    return [
        make_cyclic(1),
        make_cyclic(2),
        make_cyclic(6),
        make_cyclic(12),
        make_dihedral(2),
        make_dihedral(3),
        make_dihedral(4),
        make_dihedral(6),
        make_dihedral(8),
        make_quaternion(2),
        make_quaternion(4),
        direct_product(make_cyclic(2), make_cyclic(2)),
        direct_product(make_cyclic(4), make_dihedral(4)),
        direct_product(make_cyclic(3), make_dihedral(3)),
    ]


# -- verify_mla ---------------------------------------------------------------


def test_trivial_and_commutator_valid_on_catalog():
    # presets up to order 32
    for g in small_catalog():
        assert verify_mla(g, trivial_bracket(g)) == []
        assert verify_mla(g, commutator_bracket(g)) == []


def test_commutator_on_abelian_is_trivial():
    g = make_cyclic(6)
    assert commutator_bracket(g).star == trivial_bracket(g).star


def test_commutator_bracket_on_d4_generator_cell():
    g = make_dihedral(4)
    assert commutator_bracket(g).star[4][1] == 2  # a * b = b^2


def test_group_multiplication_is_not_a_bracket():
    g = make_dihedral(3)
    violations = verify_mla(g, g.cayley)
    assert violations
    first = violations[0]
    assert first.axiom == "A1"
    assert g.cayley[first.witness[0]][first.witness[0]] != 0


def test_violation_witnesses_reevaluate():
    g = make_dihedral(3)
    table = [list(r) for r in trivial_bracket(g).star]
    table[1][2] = 3  # poke one cell
    for v in verify_mla(g, table):
        x = v.witness
        if v.axiom == "A1":
            assert table[x[0]][x[0]] != 0
        elif v.axiom == "A2":
            a, b, c = x
            assert table[a][g.mul(b, c)] != g.mul(table[a][b], g.conj(b, table[a][c]))


def test_violation_cap():
    g = make_cyclic(6)
    assert len(verify_mla(g, g.cayley, max_violations=3)) == 3
    assert len(verify_mla(g, g.cayley, max_violations=16)) == 16


def test_border_cells_forced_by_a1_a2():
    # a table that is nonidentity at (x, e) must break A1 or A2
    g = make_cyclic(4)
    table = [list(r) for r in trivial_bracket(g).star]
    table[1][0] = 2
    axioms = {v.axiom for v in verify_mla(g, table)}
    assert axioms & {"A1", "A2"}


# -- derived subalgebra and ideals ----------------------------------------------


def test_derived_trivial():
    g = make_dihedral(4)
    assert derived_subalgebra(trivial_bracket(g)).members == (0,)


def test_derived_commutator_s3():
    g = make_dihedral(3)
    sub = derived_subalgebra(commutator_bracket(g))
    assert sub.order == 3
    assert sub.is_normal


def test_derived_is_normal_ideal_for_valid_brackets():
    from mla_forge.search import enumerate_brackets

    for g in (make_dihedral(3), make_dihedral(4), make_quaternion(2)):
        for bracket in enumerate_brackets(g).items:
            sub = derived_subalgebra(bracket)
            assert sub.is_normal
            assert is_ideal(bracket, sub)


def test_is_ideal_identity_subgroup():
    g = make_dihedral(3)
    assert is_ideal(commutator_bracket(g), (0,))


def test_is_ideal_z3_in_s3():
    g = make_dihedral(3)
    assert is_ideal(commutator_bracket(g), (0, 1, 2))


def test_is_ideal_rejects_non_normal():
    g = make_dihedral(3)
    refl = subgroup_generated(g, {3})
    assert refl.order == 2
    assert not is_ideal(commutator_bracket(g), refl)


# -- equivalence ------------------------------------------------------------------


def test_equivalent_identical_brackets():
    g = make_dihedral(3)
    m = bracket_equivalent(commutator_bracket(g), commutator_bracket(g))
    assert m is not None
    assert m.images == tuple(range(6))


def test_trivial_not_equivalent_to_commutator():
    g = make_dihedral(3)
    assert bracket_equivalent(trivial_bracket(g), commutator_bracket(g)) is None


def test_d4_seed_b_vs_b3_reversal_equivalence():
    # the two structures seeded a*b = b and a*b = b^3 are each other's
    # reversal; no automorphism intertwines them covariantly, but the
    # automorphism b -> b^3 does once arguments are swapped
    from mla_forge.search import enumerate_brackets

    g = make_dihedral(4)
    items = enumerate_brackets(g).items
    by_cell = {br.star[4][1]: br for br in items}
    b1, b3 = by_cell[1], by_cell[3]
    assert bracket_equivalent(b1, b3) is None
    found = bracket_equivalent_mod_reversal(b1, b3)
    assert found is not None
    phi, reversed_flag = found
    assert reversed_flag
    rev = reverse_bracket(b3).star
    assert all(
        phi.images[b1.star[x][y]] == rev[phi.images[x]][phi.images[y]]
        for x in range(8)
        for y in range(8)
    )
    assert reverse_bracket(b1).star == b3.star
    # the automorphism b -> b^3, a -> a also carries one to the other's reversal
    from mla_forge.groups import automorphisms

    flip = next(m for m in automorphisms(g) if m.images[1] == 3 and m.images[4] == 4)
    assert all(
        flip.images[b1.star[x][y]] == rev[flip.images[x]][flip.images[y]]
        for x in range(8)
        for y in range(8)
    )


def test_equivalence_is_equivalence_relation():
    from mla_forge.search import enumerate_brackets

    g = make_dihedral(4)
    items = enumerate_brackets(g).items
    for x in items:
        assert bracket_equivalent_mod_reversal(x, x) is not None
    for x in items:
        for y in items:
            assert (bracket_equivalent_mod_reversal(x, y) is None) == (
                bracket_equivalent_mod_reversal(y, x) is None
            )
    for x in items:
        for y in items:
            for z in items:
                xy = bracket_equivalent_mod_reversal(x, y) is not None
                yz = bracket_equivalent_mod_reversal(y, z) is not None
                xz = bracket_equivalent_mod_reversal(x, z) is not None
                if xy and yz:
                    assert xz


def test_reversal_is_pointwise_inverse_on_valid_brackets():
    g = make_dihedral(3)
    br = commutator_bracket(g)
    rev = reverse_bracket(br)
    assert all(
        rev.star[x][y] == g.inv(br.star[x][y]) for x in range(6) for y in range(6)
    )


def test_equivalent_requires_same_group():
    with pytest.raises(ValidationError):
        bracket_equivalent(trivial_bracket(make_cyclic(4)), trivial_bracket(make_cyclic(5)))


# -- endomorphism structure ---------------------------------------------------------


def test_end_mla_z4_bracket_is_trivial():
    # expected value computed by direct evaluation of the bracket formula over
    # all 16 endomorphism pairs: compositions commute, so every product is the
    # zero map
    H = make_cyclic(4)
    endos = endomorphisms(H)
    expected_trivial = True
    for f, g in product(endos, repeat=2):
        vals = tuple(
            H.mul(f[g[h]], g[f[H.inv(h)]]) for h in range(4)
        )
        if vals != (0, 0, 0, 0):
            expected_trivial = False
    end_group, end_bracket = end_mla(H)
    assert end_group.order == 4
    assert expected_trivial and end_bracket.is_trivial()


def test_end_mla_klein_four_is_valid_and_nontrivial():
    v4 = direct_product(make_cyclic(2), make_cyclic(2))
    end_group, end_bracket = end_mla(v4)
    assert end_group.order == 16
    assert verify_mla(end_group, end_bracket) == []
    assert not end_bracket.is_trivial()  # matrix algebra over F2 is noncommutative


def test_end_mla_identity_endo_self_bracket():
    H = make_cyclic(4)
    end_group, end_bracket = end_mla(H)
    endos = endomorphisms(H)
    ident = endos.index(tuple(range(4)))
    zero = endos.index((0, 0, 0, 0))
    assert end_bracket.star[ident][ident] == zero


def test_end_mla_valid_for_small_abelians():
    cases = [
        make_cyclic(n) for n in range(2, 13)
    ] + [
        direct_product(make_cyclic(2), make_cyclic(2)),
        direct_product(make_cyclic(2), make_cyclic(4)),
        direct_product(make_cyclic(2), make_cyclic(6)),
    ]
    for H in cases:
        end_group, end_bracket = end_mla(H)
        assert verify_mla(end_group, end_bracket) == [], H.name


def test_end_mla_rejects_nonabelian_and_oversize():
    with pytest.raises(ValidationError):
        end_mla(make_dihedral(3))
    big = direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2))
    with pytest.raises(BoundExceededError):
        end_mla(big)  # 512 endomorphisms


def test_derived_label_identification():
    g = direct_product(make_cyclic(4), make_dihedral(4))
    br = commutator_bracket(g)
    sub = derived_subalgebra(br)
    assert identify_small_group(sub.as_group()) == "Z2"
