from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mla_forge.errors import BoundExceededError, ValidationError
from mla_forge.groups import (
    FiniteGroup,
    GroupMap,
    abelian_label,
    automorphisms,
    commutator,
    conjugate,
    direct_product,
    endomorphisms,
    find_generators,
    identify_small_group,
    invariant_factors,
    is_isomorphic,
    make_cyclic,
    make_dihedral,
    make_quaternion,
    make_semidirect,
    subgroup_generated,
    verify_group,
)

from oracle import bijection_scan_automorphisms, map_scan_endomorphisms


def inversion_action(H, K):
    ident = list(range(H.order))
    inv = list(H.inverse)
    return [ident if x == K.identity else inv for x in range(K.order)]


def preset_catalog():
    return [
        make_cyclic(1),
        make_cyclic(2),
        make_cyclic(4),
        make_cyclic(6),
        make_cyclic(12),
        make_dihedral(2),
        make_dihedral(3),
        make_dihedral(4),
        make_dihedral(6),
        make_quaternion(1),
        make_quaternion(2),
        make_quaternion(3),
        direct_product(make_cyclic(2), make_cyclic(2)),
        direct_product(make_cyclic(4), make_dihedral(4)),
    ]


# -- presets ------------------------------------------------------------------


def test_every_preset_verifies_clean():
    for g in preset_catalog():
        assert verify_group(g.cayley, generators=g.generators) == []


def test_cyclic_trivial():
    g = make_cyclic(1)
    assert g.cayley == ((0,),)


def test_cyclic_four():
    g = make_cyclic(4)
    assert g.cayley[1][3] == 0
    assert g.inverse[1] == 3


def test_cyclic_six_element_order():
    assert make_cyclic(6).element_order(2) == 3


def test_dihedral_presentation_relation():
    # a b = b^-1 a at the documented indices a=4, b=1
    g = make_dihedral(4)
    assert g.order == 8
    a, b = 4, 1
    assert g.mul(a, b) == g.mul(g.inv(b), a)


def test_dihedral_two_is_klein():
    g = make_dihedral(2)
    assert g.is_abelian
    v4 = direct_product(make_cyclic(2), make_cyclic(2))
    assert is_isomorphic(g, v4) is not None


def test_dihedral_three_is_symmetric_group():
    # brute-force S3 from permutations of three points
    perms = []
    for p in product(range(3), repeat=3):
        if len(set(p)) == 3:
            perms.append(p)
    perms.sort()
    idx = {p: i for i, p in enumerate(perms)}
    table = [
        [idx[tuple(p[q[i]] for i in range(3))] for q in perms]
        for p in perms
    ]
    s3 = FiniteGroup.from_table("S3-perms", table)
    d3 = make_dihedral(3)
    assert not d3.is_abelian
    assert is_isomorphic(d3, s3) is not None


def test_quaternion_relations():
    q8 = make_quaternion(2)
    a, b = 1, 4
    assert q8.mul(b, b) == q8.mul(a, a)  # b^2 = a^2
    assert q8.mul(q8.mul(b, b), q8.mul(b, b)) == 0  # b^4 = 1


def test_quaternion_unique_involution():
    q8 = make_quaternion(2)
    assert sum(1 for x in range(8) if q8.element_order(x) == 2) == 1


def test_quaternion_one_is_z4():
    assert is_isomorphic(make_quaternion(1), make_cyclic(4)) is not None


def test_semidirect_inversion_gives_s3():
    H, K = make_cyclic(3), make_cyclic(2)
    g = make_semidirect(H, K, inversion_action(H, K))
    assert g.order == 6
    assert not g.is_abelian
    assert is_isomorphic(g, make_dihedral(3)) is not None


def test_semidirect_trivial_equals_direct_product():
    H, K = make_cyclic(4), make_dihedral(3)
    trivial = [list(range(H.order)) for _ in range(K.order)]
    assert make_semidirect(H, K, trivial).cayley == direct_product(H, K).cayley


def test_semidirect_center_contains_direct_factor():
    g = direct_product(make_cyclic(4), make_dihedral(4))
    assert g.order == 32
    for h in range(4):  # embedded H = indices 0..3
        assert all(g.mul(h, x) == g.mul(x, h) for x in range(32))


def test_semidirect_rejects_nonabelian_h():
    H, K = make_dihedral(3), make_cyclic(2)
    trivial = [list(range(H.order)) for _ in range(K.order)]
    with pytest.raises(ValidationError):
        make_semidirect(H, K, trivial)


# -- verify_group on broken tables ---------------------------------------------


def test_verify_group_latin_violation():
    table = [[0, 1], [1, 1]]
    axioms = {v.axiom for v in verify_group(table)}
    assert "latin-row" in axioms or "latin-column" in axioms


def test_verify_group_broken_associativity_reports_triple():
    # relabeling one cell of Z5 keeps rows/columns latin but breaks associativity
    g = make_cyclic(5)
    table = [list(r) for r in g.cayley]
    table[1][1], table[1][2] = table[1][2], table[1][1]
    report = verify_group(table)
    assert any(v.axiom == "associativity" and len(v.witness) == 3 for v in report)
    for v in report:
        if v.axiom == "associativity":
            x, y, z = v.witness
            assert table[table[x][y]][z] != table[x][table[y][z]]
            break


def test_verify_group_accepts_valid():
    assert verify_group(make_cyclic(4).cayley) == []


# -- conjugation and commutators -------------------------------------------------


def test_conjugate_commutator_abelian():
    g = make_cyclic(6)
    for x, y in product(range(6), repeat=2):
        assert conjugate(g, x, y) == y
        assert commutator(g, x, y) == 0


def test_d4_commutator_of_generators():
    g = make_dihedral(4)
    a, b = 4, 1
    assert commutator(g, a, b) == 2  # b^2


def test_s3_commutator_subgroup_has_order_three():
    g = make_dihedral(3)
    comms = {commutator(g, x, y) for x in range(6) for y in range(6)}
    assert subgroup_generated(g, comms).order == 3


# -- automorphisms ------------------------------------------------------------


def test_automorphism_counts():
    assert len(automorphisms(make_cyclic(4))) == 2
    assert len(automorphisms(make_dihedral(3))) == 6
    assert len(automorphisms(make_dihedral(4))) == 8


@pytest.mark.parametrize("group", [make_cyclic(6), make_dihedral(3), make_dihedral(4), make_quaternion(2)])
def test_automorphisms_match_bijection_scan(group):
    ours = sorted(m.images for m in automorphisms(group))
    assert ours == bijection_scan_automorphisms(group)


def test_automorphisms_form_group():
    g = make_dihedral(4)
    autos = automorphisms(g)
    tables = {m.images for m in autos}
    assert tuple(range(8)) in tables
    for m in autos:
        assert m.inverse_map().images in tables
        for m2 in autos:
            assert m.compose(m2).images in tables


def test_automorphism_bound():
    with pytest.raises(BoundExceededError):
        automorphisms(make_cyclic(9), bound=8)


# -- subgroups -----------------------------------------------------------------


def test_subgroup_generated_empty_is_identity():
    g = make_dihedral(4)
    assert subgroup_generated(g, ()).members == (0,)


def test_subgroup_generated_rotation():
    g = make_dihedral(4)
    assert subgroup_generated(g, {1}).members == (0, 1, 2, 3)


def test_subgroup_generated_idempotent():
    g = make_dihedral(4)
    s = subgroup_generated(g, {1, 4})
    assert subgroup_generated(g, s.members).members == s.members


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(min_value=0, max_value=11), max_size=4))
def test_subgroup_generated_idempotent_property(seeds):
    g = make_dihedral(6)
    s = subgroup_generated(g, seeds)
    assert subgroup_generated(g, s.members).members == s.members


def test_subgroup_as_group_roundtrip():
    g = make_dihedral(3)
    s = subgroup_generated(g, {1})
    assert identify_small_group(s.as_group()) == "Z3"


# -- isomorphism and identification ----------------------------------------------


def test_crt_isomorphism():
    assert is_isomorphic(direct_product(make_cyclic(2), make_cyclic(3)), make_cyclic(6)) is not None


def test_d4_not_isomorphic_to_q8():
    assert is_isomorphic(make_dihedral(4), make_quaternion(2)) is None


def test_isomorphism_reflexive_symmetric_and_valid():
    catalog = [make_cyclic(6), make_dihedral(4), make_quaternion(2)]
    for g in catalog:
        m = is_isomorphic(g, g)
        assert m is not None
        GroupMap.make(g, g, m.images)  # revalidates the homomorphism invariant
    a = direct_product(make_cyclic(2), make_cyclic(3))
    b = make_cyclic(6)
    assert (is_isomorphic(a, b) is None) == (is_isomorphic(b, a) is None)


def test_invariant_factors():
    assert invariant_factors(make_cyclic(6)) == (6,)
    z2xz4 = direct_product(make_cyclic(2), make_cyclic(4))
    assert invariant_factors(z2xz4) == (2, 4)
    assert abelian_label(z2xz4) == "Z2xZ4"


def test_identify_small_groups():
    assert identify_small_group(make_cyclic(1)) == "Z1"
    assert identify_small_group(direct_product(make_cyclic(2), make_cyclic(4))) == "Z2xZ4"
    assert identify_small_group(make_dihedral(4)) == "D4"
    assert identify_small_group(make_quaternion(2)) == "Q8"


def test_identify_outside_catalog():
    # A4 as (Z2 x Z2) x| Z3 with a cyclic shift action
    v4 = direct_product(make_cyclic(2), make_cyclic(2))
    z3 = make_cyclic(3)
    # elements of v4: 0, a=1, b=2, ab=3; the 3-cycle a -> b -> ab
    shift = [0, 2, 3, 1]
    shift2 = [shift[v] for v in shift]
    a4 = make_semidirect(v4, z3, [list(range(4)), shift, shift2], name="A4")
    label = identify_small_group(a4)
    assert label.startswith("unidentified order-12")


# -- endomorphisms -----------------------------------------------------------------


def test_endomorphisms_cyclic_are_multiplications():
    endos = endomorphisms(make_cyclic(4))
    assert len(endos) == 4
    expected = sorted(tuple((k * h) % 4 for h in range(4)) for k in range(4))
    assert endos == expected
    assert len(endomorphisms(make_cyclic(5))) == 5


def test_endomorphisms_klein_match_map_scan():
    v4 = direct_product(make_cyclic(2), make_cyclic(2))
    endos = endomorphisms(v4)
    assert len(endos) == 16
    assert endos == map_scan_endomorphisms(v4)


def test_endomorphisms_reject_nonabelian():
    with pytest.raises(ValidationError):
        endomorphisms(make_dihedral(3))


# -- misc properties -----------------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=15), st.integers(min_value=0, max_value=15), st.integers(min_value=0, max_value=15))
def test_conjugation_is_action_property(x, y, g):
    grp = make_dihedral(8)
    assert conjugate(grp, 0, g) == g
    lhs = conjugate(grp, x, conjugate(grp, y, g))
    rhs = conjugate(grp, grp.mul(x, y), g)
    assert lhs == rhs


def test_find_generators_generate():
    for g in preset_catalog():
        gens = find_generators(g)
        assert subgroup_generated(g, gens).order == g.order
