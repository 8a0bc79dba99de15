import pytest

from bigalg import lie
from bigalg.acceptance import (
    octet_big_relations,
    octet_medium_relations,
    sl2_rank1_relation,
)
from bigalg.bigalgebra import BigGenerators, RelationRing
from bigalg.linalg import QMatrix, invert
from bigalg.multipoly import MultiPoly, VarSet, rat
from bigalg.reps import build_irrep
from bigalg.twining import (
    check_intertwiner,
    coinvariant_octet_report,
    fixed_scheme_relations,
    intertwiner,
    jantzen_trace,
    pinning_w0,
    sigma_coord_matrix,
    sigma_eigenvalues,
    sigma_on_element,
    sigma_on_invariants,
    sigma_on_matrix,
)


def test_sigma_fixes_principal_triple(L3):
    assert sigma_on_matrix(L3, L3.e) == L3.e
    assert sigma_on_matrix(L3, L3.f) == L3.f
    assert sigma_on_matrix(L3, L3.h) == L3.h


def test_sigma_is_involution(L3, L4):
    for L in (L3, L4):
        sg = sigma_coord_matrix(L)
        assert sg * sg == QMatrix.identity(L.dim)
        # sigma preserves brackets: sigma[x, y] = [sigma x, sigma y]
        import random

        rng = random.Random(1)
        for _ in range(4):
            x = [rat(rng.randint(-2, 2)) for _ in range(L.dim)]
            y = [rat(rng.randint(-2, 2)) for _ in range(L.dim)]
            sx = sg.mul_vec(x)
            sy = sg.mul_vec(y)
            assert L.bracket_coords(sx, sy) == sg.mul_vec(L.bracket_coords(x, y))


def test_sigma_requires_invariant_weight(L3):
    lopsided = build_irrep(L3, (2, 0))
    with pytest.raises(ValueError):
        intertwiner(lopsided)


def test_intertwiner_conjugates(octet):
    s = intertwiner(octet)
    assert check_intertwiner(octet, s)
    assert s * s == QMatrix.identity(octet.dim)


def test_sigma_eigenvalues_on_generators(octet, octet_gens):
    eigs = sigma_eigenvalues(octet, octet_gens.ops)
    assert eigs == {"M1": 1, "M2": -1, "N1": -1}


def test_sigma_squares_to_identity_on_generators(octet, octet_gens):
    s = intertwiner(octet)
    sg = sigma_coord_matrix(octet.L)
    for op in octet_gens.ops:
        once = sigma_on_element(op.kirillov, s, sg)
        from bigalg.kirillov import KirillovElement

        twice = sigma_on_element(
            KirillovElement(octet, once, op.kirillov.degree), s, sg
        )
        assert twice == op.kirillov.mat


def test_sigma_on_invariants_parity(L3, L4):
    # oracle: c_k(-X^T) = (-1)^k c_k(X), and conjugation never changes c_k
    assert sigma_on_invariants(L3) == {2: 1, 3: -1}
    assert sigma_on_invariants(L4) == {2: 1, 3: -1, 4: 1}


def test_fixed_scheme_single_parabola(octet_gens):
    rr_big = RelationRing(
        [octet_gens.by_label["M1"], octet_gens.by_label["N1"]], 3
    )
    rr_med = RelationRing(
        [octet_gens.by_label["M1"], octet_gens.by_label["M2"]], 3
    )
    rels = octet_big_relations(rr_big.ring) + octet_medium_relations(rr_med.ring)
    co = coinvariant_octet_report(rels, sl2_rank1_relation())
    assert co["all_multiples_of_parabola"]
    # the parabola is 3(M1^2 + 4 c2)
    ring = co["parabola"].ring
    m1 = MultiPoly.variable(ring, "M1")
    c2 = MultiPoly.variable(ring, "c2")
    lead = co["parabola"].coeff((2, 0))
    assert co["parabola"].scale(1 / lead) == m1 * m1 + c2.scale(4)
    assert co["relation_matches"]
    assert co["dictionary_c2_scale"] == 4
    assert all(co["quotient_dims"][d] == 1 for d in range(9))


def test_coinvariants_match_rank_one_algebra(L2, octet_gens):
    # independent side: graded dimensions of the rank-one algebra
    from bigalg.bigalgebra import derive_relations

    std = build_irrep(L2, (1,))
    g2 = BigGenerators(std)
    _, info = derive_relations(std, g2.ops, 8)
    dims = {row["degree"]: row["algebra_dim"] for row in info}
    rr_big = RelationRing(
        [octet_gens.by_label["M1"], octet_gens.by_label["N1"]], 3
    )
    co = coinvariant_octet_report(
        octet_big_relations(rr_big.ring), sl2_rank1_relation()
    )
    for d in range(1, 9):
        assert co["quotient_dims"][d] == dims[d]


def test_jantzen_trace_octet(octet):
    # the rank-one module matched to the octet has no zero weight space
    assert jantzen_trace(octet) == 0


def test_jantzen_trace_full_space(octet):
    # sanity: the trace over the whole module equals the signed fixed count
    s = intertwiner(octet)
    total = s.trace()
    # chi(sigma) on the octet: the twining character of the rank-one module
    # at weight multiplicities (2 fixed weight lines, swap on the rest)
    assert total == 2
