import random
from itertools import combinations

import pytest

from bigalg import lie
from bigalg.kirillov import (
    KirillovElement,
    big_operator,
    commutator,
    equivariance_check,
    homogeneity_check,
    medium_operator,
    scalar_element,
    small_operator,
    wei_D,
)
from bigalg.linalg import QMatrix, invert
from bigalg.multipoly import MultiPoly, rat
from bigalg.polymatrix import PolyMatrix


def test_small_operator_evaluations(octet, sl3_standard, L3):
    m1 = small_operator(octet)
    assert m1.evaluate(L3.h_coords) == octet.rho_h
    assert m1.evaluate([0] * L3.dim).is_zero()
    # the builder reproduces the defining basis for the standard module,
    # so evaluating the small operator at a point returns that very matrix
    m1_std = small_operator(sl3_standard)
    a = lie.companion_point(3, [5, -2])
    assert m1_std.evaluate(L3.coords_of(a)) == a


def test_invariant_c2_sl2_is_determinant(L2):
    # oracle: det of the generic traceless 2x2 matrix expanded by hand
    ring = L2.x_ring
    names = dict(zip(L2.basis_names, ring.names))
    x12 = MultiPoly.variable(ring, names["E12"])
    x21 = MultiPoly.variable(ring, names["E21"])
    xh = MultiPoly.variable(ring, names["H1"])
    det = -(xh * xh) - x12 * x21
    assert L2.invariant_ck(2) == det


def test_invariant_ck_basics(L3):
    zeros = {nm: 0 for nm in L3.x_ring.names}
    assert L3.invariant_ck(2).evaluate(zeros) == 0
    assert L3.invariant_ck(3).evaluate(zeros) == 0
    values = dict(zip(L3.x_ring.names, L3.h_coords))
    assert L3.invariant_ck(2).evaluate(values) == -4
    with pytest.raises(ValueError):
        L3.invariant_ck(4)


def test_medium_k2_is_minus_small(octet):
    med = medium_operator(octet, 2)
    small = small_operator(octet)
    assert med.mat == small.mat * rat(-1)
    assert med.degree == 1


def test_medium_k3_is_traceless_adjugate(octet, L3):
    # oracle: the adjugate of h with its trace projected away, applied via rho
    med = medium_operator(octet, 3)
    adj_h = QMatrix.diagonal([0, -4, 0])  # adjugate of diag(2, 0, -2)
    trace_part = adj_h.trace() / 3
    adj_tl = adj_h - QMatrix.identity(3) * trace_part
    expected = octet.op(L3.coords_of(adj_tl)) * rat(-1)
    assert med.evaluate(L3.h_coords) == expected
    assert med.evaluate([0] * L3.dim).is_zero()


def test_wei_d_of_constant_vanishes(octet):
    const = scalar_element(octet, MultiPoly.const(octet.L.x_ring, 7))
    assert wei_D(const).is_zero()


def test_wei_d_ratio_to_small(octet, sl2_sym4):
    for rep in (octet, sl2_sym4):
        n = rep.L.n
        g12 = wei_D(scalar_element(rep, rep.L.invariant_ck(2)))
        small = small_operator(rep)
        assert g12.mat == small.mat * rat(-1, 4 * n)


def test_iterated_d_gives_degree_one(octet):
    g23 = big_operator(octet, 2, 3)
    assert g23.degree == 1
    assert not g23.is_zero()
    assert homogeneity_check(g23)


def test_big_operator_index_guard(octet, sl2_sym4):
    with pytest.raises(ValueError):
        big_operator(sl2_sym4, 1, 3)
    with pytest.raises(ValueError):
        big_operator(octet, 3, 3)
    # sl_2 has exactly one generator index pair
    b = big_operator(sl2_sym4, 1, 2)
    assert b.degree == 1


def test_degrees_and_homogeneity(L4, decuplet):
    from bigalg.reps import fundamental_rep

    w2 = fundamental_rep(L4, 2)
    for k in range(2, 5):
        for i in range(1, k):
            b = big_operator(w2, i, k)
            assert b.degree == k - i
            if not b.is_zero():
                assert b.mat.is_homogeneous() == k - i
    for k in range(2, 4):
        for i in range(1, k):
            b = big_operator(decuplet, i, k)
            assert homogeneity_check(b)


def test_equivariance(octet, decuplet, L3):
    assert equivariance_check(small_operator(octet))
    for i, k in [(1, 2), (1, 3), (2, 3)]:
        assert equivariance_check(big_operator(decuplet, i, k))
    # negative control: a non-invariant linear form times the identity
    ring = L3.x_ring
    bad = scalar_element(octet, MultiPoly.variable(ring, "x0"))
    assert not equivariance_check(bad)


def test_commutators(octet):
    m1 = small_operator(octet)
    assert commutator(m1, m1).is_zero()
    gens = [big_operator(octet, i, k) for i, k in [(1, 2), (1, 3), (2, 3)]]
    mediums = gens[:2]
    for a, b in combinations(gens, 2):
        assert commutator(a, b).is_zero()
    probe = wei_D(m1 * m1)
    for m in mediums:
        assert commutator(m, probe).is_zero()


def wei_D_in_basis(elem, t):
    """D computed in the transformed basis X'_j = sum_i T_ij X_i."""
    rep = elem.rep
    L = rep.L
    ring = L.x_ring
    t_inv = invert(t)
    # rho of the new basis elements and the new Killing matrix
    new_rho = []
    for j in range(L.dim):
        m = QMatrix.zeros(rep.dim, rep.dim)
        for i in range(L.dim):
            if t.a[i][j]:
                m = m + rep.rho[i] * t.a[i][j]
        new_rho.append(m)
    kappa = t.transpose() * L.killing_form * t
    kappa_inv = invert(kappa)
    duals = []
    for j in range(L.dim):
        m = QMatrix.zeros(rep.dim, rep.dim)
        for k in range(L.dim):
            if kappa_inv.a[j][k]:
                m = m + new_rho[k] * kappa_inv.a[j][k]
        duals.append(m)
    # partials in the new coordinates: d/dx'_j = sum_i T_ij d/dx_i
    total = PolyMatrix.zeros(ring, rep.dim, rep.dim)
    for j in range(L.dim):
        d = PolyMatrix.zeros(ring, rep.dim, rep.dim)
        for i in range(L.dim):
            if t.a[i][j]:
                d = d + elem.mat.diff("x%d" % i) * t.a[i][j]
        if not d.is_zero():
            total = total + d.mul_qmatrix_left(duals[j])
    return total * rat(1, 2)


@pytest.mark.parametrize("n", [2, 3])
def test_wei_d_basis_independence(n, L2, L3):
    from bigalg.reps import build_irrep

    L = L2 if n == 2 else L3
    rep = build_irrep(L, (1,) * (n - 1))
    rng = random.Random(4)
    while True:
        t = QMatrix(
            [[rng.randint(-2, 2) for _ in range(L.dim)] for _ in range(L.dim)]
        )
        try:
            invert(t)
            break
        except ValueError:
            continue
    elem = scalar_element(rep, L.invariant_ck(2))
    reference = wei_D(elem).mat
    assert wei_D_in_basis(elem, t) == reference
    # a degree-two input as well
    if n == 3:
        elem3 = scalar_element(rep, L.invariant_ck(3))
        d1 = wei_D(elem3)
        assert wei_D_in_basis(elem3, t) == d1.mat
        assert wei_D_in_basis(d1, t) == wei_D(d1).mat
