import random
from itertools import combinations

import pytest

from bigalg import lie
from bigalg.linalg import QMatrix, charpoly, kernel, rank
from bigalg.multipoly import MultiPoly, rat


def test_rank_guard():
    with pytest.raises(ValueError):
        lie.TypeA(1)


def test_sl2_dimension_and_killing(L2):
    assert L2.dim == 3
    # oracle: kappa(h,h) = tr(ad(h)^2) computed from the structure constants
    ad_h = L2.ad_matrix(L2.h_coords)
    assert (ad_h * ad_h).trace() == 8
    h = L2.h_coords
    val = sum(
        (
            h[i] * L2.killing_form.a[i][j] * h[j]
            for i in range(L2.dim)
            for j in range(L2.dim)
        ),
        rat(0),
    )
    assert val == 8


def test_killing_is_2n_times_trace(L2, L3, L4):
    for L in (L2, L3, L4):
        assert L.killing_form == L.trace_form * (2 * L.n)


def test_jacobi_identity(L3):
    dim = L3.dim
    basis = [[rat(1) if i == j else rat(0) for j in range(dim)] for i in range(dim)]
    rng = random.Random(5)
    triples = [tuple(rng.sample(range(dim), 3)) for _ in range(12)]
    for i, j, k in triples:
        a, b, c = basis[i], basis[j], basis[k]
        total = [
            x + y + z
            for x, y, z in zip(
                L3.bracket_coords(a, L3.bracket_coords(b, c)),
                L3.bracket_coords(b, L3.bracket_coords(c, a)),
                L3.bracket_coords(c, L3.bracket_coords(a, b)),
            )
        ]
        assert all(x == 0 for x in total)


def test_principal_triple(L3):
    e, f, h = L3.e_coords, L3.f_coords, L3.h_coords
    assert L3.bracket_coords(h, e) == [2 * x for x in e]
    assert L3.bracket_coords(h, f) == [-2 * x for x in f]
    assert L3.bracket_coords(e, f) == h
    assert [L3.h.a[i][i] for i in range(3)] == [2, 0, -2]
    # e is regular nilpotent: centralizer of minimal dimension n-1
    assert len(L3.centralizer(e)) == 2


def test_root_data(L3):
    rd = lie.RootData(3)
    assert len(rd.positive) == 3
    assert rd.ip(rd.rho, rd.root_weight((1, 2))) == 2
    for i in range(1, 3):
        assert rd.ip(rd.rho, rd.simple_root(i)) == 1
    assert rd.weyl_dim((3, 0)) == 10
    assert rd.weyl_dim((1, 1)) == 8


def test_weyl_group():
    w2 = lie.weyl_group(2)
    assert len(w2) == 2 and sorted(s for _, s in w2) == [-1, 1]
    w3 = lie.weyl_group(3)
    assert len(w3) == 6 and sum(s for _, s in w3) == 0
    rd = lie.RootData(3)
    longest = max(
        w3,
        key=lambda ps: sum(
            1
            for i in range(3)
            for j in range(i + 1, 3)
            if ps[0][i] > ps[0][j]
        ),
    )
    assert lie.weyl_act(rd, longest[0], rd.rho) == (-1, -1)
    with pytest.raises(ValueError):
        lie.weyl_group(8)


def test_weyl_invariance_of_inner_product():
    rd = lie.RootData(4)
    rng = random.Random(2)
    weights = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(5)]
    for perm, _ in lie.weyl_group(4):
        for lam in weights:
            for mu in weights:
                assert rd.ip(lam, mu) == rd.ip(
                    lie.weyl_act(rd, perm, lam), lie.weyl_act(rd, perm, mu)
                )


def test_companion_sl2_explicit():
    ring, m = lie.companion_symbolic(2)
    c2 = MultiPoly.variable(ring, "c2")
    assert m.a[0][0].is_zero() and m.a[1][1].is_zero()
    assert m.a[1][0] == 1
    assert m.a[0][1] == -c2
    # oracle: the 2x2 determinant expansion of lambda*I - A directly
    coeffs = lie.charpoly_coeffs_poly(m)
    assert coeffs[1].is_zero()  # trace zero
    assert coeffs[2] == c2


def test_companion_sl3_char_poly():
    ring, m = lie.companion_symbolic(3)
    coeffs = lie.charpoly_coeffs_poly(m)
    assert coeffs[1].is_zero()
    assert coeffs[2] == MultiPoly.variable(ring, "c2")
    assert coeffs[3] == MultiPoly.variable(ring, "c3")
    nil = lie.companion_point(3, [0, 0])
    assert rank(nil) == 2
    assert (nil.power(3)).is_zero()


def test_companion_regular_at_random_points(L3):
    rng = random.Random(9)
    for _ in range(4):
        cvals = [rng.choice([x for x in range(-9, 10) if x]) for _ in range(2)]
        a = lie.companion_point(3, cvals)
        coords = L3.coords_of(a)
        assert len(L3.centralizer(coords)) == 2


def test_centralizer_examples(L3):
    # x = h: the diagonal Cartan
    cent_h = L3.centralizer(L3.h_coords)
    assert len(cent_h) == 2
    # x = e: oracle = kernel of ad(e) built from honest matrix brackets
    mats = L3.basis
    e_mat = L3.e
    cols = []
    for b in mats:
        cols.append(L3.coords_of(e_mat * b - b * e_mat))
    ad_e = QMatrix.from_cols(cols, rows=L3.dim)
    oracle = kernel(ad_e)
    cent_e = L3.centralizer(L3.e_coords)
    assert len(cent_e) == len(oracle) == 2
    # x = 0: everything
    assert len(L3.centralizer([0] * L3.dim)) == L3.dim


def test_minuscule_min():
    rd3 = lie.RootData(3)
    assert lie.minuscule_min(rd3, (1, 1)) == (0, 0)
    assert lie.minuscule_min(rd3, (3, 0)) == (0, 0)  # 3*w1 = 0 mod root lattice
    rd2 = lie.RootData(2)
    assert lie.minuscule_min(rd2, (5,)) == (1,)


def test_principal_point_values(L3):
    assert lie.principal_point(L3) == [rat(-4), rat(0)]


def test_h_pairing_matches_2_rho_ip():
    rd = lie.RootData(3)
    for lam in [(1, 0), (0, 1), (1, 1), (3, 0), (2, 1)]:
        assert rd.h_pairing(lam) == 2 * rd.ip(lam, rd.rho)
