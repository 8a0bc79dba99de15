"""Principal-line specializations, principal spectra, quantum-number
identities, and CSV emission for the skeleton figures.

Floating point lives only in emit_skeleton_points; every identity check in
this module is exact.
"""

from __future__ import annotations

import csv
from fractions import Fraction

import mpmath

from .multipoly import MultiPoly, VarSet, rat
from .linalg import QMatrix, charpoly, joint_invariant_decomposition, upoly_eval
from .polymatrix import PolyMatrix
from . import lie
from .bigalgebra import rational_diagonalizer, _eigenvalue_on_line


# ---------------------------------------------------------------------------
# skeletons: one-parameter specializations of the section operators
# ---------------------------------------------------------------------------


def skeleton_set_c3_zero(gens):
    """The rank-two shortcut: kill c_3 and keep c_2 as the line parameter."""
    ring = gens[0].mat.ring
    if "c3" not in ring.index or len(ring.names) != 2:
        raise ValueError("set_c3_zero requires exactly the invariants c2, c3")
    tring = VarSet(["c2"])
    mapping = {"c2": MultiPoly.variable(tring, "c2"), "c3": 0}
    ops = [(op.label, op.mat.subs(tring, mapping)) for op in gens]
    return {"param": "c2", "ring": tring, "ops": ops}


def invariants_along_principal_line(L):
    """c_k(e + t*f) as polynomials in the line parameter t."""
    tring = VarSet(["t"])
    t = MultiPoly.variable(tring, "t")
    line = PolyMatrix.from_qmatrix(tring, L.e) + PolyMatrix.from_qmatrix(
        tring, L.f
    ) * t
    coeffs = lie.charpoly_coeffs_poly(line)
    return tring, [coeffs[k] for k in range(2, L.n + 1)]


def skeleton_pullback(gens, L):
    """Base change along the principal line t -> e + t*f."""
    tring, cvals = invariants_along_principal_line(L)
    ring = gens[0].mat.ring
    mapping = {nm: cv for nm, cv in zip(ring.names, cvals)}
    ops = [(op.label, op.mat.subs(tring, mapping)) for op in gens]
    return {"param": "t", "ring": tring, "ops": ops}


def principal_restriction(gens, L, recipe="pullback_along_e_plus_tf"):
    if recipe == "set_c3_zero":
        if L.n != 3:
            raise ValueError("set_c3_zero recipe is specific to rank two")
        return skeleton_set_c3_zero(gens)
    if recipe == "pullback_along_e_plus_tf":
        return skeleton_pullback(gens, L)
    raise ValueError("unknown recipe %r" % recipe)


# ---------------------------------------------------------------------------
# the principal spectrum and the weight dictionary
# ---------------------------------------------------------------------------


def principal_spectrum(rep, gens):
    """Joint spectrum of the generators over the principal semisimple point.

    Medium generators act by scalars on the transported weight spaces; the
    map weight -> tuple of those scalars must be injective.  The full
    generator family is then split by joint invariant decomposition, with
    irrational blocks (if any) kept unsplit.
    """
    L = rep.L
    cvals = lie.principal_point(L)
    a0 = lie.companion_point(L.n, cvals)
    eigs = [L.h.a[i][i] for i in range(L.n)]
    transport = rep.gl_transport(rational_diagonalizer(a0, eigs))

    medium = [op for op in gens if op.i == 1]
    med_vals = [op.evaluate(cvals) for op in medium]
    table = {}
    for lam, idx in sorted(rep.weight_table.items()):
        cols = [transport.col(i) for i in idx]
        eig_tuple = []
        for val in med_vals:
            scalars = {_eigenvalue_on_line(val, c) for c in cols}
            if len(scalars) != 1:
                raise ValueError(
                    "medium generator is not scalar on a weight space"
                )
            eig_tuple.append(scalars.pop())
        table[lam] = tuple(eig_tuple)

    tuples = list(table.values())
    injective = len(set(tuples)) == len(tuples)

    all_vals = [op.evaluate(cvals) for op in gens]
    blocks = joint_invariant_decomposition(all_vals)
    unsplit = [
        (basis, labels)
        for basis, labels in blocks
        if any(isinstance(lab, tuple) for lab in labels)
    ]
    return {
        "point": cvals,
        "medium_labels": [op.label for op in medium],
        "eigen_table": table,
        "injective": injective,
        "blocks": blocks,
        "unsplit_blocks": unsplit,
    }


def quantum_number_identity_ring():
    return VarSet(["I3", "Y"])


def decuplet_identities():
    ring = quantum_number_identity_ring()
    i3 = MultiPoly.variable(ring, "I3")
    y = MultiPoly.variable(ring, "Y")
    one = MultiPoly.const(ring, 1)
    first = i3 * (y - one) * ((i3 * i3).scale(4) - y.scale(3) - 4)
    second = (
        (i3**4).scale(16)
        - (i3 * i3 * y).scale(24)
        - (i3 * i3).scale(16)
        + (y * y).scale(3)
        + y.scale(6)
    )
    return [first, second]


def octet_identities():
    ring = quantum_number_identity_ring()
    i3 = MultiPoly.variable(ring, "I3")
    y = MultiPoly.variable(ring, "Y")
    first = y * (i3.scale(2) - 1) * (i3.scale(2) + 1)
    second = (i3**3).scale(4) + (i3 * y * y).scale(3) - i3.scale(4)
    third = (i3**4).scale(16) - (i3 * i3).scale(16) + (y * y).scale(3)
    return [first, second, third]


def _poly_of_commuting(poly, mats):
    """Evaluate a polynomial at commuting matrices named by its variables."""
    ring = poly.ring
    dim = next(iter(mats.values())).rows
    powers = {nm: {0: QMatrix.identity(dim)} for nm in ring.names}

    def power(nm, e):
        cache = powers[nm]
        if e not in cache:
            cache[e] = power(nm, e - 1) * mats[nm]
        return cache[e]

    total = QMatrix.zeros(dim, dim)
    for key, c in poly.terms.items():
        term = QMatrix.identity(dim)
        for nm, e in zip(ring.names, ring.unpack(key)):
            if e:
                term = term * power(nm, e)
        total = total + term * c
    return total


def verify_quantum_number_identities(rep, gens, identities):
    """I3 = (M1 at h)/4 and Y = (M2 at h)/4 must satisfy each identity."""
    L = rep.L
    cvals = lie.principal_point(L)
    by_label = {op.label: op for op in gens}
    i3 = by_label["M1"].evaluate(cvals) * rat(1, 4)
    y = by_label["M2"].evaluate(cvals) * rat(1, 4)
    if not i3.commutator(y).is_zero():
        raise ValueError("quantum-number operators do not commute")
    report = []
    for ident in identities:
        val = _poly_of_commuting(ident, {"I3": i3, "Y": y})
        report.append({"identity": str(ident), "zero": val.is_zero()})
    return {"identities": report, "all_zero": all(r["zero"] for r in report)}


# ---------------------------------------------------------------------------
# CSV emission for the skeleton figures
# ---------------------------------------------------------------------------


def real_branches(chi):
    """Real roots (with multiplicity) of an exact polynomial, as floats.

    The polynomial is first split into exact squarefree factors so the
    numerical root finder only ever sees simple roots.
    """
    from .linalg import squarefree_decomposition

    out = []
    for factor, mult in squarefree_decomposition(chi):
        coeffs = [
            mpmath.mpf(int(c.numerator)) / mpmath.mpf(int(c.denominator))
            for c in factor
        ]
        if len(coeffs) == 2:
            roots = [-coeffs[0] / coeffs[1]]
        else:
            roots = mpmath.polyroots(
                list(reversed(coeffs)), maxsteps=400, extraprec=300
            )
        for r in roots:
            if abs(mpmath.im(r)) < mpmath.mpf(10) ** (-25):
                out.extend([float(mpmath.re(r))] * mult)
    out.sort()
    return out


def emit_skeleton_points(skeleton, grid, out_path):
    """Evaluate skeleton operators on a grid and write eigenvalue branches.

    grid = (start, stop, steps); the grid points are exact rationals, so the
    characteristic polynomials are exact and the emitted float branches can
    be validated against them.
    """
    start, stop, steps = grid
    start = Fraction(start)
    stop = Fraction(stop)
    rows = []
    residual_bound = 0.0
    with mpmath.workdps(60):
        for k in range(steps + 1):
            param = start + (stop - start) * Fraction(k, steps) if steps else start
            for label, mat in skeleton["ops"]:
                val = mat.evaluate({skeleton["param"]: rat(str(param))})
                chi = charpoly(val)
                branches = real_branches(chi)
                for b_idx, b in enumerate(branches):
                    # exact characteristic polynomial at the emitted float
                    exact_b = rat(Fraction(b).numerator, Fraction(b).denominator)
                    res = abs(float(upoly_eval(chi, exact_b)))
                    residual_bound = max(residual_bound, res)
                    rows.append((float(param), label, b_idx, b))
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["param", "generator", "branch", "value"])
        for row in rows:
            writer.writerow(["%r" % row[0], row[1], row[2], "%r" % row[3]])
    return {"rows": len(rows), "max_residual": residual_bound,
            "path": out_path}


def branch_multiset_at(skeleton, param_value, label):
    """Exact-characteristic-polynomial branches at one rational parameter."""
    by_label = dict(skeleton["ops"])
    val = by_label[label].evaluate({skeleton["param"]: rat(str(param_value))})
    return real_branches(charpoly(val))
