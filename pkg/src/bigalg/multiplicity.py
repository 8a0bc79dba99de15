"""q-weight multiplicities: partition counts, alternating Weyl sums,
nilpotent filtrations, limits of weight spaces, and multiplicity algebras.

Two fully independent computations of the same polynomial anchor this
module: kernels of powers of the principal nilpotent on one side, and the
alternating Weyl sum over the q-counted partition function on the other.
"""

from __future__ import annotations

from fractions import Fraction

from .multipoly import MultiPoly, VarSet, rat, ZERO, ONE
from .linalg import (
    Echelon,
    QMatrix,
    kernel,
    same_span,
    solve_columns,
)
from .limits import limit_of_span
from .qpoly import QPoly
from . import lie

# ---------------------------------------------------------------------------
# q-analogue of the partition function and the alternating Weyl sum
# ---------------------------------------------------------------------------


def qkostant_partition(rd, pi):
    """P_q(pi): multisets of positive roots summing to pi, q-counted by size.

    pi is a weight in fundamental coordinates; the value is zero unless pi
    is a nonnegative integer combination of simple roots.
    """
    if rd.n > 5:
        raise ValueError("partition-function guard: n <= 5")
    target = rd.root_coords(pi)
    if target is None:
        return QPoly()
    roots_rc = []
    for i, j in rd.positive:
        vec = [0] * rd.rank
        for k in range(i, j + 1):
            vec[k - 1] += 1
        roots_rc.append(tuple(vec))

    # bounded DP over the box [0, target]
    def points_upto(bound):
        out = [()]
        for b in bound:
            out = [p + (x,) for p in out for x in range(b + 1)]
        return out

    pts = points_upto(target)
    dp = {p: QPoly() for p in pts}
    dp[(0,) * rd.rank] = QPoly.one()
    q = QPoly.q_power(1)
    for r in roots_rc:
        for p in pts:  # lex increasing, so p - r is already updated
            prev = tuple(a - b for a, b in zip(p, r))
            if all(x >= 0 for x in prev) and dp[prev]:
                dp[p] = dp[p] + q * dp[prev]
    return dp[target]


def qkostant_bruteforce(rd, pi, _cap=None):
    """Independent oracle: explicit enumeration of root multisets."""
    target = rd.root_coords(pi)
    if target is None:
        return QPoly()
    roots_rc = []
    for i, j in rd.positive:
        vec = [0] * rd.rank
        for k in range(i, j + 1):
            vec[k - 1] += 1
        roots_rc.append(tuple(vec))

    counts = {}

    def rec(idx, remaining, parts):
        if idx == len(roots_rc):
            if all(x == 0 for x in remaining):
                counts[parts] = counts.get(parts, 0) + 1
            return
        r = roots_rc[idx]
        rem = list(remaining)
        m = 0
        while all(x >= 0 for x in rem):
            rec(idx + 1, tuple(rem), parts + m)
            rem = [a - b for a, b in zip(rem, r)]
            m += 1

    rec(0, target, 0)
    return QPoly(counts)


def lusztig_m(rd, mu, lam):
    """The alternating Weyl sum of P_q over w(mu+rho) - lam - rho."""
    if not (rd.is_dominant(mu) and rd.is_dominant(lam)):
        raise ValueError("both weights must be dominant")
    mu_rho = tuple(m + 1 for m in mu)
    out = QPoly()
    for perm, sign in lie.weyl_group(rd.n):
        shifted = lie.weyl_act(rd, perm, mu_rho)
        pi = tuple(s - l - 1 for s, l in zip(shifted, lam))
        p = qkostant_partition(rd, pi)
        if p:
            out = out + p.scale(sign)
    return out


# ---------------------------------------------------------------------------
# Brylinski filtration by kernels of powers of the principal nilpotent
# ---------------------------------------------------------------------------


def h_plus_e_transport(rep):
    """Transport matrix carrying standard weight spaces to those of the
    torus centralizing h + e (same integer spectrum as h, conjugate over Q)."""
    L = rep.L
    target = L.h + L.e
    eigs = [L.h.a[i][i] for i in range(L.n)]
    from .bigalgebra import rational_diagonalizer

    s = rational_diagonalizer(target, eigs)
    return rep.gl_transport(s)


def weight_space_basis(rep, lam, torus="standard"):
    """Columns spanning the lam weight space for the chosen maximal torus."""
    cols = rep.weight_space_columns(lam)
    if not cols:
        return QMatrix.zeros(rep.dim, 0)
    basis = QMatrix.from_cols(cols, rows=rep.dim)
    if torus == "standard":
        return basis
    if torus == "h_plus_e":
        return h_plus_e_transport(rep) * basis
    raise ValueError("unknown torus choice %r" % torus)


def brylinski_filtration(rep, lam, torus="standard"):
    """F_p = {x in the weight space : e^(p+1) x = 0} and its jump polynomial.

    The jump polynomial puts dim(F_p / F_{p-1}) on q^p, which is the
    normalization that matches the alternating Weyl sum on sl_2.
    """
    lam = tuple(lam)
    if lam not in rep.weight_table:
        raise ValueError("lambda is not a weight of this module")
    basis = weight_space_basis(rep, lam, torus)
    e_mat = rep.rho_e
    total = basis.cols
    dims = []
    subspaces = []
    power = e_mat
    p = 0
    prev_dim = 0
    while prev_dim < total:
        vecs = kernel(power * basis)
        sub = [basis.mul_vec(v) for v in vecs]
        dims.append(len(vecs))
        subspaces.append(sub)
        prev_dim = len(vecs)
        power = power * e_mat
        p += 1
        if p > rep.dim + 1:
            raise RuntimeError("filtration failed to stabilize")
    jump = QPoly(
        {p: dims[p] - (dims[p - 1] if p else 0) for p in range(len(dims))}
    )
    return {"lam": lam, "dims": dims, "jump": jump, "subspaces": subspaces,
            "basis": basis}


# ---------------------------------------------------------------------------
# the two limits of a weight space
# ---------------------------------------------------------------------------


def e_limit_filtration(rep, lam):
    """sum_p e^p F_p for the torus centralizing h + e."""
    filt = brylinski_filtration(rep, lam, torus="h_plus_e")
    e_mat = rep.rho_e
    ech = Echelon()
    vectors = []
    power = QMatrix.identity(rep.dim)
    for p, sub in enumerate(filt["subspaces"]):
        if p:
            power = power * e_mat
        for v in sub:
            w = power.mul_vec(v)
            if ech.add(w):
                vectors.append(w)
    return QMatrix.from_cols(vectors, rows=rep.dim) if vectors else QMatrix.zeros(rep.dim, 0)


def e_limit_zlimit(rep, lam):
    """Limit of the scaled weight space as the torus parameter goes to zero.

    Each standard-h-weight-m component of a basis vector scales by w^(-m);
    after per-column normalization the valuation echelon produces the limit.
    """
    basis = weight_space_basis(rep, lam, torus="h_plus_e")
    if basis.cols == 0:
        return QMatrix.zeros(rep.dim, 0)
    rd = lie.RootData(rep.L.n)
    wts = [rd.h_pairing(w) for w in rep.weights]
    ring = VarSet(["w"], laurent=["w"])
    columns = []
    for j in range(basis.cols):
        col = []
        for i in range(rep.dim):
            x = basis.a[i][j]
            if x:
                col.append(MultiPoly.monomial(ring, (-wts[i],), x))
            else:
                col.append(MultiPoly.zero(ring))
        columns.append(col)
    return limit_of_span(columns, "w")


def e_limit(rep, lam, method="both"):
    """The e-limit of a weight space; 'both' cross-checks the two routes."""
    if method == "filtration_sum":
        return e_limit_filtration(rep, lam)
    if method == "z_limit":
        return e_limit_zlimit(rep, lam)
    if method == "both":
        a = e_limit_filtration(rep, lam)
        b = e_limit_zlimit(rep, lam)
        if a.cols != b.cols or not same_span(a.columns(), b.columns()):
            raise RuntimeError("limit constructions disagree (bug)")
        return a
    raise ValueError("unknown method %r" % method)


def torus_weight_space_scaled(rep, lam, z):
    """The weight space of the torus centralizing e + z*h, at rational z.

    Realized as the image of the h+e weight space under the rational
    one-parameter scaling diag(1, z, ..., z^(n-1))."""
    n = rep.L.n
    s = QMatrix.diagonal([rat(z) ** i for i in range(n)])
    return rep.gl_transport(s) * weight_space_basis(rep, lam, torus="h_plus_e")


# ---------------------------------------------------------------------------
# multiplicity algebras
# ---------------------------------------------------------------------------


def reversal_transport(rep):
    """rho-tilde of the antidiagonal reversal, carrying the principal
    nilpotent to the companion-section nilpotent (an involution)."""
    n = rep.L.n
    j = QMatrix.zeros(n, n)
    for i in range(n):
        j.a[i][n - 1 - i] = ONE
    return rep.gl_transport(j)


def generators_at_e(rep, gens):
    """Calibrated generator values at the zero fiber, in the principal-e frame."""
    zeros = [0] * (rep.L.n - 1)
    u = reversal_transport(rep)
    return [u * op.evaluate(zeros) * u for op in gens]


def restrict_operator(op_mat, basis):
    """Matrix of an invariant operator on the span of the basis columns."""
    return solve_columns(basis, op_mat * basis)


def multiplicity_algebra(rep, gens, lam):
    """The restriction of the zero-fiber algebra to the e-limit of a weight
    space, together with its grading and cross-checks."""
    lam = tuple(lam)
    rd = lie.RootData(rep.L.n)
    # the limit span is h-stable, so it admits an h-homogeneous basis
    limit = _h_stabilize_limit(rep, e_limit(rep, lam, method="both"))
    ops_e = generators_at_e(rep, gens)
    restricted = []
    for op, mat in zip(gens, ops_e):
        try:
            restricted.append((op.label, restrict_operator(mat, limit)))
        except ValueError:
            raise RuntimeError(
                "limit space is not invariant under %s (bug)" % op.label
            )

    # grading by standard-h eigenvalues on the limit space
    wts = [rd.h_pairing(w) for w in rep.weights]
    mu_rho = rd.ip(rep.mu, rd.rho)
    graded = {}
    ech_by_grade = {}
    for j in range(limit.cols):
        col = limit.col(j)
        k = {wts[i] for i in range(rep.dim) if col[i]}.pop()
        grade = mu_rho - Fraction(k, 2)
        assert grade.denominator == 1
        grade = int(grade)
        ech_by_grade.setdefault(grade, Echelon()).add(col)
    for g, ech in ech_by_grade.items():
        graded[g] = ech.dim

    shift = rd.ip(tuple(m - l for m, l in zip(rep.mu, lam)), rd.rho)
    hilbert = QPoly({shift - g: d for g, d in graded.items()})

    # algebra span of the restricted operators
    span = Echelon()
    dimq = limit.cols
    basis_ops = [QMatrix.identity(dimq)]
    span.add([x for row in basis_ops[0].a for x in row])
    frontier = list(basis_ops)
    while frontier:
        nxt = []
        for b in frontier:
            for _, r in restricted:
                cand = b * r
                if span.add([x for row in cand.a for x in row]):
                    nxt.append(cand)
        frontier = nxt

    return {
        "lam": lam,
        "limit": limit,
        "dim": limit.cols,
        "graded": graded,
        "hilbert": hilbert,
        "restricted": dict(restricted),
        "algebra_span_dim": span.dim,
    }


def _h_stabilize_limit(rep, limit):
    """Replace limit columns by h-weight-homogeneous ones (the limit is
    h-stable, so splitting by h-components preserves the span)."""
    rd = lie.RootData(rep.L.n)
    wts = [rd.h_pairing(w) for w in rep.weights]
    ech = Echelon()
    vectors = []
    for j in range(limit.cols):
        col = limit.col(j)
        by_k = {}
        for i, x in enumerate(col):
            if x:
                by_k.setdefault(wts[i], [ZERO] * rep.dim)[i] = x
        for k in sorted(by_k):
            if ech.add(by_k[k]):
                vectors.append(by_k[k])
    if len(vectors) != limit.cols:
        raise RuntimeError("limit space is not h-stable (bug)")
    return QMatrix.from_cols(vectors, rows=rep.dim)


def e_limit_graded(rep, lam):
    """The e-limit with an h-homogeneous basis."""
    return _h_stabilize_limit(rep, e_limit(rep, lam, method="both"))


def algebra_structure_table(restricted_ops, dim):
    """Basis and multiplication table of the unital algebra generated by the
    restricted operators inside End(limit space)."""
    mats = list(restricted_ops.values())
    basis = [QMatrix.identity(dim)]
    flat = QMatrix.from_cols(
        [[x for row in basis[0].a for x in row]], rows=dim * dim
    )
    ech = Echelon()
    ech.add(flat.col(0))
    frontier = list(basis)
    while frontier:
        nxt = []
        for b in frontier:
            for g in mats:
                cand = b * g
                vec = [x for row in cand.a for x in row]
                if ech.add(vec):
                    basis.append(cand)
                    nxt.append(cand)
        frontier = nxt
    flat_basis = QMatrix.from_cols(
        [[x for row in b.a for x in row] for b in basis], rows=dim * dim
    )
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            prod = a * b
            coeffs = solve_columns(
                flat_basis,
                QMatrix.from_cols(
                    [[x for row in prod.a for x in row]], rows=dim * dim
                ),
            )
            table["%d,%d" % (i, j)] = [str(coeffs.a[k][0]) for k in range(len(basis))]
    return {"basis": [b.to_obj() for b in basis], "table": table}


def quotient_chain_check(rep, gens, lam):
    """lim of the lam space sits inside the lim of the minuscule space, and
    restriction to the smaller space factors through the bigger one."""
    rd = lie.RootData(rep.L.n)
    mu_min = lie.minuscule_min(rd, rep.mu)
    l_min = e_limit(rep, mu_min, method="both")
    l_lam = e_limit(rep, lam, method="both")
    ech = Echelon()
    for v in l_min.columns():
        ech.add(v)
    contained = all(ech.contains(v) for v in l_lam.columns())
    ok_factor = True
    if contained and l_lam.cols:
        inclusion = solve_columns(l_min, l_lam)
        ops_e = generators_at_e(rep, gens)
        for mat in ops_e:
            big = restrict_operator(mat, l_min)
            small = restrict_operator(mat, l_lam)
            if big * inclusion != inclusion * small:
                ok_factor = False
                break
    return {
        "mu_min": mu_min,
        "contained": contained,
        "factors": ok_factor,
        "dim_min": l_min.cols,
        "dim_lam": l_lam.cols,
    }


def minuscule_quotient_check(rep, gens):
    """Q at the minuscule weight equals the zero fiber modulo the medium
    values: dimensions match and the medium ideal annihilates the limit."""
    rd = lie.RootData(rep.L.n)
    mu_min = lie.minuscule_min(rd, rep.mu)
    l_min = e_limit(rep, mu_min, method="both")
    ops_e = generators_at_e(rep, gens)
    labels = [op.label for op in gens]
    medium = [m for lab, m in zip(labels, ops_e) if lab.startswith("M")]

    # fiber algebra basis
    span = Echelon()
    reps_mats = [QMatrix.identity(rep.dim)]
    span.add([x for row in reps_mats[0].a for x in row])
    frontier = list(reps_mats)
    basis_mats = list(reps_mats)
    while frontier:
        nxt = []
        for b in frontier:
            for g in ops_e:
                cand = b * g
                if span.add([x for row in cand.a for x in row]):
                    nxt.append(cand)
                    basis_mats.append(cand)
        frontier = nxt
    fiber_dim = span.dim

    # ideal generated by medium values inside the fiber algebra
    ideal = Echelon()
    ideal_mats = []
    frontier = []
    for m in medium:
        for b in basis_mats:
            cand = b * m
            if ideal.add([x for row in cand.a for x in row]):
                ideal_mats.append(cand)
                frontier.append(cand)
    while frontier:
        nxt = []
        for b in frontier:
            for g in ops_e:
                cand = b * g
                if ideal.add([x for row in cand.a for x in row]):
                    ideal_mats.append(cand)
                    nxt.append(cand)
        frontier = nxt

    annihilates = all(
        all(x == 0 for x in m.mul_vec(v))
        for m in ideal_mats
        for v in l_min.columns()
    ) if ideal_mats else True

    return {
        "fiber_dim": fiber_dim,
        "ideal_dim": ideal.dim,
        "quotient_dim": fiber_dim - ideal.dim,
        "limit_dim": l_min.cols,
        "dims_match": fiber_dim - ideal.dim == l_min.cols,
        "ideal_annihilates_limit": annihilates,
    }
