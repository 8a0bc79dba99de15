"""The pinning-fixing outer involution of sl_n and its coinvariant algebras.

sigma(X) = -w0 X^T w0^{-1} with w0 the antidiagonal matrix of alternating
signs; it fixes the principal triple and permutes the simple root vectors.
On a self-paired module the induced intertwiner is built by flipping the
lowering words of the basis.
"""

from __future__ import annotations

from .multipoly import MultiPoly, VarSet, rat, ZERO, ONE
from .linalg import Echelon, QMatrix, invert


def pinning_w0(n):
    """Antidiagonal matrix with alternating signs, fixing the pinning."""
    m = QMatrix.zeros(n, n)
    for j in range(n):
        m.a[j][n - 1 - j] = rat((-1) ** j)
    return m


def sigma_on_matrix(L, x):
    w0 = pinning_w0(L.n)
    return -(w0 * x.transpose() * invert(w0))


def sigma_coord_matrix(L):
    """The linear map on Lie-algebra coordinates induced by sigma."""
    cols = [L.coords_of(sigma_on_matrix(L, b)) for b in L.basis]
    return QMatrix.from_cols(cols, rows=L.dim)


def is_sigma_invariant(mu):
    return tuple(mu) == tuple(reversed(tuple(mu)))


def intertwiner(rep):
    """S with S rho(X) S^{-1} = rho(sigma X), normalized on the highest line.

    Built by applying the index-flipped lowering words to the highest-weight
    vector; uniqueness up to scale follows from irreducibility.
    """
    if not is_sigma_invariant(rep.mu):
        raise ValueError("highest weight is not sigma-invariant")
    L = rep.L
    n = L.n
    lower_ops = [
        rep.rho[L._offdiag_index[(i + 1, i)]] for i in range(n - 1)
    ]
    cols = []
    for word in rep.words:
        v = [ONE if i == 0 else ZERO for i in range(rep.dim)]
        for li in word:
            # sigma sends the li-th lowering operator to the (n-li)-th
            v = lower_ops[n - li - 1].mul_vec(v)
        cols.append(v)
    return QMatrix.from_cols(cols, rows=rep.dim)


def check_intertwiner(rep, s):
    """S rho(X) = rho(sigma X) S for every basis element, exactly."""
    L = rep.L
    sg = sigma_coord_matrix(L)
    for i in range(L.dim):
        coords = sg.col(i)
        lhs = s * rep.rho[i]
        rhs = rep.op(coords) * s
        if lhs != rhs:
            return False
    return True


def sigma_on_element(elem, s=None, sg=None):
    """(sigma F)(x) = S F(sigma x) S^{-1} as a polynomial matrix."""
    rep = elem.rep
    L = rep.L
    if s is None:
        s = intertwiner(rep)
    if sg is None:
        sg = sigma_coord_matrix(L)
    ring = L.x_ring
    mapping = {}
    for j in range(L.dim):
        form = MultiPoly.zero(ring)
        for i in range(L.dim):
            c = sg.a[j][i]
            if c:
                form = form + MultiPoly.variable(ring, "x%d" % i).scale(c)
        mapping["x%d" % j] = form
    composed = elem.mat.subs(ring, mapping)
    s_inv = invert(s)
    return composed.mul_qmatrix_left(s).mul_qmatrix_right(s_inv)


def sigma_eigenvalues(rep, gens):
    """sigma acts on each calibrated generator by a sign; report them."""
    s = intertwiner(rep)
    sg = sigma_coord_matrix(rep.L)
    out = {}
    for op in gens:
        image = sigma_on_element(op.kirillov, s, sg)
        if image == op.kirillov.mat:
            out[op.label] = 1
        elif image == -op.kirillov.mat:
            out[op.label] = -1
        else:
            out[op.label] = None
    return out


def sigma_on_invariants(L):
    """Parity of each c_k under sigma: c_k(sigma x) = (-1)^k c_k(x)."""
    sg = sigma_coord_matrix(L)
    ring = L.x_ring
    mapping = {}
    for j in range(L.dim):
        form = MultiPoly.zero(ring)
        for i in range(L.dim):
            c = sg.a[j][i]
            if c:
                form = form + MultiPoly.variable(ring, "x%d" % i).scale(c)
        mapping["x%d" % j] = form
    out = {}
    for k in range(2, L.n + 1):
        ck = L.invariant_ck(k)
        image = ck.subs(ring, mapping)
        if image == ck:
            out[k] = 1
        elif image == -ck:
            out[k] = -1
        else:
            out[k] = None
    return out


def jantzen_trace(rep, lam=None):
    """Trace of the intertwiner on a sigma-stable weight space."""
    if lam is None:
        lam = (0,) * (rep.L.n - 1)
    s = intertwiner(rep)
    idx = rep.weight_table.get(tuple(lam), [])
    if not idx:
        return ZERO
    basis = QMatrix.from_cols(
        [[ONE if i == j else ZERO for i in range(rep.dim)] for j in idx],
        rows=rep.dim,
    )
    from .linalg import solve_columns

    restricted = solve_columns(basis, s * basis)
    return restricted.trace()


# ---------------------------------------------------------------------------
# coinvariants: the octet instance against the rank-one algebra
# ---------------------------------------------------------------------------


def _as_univariate_in(poly, main, other):
    """Coefficients of poly in powers of `main`, as polynomials in `other`."""
    ring = poly.ring
    mi = ring.index[main]
    out = {}
    for key, c in poly.terms.items():
        exps = ring.unpack(key)
        e_main = exps[mi]
        rest = list(exps)
        rest[mi] = 0
        out.setdefault(e_main, MultiPoly.zero(ring))
        out[e_main] = out[e_main] + MultiPoly.monomial(ring, tuple(rest), c)
    return out


def divides_modulo(poly, divisor, main="M1"):
    """True when divisor (monic-in-main up to scalar) divides poly exactly."""
    ring = poly.ring
    dd = _as_univariate_in(divisor, main, None)
    dp = _as_univariate_in(poly, main, None)
    ddeg = max(dd)
    lead = dd[ddeg]
    if lead.is_homogeneous() is None or len(lead.terms) != 1:
        raise ValueError("divisor must have monomial leading coefficient")
    lead_coeff = next(iter(lead.terms.values()))
    current = poly
    mvar = MultiPoly.variable(ring, main)
    guard = 0
    while not current.is_zero():
        cur = _as_univariate_in(current, main, None)
        cdeg = max(cur)
        if cdeg < ddeg:
            return False
        factor = cur[cdeg].scale(1 / lead_coeff) * mvar ** (cdeg - ddeg)
        current = current - factor * divisor
        guard += 1
        if guard > 200:
            raise RuntimeError("division did not terminate")
    return True


def fixed_scheme_relations(relations, ring):
    """Substitute N1 = M2 = c3 = 0 and drop zero results."""
    out = []
    for rel in relations:
        mapping = {}
        for nm in rel.ring.names:
            if nm in ("N1", "M2", "c3"):
                mapping[nm] = 0
            elif nm in ring.index:
                mapping[nm] = MultiPoly.variable(ring, nm)
            else:
                raise ValueError("unexpected variable %r" % nm)
        image = rel.subs(ring, mapping)
        if not image.is_zero():
            out.append(image)
    return out


def coinvariant_octet_report(octet_relations, sl2_relation):
    """Quotient the octet presentation by the sigma-odd generators and match
    it against the rank-one presentation under a scaling dictionary.

    octet_relations live in variables (M1, N1, c2, c3) and the medium ones
    in (M1, M2, c2, c3); sl2_relation lives in (M1, c2).
    """
    ring = VarSet(["M1", "c2"])
    images = fixed_scheme_relations(octet_relations, ring)
    if not images:
        raise ValueError("no surviving relations")
    # the minimal-degree survivor is the parabola; all others are multiples
    weights = {"M1": 1, "c2": 2}
    images.sort(key=lambda p: p.weighted_degree(weights))
    parabola = images[0]
    multiples = all(divides_modulo(p, parabola) for p in images[1:])

    # dictionary: rescale c2 so the rank-one relation matches the parabola
    m1 = MultiPoly.variable(ring, "M1")
    c2 = MultiPoly.variable(ring, "c2")
    # normalize both monic in M1^2
    def monic(p):
        lead = p.coeff((2, 0))
        if lead == 0:
            raise ValueError("relation is not quadratic in M1")
        return p.scale(1 / lead)

    par = monic(parabola)
    sl2 = monic(sl2_relation.subs(ring, {"M1": m1, "c2": c2}))
    a = par.coeff((0, 1))
    b = sl2.coeff((0, 1))
    scale = a / b if b else None
    matched = scale is not None and sl2.subs(
        ring, {"M1": m1, "c2": c2.scale(scale)}
    ) == par

    # graded dimensions of the quotient ring Q[c2, M1]/(parabola)
    dims = {}
    for d in range(0, 9):
        monos = [
            (e1, e2)
            for e1 in range(d + 1)
            for e2 in range(d + 1)
            if e1 + 2 * e2 == d
        ]
        span = Echelon()
        pdeg = par.weighted_degree(weights)
        vecs = []
        if d >= pdeg:
            lower = [
                (e1, e2)
                for e1 in range(d + 1)
                for e2 in range(d + 1)
                if e1 + 2 * e2 == d - pdeg
            ]
            index = {m: i for i, m in enumerate(monos)}
            for mult in lower:
                prod = par * MultiPoly.monomial(ring, mult)
                vec = [ZERO] * len(monos)
                for key, c in prod.terms.items():
                    vec[index[prod.ring.unpack(key)]] = c
                span.add(vec)
        dims[d] = len(monos) - span.dim
    return {
        "parabola": parabola,
        "survivors": [str(p) for p in images],
        "all_multiples_of_parabola": multiples,
        "dictionary_c2_scale": scale,
        "relation_matches": matched,
        "quotient_dims": dims,
    }
