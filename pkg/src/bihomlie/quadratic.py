"""Quadratic 3-Bihom-Lie superalgebras, T*_theta-extensions and reconstruction.

Forms are stored as gram matrices, q(x, y) = x^T G y.  The dual space g*
carries the parities of g, so the hyperbolic form q_g on g + g* is even.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (DimensionMismatch, FailedPrecondition, NoDualBasis, ParityError,
                     ParityObstruction, ReportedMismatch, SingularMap)
from .graded import (ZERO, Bracket, GradedSpace, LinearMap, Subspace, dense, inverse_matrix,
                     mat_mul, matrix, nullspace, rank, sign, sparse, transpose,
                     unit_vec)
from .report import Check, VerificationReport, failed, labels, passed
from .representation import (Cocycle, _extension, adjoint_rep, coadjoint_rep, dual_rep,
                             verify_cocycle)
from .ternary import (ThreeBihomLieSuper, is_ideal, is_morphism, is_nilpotent, is_solvable,
                      verify3)


class SuperForm:
    """Even bilinear form on a graded space given by its gram matrix."""

    def __init__(self, space: GradedSpace, gram):
        G = matrix(gram)
        n = space.dim
        if len(G) != n or any(len(r) != n for r in G):
            raise DimensionMismatch(f"gram matrix must be {n}x{n}")
        p = space.parity
        for i, j in itertools.product(range(n), repeat=2):
            if G[i][j] and p[i] != p[j]:
                raise ParityError(f"gram[{i}][{j}] pairs vectors of different parity")
        self.space = space
        self.gram = G

    @property
    def dim(self) -> int:
        return self.space.dim

    def __call__(self, x, y) -> Fraction:
        return self.eval_sparse(sparse(x), sparse(y))

    def eval_sparse(self, x, y) -> Fraction:
        G = self.gram
        return sum((a * G[i][j] * b for i, a in x.items() for j, b in y.items()), ZERO)

    def __eq__(self, other) -> bool:
        return isinstance(other, SuperForm) and self.space == other.space \
            and self.gram == other.gram

    def __repr__(self):
        return f"SuperForm(dim={self.dim})"

    def orthogonal(self, S: Subspace) -> Subspace:
        """S^perp = {x : q(s, x) = 0 for all s in S}."""
        rows = [tuple(sum((s[i] * self.gram[i][j] for i in range(self.dim)), ZERO)
                      for j in range(self.dim)) for s in S.basis]
        return Subspace(nullspace(rows, self.dim), self.dim)


@dataclass(frozen=True)
class QuadraticAlgebra:
    algebra: ThreeBihomLieSuper
    form: SuperForm

    def __post_init__(self):
        if self.form.space.dim != self.algebra.dim or \
                self.form.space.parity != self.algebra.space.parity:
            raise DimensionMismatch("form and algebra live on different spaces")

    @property
    def dim(self) -> int:
        return self.algebra.dim


# ----------------------------------------------------------------- verifier

def invariance_residuals(g: ThreeBihomLieSuper, q: SuperForm) -> dict:
    """(x1..x4) -> q([b x1, b x2, a x3], a x4) + (-1)^{|x3|(|x1|+|x2|)} q(a x3, [b x1, b x2, a x4])."""
    n, p = g.dim, g.space.parity
    A, B = g.alpha.columns, g.beta.columns
    T = {t: g.bracket.eval_sparse(B[t[0]], B[t[1]], A[t[2]])
         for t in itertools.product(range(n), repeat=3)}
    out = {}
    for x1, x2, x3, x4 in itertools.product(range(n), repeat=4):
        r = q.eval_sparse(T[(x1, x2, x3)], A[x4]) + \
            sign(p[x3] * (p[x1] + p[x2])) * q.eval_sparse(A[x3], T[(x1, x2, x4)])
        if r:
            out[(x1, x2, x3, x4)] = r
    return out


def literal_invariance_residuals(g: ThreeBihomLieSuper, q: SuperForm) -> dict:
    """(x1..x4) -> q([b x1, b x2, a x3], a x4) - q(b x1, [b x2, a x3, a x4])."""
    n = g.dim
    A, B = g.alpha.columns, g.beta.columns
    out = {}
    for x1, x2, x3, x4 in itertools.product(range(n), repeat=4):
        r = q.eval_sparse(g.bracket.eval_sparse(B[x1], B[x2], A[x3]), A[x4]) - \
            q.eval_sparse(B[x1], g.bracket.eval_sparse(B[x2], A[x3], A[x4]))
        if r:
            out[(x1, x2, x3, x4)] = r
    return out


def _scalar_check(name, res: dict, names) -> Check:
    if not res:
        return passed(name)
    k = min(res)
    return failed(name, labels(names, k), (res[k],))


def _form_symmetry(q: SuperForm, f: LinearMap) -> dict:
    G, M = q.gram, f.matrix
    L = mat_mul(transpose(M), G)
    R = mat_mul(G, M)
    return {(i, j): L[i][j] - R[i][j] for i in range(q.dim) for j in range(q.dim)
            if L[i][j] != R[i][j]}


def verify_quadratic(qa: QuadraticAlgebra) -> VerificationReport:
    g, q = qa.algebra, qa.form
    n, p, names = g.dim, g.space.parity, g.space.names
    G = q.gram
    checks = []
    ker = nullspace(G, n)
    if ker:
        checks.append(failed("nondegenerate", detail=f"rank {n - len(ker)} < {n}",
                             residual=ker[0]))
    else:
        checks.append(passed("nondegenerate"))
    sym = {(i, j): G[i][j] - sign(p[i] * p[j]) * G[j][i]
           for i, j in itertools.combinations_with_replacement(range(n), 2)
           if G[i][j] != sign(p[i] * p[j]) * G[j][i]}
    checks.append(_scalar_check("supersymmetric", sym, names))
    checks.append(_scalar_check("ab-invariant", invariance_residuals(g, q), names))
    fs = None
    for nm, f in (("alpha", g.alpha), ("beta", g.beta)):
        res = _form_symmetry(q, f)
        if res:
            k = min(res)
            fs = failed("form-symmetric", labels(names, k), (res[k],),
                        detail=f"{nm} is not q-symmetric")
            break
    checks.append(fs if fs is not None else passed("form-symmetric"))
    lit = literal_invariance_residuals(g, q)
    note = "literal invariance q([bx1,bx2,ax3],ax4) = q(bx1,[bx2,ax3,ax4]) " + \
        ("holds" if not lit else f"fails at {list(labels(names, min(lit)))}")
    return VerificationReport("quadratic algebra", tuple(checks), (note,))


def isometry_check(phi: LinearMap, q1: SuperForm, q2: SuperForm,
                   name: str = "isometry") -> Check:
    """q2(phi x, phi y) = q1(x, y) on basis pairs."""
    if phi.domain.dim != q1.dim or phi.codomain.dim != q2.dim:
        raise DimensionMismatch("phi does not map between the form spaces")
    P = phi.matrix
    L = mat_mul(mat_mul(transpose(P), q2.gram), P)
    res = {(i, j): L[i][j] - q1.gram[i][j] for i in range(q1.dim) for j in range(q1.dim)
           if L[i][j] != q1.gram[i][j]}
    return _scalar_check(name, res, q1.space.names)


# -------------------------------------------------------------- T* pieces

def qg_form(g: ThreeBihomLieSuper) -> SuperForm:
    """q_g(x + f, y + h) = f(y) + (-1)^{|x||y|} h(x) on g + g*."""
    n, p = g.dim, g.space.parity
    sp = g.space.direct_sum(g.space.dual())
    G = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        G[n + i][i] = Fraction(1)
        G[i][n + i] = Fraction(sign(p[i]))
    return SuperForm(sp, G)


def lemma_theta_condition(g: ThreeBihomLieSuper, th: Cocycle) -> Check:
    """θ(b x1, b x2, a x3)(a x4) + (-1)^{|x3||x4|} θ(b x1, b x2, a x4)(a x3) = 0."""
    n, p = g.dim, g.space.parity
    if th.module.dim != n:
        raise DimensionMismatch("theta must take values in g*")
    A, B = g.alpha.columns, g.beta.columns
    T = {t: th.eval_sparse(B[t[0]], B[t[1]], A[t[2]])
         for t in itertools.product(range(n), repeat=3)}

    def ev(f, x):
        return sum((c * x.get(i, ZERO) for i, c in f.items()), ZERO)
    res = {}
    for x1, x2, x3, x4 in itertools.product(range(n), repeat=4):
        r = ev(T[(x1, x2, x3)], A[x4]) + sign(p[x3] * p[x4]) * ev(T[(x1, x2, x4)], A[x3])
        if r:
            res[(x1, x2, x3, x4)] = r
    return _scalar_check("lemma-theta-condition", res, g.space.names)


def tstar_bundle(g: ThreeBihomLieSuper, th: Cocycle | None = None) -> QuadraticAlgebra:
    """(g + g*, [.,.,.]_theta, α + α~, β + β~) with q_g, without verifying any gate."""
    R = coadjoint_rep(g)
    if not g.alpha.is_invertible():
        raise SingularMap("alpha is not invertible", "alpha")
    if not g.beta.is_invertible():
        raise SingularMap("beta is not invertible", "beta")
    th = th if th is not None else Cocycle.zero(g.space, R.module)
    T = _extension(g, R, th, f"T*({g.name or 'g'})")
    return QuadraticAlgebra(T, qg_form(g))


def coadjoint_admissibility(g: ThreeBihomLieSuper) -> VerificationReport:
    return dual_rep(g, adjoint_rep(g)).report


def tstar_extension(g: ThreeBihomLieSuper, th: Cocycle | None = None) -> QuadraticAlgebra:
    rep = verify3(g)
    if not rep.overall:
        raise FailedPrecondition("verify3", rep, "g is not a 3-Bihom-Lie superalgebra")
    adm = coadjoint_admissibility(g)
    if not adm.overall:
        raise FailedPrecondition("coadjoint", adm, "the coadjoint module is not a representation")
    R = coadjoint_rep(g)
    th = th if th is not None else Cocycle.zero(g.space, R.module)
    coc = verify_cocycle(g, R, th)
    if not coc.overall:
        raise FailedPrecondition("verify_cocycle", coc, "theta is not a 3-cocycle")
    lem = lemma_theta_condition(g, th)
    if not lem.passed:
        raise FailedPrecondition("lemma_theta_condition",
                                 VerificationReport("theta", (lem,)),
                                 "theta violates the invariance condition")
    qa = tstar_bundle(g, th)
    post = VerificationReport("T* extension").merge(verify3(qa.algebra)) \
        .merge(verify_quadratic(qa))
    if not post.overall:
        raise ReportedMismatch(post, "T* extension fails its own verification")
    return qa


def series_lift_check(g: ThreeBihomLieSuper, th: Cocycle | None = None) -> VerificationReport:
    """g solvable => T*_theta(g) solvable; g nilpotent => T*_theta(g) nilpotent."""
    T = tstar_extension(g, th).algebra
    gs, gsl = is_solvable(g)
    ts, tsl = is_solvable(T)
    gn, gnl = is_nilpotent(g)
    tn, tnl = is_nilpotent(T)

    def desc(ok, length):
        return f"length {length}" if ok else "no"
    checks = (
        Check("solvable-lifts", (not gs) or ts,
              detail=f"g solvable: {desc(gs, gsl)}; extension solvable: {desc(ts, tsl)}"),
        Check("nilpotent-lifts", (not gn) or tn,
              detail=f"g nilpotent: {desc(gn, gnl)}; extension nilpotent: {desc(tn, tnl)}"),
    )
    return VerificationReport("series lifting", checks,
                              ("only the implications from g to the extension are asserted",))


# ----------------------------------------------------------- isotropic ideals

def _ideal_labels(I: Subspace, k) -> tuple:
    return tuple(f"I{i + 1}" for i in k)


def _bracket_span_zero(g, X, Y, Z):
    for x, y, z in itertools.product(X, Y, Z):
        v = g.bracket.eval_sparse(x, y, z)
        if v:
            return v, (x, y, z)
    return None


def isotropic_ideal_check(qa: QuadraticAlgebra, I: Subspace) -> VerificationReport:
    g, q = qa.algebra, qa.form
    N = g.dim
    if I.dim != N:
        raise DimensionMismatch("I is not a subspace of the algebra")
    if N % 2:
        raise DimensionMismatch("the algebra must have even dimension 2n")
    n = N // 2
    checks = [Check("half-dimension", I.rank == n, detail=f"dim I = {I.rank}, n = {n}")]
    Bs = [sparse(b) for b in I.basis]
    iso = {}
    for a, b in itertools.combinations_with_replacement(range(I.rank), 2):
        v = q.eval_sparse(Bs[a], Bs[b])
        if v:
            iso[(a, b)] = v
    if iso:
        k = min(iso)
        checks.append(failed("isotropic", _ideal_labels(I, k), (iso[k],)))
    else:
        checks.append(passed("isotropic"))
    checks.append(Check("ideal", is_ideal(I, g), detail="[I, g, g] in I, α(I) in I, β(I) in I"))
    for nm, f in (("alpha-invariant", g.alpha), ("beta-invariant", g.beta)):
        checks.append(Check(nm, all(I.contains(f(b)) for b in I.basis)))
    notes = []
    if all(c.passed for c in checks):
        checks.append(Check("orthogonal-equals-I", q.orthogonal(I) == I))
        bI = [g.beta.apply_sparse(b) for b in Bs]
        aI = [g.alpha.apply_sparse(b) for b in Bs]
        bg, ag = list(g.beta.columns), list(g.alpha.columns)
        hit = _bracket_span_zero(g, bI, bg, aI)
        checks.append(Check("lemma-proved-form", hit is None,
                            residual=dense(hit[0], N) if hit else None,
                            detail="[β(I), β(g), α(I)] = 0"))
        hit = _bracket_span_zero(g, bI, bg, ag)
        notes.append("stated form [β(I), β(g), α(g)] = 0 " +
                     ("holds" if hit is None else "does not hold for this I"))
    return VerificationReport("isotropic ideal", tuple(checks), tuple(notes))


def isotropic_complement(qa: QuadraticAlgebra, I: Subspace) -> Subspace:
    """Isotropic B0 with g = B0 + I, by correcting a coordinate complement."""
    q = qa.form
    N = qa.dim
    n = N // 2
    if I.rank * 2 != N or any(q.eval_sparse(sparse(a), sparse(b))
                              for a, b in itertools.product(I.basis, repeat=2)):
        raise FailedPrecondition("isotropy", None, "I must be isotropic of half dimension")
    try:
        H = I.homogeneous_basis(qa.algebra.space)
    except ParityError as exc:
        raise ParityObstruction("I is not a graded subspace") from exc
    C, acc = [], Subspace(H, N)
    for k in range(N):
        e = unit_vec(N, k)
        if not acc.contains(e):
            C.append(e)
            acc = acc.sum(Subspace([e], N))
    Hs, Cs = [sparse(h) for h in H], [sparse(c) for c in C]
    P = [[q.eval_sparse(h, c) for c in Cs] for h in Hs]
    if rank(P) < n:
        raise NoDualBasis("q pairs I and its complement degenerately")
    X = inverse_matrix(P)
    # d_i = sum_a X[i][a] h_a satisfies q(d_i, c_j) = delta_ij
    D = [tuple(sum((X[i][a] * H[a][t] for a in range(n)), ZERO) for t in range(N))
         for i in range(n)]
    half = Fraction(1, 2)
    out = []
    for i in range(n):
        b = list(C[i])
        for j in range(n):
            c = half * q.eval_sparse(Cs[i], Cs[j])
            if c:
                b = [x - c * y for x, y in zip(b, D[j])]
        out.append(tuple(b))
    for a, b in itertools.combinations_with_replacement(out, 2):
        if q(a, b):
            raise ParityObstruction("correction did not produce an isotropic complement")
    return Subspace(out, N)


# ----------------------------------------------------------- reconstruction

@dataclass(frozen=True)
class Reconstruction:
    B: ThreeBihomLieSuper
    theta: Cocycle
    phi: LinearMap
    tstar: QuadraticAlgebra
    report: VerificationReport


def reconstruct_tstar(qa: QuadraticAlgebra, I: Subspace) -> Reconstruction:
    """Recover B = g/I, θ and an isometry φ : g -> T*_θ(B)."""
    g, q = qa.algebra, qa.form
    N = g.dim
    n = N // 2
    if not g.is_regular():
        raise FailedPrecondition("regular", None, "α and β must be invertible")
    pre = isotropic_ideal_check(qa, I)
    if not pre.overall:
        raise FailedPrecondition("isotropic_ideal_check", pre)
    B0 = isotropic_complement(qa, I)
    Hb = list(B0.basis)
    Hi = list(I.homogeneous_basis(g.space))
    sp = g.space
    par_b = tuple(sp.parity_of(b) for b in Hb)
    if any(x is None for x in par_b):
        raise ParityObstruction("complement basis is not homogeneous")
    Bsp = GradedSpace(n, par_b, tuple(f"b{k + 1}" for k in range(n)))
    P = transpose(Hb + Hi)
    Pinv = inverse_matrix(P)

    def p0(v):
        c = dense(v, N) if isinstance(v, dict) else v
        return {k: x for k in range(n) if (x := sum((Pinv[k][t] * c[t] for t in range(N)),
                                                    ZERO))}

    def p1(v):
        c = dense(v, N) if isinstance(v, dict) else v
        return {k: x for k in range(n) if (x := sum((Pinv[n + k][t] * c[t] for t in range(N)),
                                                    ZERO))}
    Bsparse = [sparse(b) for b in Hb]
    br_entries, th_entries = {}, {}
    # q*(i_a)(b_k) = q(i_a, b_k)
    Q = tuple(tuple(q(Hi[a], Hb[k]) for a in range(n)) for k in range(n))
    for t in itertools.product(range(n), repeat=3):
        v = g.bracket.eval_sparse(*(Bsparse[k] for k in t))
        if v:
            br_entries[t] = p0(v)
            w = p1(v)
            th = {}
            for a, c in w.items():
                for k in range(n):
                    if Q[k][a]:
                        th[k] = th.get(k, ZERO) + c * Q[k][a]
            th_entries[t] = {k: c for k, c in th.items() if c}
    bar = {}
    for nm, f in (("alpha", g.alpha), ("beta", g.beta)):
        cols = [dense(p0(f(b)), n) for b in Hb]
        bar[nm] = LinearMap(transpose(cols), Bsp)
    Balg = ThreeBihomLieSuper(Bsp, Bracket(Bsp, 3, br_entries), bar["alpha"], bar["beta"],
                              f"{g.name or 'g'}/I")
    theta = Cocycle(Bsp, Bsp.dual(), th_entries)
    T = tstar_bundle(Balg, theta)
    blk = [[ZERO] * N for _ in range(N)]
    for k in range(n):
        blk[k][k] = Fraction(1)
        for a in range(n):
            blk[n + k][n + a] = Q[k][a]
    phi = LinearMap(mat_mul(blk, Pinv), sp, T.algebra.space)
    proj = LinearMap(tuple(Pinv[k] for k in range(n)), sp, Bsp)
    kernel = Subspace(nullspace(proj.matrix, N), N)
    checks = [
        Check("q-star-bijective", rank(Q) == n, detail=f"rank {rank(Q)} of {n}"),
        Check("phi-bijective", phi.is_invertible()),
        _renamed(is_morphism(phi, g, T.algebra), "phi-morphism"),
        isometry_check(phi, q, T.form, "phi-isometry"),
        _renamed(is_morphism(proj, g, Balg), "quotient-morphism"),
        Check("quotient-kernel-is-I", kernel == I),
    ]
    report = VerificationReport("T* reconstruction", tuple(checks), pre.notes) \
        .merge(verify3(Balg), "B:") \
        .merge(verify_cocycle(Balg, coadjoint_rep(Balg), theta), "theta:") \
        .extend([lemma_theta_condition(Balg, theta)]) \
        .merge(verify3(T.algebra), "T*:") \
        .merge(verify_quadratic(T), "T*:")
    if not report.overall:
        raise ReportedMismatch(report)
    return Reconstruction(Balg, theta, phi, T, report)


def _renamed(c: Check, name: str) -> Check:
    return Check(name, c.passed, c.witness, c.residual,
                 c.detail or ("" if c.passed else f"{c.name} fails"))


def dual_ideal(g_dim: int) -> Subspace:
    """g* inside g + g*."""
    N = 2 * g_dim
    return Subspace((unit_vec(N, g_dim + k) for k in range(g_dim)), N)
