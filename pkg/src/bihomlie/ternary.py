"""3-Bihom-Lie superalgebras and their constructions.

Axioms are checked on basis tuples; by multilinearity this is equivalent to
checking them on all elements.  Skewsymmetry and Jacobi are evaluated on the
(beta, beta, alpha) images exactly as written, so no invertibility is needed
to verify an algebra.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

from ._common import (check_map_on, commute_check, map_equation_check, morphism_residuals,
                      multiplicative_check)
from .errors import (DimensionMismatch, FailedPrecondition, MapsDoNotCommute,
                     NotAHomomorphism, NotFixedPoint, OddAssociativeFactor, SingularMap,
                     SymmetryConditionFails)
from .graded import (Bracket, GradedSpace, LinearMap, SparseEliminator, Subspace,
                     block_diag, dense, kron, sign, sp_iadd, sparse, unit_vec, vec)
from .report import Check, VerificationReport, failed, from_residuals, labels, passed


@dataclass(frozen=True)
class ThreeBihomLieSuper:
    space: GradedSpace
    bracket: Bracket
    alpha: LinearMap
    beta: LinearMap
    name: str = ""

    def __post_init__(self):
        if self.bracket.arity != 3:
            raise DimensionMismatch("a ternary algebra needs an arity-3 bracket")
        if self.bracket.space.dim != self.space.dim:
            raise DimensionMismatch("bracket and space dimensions differ")
        check_map_on(self.space, self.alpha, "alpha")
        check_map_on(self.space, self.beta, "beta")

    @property
    def dim(self) -> int:
        return self.space.dim

    def __call__(self, x, y, z) -> tuple:
        return self.bracket(x, y, z)

    def is_regular(self) -> bool:
        return self.alpha.is_invertible() and self.beta.is_invertible()

    def renamed(self, name: str) -> "ThreeBihomLieSuper":
        return ThreeBihomLieSuper(self.space, self.bracket, self.alpha, self.beta, name)


def three_lie(space: GradedSpace, bracket: Bracket, name: str = "") -> ThreeBihomLieSuper:
    """A 3-Lie superalgebra, i.e. the case alpha = beta = Id."""
    ident = LinearMap.identity(space)
    return ThreeBihomLieSuper(space, bracket, ident, ident, name)


# ------------------------------------------------------------------ axioms

def skew_residuals3(a: ThreeBihomLieSuper) -> tuple[dict, dict]:
    """Residuals of both skewsymmetry forms on (beta, beta, alpha) images.

    First:  [bx, by, az] + (-1)^{|x||y|} [by, bx, az]
    Second: [bx, by, az] + (-1)^{|y||z|} [bx, bz, ay]
    """
    n, p = a.dim, a.space.parity
    A, B = a.alpha.columns, a.beta.columns
    br = a.bracket
    S = {t: br.eval_sparse(B[t[0]], B[t[1]], A[t[2]])
         for t in itertools.product(range(n), repeat=3)}
    first, second = {}, {}
    for x, y, z in S:
        r = dict(S[(x, y, z)])
        sp_iadd(r, S[(y, x, z)], sign(p[x] * p[y]))
        if r:
            first[(x, y, z)] = r
        r = dict(S[(x, y, z)])
        sp_iadd(r, S[(x, z, y)], sign(p[y] * p[z]))
        if r:
            second[(x, y, z)] = r
    return first, second


def _inner_outer(a: ThreeBihomLieSuper):
    n = a.dim
    br = a.bracket
    A, B = a.alpha.columns, a.beta.columns
    B2 = (a.beta @ a.beta).columns
    inner = {}
    for t in itertools.product(range(n), repeat=3):
        v = br.eval_sparse(B[t[0]], B[t[1]], A[t[2]])
        if v:
            inner[t] = v
    actions = {}
    for pq in itertools.product(range(n), repeat=2):
        m = {}
        for k in range(n):
            v = br.eval_sparse(B2[pq[0]], B2[pq[1]], {k: 1})
            if v:
                m[k] = v
        if m:
            actions[pq] = m
    return inner, actions


def jacobi_residuals3(a: ThreeBihomLieSuper, form: str = "definition") -> dict:
    """Nonzero residuals of the 3-Bihom-super-Jacobi identity on basis 5-tuples.

    ``form="definition"`` uses the three-term right side
      s1 [b2 u, b2 v, [bx, by, az]] - s2 [b2 z, b2 v, [bx, by, au]]
                                    + s3 [b2 z, b2 u, [bx, by, av]]
    and ``form="cyclic"`` the cyclic sum over (u, v, z) with exponent gamma.
    Only 5-tuples touched by some nonzero term are visited.
    """
    if form not in ("definition", "cyclic"):
        raise ValueError("form must be 'definition' or 'cyclic'")
    p = a.space.parity
    inner, actions = _inner_outer(a)
    res: dict = {}

    def add(key, val, c):
        r = res.setdefault(key, {})
        sp_iadd(r, val, c)

    for (ta, tb, tc), w in inner.items():
        for (pp, qq), m in actions.items():
            val = {}
            for k, c in w.items():
                if k in m:
                    sp_iadd(val, m[k], c)
            if not val:
                continue
            add((pp, qq, ta, tb, tc), val, 1)
            if form == "definition":
                x, y, z, u, v = ta, tb, tc, pp, qq
                add((x, y, z, u, v), val,
                    -sign((p[u] + p[v]) * (p[x] + p[y] + p[z])))
                x, y, z, u, v = ta, tb, pp, tc, qq
                add((x, y, z, u, v), val,
                    sign((p[z] + p[v]) * (p[x] + p[y]) + p[u] * p[v]))
                x, y, z, u, v = ta, tb, pp, qq, tc
                add((x, y, z, u, v), val,
                    -sign((p[z] + p[u]) * (p[x] + p[y])))
            else:
                x, y, z, u, v = ta, tb, tc, pp, qq
                add((x, y, z, u, v), val,
                    -sign(p[z] * p[v] + (p[u] + p[v]) * (p[x] + p[y]) + p[z] * p[u]))
                x, y, v, z, u = ta, tb, pp, qq, tc
                add((x, y, z, u, v), val,
                    -sign(p[z] * p[v] + (p[v] + p[z]) * (p[x] + p[y]) + p[u] * p[v]))
                x, y, z, u, v = ta, tb, pp, qq, tc
                add((x, y, z, u, v), val,
                    -sign(p[z] * p[v] + (p[z] + p[u]) * (p[x] + p[y]) + p[v] * p[z]))
    return {k: v for k, v in sorted(res.items()) if v}


def verify3(a: ThreeBihomLieSuper, jacobi_form: str = "definition") -> VerificationReport:
    names, n = a.space.names, a.dim
    first, second = skew_residuals3(a)
    checks = [
        commute_check("alpha-beta-commute", a.alpha, a.beta, names),
        multiplicative_check("alpha-multiplicative", a.bracket, a.alpha),
        multiplicative_check("beta-multiplicative", a.bracket, a.beta),
        from_residuals("skewsymmetry-12", first, names, n),
        from_residuals("skewsymmetry-23", second, names, n),
        from_residuals("jacobi", jacobi_residuals3(a, jacobi_form), names, n),
    ]
    return VerificationReport(a.name or "3-Bihom-Lie superalgebra", tuple(checks))


def require_verified(a: ThreeBihomLieSuper, gate: str = "verify3"):
    rep = verify3(a)
    if not rep.overall:
        raise FailedPrecondition(gate, rep, f"{a.name or 'input'} fails verify3")
    return rep


# ------------------------------------------------------------------ twists

def require_homomorphism(f: LinearMap, br: Bracket, what: str):
    res = morphism_residuals(f, br, br)
    if res:
        key = min(res)
        raise NotAHomomorphism(f"{what} is not a bracket homomorphism",
                               labels(br.space.names, key), dense(res[key], br.space.dim))


def require_commuting(maps: dict):
    """Every pair of the named maps must commute."""
    for (na, fa), (nb, fb) in itertools.combinations(maps.items(), 2):
        c = commute_check(f"{na} o {nb}", fa, fb, fa.domain.names)
        if not c.passed:
            raise MapsDoNotCommute(f"{na} and {nb} do not commute", c.witness, c.residual)


def twist_from_3lie(g: ThreeBihomLieSuper, a: LinearMap, b: LinearMap) -> ThreeBihomLieSuper:
    """[x, y, z] -> [a x, a y, b z] with structure maps (a, b)."""
    if not (g.alpha.is_identity() and g.beta.is_identity()):
        raise FailedPrecondition("identity-maps", None, "input must have alpha = beta = Id")
    require_verified(g)
    check_map_on(g.space, a, "a")
    check_map_on(g.space, b, "b")
    require_homomorphism(a, g.bracket, "a")
    require_homomorphism(b, g.bracket, "b")
    require_commuting({"a": a, "b": b})
    br = g.bracket.precompose([a, a, b])
    return ThreeBihomLieSuper(g.space, br, a, b, g.name and f"{g.name} twisted")


def twist_compose(g: ThreeBihomLieSuper, a2: LinearMap, b2: LinearMap) -> ThreeBihomLieSuper:
    """([.,.,.] o (a2 x a2 x b2), alpha o a2, beta o b2)."""
    check_map_on(g.space, a2, "a2")
    check_map_on(g.space, b2, "b2")
    require_homomorphism(a2, g.bracket, "a2")
    require_homomorphism(b2, g.bracket, "b2")
    require_commuting({"alpha": g.alpha, "beta": g.beta, "a2": a2, "b2": b2})
    br = g.bracket.precompose([a2, a2, b2])
    return ThreeBihomLieSuper(g.space, br, g.alpha @ a2, g.beta @ b2, g.name)


def twist_power_k(g: ThreeBihomLieSuper, k: int) -> ThreeBihomLieSuper:
    if k < 0:
        raise ValueError("k must be a natural number")
    require_verified(g)
    return twist_compose(g, g.alpha.power(k), g.beta.power(k))


def _sum(g: ThreeBihomLieSuper, h: ThreeBihomLieSuper) -> ThreeBihomLieSuper:
    sp = g.space.direct_sum(h.space)
    off = g.dim
    entries = dict(g.bracket.items())
    for key, val in h.bracket.items():
        entries[tuple(i + off for i in key)] = {i + off: c for i, c in val.items()}
    br = Bracket(sp, 3, entries)
    alpha = LinearMap(block_diag(g.alpha.matrix, h.alpha.matrix, g.dim, h.dim), sp)
    beta = LinearMap(block_diag(g.beta.matrix, h.beta.matrix, g.dim, h.dim), sp)
    name = f"{g.name} + {h.name}" if g.name or h.name else ""
    return ThreeBihomLieSuper(sp, br, alpha, beta, name)


def direct_sum(g: ThreeBihomLieSuper, h: ThreeBihomLieSuper) -> ThreeBihomLieSuper:
    require_verified(g, "verify3(g)")
    require_verified(h, "verify3(h)")
    return _sum(g, h)


# ------------------------------------------------- associative superalgebras

@dataclass(frozen=True)
class TotAssoc3:
    space: GradedSpace
    mu: Bracket
    alpha: LinearMap
    beta: LinearMap
    name: str = ""

    def __post_init__(self):
        if self.mu.arity != 3 or self.mu.space.dim != self.space.dim:
            raise DimensionMismatch("mu must be a ternary product on the space")
        check_map_on(self.space, self.alpha, "alpha")
        check_map_on(self.space, self.beta, "beta")

    @property
    def dim(self) -> int:
        return self.space.dim


def _assoc_terms(A: TotAssoc3):
    """Yield (5-tuple, L1, L2, L3) for the three placements of the inner product."""
    n = A.dim
    mu = A.mu
    al, be = A.alpha.columns, A.beta.columns
    for t in itertools.product(range(n), repeat=5):
        a1, a2, a3, a4, a5 = t
        l1 = mu.eval_sparse(mu.basis_value((a1, a2, a3)), be[a4], be[a5])
        l2 = mu.eval_sparse(al[a1], mu.basis_value((a2, a3, a4)), be[a5])
        l3 = mu.eval_sparse(al[a1], al[a2], mu.basis_value((a3, a4, a5)))
        yield t, l1, l2, l3


def _assoc_base_checks(A: TotAssoc3) -> list[Check]:
    names = A.space.names
    return [commute_check("alpha-beta-commute", A.alpha, A.beta, names),
            multiplicative_check("alpha-multiplicative", A.mu, A.alpha),
            multiplicative_check("beta-multiplicative", A.mu, A.beta)]


def verify_tot_assoc(A: TotAssoc3) -> VerificationReport:
    n, names = A.dim, A.space.names
    r12, r23 = {}, {}
    for t, l1, l2, l3 in _assoc_terms(A):
        d = sp_iadd(dict(l1), l2, -1)
        if d:
            r12[t] = d
        d = sp_iadd(dict(l2), l3, -1)
        if d:
            r23[t] = d
    checks = _assoc_base_checks(A) + [
        from_residuals("total-associativity-12", r12, names, n),
        from_residuals("total-associativity-23", r23, names, n)]
    return VerificationReport(A.name or "3-totally Bihom-associative", tuple(checks))


def verify_partial_assoc(A: TotAssoc3) -> VerificationReport:
    n, names = A.dim, A.space.names
    res = {}
    for t, l1, l2, l3 in _assoc_terms(A):
        d = sp_iadd(sp_iadd(dict(l1), l2), l3)
        if d:
            res[t] = d
    checks = _assoc_base_checks(A) + [from_residuals("partial-associativity", res, names, n)]
    return VerificationReport(A.name or "3-partially Bihom-associative", tuple(checks))


def symmetry_residuals(A: TotAssoc3) -> tuple[dict, dict]:
    """mu(b a1, b a2, al a3) against its (12) and (23) rearrangements."""
    n = A.dim
    al, be = A.alpha.columns, A.beta.columns
    S = {t: A.mu.eval_sparse(be[t[0]], be[t[1]], al[t[2]])
         for t in itertools.product(range(n), repeat=3)}
    r12, r23 = {}, {}
    for (x, y, z), v in S.items():
        d = sp_iadd(dict(v), S[(y, x, z)], -1)
        if d:
            r12[(x, y, z)] = d
        d = sp_iadd(dict(v), S[(x, z, y)], -1)
        if d:
            r23[(x, y, z)] = d
    return r12, r23


def tensor_assoc(A: TotAssoc3, g: ThreeBihomLieSuper,
                 allow_odd: bool = False) -> ThreeBihomLieSuper:
    """A (x) g with bracket mu(a1,a2,a3) (x) [x1,x2,x3] and product structure maps."""
    if any(A.space.parity):
        if not allow_odd:
            raise OddAssociativeFactor("the associative factor must be purely even")
        warnings.warn("odd associative factor: no Koszul signs are inserted for A; "
                      "the result is only accepted if verify3 passes", stacklevel=2)
    for res in symmetry_residuals(A):
        if res:
            key = min(res)
            raise SymmetryConditionFails("symmetry condition on A fails",
                                         labels(A.space.names, key), dense(res[key], A.dim))
    rep = verify_tot_assoc(A)
    if not rep.overall:
        raise FailedPrecondition("verify_tot_assoc", rep, "A is not 3-totally Bihom-associative")
    require_verified(g)
    na, ng = A.dim, g.dim
    names = tuple(f"{a}⊗{x}" for a in A.space.names for x in g.space.names)
    parity = tuple((A.space.parity[i] + g.space.parity[x]) % 2
                   for i in range(na) for x in range(ng))
    sp = GradedSpace(na * ng, parity, names)
    entries = {}
    for (i, j, k), mv in A.mu.items():
        for (x, y, z), gv in g.bracket.items():
            out = {}
            for l, c in mv.items():
                for m, d in gv.items():
                    out[l * ng + m] = c * d
            entries[(i * ng + x, j * ng + y, k * ng + z)] = out
    br = Bracket(sp, 3, entries)
    alpha = LinearMap(kron(A.alpha.matrix, g.alpha.matrix), sp)
    beta = LinearMap(kron(A.beta.matrix, g.beta.matrix), sp)
    out = ThreeBihomLieSuper(sp, br, alpha, beta,
                             f"{A.name or 'A'} ⊗ {g.name or 'g'}")
    if allow_odd and any(A.space.parity):
        require_verified(out, "verify3(A ⊗ g)")
    return out


# --------------------------------------------------------------- morphisms

def is_morphism(f: LinearMap, g: ThreeBihomLieSuper, h: ThreeBihomLieSuper) -> Check:
    """Truthy Check; on failure names the violated condition and a witness."""
    if f.domain.dim != g.dim or f.codomain.dim != h.dim:
        raise DimensionMismatch("f does not map g to h")
    res = morphism_residuals(f, g.bracket, h.bracket)
    if res:
        key = min(res)
        return failed("bracket", labels(g.space.names, key), dense(res[key], h.dim))
    for nm, a, b in (("alpha", g.alpha, h.alpha), ("beta", g.beta, h.beta)):
        c = map_equation_check(nm, f @ a, b @ f, g.space.names)
        if not c.passed:
            return c
    return passed("morphism")


def graph(f: LinearMap, g: ThreeBihomLieSuper, h: ThreeBihomLieSuper) -> Subspace:
    """The graph {x + f(x)} inside g + h."""
    return Subspace((unit_vec(g.dim, j) + f(unit_vec(g.dim, j)) for j in range(g.dim)),
                    g.dim + h.dim)


def graph_is_subalgebra(f: LinearMap, g: ThreeBihomLieSuper, h: ThreeBihomLieSuper) -> bool:
    if f.domain.dim != g.dim or f.codomain.dim != h.dim:
        raise DimensionMismatch("f does not map g to h")
    return is_subalgebra(graph(f, g, h), _sum(g, h))


# -------------------------------------------------------------- subobjects

def _invariant(S: Subspace, f: LinearMap) -> bool:
    return all(S.contains(f(b)) for b in S.basis)


def is_subalgebra(S: Subspace, g: ThreeBihomLieSuper) -> bool:
    if not (_invariant(S, g.alpha) and _invariant(S, g.beta)):
        return False
    B = [sparse(b) for b in S.basis]
    return all(S.contains_sparse(g.bracket.eval_sparse(x, y, z))
               for x, y, z in itertools.product(B, repeat=3))


def is_ideal(S: Subspace, g: ThreeBihomLieSuper) -> bool:
    """alpha(S), beta(S) in S and [S, g, g] in S (first slot, as defined)."""
    if not (_invariant(S, g.alpha) and _invariant(S, g.beta)):
        return False
    E = [{i: 1} for i in range(g.dim)]
    return all(S.contains_sparse(g.bracket.eval_sparse(sparse(s), y, z))
               for s in S.basis for y in E for z in E)


def _annihilator(g: ThreeBihomLieSuper, Y) -> Subspace:
    """{x : [x, y1, y2] = 0 for all y1, y2 in the list Y}."""
    n = g.dim
    el = SparseEliminator(n)
    for y1, y2 in itertools.product(Y, repeat=2):
        rows: dict = {}
        for a in range(n):
            for l, c in g.bracket.eval_sparse({a: 1}, y1, y2).items():
                rows.setdefault(l, {})[a] = c
        for r in rows.values():
            el.add(r)
    return Subspace(el.nullspace(), n)


def center(g: ThreeBihomLieSuper) -> Subspace:
    return _annihilator(g, [{i: 1} for i in range(g.dim)])


def ab_center(g: ThreeBihomLieSuper) -> Subspace:
    return _annihilator(g, list((g.alpha @ g.beta).columns))


# ------------------------------------------------------------- derivations

@dataclass(frozen=True)
class DerivationRequest:
    s: int = 0
    r: int = 0
    parity: int = 0

    def __post_init__(self):
        if self.s < 0 or self.r < 0 or self.parity not in (0, 1):
            raise ValueError("s, r must be natural and parity 0 or 1")


def twist_map(g: ThreeBihomLieSuper, s: int, r: int) -> LinearMap:
    """alpha^s beta^r."""
    return g.alpha.power(s) @ g.beta.power(r)


def derivation_residuals(D: LinearMap, g: ThreeBihomLieSuper, s: int, r: int) -> dict:
    """(x,y,z) -> D[x,y,z] - (twisted graded Leibniz right side), nonzero only."""
    n, p, d = g.dim, g.space.parity, D.parity
    T = twist_map(g, s, r).columns
    Dc = D.columns
    br = g.bracket
    out = {}
    for x, y, z in itertools.product(range(n), repeat=3):
        res = D.apply_sparse(br.basis_value((x, y, z)))
        sp_iadd(res, br.eval_sparse(Dc[x], T[y], T[z]), -1)
        sp_iadd(res, br.eval_sparse(T[x], Dc[y], T[z]), -sign(p[x] * d))
        sp_iadd(res, br.eval_sparse(T[x], T[y], Dc[z]), -sign((p[x] + p[y]) * d))
        if res:
            out[(x, y, z)] = res
    return out


def is_derivation(D: LinearMap, g: ThreeBihomLieSuper, s: int, r: int) -> Check:
    names = g.space.names
    for nm, f in (("alpha", g.alpha), ("beta", g.beta)):
        c = map_equation_check(f"D o {nm} = {nm} o D", D @ f, f @ D, names)
        if not c.passed:
            return c
    return from_residuals("leibniz", derivation_residuals(D, g, s, r), names, g.dim)


def derivation_space(g: ThreeBihomLieSuper, req: DerivationRequest | None = None,
                     **kw) -> list[LinearMap]:
    """Basis of Der_{alpha^s beta^r}(g) among maps of the requested parity."""
    req = req or DerivationRequest(**kw)
    n, p, d = g.dim, g.space.parity, req.parity
    var = [(i, j) for i in range(n) for j in range(n) if (p[i] + p[j]) % 2 == d]
    index = {ij: k for k, ij in enumerate(var)}
    el = SparseEliminator(len(var))
    A, B = g.alpha.matrix, g.beta.matrix
    # D f - f D = 0 for f in (alpha, beta): entry (i, j) = sum_k D_ik f_kj - f_ik D_kj
    for M in (A, B):
        for i in range(n):
            for j in range(n):
                row = {}
                for k in range(n):
                    if M[k][j] and (i, k) in index:
                        row[index[(i, k)]] = row.get(index[(i, k)], 0) + M[k][j]
                    if M[i][k] and (k, j) in index:
                        row[index[(k, j)]] = row.get(index[(k, j)], 0) - M[i][k]
                el.add(row)
    T = twist_map(g, req.s, req.r).columns
    br = g.bracket
    E = [{i: 1} for i in range(n)]
    for x, y, z in itertools.product(range(n), repeat=3):
        rows: dict = {}

        def put(vecval, v, c):
            for l, coef in vecval.items():
                rows.setdefault(l, {})
                rows[l][v] = rows[l].get(v, 0) + c * coef

        # D([x,y,z]) = sum_k c_k D e_k: variable (l, k) contributes c_k at output l
        for k, ck in br.basis_value((x, y, z)).items():
            for l in range(n):
                if (l, k) in index:
                    put({l: ck}, index[(l, k)], 1)
        sx, sy = -sign(p[x] * d), -sign((p[x] + p[y]) * d)
        for i in range(n):
            if (i, x) in index:
                put(br.eval_sparse(E[i], T[y], T[z]), index[(i, x)], -1)
            if (i, y) in index:
                put(br.eval_sparse(T[x], E[i], T[z]), index[(i, y)], sx)
            if (i, z) in index:
                put(br.eval_sparse(T[x], T[y], E[i]), index[(i, z)], sy)
        for r in rows.values():
            el.add(r)
    out = []
    for sol in el.nullspace():
        M = [[0] * n for _ in range(n)]
        for k, (i, j) in enumerate(var):
            M[i][j] = sol[k]
        out.append(LinearMap(M, g.space, g.space, d))
    return out


def supercommutator(D: LinearMap, E: LinearMap) -> LinearMap:
    """[D, E] = D E - (-1)^{|D||E|} E D."""
    de, ed = D @ E, E @ D
    return de - ed if not (D.parity and E.parity) else de + ed


def inner_derivation(g: ThreeBihomLieSuper, u1, u2, r: int = 0, s: int = 0) -> LinearMap:
    """w -> [u1, u2, alpha^r beta^s (w)] for fixed points u1, u2 of alpha and beta."""
    if not g.alpha.is_invertible():
        raise SingularMap("alpha is not invertible", "alpha")
    if not g.beta.is_invertible():
        raise SingularMap("beta is not invertible", "beta")
    u1, u2 = vec(u1), vec(u2)
    p1, p2 = g.space.parity_of(u1), g.space.parity_of(u2)
    if p1 is None or p2 is None:
        raise NotFixedPoint("u1 and u2 must be homogeneous", "homogeneous")
    for nm, u in (("u1", u1), ("u2", u2)):
        if g.alpha(u) != u:
            raise NotFixedPoint(f"alpha({nm}) != {nm}", f"alpha({nm})={nm}")
        if g.beta(u) != u:
            raise NotFixedPoint(f"beta({nm}) != {nm}", f"beta({nm})={nm}")
    T = (g.alpha.power(r) @ g.beta.power(s)).columns
    a, b = sparse(u1), sparse(u2)
    cols = [dense(g.bracket.eval_sparse(a, b, T[j]), g.dim) for j in range(g.dim)]
    return LinearMap.from_columns(cols, g.space, g.space, (p1 + p2) % 2)


# ------------------------------------------------------------------ series

def bracket_span(g: ThreeBihomLieSuper, S1: Subspace, S2: Subspace, S3: Subspace) -> Subspace:
    vals = (dense(g.bracket.eval_sparse(sparse(a), sparse(b), sparse(c)), g.dim)
            for a in S1.basis for b in S2.basis for c in S3.basis)
    return Subspace(vals, g.dim)


def derived_series(g: ThreeBihomLieSuper) -> list[Subspace]:
    """g^(0) = g, g^(k+1) = [g^(k), g^(k), g], until zero or stationary."""
    G = Subspace.whole(g.dim)
    chain = [G]
    while chain[-1].rank:
        nxt = bracket_span(g, chain[-1], chain[-1], G)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def central_series(g: ThreeBihomLieSuper) -> list[Subspace]:
    """g^0 = g, g^(k+1) = [g^k, g, g], until zero or stationary."""
    G = Subspace.whole(g.dim)
    chain = [G]
    while chain[-1].rank:
        nxt = bracket_span(g, chain[-1], G, G)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def _length(chain) -> tuple[bool, int | None]:
    if chain[-1].rank == 0:
        return True, len(chain) - 1
    return False, None


def is_solvable(g: ThreeBihomLieSuper) -> tuple[bool, int | None]:
    return _length(derived_series(g))


def is_nilpotent(g: ThreeBihomLieSuper) -> tuple[bool, int | None]:
    return _length(central_series(g))
