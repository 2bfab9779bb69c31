"""Representations, semidirect products, 3-cocycles and T_theta-extensions.

Operators on the module are handled internally as tuples of sparse columns.
ρ is given on basis pairs and extended by super-skewsymmetry
ρ(e_j, e_i) = -(-1)^{p_i p_j} ρ(e_i, e_j).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from ._common import check_map_on, commute_check, map_equation_check, morphism_residuals
from .errors import (CocycleFails, DimensionMismatch, FailedPrecondition, IntertwiningFails,
                     ParityError, SingularMap)
from .graded import (ZERO, Bracket, GradedSpace, LinearMap, block_diag, dense, invert,
                     permutation_sign, scalar, sign, sp_iadd, sparse, vec)
from .report import Check, VerificationReport, from_residuals, sweep
from .ternary import ThreeBihomLieSuper, require_verified


# ------------------------------------------------------------ sparse operators

def _op_zero(m: int) -> list:
    return [{} for _ in range(m)]


def _op_apply(A, v: Mapping) -> dict:
    out: dict = {}
    for j, c in v.items():
        if A[j]:
            sp_iadd(out, A[j], c)
    return out


def _op_compose(A, B) -> list:
    return [_op_apply(A, col) for col in B]


def _op_iadd(acc: list, A, c=1) -> list:
    for j, col in enumerate(A):
        if col:
            sp_iadd(acc[j], col, c)
    return acc


def _op_nonzero(A) -> bool:
    return any(A)


def _op_matrix(A, m: int) -> tuple:
    return tuple(tuple(A[j].get(i, ZERO) for j in range(m)) for i in range(m))


# ------------------------------------------------------------ representation

class Representation:
    """(M, ρ, α_M, β_M) for an algebra on ``g_space``.

    ``rho`` maps index pairs (i, j) to matrices (row lists or LinearMaps) on
    M.  Only pairs with i <= j may be given when ``extend`` is True; the rest
    follow from super-skewsymmetry.
    """

    def __init__(self, g_space: GradedSpace, module: GradedSpace, rho: Mapping,
                 alpha_M: LinearMap, beta_M: LinearMap, extend: bool = True):
        self.g_space = g_space
        self.module = module
        check_map_on(module, alpha_M, "alpha_M")
        check_map_on(module, beta_M, "beta_M")
        self.alpha_M = alpha_M
        self.beta_M = beta_M
        n, p = g_space.dim, g_space.parity
        given = {}
        for key, mat in dict(rho).items():
            i, j = (int(t) for t in key)
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionMismatch(f"rho index {key} out of range")
            M = mat.matrix if isinstance(mat, LinearMap) else mat
            op = LinearMap(M, module, module, (p[i] + p[j]) % 2)
            if not op.is_zero():
                given[(i, j)] = op
        full = dict(given)
        if extend:
            for (i, j), op in given.items():
                if i > j and (j, i) in given:
                    continue
                other = op.scale(-sign(p[i] * p[j]))
                if (j, i) in full and full[(j, i)] != other:
                    raise ValueError(f"rho({i},{j}) contradicts super-skewsymmetry")
                if i == j and op != other:
                    raise ValueError(f"rho({i},{i}) must vanish for an even basis vector")
                full[(j, i)] = other
        self.maps = dict(sorted(full.items()))
        self._ops = {k: list(v.columns) for k, v in self.maps.items()}

    @property
    def dim(self) -> int:
        return self.module.dim

    def op(self, x: Mapping, y: Mapping) -> list:
        """ρ(x, y) for sparse x, y as sparse columns."""
        acc = _op_zero(self.dim)
        for i, a in x.items():
            for j, b in y.items():
                o = self._ops.get((i, j))
                if o:
                    _op_iadd(acc, o, a * b)
        return acc

    def rho(self, x, y) -> LinearMap:
        x, y = vec(x), vec(y)
        px, py = self.g_space.parity_of(x), self.g_space.parity_of(y)
        par = ((px or 0) + (py or 0)) % 2
        return LinearMap(_op_matrix(self.op(sparse(x), sparse(y)), self.dim),
                         self.module, self.module, par)

    def is_zero(self) -> bool:
        return not self.maps

    def __eq__(self, other) -> bool:
        return isinstance(other, Representation) and self.g_space == other.g_space \
            and self.module == other.module and self.maps == other.maps \
            and self.alpha_M == other.alpha_M and self.beta_M == other.beta_M

    def __repr__(self):
        return f"Representation(dim M={self.dim}, nonzero pairs={len(self.maps)})"


def adjoint_rep(g: ThreeBihomLieSuper) -> Representation:
    """ρ(x, y) = [x, y, .] on M = g with α_M = α, β_M = β."""
    n = g.dim
    rho = {}
    for i, j in itertools.product(range(n), repeat=2):
        cols = [dense(g.bracket.basis_value((i, j, k)), n) for k in range(n)]
        if any(any(c) for c in cols):
            rho[(i, j)] = tuple(tuple(c[r] for c in cols) for r in range(n))
    return Representation(g.space, g.space, rho, g.alpha, g.beta, extend=False)


def zero_rep(g: ThreeBihomLieSuper, module: GradedSpace | None = None,
             alpha_M: LinearMap | None = None, beta_M: LinearMap | None = None):
    module = module if module is not None else GradedSpace(0, ())
    return Representation(g.space, module, {}, alpha_M or LinearMap.identity(module),
                          beta_M or LinearMap.identity(module))


def _check_compatible(g: ThreeBihomLieSuper, R: Representation):
    if R.g_space.dim != g.dim or R.g_space.parity != g.space.parity:
        raise DimensionMismatch("representation is for a different algebra")


def _pair_residual_check(name, keys, fn, names, m):
    def residual(k):
        r = fn(k)
        return r if _op_nonzero(r) else None
    return sweep(name, list(keys), residual, names, lambda r: _op_matrix(r, m))


def rep_skew_check(g: ThreeBihomLieSuper, R: Representation) -> Check:
    n, p = g.dim, g.space.parity

    def res(k):
        i, j = k
        acc = _op_zero(R.dim)
        _op_iadd(acc, R._ops.get((i, j), []))
        _op_iadd(acc, R._ops.get((j, i), []), sign(p[i] * p[j]))
        return acc
    keys = itertools.combinations_with_replacement(range(n), 2)
    return _pair_residual_check("rho-skewsymmetry", keys, res, g.space.names, R.dim)


class _Images:
    """Cached images of basis vectors and ρ on them."""

    def __init__(self, g: ThreeBihomLieSuper, R: Representation):
        self.g, self.R = g, R
        self.A = g.alpha.columns
        self.B = g.beta.columns
        self.AB = (g.alpha @ g.beta).columns
        self.E = [{i: 1} for i in range(g.dim)]
        self.aM = list(R.alpha_M.columns)
        self.bM = list(R.beta_M.columns)
        self._cache = {}

    def rho(self, tag, x, y):
        """ρ on two cached basis images; tag names the images, e.g. ('AB', 'AB')."""
        key = (tag, x, y)
        r = self._cache.get(key)
        if r is None:
            r = self.R.op(getattr(self, tag[0])[x], getattr(self, tag[1])[y])
            self._cache[key] = r
        return r

    def bracket_bbx(self, u, v, x):
        """[β u, β v, x]."""
        return self.g.bracket.eval_sparse(self.B[u], self.B[v], self.E[x])


def verify_rep(g: ThreeBihomLieSuper, R: Representation) -> VerificationReport:
    """The four representation conditions, on basis pairs and quadruples."""
    _check_compatible(g, R)
    n, p, m = g.dim, g.space.parity, R.dim
    names = g.space.names
    I = _Images(g, R)
    checks = [commute_check("module-maps-commute", R.alpha_M, R.beta_M, R.module.names),
              rep_skew_check(g, R)]
    pairs = list(itertools.product(range(n), repeat=2))
    for nm, tag, fM in (("rep-1", ("A", "A"), I.aM), ("rep-2", ("B", "B"), I.bM)):
        def res(k, tag=tag, fM=fM):
            u, v = k
            acc = _op_compose(I.rho(tag, u, v), fM)
            _op_iadd(acc, _op_compose(fM, I.rho(("E", "E"), u, v)), -1)
            return acc
        checks.append(_pair_residual_check(nm, pairs, res, names, m))
    quads = list(itertools.product(range(n), repeat=4))

    def res3(k):
        u, v, x, y = k
        acc = _op_compose(I.rho(("AB", "AB"), u, v), I.rho(("E", "E"), x, y))
        _op_iadd(acc, _op_compose(I.rho(("B", "B"), x, y), I.rho(("A", "A"), u, v)),
                 -sign((p[u] + p[v]) * (p[x] + p[y])))
        _op_iadd(acc, _op_compose(R.op(I.bracket_bbx(u, v, x), I.B[y]), I.bM), -1)
        _op_iadd(acc, _op_compose(R.op(I.B[x], I.bracket_bbx(u, v, y)), I.bM),
                 -sign(p[x] * (p[u] + p[v])))
        return acc

    def res4(k):
        u, v, x, y = k
        acc = _op_compose(R.op(I.bracket_bbx(u, v, x), I.B[y]), I.bM)
        _op_iadd(acc, _op_compose(I.rho(("AB", "B"), v, x), I.rho(("A", "E"), u, y)),
                 -sign(p[u] * (p[x] + p[v])))
        _op_iadd(acc, _op_compose(I.rho(("B", "AB"), x, u), I.rho(("A", "E"), v, y)),
                 -sign(p[x] * (p[u] + p[v])))
        _op_iadd(acc, _op_compose(I.rho(("AB", "AB"), u, v), I.rho(("E", "E"), x, y)), -1)
        return acc

    checks.append(_pair_residual_check("rep-3", quads, res3, names, m))
    checks.append(_pair_residual_check("rep-4", quads, res4, names, m))
    return VerificationReport("representation", tuple(checks))


def dual_conditions(g: ThreeBihomLieSuper, R: Representation) -> VerificationReport:
    """The four conditions on (g, ρ) characterising when the dual is a representation.

    Here α_M and β_M act on the left of ρ(α x, α y), the mirror image of the
    representation conditions; both variants are kept as separately named checks.
    """
    _check_compatible(g, R)
    n, p, m = g.dim, g.space.parity, R.dim
    names = g.space.names
    I = _Images(g, R)
    pairs = list(itertools.product(range(n), repeat=2))
    checks = []
    for nm, tag, fM in (("dual-1", ("A", "A"), I.aM), ("dual-2", ("B", "B"), I.bM)):
        def res(k, tag=tag, fM=fM):
            x, y = k
            acc = _op_compose(fM, I.rho(tag, x, y))
            _op_iadd(acc, _op_compose(I.rho(("E", "E"), x, y), fM), -1)
            return acc
        checks.append(_pair_residual_check(nm, pairs, res, names, m))
    quads = list(itertools.product(range(n), repeat=4))

    def res3(k):
        u, v, x, y = k
        s = sign((p[x] + p[y]) * (p[u] + p[v]))
        acc = _op_compose(I.rho(("E", "E"), x, y), I.rho(("AB", "AB"), u, v))
        _op_iadd(acc, _op_compose(I.rho(("A", "A"), u, v), I.rho(("B", "B"), x, y)), -s)
        _op_iadd(acc, _op_compose(I.bM, R.op(I.bracket_bbx(u, v, x), I.B[y])), s)
        _op_iadd(acc, _op_compose(I.bM, R.op(I.B[x], I.bracket_bbx(u, v, y))),
                 sign(p[y] * (p[u] + p[v])))
        return acc

    def res4(k):
        u, v, x, y = k
        acc = _op_compose(I.bM, R.op(I.bracket_bbx(u, v, x), I.B[y]))
        _op_iadd(acc, _op_compose(I.rho(("A", "E"), u, y), I.rho(("AB", "B"), v, x)),
                 sign(p[y] * (p[v] + p[x])))
        _op_iadd(acc, _op_compose(I.rho(("A", "E"), v, y), I.rho(("B", "AB"), x, u)),
                 sign(p[u] * (p[x] + p[y] + p[v]) + p[x] * p[y]))
        _op_iadd(acc, _op_compose(I.rho(("E", "E"), x, y), I.rho(("AB", "AB"), u, v)),
                 sign((p[x] + p[y]) * (p[u] + p[v])))
        return acc

    checks.append(_pair_residual_check("dual-3", quads, res3, names, m))
    checks.append(_pair_residual_check("dual-4", quads, res4, names, m))
    return VerificationReport("dual-representation conditions", tuple(checks))


def dual_module(R: Representation) -> Representation:
    """(M*, ρ~, α~_M, β~_M) with ρ~(x,y)(f) = -(-1)^{|f|(|x|+|y|)} f o ρ(x,y)."""
    Mstar = R.module.dual()
    pm, pg = R.module.parity, R.g_space.parity
    m = R.dim
    rho = {}
    for (i, j), op in R.maps.items():
        s = pg[i] + pg[j]
        M = op.matrix
        rho[(i, j)] = tuple(tuple(-sign(pm[b] * s) * M[b][a] for b in range(m))
                            for a in range(m))
    return Representation(R.g_space, Mstar, rho, R.alpha_M.transpose(),
                          R.beta_M.transpose(), extend=False)


@dataclass(frozen=True)
class DualResult:
    representation: Representation
    report: VerificationReport
    conditions_hold: bool
    dual_is_rep: bool


def dual_rep(g: ThreeBihomLieSuper, R: Representation) -> DualResult:
    """Dual module plus a report comparing the two equivalent verdicts."""
    D = dual_module(R)
    cond = dual_conditions(g, R)
    rep = verify_rep(g, D)
    agree = cond.overall == rep.overall
    report = VerificationReport("dual representation").merge(cond).merge(rep, "dual:")
    report = report.extend([Check("verdicts-agree", agree,
                                  detail=f"conditions {'hold' if cond.overall else 'fail'}, "
                                         f"dual {'is' if rep.overall else 'is not'} "
                                         "a representation")])
    return DualResult(D, report, cond.overall, rep.overall)


def coadjoint_rep(g: ThreeBihomLieSuper) -> Representation:
    return dual_module(adjoint_rep(g))


# ------------------------------------------------------------------ cocycles

class Cocycle:
    """Even trilinear map g x g x g -> M stored sparsely."""

    def __init__(self, g_space: GradedSpace, module: GradedSpace, entries: Mapping = ()):
        self.g_space, self.module = g_space, module
        n, m = g_space.dim, module.dim
        clean = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for key, val in items:
            key = tuple(int(i) for i in key)
            if len(key) != 3 or any(not 0 <= i < n for i in key):
                raise DimensionMismatch(f"bad cocycle index {key}")
            out = {int(i): scalar(c) for i, c in val.items()} if isinstance(val, Mapping) \
                else sparse(vec(val))
            out = {i: c for i, c in out.items() if c}
            if any(not 0 <= i < m for i in out):
                raise DimensionMismatch(f"cocycle value out of range at {key}")
            par = sum(g_space.parity[i] for i in key) % 2
            if any(module.parity[i] != par for i in out):
                raise ParityError(f"theta at {key} is not even")
            if out:
                clean[key] = out
        self._entries = dict(sorted(clean.items()))

    @classmethod
    def from_skew(cls, g_space, module, entries) -> "Cocycle":
        """Extend by super-skewsymmetry of the underlying trilinear map."""
        full = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for key, val in items:
            base = {int(i): scalar(c) for i, c in val.items()} if isinstance(val, Mapping) \
                else sparse(vec(val))
            pars = [g_space.parity[i] for i in key]
            for perm in itertools.permutations(range(3)):
                k2 = tuple(key[q] for q in perm)
                s = permutation_sign(pars, perm)
                out = {i: s * c for i, c in base.items() if c}
                if k2 in full and full[k2] != out:
                    raise ValueError(f"entry {key} contradicts super-skewsymmetry at {k2}")
                full[k2] = out
        return cls(g_space, module, full)

    @classmethod
    def zero(cls, g_space, module) -> "Cocycle":
        return cls(g_space, module)

    def items(self):
        return self._entries.items()

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        return isinstance(other, Cocycle) and self.g_space == other.g_space \
            and self.module == other.module and self._entries == other._entries

    def __repr__(self):
        return f"Cocycle(nonzero={len(self)})"

    def basis_value(self, key) -> dict:
        return self._entries.get(tuple(key), {})

    def eval_sparse(self, x, y, z) -> dict:
        out: dict = {}
        get = self._entries.get
        for (i, a), (j, b), (k, c) in itertools.product(x.items(), y.items(), z.items()):
            v = get((i, j, k))
            if v:
                sp_iadd(out, v, a * b * c)
        return out

    def __call__(self, x, y, z) -> tuple:
        return dense(self.eval_sparse(sparse(vec(x)), sparse(vec(y)), sparse(vec(z))),
                     self.module.dim)

    def __add__(self, other: "Cocycle") -> "Cocycle":
        out = {k: dict(v) for k, v in self._entries.items()}
        for k, v in other.items():
            sp_iadd(out.setdefault(k, {}), v)
        return Cocycle(self.g_space, self.module, out)

    def is_zero(self) -> bool:
        return not self._entries


def verify_cocycle(g: ThreeBihomLieSuper, R: Representation, th: Cocycle) -> VerificationReport:
    _check_compatible(g, R)
    n, p, m = g.dim, g.space.parity, R.dim
    names = g.space.names
    A, B = g.alpha.columns, g.beta.columns
    checks = []
    for nm, f, fM in (("cocycle-1", A, R.alpha_M), ("cocycle-2", B, R.beta_M)):
        res = {}
        for t in itertools.product(range(n), repeat=3):
            r = fM.apply_sparse(th.basis_value(t))
            sp_iadd(r, th.eval_sparse(f[t[0]], f[t[1]], f[t[2]]), -1)
            if r:
                res[t] = r
        checks.append(from_residuals(nm, res, names, m))
    S = {t: th.eval_sparse(B[t[0]], B[t[1]], A[t[2]])
         for t in itertools.product(range(n), repeat=3)}
    r12, r23 = {}, {}
    for (x, y, z), v in S.items():
        r = sp_iadd(dict(v), S[(y, x, z)], sign(p[x] * p[y]))
        if r:
            r12[(x, y, z)] = r
        r = sp_iadd(dict(v), S[(x, z, y)], sign(p[y] * p[z]))
        if r:
            r23[(x, y, z)] = r
    checks.append(from_residuals("cocycle-3-12", r12, names, m))
    checks.append(from_residuals("cocycle-3-23", r23, names, m))
    checks.append(from_residuals("cocycle-4", cocycle4_residuals(g, R, th), names, m))
    return VerificationReport("3-cocycle", tuple(checks))


def cocycle4_residuals(g: ThreeBihomLieSuper, R: Representation, th: Cocycle) -> dict:
    """Residuals of the five-argument cocycle identity.

    With Phi(a,b; c,d,e) = θ(b²a, b²b, [bc, bd, αe]) + ρ(b²a, b²b) θ(bc, bd, αe),
    the identity reads
      Phi(x1,x2;x3,x4,x5) = s1 Phi(x4,x5;x1,x2,x3) - s2 Phi(x3,x5;x1,x2,x4)
                            + s3 Phi(x3,x4;x1,x2,x5).
    """
    n, p = g.dim, g.space.parity
    A, B = g.alpha.columns, g.beta.columns
    B2 = (g.beta @ g.beta).columns
    br = g.bracket
    inner_br = {t: br.eval_sparse(B[t[0]], B[t[1]], A[t[2]])
                for t in itertools.product(range(n), repeat=3)}
    inner_th = {t: th.eval_sparse(B[t[0]], B[t[1]], A[t[2]])
                for t in itertools.product(range(n), repeat=3)}
    ops = {(a, b): R.op(B2[a], B2[b]) for a, b in itertools.product(range(n), repeat=2)}
    phi = {}
    for a, b in itertools.product(range(n), repeat=2):
        for t in itertools.product(range(n), repeat=3):
            v = th.eval_sparse(B2[a], B2[b], inner_br[t]) if inner_br[t] else {}
            if inner_th[t]:
                v = sp_iadd(dict(v), _op_apply(ops[(a, b)], inner_th[t]))
            if v:
                phi[(a, b) + t] = v
    res = {}
    for x1, x2, x3, x4, x5 in itertools.product(range(n), repeat=5):
        r = dict(phi.get((x1, x2, x3, x4, x5), {}))
        s1 = sign((p[x4] + p[x5]) * (p[x1] + p[x2] + p[x3]))
        s2 = sign((p[x3] + p[x5]) * (p[x1] + p[x2]) + p[x4] * p[x5])
        s3 = sign((p[x3] + p[x4]) * (p[x1] + p[x2]))
        for key, c in (((x4, x5, x1, x2, x3), -s1), ((x3, x5, x1, x2, x4), s2),
                       ((x3, x4, x1, x2, x5), -s3)):
            v = phi.get(key)
            if v:
                sp_iadd(r, v, c)
        if r:
            res[(x1, x2, x3, x4, x5)] = r
    return res


# ------------------------------------------------------------- extensions

def _require_invertible(f: LinearMap, which: str):
    if not f.is_invertible():
        raise SingularMap(f"{which} is not invertible", which)


def _extension(g: ThreeBihomLieSuper, R: Representation, th: Cocycle | None,
               name: str) -> ThreeBihomLieSuper:
    n, m = g.dim, R.dim
    p, pm = g.space.parity, R.module.parity
    sp = g.space.direct_sum(R.module)
    a_inv_b = (invert(g.alpha) @ g.beta).columns
    aM_bM_inv = (R.alpha_M @ invert(R.beta_M)).columns
    E = [{i: 1} for i in range(n)]
    entries: dict = {}

    def put(key, vals_g, vals_m):
        out = dict(vals_g)
        for i, c in vals_m.items():
            out[n + i] = c
        if out:
            entries[key] = out

    for t in itertools.product(range(n), repeat=3):
        put(t, g.bracket.basis_value(t), th.basis_value(t) if th is not None else {})
    for u, v in itertools.product(range(n), repeat=2):
        op = R.op(E[u], E[v])
        for z in range(m):
            put((u, v, n + z), {}, op[z])
    for u, w in itertools.product(range(n), repeat=2):
        op = R.op(E[u], a_inv_b[w])
        for y in range(m):
            val = {i: -sign(pm[y] * p[w]) * c
                   for i, c in _op_apply(op, aM_bM_inv[y]).items()}
            put((u, n + y, w), {}, val)
    for v, w in itertools.product(range(n), repeat=2):
        op = R.op(E[v], a_inv_b[w])
        for x in range(m):
            val = {i: sign(pm[x] * (p[v] + p[w])) * c
                   for i, c in _op_apply(op, aM_bM_inv[x]).items()}
            put((n + x, v, w), {}, val)
    br = Bracket(sp, 3, entries)
    alpha = LinearMap(_block(g.alpha.matrix, R.alpha_M.matrix, n, m), sp)
    beta = LinearMap(_block(g.beta.matrix, R.beta_M.matrix, n, m), sp)
    return ThreeBihomLieSuper(sp, br, alpha, beta, name)


def _block(A, B, n, m):
    return block_diag(A, B, n, m)


def _require_rep(g, R):
    rep = verify_rep(g, R)
    if not rep.overall:
        raise FailedPrecondition("verify_rep", rep, "not a representation")


def semidirect(g: ThreeBihomLieSuper, R: Representation) -> ThreeBihomLieSuper:
    """g ⋉ M with the bracket built from ρ, α^{-1}β and α_M β_M^{-1}."""
    _check_compatible(g, R)
    require_verified(g)
    _require_rep(g, R)
    _require_invertible(g.alpha, "alpha")
    _require_invertible(R.beta_M, "beta_M")
    return _extension(g, R, None, f"{g.name or 'g'} ⋉ M")


def t_theta_extension(g: ThreeBihomLieSuper, R: Representation,
                      th: Cocycle) -> ThreeBihomLieSuper:
    _check_compatible(g, R)
    require_verified(g)
    _require_rep(g, R)
    _require_invertible(g.alpha, "alpha")
    _require_invertible(R.beta_M, "beta_M")
    rep = verify_cocycle(g, R, th)
    if not rep.overall:
        bad = rep.first_failure().name
        raise CocycleFails(rep, bad.split("-", 1)[1])
    return _extension(g, R, th, f"T_theta({g.name or 'g'})")


def _require_intertwining(f: LinearMap, g: ThreeBihomLieSuper, R: Representation):
    for eq, lhs, rhs in (("f o alpha = alpha_M o f", f @ g.alpha, R.alpha_M @ f),
                         ("f o beta = beta_M o f", f @ g.beta, R.beta_M @ f)):
        c = map_equation_check(eq, lhs, rhs, g.space.names)
        if not c.passed:
            raise IntertwiningFails(f"{eq} fails", eq, c.witness, c.residual)


def coboundary_theta_f(g: ThreeBihomLieSuper, R: Representation, f: LinearMap) -> Cocycle:
    """θ_f(x,y,z) = f[x,y,z] - ρ(x,y) f z + (-1)^{|y||z|} ρ(x, α^{-1}β z) f(αβ^{-1} y)
                  - (-1)^{(|y|+|z|)|x|} ρ(y, α^{-1}β z) f(αβ^{-1} x)."""
    _check_compatible(g, R)
    if f.domain.dim != g.dim or f.codomain.dim != R.dim or f.parity != 0:
        raise DimensionMismatch("f must be an even map from g to M")
    _require_invertible(g.alpha, "alpha")
    _require_invertible(g.beta, "beta")
    _require_intertwining(f, g, R)
    n, p = g.dim, g.space.parity
    a_inv_b = (invert(g.alpha) @ g.beta).columns
    fa_b_inv = (f @ g.alpha @ invert(g.beta)).columns
    F = f.columns
    E = [{i: 1} for i in range(n)]
    entries = {}
    for x, y, z in itertools.product(range(n), repeat=3):
        r = f.apply_sparse(g.bracket.basis_value((x, y, z)))
        sp_iadd(r, _op_apply(R.op(E[x], E[y]), F[z]), -1)
        sp_iadd(r, _op_apply(R.op(E[x], a_inv_b[z]), fa_b_inv[y]), sign(p[y] * p[z]))
        sp_iadd(r, _op_apply(R.op(E[y], a_inv_b[z]), fa_b_inv[x]), -sign((p[y] + p[z]) * p[x]))
        if r:
            entries[(x, y, z)] = r
    return Cocycle(g.space, R.module, entries)


def sigma_map(g: ThreeBihomLieSuper, R: Representation, f: LinearMap) -> LinearMap:
    """σ(v + x) = v + f(v) + x on g ⊕ M."""
    n, m = g.dim, R.dim
    sp = g.space.direct_sum(R.module)
    rows = []
    for i in range(n):
        rows.append(tuple(1 if j == i else 0 for j in range(n + m)))
    for i in range(m):
        rows.append(tuple(f.matrix[i]) + tuple(1 if j == i else 0 for j in range(m)))
    return LinearMap(rows, sp)


def sigma_iso(g: ThreeBihomLieSuper, R: Representation, th: Cocycle,
              f: LinearMap) -> tuple[LinearMap, VerificationReport]:
    thf = coboundary_theta_f(g, R, f)
    T1 = t_theta_extension(g, R, th)
    T2 = t_theta_extension(g, R, th + thf)
    s = sigma_map(g, R, f)
    names = T1.space.names
    res = morphism_residuals(s, T1.bracket, T2.bracket)
    checks = [
        Check("bijective", s.is_invertible()),
        map_equation_check("alpha-intertwining", s @ T1.alpha, T2.alpha @ s, names),
        map_equation_check("beta-intertwining", s @ T1.beta, T2.beta @ s, names),
        from_residuals("bracket-homomorphism", res, names, T1.dim),
    ]
    return s, VerificationReport("sigma: T_theta -> T_theta+theta_f", tuple(checks))
