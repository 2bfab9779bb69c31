"""Binary Bihom-Lie superalgebras: verification, Yau twists and osp(1,2)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._common import check_map_on, commute_check, morphism_residuals, multiplicative_check
from .errors import (DimensionMismatch, FailedPrecondition, MapsDoNotCommute,
                     NotAHomomorphism, ZeroParameter)
from .graded import (Bracket, GradedSpace, LinearMap, commutes, dense, scalar, sign,
                     sp_iadd)
from .report import VerificationReport, from_residuals, labels


@dataclass(frozen=True)
class BihomLieSuper2:
    space: GradedSpace
    bracket: Bracket
    alpha: LinearMap
    beta: LinearMap
    name: str = ""

    def __post_init__(self):
        if self.bracket.arity != 2:
            raise DimensionMismatch("a binary algebra needs an arity-2 bracket")
        if self.bracket.space.dim != self.space.dim:
            raise DimensionMismatch("bracket and space dimensions differ")
        check_map_on(self.space, self.alpha, "alpha")
        check_map_on(self.space, self.beta, "beta")

    @property
    def dim(self) -> int:
        return self.space.dim

    def __call__(self, x, y) -> tuple:
        return self.bracket(x, y)


def lie_superalgebra(space: GradedSpace, bracket: Bracket, name: str = "") -> BihomLieSuper2:
    ident = LinearMap.identity(space)
    return BihomLieSuper2(space, bracket, ident, ident, name)


def skew_residuals(a: BihomLieSuper2) -> dict:
    """(i, j) -> [b e_i, a e_j] + (-1)^{p_i p_j} [b e_j, a e_i] for i <= j."""
    sp, br = a.space, a.bracket
    A, B = a.alpha.columns, a.beta.columns
    out = {}
    for i, j in itertools.combinations_with_replacement(range(sp.dim), 2):
        r = br.eval_sparse(B[i], A[j])
        sp_iadd(r, br.eval_sparse(B[j], A[i]), sign(sp.parity[i] * sp.parity[j]))
        if r:
            out[(i, j)] = r
    return out


def jacobi_residuals(a: BihomLieSuper2) -> dict:
    """(x, y, z) -> cyclic sum of (-1)^{|x||z|} [b^2 x, [b y, a z]]."""
    sp, br = a.space, a.bracket
    n, p = sp.dim, sp.parity
    A, B = a.alpha.columns, a.beta.columns
    B2 = (a.beta @ a.beta).columns
    inner = {(y, z): br.eval_sparse(B[y], A[z]) for y in range(n) for z in range(n)}
    out = {}
    for x, y, z in itertools.product(range(n), repeat=3):
        r = {}
        for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
            if inner[(v, w)]:
                sp_iadd(r, br.eval_sparse(B2[u], inner[(v, w)]), sign(p[u] * p[w]))
        if r:
            out[(x, y, z)] = r
    return out


def verify2(a: BihomLieSuper2) -> VerificationReport:
    sp = a.space
    names, n = sp.names, sp.dim
    checks = [
        commute_check("alpha-beta-commute", a.alpha, a.beta, names),
        multiplicative_check("alpha-multiplicative", a.bracket, a.alpha),
        multiplicative_check("beta-multiplicative", a.bracket, a.beta),
        from_residuals("skewsymmetry", skew_residuals(a), names, n),
        from_residuals("jacobi", jacobi_residuals(a), names, n),
    ]
    return VerificationReport(a.name or "binary algebra", tuple(checks))


def _require_lie(lie: BihomLieSuper2):
    if not (lie.alpha.is_identity() and lie.beta.is_identity()):
        raise FailedPrecondition("identity-maps", None,
                                 "the input must have alpha = beta = Id")
    rep = verify2(lie)
    if not rep.overall:
        raise FailedPrecondition("verify2", rep, "the input is not a Lie superalgebra")


def _require_homomorphism(f: LinearMap, br: Bracket, what: str):
    res = morphism_residuals(f, br, br)
    if res:
        key = min(res)
        raise NotAHomomorphism(f"{what} is not a bracket homomorphism",
                               labels(br.space.names, key), dense(res[key], br.space.dim))


def _require_commute(f: LinearMap, g: LinearMap, what: str):
    c = commute_check(what, f, g, f.domain.names)
    if not c.passed:
        raise MapsDoNotCommute(f"{what}: maps do not commute", c.witness, c.residual)


def yau_twist2(lie: BihomLieSuper2, a: LinearMap, b: LinearMap) -> BihomLieSuper2:
    """[x, y] -> [a x, b y] with structure maps (a, b)."""
    _require_lie(lie)
    check_map_on(lie.space, a, "a")
    check_map_on(lie.space, b, "b")
    _require_homomorphism(a, lie.bracket, "a")
    _require_homomorphism(b, lie.bracket, "b")
    _require_commute(a, b, "a o b = b o a")
    br = lie.bracket.precompose([a, b])
    return BihomLieSuper2(lie.space, br, a, b, lie.name and f"{lie.name} twisted")


OSP_SPACE = GradedSpace(5, (0, 0, 0, 1, 1), ("H", "X", "Y", "F", "G"))


def osp12() -> BihomLieSuper2:
    """osp(1,2) in the basis H, X, Y (even), F, G (odd)."""
    H, X, Y, F, G = range(5)
    table = {
        (H, X): {X: 2}, (H, Y): {Y: -2}, (H, F): {F: -1}, (H, G): {G: 1},
        (X, Y): {H: 1}, (X, F): {G: 1}, (Y, G): {F: 1},
        (F, F): {Y: 2}, (G, G): {X: -2}, (F, G): {H: 1},
    }
    br = Bracket.from_skew(OSP_SPACE, 2, table)
    return lie_superalgebra(OSP_SPACE, br, "osp(1,2)")


def osp_alpha(lam) -> LinearMap:
    """Diagonal automorphism scaling each basis vector by lam to its H-weight."""
    lam = scalar(lam)
    if lam == 0:
        raise ZeroParameter("lambda must be nonzero")
    return LinearMap.diagonal(OSP_SPACE, [1, lam ** 2, lam ** -2, lam ** -1, lam])


def osp12_family(lam, mu) -> BihomLieSuper2:
    lam, mu = scalar(lam), scalar(mu)
    if lam == 0 or mu == 0:
        raise ZeroParameter("lambda and mu must be nonzero")
    a = yau_twist2(osp12(), osp_alpha(lam), osp_alpha(mu))
    return BihomLieSuper2(a.space, a.bracket, a.alpha, a.beta,
                          f"osp(1,2) lambda={lam} mu={mu}")


__all__ = ["BihomLieSuper2", "lie_superalgebra", "verify2", "yau_twist2", "osp12",
           "osp_alpha", "osp12_family", "skew_residuals", "jacobi_residuals", "commutes"]
