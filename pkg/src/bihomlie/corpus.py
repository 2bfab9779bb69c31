"""Small concrete algebras used in examples, tests and the bundled data files."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .graded import Bracket, GradedSpace, LinearMap, permutation_sign
from .representation import Cocycle, Representation, adjoint_rep, zero_rep
from .ternary import ThreeBihomLieSuper, TotAssoc3, three_lie, twist_from_3lie


def abelian(dim: int = 3, parity=None) -> ThreeBihomLieSuper:
    sp = GradedSpace(dim, tuple(parity) if parity else (0,) * dim)
    return three_lie(sp, Bracket(sp, 3), f"abelian{dim}")


def n4() -> ThreeBihomLieSuper:
    """[e1, e2, e3] = e4, all other brackets of basis vectors zero."""
    sp = GradedSpace.even(4)
    return three_lie(sp, Bracket.from_skew(sp, 3, {(0, 1, 2): {3: 1}}), "N4")


def a4() -> ThreeBihomLieSuper:
    """The simple 3-Lie algebra: [e_i, e_j, e_k] = sum_l eps_ijkl e_l."""
    sp = GradedSpace.even(4)
    entries = {}
    for perm in itertools.permutations(range(4)):
        entries[perm[:3]] = {perm[3]: permutation_sign((0, 0, 0, 0), perm)}
    return three_lie(sp, Bracket(sp, 3, entries), "A4")


def solvable3() -> ThreeBihomLieSuper:
    """[e1, e2, e3] = e1: solvable but not nilpotent."""
    sp = GradedSpace.even(3)
    return three_lie(sp, Bracket.from_skew(sp, 3, {(0, 1, 2): {0: 1}}), "S3")


def odd_heisenberg() -> ThreeBihomLieSuper:
    """e1, e2 even, f odd, with [f, f, e1] = e2."""
    sp = GradedSpace(3, (0, 0, 1), ("e1", "e2", "f"))
    return three_lie(sp, Bracket.from_skew(sp, 3, {(2, 2, 0): {1: 1}}), "Heis(0|1)")


def gl11_induced() -> ThreeBihomLieSuper:
    """3-Lie superalgebra induced from gl(1|1) by its supertrace.

    [x, y, z] = t(x)[y, z] - (-1)^{|x||y|} t(y)[x, z] + (-1)^{|z|(|x|+|y|)} t(z)[x, y]
    with t(E11) = 1, t(E22) = -1 and the supercommutator on gl(1|1).
    """
    sp = GradedSpace(4, (0, 0, 1, 1), ("E11", "E22", "E12", "E21"))
    par = sp.parity
    units = [(0, 0), (1, 1), (0, 1), (1, 0)]

    def prod(i, j):
        (a, b), (c, d) = units[i], units[j]
        return units.index((a, d)) if b == c else None

    def lie(i, j):
        out = {}
        k = prod(i, j)
        if k is not None:
            out[k] = out.get(k, 0) + 1
        k = prod(j, i)
        if k is not None:
            out[k] = out.get(k, 0) - (-1) ** (par[i] * par[j])
        return out

    tau = (1, -1, 0, 0)
    entries = {}
    for x, y, z in itertools.product(range(4), repeat=3):
        px, py, pz = par[x], par[y], par[z]
        v: dict = {}
        for t, br, s in ((tau[x], lie(y, z), 1),
                         (tau[y], lie(x, z), -(-1) ** (px * py)),
                         (tau[z], lie(x, y), (-1) ** (pz * (px + py)))):
            for k, c in br.items():
                v[k] = v.get(k, 0) + s * t * c
        v = {k: c for k, c in v.items() if c}
        if v:
            entries[(x, y, z)] = v
    return three_lie(sp, Bracket(sp, 3, entries), "gl(1|1) induced")


def twisted_n4() -> ThreeBihomLieSuper:
    g = n4()
    return twist_from_3lie(g, LinearMap.diagonal(g.space, [2, 3, 5, 30]),
                           LinearMap.identity(g.space)).renamed("N4 twisted")


def a4_twisted() -> ThreeBihomLieSuper:
    """A4 twisted by alpha = beta = diag(1, 1, -1, -1): regular, e1, e2 fixed."""
    g = a4()
    d = LinearMap.diagonal(g.space, [1, 1, -1, -1])
    return twist_from_3lie(g, d, d).renamed("A4 twisted")


def a4_rotated() -> ThreeBihomLieSuper:
    """A4 twisted by two commuting rational rotations of the (e3, e4) plane.

    e1 and e2 are fixed by both maps, and the powers of alpha and beta are all
    distinct, so inner derivations separate the exponents.
    """
    g = a4()

    def rot(c, s):
        return LinearMap(((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, c, -s), (0, 0, s, c)), g.space)
    a = rot(Fraction(3, 5), Fraction(4, 5))
    b = rot(Fraction(5, 13), Fraction(12, 13))
    return twist_from_3lie(g, a, b).renamed("A4 rotated")


def gl11_twisted() -> ThreeBihomLieSuper:
    g = gl11_induced()
    a = LinearMap.diagonal(g.space, [1, 1, 2, "1/2"])
    b = LinearMap.diagonal(g.space, [1, 1, 3, "1/3"])
    return twist_from_3lie(g, a, b).renamed("gl(1|1) induced twisted")


def three_lie_corpus() -> list[ThreeBihomLieSuper]:
    return [n4(), a4(), solvable3(), odd_heisenberg(), gl11_induced(), abelian(3, (0, 0, 1))]


# ------------------------------------------------- associative factors

def unit_assoc() -> TotAssoc3:
    sp = GradedSpace(1, (0,), ("1",))
    ident = LinearMap.identity(sp)
    return TotAssoc3(sp, Bracket(sp, 3, {(0, 0, 0): {0: 1}}), ident, ident, "K")


def constant_assoc() -> TotAssoc3:
    """2-dim even space with mu identically e1 on basis triples."""
    sp = GradedSpace.even(2, ("a1", "a2"))
    ident = LinearMap.identity(sp)
    mu = Bracket(sp, 3, {t: {0: 1} for t in itertools.product(range(2), repeat=3)})
    return TotAssoc3(sp, mu, ident, ident, "const")


def dual_numbers() -> TotAssoc3:
    """K[t]/(t^2) with the ternary product abc."""
    sp = GradedSpace.even(2, ("1", "t"))
    ident = LinearMap.identity(sp)
    entries = {}
    for t in itertools.product(range(2), repeat=3):
        if sum(t) <= 1:
            entries[t] = {sum(t): 1}
    return TotAssoc3(sp, Bracket(sp, 3, entries), ident, ident, "K[t]/t^2")


def asymmetric_assoc() -> TotAssoc3:
    """mu(a1, a2, a1) = a1 and nothing else: violates the symmetry condition."""
    sp = GradedSpace.even(2, ("a1", "a2"))
    ident = LinearMap.identity(sp)
    return TotAssoc3(sp, Bracket(sp, 3, {(0, 1, 0): {0: 1}}), ident, ident, "asym")


def n4_involutive() -> ThreeBihomLieSuper:
    """N4 twisted by alpha = diag(1,-1,-1,1), beta = diag(-1,1,-1,1).

    Both maps are involutions, which keeps the coadjoint module a representation.
    """
    g = n4()
    a = LinearMap.diagonal(g.space, [1, -1, -1, 1])
    b = LinearMap.diagonal(g.space, [-1, 1, -1, 1])
    return twist_from_3lie(g, a, b).renamed("N4 involutive")


# ------------------------------------------------- representations, cocycles

def perturbed_rep(R, key, pos, c=1):
    """R with c added at matrix position pos of rho(e_i, e_j), skew-extended."""
    maps = {k: [list(r) for r in v.matrix] for k, v in R.maps.items() if k[0] <= k[1]}
    m = maps.setdefault(tuple(key), [[0] * R.dim for _ in range(R.dim)])
    m[pos[0]][pos[1]] += c
    return Representation(R.g_space, R.module, maps, R.alpha_M, R.beta_M)


def rep_corpus() -> list:
    """(algebra, representation) pairs: adjoints, trivial modules and perturbations."""
    out = []
    for g in [n4(), a4(), solvable3(), odd_heisenberg(), gl11_induced(), a4_twisted(),
              n4_involutive(), twisted_n4()]:
        out.append((g, adjoint_rep(g)))
    g = n4()
    line = GradedSpace(1, (0,), ("m",))
    out.append((g, zero_rep(g)))
    out.append((g, zero_rep(g, line, LinearMap.diagonal(line, [2]),
                               LinearMap.diagonal(line, [3]))))
    out.append((g, perturbed_rep(adjoint_rep(g), (0, 1), (3, 3))))
    out.append((g, perturbed_rep(adjoint_rep(g), (0, 1), (0, 1))))
    g = gl11_induced()
    out.append((g, perturbed_rep(adjoint_rep(g), (0, 2), (2, 0))))
    g = a4()
    out.append((g, perturbed_rep(adjoint_rep(g), (1, 2), (0, 0), 2)))
    return out


def four_form_theta(g: ThreeBihomLieSuper) -> Cocycle:
    """theta(x, y, z) = omega(x, y, z, .) for the volume form omega on an even 4-dim g."""
    if g.dim != 4 or any(g.space.parity):
        raise ValueError("needs an even 4-dimensional algebra")
    entries = {}
    for perm in itertools.permutations(range(4)):
        entries[perm[:3]] = {perm[3]: permutation_sign((0, 0, 0, 0), perm)}
    return Cocycle(g.space, g.space.dual(), entries)


def single_dual_theta(g: ThreeBihomLieSuper, key=(0, 1, 2), out=3, c=1) -> Cocycle:
    """theta(e_i, e_j, e_k) = c e_l*, extended super-skewsymmetrically."""
    return Cocycle.from_skew(g.space, g.space.dual(), {tuple(key): {out: c}})
