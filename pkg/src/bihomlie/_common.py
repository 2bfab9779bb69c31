"""Checks shared by the binary and ternary verifiers."""

from __future__ import annotations

import itertools

from .errors import DimensionMismatch
from .graded import Bracket, LinearMap, mat_sub, sp_iadd
from .report import Check, failed, from_residuals, passed


def check_map_on(space, f: LinearMap, what: str):
    if f.domain.dim != space.dim or f.codomain.dim != space.dim:
        raise DimensionMismatch(f"{what} does not act on a space of dimension {space.dim}")
    if f.parity != 0:
        raise DimensionMismatch(f"{what} must be even")


def commute_check(name: str, f: LinearMap, g: LinearMap, names) -> Check:
    """f o g = g o f, witnessed by the first basis vector where they differ."""
    d = mat_sub((f @ g).matrix, (g @ f).matrix)
    for j in range(len(names)):
        col = tuple(row[j] for row in d)
        if any(col):
            return failed(name, (names[j],), col)
    return passed(name)


def multiplicativity_residuals(bracket: Bracket, f: LinearMap) -> dict:
    """key -> f([e_key]) - [f e_k1, ..., f e_kn], nonzero values only."""
    after = {k: f.apply_sparse(v) for k, v in bracket.items()}
    before = bracket.precompose([f] * bracket.arity)
    out = {}
    for k in set(after) | set(before.entries):
        r = dict(after.get(k, {}))
        sp_iadd(r, before.basis_value(k), -1)
        if r:
            out[k] = r
    return out


def multiplicative_check(name: str, bracket: Bracket, f: LinearMap) -> Check:
    sp = bracket.space
    return from_residuals(name, multiplicativity_residuals(bracket, f), sp.names, sp.dim)


def morphism_residuals(f: LinearMap, src: Bracket, dst: Bracket) -> dict:
    """key -> f([e_key]) - [f e_k1, ...]' for a map between two algebras."""
    n = src.space.dim
    cols = f.columns
    out = {}
    for key in itertools.product(range(n), repeat=src.arity):
        r = f.apply_sparse(src.basis_value(key))
        sp_iadd(r, dst.eval_sparse(*(cols[i] for i in key)), -1)
        if r:
            out[key] = r
    return out


def map_equation_check(name: str, lhs: LinearMap, rhs: LinearMap, names) -> Check:
    d = mat_sub(lhs.matrix, rhs.matrix)
    for j in range(len(names)):
        col = tuple(row[j] for row in d)
        if any(col):
            return failed(name, (names[j],), col)
    return passed(name)
