"""Exact rational linear algebra over Z2-graded spaces.

Scalars are ``fractions.Fraction``.  Dense vectors are tuples, matrices are
tuples of row tuples, and a linear map stores its matrix with column ``j``
equal to the image of basis vector ``j``.  Bracket tensors are sparse.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, ParityError, SingularMap

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?")


# ---------------------------------------------------------------- scalars

def parse_scalar(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; anything else (decimals, exponents) is rejected."""
    m = _RATIONAL.fullmatch(text)
    if m is None:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def render_scalar(q) -> str:
    q = scalar(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def scalar(x) -> Fraction:
    """Coerce to an exact rational.

    Only ints, Fractions and rational strings are accepted, so inexact
    values cannot leak in through any public constructor.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def sign(e: int) -> int:
    """(-1)**e for an integer exponent."""
    return -1 if e & 1 else 1


# ------------------------------------------------------- dense helpers

def vec(entries: Iterable) -> tuple:
    return tuple(scalar(x) for x in entries)


def zero_vec(n: int) -> tuple:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> tuple:
    return tuple(ONE if k == i else ZERO for k in range(n))


def is_zero(v) -> bool:
    return not any(v)


def vadd(u, v) -> tuple:
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> tuple:
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v) -> tuple:
    c = scalar(c)
    return tuple(c * a for a in v)


def matrix(rows: Iterable[Iterable]) -> tuple:
    out = tuple(vec(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise DimensionMismatch("ragged matrix")
    return out


def zeros(r: int, c: int) -> tuple:
    return tuple((ZERO,) * c for _ in range(r))


def identity_matrix(n: int) -> tuple:
    return tuple(unit_vec(n, i) for i in range(n))


def diag_matrix(entries) -> tuple:
    d = vec(entries)
    n = len(d)
    return tuple(tuple(d[i] if i == j else ZERO for j in range(n)) for i in range(n))


def shape(A) -> tuple[int, int]:
    return (len(A), len(A[0]) if A else 0)


def transpose(A) -> tuple:
    return tuple(zip(*A))


def mat_mul(A, B) -> tuple:
    ra, ca = len(A), (len(A[0]) if A else 0)
    rb = len(B)
    cb = len(B[0]) if B else 0
    if ca != rb:
        raise DimensionMismatch(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    Bt = transpose(B) if B else ()
    return tuple(tuple(sum((a * b for a, b in zip(row, col) if a and b), ZERO)
                       for col in Bt) if cb else () for row in A)


def mat_vec(A, v) -> tuple:
    if A and len(A[0]) != len(v):
        raise DimensionMismatch("matrix/vector size mismatch")
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in A)


def mat_add(A, B) -> tuple:
    if shape(A) != shape(B):
        raise DimensionMismatch("matrix shapes differ")
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(A, B))


def mat_sub(A, B) -> tuple:
    if shape(A) != shape(B):
        raise DimensionMismatch("matrix shapes differ")
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(A, B))


def mat_scale(c, A) -> tuple:
    c = scalar(c)
    return tuple(tuple(c * a for a in r) for r in A)


def block_diag(A, B, ca: int | None = None, cb: int | None = None) -> tuple:
    ca = len(A[0]) if A else (ca or 0)
    cb = len(B[0]) if B else (cb or 0)
    top = tuple(tuple(r) + (ZERO,) * cb for r in A)
    bottom = tuple((ZERO,) * ca + tuple(r) for r in B)
    return top + bottom


def kron(A, B) -> tuple:
    return tuple(tuple(a * b for a in ra for b in rb) for ra in A for rb in B)


# ------------------------------------------------------- row reduction

def rref(A, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns (exact)."""
    R = [list(map(scalar, r)) for r in A]
    ncols = len(R[0]) if R else (ncols or 0)
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(R)) if R[i][col]), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        p = R[row][col]
        if p != 1:
            R[row] = [x / p for x in R[row]]
        for i in range(len(R)):
            if i != row and R[i][col]:
                c = R[i][col]
                R[i] = [x - c * y for x, y in zip(R[i], R[row])]
        pivots.append(col)
        row += 1
        if row == len(R):
            break
    return R[:row], pivots


def rank(A) -> int:
    return len(rref(A)[1])


def nullspace(A, ncols: int | None = None) -> list[tuple]:
    """Basis of {x : A x = 0}, one vector per free column."""
    ncols = len(A[0]) if A else (ncols or 0)
    R, pivots = rref(A, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for r, pc in enumerate(pivots):
            x[pc] = -R[r][f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class Solution:
    particular: tuple | None
    kernel_basis: list


def solve_linear(A, b) -> Solution:
    """Solve A x = b exactly; ``particular`` is None iff inconsistent."""
    b = vec(b)
    if len(A) != len(b):
        raise DimensionMismatch(f"{len(A)} equations but right side of length {len(b)}")
    if A and len({len(r) for r in A}) != 1:
        raise DimensionMismatch("ragged matrix")
    ncols = len(A[0]) if A else 0
    aug = [list(map(scalar, r)) + [bi] for r, bi in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    kernel = nullspace(A, ncols)
    if ncols in pivots:
        return Solution(None, kernel)
    x = [ZERO] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][ncols]
    return Solution(tuple(x), kernel)


def det(A) -> Fraction:
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionMismatch("determinant of a non-square matrix")
    M = [list(map(scalar, r)) for r in A]
    d = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        p = M[c][c]
        d *= p
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / p
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d


def inverse_matrix(A) -> tuple:
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [list(map(scalar, r)) + list(unit_vec(n, i)) for i, r in enumerate(A)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise SingularMap("matrix is singular")
    return tuple(tuple(r[n:]) for r in R)


# ----------------------------------------------------------- sparse vectors

def sparse(v) -> dict:
    return {i: scalar(c) for i, c in enumerate(v) if c}


def dense(d: Mapping[int, Fraction], n: int) -> tuple:
    out = [ZERO] * n
    for i, c in d.items():
        out[i] = c
    return tuple(out)


def sp_iadd(acc: dict, d: Mapping, c=ONE) -> dict:
    """acc += c * d in place, dropping cancelled coordinates."""
    for i, x in d.items():
        y = acc.get(i, ZERO) + c * x
        if y:
            acc[i] = y
        else:
            acc.pop(i, None)
    return acc


# ------------------------------------------------------------ graded space

@dataclass(frozen=True)
class GradedSpace:
    dim: int
    parity: tuple
    names: tuple = None

    def __post_init__(self):
        par = tuple(self.parity)
        if len(par) != self.dim:
            raise DimensionMismatch(f"parity has length {len(par)}, dim is {self.dim}")
        if any(p not in (0, 1) or isinstance(p, bool) for p in par):
            raise ValueError("parities must be 0 or 1")
        object.__setattr__(self, "parity", par)
        names = self.names
        if names is None:
            names = tuple(f"e{i + 1}" for i in range(self.dim))
        names = tuple(str(s) for s in names)
        if len(names) != self.dim:
            raise DimensionMismatch("names and dim disagree")
        if len(set(names)) != len(names):
            raise ValueError("basis names must be distinct")
        object.__setattr__(self, "names", names)

    @classmethod
    def even(cls, dim: int, names=None) -> "GradedSpace":
        return cls(dim, (0,) * dim, names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def parity_of(self, v) -> int | None:
        """Parity of a homogeneous vector (0 for the zero vector), else None."""
        ps = {self.parity[i] for i, c in enumerate(v) if c}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def even_part(self, v) -> tuple:
        return tuple(c if self.parity[i] == 0 else ZERO for i, c in enumerate(v))

    def odd_part(self, v) -> tuple:
        return tuple(c if self.parity[i] == 1 else ZERO for i, c in enumerate(v))

    def direct_sum(self, other: "GradedSpace") -> "GradedSpace":
        names = self.names + other.names
        if len(set(names)) != len(names):
            names = tuple(f"{s}" for s in self.names) + tuple(f"{s}'" for s in other.names)
        return GradedSpace(self.dim + other.dim, self.parity + other.parity, names)

    def dual(self) -> "GradedSpace":
        return GradedSpace(self.dim, self.parity, tuple(f"{s}*" for s in self.names))

    def basis(self) -> list[tuple]:
        return [unit_vec(self.dim, i) for i in range(self.dim)]


# ---------------------------------------------------------------- maps

@dataclass(frozen=True, eq=True)
class LinearMap:
    """Homogeneous linear map; column j is the image of basis vector j.

    ``parity`` 0 means the map preserves the grading (the structure maps,
    morphisms, isomorphisms); parity 1 maps swap the blocks (odd derivations).
    """

    matrix: tuple
    domain: GradedSpace
    codomain: GradedSpace = None
    parity: int = 0

    def __post_init__(self):
        if self.codomain is None:
            object.__setattr__(self, "codomain", self.domain)
        M = matrix(self.matrix) if self.matrix else tuple(() for _ in range(self.codomain.dim))
        object.__setattr__(self, "matrix", M)
        if len(M) != self.codomain.dim or any(len(r) != self.domain.dim for r in M):
            raise DimensionMismatch(
                f"matrix is not {self.codomain.dim}x{self.domain.dim}")
        if self.parity not in (0, 1):
            raise ValueError("map parity must be 0 or 1")
        pc, pd = self.codomain.parity, self.domain.parity
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                if x and (pc[i] + pd[j] + self.parity) % 2:
                    raise ParityError(
                        f"entry ({self.codomain.names[i]},{self.domain.names[j]}) "
                        f"crosses parity blocks for a map of parity {self.parity}")

    @classmethod
    def identity(cls, space: GradedSpace) -> "LinearMap":
        return cls(identity_matrix(space.dim), space)

    @classmethod
    def zero(cls, domain: GradedSpace, codomain: GradedSpace = None, parity: int = 0):
        codomain = codomain or domain
        return cls(zeros(codomain.dim, domain.dim), domain, codomain, parity)

    @classmethod
    def diagonal(cls, space: GradedSpace, entries) -> "LinearMap":
        return cls(diag_matrix(entries), space)

    @classmethod
    def from_columns(cls, columns, domain, codomain=None, parity=0) -> "LinearMap":
        codomain = codomain or domain
        cols = [vec(c) for c in columns]
        rows = tuple(tuple(c[i] for c in cols) for i in range(codomain.dim))
        return cls(rows, domain, codomain, parity)

    @cached_property
    def columns(self) -> tuple:
        """Sparse images of the basis vectors."""
        return tuple({i: r[j] for i, r in enumerate(self.matrix) if r[j]}
                     for j in range(self.domain.dim))

    def __call__(self, v) -> tuple:
        return mat_vec(self.matrix, vec(v))

    def apply_sparse(self, d: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        cols = self.columns
        for j, c in d.items():
            sp_iadd(out, cols[j], c)
        return out

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return compose(self, other)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._same_shape(other)
        return LinearMap(mat_add(self.matrix, other.matrix), self.domain, self.codomain,
                         self.parity)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        self._same_shape(other)
        return LinearMap(mat_sub(self.matrix, other.matrix), self.domain, self.codomain,
                         self.parity)

    def __neg__(self) -> "LinearMap":
        return self.scale(-1)

    def scale(self, c) -> "LinearMap":
        return LinearMap(mat_scale(c, self.matrix), self.domain, self.codomain, self.parity)

    def _same_shape(self, other):
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise DimensionMismatch("maps act between different spaces")
        if self.parity != other.parity and not (self.is_zero() or other.is_zero()):
            raise ParityError("adding maps of different parity")

    def power(self, k: int) -> "LinearMap":
        if k < 0:
            return invert(self).power(-k)
        out = LinearMap.identity(self.domain)
        base = self
        while k:
            if k & 1:
                out = compose(out, base)
            base = compose(base, base)
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def is_identity(self) -> bool:
        return self.domain == self.codomain and self.matrix == identity_matrix(self.domain.dim)

    def is_invertible(self) -> bool:
        return self.domain.dim == self.codomain.dim and det(self.matrix) != 0

    def transpose(self) -> "LinearMap":
        """The dual map between dual spaces, f -> f o self, as a matrix transpose."""
        M = tuple(tuple(self.matrix[i][j] for i in range(self.codomain.dim))
                  for j in range(self.domain.dim))
        return LinearMap(M, self.codomain.dual(), self.domain.dual(), self.parity)

    def with_spaces(self, domain: GradedSpace, codomain: GradedSpace = None) -> "LinearMap":
        return LinearMap(self.matrix, domain, codomain or domain, self.parity)


EvenMap = LinearMap


def compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """f after g."""
    if g.codomain.dim != f.domain.dim:
        raise DimensionMismatch("cannot compose: inner codomain differs from outer domain")
    if g.codomain.dim == 0 or g.domain.dim == 0 or f.codomain.dim == 0:
        M = zeros(f.codomain.dim, g.domain.dim)
    else:
        M = mat_mul(f.matrix, g.matrix)
    return LinearMap(M, g.domain, f.codomain, (f.parity + g.parity) % 2)


def commutes(f: LinearMap, g: LinearMap) -> bool:
    return compose(f, g).matrix == compose(g, f).matrix


def invert(f: LinearMap) -> LinearMap:
    if f.domain.dim != f.codomain.dim:
        raise SingularMap("a non-square map has no inverse")
    if f.domain.dim == 0:
        return f
    try:
        M = inverse_matrix(f.matrix)
    except SingularMap:
        raise SingularMap("determinant is zero") from None
    return LinearMap(M, f.codomain, f.domain, f.parity)


def direct_sum_maps(f: LinearMap, g: LinearMap) -> LinearMap:
    dom = f.domain.direct_sum(g.domain)
    cod = dom if f.domain == f.codomain and g.domain == g.codomain \
        else f.codomain.direct_sum(g.codomain)
    if f.parity != g.parity:
        raise ParityError("summands of different parity")
    return LinearMap(block_diag(f.matrix, g.matrix, f.domain.dim, g.domain.dim),
                     dom, cod, f.parity)


# ------------------------------------------------------------- subspaces

class Subspace:
    """A linear subspace of Q^dim given by an independent spanning list."""

    __slots__ = ("dim", "basis", "_rref", "_pivots")

    def __init__(self, vectors: Iterable, dim: int):
        self.dim = dim
        kept: list[tuple] = []
        rows: list = []
        pivots: list = []
        for v in vectors:
            v = vec(v)
            if len(v) != dim:
                raise DimensionMismatch("vector outside the ambient space")
            if _reduce(v, rows, pivots) is not None:
                kept.append(v)
                rows, pivots = rref(kept, dim)
        self.basis = tuple(kept)
        self._rref = tuple(tuple(r) for r in rows)
        self._pivots = tuple(pivots)

    @classmethod
    def whole(cls, dim: int) -> "Subspace":
        return cls((unit_vec(dim, i) for i in range(dim)), dim)

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls((), dim)

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        return _reduce(vec(v), self._rref, self._pivots) is None

    __contains__ = contains

    def contains_sparse(self, d: Mapping[int, Fraction]) -> bool:
        return self.contains(dense(d, self.dim))

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.dim == other.dim \
            and self._rref == other._rref

    def __hash__(self):
        return hash((self.dim, self._rref))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rank={self.rank})"

    def canonical_basis(self) -> tuple:
        return self._rref

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.basis + other.basis, self.dim)

    def image(self, f: LinearMap) -> "Subspace":
        return Subspace((f(b) for b in self.basis), f.codomain.dim)

    def is_graded(self, space: GradedSpace) -> bool:
        return all(self.contains(space.even_part(b)) and self.contains(space.odd_part(b))
                   for b in self.basis)

    def homogeneous_basis(self, space: GradedSpace) -> tuple:
        """Basis of homogeneous vectors; requires a graded subspace."""
        if not self.is_graded(space):
            raise ParityError("subspace is not graded")
        parts = [space.even_part(b) for b in self.basis] + \
                [space.odd_part(b) for b in self.basis]
        return Subspace((p for p in parts if any(p)), self.dim).basis


def _reduce(v, rows, pivots):
    """Remainder of v after elimination against an rref; None if it vanishes."""
    v = list(v)
    for r, pc in zip(rows, pivots):
        c = v[pc]
        if c:
            v = [x - c * y for x, y in zip(v, r)]
    return None if not any(v) else v


def span(vectors, dim: int) -> Subspace:
    return Subspace(vectors, dim)


# ------------------------------------------------------------ brackets

def permutation_sign(parities: Sequence[int], perm: Sequence[int]) -> int:
    """Super sign relating [a_perm[0], ...] to [a_0, ...] for a super-skew bracket.

    Each adjacent transposition of arguments with parities p, q contributes
    -(-1)^{pq}.
    """
    seq = list(perm)
    s = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                s *= -sign(parities[seq[j]] * parities[seq[j + 1]])
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
    return s


class Bracket:
    """Sparse even multilinear map: index tuple -> sparse output vector."""

    __slots__ = ("space", "arity", "_entries")

    def __init__(self, space: GradedSpace, arity: int,
                 entries: Mapping[tuple, Mapping | Sequence] = ()):
        self.space = space
        self.arity = arity
        n = space.dim
        clean = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for key, val in items:
            key = tuple(int(i) for i in key)
            if len(key) != arity or any(not 0 <= i < n for i in key):
                raise DimensionMismatch(f"bad index tuple {key} for arity {arity}, dim {n}")
            if isinstance(val, Mapping):
                out = {int(i): scalar(c) for i, c in val.items() if scalar(c)}
            else:
                v = vec(val)
                if len(v) != n:
                    raise DimensionMismatch("bracket value of wrong length")
                out = sparse(v)
            if any(not 0 <= i < n for i in out):
                raise DimensionMismatch(f"output index out of range at {key}")
            p = sum(space.parity[i] for i in key) % 2
            for i in out:
                if space.parity[i] != p:
                    raise ParityError(
                        f"bracket at {tuple(space.names[k] for k in key)} is not even: "
                        f"output coordinate {space.names[i]} has the wrong parity")
            if key in clean:
                raise ValueError(f"duplicate entry {key}")
            if out:
                clean[key] = out
        self._entries = dict(sorted(clean.items()))

    @classmethod
    def from_skew(cls, space: GradedSpace, arity: int, entries) -> "Bracket":
        """Extend entries to all argument orders by super-skewsymmetry."""
        full: dict = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for key, val in items:
            key = tuple(key)
            base = {int(i): scalar(c) for i, c in val.items()} if isinstance(val, Mapping) \
                else sparse(vec(val))
            pars = [space.parity[i] for i in key]
            for perm in itertools.permutations(range(arity)):
                k2 = tuple(key[p] for p in perm)
                s = permutation_sign(pars, perm)
                out = {i: s * c for i, c in base.items() if c}
                if k2 in full and full[k2] != out:
                    raise ValueError(f"entry {key} contradicts super-skewsymmetry at {k2}")
                full[k2] = out
        return cls(space, arity, full)

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def items(self):
        return self._entries.items()

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Bracket) and self.arity == other.arity \
            and self.space == other.space and self._entries == other._entries

    def __hash__(self):
        return hash((self.arity, tuple((k, tuple(sorted(v.items())))
                                       for k, v in self._entries.items())))

    def __repr__(self):
        return f"Bracket(arity={self.arity}, dim={self.space.dim}, nonzero={len(self)})"

    def basis_value(self, key: tuple) -> dict:
        return self._entries.get(tuple(key), {})

    def eval_sparse(self, *args: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        get = self._entries.get
        for combo in itertools.product(*(a.items() for a in args)):
            val = get(tuple(i for i, _ in combo))
            if val:
                c = ONE
                for _, x in combo:
                    c *= x
                sp_iadd(out, val, c)
        return out

    def __call__(self, *args) -> tuple:
        if len(args) != self.arity:
            raise DimensionMismatch(f"bracket takes {self.arity} arguments")
        return dense(self.eval_sparse(*(sparse(vec(a)) for a in args)), self.space.dim)

    def precompose(self, maps: Sequence[LinearMap]) -> "Bracket":
        """The bracket (x1, ..., xk) -> [m1 x1, ..., mk xk]."""
        if len(maps) != self.arity:
            raise DimensionMismatch("one map per slot")
        cols = [m.columns for m in maps]
        n = self.space.dim
        new = {}
        for key in itertools.product(range(n), repeat=self.arity):
            val = self.eval_sparse(*(cols[s][key[s]] for s in range(self.arity)))
            if val:
                new[key] = val
        return Bracket(self.space, self.arity, new)

    def postcompose(self, f: LinearMap) -> "Bracket":
        return Bracket(self.space, self.arity,
                       {k: f.apply_sparse(v) for k, v in self._entries.items()})

    def scaled(self, c) -> "Bracket":
        c = scalar(c)
        return Bracket(self.space, self.arity,
                       {k: {i: c * x for i, x in v.items()} for k, v in self._entries.items()})

    def with_space(self, space: GradedSpace) -> "Bracket":
        return Bracket(space, self.arity, self._entries)

    def is_zero(self) -> bool:
        return not self._entries


TriBracket = Bracket
BiBracket = Bracket


class SparseEliminator:
    """Incremental exact RREF over sparse rows {column: coefficient}.

    Used for the large, mostly empty linear systems produced by derivation
    and center computations.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def reduce(self, row: Mapping[int, Fraction]) -> dict:
        r = {c: scalar(x) for c, x in row.items() if x}
        for c in [c for c in r if c in self.rows]:
            x = r.get(c)
            if x:
                sp_iadd(r, self.rows[c], -x)
        return r

    def add(self, row: Mapping[int, Fraction]) -> bool:
        """Add a row; True if it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        inv = 1 / r[c]
        r = {k: v * inv for k, v in r.items()}
        for other in self.rows.values():
            x = other.get(c)
            if x:
                sp_iadd(other, r, -x)
        self.rows[c] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def nullspace(self) -> list[tuple]:
        free = [c for c in range(self.ncols) if c not in self.rows]
        basis = []
        for f in free:
            x = [ZERO] * self.ncols
            x[f] = ONE
            for pc, r in self.rows.items():
                if f in r:
                    x[pc] = -r[f]
            basis.append(tuple(x))
        return basis


def sparse_nullspace(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> list[tuple]:
    el = SparseEliminator(ncols)
    for r in rows:
        el.add(r)
    return el.nullspace()
