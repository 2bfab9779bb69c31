"""JSON algebra files.

Rationals are strings "p" or "p/q"; JSON numbers are accepted only when they
are integers.  Errors carry a path into the document ("$.bracket[2].out").
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .binary import BihomLieSuper2
from .errors import BihomError, ParseError, ValidationError
from .graded import Bracket, GradedSpace, LinearMap, render_scalar, scalar
from .quadratic import QuadraticAlgebra, SuperForm
from .representation import Cocycle, Representation
from .ternary import ThreeBihomLieSuper


@dataclass
class AlgebraFile:
    name: str
    arity: int
    space: GradedSpace
    bracket: Bracket
    alpha: LinearMap
    beta: LinearMap
    module: GradedSpace | None = None
    alpha_M: LinearMap | None = None
    beta_M: LinearMap | None = None
    rho: dict = field(default_factory=dict)
    theta: dict | None = None
    form: tuple | None = None

    def algebra(self):
        cls = BihomLieSuper2 if self.arity == 2 else ThreeBihomLieSuper
        return cls(self.space, self.bracket, self.alpha, self.beta, self.name)

    def representation(self) -> Representation | None:
        if self.module is None:
            return None
        return Representation(self.space, self.module, self.rho, self.alpha_M, self.beta_M,
                              extend=False)

    def cocycle(self, module: GradedSpace | None = None) -> Cocycle | None:
        if self.theta is None:
            return None
        return Cocycle(self.space, module or self.module or self.space.dual(), self.theta)

    def quadratic(self) -> QuadraticAlgebra | None:
        if self.form is None:
            return None
        return QuadraticAlgebra(self.algebra(), SuperForm(self.space, self.form))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraFile):
            return NotImplemented
        return render(self) == render(other)


# ------------------------------------------------------------------ parsing

def _get(d, key, path, kind=None, required=True):
    if not isinstance(d, dict):
        raise ParseError(path, "expected an object")
    if key not in d:
        if required:
            raise ParseError(f"{path}.{key}", "missing field")
        return None
    v = d[key]
    if kind is not None and not isinstance(v, kind) or isinstance(v, bool) and kind is int:
        raise ParseError(f"{path}.{key}", f"expected {_kind_name(kind)}")
    return v


def _kind_name(kind):
    return {int: "an integer", str: "a string", list: "a list", dict: "an object"}.get(
        kind, getattr(kind, "__name__", str(kind)))


def _scalar(x, path) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(path, "rationals must be strings like \"p/q\" or integers")
    try:
        return scalar(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(path, str(exc)) from None


def _matrix(x, n, path, fieldname):
    if not isinstance(x, list) or any(not isinstance(r, list) for r in x):
        raise ParseError(path, "expected a list of rows")
    if len(x) != n or any(len(r) != n for r in x):
        raise ValidationError(fieldname, f"matrix must be {n}x{n}")
    return tuple(tuple(_scalar(c, f"{path}[{i}][{j}]") for j, c in enumerate(r))
                 for i, r in enumerate(x))


def _index(x, names, path):
    if isinstance(x, str):
        if x not in names:
            raise ValidationError(path, f"unknown basis label {x!r}")
        return names.index(x)
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(path, "index must be an integer or a basis label")
    if not 0 <= x < len(names):
        raise ValidationError(path, f"index {x} out of range")
    return x


def _vector_map(x, names, path) -> dict:
    if not isinstance(x, dict):
        raise ParseError(path, "expected an object label -> rational")
    out = {}
    for k, c in x.items():
        i = _index(k, names, f"{path}.{k}")
        v = _scalar(c, f"{path}.{k}")
        if v:
            out[i] = v
    return out


def _space(d, path, fieldname=""):
    dim = _get(d, "dim", path, int)
    if dim < 0:
        raise ValidationError(fieldname + "dim", "must be a natural number")
    parity = _get(d, "parity", path, list, required=False)
    parity = [0] * dim if parity is None else parity
    if len(parity) != dim:
        raise ValidationError(fieldname + "parity", "length mismatch")
    if any(p not in (0, 1) or isinstance(p, bool) for p in parity):
        raise ValidationError(fieldname + "parity", "entries must be 0 or 1")
    basis = _get(d, "basis", path, list, required=False)
    if basis is not None:
        if len(basis) != dim:
            raise ValidationError(fieldname + "basis", "length mismatch")
        if any(not isinstance(b, str) for b in basis) or len(set(basis)) != dim:
            raise ValidationError(fieldname + "basis", "labels must be distinct strings")
    return GradedSpace(dim, tuple(parity), tuple(basis) if basis else None)


def _entries(items, arity, names, out_names, path):
    if not isinstance(items, list):
        raise ParseError(path, "expected a list of entries")
    out = {}
    for k, e in enumerate(items):
        p = f"{path}[{k}]"
        args = _get(e, "args", p, list)
        if len(args) != arity:
            raise ValidationError(f"{p}.args", f"expected {arity} indices")
        key = tuple(_index(a, names, f"{p}.args[{j}]") for j, a in enumerate(args))
        if key in out:
            raise ValidationError(f"{p}.args", "duplicate entry")
        out[key] = _vector_map(_get(e, "out", p, dict), out_names, f"{p}.out")
    return out


def _map(d, key, sp, path, default_identity=True):
    x = d.get(key)
    if x is None:
        if default_identity:
            return LinearMap.identity(sp)
        raise ParseError(f"{path}.{key}", "missing field")
    M = _matrix(x, sp.dim, f"{path}.{key}", key)
    try:
        return LinearMap(M, sp)
    except BihomError as exc:
        raise ValidationError(key, str(exc)) from None


def parse_algebra(data) -> AlgebraFile:
    """Parse bytes, text or an already decoded JSON object."""
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("$", f"not UTF-8: {exc}") from None
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"$ (line {exc.lineno}, column {exc.colno})", exc.msg) from None
    if not isinstance(data, dict):
        raise ParseError("$", "expected an object")
    name = _get(data, "name", "$", str, required=False) or ""
    arity = _get(data, "arity", "$", int)
    if arity not in (2, 3):
        raise ValidationError("arity", "must be 2 or 3")
    sp = _space(data, "$")
    names = sp.names
    raw = _entries(_get(data, "bracket", "$", list), arity, names, names, "$.bracket")
    extend = _get(data, "extend", "$", str, required=False)
    if extend not in (None, "skew"):
        raise ValidationError("extend", "only \"skew\" is supported")
    try:
        br = Bracket.from_skew(sp, arity, raw) if extend else Bracket(sp, arity, raw)
    except (BihomError, ValueError) as exc:
        raise ValidationError("bracket", str(exc)) from None
    alpha = _map(data, "alpha", sp, "$")
    beta = _map(data, "beta", sp, "$")
    af = AlgebraFile(name, arity, sp, br, alpha, beta)
    if "module" in data:
        md = _get(data, "module", "$", dict)
        af.module = _space(md, "$.module", "module.")
        af.alpha_M = _map(md, "alpha", af.module, "$.module")
        af.beta_M = _map(md, "beta", af.module, "$.module")
    if "rho" in data:
        if af.module is None:
            raise ValidationError("rho", "a module block is required")
        rho = {}
        for k, e in enumerate(_get(data, "rho", "$", list)):
            p = f"$.rho[{k}]"
            args = _get(e, "args", p, list)
            if len(args) != 2:
                raise ValidationError(f"{p}.args", "expected 2 indices")
            key = tuple(_index(a, names, f"{p}.args[{j}]") for j, a in enumerate(args))
            rho[key] = _matrix(_get(e, "matrix", p, list), af.module.dim, f"{p}.matrix", "rho")
        af.rho = rho
        try:
            af.representation()
        except (BihomError, ValueError) as exc:
            raise ValidationError("rho", str(exc)) from None
    if "theta" in data:
        target = af.module.names if af.module is not None else sp.dual().names
        af.theta = _entries(_get(data, "theta", "$", list), 3, names, target, "$.theta")
        try:
            af.cocycle()
        except (BihomError, ValueError) as exc:
            raise ValidationError("theta", str(exc)) from None
    if "form" in data:
        af.form = _matrix(data["form"], sp.dim, "$.form", "form")
        try:
            SuperForm(sp, af.form)
        except BihomError as exc:
            raise ValidationError("form", str(exc)) from None
    return af


def load(path) -> AlgebraFile:
    with open(path, "rb") as fh:
        return parse_algebra(fh.read())


def load_bundled(name: str) -> AlgebraFile:
    from importlib.resources import files
    return parse_algebra(files("bihomlie").joinpath("data", name).read_bytes())


# ---------------------------------------------------------------- rendering

def _rmat(M):
    return [[render_scalar(c) for c in r] for r in M]


def _rvec(d: dict, names):
    return {names[i]: render_scalar(c) for i, c in sorted(d.items())}


def _rspace(sp: GradedSpace) -> dict:
    return {"dim": sp.dim, "parity": list(sp.parity), "basis": list(sp.names)}


def render(af: AlgebraFile) -> dict:
    names = af.space.names
    d = {"name": af.name, "arity": af.arity, **_rspace(af.space),
         "bracket": [{"args": list(k), "out": _rvec(v, names)} for k, v in af.bracket.items()],
         "alpha": _rmat(af.alpha.matrix), "beta": _rmat(af.beta.matrix)}
    if af.module is not None:
        d["module"] = {**_rspace(af.module), "alpha": _rmat(af.alpha_M.matrix),
                       "beta": _rmat(af.beta_M.matrix)}
    if af.rho:
        d["rho"] = [{"args": list(k), "matrix": _rmat(M)} for k, M in sorted(af.rho.items())]
    if af.theta is not None:
        target = af.module.names if af.module is not None else af.space.dual().names
        d["theta"] = [{"args": list(k), "out": _rvec(v, target)}
                      for k, v in sorted(af.theta.items())]
    if af.form is not None:
        d["form"] = _rmat(af.form)
    return d


def dumps(d) -> str:
    return json.dumps(d, indent=2, ensure_ascii=False) + "\n"


def from_algebra(a, rep: Representation | None = None, theta: Cocycle | None = None,
                 form: SuperForm | None = None) -> AlgebraFile:
    arity = 2 if isinstance(a, BihomLieSuper2) else 3
    af = AlgebraFile(a.name, arity, a.space, a.bracket, a.alpha, a.beta)
    if rep is not None:
        af.module, af.alpha_M, af.beta_M = rep.module, rep.alpha_M, rep.beta_M
        af.rho = {k: v.matrix for k, v in rep.maps.items()}
    if theta is not None:
        if rep is None and theta.module != a.space.dual():
            af.module = theta.module
            af.alpha_M = af.beta_M = LinearMap.identity(theta.module)
        af.theta = {k: dict(v) for k, v in theta.items()}
    if form is not None:
        af.form = form.gram
    return af
