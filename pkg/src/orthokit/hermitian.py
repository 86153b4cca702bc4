"""Exact Hermitian spaces over the rationals and the Gaussian rationals.

Scalars are fractions.Fraction (field "Q", identity involution) or
GaussianRational (field "Qi", complex conjugation).  The form is linear in
the first argument and star-linear in the second.  Anisotropy is certified
by Sylvester's criterion: positive leading principal minors, computed on
the realified form in the Gaussian case.

Subspaces are kept in reduced row echelon form, which makes equality
syntactic; a line is a one-dimensional subspace whose representative row
has its first nonzero coordinate normalised to 1.

sasaki_line computes the image of a line two ways, by orthogonal
projection and by the subspace formula (line + perp of S) intersect S,
and insists the routes agree.  The two routes are deliberately
independent; do not merge them.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence, Union

from .errors import (
    AnisotropyError,
    DimensionMismatchError,
    InputError,
    NotHermitianError,
    ScalarSyntaxError,
)
from .orthoset import Orthoset


@dataclass(frozen=True)
class GaussianRational:
    """a + b*i with rational a, b; arithmetic and conjugation are exact."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(value: Union["GaussianRational", Fraction, int]) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(Fraction(value), Fraction(0))

    def __add__(self, other: Any) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Any) -> "GaussianRational":
        return GaussianRational.of(other) - self

    def __mul__(self, other: Any) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "GaussianRational":
        o = GaussianRational.of(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, (GaussianRational, Fraction, int)):
            o = GaussianRational.of(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)


Scalar = Union[Fraction, GaussianRational]
Vector = tuple[Scalar, ...]

FIELDS = ("Q", "Qi")

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_RE_RATIONAL = re.compile(rf"({_RATIONAL})\Z")
_RE_BOTH = re.compile(rf"({_RATIONAL})([+-](?:\d+(?:/\d+)?)?)i\Z")
_RE_IMAG = re.compile(rf"([+-]?(?:\d+(?:/\d+)?)?)i\Z")


def _check_field(field: str) -> None:
    if field not in FIELDS:
        raise InputError(f"unknown scalar field {field!r}; expected one of {FIELDS}")


def _imag_coeff(text: str) -> Fraction:
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    return Fraction(text)


def parse_scalar(text: str, field: str) -> Scalar:
    """Parse the exact-scalar grammar: '3', '-3/4', '1/2+5/3i', 'i', '-i'."""
    _check_field(field)
    if not isinstance(text, str):
        raise ScalarSyntaxError(f"scalar must be a string, got {text!r}")
    s = text.strip()
    if field == "Q":
        m = _RE_RATIONAL.match(s)
        if not m:
            raise ScalarSyntaxError(f"not a rational scalar: {text!r}")
        return Fraction(s)
    m = _RE_BOTH.match(s)
    if m:
        return GaussianRational(Fraction(m.group(1)), _imag_coeff(m.group(2)))
    m = _RE_IMAG.match(s)
    if m:
        return GaussianRational(Fraction(0), _imag_coeff(m.group(1)))
    m = _RE_RATIONAL.match(s)
    if m:
        return GaussianRational(Fraction(s), Fraction(0))
    raise ScalarSyntaxError(f"not a Gaussian rational scalar: {text!r}")


def format_scalar(value: Scalar) -> str:
    """Canonical text form; parse_scalar(format_scalar(x)) round-trips."""
    if isinstance(value, Fraction):
        return str(value)
    if not value.im:
        return str(value.re)
    if value.im == 1:
        imag = "i"
    elif value.im == -1:
        imag = "-i"
    else:
        imag = f"{value.im}i"
    if not value.re:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{value.re}{sign}{imag}"


def star(value: Scalar) -> Scalar:
    """The involution: identity on Q, conjugation on Qi."""
    return value.conjugate()


def _zero(field: str) -> Scalar:
    return Fraction(0) if field == "Q" else GaussianRational(Fraction(0), Fraction(0))


def _one(field: str) -> Scalar:
    return Fraction(1) if field == "Q" else GaussianRational(Fraction(1), Fraction(0))


# ------------------------------------------------------- exact linear algebra


def _rref(rows: Sequence[Sequence[Scalar]], zero: Scalar) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns nonzero rows and pivot columns."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(mat)) if mat[i][c]), -1)
        if sel < 0:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = mat[r][c]
        mat[r] = [v / inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [row for row in mat[:r]], pivots


def _kernel(rows: Sequence[Sequence[Scalar]], ncols: int, zero: Scalar, one: Scalar) -> list[list[Scalar]]:
    """Canonical basis of {x : sum_i x_i row_i = 0 for every row}."""
    reduced, pivots = _rref(rows, zero)
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[list[Scalar]] = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for r, p in enumerate(pivots):
            vec[p] = zero - reduced[r][f]
        basis.append(vec)
    reduced_basis, _ = _rref(basis, zero)
    return reduced_basis


def _solve(a: list[list[Scalar]], b: list[Scalar], zero: Scalar) -> list[Scalar]:
    """Unique solution of a square exact system (raises if singular)."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    reduced, pivots = _rref(aug, zero)
    if pivots != list(range(n)):
        raise InputError("singular system in exact solve")
    return [reduced[i][n] for i in range(n)]


def _det(mat: list[list[Fraction]]) -> Fraction:
    """Determinant of a rational matrix by fraction-free row elimination."""
    m = [row[:] for row in mat]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        sel = next((i for i in range(c, n) if m[i][c]), -1)
        if sel < 0:
            return Fraction(0)
        if sel != c:
            m[c], m[sel] = m[sel], m[c]
            det = -det
        det *= m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                factor = m[i][c] / inv
                m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
    return det


# ------------------------------------------------------------------- spaces


@dataclass(frozen=True)
class HermitianSpace:
    """Dimension, scalar field tag, and a validated anisotropic gram matrix."""

    field: str
    gram: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.gram)

    def zero_vector(self) -> Vector:
        return tuple(_zero(self.field) for _ in range(self.dim))


def make_space(gram: Sequence[Sequence[Any]], field: str) -> HermitianSpace:
    """Validate a gram matrix: star-symmetry plus the positivity certificate.

    Entries may be scalar strings or already-parsed scalars.
    """
    _check_field(field)
    n = len(gram)
    if n == 0 or any(len(row) != n for row in gram):
        raise DimensionMismatchError("gram matrix must be square and nonempty")
    parsed: list[list[Scalar]] = []
    for row in gram:
        parsed.append([
            parse_scalar(v, field) if isinstance(v, str) else _coerce(v, field)
            for v in row
        ])
    for i in range(n):
        for j in range(n):
            if parsed[j][i] != star(parsed[i][j]):
                raise NotHermitianError(
                    f"gram[{j}][{i}] must be the star of gram[{i}][{j}]"
                )
    _sylvester(parsed, field)
    return HermitianSpace(field, tuple(tuple(row) for row in parsed))


def _coerce(value: Any, field: str) -> Scalar:
    if field == "Q":
        if isinstance(value, GaussianRational):
            raise InputError("Gaussian scalar in a rational space")
        return Fraction(value)
    return GaussianRational.of(value if isinstance(value, (GaussianRational, Fraction, int)) else Fraction(value))


def _sylvester(gram: list[list[Scalar]], field: str) -> None:
    """Positive-definiteness certificate via leading principal minors.

    For the Gaussian field the certificate runs on the realified quadratic
    form: with gram = a + b*i the real symmetric matrix is [[a, b], [-b, a]].
    """
    if field == "Q":
        real: list[list[Fraction]] = [[v for v in row] for row in gram]  # type: ignore[misc]
    else:
        n = len(gram)
        a = [[gram[i][j].re for j in range(n)] for i in range(n)]  # type: ignore[union-attr]
        b = [[gram[i][j].im for j in range(n)] for i in range(n)]  # type: ignore[union-attr]
        real = [a[i] + b[i] for i in range(n)]
        real += [[-b[i][j] for j in range(n)] + a[i] for i in range(n)]
    for k in range(1, len(real) + 1):
        minor = _det([row[:k] for row in real[:k]])
        if minor <= 0:
            raise AnisotropyError(
                f"leading principal minor {k} of the (realified) gram is {minor}, not positive"
            )


def parse_vector(entries: Sequence[Any], space: HermitianSpace) -> Vector:
    if len(entries) != space.dim:
        raise DimensionMismatchError(
            f"vector length {len(entries)} does not match dimension {space.dim}"
        )
    return tuple(
        parse_scalar(v, space.field) if isinstance(v, str) else _coerce(v, space.field)
        for v in entries
    )


def format_vector(vec: Vector) -> list[str]:
    return [format_scalar(v) for v in vec]


def inner(space: HermitianSpace, x: Vector, y: Vector) -> Scalar:
    """The form: linear in x, star-linear in y."""
    if len(x) != space.dim or len(y) != space.dim:
        raise DimensionMismatchError("vector length does not match the space dimension")
    acc = _zero(space.field)
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = space.gram[i]
        for j, yj in enumerate(y):
            if yj:
                acc = acc + xi * row[j] * star(yj)
    return acc


# ---------------------------------------------------------------- subspaces


@dataclass(frozen=True)
class Subspace:
    """Row space in reduced echelon form; equality is tuple equality."""

    space: HermitianSpace
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def subspace(space: HermitianSpace, vectors: Sequence[Sequence[Any]]) -> Subspace:
    parsed = [parse_vector(v, space) for v in vectors]
    reduced, _ = _rref(parsed, _zero(space.field))
    return Subspace(space, tuple(tuple(r) for r in reduced))


def zero_subspace(space: HermitianSpace) -> Subspace:
    return Subspace(space, ())


def full_subspace(space: HermitianSpace) -> Subspace:
    zero, one = _zero(space.field), _one(space.field)
    rows = [
        tuple(one if i == j else zero for j in range(space.dim))
        for i in range(space.dim)
    ]
    return Subspace(space, tuple(rows))


def contains(sub: Subspace, vec: Vector) -> bool:
    stacked, _ = _rref(list(sub.basis) + [list(vec)], _zero(sub.space.field))
    return len(stacked) == sub.dim


def sum_subspaces(a: Subspace, b: Subspace) -> Subspace:
    _same_space(a, b)
    reduced, _ = _rref(list(a.basis) + list(b.basis), _zero(a.space.field))
    return Subspace(a.space, tuple(tuple(r) for r in reduced))


def intersect_subspaces(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: echelonise [[A|A],[B|0]]; zero-left rows carry the meet."""
    _same_space(a, b)
    space = a.space
    n = space.dim
    zero = _zero(space.field)
    block: list[list[Scalar]] = []
    for row in a.basis:
        block.append(list(row) + list(row))
    for row in b.basis:
        block.append(list(row) + [zero] * n)
    reduced, _ = _rref(block, zero)
    right = [row[n:] for row in reduced if not any(row[:n])]
    final, _ = _rref(right, zero)
    return Subspace(space, tuple(tuple(r) for r in final))


def _same_space(a: Subspace, b: Subspace) -> None:
    if a.space != b.space:
        raise InputError("subspaces live in different Hermitian spaces")


def perp_subspace(space: HermitianSpace, sub: Subspace) -> Subspace:
    """{x : inner(x, b) = 0 for every basis vector b}."""
    if sub.space != space:
        raise InputError("subspace does not belong to the given space")
    zero, one = _zero(space.field), _one(space.field)
    constraints: list[list[Scalar]] = []
    for b in sub.basis:
        row = []
        for i in range(space.dim):
            acc = zero
            for j in range(space.dim):
                if b[j]:
                    acc = acc + space.gram[i][j] * star(b[j])
            row.append(acc)
        constraints.append(row)
    basis = _kernel(constraints, space.dim, zero, one)
    return Subspace(space, tuple(tuple(r) for r in basis))


def project(space: HermitianSpace, sub: Subspace, vec: Vector) -> Vector:
    """Orthogonal projection onto sub via the exact gram system."""
    if len(vec) != space.dim:
        raise DimensionMismatchError("vector length does not match the space dimension")
    if sub.dim == 0:
        return space.zero_vector()
    zero = _zero(space.field)
    k = sub.dim
    # sum_k t_k inner(b_k, b_m) = inner(vec, b_m) for every m
    a = [[inner(space, sub.basis[kk], sub.basis[m]) for kk in range(k)] for m in range(k)]
    rhs = [inner(space, vec, sub.basis[m]) for m in range(k)]
    t = _solve(a, rhs, zero)
    out = list(space.zero_vector())
    for kk in range(k):
        if t[kk]:
            out = [o + t[kk] * bv for o, bv in zip(out, sub.basis[kk])]
    return tuple(out)


# -------------------------------------------------------------------- lines


@dataclass(frozen=True)
class Line:
    """One-dimensional subspace; rep has first nonzero coordinate 1."""

    space: HermitianSpace
    rep: Vector


def line(space: HermitianSpace, vec: Sequence[Any]) -> Line:
    if isinstance(vec, tuple) and not any(isinstance(e, str) for e in vec):
        v = vec
    else:
        v = parse_vector(vec, space)
    if not any(v):
        raise InputError("the zero vector spans no line")
    reduced, _ = _rref([list(v)], _zero(space.field))
    return Line(space, tuple(reduced[0]))


def line_subspace(ln: Line) -> Subspace:
    return Subspace(ln.space, (ln.rep,))


def orthogonal_lines(a: Line, b: Line) -> bool:
    return not inner(a.space, a.rep, b.rep)


def sasaki_line(space: HermitianSpace, sub: Subspace, ln: Line) -> Line:
    """Image of a line under the Sasaki map to the projective image of sub.

    Route 1 projects the representative; route 2 intersects (line + perp
    of sub) with sub and insists on dimension one.  The routes must agree
    exactly; a mismatch would falsify the projection formula.
    """
    if ln.space != space or sub.space != space:
        raise InputError("line and subspace must live in the given space")
    if all(not inner(space, ln.rep, b) for b in sub.basis):
        raise InputError(
            "line is orthogonal to the subspace: outside the Sasaki map domain"
        )
    projected = project(space, sub, ln.rep)
    route1 = line(space, projected)
    shifted = sum_subspaces(line_subspace(ln), perp_subspace(space, sub))
    meet = intersect_subspaces(shifted, sub)
    assert meet.dim == 1, f"route 2 produced dimension {meet.dim}, expected 1"
    route2 = Line(space, meet.basis[0])
    assert route1.rep == route2.rep, "projection route and subspace route disagree"
    return route1


def sample_orthoset(space: HermitianSpace, lines: Sequence[Line]) -> Orthoset:
    """Finite orthoset of distinct lines under form-orthogonality."""
    reps = [ln.rep for ln in lines]
    if len(set(reps)) != len(reps):
        raise InputError("duplicate lines in sample")
    labels = ["<" + ",".join(format_vector(r)) + ">" for r in reps]
    pairs = [
        (labels[i], labels[j])
        for i in range(len(reps))
        for j in range(i + 1, len(reps))
        if not inner(space, reps[i], reps[j])
    ]
    return Orthoset.build(labels, pairs)


# ----------------------------------------------------------------- sampling


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-2, 2), rng.choice((1, 1, 2)))


def random_scalar(rng: random.Random, field: str) -> Scalar:
    if field == "Q":
        return _random_fraction(rng)
    return GaussianRational(_random_fraction(rng), _random_fraction(rng))


def random_vector(rng: random.Random, space: HermitianSpace, nonzero: bool = True) -> Vector:
    while True:
        v = tuple(random_scalar(rng, space.field) for _ in range(space.dim))
        if not nonzero or any(v):
            return v


def random_space(rng: random.Random, dim: int, field: str) -> HermitianSpace:
    """Identity gram half the time; otherwise R R* + I, always anisotropic."""
    zero, one = _zero(field), _one(field)
    if rng.random() < 0.5:
        gram = [[one if i == j else zero for j in range(dim)] for i in range(dim)]
        return make_space(gram, field)
    r = [[random_scalar(rng, field) for _ in range(dim)] for _ in range(dim)]
    gram = []
    for i in range(dim):
        row = []
        for j in range(dim):
            acc = one if i == j else zero
            for k in range(dim):
                acc = acc + r[i][k] * star(r[j][k])
            row.append(acc)
        gram.append(row)
    return make_space(gram, field)


def random_subspace(rng: random.Random, space: HermitianSpace, dim: int) -> Subspace:
    while True:
        vs = [random_vector(rng, space) for _ in range(dim)]
        sub = subspace(space, vs)
        if sub.dim == dim:
            return sub


@dataclass
class FuzzReport:
    field: str
    instances: int
    checks: dict[str, int]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def fuzz_hermitian(field: str, count: int, seed: int = 0,
                   dims: Sequence[int] = (2, 3, 4)) -> FuzzReport:
    """Seeded random property run; every comparison is exact.

    Per instance: star-symmetry of the form, double perp, S + perp(S) = H,
    projection idempotence and self-adjointness, agreement of both
    sasaki_line routes, and the Sasaki conditions on a sampled line family.
    """
    _check_field(field)
    checks = {
        "form_symmetry": 0,
        "double_perp": 0,
        "perp_sum": 0,
        "projection_idempotent": 0,
        "projection_self_adjoint": 0,
        "route_agreement": 0,
        "fixes_target": 0,
        "adjointness": 0,
    }
    failures: list[str] = []

    def fail(i: int, what: str) -> None:
        failures.append(f"instance {i}: {what}")

    for i in range(count):
        rng = random.Random(f"{seed}:{field}:{i}")
        dim = dims[i % len(dims)]
        space = random_space(rng, dim, field)
        x = random_vector(rng, space)
        y = random_vector(rng, space)
        if inner(space, x, y) != star(inner(space, y, x)):
            fail(i, "form star-symmetry")
        checks["form_symmetry"] += 1

        k = rng.randint(1, dim)
        sub = random_subspace(rng, space, k)
        perp = perp_subspace(space, sub)
        if perp_subspace(space, perp) != sub:
            fail(i, "double perp")
        checks["double_perp"] += 1
        if sum_subspaces(sub, perp) != full_subspace(space):
            fail(i, "S + perp(S) = H")
        checks["perp_sum"] += 1

        p = project(space, sub, x)
        if project(space, sub, p) != p:
            fail(i, "projection idempotence")
        checks["projection_idempotent"] += 1
        if inner(space, p, y) != inner(space, x, project(space, sub, y)):
            fail(i, "projection self-adjointness")
        checks["projection_self_adjoint"] += 1

        family: list[Line] = []
        attempts = 0
        while len(family) < 3 and attempts < 60:
            attempts += 1
            v = random_vector(rng, space)
            if all(not inner(space, v, b) for b in sub.basis):
                continue
            candidate = line(space, v)
            if all(candidate.rep != ln.rep for ln in family):
                family.append(candidate)
        images: dict[int, Line] = {}
        for idx, ln in enumerate(family):
            img = sasaki_line(space, sub, ln)  # route agreement asserted inside
            images[idx] = img
            checks["route_agreement"] += 1
            if contains(sub, ln.rep):
                if img.rep != ln.rep:
                    fail(i, "line inside the subspace not fixed")
                checks["fixes_target"] += 1
        for ii in range(len(family)):
            for jj in range(len(family)):
                lhs = orthogonal_lines(images[ii], family[jj])
                rhs = orthogonal_lines(family[ii], images[jj])
                if lhs != rhs:
                    fail(i, f"adjointness on line pair ({ii}, {jj})")
                checks["adjointness"] += 1

    return FuzzReport(field=field, instances=count, checks=checks, failures=failures)
