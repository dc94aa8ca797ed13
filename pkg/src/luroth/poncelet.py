"""Curves of jumping lines for pencils of binary forms on a smooth conic.

A smooth plane conic is handled through a degree-2 parametrization by the
projective line.  A pencil of degree-(n+1) binary forms on the parametrizing
line determines a degree-n curve in the dual plane: the determinant of an
(n+2)x(n+2) matrix whose constant columns hold the pencil and whose linear
columns hold the shifted pullback of the moving line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .forms import BinaryForm, PreconditionError, TernaryForm, form_gcd
from .linalg import (
    PolyMatrix,
    nullspace,
    rank,
    sylvester_resultant,
)

PRIMAL_VARS = ("x", "y", "t")
DUAL_VARS = ("u", "v", "w")
PARAM_VARS = ("s0", "s1")


def _q(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def projectively_equal(a: Sequence, b: Sequence) -> bool:
    a = [_q(x) for x in a]
    b = [_q(x) for x in b]
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i))


def normalize_projective(point: Sequence) -> tuple[Fraction, ...]:
    """Clear denominators and common factors; first nonzero entry positive."""
    p = [_q(x) for x in point]
    if all(x == 0 for x in p):
        raise ValueError("the zero vector is not a projective point")
    from math import gcd, lcm
    denom = lcm(*(x.denominator for x in p))
    ints = [int(x * denom) for x in p]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


@dataclass(frozen=True)
class ConicParam:
    """A smooth conic given by a degree-2 parametrization plus its equation."""

    p0: BinaryForm
    p1: BinaryForm
    p2: BinaryForm
    implicit: TernaryForm

    @property
    def param_vars(self) -> tuple[str, str]:
        return self.p0.variables

    def image(self, point: Sequence) -> tuple[Fraction, Fraction, Fraction]:
        return (self.p0.evaluate(point), self.p1.evaluate(point),
                self.p2.evaluate(point))


def make_conic(p0: BinaryForm, p1: BinaryForm, p2: BinaryForm,
               primal_vars: tuple[str, str, str] = PRIMAL_VARS) -> ConicParam:
    """Validate a parametrization and compute the implicit conic equation."""
    for p in (p0, p1, p2):
        if p.degree != 2:
            raise PreconditionError("parametrization components must have degree 2")
        if p.variables != p0.variables:
            raise ValueError("parametrization components must share variables")
    coeff_rows = [list(p.coeffs) for p in (p0, p1, p2)]
    if rank(coeff_rows) < 3:
        raise PreconditionError(
            "parametrization components are linearly dependent: image is not a smooth conic")
    # a ternary quadric vanishing on the image: 6 unknowns, one per quadric monomial
    monomials = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
    ps = [p0, p1, p2]
    columns = []
    for (i, j, k) in monomials:
        prod = BinaryForm.from_coeffs(p0.variables, [1])
        for idx, e in enumerate((i, j, k)):
            for _ in range(e):
                prod = prod * ps[idx]
        columns.append(list(prod.coeffs))
    system = [[columns[c][r] for c in range(6)] for r in range(5)]
    kernel = nullspace(system)
    if len(kernel) != 1:
        raise PreconditionError("parametrization image is not a smooth conic")
    coeffs = kernel[0]
    implicit = TernaryForm.from_terms(
        2, primal_vars, {m: c for m, c in zip(monomials, coeffs)}).lex_normalized()
    return ConicParam(p0, p1, p2, implicit)


def standard_conic(param_vars: tuple[str, str] = PARAM_VARS,
                   primal_vars: tuple[str, str, str] = PRIMAL_VARS) -> ConicParam:
    """The conic x*y - t^2 = 0 parametrized by (s0^2, s1^2, s0*s1)."""
    p0 = BinaryForm.from_coeffs(param_vars, [1, 0, 0])
    p1 = BinaryForm.from_coeffs(param_vars, [0, 0, 1])
    p2 = BinaryForm.from_coeffs(param_vars, [0, 1, 0])
    return make_conic(p0, p1, p2, primal_vars)


@dataclass(frozen=True)
class PonceletPencil:
    """Two independent binary forms of degree n+1, n >= 2."""

    gamma1: BinaryForm
    gamma2: BinaryForm

    def __post_init__(self):
        if self.gamma1.variables != self.gamma2.variables:
            raise ValueError("pencil generators must share variables")
        if self.gamma1.degree != self.gamma2.degree:
            raise PreconditionError("pencil generators must have equal degree")
        if self.gamma1.degree < 3:
            raise PreconditionError("pencil degree must be at least 3 (n >= 2)")
        if _dependent(self.gamma1, self.gamma2):
            raise PreconditionError("pencil generators are linearly dependent")

    @property
    def n(self) -> int:
        return self.gamma1.degree - 1


def _dependent(g: BinaryForm, h: BinaryForm) -> bool:
    return rank([list(g.coeffs), list(h.coeffs)]) < 2


def line_pullback(conic: ConicParam, line: Sequence) -> BinaryForm:
    """Binary quadratic whose roots are the parameters of line /\\ conic."""
    u, v, w = (_q(c) for c in line)
    return conic.p0.scale(u) + conic.p1.scale(v) + conic.p2.scale(w)


def _pullback_columns(conic: ConicParam, n: int,
                      dual_vars: tuple[str, str, str]) -> list[list[TernaryForm]]:
    """Columns of coefficients of q * s0^(n-1-i) * s1^i, linear in (u,v,w)."""
    pair = conic.param_vars
    columns = []
    for i in range(n):
        shift = BinaryForm.from_coeffs(
            pair, [1 if j == i else 0 for j in range(n)])
        column = []
        shifted = [p * shift for p in (conic.p0, conic.p1, conic.p2)]
        for row in range(n + 2):
            terms = {}
            for var_idx, s in enumerate(shifted):
                c = s.coeffs[row]
                if c:
                    exp = tuple(1 if k == var_idx else 0 for k in range(3))
                    terms[exp] = c
            column.append(TernaryForm.from_terms(1, dual_vars, terms)
                          if terms else TernaryForm.zero(1, dual_vars))
        columns.append(column)
    return columns


def poncelet_matrix(conic: ConicParam, pencil: PonceletPencil,
                    dual_vars: tuple[str, str, str] = DUAL_VARS) -> PolyMatrix:
    """The (n+2)x(n+2) presentation matrix: [gamma1, gamma2, q-shift columns]."""
    n = pencil.n
    const_cols = [
        [TernaryForm.constant(c, dual_vars) for c in pencil.gamma1.coeffs],
        [TernaryForm.constant(c, dual_vars) for c in pencil.gamma2.coeffs],
    ]
    columns = const_cols + _pullback_columns(conic, n, dual_vars)
    rows = [[columns[j][i] for j in range(n + 2)] for i in range(n + 2)]
    return PolyMatrix.from_rows(rows)


class DegeneratePencilError(PreconditionError):
    """The presentation determinant vanishes identically."""


def poncelet_curve(conic: ConicParam, pencil: PonceletPencil,
                   dual_vars: tuple[str, str, str] = DUAL_VARS) -> TernaryForm:
    """Degree-n curve of jumping lines, normalized lexicographically-monic."""
    det = poncelet_matrix(conic, pencil, dual_vars).determinant()
    if det.is_zero():
        raise DegeneratePencilError("pencil determinant vanishes identically")
    return det.lex_normalized()


def is_base_point_free(pencil: PonceletPencil) -> bool:
    return sylvester_resultant(pencil.gamma1, pencil.gamma2) != 0


def is_jumping_line(conic: ConicParam, pencil: PonceletPencil,
                    line: Sequence) -> bool:
    """Whether the restriction of the pencil modulo the line pullback drops rank.

    Decided as singularity of the rational specialization of the presentation
    matrix, i.e. the classes of the two generators modulo multiples of q are
    dependent.  Agrees with vanishing of the jumping curve at the line.
    """
    n = pencil.n
    q = line_pullback(conic, line)
    columns = [list(pencil.gamma1.coeffs), list(pencil.gamma2.coeffs)]
    for i in range(n):
        shift = BinaryForm.from_coeffs(
            conic.param_vars, [1 if j == i else 0 for j in range(n)])
        columns.append(list((q * shift).coeffs))
    matrix = [[columns[j][i] for j in range(n + 2)] for i in range(n + 2)]
    return rank(matrix) < n + 2


def chord_dual(conic: ConicParam, a: Sequence, b: Sequence) -> tuple[Fraction, ...]:
    """Dual coordinates of the chord through the images of two parameters."""
    if projectively_equal(a, b):
        raise PreconditionError("chord endpoints must be distinct parameters")
    pa = conic.image(a)
    pb = conic.image(b)
    cross = (pa[1] * pb[2] - pa[2] * pb[1],
             pa[2] * pb[0] - pa[0] * pb[2],
             pa[0] * pb[1] - pa[1] * pb[0])
    return normalize_projective(cross)


def singular_jump_criterion(conic: ConicParam, pencil: PonceletPencil,
                            line: Sequence) -> bool:
    """Whether some pencil member is divisible by the square of the pullback.

    Requires a base-point-free pencil; decided by the rank of the generators'
    classes modulo q^2 times lower-degree forms.
    """
    if not is_base_point_free(pencil):
        raise PreconditionError("singular-jump criterion requires a base-point-free pencil")
    n = pencil.n
    q2 = line_pullback(conic, line).power(2)
    shifts = max(n - 2, 0)
    columns = []
    for i in range(shifts):
        shift = BinaryForm.from_coeffs(
            conic.param_vars, [1 if j == i else 0 for j in range(shifts)])
        columns.append(list((q2 * shift).coeffs))
    base_rank = rank([[col[r] for col in columns] for r in range(n + 2)]) if columns else 0
    with_gammas = columns + [list(pencil.gamma1.coeffs), list(pencil.gamma2.coeffs)]
    full_rank = rank([[col[r] for col in with_gammas] for r in range(n + 2)])
    return full_rank <= base_rank + 1


# ---------------------------------------------------------------------------
# the three worked 6x6 families (entries transcribed verbatim)

FAMILY_NAMES = ("eps91", "92", "93")


def family_matrix(name: str, param=0,
                  dual_vars: tuple[str, str, str] = DUAL_VARS) -> PolyMatrix:
    """One of the three worked 6x6 determinantal families over (u, v, w)."""
    p = _q(param)
    u, v, w = ({(1, 0, 0): 1}, {(0, 1, 0): 1}, {(0, 0, 1): 1})

    def lin(terms_scaled):
        terms = {}
        for base, scalar in terms_scaled:
            for e, c in base.items():
                val = _q(c) * _q(scalar)
                if val:
                    terms[e] = terms.get(e, Fraction(0)) + val
        return TernaryForm.from_terms(1, dual_vars, terms)

    def const(c):
        return TernaryForm.constant(c, dual_vars)

    z1 = TernaryForm.zero(1, dual_vars)
    if name == "eps91":
        rows = [
            [const(1), const(0), lin([(v, 1)]), z1, z1, z1],
            [const(0), const(0), lin([(w, 1)]), lin([(v, 1)]), z1, z1],
            [const(1), const(0), lin([(u, p)]), lin([(w, 1)]), z1, lin([(v, -1)])],
            [const(0), const(1), z1, z1, lin([(u, 1)]), z1],
            [const(2), const(0), z1, z1, lin([(w, 1)]), lin([(u, 1)])],
            [const(0), const(1), z1, lin([(u, -p)]), lin([(v, p)]), lin([(w, 1)])],
        ]
    elif name == "92":
        rows = [
            [const(0), const(-1), lin([(v, 1)]), z1, z1, z1],
            [const(0), const(0), lin([(w, 1)]), lin([(v, 1)]), z1, z1],
            [const(1), const(0), lin([(u, 1)]), lin([(w, 1)]), z1, lin([(v, -1)])],
            [const(0), const(1), z1, z1, lin([(u, 1)]), z1],
            [const(0), const(0), z1, z1, lin([(w, 1)]), lin([(u, 1)])],
            [const(1), const(0), z1, lin([(u, -1)]), lin([(v, 1)]), lin([(w, 1)])],
        ]
    elif name == "93":
        rows = [
            [const(0), const(-1), lin([(v, 1)]), z1, z1, z1],
            [const(0), const(0), lin([(w, 1)]), lin([(v, 1)]), z1, z1],
            [const(1), const(p), lin([(u, 1)]), lin([(w, 1)]), z1, lin([(v, -1)])],
            [const(0), const(1), z1, z1, lin([(u, 1)]), z1],
            [const(0), const(0), z1, z1, lin([(w, 1)]), lin([(u, 1)])],
            [const(1), const(-p), z1, lin([(u, -1)]), lin([(v, 1)]), lin([(w, 1)])],
        ]
    else:
        raise ValueError(f"unknown family name {name!r}; expected one of {FAMILY_NAMES}")
    return PolyMatrix.from_rows(rows)


def family_curve(name: str, param=0,
                 dual_vars: tuple[str, str, str] = DUAL_VARS) -> TernaryForm:
    """Determinant of a family matrix, normalized lexicographically-monic."""
    det = family_matrix(name, param, dual_vars).determinant()
    if det.is_zero():
        raise DegeneratePencilError(f"family {name!r} determinant vanishes at this parameter")
    return det.lex_normalized()
