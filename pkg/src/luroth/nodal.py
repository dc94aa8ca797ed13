"""Analysis of plane quartics with an ordinary node.

Pipeline: verify the node, move it to the last coordinate point by a
deterministic change of coordinates, split the equation as
t^2*f2 + t*f3 + f4, solve f4 = phi*f3 + psi*f2 for the unique linear phi and
quadratic psi, and classify by the determinant of the conic
t^2 + 2*t*phi - psi.  The conic is singular exactly when the discriminant of
phi^2 + psi vanishes; its kernel point is then the tangency point of the
residual line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .forms import BinaryForm, PreconditionError, TernaryForm
from .linalg import (
    Matrix,
    conic_det3,
    conic_kernel_point,
    disc_binary_quadratic,
    invert,
    mat_vec,
    solve_linear,
    sylvester_resultant,
)
from .poncelet import normalize_projective


def _q(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class NodeError(PreconditionError):
    """The given point is not an admissible ordinary node of the quartic."""


@dataclass(frozen=True)
class NodeReport:
    on_curve: bool
    singular: bool
    ordinary: bool
    admissible: bool

    def all_ok(self) -> bool:
        return self.on_curve and self.singular and self.ordinary and self.admissible

    def flags(self) -> dict:
        return {
            "on_curve": self.on_curve,
            "singular": self.singular,
            "ordinary": self.ordinary,
            "admissible": self.admissible,
        }


@dataclass(frozen=True)
class NodeDecomposition:
    """Coordinate change plus the graded pieces of the normalized quartic.

    transform sends the last coordinate point to the node; pair holds the two
    variables of f2, f3, f4 and t_var the variable playing the cone direction.
    """

    transform: Matrix
    pair: tuple[str, str]
    t_var: str
    original_vars: tuple[str, str, str]
    f2: BinaryForm
    f3: BinaryForm
    f4: BinaryForm

    def normalized_quartic(self) -> TernaryForm:
        return assemble_quartic(self.f2, self.f3, self.f4, self.t_var,
                                self.original_vars)


@dataclass(frozen=True)
class AssociatedConicData:
    phi: BinaryForm
    psi: BinaryForm
    conic: TernaryForm
    det3: Fraction
    disc_binary: Fraction  # discriminant of phi^2 + psi


@dataclass(frozen=True)
class NodalQuarticAnalysis:
    report: NodeReport
    decomposition: NodeDecomposition
    conic_data: AssociatedConicData
    type_two: bool
    conic_singular_point: tuple[Fraction, ...] | None


@dataclass(frozen=True)
class TangentMapResult:
    xi: tuple[Fraction, Fraction]
    phi_dot: BinaryForm
    psi_dot: BinaryForm
    conic_velocity: TernaryForm


def _node_transform(point: Sequence) -> tuple[Matrix, int]:
    p = [_q(x) for x in point]
    pivot = next((i for i, x in enumerate(p) if x != 0), None)
    if pivot is None:
        raise ValueError("the zero vector is not a projective point")
    scaled = [x / p[pivot] for x in p]
    others = [i for i in range(3) if i != pivot]
    columns = [[Fraction(1) if r == others[0] else Fraction(0) for r in range(3)],
               [Fraction(1) if r == others[1] else Fraction(0) for r in range(3)],
               scaled]
    transform = [[columns[c][r] for c in range(3)] for r in range(3)]
    return transform, pivot


def _decompose(quartic: TernaryForm, point: Sequence) -> tuple[Matrix, tuple[str, str], str, list[BinaryForm]]:
    """Graded pieces f0..f4 of the quartic in node-centered coordinates."""
    transform, pivot = _node_transform(point)
    moved = quartic.substitute_linear(transform)
    variables = quartic.variables
    others = [i for i in range(3) if i != pivot]
    pair = (variables[others[0]], variables[others[1]])
    t_var = variables[pivot]
    pieces = []
    for i in range(5):  # f_i has degree i, multiplying t^(4-i)
        coeffs = [Fraction(0)] * (i + 1)
        for (a, b, c), coef in moved.terms.items():
            if c == 4 - i:
                coeffs[b] = coef
        pieces.append(BinaryForm(i, pair, tuple(coeffs)))
    return transform, pair, t_var, pieces


def verify_node(quartic: TernaryForm, point: Sequence) -> NodeReport:
    """Local flags at a rational point: on the curve, singular, ordinary node,
    and admissible (tangent cone coprime to the polar cubic's cubic part)."""
    if quartic.is_zero() or quartic.degree != 4:
        raise PreconditionError("expected a nonzero quartic")
    _, _, _, pieces = _decompose(quartic, point)
    f0, f1, f2, f3, _ = pieces
    on_curve = f0.is_zero()
    singular = on_curve and f1.is_zero()
    ordinary = singular and not f2.is_zero() and disc_binary_quadratic(f2) != 0
    admissible = (ordinary and not f3.is_zero()
                  and sylvester_resultant(f2, f3) != 0)
    return NodeReport(on_curve, singular, ordinary, admissible)


def normalize_at_node(quartic: TernaryForm, point: Sequence) -> NodeDecomposition:
    """Deterministic normalization sending the node to the last coordinate point.

    The pivot is the first nonzero coordinate of the node; the other two
    standard vectors keep their order, so the decomposition is reproducible.
    """
    transform, pair, t_var, pieces = _decompose(quartic, point)
    f0, f1, f2, f3, f4 = pieces
    if not f0.is_zero() or not f1.is_zero():
        raise NodeError("the point is not a singular point of the quartic")
    if f2.is_zero() or disc_binary_quadratic(f2) == 0:
        raise NodeError("the singular point is not an ordinary node")
    return NodeDecomposition(transform, pair, t_var, quartic.variables, f2, f3, f4)


def assemble_quartic(f2: BinaryForm, f3: BinaryForm, f4: BinaryForm,
                     t_var: str, var_order: tuple[str, str, str]) -> TernaryForm:
    """t^2*f2 + t*f3 + f4 as a ternary quartic in the requested variable order."""
    pair = f2.variables
    triple = (pair[0], pair[1], t_var)
    terms = {}
    for t_power, f in ((2, f2), (1, f3), (0, f4)):
        for (a, b), c in f.terms().items():
            terms[(a, b, t_power)] = c
    return TernaryForm.from_terms(4, triple, terms).with_vars(var_order)


def _conic_form(phi: BinaryForm, psi: BinaryForm, t_var: str,
                var_order: tuple[str, str, str]) -> TernaryForm:
    pair = phi.variables
    triple = (pair[0], pair[1], t_var)
    terms = {(0, 0, 2): Fraction(1)}
    for (a, b), c in phi.terms().items():
        terms[(a, b, 1)] = 2 * c
    for (a, b), c in psi.terms().items():
        terms[(a, b, 0)] = terms.get((a, b, 0), Fraction(0)) - c
    return TernaryForm.from_terms(2, triple, terms).with_vars(var_order)


def koszul_solve(f2: BinaryForm, f3: BinaryForm,
                 rhs: BinaryForm) -> tuple[BinaryForm, BinaryForm]:
    """Unique (phi linear, psi quadratic) with phi*f3 + psi*f2 = rhs (degree 4)."""
    pair = f2.variables
    columns = []
    for phi_idx in range(2):
        basis = BinaryForm.from_coeffs(pair, [1 if j == phi_idx else 0 for j in range(2)])
        columns.append(list((basis * f3).coeffs))
    for psi_idx in range(3):
        basis = BinaryForm.from_coeffs(pair, [1 if j == psi_idx else 0 for j in range(3)])
        columns.append(list((basis * f2).coeffs))
    system = [[columns[c][r] for c in range(5)] for r in range(5)]
    solution = solve_linear(system, list(rhs.coeffs))
    if solution.status != "unique":
        raise PreconditionError(
            f"Koszul system is {solution.status.replace('_', '-')}: "
            "f2 and f3 share a projective root")
    x = solution.vector
    phi = BinaryForm.from_coeffs(pair, x[:2])
    psi = BinaryForm.from_coeffs(pair, x[2:])
    return phi, psi


def associated_conic(dec: NodeDecomposition) -> AssociatedConicData:
    """The unique conic t^2 + 2*t*phi - psi through the node's contact points."""
    phi, psi = koszul_solve(dec.f2, dec.f3, dec.f4)
    conic = _conic_form(phi, psi, dec.t_var, dec.original_vars)
    det3 = conic_det3(conic)
    disc = disc_binary_quadratic(phi * phi + psi)
    return AssociatedConicData(phi, psi, conic, det3, disc)


def classify(quartic: TernaryForm, point: Sequence) -> NodalQuarticAnalysis:
    """Full nodal analysis; the verdict is type II exactly when det3 = 0."""
    report = verify_node(quartic, point)
    if not report.all_ok():
        raise NodeError(f"node verification failed: {report.flags()}")
    dec = normalize_at_node(quartic, point)
    data = associated_conic(dec)
    type_two = data.det3 == 0
    singular_point = None
    if type_two:
        kernel = conic_kernel_point(data.conic)
        if kernel is not None:
            singular_point = normalize_projective(kernel)
    return NodalQuarticAnalysis(report, dec, data, type_two, singular_point)


def residual_line_identity(dec: NodeDecomposition,
                           data: AssociatedConicData) -> BinaryForm:
    """Substitute t := -phi into the normalized quartic.

    The result must factor exactly as (phi^2 + psi) * f2; any mismatch is an
    internal-consistency fault and aborts.
    """
    phi = data.phi
    neg_phi = -phi
    result = (neg_phi * neg_phi) * dec.f2 + neg_phi * dec.f3 + dec.f4
    expected = (phi * phi + data.psi) * dec.f2
    if result != expected:
        raise AssertionError("residual-line identity failed: "
                             "F(., ., -phi) != (phi^2 + psi) * f2")
    return result


def tangent_map(dec: NodeDecomposition, data: AssociatedConicData,
                direction: TernaryForm) -> TangentMapResult:
    """First-order motion of the node and the associated conic.

    direction is a quartic vanishing at the node, decomposed in the same
    normalized coordinates as g1*t^3 + g2*t^2 + g3*t + g4.  The node velocity
    xi solves the polarized cone equation, then a Koszul solve yields the
    conic velocity 2*t*phi_dot - psi_dot.
    """
    if disc_binary_quadratic(dec.f2) == 0:
        raise PreconditionError("node is not ordinary: degenerate tangent cone")
    g_pieces = _direction_pieces(dec, direction)
    g0, g1, g2, g3, g4 = g_pieces
    if not g0.is_zero():
        raise PreconditionError("direction quartic does not vanish at the node")
    pair = dec.pair
    # polarized cone equation: d(f2).xi = -g1, a 2x2 solve
    hessian = _hessian(dec.f2)
    rhs = [-c for c in g1.coeffs]
    xi = tuple(mat_vec(invert(hessian), rhs))
    df3 = dec.f3.directional(xi) if not dec.f3.is_zero() else BinaryForm.zero(2, pair)
    df4 = dec.f4.directional(xi) if not dec.f4.is_zero() else BinaryForm.zero(3, pair)
    rhs_form = g4 - (g3 + df4) * data.phi - (g2 + df3) * data.psi
    phi_dot, psi_dot = koszul_solve(dec.f2, dec.f3, rhs_form)
    velocity = _conic_velocity(phi_dot, psi_dot, dec.t_var, dec.original_vars)
    return TangentMapResult((xi[0], xi[1]), phi_dot, psi_dot, velocity)


def _hessian(f2: BinaryForm) -> Matrix:
    p, q, r = f2.coeffs
    return [[2 * p, q], [q, 2 * r]]


def _direction_pieces(dec: NodeDecomposition, direction: TernaryForm) -> list[BinaryForm]:
    if direction.degree != 4:
        raise PreconditionError("direction must be a quartic")
    if direction.variables != dec.original_vars:
        raise ValueError("direction must use the quartic's variable triple")
    moved = direction.substitute_linear(dec.transform)
    # slots of the substituted form are the new coordinates (pair0, pair1, t)
    pieces = []
    for i in range(5):
        coeffs = [Fraction(0)] * (i + 1)
        for (a, b, c), coef in moved.terms.items():
            if c == 4 - i:
                coeffs[b] = coef
        pieces.append(BinaryForm(i, dec.pair, tuple(coeffs)))
    return pieces


def _conic_velocity(phi_dot: BinaryForm, psi_dot: BinaryForm, t_var: str,
                    var_order: tuple[str, str, str]) -> TernaryForm:
    pair = phi_dot.variables
    triple = (pair[0], pair[1], t_var)
    terms = {}
    for (a, b), c in phi_dot.terms().items():
        terms[(a, b, 1)] = 2 * c
    for (a, b), c in psi_dot.terms().items():
        terms[(a, b, 0)] = terms.get((a, b, 0), Fraction(0)) - c
    return TernaryForm.from_terms(2, triple, terms).with_vars(var_order)


def quartic_from_conic_and_cubic(f2: BinaryForm, f3: BinaryForm,
                                 phi: BinaryForm, psi: BinaryForm,
                                 t_var: str,
                                 var_order: tuple[str, str, str] | None = None) -> TernaryForm:
    """Inverse construction: the quartic t^2*f2 + t*f3 + (psi*f2 + phi*f3).

    Round-trips with normalize_at_node + associated_conic at the node
    [0:0:1] of the resulting variable order (pair0, pair1, t_var).
    """
    if f2.degree != 2 or f3.degree != 3 or phi.degree != 1 or psi.degree != 2:
        raise PreconditionError("expected degrees (2, 3) and (1, 2)")
    if disc_binary_quadratic(f2) == 0:
        raise PreconditionError("f2 must be a nondegenerate binary quadratic")
    if f3.is_zero() or sylvester_resultant(f2, f3) == 0:
        raise PreconditionError("f2 and f3 must be coprime")
    pair = f2.variables
    if var_order is None:
        var_order = (pair[0], pair[1], t_var)
    f4 = psi * f2 + phi * f3
    return assemble_quartic(f2, f3, f4, t_var, var_order)
