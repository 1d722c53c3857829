"""Focal values, weak-focus order, parity checks, and parameter Jacobians."""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from . import flow
from .errors import QhfocusError
from .fields import (
    Monomial,
    WeightedField,
    normalize,
    reduce_weights,
    require_valid,
    validate,
)
from .jets import Jet
from .polar import PolarRHS

DEFAULT_ZERO_TOL = 1e-9

EVEN_SUM = "even-sum"
ODD_SUM = "odd-sum"

WEAK_FOCUS = "weak-focus"
CENTER_CANDIDATE = "center-candidate"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class FocalReport:
    """Classification of the origin from the displacement coefficients."""

    values: tuple[float, ...]  # nu_k(2*pi) for k = 2..K
    zero_tol: float
    parity_class: str
    first_nonzero_index: int | None
    focus_order: int | None
    verdict: str
    weight_gcd: int = 1
    order: int = 0

    def nu(self, k: int) -> float:
        if k == 1:
            return 1.0
        return self.values[k - 2]

    @property
    def focal_indices(self) -> tuple[int, ...]:
        """Indices carrying focal values for this parity class, within order."""
        K = self.order
        if self.parity_class == EVEN_SUM:
            return tuple(range(3, K + 1, 2))
        return tuple(range(2, K + 1, 2))

    @property
    def focal_sequence(self) -> tuple[float, ...]:
        return tuple(self.nu(k) for k in self.focal_indices)


def _prepare(field: WeightedField) -> tuple[PolarRHS, int]:
    """Validate, normalize, and build the polar RHS; returns gcd of weights."""
    require_valid(field)
    d = math.gcd(field.p, field.q)
    if not field.normalized:
        field = normalize(field).field
    return PolarRHS(field), d


def classify(
    nu_tail: Sequence[float],
    p: int,
    q: int,
    zero_tol: float = DEFAULT_ZERO_TOL,
    weight_gcd: int = 1,
) -> FocalReport:
    """Build a FocalReport from the nu_2..nu_K tail of the displacement series."""
    values = tuple(float(v) for v in nu_tail)
    K = len(values) + 1
    scale = max(1.0, max((abs(v) for v in values), default=0.0))
    tol = zero_tol * scale
    parity = EVEN_SUM if (p + q) % 2 == 0 else ODD_SUM
    first = next(
        (k for k, v in zip(range(2, K + 1), values) if abs(v) > tol), None
    )
    if first is None:
        verdict, order_m = CENTER_CANDIDATE, None
    elif parity == EVEN_SUM and first % 2 == 1:
        verdict, order_m = WEAK_FOCUS, (first - 1) // 2
    elif parity == ODD_SUM and first % 2 == 0:
        verdict, order_m = WEAK_FOCUS, first // 2
    else:
        # parity theorems violated beyond tolerance: do not assert an order
        verdict, order_m = INDETERMINATE, None
    return FocalReport(
        values=values,
        zero_tol=tol,
        parity_class=parity,
        first_nonzero_index=first,
        focus_order=order_m,
        verdict=verdict,
        weight_gcd=weight_gcd,
        order=K,
    )


def focal_values(
    field: WeightedField,
    K: int | None = None,
    tol: float = DEFAULT_ZERO_TOL,
    integ_tol: float = flow.DEFAULT_TOL,
    precision: str = "double",
    dps: int = 30,
) -> FocalReport:
    """nu_2(2*pi)..nu_K(2*pi) by jet transport over one full turn."""
    rhs, d = _prepare(field)
    K = K if K is not None else flow.default_order(field.p, field.q)
    if K < 3:
        raise ValueError("focal analysis needs jet order K >= 3")
    if precision == "extended":
        nu = [float(v) for v in flow.integrate_jet_extended(rhs, order=K, dps=dps)]
    elif precision == "double":
        nu = [float(v) for v in flow.integrate_jet(rhs, tol=integ_tol, order=K).final.radius_coeffs]
    else:
        raise ValueError(f"unknown precision mode {precision!r}")
    return classify(nu[1:], field.p, field.q, zero_tol=tol, weight_gcd=d)


@dataclass(frozen=True)
class ShiftedCheck:
    """Outcome of the shifted-initial-series comparison (weak equivalence)."""

    standard_first: int | None
    shifted_first: int | None
    value_residual: float | None
    net_values: tuple[float, ...]  # nu*_k(2pi) - nu*_k(0) for k = 2..K

    @property
    def ok(self) -> bool:
        if self.standard_first is None:
            return self.shifted_first is None
        return (
            self.shifted_first == self.standard_first
            and self.value_residual is not None
            and self.value_residual <= 1e-8
        )


def shifted_focal_check(
    field: WeightedField,
    g: Jet,
    K: int | None = None,
    tol: float = DEFAULT_ZERO_TOL,
    integ_tol: float = flow.DEFAULT_TOL,
) -> ShiftedCheck:
    """Integrate with initial series g(h) = h + c_2 h^2 + ... and compare.

    The first index where nu*_k(2pi) - nu*_k(0) resolves must agree with the
    first nonzero focal index of the standard run, and the values there must
    match to 1e-8 relative.
    """
    if g.coeffs[0] != 0 or abs(g.coeffs[1] - 1.0) > 1e-14:
        raise ValueError("shift series must be g(h) = h + c_2 h^2 + ...")
    rhs, _ = _prepare(field)
    K = K if K is not None else flow.default_order(field.p, field.q)
    if g.order != K:
        g = Jet.radius((g.coeffs[1:] + (0.0,) * K)[:K])
    standard = focal_values(field, K=K, tol=tol, integ_tol=integ_tol)
    shifted = flow.integrate_jet(rhs, init=g, tol=integ_tol, order=K).final
    net = tuple(
        float(a - b) for a, b in zip(shifted.radius_coeffs[1:], g.radius_coeffs[1:])
    )
    scale = max(1.0, max((abs(v) for v in net), default=0.0))
    first = next(
        (k for k, v in zip(range(2, K + 1), net) if abs(v) > tol * scale), None
    )
    residual = None
    if first is not None and first == standard.first_nonzero_index:
        ref = standard.nu(first)
        residual = abs(net[first - 2] - ref) / max(abs(ref), 1e-300)
    return ShiftedCheck(standard.first_nonzero_index, first, residual, net)


# -- parameter Jacobians -------------------------------------------------------


@dataclass(frozen=True)
class JacobianResult:
    matrix: np.ndarray  # rows: focal indices, columns: parameters
    indices: tuple[int, ...]
    singular_values: np.ndarray
    rank: int
    ill_conditioned: bool


def focal_jacobian(
    family: Callable[[np.ndarray], WeightedField],
    eps0: Sequence[float],
    indices: Sequence[int],
    K: int | None = None,
    step: float | None = None,
    integ_tol: float = flow.DEFAULT_TOL,
) -> JacobianResult:
    """Central-difference Jacobian of nu_k(2*pi, eps) at eps0."""
    eps0 = np.asarray(eps0, dtype=float)
    indices = tuple(indices)
    Kmin = max(indices)
    K = max(K or 0, Kmin, 3)

    def values_at(eps: np.ndarray) -> np.ndarray:
        rep = focal_values(family(eps), K=K, integ_tol=integ_tol)
        return np.array([rep.nu(k) for k in indices])

    cols = []
    for i in range(eps0.size):
        h = step if step is not None else 1e-5 * max(1.0, abs(eps0[i]))
        e = np.zeros_like(eps0)
        e[i] = h
        cols.append((values_at(eps0 + e) - values_at(eps0 - e)) / (2 * h))
    J = np.column_stack(cols)
    sv = np.linalg.svd(J, compute_uv=False)
    cut = max(J.shape) * np.finfo(float).eps * (sv[0] if sv.size else 0.0)
    # finite differencing limits resolvable singular values well above eps
    cut = max(cut, 1e-7 * (sv[0] if sv.size else 0.0))
    rank = int(np.sum(sv > cut))
    ill = False
    if 0 < rank < sv.size and sv[rank - 1] / max(sv[rank], 1e-300) < 1e3:
        ill = True
    return JacobianResult(J, indices, sv, rank, ill)


# -- structural center certificates ---------------------------------------------


def is_hamiltonian(field: WeightedField, tol: float = 1e-13) -> bool:
    """True when div F vanishes coefficientwise (exact-Hamiltonian test)."""
    scale = max(
        [abs(t.c) for t in field.x_terms + field.y_terms] or [1.0]
    )
    return all(abs(c) <= tol * scale for c in field.divergence_terms().values())


def reversibility(field: WeightedField, tol: float = 1e-13) -> dict[str, bool]:
    """Time-reversal symmetries across the two axes.

    x-axis: (x, y, t) -> (x, -y, -t) invariance needs X odd and Y even in y;
    y-axis: (x, y, t) -> (-x, y, -t) invariance needs X even and Y odd in x.
    The leading part satisfies both.
    """
    scale = max([abs(t.c) for t in field.x_terms + field.y_terms] or [1.0])

    def small(c):
        return abs(c) <= tol * scale

    x_axis = all(small(t.c) for t in field.x_terms if t.j % 2 == 0) and all(
        small(t.c) for t in field.y_terms if t.j % 2 == 1
    )
    y_axis = all(small(t.c) for t in field.x_terms if t.k % 2 == 1) and all(
        small(t.c) for t in field.y_terms if t.k % 2 == 0
    )
    return {"x-axis": x_axis, "y-axis": y_axis}


def structural_center(field: WeightedField) -> dict[str, bool]:
    rev = reversibility(field)
    out = {"hamiltonian": is_hamiltonian(field)}
    out.update(rev)
    out["certified"] = out["hamiltonian"] or rev["x-axis"] or rev["y-axis"]
    return out


# -- random fields and parity surveys --------------------------------------------


def random_field(
    p: int,
    q: int,
    rng: np.random.Generator,
    n_terms: int = 3,
    max_extra_weight: int | None = None,
    amplitude: float = 1.0,
) -> WeightedField:
    """A random valid field: leading part plus a few admissible monomials."""
    max_extra = max_extra_weight if max_extra_weight is not None else max(p, q) + 2
    cap = (2 * p - 1) + (2 * q - 1) + 4

    def admissible(lead_weight: int, forbidden: tuple[int, int]):
        pool = []
        for k in range(cap + 1):
            for j in range(cap + 1 - k):
                w = k * p + j * q
                if lead_weight < w <= lead_weight + max_extra and (k, j) != forbidden:
                    pool.append((k, j))
        return pool

    x_pool = admissible((2 * p - 1) * q, (0, 2 * p - 1))
    y_pool = admissible((2 * q - 1) * p, (2 * q - 1, 0))
    x_terms = [
        Monomial(k, j, amplitude * rng.uniform(-1, 1))
        for k, j in (x_pool[i] for i in rng.choice(len(x_pool), size=min(n_terms, len(x_pool)), replace=False))
    ]
    y_terms = [
        Monomial(k, j, amplitude * rng.uniform(-1, 1))
        for k, j in (y_pool[i] for i in rng.choice(len(y_pool), size=min(n_terms, len(y_pool)), replace=False))
    ]
    return WeightedField(
        p=p, q=q, x_terms=tuple(x_terms), y_terms=tuple(y_terms), degree_cap=cap
    )


@dataclass
class SurveyResult:
    p: int
    q: int
    weight_gcd: int
    n_samples: int
    n_skipped: int
    n_unresolved: int
    first_index_counts: dict[int, int] = dc_field(default_factory=dict)
    parity_ok: bool = True

    @property
    def expected_parity(self) -> str:
        return "odd" if (self.p + self.q) % 2 == 0 else "even"


def parity_survey(
    p: int,
    q: int,
    n_samples: int = 20,
    K: int | None = None,
    seed: int = 42,
    tol: float = DEFAULT_ZERO_TOL,
    integ_tol: float = flow.DEFAULT_TOL,
) -> SurveyResult:
    """First-nonzero-index distribution over random fields at weights (p, q).

    Non-coprime weights are reduced first; sampling happens at the reduced
    weights, where the parity theorems speak.
    """
    d = math.gcd(p, q)
    p, q = p // d, q // d
    K = K if K is not None else flow.default_order(p, q)
    rng = np.random.default_rng(seed)
    res = SurveyResult(p, q, d, n_samples, 0, 0)
    want_odd = (p + q) % 2 == 0
    for _ in range(n_samples):
        f = random_field(p, q, rng)
        try:
            rep = focal_values(f, K=K, tol=tol, integ_tol=integ_tol)
        except QhfocusError:
            res.n_skipped += 1
            continue
        first = rep.first_nonzero_index
        if first is None or abs(rep.nu(first)) <= 10 * rep.zero_tol:
            res.n_unresolved += 1
            continue
        res.first_index_counts[first] = res.first_index_counts.get(first, 0) + 1
        if (first % 2 == 1) != want_odd:
            res.parity_ok = False
    return res
