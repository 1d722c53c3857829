"""Limit-cycle detection from displacement sign changes.

The displacement is either the polar return map minus identity (weighted
fields) or the section return along the positive x-axis (general Cartesian
systems).  Cycles are bracketed on a geometric grid, refined by bisection,
and classified by the direction of the sign change.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from . import flow
from .errors import AlternationError, QhfocusError
from .fields import WeightedField, normalize
from .polar import PolarRHS

POLAR = "polar"
CARTESIAN = "cartesian"


def _displacement_fn(backend: str, system, tol: float) -> Callable[[float], float]:
    if backend == POLAR:
        if isinstance(system, WeightedField):
            system = PolarRHS(normalize(system).field)
        rhs: PolarRHS = system
        return lambda h: flow.return_map(rhs, h, tol) - h
    if backend == CARTESIAN:
        return lambda x0: flow.section_return(system, x0, tol).x - x0
    raise ValueError(f"unknown backend {backend!r}")


def displacement(backend: str, system, h: float, tol: float = flow.DEFAULT_TOL) -> float:
    """One displacement evaluation Delta(h)."""
    return _displacement_fn(backend, system, tol)(h)


@dataclass(frozen=True)
class Cycle:
    h_star: float
    bracket: tuple[float, float]
    residual: float
    stability: str  # "stable" | "unstable"


@dataclass
class CycleSet:
    backend: str
    h_lo: float
    h_hi: float
    grid_n: int
    cycles: list[Cycle] = dc_field(default_factory=list)
    scan: list[tuple[float, float]] = dc_field(default_factory=list)
    warnings: list[str] = dc_field(default_factory=list)

    def __len__(self) -> int:
        return len(self.cycles)

    def scan_array(self) -> np.ndarray:
        return np.asarray(self.scan)


def find_cycles(
    backend: str,
    system,
    h_lo: float,
    h_hi: float,
    grid_n: int = 48,
    tol: float = flow.DEFAULT_TOL,
    noise_floor: float | None = None,
) -> CycleSet:
    """Scan Delta on a geometric grid, bracket sign changes, refine by bisection.

    Samples below the noise floor carry no trustworthy sign, so they are
    treated as indeterminate; a bracket is formed between the nearest
    determinate samples of opposite sign on either side of the crossing.
    """
    if h_lo <= 0 or h_hi <= h_lo:
        raise ValueError("need 0 < h_lo < h_hi")
    if grid_n < 16:
        raise ValueError("grid_n must be at least 16")
    delta = _displacement_fn(backend, system, tol)
    floor = noise_floor if noise_floor is not None else 100 * tol
    grid = np.geomspace(h_lo, h_hi, grid_n)
    values = []
    for h in grid:
        values.append(delta(h))
    out = CycleSet(backend, h_lo, h_hi, grid_n, scan=list(zip(map(float, grid), map(float, values))))
    resolved = [(h, v) for h, v in out.scan if abs(v) >= floor]
    for (a, fa), (b, fb) in zip(resolved[:-1], resolved[1:]):
        if fa * fb >= 0:
            continue
        lo, hi, flo = a, b, fa
        while hi - lo > tol * max(1.0, hi):
            mid = 0.5 * (lo + hi)
            fm = delta(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if flo * fm < 0:
                hi = mid
            else:
                lo, flo = mid, fm
        root = 0.5 * (lo + hi)
        out.cycles.append(
            Cycle(
                h_star=float(root),
                bracket=(float(a), float(b)),
                residual=abs(delta(root)),
                stability="stable" if fa > 0 else "unstable",
            )
        )
    for c1, c2 in zip(out.cycles[:-1], out.cycles[1:]):
        if c1.bracket[1] > c2.bracket[0]:
            out.warnings.append(
                f"unresolved pair near h={c1.h_star!r}, {c2.h_star!r}: grid too coarse"
            )
    return out


def closure_error(
    cartesian_field,
    h_star: float,
    p: int = 1,
    tol: float = flow.DEFAULT_TOL,
) -> float:
    """Re-integrate a reported cycle as a Cartesian orbit; section-point gap.

    A polar root h corresponds to the Cartesian section point (h**p, 0).
    """
    x0 = h_star**p
    crossing = flow.section_return(cartesian_field, x0, tol)
    return abs(crossing.x - x0)


def alternation_search(
    chain_fn: Callable[[np.ndarray], Sequence[float]],
    target_signs: Sequence[int],
    box: Sequence[tuple[float, float]],
    gap: float | Sequence[float] = 10.0,
    scan_n: int = 24,
    fixed_tail: Sequence[float] | None = None,
    floor: float = 1e-10,
) -> np.ndarray:
    """Find a parameter point realizing a sign chain with growing magnitudes.

    ``chain_fn`` maps an n-parameter vector to the chain of focal-like values
    (last entries controlled by outer structure).  Parameter i is assumed to
    steer chain entry i while leaving later entries essentially unchanged, so
    parameters are tuned one at a time from the last down to the first, each
    scanned geometrically inside its box until its chain entry has the target
    sign and magnitude at most ``1/gap[i]`` of the next entry.  Passing one
    gap per entry (never below 10) keeps the displacement roots separated:
    the roots sit near the successive magnitude ratios, so uniform gaps would
    let adjacent roots collide.
    """
    target_signs = list(target_signs)
    gaps = (
        [float(gap)] * (len(target_signs) - 1)
        if np.isscalar(gap)
        else [float(g) for g in gap]
    )
    if len(gaps) != len(target_signs) - 1:
        raise ValueError("need one gap per tunable chain entry")
    if any(g < 10 for g in gaps):
        raise ValueError("magnitude gaps below 10 do not separate cycle roots")
    n = len(box)
    eps = np.zeros(n) if fixed_tail is None else np.asarray(fixed_tail, dtype=float)
    chain = list(chain_fn(eps))
    if len(chain) < len(target_signs):
        raise ValueError("chain shorter than the requested sign pattern")
    # the tail entry must already carry its sign at the base point
    if np.sign(chain[len(target_signs) - 1]) != target_signs[-1]:
        raise AlternationError(
            f"chain tail has sign {np.sign(chain[-1])}, wanted {target_signs[-1]}"
        )
    for i in range(len(target_signs) - 2, -1, -1):
        lo, hi = box[i]
        if not 0 < lo < hi:
            raise ValueError("box bounds must satisfy 0 < lo < hi")
        found = False
        next_mag = abs(chain[i + 1])
        for mag in np.geomspace(hi, lo, scan_n):
            for sign in (target_signs[i], -target_signs[i]):
                trial = eps.copy()
                trial[i] = sign * mag
                try:
                    cand = list(chain_fn(trial))
                except QhfocusError:
                    continue
                if (
                    np.sign(cand[i]) == target_signs[i]
                    and floor <= abs(cand[i]) <= next_mag / gaps[i]
                ):
                    eps, chain, found = trial, cand, True
                    break
            if found:
                break
        if not found:
            raise AlternationError(
                f"no alternation found for chain entry {i} inside the box"
            )
    return eps
