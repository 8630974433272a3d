"""Locate and classify the complex-k poles of the outgoing Green's function.

The poles are the roots of 2k - b (exp(2ika) - 1) = 0 away from the removable
zero at k = 0. The solver certifies completeness with winding-number counts
(argument principle) over rectangles, bisecting until each rectangle isolates
a single root, then polishes with damped Newton iteration.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import BoundaryRootError, CompletenessError, SolverError
from .model import DeltaShellPotential

NEWTON_TOL = 1e-13
ACCEPT_TOL = 1e-12
DUPLICATE_TOL = 1e-8
REAL_AXIS_TOL = 1e-9
JITTER = 1e-6
MAX_JITTER_RETRIES = 8
# deterministic jitter directions, scaled by JITTER * rectangle diagonal
_JITTER_SEQ = [1 + 1j, -1 + 2j, 2 - 1j, -2 - 2j, 1 - 3j, -3 + 1j, 3 + 2j, -1 - 1j]


class Quadrant(Enum):
    SECOND = "second"
    THIRD = "third"
    FOURTH = "fourth"
    REAL_AXIS = "real_axis"


def pole_equation_residual(k: complex, pot: DeltaShellPotential) -> complex:
    """2k - b (exp(2ika) - 1); zero exactly at the poles (k = 0 excluded)."""
    if k == 0:
        raise ValueError("k = 0 is a removable zero of the pole equation, not a pole")
    return 2 * k - pot.b * (cmath.exp(2j * k * pot.a) - 1)


def pole_equation_derivative(k: complex, pot: DeltaShellPotential) -> complex:
    return 2 - 2j * pot.a * pot.b * cmath.exp(2j * k * pot.a)


def _reduced_residual(k: complex, pot: DeltaShellPotential) -> complex:
    """residual(k)/k, analytically continued through k = 0.

    Dividing out the spurious root at the origin lets rectangle boundaries
    pass through or near k = 0; the value there is 2(1 - i b a) != 0.
    """
    b, a = pot.b, pot.a
    if abs(k) * a < 1e-8:
        x = 2j * a
        return 2 - b * (x + x * x * k / 2 + x * x * x * k * k / 6)
    return (2 * k - b * (cmath.exp(2j * k * a) - 1)) / k


def residual_noise_floor(k: complex, pot: DeltaShellPotential) -> float:
    """Double-precision evaluation noise of the pole-equation residual at k.

    Dominated by argument reduction in exp(2ika): the phase 2|k|a is known
    only to machine epsilon relative, so the exponential term's absolute
    error grows linearly with |k|. Root positions remain accurate to
    ~noise/|f'|, a few ulps.
    """
    mag = abs(pot.b) * (1.0 + abs(cmath.exp(2j * k * pot.a)))
    return 2.3e-16 * (abs(2 * k) + mag * (2 * abs(k) * pot.a + 2.0))


def newton_polish(seed: complex, pot: DeltaShellPotential, tol: float = NEWTON_TOL,
                  max_iter: int = 100) -> complex:
    """Damped Newton iteration on the pole equation."""
    k = seed
    for _ in range(max_iter):
        try:
            f = pole_equation_residual(k, pot)
        except OverflowError:
            raise SolverError(f"residual overflow at {k}", seed=seed) from None
        if abs(f) < max(tol, 4 * residual_noise_floor(k, pot)):
            return k
        fp = pole_equation_derivative(k, pot)
        if fp == 0:
            raise SolverError("vanishing derivative during Newton iteration", seed=seed)
        step = f / fp
        lam = 1.0
        improved = False
        for _ in range(60):
            k_next = k - lam * step
            try:
                trial = abs(pole_equation_residual(k_next, pot))
            except OverflowError:
                trial = math.inf
            if trial < abs(f):
                improved = True
                break
            lam /= 2
        if not improved:
            break  # at the floating-point noise floor; accept below if good enough
        k = k_next
    if abs(pole_equation_residual(k, pot)) < max(ACCEPT_TOL,
                                                 8 * residual_noise_floor(k, pot)):
        return k
    raise SolverError(f"Newton did not converge from seed {seed}", seed=seed)


def _boundary_winding(x0, x1, y0, y1, pot, max_depth=48):
    """Winding number of the reduced residual around a rectangle boundary.

    Edges are presampled densely enough to avoid phase aliasing (the residual
    rotates at most ~2a radians per unit arclength away from roots), then
    refined adaptively until adjacent samples differ by < 0.8 rad.
    Raises BoundaryRootError if a sample lands on a near-zero of the residual.
    """
    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1),
               complex(x0, y1), complex(x0, y0)]
    scale = max(1.0, abs(pot.b))
    total = 0.0
    for c0, c1 in zip(corners[:-1], corners[1:]):
        length = abs(c1 - c0)
        n = max(8, int(length * 2 * pot.a / 0.5) + 1)
        samples = [c0 + (c1 - c0) * j / n for j in range(n + 1)]
        values = [_reduced_residual(z, pot) for z in samples]
        for j in range(n):
            stack = [(samples[j], samples[j + 1], values[j], values[j + 1], 0)]
            while stack:
                z0, z1, f0, f1, depth = stack.pop()
                if abs(f0) < 1e-12 * scale or abs(f1) < 1e-12 * scale:
                    raise BoundaryRootError("rectangle boundary passes through a root")
                dphi = cmath.phase(f1 / f0)
                if abs(dphi) < 0.8 or depth >= max_depth:
                    total += dphi
                else:
                    zm = (z0 + z1) / 2
                    fm = _reduced_residual(zm, pot)
                    stack.append((z0, zm, f0, fm, depth + 1))
                    stack.append((zm, z1, fm, f1, depth + 1))
    w = total / (2 * math.pi)
    if abs(w - round(w)) > 0.15:
        raise BoundaryRootError(f"winding number did not close to an integer: {w}")
    return round(w)


def count_roots_in_rectangle(rect, pot: DeltaShellPotential) -> int:
    """Number of pole-equation roots strictly inside rect = (re_lo, re_hi, im_lo, im_hi).

    The spurious zero at the origin is never counted. If the boundary passes
    within ~1e-12 of a root the rectangle is retried with a deterministic
    jitter of relative size 1e-6; retries exhausted raise BoundaryRootError.
    """
    x0, x1, y0, y1 = rect
    if not (x1 > x0 and y1 > y0):
        raise ValueError(f"degenerate rectangle {rect}")
    diag = math.hypot(x1 - x0, y1 - y0)
    last_error = None
    for attempt in range(MAX_JITTER_RETRIES + 1):
        if attempt == 0:
            dx = dy = 0.0
        else:
            j = _JITTER_SEQ[(attempt - 1) % len(_JITTER_SEQ)] * JITTER * diag
            dx, dy = j.real, j.imag
        try:
            return _boundary_winding(x0 + dx, x1 + dx, y0 + dy, y1 + dy, pot)
        except BoundaryRootError as exc:
            last_error = exc
    raise BoundaryRootError(
        f"boundary jitter retries exhausted for rectangle {rect}") from last_error


@dataclass(frozen=True)
class Pole:
    """A single pole k = alpha - i beta with a signed family index.

    Positive indices are fourth-quadrant (proper) poles, negative indices the
    second/third-quadrant family. Serialized tables list (Re k, Im k) per
    pole; the beta used in the width formulas is -Im k.
    """

    index: int
    k: complex

    def __post_init__(self):
        if self.index == 0:
            raise ValueError("pole index 0 is reserved")

    @property
    def alpha(self) -> float:
        return self.k.real

    @property
    def beta(self) -> float:
        return -self.k.imag

    @property
    def energy(self) -> complex:
        return self.k * self.k

    @property
    def resonance_position(self) -> float:
        return self.alpha ** 2 - self.beta ** 2

    @property
    def width(self) -> float:
        return 4.0 * self.alpha * self.beta

    @property
    def quadrant(self) -> Quadrant:
        if abs(self.k.imag) <= REAL_AXIS_TOL:
            return Quadrant.REAL_AXIS
        if self.k.real > 0 and self.k.imag < 0:
            return Quadrant.FOURTH
        if self.k.real < 0 and self.k.imag > 0:
            return Quadrant.SECOND
        if self.k.real < 0 and self.k.imag < 0:
            return Quadrant.THIRD
        raise ValueError(f"pole {self.k} sits in the causality-excluded first quadrant")


def resonance_parameters(pole: Pole) -> tuple[float, float]:
    """(resonance position, decay width) = (alpha^2 - beta^2, 4 alpha beta).

    Defined for proper (index > 0) poles only.
    """
    if pole.index <= 0:
        raise ValueError("resonance parameters are defined for proper poles only")
    return pole.resonance_position, pole.width


@dataclass(frozen=True)
class PoleSet:
    potential: DeltaShellPotential
    proper: tuple
    improper: tuple

    def __iter__(self):
        return iter(self.proper + self.improper)

    def by_index(self, p: int) -> Pole:
        if p > 0:
            return self.proper[p - 1]
        if p < 0:
            return self.improper[-p - 1]
        raise ValueError("pole index 0 is reserved")

    @property
    def n_proper(self) -> int:
        return len(self.proper)

    @property
    def n_improper(self) -> int:
        return len(self.improper)


def _subdivide_roots(rect, pot, expected, min_size=1e-10):
    """Recursively bisect rect until each piece isolates one root; Newton polish."""
    roots = []
    stack = [(rect, expected)]
    while stack:
        (x0, x1, y0, y1), count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            seed = complex((x0 + x1) / 2, (y0 + y1) / 2)
            try:
                k = newton_polish(seed, pot)
            except SolverError:
                k = None
            margin = 1e-9
            if k is not None and x0 - margin <= k.real <= x1 + margin and \
                    y0 - margin <= k.imag <= y1 + margin and \
                    abs(_reduced_residual(k, pot)) < 1e-6:
                # the reduced-residual gate rejects the spurious zero of the
                # raw pole equation at the origin (not a pole of G+)
                roots.append(k)
                continue
            # Newton escaped the box or hit the origin; bisect toward the root.
        if max(x1 - x0, y1 - y0) < min_size:
            raise SolverError(f"rectangle underflow at {(x0, x1, y0, y1)} holding {count} roots")
        if x1 - x0 >= y1 - y0:
            xm = (x0 + x1) / 2
            left = (x0, xm, y0, y1)
            right = (xm, x1, y0, y1)
        else:
            ym = (y0 + y1) / 2
            left = (x0, x1, y0, ym)
            right = (x0, x1, ym, y1)
        c_left = count_roots_in_rectangle(left, pot)
        c_right = count_roots_in_rectangle(right, pot)
        if c_left + c_right != count:
            raise CompletenessError(
                f"winding counts changed under subdivision: {count} -> {c_left}+{c_right}")
        stack.append((left, c_left))
        stack.append((right, c_right))
    return roots


def _dedupe(roots):
    out = []
    for k in sorted(roots, key=lambda z: (z.real, z.imag)):
        if not any(abs(k - q) < DUPLICATE_TOL for q in out):
            out.append(k)
    return out


def find_poles(pot: DeltaShellPotential, n_proper: int, n_improper: int,
               beta_margin: float = 5.0) -> PoleSet:
    """First n_proper fourth-quadrant and n_improper left-half-plane poles.

    Search regions: [0, (n_proper+1) pi/a] x [-beta_margin/a, 0] and
    [-(n_improper+1) pi/a, 0] x [-beta_margin/a, +beta_margin/a]. Completeness
    inside each region is certified by the argument principle before returning
    the first n poles of each family (sorted by |Re k|).
    """
    if n_proper < 1 or n_improper < 1:
        raise ValueError("need at least one pole per family")
    a = pot.a
    regions = {
        "proper": (0.0, (n_proper + 1) * math.pi / a, -beta_margin / a, 0.0),
        "improper": (-(n_improper + 1) * math.pi / a, 0.0, -beta_margin / a, beta_margin / a),
    }
    found = {}
    for name, rect in regions.items():
        expected = count_roots_in_rectangle(rect, pot)
        roots = _dedupe(_subdivide_roots(rect, pot, expected))
        if len(roots) != expected:
            raise CompletenessError(
                f"{name} region: winding count {expected} but {len(roots)} roots polished")
        bad = [k for k in roots
               if abs(pole_equation_residual(k, pot)) >
               max(ACCEPT_TOL, 8 * residual_noise_floor(k, pot))]
        if bad:
            raise SolverError(f"{name} region: unconverged roots {bad}")
        found[name] = roots

    fourth = sorted((k for k in found["proper"] if k.real > 0 and k.imag < -REAL_AXIS_TOL),
                    key=lambda z: z.real)
    left = sorted((k for k in found["improper"] if k.real < 0), key=lambda z: -z.real)
    if len(fourth) < n_proper or len(left) < n_improper:
        raise CompletenessError(
            f"requested {n_proper}+{n_improper} poles, region held {len(fourth)}+{len(left)}")
    for k in found["proper"] + found["improper"]:
        if k.real > REAL_AXIS_TOL and k.imag > REAL_AXIS_TOL:
            raise CompletenessError(f"causality violation: first-quadrant root {k}")
        if abs(k.real) <= 1e-6 and abs(k.imag) > REAL_AXIS_TOL:
            raise CompletenessError(f"unexpected imaginary-axis root {k}")
    proper = tuple(Pole(index=i + 1, k=k) for i, k in enumerate(fourth[:n_proper]))
    improper = tuple(Pole(index=-(i + 1), k=k) for i, k in enumerate(left[:n_improper]))
    return PoleSet(potential=pot, proper=proper, improper=improper)
