"""Normalized resonant states u_p(r) and the closure/sum-rule diagnostics.

Resonant states satisfy the stationary equation with a purely outgoing
boundary condition u'(a) = i k_p u(a) and carry the non-Hermitian
normalization  integral_0^a u_p^2 dr + i u_p(a)^2 / (2 k_p) = 1
(note u^2, not |u|^2).
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateNormalizationError
from .model import DeltaShellPotential
from .poles import Pole, PoleSet

DEGENERATE_TOL = 1e-14


def normalization_coefficient(pole: Pole, pot: DeltaShellPotential) -> complex:
    """Interior amplitude A_p fixing the outgoing-state normalization.

    Closed form valid at roots of the pole equation:
        A_p^2 = 2(-i b a - 2 i k a) / (a (1 - i b a - 2 i k a)),
    taken on the principal square-root branch. Downstream observables only
    use products u_p(r) u_p(r'), which are branch independent.
    """
    b, a, k = pot.b, pot.a, pole.k
    den = a * (1 - 1j * b * a - 2j * k * a)
    if abs(den) < DEGENERATE_TOL:
        raise DegenerateNormalizationError(
            f"normalization denominator vanished at k={k} (exceptional point)")
    return cmath.sqrt(2 * (-1j * b * a - 2j * k * a) / den)


@dataclass(frozen=True)
class ResonantState:
    """One normalized resonant state: A_p sin(k_p r) inside, B_p e^{i k_p r} outside."""

    pole: Pole
    potential: DeltaShellPotential
    A: complex
    B: complex

    @classmethod
    def build(cls, pole: Pole, pot: DeltaShellPotential) -> "ResonantState":
        A = normalization_coefficient(pole, pot)
        B = A * cmath.sin(pole.k * pot.a) * cmath.exp(-1j * pole.k * pot.a)
        return cls(pole=pole, potential=pot, A=A, B=B)

    def eval(self, r):
        """u_p(r) for scalar or array r >= 0; branches agree at r = a by construction."""
        r = np.asarray(r, dtype=float)
        k, a = self.pole.k, self.potential.a
        inside = self.A * np.sin(k * r)
        outside = self.B * np.exp(1j * k * r)
        out = np.where(r <= a, inside, outside)
        return out if out.ndim else complex(out)

    __call__ = eval

    def normalization_residual(self) -> complex:
        """Defect of the outgoing-normalization condition, from the closed-form sin^2 integral."""
        k, a = self.pole.k, self.potential.a
        interior = a / 2 - cmath.sin(2 * k * a) / (4 * k)
        surface = 1j * cmath.sin(k * a) ** 2 / (2 * k)
        return self.A * self.A * (interior + surface) - 1.0


class ResonantBasis:
    """The two pole families as normalized states, addressable by signed index."""

    def __init__(self, pole_set: PoleSet):
        self.pole_set = pole_set
        self.potential = pole_set.potential
        self.proper = tuple(ResonantState.build(p, pole_set.potential)
                            for p in pole_set.proper)
        self.improper = tuple(ResonantState.build(p, pole_set.potential)
                              for p in pole_set.improper)

    def state(self, p: int) -> ResonantState:
        if p > 0:
            return self.proper[p - 1]
        if p < 0:
            return self.improper[-p - 1]
        raise ValueError("state index 0 is reserved")

    def pairs(self, N: int):
        """Yield (improper_state, proper_state) for p = 1..N (fixed summation order)."""
        if N > min(len(self.proper), len(self.improper)):
            raise ValueError(f"basis holds {len(self.proper)}+{len(self.improper)} states, "
                             f"asked for N={N}")
        for i in range(N):
            yield self.improper[i], self.proper[i]

    @property
    def n_pairs(self) -> int:
        return min(len(self.proper), len(self.improper))


def build_basis(pole_set: PoleSet) -> ResonantBasis:
    return ResonantBasis(pole_set)


def sum_rule_defect(basis: ResonantBasis, r: float, rp: float, order: int, N: int) -> complex:
    """Partial sum over p = -N..N (p != 0) of u_p(r) u_p(r') k_p^order.

    order -1 and +1 have exact limit 0; order 0 has distributional limit
    2 delta(r - r'). Raw symmetric partial sums converge slowly for order -1
    and only in the distributional (damped) sense for orders 0 and +1; see
    gaussian_damped_sum_rule for the regularized version.
    """
    if order not in (-1, 0, 1):
        raise ValueError(f"order must be -1, 0 or +1, got {order}")
    a = basis.potential.a
    if r > a or rp > a:
        raise ValueError("sum rules hold only inside the interaction region")
    if r == a and rp == a:
        raise ValueError("expansion is invalid at r = r' = a")
    total = 0j
    for st_m, st_p in basis.pairs(N):
        total += st_m(r) * st_m(rp) * st_m.pole.k ** order
        total += st_p(r) * st_p(rp) * st_p.pole.k ** order
    return total


def gaussian_damped_sum_rule(basis: ResonantBasis, r: float, rp: float, order: int,
                             N: int, eps: float) -> complex:
    """Sum rule with weight exp(-eps k_p^2), the damping the contour rotation supplies."""
    total = 0j
    for st_m, st_p in basis.pairs(N):
        for st in (st_m, st_p):
            k = st.pole.k
            total += st(r) * st(rp) * k ** order * cmath.exp(-eps * k * k)
    return total


def green_expansion(basis: ResonantBasis, r: float, rp: float, k: complex, N: int) -> complex:
    """Truncated pole expansion of the outgoing Green's function:
    sum over p = -N..N of u_p(r) u_p(r') / (2 k_p (k - k_p)).
    """
    total = 0j
    for st_m, st_p in basis.pairs(N):
        for st in (st_m, st_p):
            kp = st.pole.k
            total += st(r) * st(rp) / (2 * kp * (k - kp))
    return total
