"""Self-verification suite: structural identities the formalism guarantees.

Every check here is intensity-independent (valid for any b > 0). Checks that
need a deep truncation or a narrow-resonance regime report "inconclusive"
instead of failing when run outside their domain.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .basis import green_expansion, sum_rule_defect
from .expansion import build_expansion, closure_sum, lifetime, survival_amplitude
from .model import DeltaShellPotential, SineInitialState, box_state
from .oracle import (DEFAULT_QUAD, green_function, jost_function, residue_at_pole,
                     survival_amplitude_exact)
from .poles import pole_equation_residual


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "inconclusive"
    value: float
    threshold: float
    note: str = ""

    def as_dict(self):
        return {"name": self.name, "status": self.status, "value": self.value,
                "threshold": self.threshold, "note": self.note}


def _gate(name, value, threshold, note="") -> CheckResult:
    status = "pass" if value < threshold else "fail"
    return CheckResult(name, status, float(value), float(threshold), note)


def run_verification(pot: DeltaShellPotential, init: SineInitialState | None = None,
                     n: int = 40) -> list[CheckResult]:
    if init is None:
        init = box_state(1, pot.a)
    ctx = build_expansion(pot, init, n)
    poles = list(ctx.pole_set)
    results = []

    results.append(_gate(
        "pole_equation_residual",
        max(abs(pole_equation_residual(p.k, pot)) for p in poles), 1e-10))

    results.append(_gate(
        "jost_zero_equivalence",
        max(abs(jost_function(p.k, pot)) for p in poles), 1e-10))

    near_real = [abs(st.normalization_residual())
                 for fam in (ctx.basis.proper, ctx.basis.improper) for st in fam
                 if abs(st.pole.k.imag) <= 1e-3]
    generic = [abs(st.normalization_residual())
               for fam in (ctx.basis.proper, ctx.basis.improper) for st in fam
               if abs(st.pole.k.imag) > 1e-3]
    results.append(_gate("state_normalization", max(generic), 1e-10))
    if near_real:
        results.append(_gate("state_normalization_near_real", max(near_real), 1e-8,
                             note="looser tolerance for nearly real poles"))

    a = pot.a
    cont = max(abs(st.A * cmath.sin(st.pole.k * a)
                   - st.B * cmath.exp(1j * st.pole.k * a))
               for st in ctx.basis.proper + ctx.basis.improper)
    results.append(_gate("state_continuity_at_shell", cont, 1e-12))

    jump = 0.0
    for st in ctx.basis.proper + ctx.basis.improper:
        k = st.pole.k
        inner = st.A * k * cmath.cos(k * a)
        outer = 1j * k * st.B * cmath.exp(1j * k * a)
        jump = max(jump, abs(outer - inner + 1j * pot.b * st.A * cmath.sin(k * a)))
    results.append(_gate("derivative_jump_at_shell", jump, 1e-9))

    probes_k = [0.7 + 0.2j, 2.0 + 0j, -1.3 + 0.8j, 3.7 - 0.4j, 0.15 + 0j]
    rgrid = np.linspace(0.1 * a, 0.9 * a, 5)
    sym = max(abs(green_function(r, rp, k, pot) - green_function(rp, r, k, pot))
              for k in probes_k for r in rgrid for rp in rgrid)
    results.append(_gate("green_symmetry", sym, 1e-12))

    origin = max(abs(green_function(0.0, rp, k, pot))
                 for k in probes_k for rp in rgrid)
    results.append(_gate("green_regular_at_origin", origin, 1e-14))

    h = 1e-6 * a
    bc = 0.0
    for k in probes_k[:3]:
        g0 = green_function(a, 0.5 * a, k, pot)
        g1 = green_function(a + h, 0.5 * a, k, pot)
        deriv = (g1 - g0) / h
        bc = max(bc, abs(deriv - 1j * k * g0) / max(1.0, abs(g0)))
    results.append(_gate("green_outgoing_at_shell", bc, 1e-4,
                         note="one-sided finite difference, O(h) accurate"))

    res_dev = 0.0
    for p in range(1, min(5, ctx.pole_set.n_proper) + 1):
        st = ctx.basis.state(p)
        num = residue_at_pole(st.pole.k, 0.3 * a, 0.6 * a, pot)
        res_dev = max(res_dev, abs(num - st(0.3 * a) * st(0.6 * a) / (2 * st.pole.k)))
    results.append(_gate("green_residue_identity", res_dev, 1e-8))

    if n >= 40:
        k_probe = 2.0 / a
        exact = green_function(0.3 * a, 0.6 * a, k_probe, pot)
        approx = green_expansion(ctx.basis, 0.3 * a, 0.6 * a, k_probe, 40)
        results.append(_gate("green_pole_expansion", abs(approx - exact) / abs(exact), 1e-3))
    else:
        results.append(CheckResult("green_pole_expansion", "inconclusive", math.nan, 1e-3,
                                   note=f"needs n >= 40 pole pairs, have {n}"))

    if n >= 20:
        d10 = abs(sum_rule_defect(ctx.basis, 0.5 * a, 0.5 * a, -1, 10))
        dn = abs(sum_rule_defect(ctx.basis, 0.5 * a, 0.5 * a, -1, n))
        status = "pass" if dn <= d10 else "fail"
        results.append(CheckResult("sum_rule_inverse_k_trend", status, dn, d10,
                                   note="partial sums must not grow past N=10"))
    else:
        results.append(CheckResult("sum_rule_inverse_k_trend", "inconclusive", math.nan,
                                   math.nan, note=f"needs n >= 20 pole pairs, have {n}"))

    psi_a = init.amplitude(init.a)
    closure_limit = 1 + 0.5j * psi_a ** 2 / pot.b
    defect_n = abs(closure_sum(ctx.overlaps, n) - closure_limit)
    defect_10 = abs(closure_sum(ctx.overlaps, min(10, n)) - closure_limit)
    status = "pass" if (defect_n < 0.05 and defect_n <= defect_10 + 0.01) else "fail"
    results.append(CheckResult("closure_sum", status, defect_n, 0.05,
                               note="limit includes the boundary term i psi(a)^2/(2b)"))

    tau = lifetime(ctx.pole_set)
    r1 = ctx.pole_set.by_index(1).resonance_position / ctx.pole_set.by_index(1).width
    t_check = max(3 * tau, 1.2 * DEFAULT_QUAD.t_min)
    if r1 > 3:
        a_exp, _, _ = survival_amplitude(ctx.overlaps, ctx.pole_set, t_check, min(n, 40))
        a_or = survival_amplitude_exact(pot, init, t_check, min(n, 40))
        rel = abs(abs(a_or) ** 2 - abs(a_exp) ** 2) / abs(a_or) ** 2
        results.append(_gate("oracle_expansion_agreement", rel, 0.05,
                             note=f"survival probability at t = {t_check:.3g}"))
    else:
        results.append(CheckResult(
            "oracle_expansion_agreement", "inconclusive", math.nan, 0.05,
            note=f"broad-resonance regime (R1 = {r1:.2f} <= 3); expansion not "
                 "expected to be quantitative"))

    return results
