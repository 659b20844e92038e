"""Cross-engine verification: every closed form replayed against its
independent numeric route on seeded random parameter draws.

The draw stream is the SplitMix64 contract from `rng`; per sample, four
uniforms are consumed in a documented order so reports are reproducible
bit-for-bit across runs (and across reimplementations that honor the same
generator).
"""

from __future__ import annotations

import numpy as np

from .coding import (
    capacity_closed_form,
    capacity_numeric,
    ensemble_average,
    ensemble_average_via_marginal,
)
from .rng import SplitMix64
from .thermal import (
    GravcatParams,
    assemble_thermal_state,
    build_hamiltonian,
    gibbs_numeric,
    thermal_closed_form,
)
from .version import TOOL_NAME, __version__
from .weak_measurement import apply_qwm, capacity_wm_closed_form, wm_state_closed_form

# check name -> deviation threshold; report order is fixed
CHECKS: tuple[tuple[str, float], ...] = (
    ("thermal_state_closed_vs_numeric", 1e-10),
    ("capacity_closed_vs_numeric", 1e-9),
    ("wm_state_closed_vs_kraus", 1e-12),
    ("wm_capacity_closed_vs_numeric", 1e-9),
    ("twirl_vs_marginal_identity", 1e-12),
)

# documented draw mapping; four uniforms u1..u4 per sample, in this order
OMEGA_SPAN = 5.0       # omega = 5 (1 - u1), in (0, 5]
GAMMA_SPAN = 5.0       # gamma = 5 u2, in [0, 5)
T_LO, T_HI = 0.05, 10.0  # T = 0.05 + 9.95 u3
P_HI = 0.99            # p = 0.99 u4


def draw_sample(rng: SplitMix64) -> tuple[GravcatParams, float]:
    """One parameter tuple from the contractual draw order."""
    omega = OMEGA_SPAN * (1.0 - rng.next_float())
    gamma = GAMMA_SPAN * rng.next_float()
    temperature = rng.uniform(T_LO, T_HI)
    strength = P_HI * rng.next_float()
    return GravcatParams(omega=omega, gamma=gamma, temperature=temperature), strength


def _max_abs(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a - b).max())


def verification_report(samples: int, seed: int) -> dict:
    """Max deviation per dual-route check over `samples` seeded draws."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = SplitMix64(seed)
    worst = {name: 0.0 for name, _ in CHECKS}
    for _ in range(samples):
        params, strength = draw_sample(rng)
        cf = thermal_closed_form(params)
        rho_cf = assemble_thermal_state(cf)
        rho_num = gibbs_numeric(build_hamiltonian(params), params.temperature)
        worst["thermal_state_closed_vs_numeric"] = max(
            worst["thermal_state_closed_vs_numeric"], _max_abs(rho_cf.matrix, rho_num.matrix)
        )

        worst["capacity_closed_vs_numeric"] = max(
            worst["capacity_closed_vs_numeric"],
            abs(capacity_closed_form(params).chi - capacity_numeric(rho_num).chi),
        )

        wm_cf = wm_state_closed_form(cf, strength)
        wm_kraus = apply_qwm(rho_cf, strength)
        worst["wm_state_closed_vs_kraus"] = max(
            worst["wm_state_closed_vs_kraus"],
            _max_abs(wm_cf.state.matrix, wm_kraus.state.matrix),
            abs(wm_cf.success_probability - wm_kraus.success_probability),
        )

        wm_numeric_state = apply_qwm(rho_num, strength).state
        worst["wm_capacity_closed_vs_numeric"] = max(
            worst["wm_capacity_closed_vs_numeric"],
            abs(
                capacity_wm_closed_form(params, strength).chi
                - capacity_numeric(wm_numeric_state).chi
            ),
        )

        for rho in (rho_num, wm_numeric_state):
            worst["twirl_vs_marginal_identity"] = max(
                worst["twirl_vs_marginal_identity"],
                _max_abs(
                    ensemble_average(rho).matrix, ensemble_average_via_marginal(rho).matrix
                ),
            )

    checks = {
        name: {
            "max_deviation": worst[name],
            "threshold": threshold,
            "passed": worst[name] < threshold,
        }
        for name, threshold in CHECKS
    }
    return {
        "schema_version": 1,
        "tool": TOOL_NAME,
        "version": __version__,
        "generator": "splitmix64",
        "samples": samples,
        "seed": seed,
        "checks": checks,
        "all_passed": all(entry["passed"] for entry in checks.values()),
    }
