"""What the measurement record reveals about the teleported state.

Each outcome r of the standard measurement points at a best guess for the
input (the normalized leading block of the outcome vector). Feeding those
guesses into the exact estimation-fidelity formula reproduces the bound
(1 + lambda_0^2) / (d + 1); random guessing strategies stay below it, and
the two entanglement extremes recover 1/d (no information) and 2/(d+1)
(best single-copy estimation).
"""

import numpy as np

from teleportsim import (
    EstimationStrategy,
    estimation_fidelity_bound,
    estimation_fidelity_exact,
    estimation_fidelity_mc,
    make_rng,
    optimal_estimates,
    standard_measurement,
)


def main():
    rng = make_rng(23)
    d = 3
    meas = standard_measurement(d)
    strategy = optimal_estimates(meas)
    print(f"optimal guesses for the standard {d}-level measurement (outcome r = p + q*d):")
    for r in range(meas.n_outcomes):
        amp = np.round(strategy.guesses[r], 3)
        print(f"  r={r:2d} (p={r % d}, q={r // d}) -> {amp}")

    lam = np.sort(np.abs(rng.standard_normal(d)))[::-1]
    lam /= np.linalg.norm(lam)
    print(f"\nresource lambdas = {np.round(lam, 4)}")
    exact = estimation_fidelity_exact(meas, lam, strategy)
    print(f"  optimal strategy, exact : {exact:.6f}")
    print(f"  bound (1+l0^2)/(d+1)    : {estimation_fidelity_bound(lam):.6f}")

    mc = estimation_fidelity_mc(meas, lam, strategy, 100_000, rng)
    print(f"  Monte Carlo             : {mc.value:.6f} +/- {mc.std_error:.1e}")

    z = rng.standard_normal((meas.n_outcomes, d)) + 1j * rng.standard_normal((meas.n_outcomes, d))
    random_strategy = EstimationStrategy(z / np.linalg.norm(z, axis=1, keepdims=True))
    print(
        f"  random guesses, exact   : "
        f"{estimation_fidelity_exact(meas, lam, random_strategy):.6f} (below the bound)"
    )

    print("\nextremes:")
    uniform = np.full(d, 1 / np.sqrt(d))
    product = np.zeros(d)
    product[0] = 1.0
    print(f"  maximally entangled: {estimation_fidelity_bound(uniform):.6f} = 1/d")
    print(f"  product resource   : {estimation_fidelity_bound(product):.6f} = 2/(d+1)")


if __name__ == "__main__":
    main()
