"""Monte-Carlo verification of the Haar moment operators.

Every exact fidelity formula in this package rests on the closed form

    M(k, l) = avg over pure psi of <psi|k><l|psi> |psi><psi|
            = (delta_kl I + |k><l|) / (d (d + 1)).

Here we rebuild these operators by brute-force averaging over Haar samples
and compare entry by entry, in units of the Monte-Carlo standard error.
"""

import numpy as np

from teleportsim import m_kl_exact, m_kl_monte_carlo, make_rng


def main():
    n = 200_000
    rng_seed = 12
    for d in (2, 3):
        print(f"d = {d}, {n} samples per operator")
        worst = 0.0
        for k in range(d):
            for l in range(d):
                est = m_kl_monte_carlo(d, k, l, n, make_rng(rng_seed, stream=k * d + l))
                exact = m_kl_exact(d, k, l).matrix
                z = np.abs(np.asarray(est.value) - exact) / np.asarray(est.std_error)
                worst = max(worst, float(z.max()))
                print(f"  M({k},{l}): max entrywise deviation = {z.max():5.2f} sigma")
        print(f"  worst over all operators: {worst:.2f} sigma (4-sigma band)\n")

    print("sample values for d=2, M(0,0): diagonal should be (1/3, 1/6)")
    est = m_kl_monte_carlo(2, 0, 0, n, make_rng(1))
    print(np.round(np.asarray(est.value).real, 5))


if __name__ == "__main__":
    main()
