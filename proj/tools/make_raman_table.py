#!/usr/bin/env python3
"""Generate the spontaneous Raman coefficient table shipped in data/.

Stokes side (positive detuning, pump above probe) follows a multi-mode
Gaussian fit of the silica Raman response, normalized so its maximum equals
--peak. The anti-Stokes side is the Stokes value scaled by the Boltzmann
factor exp(-h|d|/kT).

Output: one "detuning_ghz rho" pair per line, rho in 1/(km*GHz).
"""
import argparse
import math

# (center cm^-1, relative amplitude, Gaussian FWHM cm^-1), silica vibrational modes
MODES = [
    (56.25, 1.00, 52.10), (100.00, 11.40, 110.42), (231.25, 36.67, 175.00),
    (362.50, 67.67, 162.50), (463.00, 74.00, 135.33), (497.00, 4.50, 24.50),
    (611.50, 6.80, 41.50), (691.67, 4.60, 155.00), (793.67, 4.20, 59.50),
    (835.50, 4.50, 64.30), (930.00, 2.70, 150.00), (1080.00, 3.10, 91.00),
    (1215.00, 3.00, 160.00),
]
GHZ_PER_WAVENUMBER = 29.9792458
PLANCK = 6.62607015e-34
BOLTZMANN = 1.380649e-23


def gain_shape(detuning_ghz):
    d = abs(detuning_ghz)
    total = 0.0
    for center, amp, fwhm in MODES:
        w = center * GHZ_PER_WAVENUMBER
        sigma = fwhm * GHZ_PER_WAVENUMBER / (2.0 * math.sqrt(2.0 * math.log(2.0)))
        total += amp * (math.exp(-(d - w) ** 2 / (2 * sigma ** 2))
                        - math.exp(-(d + w) ** 2 / (2 * sigma ** 2)))
    return max(total, 0.0)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--peak", type=float, default=1.0e-10, help="peak rho, 1/(km*GHz)")
    ap.add_argument("--temperature-k", type=float, default=300.0)
    ap.add_argument("--span-ghz", type=float, default=18000.0)
    ap.add_argument("--step-ghz", type=float, default=50.0)
    args = ap.parse_args()

    n = int(round(args.span_ghz / args.step_ghz))
    grid = [k * args.step_ghz for k in range(-n, n + 1)]
    fine = [k * 5.0 for k in range(0, int(args.span_ghz / 5.0) + 1)]
    norm = max(gain_shape(d) for d in fine)

    print("# qaplan raman table v1")
    print("# silica spontaneous Raman coefficient, T = %.1f K, peak %.3e 1/(km*GHz)"
          % (args.temperature_k, args.peak))
    print("# columns: detuning_ghz (pump - probe) rho_per_km_per_ghz")
    for d in grid:
        rho = args.peak * gain_shape(d) / norm
        if d < 0:
            rho *= math.exp(-PLANCK * abs(d) * 1e9 / (BOLTZMANN * args.temperature_k))
        print("%.1f %.9e" % (d, rho))


if __name__ == "__main__":
    main()
