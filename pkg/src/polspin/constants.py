"""Physical constants used throughout the simulator.

Every module pulls these from here and nowhere else.  The values are pinned
decimal literals rather than library lookups so that all derived numbers are
bit-reproducible across platforms and dependency versions.
"""

MU_B_EV_PER_T = 5.7883818e-5   # Bohr magneton (eV/T)
HC_EV_NM = 1239.84198          # Planck constant times c (eV nm)
HBAR_EV_PS = 6.58211957e-4     # reduced Planck constant (eV ps)

# Gaussian FWHM -> standard deviation, 1 / (2 sqrt(2 ln 2)).
FWHM_TO_SIGMA = 0.42466090014400953
