"""Physical constants and unit conventions.

Repo-wide convention: hbar = 1, energies and frequencies in eV, lengths in
nm.  Vacuum wavenumbers follow k = omega / HBAR_C_EV_NM.
"""

HBAR_C_EV_NM = 197.3269804  # hbar*c in eV*nm (CODATA)
