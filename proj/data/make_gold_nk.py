#!/usr/bin/env python3
"""Regenerate au_optical_nk.csv from the refractiveindex.info database.

The table is stitched from three published measurements of gold:
  0.124 - 1.2 eV   Ordal et al., Appl. Opt. 26, 744 (1987)
  1.2   - 6.0 eV   Johnson & Christy, Phys. Rev. B 6, 4370 (1972)
  6.0 eV and up    Hagemann, Gudat & Kunz, JOSA 65, 742 (1975)

Points below 0.124 eV are dropped; the library extends the data there with
the Drude form.  Requires `pip install refidx`.
"""
import os
import sys

import numpy as np
import refidx

HC_EV_UM = 1.239842  # photon energy [eV] times wavelength [um]

SEGMENTS = [("Ordal", 0.1239, 1.2), ("Johnson", 1.2, 6.0), ("Hagemann", 6.0, None)]


def load(name):
    db = refidx.DataBase()
    mat = db.materials["main"]["Au"][name]
    lam = np.asarray(mat.data["DATA"]["wavelengths"], dtype=float)
    idx = np.asarray(mat.data["DATA"]["index"], dtype=complex)
    energy = HC_EV_UM / lam
    order = np.argsort(energy)
    return energy[order], idx.real[order], idx.imag[order]


def main(path):
    rows = []
    for name, lo, hi in SEGMENTS:
        e, n, k = load(name)
        keep = e >= lo - 1e-9
        if hi is not None:
            keep &= e < hi
        rows.extend(zip(e[keep], n[keep], k[keep]))
    rows.sort()
    with open(path, "w") as out:
        out.write("# Gold complex refractive index n + ik versus photon energy.\n")
        out.write("# Sources: Ordal 1987 (0.124-1.2 eV), Johnson & Christy 1972\n")
        out.write("# (1.2-6 eV), Hagemann 1975 (6 eV and above), taken from the\n")
        out.write("# refractiveindex.info database (CC0). Regenerate with make_gold_nk.py.\n")
        out.write("# units: eV\n")
        out.write("# energy_eV, n, k\n")
        for e, n, k in rows:
            out.write(f"{e:.6g}, {n:.6g}, {k:.6g}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else
         os.path.join(os.path.dirname(__file__), "au_optical_nk.csv"))
