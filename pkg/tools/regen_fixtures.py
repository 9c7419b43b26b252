#!/usr/bin/env python3
"""Regenerate the shipped data fixtures from the enumeration engine.

Never edit the files under fixtures/ by hand; rerun this script instead.
The test suite regenerates everything in memory and byte-compares.
"""

import json
import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from mfclib.catalog import double_cyclic, from_id, pointed_cyclic, su2
from mfclib.characters import calibrate_trivial_context
from mfclib.invariants import ZMatrix, enumerate_invariants
from mfclib.modular_data import derived
from mfclib.serialize import encode

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def ade_label(k: int, z: ZMatrix) -> str:
    tr = int(np.trace(z.entries))
    if np.array_equal(z.entries, np.eye(k + 1, dtype=np.int64)):
        return f"a{k + 1}"
    if k % 2 == 0 and tr == k // 2 + 2:
        return f"d{tr}"
    return f"e{tr}"


def conj_zmatrix(md) -> ZMatrix:
    perm = derived(md).conj_perm
    c = np.zeros((md.rank, md.rank), dtype=np.int64)
    for i, j in enumerate(perm):
        c[i, j] = 1
    return ZMatrix(c)


def generate() -> dict:
    files = {}
    for k in (4, 10, 16, 28):
        md = su2(k)
        for z in enumerate_invariants(md):
            files[f"su2_{k}_{ade_label(k, z)}.mfc"] = encode(z)
    for md in (pointed_cyclic(5, 2), double_cyclic(3)):
        files[f"{md.name}_conjugation.mfc"] = encode(conj_zmatrix(md))
    outcomes = {name: calibrate_trivial_context(from_id(name))
                for name in ("ising", "fibonacci")}
    files["calibration_trivial.json"] = json.dumps(
        outcomes, sort_keys=True, indent=1) + "\n"
    return files


def main():
    os.makedirs(FIXTURE_DIR, exist_ok=True)
    files = generate()
    for name, text in sorted(files.items()):
        path = os.path.join(FIXTURE_DIR, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {name}")


if __name__ == "__main__":
    main()
