"""Smoke test for the superray extension module.

Build first:

    cargo build -p superray-py --features extension-module

The script copies the built library next to a temporary directory as
``superray.so`` unless ``superray`` is already importable.
"""

import glob
import importlib
import math
import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    try:
        return importlib.import_module("superray")
    except ImportError:
        pass
    candidates = glob.glob(os.path.join(ROOT, "target", "*", "libsuperray_py.so"))
    candidates += glob.glob(os.path.join(ROOT, "target", "*", "libsuperray_py.dylib"))
    if not candidates:
        sys.exit("superray extension not built; run cargo build -p superray-py --features extension-module")
    lib = max(candidates, key=os.path.getmtime)
    tmp = tempfile.mkdtemp()
    shutil.copy(lib, os.path.join(tmp, "superray.so"))
    sys.path.insert(0, tmp)
    return importlib.import_module("superray")


def main():
    sr = load()

    assert abs(sr.emitted_energy_estimate(1e20) - 0.3713) < 1e-3
    assert abs(sr.omega_to_ev(sr.ev_to_omega(6.5)) - 6.5) < 1e-12

    pair = sr.WeakShockPair(a=1.0, delta=1e-3)
    e1, e2 = pair.epsilons(1.001)
    assert abs(e1 - 0.004) < 1e-15 and abs(e2 - 0.002) < 1e-15

    at_rest = sr.Interface.weak_shock(pair, 0.0)
    sol = at_rest.reflection(1e-3, "oracle")
    assert abs(sol.r - sr.fresnel_normal(0.004, 0.002)) < 1e-12
    assert at_rest.find_pole() is None

    moving = sr.Interface.weak_shock(pair, 1e-5)
    pole = moving.find_pole()
    assert abs(pole.x_offset / 4.99999552937e-11 - 1) < 1e-9, pole
    assert abs(pole.x_offset / sr.pole_asymptotic(1.0, 1e-5) - 1) < 1e-4
    assert abs(moving.reflection(pole.x_offset, "first_order").r) > 1e3

    try:
        moving.reflection(5e-11, "full")
    except sr.DomainError:
        pass
    else:
        raise AssertionError("expected DomainError in the evanescent band")

    medium = sr.PlasmaBandMedium(2.0, 1.0)
    assert abs(medium.epsilon(medium.omega_tilde)) < 1e-15
    assert math.isclose(medium.depsilon_domega(2.0), 2.0 / 8.0)

    csv = sr.sweep_csv("[sweep]\nv = 1e-5\ndelta_lo = 1e-4\ndelta_hi = 1e-2\ndelta_points = 3\n")
    lines = csv.strip().splitlines()
    assert len(lines) == 4 and all(line.endswith(",pole") for line in lines[1:])

    print("python smoke test ok")


if __name__ == "__main__":
    main()
