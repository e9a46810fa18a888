#!/usr/bin/env python3
"""Smoke test for the rotexp_py extension module.

Build the extension first:

    cargo build -p rotexp-py --release

then run this script from anywhere inside the repository:

    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path


def locate_extension() -> Path:
    repo = Path(__file__).resolve().parent.parent
    candidates = [
        repo / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("librotexp_py.so", "librotexp_py.dylib", "rotexp_py.dll")
    ]
    for path in candidates:
        if path.exists():
            return path
    sys.exit(
        "could not find the built extension; run `cargo build -p rotexp-py --release` first"
    )


def import_module():
    built = locate_extension()
    staging = Path(tempfile.mkdtemp(prefix="rotexp-py-"))
    suffix = ".pyd" if built.suffix == ".dll" else ".so"
    shutil.copy2(built, staging / f"rotexp_py{suffix}")
    sys.path.insert(0, str(staging))
    import rotexp_py

    return rotexp_py


def max_abs_diff(a, b):
    return max(
        abs(x - y) for row_a, row_b in zip(a, b) for x, y in zip(row_a, row_b)
    )


def main():
    rx = import_module()
    checks = 0

    def ok(name, cond):
        nonlocal checks
        assert cond, f"FAILED: {name}"
        checks += 1
        print(f"  ok - {name}")

    # 3d: quarter turn about z sends e1 to e2
    r = rx.rotation3(math.pi / 2, [0.0, 0.0, 1.0])
    ok("rotation3 quarter turn", abs(r[1][0] - 1.0) < 1e-12 and abs(r[0][1] + 1.0) < 1e-12)

    # closed-form exp against the series oracle on a seeded 5x5 generator
    f = rx.random_antisym(5, 1.5, 20260808)
    ok("exp matches series oracle", max_abs_diff(rx.exp(f), rx.series_exp(f)) < 1e-10)

    # exp produces rotations
    ok("exp output is a rotation", rx.check(rx.exp(f))["is_rotation"])

    # wedge algebra: |e1 ^ e2| = 1, outer trace = dot
    ok("wedge_norm of basis pair", abs(rx.wedge_norm([1, 0, 0, 0], [0, 1, 0, 0]) - 1.0) < 1e-15)
    outer = rx.outer([1.0, 2.0, 0.0], [0.5, -1.0, 3.0])
    ok("outer product entries", abs(outer[1][2] - 6.0) < 1e-15)

    # a double rotation: decompose recovers the two block angles
    a, b = 0.5, 1.2
    w = [
        [0.0, a, 0.0, 0.0],
        [-a, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, b],
        [0.0, 0.0, -b, 0.0],
    ]
    split = rx.decompose(w)
    ok(
        "decompose recovers the angles",
        split["class"] == "Generic"
        and abs(split["theta_plus"] - b) < 1e-12
        and abs(split["theta_minus"] - a) < 1e-12,
    )

    # log round trip through a generic rotation
    rot = rx.exp(w)
    out = rx.log(rot)
    ok("log branch is Generic", out["branch"] == "Generic")
    ok(
        "log recovers the generator",
        max_abs_diff(out["generator"], w) < 1e-9,
    )
    ok(
        "exp(log(R)) reproduces R",
        max_abs_diff(rx.exp(out["generator"]), rot) < 1e-9,
    )

    # spectral angles of that rotation
    ang = rx.spectral_angles(rot)
    ok(
        "spectral angles match construction",
        abs(ang["theta_plus"] - a) < 1e-10 and abs(ang["theta_minus"] - b) < 1e-10,
    )

    # a pi branch: half turn in one plane of dimension 4
    half_turn = [
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
    out = rx.log(half_turn)
    ok("pi-plane branch detected", out["branch"] == "SimplePi")
    ok(
        "pi-plane generator round trips",
        max_abs_diff(rx.exp(out["generator"]), half_turn) < 1e-8,
    )

    # 3d log reports axis and angle
    out = rx.log(rx.rotation3(0.7, [0.0, 1.0, 0.0]))
    ok(
        "3d log recovers axis and angle",
        out["branch"] == "Generic"
        and abs(out["theta"] - 0.7) < 1e-9
        and abs(out["axis"][1] - 1.0) < 1e-9,
    )

    # seeded generators are reproducible
    ok(
        "seeded generator reproducibility",
        rx.random_rotation(4, 42) == rx.random_rotation(4, 42),
    )

    # errors arrive as ValueError
    try:
        rx.exp([[0.0, 1.0], [-1.0, 0.0]])
        ok("dimension gate raises", False)
    except ValueError:
        ok("dimension gate raises", True)

    try:
        rx.log([[1.0, 0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        ok("rotation validation raises", False)
    except ValueError:
        ok("rotation validation raises", True)

    print(f"smoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()
