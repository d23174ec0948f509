"""Smoke test for the zkpoly extension module.

Build first with `cargo build --release -p zkpoly-py`; the script copies the
shared library next to itself as zkpoly.so and imports it.
"""

import json
import pathlib
import shutil
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def load():
    for name in ("libzkpoly.so", "libzkpoly.dylib", "zkpoly.dll"):
        built = ROOT / "target" / "release" / name
        if built.exists():
            dest = HERE / ("zkpoly.pyd" if name.endswith(".dll") else "zkpoly.so")
            shutil.copyfile(built, dest)
            break
    else:
        sys.exit("build the extension first: cargo build --release -p zkpoly-py")
    sys.path.insert(0, str(HERE))
    import zkpoly

    return zkpoly


def main():
    zkpoly = load()

    maj = zkpoly.BoolFn.majority(3)
    assert maj.n == 3 and len(maj) == 8
    assert maj.bits() == [False, False, False, True, False, True, True, True]

    r = zkpoly.gamma_exact(maj, 1, 1)
    assert r.gamma == (6, 8), r
    assert r.mode == "exact"
    assert r.witness.agreement(maj) == (6, 8)
    assert zkpoly.gamma_exact(maj, 0, 2).gamma == (4, 8)
    try:
        zkpoly.gamma_exact(zkpoly.BoolFn.majority(5), 2, 2, budget=1000)
    except ValueError as e:
        assert "4294967296" in str(e), e
    else:
        raise AssertionError("budget not enforced")

    h = zkpoly.gamma_heuristic(zkpoly.BoolFn.random(8, 1), 2, 2, restarts=4, seed=5)
    assert h.mode == "heuristic"
    assert h.gamma[0] * 2 >= h.gamma[1]

    f = zkpoly.BoolFn.elem_sym(5, 2)
    assert zkpoly.BoolFn.from_bytes(f.to_bytes()) == f
    assert f.to_bytes()[:5] == b"BFN1\x05"

    p = zkpoly.RingPoly(3, 2, 2, [(1, 3), (6, 2)])
    assert zkpoly.RingPoly.from_json(p.to_json()) == p
    assert zkpoly.RingPoly.interpolate(p.eval_all(), 2, 3).terms() == p.terms()
    nc = zkpoly.nc_from_ring(p)
    assert nc.depth == 2
    assert all(nc.eval(x)[1] <= 2 for x in range(8))
    assert nc.to_ring(2).eval_all() == p.eval_all()
    assert json.loads(nc.to_json())["depth"] == 2

    assert zkpoly.agreement(maj.lift(2), [0, 0, 0, 2, 0, 2, 2, 2]) == (8, 8)
    ball = [0, 1, 2, 4, 8]
    assert zkpoly.is_interpolating(4, ball, 1, 2)
    assert zkpoly.is_forcing(4, ball, 1, 2)
    assert not zkpoly.is_forcing(4, ball[:4], 1, 1)

    assert zkpoly.verify_rel_lbd() == (20, 32)
    m, t = zkpoly.sym_separation_agreement(1024, 2)
    assert t == 2**1024 and 2 * m >= t
    w = zkpoly.sym_witness(8, 2)
    assert zkpoly.nc_from_ring(w).depth == 3
    assert zkpoly.quad_witness(3, 1).k == 2

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
