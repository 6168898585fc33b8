"""Smoke test for the unitri_py extension module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/unitri-py/Cargo.toml -o target/wheels
    pip install target/wheels/unitri_py-*.whl
"""

import json
import sys

import unitri_py as ut


def main() -> int:
    c = ut.classify([[0, 0, 0], [1, 0, 0], [0, 0, 1], [5, 13, 1]])
    assert (c.q, c.canonical_p, c.tetragonal) == (13, 5, False), c
    assert ut.canonical_p(8, 13) == 5
    assert ut.paths_compatible(1, 7) and not ut.paths_compatible(2, 7)
    assert ut.dilate_point_count(5, 13, 2) == 13 + 9

    t = ut.triangulate(5, 13, 4)
    assert len(t) == 4**3 * 13, t
    report = ut.verify(t, "dilate:5,13,4")
    assert report.passed, report.failures()
    assert json.loads(report.to_json())["counts"]["cells"] == len(t)

    back = ut.Triangulation.from_json(t.to_json())
    assert back.to_json() == t.to_json()
    assert t.boundary_off().startswith("OFF")

    q = ut.triangulate(2, 5, 7, boundary="quasi")
    assert ut.verify(q, "dilate:2,5,7").passed

    cube = [[x, y, z] for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    tc = ut.triangulate_polytope(cube, 6)
    assert len(tc) == 6**3 * 6
    assert ut.verify(tc, [[6 * a for a in v] for v in cube]).passed

    try:
        ut.triangulate(5, 13, 7, boundary="standard")
    except ValueError as e:
        assert "k=7 requires quasi-standard" in str(e)
    else:
        raise AssertionError("k=7 with standard boundary should be refused")

    print("python smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
