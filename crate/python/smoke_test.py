"""Smoke test for the bgdual extension module."""

import json
import math

import bgdual


def main():
    torus = bgdual.Torus(complex(0.3, 1.1))
    assert torus.eq(torus.add(0.2 + 0.1j, torus.neg(0.2 + 0.1j)), 0j)
    pts = torus.torsion_points(3)
    assert len(pts) == 9

    basis = bgdual.ThetaBasis(3, torus)
    image = basis.embed(0.25 + 0.5j)
    assert abs(math.sqrt(sum(abs(c) ** 2 for c in image)) - 1.0) < 1e-12

    h = basis.hyperplane_through([(0.1 + 0.2j, 1), (0.4 + 0.3j, 1), (-0.5 - 0.5j, 1)])
    zeros = basis.section_zeros(h)
    assert sum(k for _, k in zeros) == 3
    total = 0j
    for z, k in zeros:
        total += k * z
    assert torus.distance(total, 0j) < 1e-7

    inside, parts = basis.in_discriminant(basis.osculating_hyperplane(pts[4]))
    assert inside and parts == [3]
    assert basis.discriminant_degree(seed=7) == 6
    _, mults, rank = basis.top_stratum()
    assert mults == [2] * 9 and rank == 3
    assert basis.dual_sextic()["cusp_count"] == 9
    assert max(basis.translation_residual(xi) for xi in pts) < 1e-8

    assert bgdual.classify([(1, 0j), (1, 0j)], 2, 0.1 + 0.4j, torus) == "Algebraic"
    bound, note = bgdual.jordan_upper_bound(3)
    assert bound == 53508833280 and note.startswith("caveat")

    code, text = bgdual.run(["discriminant-degree", "--n", "3", "--seed", "7"])
    report = json.loads(text)
    assert code == 0 and report["result"] == 6 and report["pass"]

    try:
        bgdual.Torus(complex(0.0, -1.0))
    except bgdual.BgdualError:
        pass
    else:
        raise AssertionError("invalid tau accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
