"""Smoke test for the abharm_py extension module.

Build and install first:
    pip install maturin
    maturin develop -m crates/python/Cargo.toml
"""
import cmath
import math

import abharm_py as ah


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    g = ah.Group([2, 3])
    assert g.order == 6 and len(g) == 6
    assert g.add([1, 2], [1, 2]) == [0, 1]
    assert g.negate([1, 1]) == [1, 2]
    assert g.unrank(g.rank([1, 2])) == [1, 2]
    assert len(g.characters()) == 6
    assert close(g.character([0, 1], [0, 1]), cmath.exp(2j * math.pi / 3))

    two = ah.Group([2])
    assert ah.fourier(two, [1, 1]) == [1, 0]

    f = [complex(k, -k * k) for k in range(6)]
    fast = ah.fourier(g, f)
    naive = ah.fourier(g, f, naive=True)
    assert all(close(a, b, 1e-9) for a, b in zip(fast, naive))
    back = ah.inverse_fourier(g, fast)
    assert all(close(a, b, 1e-12) for a, b in zip(back, f))

    delta = [0, 1, 0, 0]
    c4 = ah.Group([4])
    conv = ah.convolve(c4, delta, delta, haar="counting")
    assert all(close(a, b) for a, b in zip(conv, [0, 0, 1, 0]))
    assert ah.translate(c4, delta, [1]) == [0, 0, 1, 0]
    assert close(ah.integrate(c4, [1, 2, 3, 4]), 2.5)
    assert ah.haar_uniqueness(g) == 1

    value, cls = ah.laplace([(1, 1), (-1, 2j)], 2)
    assert close(value, 2 + 1j) and cls == "unbounded"
    _, cls = ah.laplace([(3, 1)], 1j)
    assert cls == "bounded"

    cyl = ah.Cylinder(2, 1, [1, 0])
    assert close(cyl.integrate(), 0.5)
    assert cyl.refine(2).values == [1, 0, 1, 0]
    assert all(close(a, b) for a, b in zip(cyl.transform(), [0.5, 0.5]))
    assert cyl.eval([0, 1, 1]) == 1

    try:
        ah.fourier(two, [1, 2, 3])
    except ah.AbharmError as e:
        assert "ShapeMismatch" in str(e)
    else:
        raise AssertionError("expected ShapeMismatch")

    print("smoke test ok")


if __name__ == "__main__":
    main()
