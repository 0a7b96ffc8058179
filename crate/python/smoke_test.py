"""Smoke test for the pycyclodet extension.

Build and install first:

    pip install --no-build-isolation ./crates/python
    python python/smoke_test.py
"""

import cmath
import math
from fractions import Fraction

import numpy as np

import pycyclodet as cd


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def test_field():
    f = cd.Field(9)
    assert (f.p, f.f, f.q, len(f)) == (3, 2, 9, 9)
    g = f.generator
    assert g ** 8 == 1 and g ** 4 == -1
    assert all(x * x.inverse() == 1 for x in f.elements() if not x.is_zero())
    assert sum(x.is_square() for x in f.elements() if not x.is_zero()) == 4
    assert f.gen_pow(5).log() == 5

    p = cd.Field(13)
    for a in range(13):
        for b in range(1, 13):
            assert (p.from_int(a) * p.from_int(b)).coeffs == [a * b % 13]
            assert (p.from_int(a) / b).coeffs == [a * pow(b, -1, 13) % 13]


def test_determinants():
    assert cd.det_bq(7, 2).coeffs == [1]
    assert cd.det_bq(cd.Field(9), 3).is_zero()
    assert cd.det_dq(5) == -2

    # Legendre-symbol matrices against floating point determinants.
    for p in [5, 7, 11, 13]:
        f = cd.Field(p)
        xs = [f.gen_pow(i).coeffs[0] for i in range(1, p - 1)]
        for sign, op in [("-", lambda xi, xj: xj - xi), ("+", lambda xi, xj: xj + xi)]:
            m = np.array([[legendre(op(xi, xj), p) for xj in xs] for xi in xs], dtype=float)
            assert round(np.linalg.det(m)) == cd.det_dq(p, sign), (p, sign)

    exact = cd.det_dq(13, "-", 2)
    approx = cd.det_dq(13, "-", 2, "complex")
    assert isinstance(exact, cd.Cyclotomic)
    assert abs(complex(exact) - approx) < 1e-6 * 13 ** 5

    assert cd.det_sun(7, 4) in range(7)


def test_character_sums():
    for q in [7, 9, 25]:
        for a in range(1, q - 1):
            g = cd.gauss(q, a)
            assert abs(abs(g) ** 2 - q) < 1e-8
            for b in range(1, q - 1):
                if (a + b) % (q - 1) == 0:
                    continue
                j = cd.jacobi(q, a, b)
                assert (j * j.conj()).as_integer() == q
    z = cd.Cyclotomic.zeta(5, 1)
    assert sum(z ** k for k in range(1, 5)) == -1
    assert 1 - z * (2 * z).inverse() == Fraction(1, 2)
    assert abs(complex(z) - cmath.exp(2j * cmath.pi / 5)) < 1e-12


def test_pell_and_gamma():
    assert cd.pell(7, 49) == (22, 37)
    assert cd.pell(0, 10) == (0, 2)
    p_seq, q_seq = [0, 1], [2, 2]
    for _ in range(60):
        p_seq.append(2 * p_seq[-1] + p_seq[-2])
        q_seq.append(2 * q_seq[-1] + q_seq[-2])
    for i in range(60):
        assert cd.pell(i, 10007) == (p_seq[i] % 10007, q_seq[i] % 10007)

    assert cd.gamma_p(5, 5, 2) == 1
    for n in range(2, 30):
        assert cd.gamma_p(n, 101, 1) == (-1) ** n * math.factorial(n - 1) % 101
    assert cd.gamma_p(Fraction(1, 3), 7) == cd.gamma_p("1/3", 7)
    try:
        cd.gamma_p("1/4", 7)
    except ValueError:
        pass
    else:
        raise AssertionError("den must divide p - 1")


def test_verify_and_search():
    reports = cd.verify(["T1a"], q_max=49, jobs=2)
    assert reports and all(r["verdict"] == "pass" for r in reports)
    assert "CHAPMAN3" in cd.check_ids()
    r = cd.search("qp2", 7, 20000, jobs=2)
    assert r["hits"] == [13, 31]


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok {name}")
