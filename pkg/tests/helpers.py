"""Shared test utilities: random generators, coordinate translation, and
the golden ideals used across the suite (written in the x/y/z shorthand
where x_i, y_i, z_i are the three coordinates of the i-th factor)."""

import random
import re

from mustafin import building, groebner
from mustafin.valfield import ValuedMatrix, ValuedScalar


def translate_xyz(term):
    """x2*y3 style shorthand -> x12*x23 variable names."""
    row = {"x": "1", "y": "2", "z": "3"}
    return re.sub(r"([xyz])(\d)",
                  lambda m: f"x{row[m.group(1)]}{m.group(2)}", term)


def ideal_from_xyz(gens, rx=None):
    rx = rx or groebner.ring_x(3, 3)
    return groebner.MIdeal(
        rx, [groebner.parse_poly(translate_xyz(g), rx) for g in gens])


def monomials_from_xyz(spec):
    """Comma list of concatenated xyz tokens -> '*'-joined variable names."""
    out = []
    for term in spec.split(","):
        toks = re.findall(r"[xyz]\d", term.strip())
        row = {"x": "1", "y": "2", "z": "3"}
        out.append("*".join(f"x{row[t[0]]}{t[1]}" for t in toks))
    return out


def lattice_cols(*cols):
    """Lattice class generated by the given column vectors (strings)."""
    return building.LatticeClass(ValuedMatrix.parse(list(cols)).transpose())


def random_scalar(rng, lo=-3, hi=3, extra=0.5):
    e = rng.randint(lo, hi)
    c = rng.choice([-3, -2, -1, 1, 2, 3])
    s = ValuedScalar(c) * ValuedScalar.t_power(e)
    if rng.random() < extra:
        s = s + ValuedScalar(rng.randint(-2, 2)) * ValuedScalar.t_power(
            e + rng.randint(1, 2))
    return s


def random_invertible(rng, d, lo=-3, hi=3):
    while True:
        m = ValuedMatrix([[random_scalar(rng, lo, hi) for _ in range(d)]
                          for _ in range(d)])
        if m.det():
            return m


def random_unit_matrix(rng, d):
    """Random matrix over R with determinant of valuation zero."""
    while True:
        entries = []
        for i in range(d):
            row = []
            for j in range(d):
                c = rng.randint(-2, 2)
                s = ValuedScalar(c)
                if rng.random() < 0.5:
                    s = s + ValuedScalar(rng.randint(-2, 2)) * ValuedScalar.t_power(1)
                row.append(s)
            entries.append(row)
        m = ValuedMatrix(entries)
        det = m.det()
        if det and det.val() == 0:
            return m


def random_gl_k(rng, d):
    """Random element of GL_d(K) with bounded entries."""
    while True:
        m = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
        mat = ValuedMatrix([[ValuedScalar(c) for c in row] for row in m])
        if mat.det():
            break
    return ValuedMatrix.diag_t([rng.randint(-1, 1) for _ in range(d)]) * mat


def random_diagonal_config(rng, d, n, lo=-4, hi=4, max_tries=200):
    for _ in range(max_tries):
        exps = [[0] * d] + [[rng.randint(lo, hi) for _ in range(d)]
                            for _ in range(n - 1)]
        try:
            return building.Configuration(
                [building.LatticeClass.diagonal(e) for e in exps])
        except building.BuildingError:
            continue
    raise RuntimeError("could not sample a valid configuration")


# golden ideals ---------------------------------------------------------------

MONOMIAL_TYPE_IDEALS = {
    1: "y2z3, x2z3, y1z3, x1z3, x3y2, x3y1, y2z1, x1y2, x2z1",
    2: "y2z3, x2z3, y3z1, x3y2, x3z1, x3y1, y2z1, x1y2, x2z1",
    3: "y2z3, x2z3, y1z3, x3y2, x3z1, x3y1, y2z1, x1y2, x2z1",
    4: "y2z3, x2z3, x1z3, x2y3, y3z1, x1y3, y2z1, x1y2, x2z1",
    5: "y1z3, y3z2, y2y3, y3z1, y1y3, x3z2, z2y1, z2x1, x2y1, x1y2z3",
    8: "z2z3, x1z3, y3z2, x2y3, y3z1, x1y3, z2y1, z2x1, x2y1",
    9: "y2z3, x2z3, z3z1, x1z3, y2y3, y3z1, y2z1, x2z1, x2y1",
    10: "z2z3, x2z3, z3z1, y1z3, y3z2, y3z1, z2y1, x2z1, x2y1",
    11: "z2z3, y2z3, z3z1, x1z3, y3z1, x3y2, y2z1, x1y2, x2z1, y3z2x1",
    13: "z2z3, y2z3, y1z3, x1z3, y3z2, x1y3, z2y1, z2x1, x1y2, x3y2y1",
    14: "z2z3, x2z3, z3z1, y1z3, x3z2, x3y1, z2y1, x2z1, x2y1",
    15: "y2z3, x2z3, z3z1, y1z3, y2y3, y3z1, y2z1, x1y2, x2z1, y1x2y3",
    16: "z2z3, x2z3, y1z3, x1z3, y3z2, y1y3, z2y1, z2x1, x2y1, y3x2x1",
}

ALMOST_MONOMIAL_IDEALS = [
    "y3*z1, x2*z3, y2*z3, x1*y3, x1*y2, y2*z1, z3*z1, x2*z1, x3*y2 - x2*y3",
    "x2*z3, z1*z3, y2*z3, x1*y3, z1*y2, x1*y2, x1*z3, y2*x3 - x2*y3, x1*z2",
    "y1*z3, x1*z3, x1*y2, x3*y1, y1*z2, z2*x1, z2*x3, z2*z3, x2*z3 - x3*y2",
    "x1*z3, x1*y2, x1*y3, y3*z2, y1*z2, z2*x1, z3*z2, y2*y3 - x2*z3, z3*z1",
    "z1*y2, z2*x1, y2*z3, x1*z3, x1*y2, y2*y3, y3*z1, x1*y3, y3*z2 - x2*z3",
    "y1*z3, x1*z3, x1*y2, x1*y3, y1*z2, y3*z2, z2*x1, z3*z2, y2*y3 - x2*z3",
]

SAILBOAT_PRIMES = [
    ["x1", "z1", "y2", "z2"],
    ["x1", "z1", "x3", "z3"],
    ["y2", "z2", "x3", "z3"],
    ["x1", "y2", "x3", "z1*z2*y3 + z1*x2*z3 - y1*z2*z3"],
]

AIRPLANE_PRIMES = [
    ["y1", "z1", "x2", "z2"],
    ["y1", "z1", "x3", "z3"],
    ["x2", "y2", "x3", "y3"],
    ["y1", "z1", "x2", "x3"],
    ["z1", "x2", "x3", "z2*y3 - y2*z3"],
]

MUTANT_AIRPLANE_PRIMES = [
    ["y1", "z1", "x2", "z2"],
    ["y1", "z1", "x3", "z3"],
    ["x2", "z2", "x3", "z3"],
    ["y1", "z1", "x2", "x3"],
    ["y1", "x2", "x3", "z2*y3 - y2*z3"],
]

EXAMPLE_22_MONOMIAL = ("x11x22, x11x32, x21x32, x11x23, x11x33, x21x33, "
                       "x12x23, x12x33, x22x33")

EXAMPLE_22_PRIMES = [
    ["x11", "x21", "x12", "x22"],
    ["x11", "x21", "x23", "x33"],
    ["x22", "x32", "x23", "x33"],
    ["x11", "x21", "x12", "x33"],
    ["x11", "x32", "x12", "x33"],
    ["x11", "x32", "x33", "x23"],
]

GENERIC_MATRICES = (
    [[1, 1, 1], [1, 2, 4], [1, 3, 9]],
    [[1, 1, 1], [1, -1, 1], [2, 1, -1]],
    [[3, 1, 2], [1, 5, 1], [2, 1, 7]],
)

BOREL_IDEAL_Z = [
    "x11*x12", "x11*x22", "x21*x12", "x11*x13", "x11*x23", "x13*x21",
    "x12*x13", "x12*x23", "x13*x22", "x21*x22*x23",
]


def generic_configuration():
    d = ValuedMatrix.diag_t([0, 1, 2])
    mats = [ValuedMatrix([[ValuedScalar(c) for c in row] for row in m]) * d
            for m in GENERIC_MATRICES]
    return building.Configuration([building.LatticeClass(m) for m in mats])
