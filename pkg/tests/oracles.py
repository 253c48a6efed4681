"""Independent oracles the tests check library results against.

Everything here is implemented from first principles (textbook algorithms,
closed forms, exhaustive enumeration) without calling the code paths under
test, so an agreement is meaningful.
"""

import itertools
import math
from fractions import Fraction


def primitive_null_vector(matrix):
    """Kernel vector of a square integer matrix by plain Gaussian elimination,
    scaled to primitive integers with positive leading entry."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(0)] for row in matrix]
    # forward elimination
    rank_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        rank_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in rank_cols]
    assert len(free) == 1, "expected a one-dimensional kernel"
    v = [Fraction(0)] * n
    v[free[0]] = Fraction(1)
    for i, c in enumerate(rank_cols):
        v[c] = -m[i][free[0]]
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    if next(x for x in ints if x) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def inverse_times_diag(a, d):
    """A^-T  D as Fractions: the weight-space Gram matrix, independently."""
    n = len(a)
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(i == j) for j in range(n)]
           for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    ainv = [row[n:] for row in aug]
    return [[Fraction(d[j]) * ainv[j][i] for j in range(n)] for i in range(n)]


def sl2_string(k):
    """Weights of the (k+1)-dimensional sl2 irreducible."""
    return {(j,): 1 for j in range(k, -k - 1, -2)}


def clebsch_gordan_range(a, b):
    """Highest weights in the sl2 product (a) x (b)."""
    return list(range(abs(a - b), a + b + 1, 2))


def convolve_weight_dicts(s1, s2):
    out = {}
    for w1, m1 in s1.items():
        for w2, m2 in s2.items():
            key = tuple(x + y for x, y in zip(w1, w2))
            out[key] = out.get(key, 0) + m1 * m2
    return out


def a1_s_matrix(k):
    """Closed-form S for the rank-1 untwisted algebra at level k."""
    return [[math.sqrt(2 / (k + 2)) * math.sin(math.pi * (a + 1) * (b + 1) / (k + 2))
             for b in range(k + 1)] for a in range(k + 1)]


def brute_force_fold(affine_datum, k, coords, box=4):
    """Exhaustive reduction of a rho-shifted weight modulo the level-shifted
    affine Weyl action: try every finite Weyl element and every translation
    by t * M with basis coefficients in [-box, box].

    Returns (sign, rep labels) with sign 0 on a wall.  Asserts that some
    orbit point lands in the closed fundamental alcove.
    """
    from twistfuse.cartan import lattice_M
    from twistfuse.weyl import apply_matrix, generate_weyl

    t = k + affine_datum.hdual
    fin = affine_datum.finite
    l = fin.rank
    covee = affine_datum.comarks[1:]
    weyl = generate_weyl(fin)
    m_basis = [tuple(x for x in v) for v in lattice_M(affine_datum).basis]

    hits = []
    for w, sign in zip(weyl.elements, weyl.signs):
        wx = apply_matrix(w, coords)
        for coeffs in itertools.product(range(-box, box + 1), repeat=l):
            y = tuple(wx[i] + t * sum(c * m_basis[r][i] for r, c in enumerate(coeffs))
                      for i in range(l))
            if any(Fraction(v).denominator != 1 for v in y):
                continue
            y = tuple(int(v) for v in y)
            y0 = t - sum(covee[i] * y[i] for i in range(l))
            labels = (y0,) + y
            if all(v >= 0 for v in labels):
                hits.append((sign, y, labels))
    assert hits, "no orbit point reached the closed alcove; enlarge the box"
    if any(0 in labels for _, _, labels in hits):
        return 0, None
    reps = {y for _, y, _ in hits}
    assert len(reps) == 1, f"ambiguous interior representative: {reps}"
    signs = {s for s, _, _ in hits}
    assert len(signs) == 1
    return signs.pop(), next(iter(reps))
