"""Finite-dimensional representation combinatorics.

Weight systems via the Freudenthal recursion, dimensions via the Weyl
product formula, tensor decomposition by the Klimyk orbit-shift method, and
branching to a folded subalgebra by restrict-and-peel.  All multiplicities
are exact integers; weights are integer Dynkin-label tuples internally.
"""

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import LeveledWeight, Weight
from .errors import DimensionCap, NegativeMultiplicity

DIMENSION_CAP = 10**6


@dataclass(frozen=True)
class WeightSystem:
    highest: Weight
    mults: dict  # Weight -> positive int

    def total(self):
        return sum(self.mults.values())


@dataclass(frozen=True)
class DecompTable:
    entries: dict  # dominant Weight -> positive int


def dominant_level_weights(affine_datum, k):
    """All level-k dominant integral weights, in lexicographic label order."""
    assert affine_datum.is_affine() and k >= 0
    covee = affine_datum.comarks[1:]
    l = affine_datum.rank
    out = []

    def rec(prefix, budget):
        if len(prefix) == l:
            out.append(tuple(prefix))
            return
        i = len(prefix)
        for c in range(budget // covee[i] + 1):
            rec(prefix + [c], budget - c * covee[i])

    rec([], k)
    out.sort()
    return [LeveledWeight(k, affine_datum.weight(c)) for c in out]


def is_level_dominant(affine_datum, lw):
    covee = affine_datum.comarks[1:]
    c = lw.finite.coords
    return (all(x >= 0 and Fraction(x).denominator == 1 for x in c)
            and sum(a * x for a, x in zip(covee, c)) <= lw.level)


@lru_cache(maxsize=None)
def positive_roots(datum):
    """Positive roots as label tuples, found by reflection closure."""
    fin = datum.finite
    a = fin.A
    l = fin.rank
    simple = [tuple(a[r][i] for r in range(l)) for i in range(l)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(l):
                c = v[i]
                if c == 0:
                    continue
                w = tuple(v[j] - c * a[j][i] for j in range(l))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    ainv = _ainv(fin)
    pos = []
    for v in seen:
        coeffs = [sum(ainv[i][j] * v[j] for j in range(l)) for i in range(l)]
        assert all(c.denominator == 1 for c in coeffs)
        if all(c >= 0 for c in coeffs):
            pos.append(v)
    assert len(pos) == fin.npos, (len(pos), fin.npos)
    return tuple(sorted(pos))


@lru_cache(maxsize=None)
def _ainv(fin):
    from . import _rational as rat
    return rat.mat_inverse(fin.A)


@lru_cache(maxsize=None)
def _gram_int(fin):
    """Weight-space Gram matrix as (integer matrix, common denominator)."""
    from . import _rational as rat
    rows = [x for row in fin.gram_weights for x in row]
    ints, den = rat.clear_denominators(rows)
    l = fin.rank
    g = tuple(tuple(ints[i * l + j] for j in range(l)) for i in range(l))
    return g, den


def _ip(fin, u, v):
    """Inner product of label tuples, exact Fraction."""
    g, den = _gram_int(fin)
    return Fraction(sum(u[i] * sum(g[i][j] * v[j] for j in range(len(v)))
                        for i in range(len(u))), den)


def dim(datum, lam):
    """Weyl dimension formula, exact integer."""
    fin = datum.finite
    coords = tuple(lam.coords) if isinstance(lam, Weight) else tuple(lam)
    rho = (1,) * fin.rank
    shifted = tuple(c + 1 for c in coords)
    num = Fraction(1)
    for alpha in positive_roots(fin):
        num *= _ip(fin, shifted, alpha) / _ip(fin, rho, alpha)
    assert num.denominator == 1 and num > 0
    return int(num)


_ws_cache = {}
_ws_lock = threading.Lock()


def freudenthal(datum, lam, dim_cap=DIMENSION_CAP):
    """Full weight system of the irreducible with highest weight lam."""
    fin = datum.finite
    coords = tuple(int(c) for c in (lam.coords if isinstance(lam, Weight) else lam))
    assert all(c >= 0 for c in coords), "highest weight must be dominant"
    key = (fin, coords)
    with _ws_lock:
        cached = _ws_cache.get(key)
    if cached is not None:
        return cached

    d = dim(fin, coords)
    if d > dim_cap:
        raise DimensionCap(f"dim {d} exceeds the cap {dim_cap}")
    a = fin.A
    l = fin.rank
    pos = positive_roots(fin)
    ainv = _ainv(fin)
    # Root-coefficient tuples of the positive roots (integers).
    pos_coeffs = []
    for alpha in pos:
        c = [sum(ainv[i][j] * alpha[j] for j in range(l)) for i in range(l)]
        pos_coeffs.append(tuple(int(x) for x in c))
    lam_rho = tuple(c + 1 for c in coords)
    norm_top = _ip(fin, lam_rho, lam_rho)

    mults = {coords: 1}
    # depth[mu] = coefficients of lam - mu on the simple roots.
    zero = (0,) * l
    depth = {coords: zero}
    level = [coords]
    while level:
        candidates = {}
        for v in level:
            dv = depth[v]
            for i in range(l):
                cand = tuple(v[j] - a[j][i] for j in range(l))
                if cand not in mults and cand not in candidates:
                    candidates[cand] = tuple(dv[j] + (j == i) for j in range(l))
        nxt = []
        for mu, dmu in candidates.items():
            mu_rho = tuple(c + 1 for c in mu)
            denom = norm_top - _ip(fin, mu_rho, mu_rho)
            if denom <= 0:
                continue
            acc = Fraction(0)
            for alpha, ac in zip(pos, pos_coeffs):
                # lam - (mu + j alpha) must stay in the positive root cone.
                jmax = min(dmu[i] // ac[i] for i in range(l) if ac[i] > 0)
                for j in range(1, jmax + 1):
                    up = tuple(mu[r] + j * alpha[r] for r in range(l))
                    m_up = mults.get(up, 0)
                    if m_up:
                        acc += m_up * _ip(fin, up, alpha)
            m = 2 * acc / denom
            assert m.denominator == 1 and m >= 0
            if m > 0:
                mults[mu] = int(m)
                depth[mu] = dmu
                nxt.append(mu)
        level = nxt
    ws = WeightSystem(Weight(fin, coords),
                      {Weight(fin, mu): m for mu, m in mults.items()})
    assert ws.total() == d, f"Freudenthal mass {ws.total()} != dim {d}"
    with _ws_lock:
        _ws_cache.setdefault(key, ws)
    return ws


def _mults_raw(fin, coords, dim_cap=DIMENSION_CAP):
    ws = freudenthal(fin, coords, dim_cap)
    return {w.coords: m for w, m in ws.mults.items()}


def tensor_decompose(datum, lam, mu, dim_cap=DIMENSION_CAP):
    """Klimyk decomposition of lam (x) mu into dominant weights."""
    from .weyl import to_dominant
    fin = datum.finite
    lam_c = tuple(int(c) for c in (lam.coords if isinstance(lam, Weight) else lam))
    mu_c = tuple(int(c) for c in (mu.coords if isinstance(mu, Weight) else mu))
    if dim(fin, lam_c) < dim(fin, mu_c):
        lam_c, mu_c = mu_c, lam_c  # enumerate weights of the smaller factor
    sys_small = _mults_raw(fin, mu_c, dim_cap)
    l = fin.rank
    out = {}
    for tau, m in sys_small.items():
        shifted = tuple(lam_c[i] + tau[i] + 1 for i in range(l))
        rep, sign = to_dominant(fin, Weight(fin, shifted))
        if sign == 0:
            continue
        target = tuple(c - 1 for c in rep.coords)
        out[target] = out.get(target, 0) + sign * m
    out = {k: v for k, v in out.items() if v != 0}
    assert all(v > 0 for v in out.values())
    total = sum(v * dim(fin, k) for k, v in out.items())
    expect = dim(fin, lam_c) * dim(fin, mu_c)
    assert total == expect, f"tensor mass {total} != {expect}"
    return DecompTable({Weight(fin, k): v for k, v in out.items()})


def branch(ambient_datum, sub_datum, restriction_matrix, lam, dim_cap=DIMENSION_CAP):
    """Restrict the ambient irreducible lam and peel into sub-irreducibles.

    restriction_matrix maps ambient Dynkin labels to subalgebra labels (the
    Cartan-level dual of the subalgebra embedding).
    """
    amb = ambient_datum.finite
    sub = sub_datum.finite
    lam_c = tuple(int(c) for c in (lam.coords if isinstance(lam, Weight) else lam))
    amb_sys = _mults_raw(amb, lam_c, dim_cap)
    rmat = [tuple(int(x) for x in row) for row in restriction_matrix]
    ls = sub.rank
    rest = {}
    for w, m in amb_sys.items():
        y = tuple(sum(rmat[i][j] * w[j] for j in range(len(w))) for i in range(ls))
        rest[y] = rest.get(y, 0) + m
    ainv = _ainv(sub)

    def height(y):
        return sum(sum(ainv[i][j] * y[j] for j in range(ls)) for i in range(ls))

    out = {}
    guard = sum(rest.values())
    while True:
        dominant = [(y, m) for y, m in rest.items() if m != 0 and all(c >= 0 for c in y)]
        if not dominant:
            break
        if any(m < 0 for _, m in dominant) or guard < 0:
            raise NegativeMultiplicity("branching produced a negative multiplicity")
        # Highest weight first: maximal height, then lexicographically highest.
        y, m = max(dominant, key=lambda item: (height(item[0]), item[0]))
        if m < 0:
            raise NegativeMultiplicity("branching produced a negative multiplicity")
        out[y] = m
        for w, mw in _mults_raw(sub, y, dim_cap).items():
            rest[w] = rest.get(w, 0) - m * mw
            if rest[w] < 0:
                raise NegativeMultiplicity("branching produced a negative multiplicity")
        guard -= m * dim(sub, y)
    if any(m != 0 for m in rest.values()):
        raise NegativeMultiplicity("branching left unresolved non-dominant mass")
    total = sum(m * dim(sub, y) for y, m in out.items())
    expect = dim(amb, lam_c)
    assert total == expect, f"branching mass {total} != {expect}"
    return DecompTable({Weight(sub, y): m for y, m in out.items()})
