"""Conformal data and Kac-Peterson modular matrices.

Every phase exponent is assembled as an exact rational, reduced mod 1, and
only then evaluated trigonometrically.  The default numeric field is a
double-precision complex; precision_bits > 53 switches the evaluation to
mpmath for stress testing.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _rational as rat
from .cartan import dual_lattice, lattice_index, lattice_M
from .errors import NotSublattice
from .fold import (pstar_apply, phi_apply_shifted, symmetric_weights,
                   transported_adjacent_M)
from .rep import dominant_level_weights, _gram_int
from .weyl import apply_matrix, generate_weyl

DEFAULT_BITS = 53

UNTWISTED_S = "untwisted-S"
TWISTED_A = "twisted-a"
ORBIFOLD_BLOCK = "orbifold-block"


@dataclass(frozen=True)
class ConformalData:
    k: int
    m: Fraction
    h: Fraction
    c: Fraction


def conformal(affine_datum, k, lam):
    """Anomaly, conformal weight, and central charge for a level-k weight.

    The anomaly and weight reduce to finite-part inner products; the central
    charge is the Sugawara value of the underlying untwisted algebra, and
    h - m = c/24 holds exactly.
    """
    fin = affine_datum.finite
    coords = tuple(lam.finite.coords) if hasattr(lam, "finite") else tuple(lam.coords)
    t = k + affine_datum.hdual
    rho = (1,) * fin.rank
    lam_rho = tuple(c + 1 for c in coords)
    from .rep import _ip
    rho_norm = _ip(fin, rho, rho)
    m = _ip(fin, lam_rho, lam_rho) / (2 * t) - rho_norm / (2 * affine_datum.hdual)
    lam2rho = tuple(c + 2 for c in coords)
    h = _ip(fin, lam2rho, coords) / (2 * t)
    # 12 (rho, rho) / h^vee extends the Sugawara value k dim g / (k + h^vee)
    # to the twisted types; on untwisted data the two agree exactly.
    c = 12 * k * rho_norm / (t * affine_datum.hdual)
    if affine_datum.type.kind == "affine-r1":
        assert c == Fraction(k * affine_datum.dim_adjoint(), t), \
            "strange-formula cross-check failed"
    assert h - m == c / 24, "normalized-character shift identity failed"
    assert h >= 0 and (h == 0) == all(x == 0 for x in coords)
    return ConformalData(k=k, m=m, h=h, c=c)


@dataclass
class ModularMatrix:
    rows: tuple       # row labels
    cols: tuple       # column labels
    entries: object   # numpy complex array, or object array for high precision
    provenance: str
    precision: int = DEFAULT_BITS

    def __getitem__(self, rc):
        return self.entries[rc]

    @property
    def shape(self):
        return (len(self.rows), len(self.cols))

    def _as_complex(self):
        return np.asarray(self.entries, dtype=complex)

    def unitarity_defect(self):
        s = self._as_complex()
        return float(np.abs(s @ s.conj().T - np.eye(s.shape[0])).max())

    def symmetry_defect(self):
        s = self._as_complex()
        return float(np.abs(s - s.T).max())

    def to_json_dict(self):
        s = self._as_complex()
        return {
            "rows": [_label_json(x) for x in self.rows],
            "cols": [_label_json(x) for x in self.cols],
            "re": [[float(f"{v.real:.17g}") for v in row] for row in s],
            "im": [[float(f"{v.imag:.17g}") for v in row] for row in s],
            "provenance": self.provenance,
            "precision": self.precision,
        }


def _label_json(label):
    from .fusion import SectorLabel
    if isinstance(label, SectorLabel):
        return {"sector": label.sector, "level": label.weight.level,
                "weight": [int(x) for x in label.weight.finite.coords]}
    if isinstance(label, tuple):  # (label, eigen tag) from orbifold blocks
        inner, eigen = label
        d = _label_json(inner)
        d["eigen"] = eigen
        return d
    return {"level": label.level, "weight": [int(x) for x in label.finite.coords]}


class _PhaseEvaluator:
    """exp(-2 pi i q) for exact rational q, reduced mod 1 before evaluation."""

    def __init__(self, bits=DEFAULT_BITS):
        self.bits = bits
        if bits > 53:
            import mpmath
            self.mp = mpmath.mp.clone()
            self.mp.prec = bits
        else:
            self.mp = None
        self.cache = {}

    def __call__(self, num, den):
        num %= den
        key = (num, den)
        val = self.cache.get(key)
        if val is None:
            if self.mp is None:
                val = cmath.exp(complex(0.0, -2.0 * math.pi * (num / den)))
            else:
                val = self.mp.expjpi(self.mp.mpf(-2) * self.mp.mpf(num) / den)
            self.cache[key] = val
        return val

    def zeros(self, shape):
        if self.mp is None:
            return np.zeros(shape, dtype=complex)
        return np.zeros(shape, dtype=object)


def _sqrt(x, bits):
    if bits > 53:
        import mpmath
        mp = mpmath.mp.clone()
        mp.prec = bits
        return mp.sqrt(x)
    return math.sqrt(x)


def _weyl_sum_matrix(weyl, gram_den, gram_int, t, row_shifted, col_shifted, ev):
    """Matrix of sum_w eps(w) exp(-2 pi i (row, w(col)) / t).

    row_shifted: list of integer label tuples (rho-shifted rows).
    col_shifted: list of label tuples with a common denominator cleared,
                 as (int tuple, den) pairs.
    """
    out = ev.zeros((len(row_shifted), len(col_shifted)))
    l = len(gram_int)
    # Signed orbit of each column, computed once and shared across rows.
    orbits = []
    for mu_int, mu_den in col_shifted:
        pts = [(apply_matrix(w, mu_int), sign)
               for w, sign in zip(weyl.elements, weyl.signs)]
        orbits.append((pts, gram_den * mu_den * t))
    for i, lam in enumerate(row_shifted):
        u = tuple(sum(gram_int[a][b] * lam[b] for b in range(l)) for a in range(l))
        for j, (pts, den) in enumerate(orbits):
            acc = 0
            for wv, sign in pts:
                num = sum(u[a] * wv[a] for a in range(l))
                acc += sign * ev(num, den)
            out[i, j] = acc
    return out


def untwisted_S(affine_datum, k, bits=DEFAULT_BITS):
    """Kac-Peterson S-matrix over the level-k dominant weights."""
    assert affine_datum.is_affine() and affine_datum.type.kind == "affine-r1"
    assert k >= 1
    fin = affine_datum.finite
    t = k + affine_datum.hdual
    weyl = generate_weyl(fin)
    labels = dominant_level_weights(affine_datum, k)
    m_lat = lattice_M(affine_datum)
    norm_sq = lattice_index(dual_lattice(m_lat), m_lat.scaled(t))
    assert norm_sq == t ** fin.rank * lattice_index(dual_lattice(m_lat), m_lat)
    gram_int, gram_den = _gram_int(fin)
    shifted = [tuple(c + 1 for c in lw.finite.coords) for lw in labels]
    ev = _PhaseEvaluator(bits)
    raw = _weyl_sum_matrix(weyl, gram_den, gram_int, t,
                           shifted, [(s, 1) for s in shifted], ev)
    scale = 1 / _sqrt(norm_sq, bits)
    phase = (1, 1j, -1, -1j)[fin.npos % 4]
    return ModularMatrix(tuple(labels), tuple(labels), raw * (phase * scale),
                         UNTWISTED_S, bits)


def twisted_a(folding, k, bits=DEFAULT_BITS):
    """Modular coefficient matrix between twisted-type and adjacent-type
    characters; rows over the twisted weights, columns over the adjacent
    weights."""
    assert k >= 1
    tw = folding.twisted
    adj = folding.adjacent
    fin = tw.finite
    t = k + tw.hdual
    weyl = generate_weyl(fin)
    rows = dominant_level_weights(tw, k)
    cols = dominant_level_weights(adj, k)
    m_dag = lattice_M(tw)
    m_adj = transported_adjacent_M(folding)
    try:
        idx_pair = lattice_index(m_adj, m_dag)
    except NotSublattice:
        raise NotSublattice("phi(M') does not contain M^dag; folding data bug")
    norm_sq = lattice_index(dual_lattice(m_dag), m_dag.scaled(t))
    gram_int, gram_den = _gram_int(fin)
    row_shifted = [tuple(c + 1 for c in lw.finite.coords) for lw in rows]
    col_shifted = []
    for lw in cols:
        img = phi_apply_shifted(folding, tuple(c + 1 for c in lw.finite.coords))
        col_shifted.append(rat.clear_denominators(img))
    ev = _PhaseEvaluator(bits)
    raw = _weyl_sum_matrix(weyl, gram_den, gram_int, t, row_shifted, col_shifted, ev)
    scale = _sqrt(idx_pair, bits) / _sqrt(norm_sq, bits)
    phase = (1, 1j, -1, -1j)[fin.npos % 4]
    return ModularMatrix(tuple(rows), tuple(cols), raw * (phase * scale), TWISTED_A, bits)


def twisted_sector_S(folding, k, bits=DEFAULT_BITS):
    """S-matrix block from the twisted sector to the sigma-stable untwisted
    modules: the twisted-a matrix with columns relabeled through Pstar."""
    a = twisted_a(folding, k, bits)
    new_cols = tuple(pstar_apply(folding, lw) for lw in a.cols)
    sym = symmetric_weights(folding, k)
    assert tuple(w.finite.coords for w in new_cols) == \
        tuple(w.finite.coords for w in sym)
    return ModularMatrix(a.rows, new_cols, a.entries, ORBIFOLD_BLOCK, bits)
