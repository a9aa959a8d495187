"""The map Upsilon: Z(Q) -> Z(E) and the comparison with the pseudo-trace SL(2,Z) matrices.

Scalars live in Q(zeta8)[pi, 1/pi].  The global phase exp(2 pi i N / 12) of the T-matrix is
outside that ring and is stripped, so T is compared projectively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from gmpy2 import mpq

from .algebra import AlgElement, mono
from .center import CenterBasis, compute_center, even_masks, special_idempotents
from .linalg import Coordinatizer
from .quasihopf import QConfig, QuasiHopfQ
from .scalars import ONE, ZERO, CycScalar, I, LaurentScalar, zeta_pow
from .sl2z import S_LOCAL, T_LOCAL, action_matrices

L0 = LaurentScalar()
L1 = LaurentScalar.coerce(ONE)
MINUS_PI_I = LaurentScalar.monomial(-I, 1)


def comparison_config(n: int) -> QConfig:
    """beta = zeta8^N and nu = 1, the only configuration the comparison applies to."""
    return QConfig(n, n % 8, 1)


def _require_config(cfg: QConfig):
    if cfg.nu != 1 or cfg.bpow(1) != zeta_pow(cfg.n):
        raise ValueError("the comparison requires beta = zeta8^N and nu = 1")


# ---------------------------------------------------------------------------
# Z(E) basis: B1, B2, B3 spanning Z_P(E), then even alpha-monomials

@dataclass
class ZEBasis:
    n: int
    masks: list = field(default_factory=list)

    def __post_init__(self):
        self.masks = even_masks(self.n)
        self._pos = {m: 3 + i for i, m in enumerate(self.masks)}

    @property
    def dim(self) -> int:
        return 3 + len(self.masks)

    def index(self, mask: int) -> int:
        return self._pos[mask]

    @property
    def top(self) -> int:
        return (1 << (2 * self.n)) - 1

    def labels(self) -> list[str]:
        out = ["(2pi)^N a_top w", "2^N id_T (w+1)", "2^N id_T (w-1)"]
        for m in self.masks:
            word = " ".join(f"a{j + 1}" for j in range(2 * self.n) if m >> j & 1)
            out.append(word or "id")
        return out


def alpha_product(masks_with_order: list[int]) -> tuple[int, int]:
    """Product of single alphas given by position (0-based), as (sign, canonical mask)."""
    sign, mask = 1, 0
    for pos in masks_with_order:
        if mask >> pos & 1:
            return 0, 0
        # moving alpha_pos past the alphas already present with larger index
        if bin(mask >> (pos + 1)).count("1") & 1:
            sign = -sign
        mask |= 1 << pos
    return sign, mask


def _vec_add(out: dict, idx: int, c):
    v = out.get(idx, L0) + c
    if v:
        out[idx] = v
    else:
        out.pop(idx, None)


# ---------------------------------------------------------------------------
# Upsilon

class Upsilon:
    """Linear map on Z(Q) defined on the formula basis {K e0 top, e1+, e1-, e0 * even monomials}."""

    def __init__(self, q: QuasiHopfQ, zb: ZEBasis | None = None):
        _require_config(q.cfg)
        self.q = q
        n = q.n
        self.zb = zb or ZEBasis(n)
        g = q.g
        ep, em = special_idempotents(q)
        top = g.top()
        self.formula_basis = [g.K * g.e0 * top, ep, em]
        self.formula_images = []
        two_pi_n = LaurentScalar.monomial(ONE * 2 ** n, n)
        # K e0 top -> (-pi i)^N a_top w = (-pi i)^N / (2 pi)^N * B1
        self.formula_images.append({0: LaurentScalar.coerce(MINUS_PI_I ** n) * two_pi_n.inverse()})
        half_n = mpq(1, 2 ** (n + 1))
        # e1+ -> 1/2 id_T (1 + w) = 2^{-N-1} B2 ; e1- -> 1/2 id_T (1 - w) = -2^{-N-1} B3
        self.formula_images.append({1: LaurentScalar.coerce(CycScalar(half_n))})
        self.formula_images.append({2: LaurentScalar.coerce(CycScalar(-half_n))})
        for m in self.zb.masks:
            self.formula_basis.append(AlgElement.basis(n, mono(m)) * g.e0)
            minus_count = sum(1 for k in range(n) if m >> (2 * k + 1) & 1)
            self.formula_images.append({self.zb.index(m): MINUS_PI_I ** minus_count})
        self._coord = Coordinatizer([dict(b.terms) for b in self.formula_basis], ONE)

    def __call__(self, z: AlgElement) -> dict:
        c = self._coord.coords(dict(z.terms))
        if c is None:
            raise ValueError("element is not central")
        out: dict[int, LaurentScalar] = {}
        for coef, img in zip(c, self.formula_images):
            if coef:
                for idx, v in img.items():
                    _vec_add(out, idx, v * coef)
        return out

    def matrix(self, cb: CenterBasis) -> list[list]:
        cols = [self(z) for z in cb.full]
        d = self.zb.dim
        return [[cols[j].get(i, L0) for j in range(len(cols))] for i in range(d)]

    # images of the simple-module characters on the pseudo-trace side
    def varphi_images(self) -> dict:
        n = self.n
        tp = LaurentScalar.monomial(ONE * 2 ** n, n)
        top = self.zb.index(self.zb.top)
        return {
            "varphi_1": {0: L1, top: tp},
            "varphi_Pi1": {0: L1, top: -tp},
            "varphi_T": {1: L1},
            "varphi_PiT": {2: L1},
        }

    @property
    def n(self):
        return self.q.n


# ---------------------------------------------------------------------------
# pseudo-trace side matrices on the Z(E) basis

def _lmat(rows) -> list[list]:
    return [[LaurentScalar.coerce(x) for x in r] for r in rows]


def sigma_local() -> list[list]:
    """sigma_k in the basis (id, a_{2k-1}, a_{2k}, a_{2k} a_{2k-1}); columns are images."""
    m2pi = LaurentScalar.monomial(-ONE * 2, 1)
    return [[L0, L0, L0, m2pi.inverse()],
            [L0, LaurentScalar.coerce(-I), L0, L0],
            [L0, L0, LaurentScalar.coerce(-I), L0],
            [m2pi, L0, L0, L0]]


def tau_local() -> list[list]:
    return [[L1, L0, L0, L0],
            [L0, L1, L0, L0],
            [L0, L0, L1, L0],
            [LaurentScalar.monomial(2 * I, 1), L0, L0, L1]]


# W_k basis element j as a list of alpha positions (0-based) in factor order
_W_WORDS = ((), (0,), (1,), (1, 0))


def varpi(zb: ZEBasis, idx: tuple) -> tuple[int, int]:
    """varpi(w_{idx_1} (x) ... (x) w_{idx_N}) as (sign, canonical mask)."""
    positions = []
    for k, j in enumerate(idx):
        positions += [2 * k + p for p in _W_WORDS[j]]
    return alpha_product(positions)


def zlambda_block(zb: ZEBasis, local) -> list[list]:
    """Matrix of varpi o (local^{(x)N})|_{W+} o varpi^{-1} on the even alpha-monomials."""
    n = zb.n
    masks = zb.masks
    d = len(masks)
    # varpi^{-1}: each canonical even mask is +-1 times one tensor basis vector
    preimage = {}
    for idx in itertools.product(range(4), repeat=n):
        sign, mask = varpi(zb, idx)
        if sign and bin(mask).count("1") % 2 == 0:
            preimage[mask] = (sign, idx)
    mat = [[L0] * d for _ in range(d)]
    for col, m in enumerate(masks):
        sign, idx = preimage[m]
        terms = {(): L1 * sign}
        for k, j in enumerate(idx):
            new = {}
            for key, c in terms.items():
                for r in range(4):
                    e = local[r][j]
                    if e:
                        new[key + (r,)] = c * e
            terms = new
        for key, c in terms.items():
            s2, mask2 = varpi(zb, key)
            row = masks.index(mask2)
            mat[row][col] = mat[row][col] + c * s2
    return mat


def voa_matrices(n: int):
    zb = ZEBasis(n)
    d = zb.dim
    S = [[L0] * d for _ in range(d)]
    T = [[L0] * d for _ in range(d)]
    p = ONE * 2 ** n
    h = CycScalar(mpq(1, 2))
    q = CycScalar(mpq(1, 2 ** (n + 1)))
    szp = _lmat([[ZERO, p, -p], [q, h, h], [-q, h, h]])
    zn = zeta_pow(-n)
    tzp = _lmat([[ONE, ZERO, ZERO], [ZERO, zn, ZERO], [ZERO, ZERO, -zn]])
    for i in range(3):
        for j in range(3):
            S[i][j] = szp[i][j]
            T[i][j] = tzp[i][j]
    sl = zlambda_block(zb, sigma_local())
    tl = zlambda_block(zb, tau_local())
    for i in range(len(sl)):
        for j in range(len(sl)):
            S[3 + i][3 + j] = sl[i][j]
            T[3 + i][3 + j] = tl[i][j]
    return zb, S, T


# ---------------------------------------------------------------------------

def _mat_mul(a, b):
    m, k, n = len(a), len(b), len(b[0])
    out = [[L0] * n for _ in range(m)]
    for i in range(m):
        for t in range(k):
            x = a[i][t]
            if not x:
                continue
            for j in range(n):
                y = b[t][j]
                if y:
                    out[i][j] = out[i][j] + x * y
    return out


def _lift(mat) -> list[list]:
    return [[LaurentScalar.coerce(x) for x in row] for row in mat]


def _residual(a, b) -> int:
    return sum(1 for ra, rb in zip(a, b) for x, y in zip(ra, rb) if x != y)


@dataclass
class ComparisonData:
    upsilon: list
    SVoa: list
    TVoaStripped: list
    Smat: list
    Tmat: list
    zb: ZEBasis
    labels: list


def build_comparison(n: int, q: QuasiHopfQ | None = None, cb: CenterBasis | None = None):
    q = q or QuasiHopfQ(comparison_config(n))
    _require_config(q.cfg)
    cb = cb or compute_center(q)
    ups = Upsilon(q)
    zb, S, T = voa_matrices(n)
    act = action_matrices(q, cb)
    return ComparisonData(ups.matrix(cb), S, T, _lift(act.Smat), _lift(act.Tmat), zb, cb.labels()), ups, cb


def local_basis_change() -> list[list]:
    """Columns: images of (e0, f- e0, f+ e0, f+ f- e0) in the W_k basis."""
    mpi = MINUS_PI_I
    return [[L1, L0, L0, L0],
            [L0, L0, L1, L0],
            [L0, mpi, L0, L0],
            [L0, L0, L0, -mpi]]


def _inverse_monomial(c):
    """Inverse of a matrix with exactly one unit entry in each row and column."""
    d = len(c)
    inv = [[L0] * d for _ in range(d)]
    for i in range(d):
        (j, x), = [(j, x) for j, x in enumerate(c[i]) if x]
        inv[j][i] = x.inverse()
    return inv


def local_factor_items():
    """C (i S_local) C^-1 = sigma P and C T_local C^-1 = tau, with P = diag(1, -1, -1, 1) the parity."""
    c = local_basis_change()
    ci = _inverse_monomial(c)
    s_i = [[LaurentScalar.coerce(I * x) for x in row] for row in S_LOCAL]
    t_l = _lift(T_LOCAL)
    parity = [[L0] * 4 for _ in range(4)]
    for i, s in enumerate((1, -1, -1, 1)):
        parity[i][i] = L1 * s
    lhs_s = _mat_mul(_mat_mul(c, s_i), ci)
    lhs_t = _mat_mul(_mat_mul(c, t_l), ci)
    return [
        ("C (i S_k) C^-1 - sigma_k P", _residual(lhs_s, _mat_mul(sigma_local(), parity))),
        ("C T_k C^-1 - tau_k", _residual(lhs_t, tau_local())),
    ]


def upsilon_determinant_is_unit(ups_mat) -> bool:
    from .linalg import unit_pivot_determinant
    try:
        det = unit_pivot_determinant([row[:] for row in ups_mat])
    except ArithmeticError:
        return False
    return bool(det) and det.is_unit()


def varphi_items(q: QuasiHopfQ, ups: Upsilon):
    """Upsilon of the simple-module internal characters against the pseudo-trace side."""
    from .reptheory import build_module, phi_central
    imgs = ups.varphi_images()
    pairs = [("X0+", "varphi_1"), ("X0-", "varphi_Pi1"), ("X1+", "varphi_T"), ("X1-", "varphi_PiT")]
    items = []
    for lab, key in pairs:
        v = build_module(q, lab)
        got = ups(phi_central(q, v))
        items.append((f"Upsilon(phi_{lab}) - {key}", _vec_residual(got, imgs[key])))
    v = build_module(q, "P0+")
    got = ups(phi_central(q, v))
    target = {0: LaurentScalar.coerce(ONE * 2 ** (2 * q.n))}
    items.append(("Upsilon(phi_P0+) - 2^{2N} B1", _vec_residual(got, target)))
    return items


def _vec_residual(a: dict, b: dict) -> int:
    keys = set(a) | set(b)
    return sum(1 for k in keys if a.get(k, L0) != b.get(k, L0))


def comparison_items(n: int):
    data, ups, cb = build_comparison(n)
    q = ups.q
    U = data.upsilon
    items = [
        ("SVoa Upsilon - Upsilon S", _residual(_mat_mul(data.SVoa, U), _mat_mul(U, data.Smat))),
        ("TVoaStripped Upsilon - Upsilon T", _residual(_mat_mul(data.TVoaStripped, U), _mat_mul(U, data.Tmat))),
        ("Upsilon invertible with unit determinant", 0 if upsilon_determinant_is_unit(U) else 1),
        ("SVoa^2 on Z_P(E) - id", _residual(_mat_mul([r[:3] for r in data.SVoa[:3]], [r[:3] for r in data.SVoa[:3]]),
                                            _lift([[ONE if i == j else ZERO for j in range(3)] for i in range(3)]))),
    ]
    items += local_factor_items()
    items += varphi_items(q, ups)
    return items, data


def check_comparison(cfg_or_n, budget=None):
    from .verify import run_check
    n = cfg_or_n if isinstance(cfg_or_n, int) else cfg_or_n.n
    if not isinstance(cfg_or_n, int):
        _require_config(cfg_or_n)
    holder = {}

    def run(b):
        items, data = comparison_items(n)
        holder["data"] = data
        return items
    res = run_check("comparison", "S and T agree with the pseudo-trace action after Upsilon", run, budget)
    return res, holder.get("data")


__all__ = [
    "ZEBasis", "Upsilon", "ComparisonData", "comparison_config", "voa_matrices", "sigma_local",
    "tau_local", "zlambda_block", "build_comparison", "local_factor_items", "comparison_items",
    "check_comparison", "alpha_product", "varpi",
]
