"""Coend structure maps, integral data and the SL(2,Z) action on Z(Q)."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .algebra import AlgElement, TensorElement, all_monomials, mono, tensor
from .center import (
    CenterBasis,
    compute_center,
    even_masks,
    is_central,
    theta_inverse,
)
from .linalg import identity, mat_mul, rank
from .quasihopf import QConfig, QuasiHopfQ
from .scalars import ONE, ZERO, CycScalar
from .verify import flatten_two_leg


def _q(cfg_or_q) -> QuasiHopfQ:
    return cfg_or_q if isinstance(cfg_or_q, QuasiHopfQ) else QuasiHopfQ(cfg_or_q)


# ---------------------------------------------------------------------------
# coend maps

class CoendMaps:
    """Dual structure maps of the coend L = Q* realised on Q."""

    def __init__(self, q: QuasiHopfQ):
        self.q = q
        self.n = q.n

    def triangle(self, h: AlgElement, a: AlgElement) -> AlgElement:
        """h |> a = sum S(h') a h''."""
        q = self.q
        out = AlgElement(self.n)
        for (x, y), c in q.coproduct(h).terms.items():
            out = out + (q.antipode_mono(x) * a * AlgElement.basis(self.n, y)).scale(c)
        return out

    def muHat(self, a: AlgElement) -> TensorElement:
        q, g = self.q, self.q.g
        es = (g.e0, g.e1)
        out = TensorElement(self.n, 2)
        da = q.coproduct(a)
        for n_ in (0, 1):
            for m_ in (0, 1):
                sector = tensor(es[n_], es[m_])
                acc = TensorElement(self.n, 2)
                for (r1, r2), rc in q.R.terms.items():
                    left_h = g.Kp(n_ * m_) * AlgElement.basis(self.n, r2) * g.Kp(m_)
                    right_h = g.Kp(n_ * (1 - m_))
                    for (a1, a2), ac in da.terms.items():
                        x = self.triangle(left_h, AlgElement.basis(self.n, a1))
                        y = self.triangle(right_h, AlgElement.basis(self.n, a2))
                        y = y * AlgElement.basis(self.n, r1)
                        acc = acc + tensor(x, y).scale(rc * ac)
                out = out + acc * sector
        return out

    @staticmethod
    def DeltaHat(a: AlgElement, b: AlgElement) -> AlgElement:
        return b * a

    def etaHat(self, a: AlgElement) -> CycScalar:
        return self.q.counit(a)

    def epsHat(self) -> AlgElement:
        return self.q.g.one

    def SHat(self, a: AlgElement) -> AlgElement:
        """sum S(a R1) u~ R2 with u~ = S(u^-1) = u^-1."""
        q = self.q
        ut = q.uInv
        out = AlgElement(self.n)
        for (r1, r2), c in q.R.terms.items():
            x = q.antipode(a * AlgElement.basis(self.n, r1))
            out = out + (x * ut * AlgElement.basis(self.n, r2)).scale(c)
        return out

    def omegaHat(self) -> TensorElement:
        q, g = self.q, self.q.g
        n = self.n
        acc: dict[tuple, CycScalar] = {}
        kn, kmn = g.Kp(n), g.Kp(-n)
        for (m1, m2), c in q.M.terms.items():
            b = AlgElement.basis(n, m2)
            a = AlgElement.basis(n, m1)
            for left, right in ((q.antipode(b), a * g.e0),
                                (q.antipode(kmn * b * kn), a * g.e1)):
                for k, v in tensor(left, right).terms.items():
                    x = v * c
                    acc[k] = acc[k] + x if k in acc else x
        return TensorElement(n, 2, acc)


def coend_maps(cfg_or_q) -> CoendMaps:
    return CoendMaps(_q(cfg_or_q))


def coend_items(q: QuasiHopfQ, unit_check: bool | None = None):
    cm = CoendMaps(q)
    g = q.g
    dim = 4 ** (q.n + 1)
    items = [
        ("DeltaHat(K, f+1) - f+1 K", cm.DeltaHat(g.K, g.fp(1)) - g.fp(1) * g.K),
        ("epsHat - 1", cm.epsHat() - g.one),
    ]
    om = cm.omegaHat()
    rk = rank(flatten_two_leg(om))
    items.append(("omegaHat rank", dim - rk))
    srows = [dict(cm.SHat(AlgElement.basis(q.n, k)).terms) for k in all_monomials(q.n)]
    items.append(("SHat bijective", dim - rank(srows)))
    if unit_check is None:
        unit_check = q.n == 1
    if unit_check:
        # eta_L is the unit of L: (eps (x) id) muHat = id = (id (x) eps) muHat
        for k in all_monomials(q.n):
            a = AlgElement.basis(q.n, k)
            mu = cm.muHat(a)
            items.append((f"(eps x id) muHat({k})", q.counit_on_leg(mu, 0).to_algelement() - a))
            items.append((f"(id x eps) muHat({k})", q.counit_on_leg(mu, 1).to_algelement() - a))
    return items, {"omegaHat_rank": rk, "dim": dim}


# ---------------------------------------------------------------------------
# integral data

@dataclass
class IntegralData:
    cIntegral: AlgElement
    LambdaHat: object
    lambda_value: CycScalar


def integral_data(cfg_or_q) -> IntegralData:
    q = _q(cfg_or_q)
    n = q.n
    val = CycScalar((-1) ** n * q.cfg.nu) * q.cfg.bpow(2) * CycScalar(2) ** (1 - n)
    return IntegralData(q.c_integral, q.lambda_hat, val)


def integral_items(q: QuasiHopfQ):
    g = q.g
    n = q.n
    c = q.c_integral
    items = [("LambdaHat(c) - 1", 0 if q.lambda_hat(c) == 1 else 1)]
    # c = sum LambdaHat(M1) S(M2)
    acc = AlgElement(n)
    for (m1, m2), co in q.M.terms.items():
        lv = q.lambda_hat(AlgElement.basis(n, m1))
        if lv:
            acc = acc + q.antipode_mono(m2).scale(co * lv)
    items.append(("sum LambdaHat(M1) S(M2) - c", acc - c))
    # sector form: (-2)^N nu beta^2 (S(e0 w) + S(e0 w K)) with w = prod f-_j f+_j
    w = g.one
    for j in range(1, n + 1):
        w = w * g.fm(j) * g.fp(j)
    coeff = CycScalar((-2) ** n * q.cfg.nu) * q.cfg.bpow(2)
    sector = (q.antipode(g.e0 * w) + q.antipode(g.e0 * w * g.K)).scale(coeff)
    items.append(("sector form - c", sector - c))
    bad_left = bad_right = 0
    for k in all_monomials(n):
        a = AlgElement.basis(n, k)
        ec = c.scale(q.counit(a))
        bad_left += len((a * c - ec).terms)
        bad_right += len((c * a - ec).terms)
    items.append(("a c = eps(a) c", bad_left))
    items.append(("c a = eps(a) c", bad_right))
    return items


# ---------------------------------------------------------------------------
# S and T on the centre

class _MIndex:
    """M grouped by first leg for the double loop in the S-transformation."""

    def __init__(self, q: QuasiHopfQ):
        self.by_first: dict[int, list] = {}
        for (m1, m2), c in q.M.terms.items():
            self.by_first.setdefault(m1, []).append((m2, c))


_MCACHE: dict = {}


def _m_index(q: QuasiHopfQ) -> _MIndex:
    key = id(q)
    hit = _MCACHE.get(key)
    if hit is None or hit[0] is not q:
        hit = (q, _MIndex(q))
        _MCACHE.clear()
        _MCACHE[key] = hit
    return hit[1]


def s_transform(cfg_or_q, z: AlgElement, check_central: bool = True) -> AlgElement:
    """S_Z(z) = sum LambdaHat(M1 z) S(M2)."""
    q = _q(cfg_or_q)
    n = q.n
    if check_central and not is_central(z):
        raise ValueError("s_transform requires a central argument")
    top0 = mono((1 << (2 * n)) - 1, 0)
    lam = q.lambda_hat(AlgElement.basis(n, top0))
    idx = _m_index(q)
    acc: dict[int, CycScalar] = {}
    for m1, rest in idx.by_first.items():
        v = (AlgElement.basis(n, m1) * z).coeff(top0)
        if not v:
            continue
        v = v * lam
        for m2, c in rest:
            for k, x in q.antipode_mono(m2).terms.items():
                y = x * c * v
                acc[k] = acc[k] + y if k in acc else y
    out = AlgElement(n, acc)
    if check_central and not is_central(out):
        raise ArithmeticError("S-transformation produced a non-central element")
    return out


def t_transform(cfg_or_q, z: AlgElement, check_central: bool = True) -> AlgElement:
    q = _q(cfg_or_q)
    if check_central and not is_central(z):
        raise ValueError("t_transform requires a central argument")
    return q.vInv * z


def s_closed_form_zlambda(q: QuasiHopfQ, mask: int) -> AlgElement:
    """Closed form of S_Z on mono(mask) e0 for an even mask.

    Singles keep their position, paired indices become free and free ones
    become paired; the coefficient is (-1)^M nu beta^2 2^(N - 2(M + k))."""
    g = q.g
    n = q.n
    singles = paired = 0
    out_mask = 0
    for i in range(n):
        w = (mask >> (2 * i)) & 3
        if w in (1, 2):
            singles += 1
            out_mask |= w << (2 * i)
        elif w == 3:
            paired += 1
        else:
            out_mask |= 3 << (2 * i)
    if singles % 2:
        raise ValueError("mask must have even f-degree")
    k = singles // 2
    e = n - 2 * (paired + k)
    coeff = CycScalar((-1) ** paired * q.cfg.nu) * q.cfg.bpow(2) * CycScalar(2) ** e
    return (AlgElement.basis(n, mono(out_mask)) * g.e0).scale(coeff)


# local 4x4 factors on U_i (columns are images) in the basis e0, f- e0, f+ e0, f+ f- e0
_H = mpq(1, 2)
S_LOCAL = [[0, 0, 0, -_H], [0, 1, 0, 0], [0, 0, 1, 0], [2, 0, 0, 0]]
T_LOCAL = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [2, 0, 0, 1]]


def _local_apply(u: dict, local, scale=ONE) -> dict:
    out: dict[tuple, CycScalar] = {}
    for idx, c in u.items():
        terms = [((), c * scale)]
        for j in idx:
            nxt = []
            for pre, v in terms:
                for r in range(4):
                    x = local[r][j]
                    if x:
                        nxt.append((pre + (r,), v * x))
            terms = nxt
        for key, v in terms:
            out[key] = out[key] + v if key in out else v
    return {k: v for k, v in out.items() if v}


def s_zp_expected(q: QuasiHopfQ):
    n, nu = q.n, q.cfg.nu
    h = mpq(1, 2)
    m = [[0, mpq(1, 2 ** n), -mpq(1, 2 ** n)],
         [mpq(2 ** n, 2), h, h],
         [-mpq(2 ** n, 2), h, h]]
    return [[CycScalar(x * nu) for x in row] for row in m]


def t_zp_expected(q: QuasiHopfQ):
    b = q.cfg.bpow(-1)
    return [[ONE, ZERO, ZERO], [ZERO, b, ZERO], [ZERO, ZERO, -b]]


@dataclass
class SL2ZAction:
    Smat: list
    Tmat: list
    blocks: dict = field(default_factory=dict)
    labels: list = field(default_factory=list)


def _columns_to_matrix(cols):
    d = len(cols)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def action_matrices(q: QuasiHopfQ, cb: CenterBasis) -> SL2ZAction:
    scols, tcols = [], []
    for z in cb.full:
        s = cb.coords(s_transform(q, z))
        t = cb.coords(t_transform(q, z))
        if s is None or t is None:
            raise ArithmeticError("image is not in the span of the centre basis")
        scols.append(s)
        tcols.append(t)
    S, T = _columns_to_matrix(scols), _columns_to_matrix(tcols)
    blocks = {
        "S_ZP": [row[:3] for row in S[:3]],
        "T_ZP": [row[:3] for row in T[:3]],
        "S_ZLambda": [row[3:] for row in S[3:]],
        "T_ZLambda": [row[3:] for row in T[3:]],
    }
    return SL2ZAction(S, T, blocks, cb.labels())


def _mat_sub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _nonzero_count(m) -> int:
    return sum(1 for row in m for x in row if x)


def _mat_rank(m) -> int:
    return rank([{j: x for j, x in enumerate(row) if x} for row in m])


def factorised_zlambda(q: QuasiHopfQ, local, scale) -> list:
    """Matrix on Z_Lambda of theta o (local (x) ... (x) local) o theta^-1."""
    n = q.n
    masks = even_masks(n)
    pos = {m: i for i, m in enumerate(masks)}
    g = q.g
    d = len(masks)
    mat = [[ZERO] * d for _ in range(d)]
    for j, m in enumerate(masks):
        z = AlgElement.basis(n, mono(m)) * g.e0
        img = _local_apply(theta_inverse(z), local, scale)
        for idx, c in img.items():
            # idx is a tensor of local indices; map back to an f-mask
            mask = 0
            for i, li in enumerate(idx):
                mask |= (0, 2, 1, 3)[li] << (2 * i)
            if mask not in pos:
                raise ArithmeticError("factorised map leaves U+")
            mat[pos[mask]][j] = mat[pos[mask]][j] + c
    return mat


def nilpotency_index(a) -> int:
    d = len(a)
    p = a
    for k in range(1, d + 2):
        if not _nonzero_count(p):
            return k
        p = mat_mul(p, a, ZERO)
    raise ArithmeticError("matrix is not nilpotent")


def jordan_data(mat, eigenvalues) -> list[dict]:
    """Block sizes per eigenvalue from ranks of powers of (mat - lambda)."""
    d = len(mat)
    out = []
    for lam in eigenvalues:
        a = _mat_sub(mat, [[lam if i == j else ZERO for j in range(d)] for i in range(d)])
        ranks = [d]
        p = identity(d, ZERO, ONE)
        while True:
            p = mat_mul(p, a, ZERO)
            ranks.append(_mat_rank(p))
            if ranks[-1] == ranks[-2]:
                break
        # number of blocks of size >= k is ranks[k-1] - ranks[k]
        ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
        sizes = {}
        for k in range(1, len(ge) + 1):
            cnt = ge[k - 1] - (ge[k] if k < len(ge) else 0)
            if cnt:
                sizes[k] = cnt
        out.append({"eigenvalue": lam, "block_sizes": sizes})
    return out


def theorem_st_items(q: QuasiHopfQ, cb: CenterBasis | None = None):
    cb = cb or compute_center(q)
    act = action_matrices(q, cb)
    S, T = act.Smat, act.Tmat
    n = q.n
    d = len(S)
    items = []
    off = sum(1 for i in range(d) for j in range(d) if (i < 3) != (j < 3) and (S[i][j] or T[i][j]))
    items.append(("block diagonal", off))
    items.append(("S_ZP", _nonzero_count(_mat_sub(act.blocks["S_ZP"], s_zp_expected(q)))))
    items.append(("T_ZP", _nonzero_count(_mat_sub(act.blocks["T_ZP"], t_zp_expected(q)))))
    b2nu = q.cfg.bpow(2) * q.cfg.nu
    s_fac = factorised_zlambda(q, S_LOCAL, b2nu)
    t_fac = factorised_zlambda(q, T_LOCAL, ONE)
    items.append(("S_ZLambda factorisation", _nonzero_count(_mat_sub(act.blocks["S_ZLambda"], s_fac))))
    items.append(("T_ZLambda factorisation", _nonzero_count(_mat_sub(act.blocks["T_ZLambda"], t_fac))))
    items.append(("S^2 - id", _nonzero_count(_mat_sub(mat_mul(S, S, ZERO), identity(d, ZERO, ONE)))))
    tl = act.blocks["T_ZLambda"]
    dl = len(tl)
    nil = nilpotency_index(_mat_sub(tl, identity(dl, ZERO, ONE)))
    items.append(("nilpotency index of T_ZLambda - id", abs(nil - (n + 1))))
    # T on e0
    g = q.g
    expect = q._prod_ff(2, False) * g.e0
    items.append(("T(e0) - prod(1 + 2 f+ f-) e0", t_transform(q, g.e0) - expect))
    # closed form of S on every Z_Lambda basis vector
    bad = 0
    for m in even_masks(n):
        z = AlgElement.basis(n, mono(m)) * g.e0
        if s_transform(q, z) != s_closed_form_zlambda(q, m):
            bad += 1
    items.append(("S on Z_Lambda closed form", bad))
    b = q.cfg.bpow(-1)
    eigs = []
    for lam in (ONE, b, -b):
        if lam not in eigs:
            eigs.append(lam)
    jd = jordan_data(T, eigs)
    extra = {"action": act, "nilpotency_index": nil, "jordan": jd}
    return items, extra


def check_theorem_ST(cfg_or_q):
    q = _q(cfg_or_q)
    items, extra = theorem_st_items(q)
    return extra["action"], items


def s_phi_chi_items(q: QuasiHopfQ):
    """S_Z(phi_V) = chi_V for the listed modules, plus S on phi_P."""
    from .reptheory import build_module, chi_central, phi_central
    items = []
    phis = {}
    for lab in ("X0+", "X0-", "X1+", "X1-", "P0+"):
        V = build_module(q, lab)
        phis[lab] = phi_central(q, V)
        items.append((f"S(phi_{lab}) - chi_{lab}", s_transform(q, phis[lab]) - chi_central(q, V)))
    nu = q.cfg.nu
    sp = s_transform(q, phis["P0+"])
    items.append(("S(phi_P0+) - nu 2^(N-1)(phi_X1+ - phi_X1-)",
                  sp - (phis["X1+"] - phis["X1-"]).scale(nu * mpq(2 ** q.n, 2))))
    return items


__all__ = [
    "CoendMaps", "coend_maps", "coend_items", "IntegralData", "integral_data",
    "integral_items", "s_transform", "t_transform", "s_closed_form_zlambda",
    "SL2ZAction", "action_matrices", "theorem_st_items", "check_theorem_ST",
    "s_phi_chi_items", "jordan_data", "nilpotency_index", "factorised_zlambda",
    "S_LOCAL", "T_LOCAL", "QConfig",
]
