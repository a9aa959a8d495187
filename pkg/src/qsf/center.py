"""The centre Z(Q): kernel computation, closed-form bases and the map theta."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from gmpy2 import mpq

from .algebra import AlgElement, all_monomials, fbit, mono, mono_mul
from .linalg import Coordinatizer, nullspace, rank
from .quasihopf import QConfig, QuasiHopfQ
from .scalars import ONE, CycScalar, I

_ONE_Q = mpq(1)


def center_dimension(n: int) -> int:
    return 3 + 2 ** (2 * n - 1)


def _generator_keys(n: int) -> list[int]:
    keys = [mono(0, 1)]
    for i in range(1, n + 1):
        keys += [mono(fbit(i, +1)), mono(fbit(i, -1))]
    return keys


def commutator_rows(n: int) -> list[dict]:
    """Rows of the linear system [z, x] = 0 for x = K, f+_i, f-_i; columns are monomials."""
    rows: dict[tuple, dict] = {}
    for gkey in _generator_keys(n):
        for m in all_monomials(n):
            for k, c in mono_mul(m, gkey):
                r = rows.setdefault((gkey, k), {})
                r[m] = r.get(m, 0) + c
            for k, c in mono_mul(gkey, m):
                r = rows.setdefault((gkey, k), {})
                r[m] = r.get(m, 0) - c
    return [r for _, r in sorted(rows.items())]


def center_kernel(n: int) -> list[AlgElement]:
    """Basis of Z(Q) from the exact rational kernel of the commutator system."""
    ncols = 4 ** (n + 1)
    vecs = nullspace(commutator_rows(n), ncols, _ONE_Q)
    return [AlgElement(n, v) for v in vecs]


def is_central(a: AlgElement) -> bool:
    g_keys = _generator_keys(a.n)
    for gk in g_keys:
        x = AlgElement.basis(a.n, gk)
        if a * x - x * a:
            return False
    return True


def even_masks(n: int) -> list[int]:
    """Even f-masks in graded-lexicographic order (degree, then mask)."""
    masks = [m for m in range(1 << (2 * n)) if bin(m).count("1") % 2 == 0]
    return sorted(masks, key=lambda m: (bin(m).count("1"), m))


def special_idempotents(q: QuasiHopfQ):
    """e1(+/-) = 1/2 e1 (1 -/+ i K prod(1 - 2 f+_k f-_k))."""
    g = q.g
    w = g.K * q._prod_ff(-2, False)
    half = CycScalar(mpq(1, 2))
    plus = (g.e1 * (g.one - w.scale(I))).scale(half)
    minus = (g.e1 * (g.one + w.scale(I))).scale(half)
    return plus, minus


def idempotent_items(q: QuasiHopfQ):
    ep, em = special_idempotents(q)
    g = q.g
    binv = q.cfg.bpow(-1)
    items = [
        ("e1+^2 - e1+", ep * ep - ep),
        ("e1-^2 - e1-", em * em - em),
        ("e1+ e1-", ep * em),
        ("e1- e1+", em * ep),
        ("e1+ + e1- - e1", ep + em - g.e1),
        ("e1+ central", 0 if is_central(ep) else 1),
        ("e1- central", 0 if is_central(em) else 1),
        ("vInv e1+ - beta^-1 e1+", q.vInv * ep - ep.scale(binv)),
        ("vInv e1- + beta^-1 e1-", q.vInv * em + em.scale(binv)),
    ]
    return items


# ---------------------------------------------------------------------------
# theta: U_1 (x) ... (x) U_N -> Q e0

# local basis of U_i, in this order: e0, f-_i e0, f+_i e0, f+_i f-_i e0
_LOCAL_WORD = (0, 2, 1, 3)   # index -> per-index word (1 = f+, 2 = f-, 3 = f+f-)
_WORD_LOCAL = {w: j for j, w in enumerate(_LOCAL_WORD)}


def theta_map(n: int, u: dict) -> AlgElement:
    """u maps N-tuples of local indices (0..3) to coefficients."""
    e0 = AlgElement(n, {0: mpq(1, 2), mono(0, 2): mpq(1, 2)})
    out = AlgElement(n)
    for idx, c in u.items():
        if len(idx) != n:
            raise ValueError("tensor length must equal N")
        mask = 0
        for i, j in enumerate(idx):
            mask |= _LOCAL_WORD[j] << (2 * i)
        out = out + (AlgElement.basis(n, mono(mask)) * e0).scale(c)
    return out


def theta_inverse(z: AlgElement) -> dict:
    """Inverse of theta on Z_Lambda; rejects anything outside it."""
    n = z.n
    u = {}
    for key, c in z.terms.items():
        if key & 3 == 0:
            mask = key >> 2
            if bin(mask).count("1") % 2:
                raise ValueError("argument is not in Z_Lambda (odd f-degree)")
            idx = tuple(_WORD_LOCAL[(mask >> (2 * i)) & 3] for i in range(n))
            u[idx] = c * 2
    if theta_map(n, u) != z:
        raise ValueError("argument is not in Z_Lambda")
    return u


# ---------------------------------------------------------------------------

@dataclass
class CenterBasis:
    n: int
    zP: list
    zLambda: list
    e1Plus: AlgElement
    e1Minus: AlgElement
    kernel: list

    @property
    def full(self) -> list[AlgElement]:
        return list(self.zP) + list(self.zLambda)

    @cached_property
    def coordinatizer(self) -> Coordinatizer:
        return Coordinatizer([dict(b.terms) for b in self.full], ONE)

    def coords(self, z: AlgElement):
        return self.coordinatizer.coords(dict(z.terms))

    def labels(self) -> list[str]:
        from .algebra import mono_str
        out = ["phi_P0+", "phi_X1+", "phi_X1-"]
        for m in even_masks(self.n):
            out.append((mono_str(mono(m)) if m else "1") + " e0")
        return out


def closed_form_center(q: QuasiHopfQ):
    g = q.g
    n = q.n
    nu = q.cfg.nu
    b2 = q.cfg.bpow(2)
    ep, em = special_idempotents(q)
    phi_p = (g.K * g.e0 * g.top()).scale(CycScalar(nu * 2 ** (3 * n)) * b2)
    phi_x1p = ep.scale(nu * 2 ** (n + 1))
    phi_x1m = em.scale(-nu * 2 ** (n + 1))
    zl = [AlgElement.basis(n, mono(m)) * g.e0 for m in even_masks(n)]
    return [phi_p, phi_x1p, phi_x1m], zl, ep, em


def compute_center(cfg_or_q) -> CenterBasis:
    q = cfg_or_q if isinstance(cfg_or_q, QuasiHopfQ) else QuasiHopfQ(cfg_or_q)
    n = q.n
    kernel = center_kernel(n)
    if len(kernel) != center_dimension(n):
        raise ArithmeticError(
            f"centre kernel has dimension {len(kernel)}, expected {center_dimension(n)}")
    zp, zl, ep, em = closed_form_center(q)
    return CenterBasis(n, zp, zl, ep, em, kernel)


def center_items(cb: CenterBasis):
    n = cb.n
    dim = center_dimension(n)
    full = [dict(b.terms) for b in cb.full]
    kern = [dict(b.terms) for b in cb.kernel]
    rf, rk, both = rank(full), rank(kern), rank(full + kern)
    items = [
        ("kernel dimension", abs(len(cb.kernel) - dim)),
        ("closed-form basis size", abs(len(full) - dim)),
        ("closed-form basis independent", dim - rf),
        ("closed-form span = kernel span", (both - rf) + (both - rk)),
    ]
    for lab, z in zip(cb.labels(), cb.full):
        items.append((f"{lab} central", 0 if is_central(z) else 1))
    # Z_Lambda closed under products, annihilated by e1+-
    zl = cb.zLambda
    zl_coord = Coordinatizer([dict(z.terms) for z in zl], ONE)
    bad = 0
    for a in zl:
        for b in zl:
            if zl_coord.coords(dict((a * b).terms)) is None:
                bad += 1
    items.append(("Z_Lambda closed under products", bad))
    items.append(("e1+- annihilate Z_Lambda",
                  sum(1 for z in zl if cb.e1Plus * z or cb.e1Minus * z)))
    return items, {"dimension": len(cb.kernel)}


def coordinate_change(cb: CenterBasis) -> list[list]:
    """Matrix whose column j holds the coordinates of kernel vector j in the closed-form basis."""
    cols = [cb.coords(k) for k in cb.kernel]
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(cb.full))]


__all__ = [
    "CenterBasis", "compute_center", "center_dimension", "center_kernel", "is_central",
    "special_idempotents", "idempotent_items", "theta_map", "theta_inverse",
    "even_masks", "center_items", "coordinate_change", "QConfig",
]
