"""Simple and projective Q-modules, traces and internal characters.

Every module is realised inside the left regular representation: it carries an
explicit basis of elements of Q, and the action of a in Q on basis vector b_j is
the coordinate vector of a*b_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .algebra import AlgElement, all_monomials, fbit, mono
from .center import is_central, special_idempotents
from .linalg import Coordinatizer, nullspace, rank
from .quasihopf import QConfig, QuasiHopfQ
from .scalars import ONE, ZERO, CycScalar, I

LABELS = ("X0+", "X0-", "X1+", "X1-", "P0+", "P0-", "regular")


@dataclass
class ModuleRep:
    label: str
    basis: list
    n: int
    _coord: Coordinatizer = field(repr=False, default=None)
    _mats: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        self._coord = Coordinatizer([dict(b.terms) for b in self.basis], ONE)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def act(self, a: AlgElement) -> dict:
        """Sparse matrix {(row, col): value} of a acting on the module."""
        out = {}
        for j, b in enumerate(self.basis):
            col = self._coord.coords(dict((a * b).terms))
            if col is None:
                raise ArithmeticError(f"{self.label} is not stable under the action")
            for i, x in enumerate(col):
                if x:
                    out[(i, j)] = x
        return out

    def generator_matrix(self, name: str) -> dict:
        if name not in self._mats:
            g = dict(_gens(self.n))
            self._mats[name] = self.act(g[name])
        return self._mats[name]

    def dense(self, name: str) -> list[list]:
        m = self.generator_matrix(name)
        return [[m.get((i, j), ZERO) for j in range(self.dim)] for i in range(self.dim)]

    def trace(self, a: AlgElement) -> CycScalar:
        out = ZERO
        for j, b in enumerate(self.basis):
            col = self._coord.coords(dict((a * b).terms))
            if col is None:
                raise ArithmeticError(f"{self.label} is not stable under the action")
            out = out + col[j]
        return out


def _gens(n: int):
    from .algebra import Gens
    return Gens(n).generators()


# ---------------------------------------------------------------------------
# sparse matrix helpers

def sp_mul(a: dict, b: dict) -> dict:
    rows_b: dict[int, list] = {}
    for (k, j), v in b.items():
        rows_b.setdefault(k, []).append((j, v))
    out: dict = {}
    for (i, k), x in a.items():
        for j, y in rows_b.get(k, ()):
            key = (i, j)
            out[key] = out[key] + x * y if key in out else x * y
    return {k: v for k, v in out.items() if v}


def sp_add(a: dict, b: dict, sb=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        v = v if sb == 1 else -v
        out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if v}


def sp_identity(d: int, c=ONE) -> dict:
    return {(i, i): CycScalar.coerce(c) for i in range(d)}


def sp_scale(a: dict, c) -> dict:
    return {k: v * c for k, v in a.items() if v * c}


# ---------------------------------------------------------------------------

def _fmono(n: int, mask: int) -> AlgElement:
    return AlgElement.basis(n, mono(mask))


def build_module(cfg_or_q, label: str) -> ModuleRep:
    q = cfg_or_q if isinstance(cfg_or_q, QuasiHopfQ) else QuasiHopfQ(cfg_or_q)
    n = q.n
    g = q.g
    half = CycScalar(mpq(1, 2))
    if label not in LABELS:
        raise ValueError(f"unknown module label {label!r}")
    if label == "regular":
        basis = [AlgElement.basis(n, k) for k in all_monomials(n)]
    elif label[0] == "P" or label[:2] == "X0":
        s = 1 if label[-1] == "+" else -1
        e0s = ((g.one + g.K.scale(s)) * g.e0).scale(half)
        if label[0] == "P":
            basis = [_fmono(n, m) * e0s for m in range(1 << (2 * n))]
        else:
            basis = [g.top() * e0s]
    else:
        ep, em = special_idempotents(q)
        e = ep if label[-1] == "+" else em
        minus = 0
        for i in range(1, n + 1):
            minus |= fbit(i, -1)
        v = _fmono(n, minus) * e
        basis = []
        for sub in range(1 << n):
            plus = 0
            for i in range(n):
                if sub >> i & 1:
                    plus |= fbit(i + 1, +1)
            # prod over chosen k of f+_k, increasing k, applied to v
            basis.append(_fmono(n, plus) * v)
    return ModuleRep(label, basis, n)


def relation_items(V: ModuleRep):
    """Defining relations of Q on the generator matrices."""
    n, d = V.n, V.dim
    K = V.generator_matrix("K")
    eye = sp_identity(d)
    K2 = sp_mul(K, K)
    e1 = sp_scale(sp_add(eye, K2, -1), CycScalar(mpq(1, 2)))
    items = [("K^4 - 1", len(sp_add(sp_mul(K2, K2), eye, -1)))]
    fs = [(f"f{s}{i}", V.generator_matrix(f"f{s}{i}")) for i in range(1, n + 1) for s in "+-"]
    for name, f in fs:
        items.append((f"{{{name}, K}}", len(sp_add(sp_mul(f, K), sp_mul(K, f)))))
    for a, (na, fa) in enumerate(fs):
        for nb, fb in fs[a:]:
            anti = sp_add(sp_mul(fa, fb), sp_mul(fb, fa))
            if na[2:] == nb[2:] and na[1] != nb[1]:
                anti = sp_add(anti, e1, -1)
            items.append((f"{{{na}, {nb}}}", len(anti)))
    return items


def is_simple(V: ModuleRep) -> bool:
    """Burnside: V is simple iff the image of Q is all of End(V)."""
    rows = [dict(V.act(AlgElement.basis(V.n, k))) for k in all_monomials(V.n)]
    return rank(rows) == V.dim ** 2


# ---------------------------------------------------------------------------
# traces and characters

def trace_char(q: QuasiHopfQ, V: ModuleRep, a: AlgElement) -> CycScalar:
    """chi_V(a) = Tr_V(kappa a)."""
    return V.trace(q.kappa * a)


class _CharCache:
    def __init__(self, q, V):
        self.q, self.V = q, V
        self.cache: dict[int, CycScalar] = {}

    def chi_S(self, key: int) -> CycScalar:
        # chi_V(S(monomial))
        hit = self.cache.get(key)
        if hit is None:
            hit = trace_char(self.q, self.V, self.q.antipode_mono(key))
            self.cache[key] = hit
        return hit


def phi_central(q: QuasiHopfQ, V: ModuleRep) -> AlgElement:
    """phi_V = sum c' chi_V(S(c''))."""
    cc = _CharCache(q, V)
    acc: dict[int, CycScalar] = {}
    for (a, b), c in q.coproduct(q.c_integral).terms.items():
        t = cc.chi_S(b)
        if t:
            acc[a] = acc[a] + c * t if a in acc else c * t
    return AlgElement(q.n, acc)


def chi_central(q: QuasiHopfQ, V: ModuleRep) -> AlgElement:
    """Hopf-link element sum Tr_V(kappa S(M2)) M1."""
    cc = _CharCache(q, V)
    acc: dict[int, CycScalar] = {}
    for (a, b), c in q.M.terms.items():
        t = cc.chi_S(b)
        if t:
            acc[a] = acc[a] + c * t if a in acc else c * t
    return AlgElement(q.n, acc)


def phi_closed_forms(q: QuasiHopfQ) -> dict:
    g = q.g
    n = q.n
    nu = q.cfg.nu
    b2 = q.cfg.bpow(2)
    ep, em = special_idempotents(q)
    out = {}
    for s, lab in ((1, "X0+"), (-1, "X0-")):
        out[lab] = ((g.K + g.one.scale(s)) * g.e0 * g.top()).scale(CycScalar(nu * 2 ** n) * b2)
    out["X1+"] = ep.scale(nu * 2 ** (n + 1))
    out["X1-"] = em.scale(-nu * 2 ** (n + 1))
    out["P0+"] = (out["X0+"] + out["X0-"]).scale(2 ** (2 * n - 1))
    return out


def chi_closed_forms(q: QuasiHopfQ) -> dict:
    g = q.g
    n = q.n
    b2 = q.cfg.bpow(2)
    ep, em = special_idempotents(q)
    ktop = (g.K * g.e0 * g.top()).scale(b2 * 4 ** n)
    return {
        "X0+": g.e1 + g.e0,
        "X0-": g.e1 - g.e0,
        "X1+": ktop + (ep - em).scale(2 ** n),
        "X1-": -ktop + (ep - em).scale(2 ** n),
    }


def character_items(q: QuasiHopfQ, modules: dict | None = None):
    modules = modules or {lab: build_module(q, lab) for lab in ("X0+", "X0-", "X1+", "X1-", "P0+")}
    items = []
    phis, chis = {}, {}
    pcf, ccf = phi_closed_forms(q), chi_closed_forms(q)
    for lab, V in modules.items():
        phis[lab] = phi_central(q, V)
        chis[lab] = chi_central(q, V)
        items.append((f"phi_{lab} closed form", phis[lab] - pcf[lab]))
        items.append((f"chi_{lab} central", 0 if is_central(chis[lab]) else 1))
        if lab in ccf:
            items.append((f"chi_{lab} closed form", chis[lab] - ccf[lab]))
    simples = ("X0+", "X0-", "X1+", "X1-")
    if all(s in phis for s in simples):
        items.append(("phi on simples injective",
                      4 - rank([dict(phis[s].terms) for s in simples])))
        items.append(("chi on simples injective",
                      4 - rank([dict(chis[s].terms) for s in simples])))
    return items, {"phi": phis, "chi": chis}


def trace_identity_items(q: QuasiHopfQ, modules: dict | None = None):
    """Tr_{X1+-}(K^m prod f-_i f+_i) = (+-i)^m."""
    g = q.g
    n = q.n
    items = []
    prod = g.one
    for i in range(1, n + 1):
        prod = prod * g.fm(i) * g.fp(i)
    for lab, s in (("X1+", 1), ("X1-", -1)):
        V = (modules or {}).get(lab) or build_module(q, lab)
        for m in range(4):
            val = V.trace(g.Kp(m) * prod)
            expect = (I * s) ** m
            items.append((f"Tr_{lab}(K^{m} prod f-f+)", 0 if val == expect else 1))
    return items


# ---------------------------------------------------------------------------
# Cartan data

def eigenspace_dim(V: ModuleRep, eigenvalue) -> int:
    K = V.generator_matrix("K")
    shifted = sp_add(K, sp_identity(V.dim, eigenvalue), -1)
    rows: dict[int, dict] = {}
    for (i, j), x in shifted.items():
        rows.setdefault(i, {})[j] = x
    return V.dim - rank(rows.values())


def hom_dimension(V: ModuleRep, W: ModuleRep) -> int:
    """dim Hom_Q(V, W) as the kernel of X -> A^W X - X A^V over all generators."""
    dv, dw = V.dim, W.dim
    rows: dict[tuple, dict] = {}
    for name, _ in _gens(V.n):
        av = V.generator_matrix(name)
        aw = W.generator_matrix(name)
        # unknown X[r, c] has column index r*dv + c
        for (i, k), x in aw.items():
            for c in range(dv):
                row = rows.setdefault((name, i, c), {})
                idx = k * dv + c
                row[idx] = row.get(idx, ZERO) + x
        for (k, c), y in av.items():
            for r in range(dw):
                row = rows.setdefault((name, r, c), {})
                idx = r * dv + k
                row[idx] = row.get(idx, ZERO) - y
    return len(nullspace(rows.values(), dv * dw, ONE))


def cartan_and_basic_algebra(cfg_or_q, with_endomorphisms: bool | None = None):
    q = cfg_or_q if isinstance(cfg_or_q, QuasiHopfQ) else QuasiHopfQ(cfg_or_q)
    n = q.n
    if with_endomorphisms is None:
        with_endomorphisms = n <= 2
    mods = {lab: build_module(q, lab) for lab in ("X0+", "X0-", "X1+", "X1-", "P0+", "P0-")}
    expected_mult = 2 ** (2 * n - 1)
    # Cartan matrix in the order X0+, X0-, X1+, X1- (columns: projective covers)
    cartan = [[0] * 4 for _ in range(4)]
    for col, p in enumerate(("P0+", "P0-")):
        cartan[0][col] = eigenspace_dim(mods[p], 1)
        cartan[1][col] = eigenspace_dim(mods[p], -1)
    cartan[2][2] = 1 if is_simple(mods["X1+"]) else 0
    cartan[3][3] = 1 if is_simple(mods["X1-"]) else 0
    items = []
    for r in range(2):
        for c in range(2):
            items.append((f"multiplicity C[{r}][{c}]", abs(cartan[r][c] - expected_mult)))
    items.append(("X1+ simple projective", 1 - cartan[2][2]))
    items.append(("X1- simple projective", 1 - cartan[3][3]))
    for lab in ("X0+", "X0-"):
        items.append((f"{lab} simple", 0 if is_simple(mods[lab]) else 1))
    dims = {lab: V.dim for lab, V in mods.items()}
    reg = 2 * dims["P0+"] + dims["X1+"] * dims["X1+"] + dims["X1-"] * dims["X1-"]
    items.append(("regular decomposition dimension", abs(reg - 4 ** (n + 1))))
    items.append(("dim P0+-", abs(dims["P0+"] - 4 ** n) + abs(dims["P0-"] - 4 ** n)))
    items.append(("dim X1+-", abs(dims["X1+"] - 2 ** n) + abs(dims["X1-"] - 2 ** n)))
    for lab, V in mods.items():
        items.append((f"relations on {lab}", sum(r for _, r in relation_items(V))))
    extra = {"cartan": cartan, "dims": dims}
    if with_endomorphisms:
        blocks = ("P0+", "P0-", "X1+", "X1-")
        end_dim = sum(hom_dimension(mods[a], mods[b]) for a in blocks for b in blocks)
        extra["dim_End_G"] = end_dim
        items.append(("dim End(G_Q)", abs(end_dim - (2 * 4 ** n + 2))))
    return items, extra


__all__ = [
    "ModuleRep", "build_module", "relation_items", "trace_char", "phi_central",
    "chi_central", "phi_closed_forms", "chi_closed_forms", "character_items",
    "trace_identity_items", "cartan_and_basic_algebra", "hom_dimension",
    "eigenspace_dim", "is_simple", "LABELS",
]
