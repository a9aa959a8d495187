"""The quasi-bialgebra Q-hat(N, beta) on the algebra of Q, and the twist zeta relating it to Q."""

from __future__ import annotations

from functools import cached_property

from .algebra import AlgElement, TensorElement, product, tensor
from .linalg import Coordinatizer
from .quasihopf import ASSOC_AS_GIVEN, ASSOC_INVERTED, Bialgebra, QConfig, QuasiHopfQ
from .scalars import ONE, CycScalar, I


def tensor_inverse(x: TensorElement, unit: TensorElement | None = None) -> TensorElement:
    """Exact inverse of x as a polynomial in x, found from its Krylov sequence.

    With `unit` an idempotent commuting with x, the inverse is taken in unit A unit.
    """
    one = TensorElement.one(x.n, x.k) if unit is None else unit
    x = x * one
    powers = [one]
    while True:
        nxt = powers[-1] * x
        if Coordinatizer([dict(p.terms) for p in powers], ONE).coords(dict(nxt.terms)) is not None:
            break
        powers.append(nxt)
    shifted = [p * x for p in powers]
    try:
        r = Coordinatizer([dict(p.terms) for p in shifted], ONE).coords(dict(one.terms))
    except ValueError:
        r = None
    if r is None:
        raise ArithmeticError("tensor element is not invertible")
    out = TensorElement(x.n, x.k)
    for c, p in zip(r, powers):
        out = out + p.scale(c)
    return out


class Chains:
    """Formal sum of ordered products of small tensor factors.

    Multiplying out only at the end, sector by sector, keeps every intermediate
    product no larger than the running result."""

    def __init__(self, chains):
        self.chains = [list(c) for c in chains]

    def __mul__(self, other: "Chains") -> "Chains":
        return Chains([a + b for a in self.chains for b in other.chains])

    def map(self, fn) -> "Chains":
        """Apply a unital algebra map factor by factor."""
        return Chains([[fn(f) for f in c] for c in self.chains])

    def project(self, unit: TensorElement) -> "Chains":
        """Restrict to a central idempotent; chains with a vanishing factor drop out."""
        out = []
        for c in self.chains:
            fs = [f * unit for f in c]
            if all(fs):
                out.append(fs)
        return Chains(out)

    def expand(self, unit: TensorElement) -> TensorElement:
        total = TensorElement(unit.n, unit.k)
        for c in self.chains:
            total = total + product(c, unit)
        return total


class QHat(Bialgebra):
    """Coproduct, coassociator and R-matrix of Q-hat."""

    def __init__(self, cfg: QConfig, assoc_convention: str = ASSOC_INVERTED):
        super().__init__(cfg.n)
        self.cfg = cfg
        self.assoc_convention = assoc_convention
        g = self.g
        n = self.n
        self.sign_n = 1 if n % 2 == 0 else -1
        kk = tensor(g.K, g.K)
        e11 = tensor(g.e1, g.e1)
        self._delta_K = kk - (e11 * kk).scale(1 + self.sign_n)
        kinv = g.Kp(-1)
        self._delta_f = {}
        for i in range(1, n + 1):
            for s in (+1, -1):
                f = g.f(i, s)
                t = tensor(kinv, f)
                self._delta_f[(i, s)] = tensor(f, g.one) + t - (e11 * t).scale(1 + self.sign_n)

    def delta_K(self):
        return self._delta_K

    def delta_f(self, i, sign):
        return self._delta_f[(i, sign)]

    # -- helpers ----------------------------------------------------------
    def _t(self, *factors) -> TensorElement:
        return tensor(*factors)

    def _one(self, k: int) -> TensorElement:
        return TensorElement.one(self.n, k)

    # -- coassociator components -------------------------------------------
    def phi010_k(self, k: int) -> TensorElement:
        g = self.g
        one3 = self._one(3)
        a = one3 + self._t(g.fp(k) * g.K, g.K, g.fm(k)).scale(1 + I)
        b = one3 + self._t(g.fm(k) * g.K, g.K, g.fp(k)).scale(1 - I)
        return a * b

    def phi101_k(self, k: int) -> TensorElement:
        g = self.g
        one3 = self._one(3)
        a = (one3 + self._t(g.one, g.fp(k) * g.K, g.fm(k)).scale(1 + I)
             + self._t(g.fm(k) * g.K, g.fp(k), g.one).scale(1 - I))
        b = (one3 + self._t(g.fp(k) * g.K, g.fm(k), g.one).scale(1 + I)
             + self._t(g.one, g.fm(k) * g.K, g.fp(k)).scale(1 - I))
        return a * b

    def _phi111_parts(self, k: int):
        g = self.g
        one3 = self._one(3)
        fmfp = g.fm(k) * g.fp(k)
        x1 = (self._t(g.one, g.fp(k) * g.K, g.fm(k)) + self._t(g.fp(k) * g.K, g.K, g.fm(k))
              - self._t(g.fp(k) * g.K, g.fm(k), g.one) + self._t(g.one, fmfp, g.one))
        x2 = (self._t(g.one, g.fm(k) * g.K, g.fp(k)) + self._t(g.fm(k) * g.K, g.K, g.fp(k))
              - self._t(g.fm(k) * g.K, g.fp(k), g.one) - self._t(g.one, fmfp, g.one))
        a = one3 + x1.scale(I - 1)
        b = one3 - x2.scale(I - 1)
        c = one3 - self._t(g.one, fmfp, g.one).scale(2)
        return a, b, c

    def phi111_k(self, k: int) -> TensorElement:
        a, b, c = self._phi111_parts(k)
        return a * b * c

    def _phi_factors(self):
        g = self.g
        n = self.n
        ks = range(1, n + 1)
        pre101 = self._t(g.Kp(n - 1).scale((-1) ** (n - 1)), g.Kp(n - 1), g.one)
        post101 = self._t(g.Kp(n - 1), g.K, g.one)
        c111 = -(I ** n) * self.cfg.bpow(2)
        pre111 = self._t(g.Kp(n - 1), g.one, g.one).scale(c111)
        post111 = self._t(g.Kp(n - 1), g.Kp(n), g.one)
        return {
            (0, 1, 0): [self.phi010_k(k) for k in ks],
            (1, 0, 1): [pre101] + [self.phi101_k(k) for k in ks] + [post101],
            (1, 1, 1): [pre111] + [self.phi111_k(k) for k in ks] + [post111],
        }

    def _assemble3(self, comps) -> TensorElement:
        g = self.g
        es = (g.e0, g.e1)
        out = TensorElement(self.n, 3)
        for a in (0, 1):
            for b in (0, 1):
                for c in (0, 1):
                    sector = self._t(es[a], es[b], es[c])
                    comp = comps.get((a, b, c))
                    out = out + (sector if comp is None else comp * sector)
        return out

    def _sectors3(self):
        es = (self.g.e0, self.g.e1)
        return [((a, b, c), self._t(es[a], es[b], es[c]))
                for a in (0, 1) for b in (0, 1) for c in (0, 1)]

    def phi_chains(self) -> Chains:
        factors = self._phi_factors()
        return Chains([factors.get(sec, []) + [unit] for sec, unit in self._sectors3()])

    @cached_property
    def Phi(self) -> TensorElement:
        return self.phi_chains().expand(self._one(3))

    @cached_property
    def PhiInv(self) -> TensorElement:
        factors = self._phi_factors()
        return self._assemble3(self._sector_inverses(self.phi_inverse_factors, self._units(factors)))

    # -- R-matrix ---------------------------------------------------------
    @cached_property
    def rhoK(self) -> TensorElement:
        g = self.g
        w = g.omega_minus
        return (self._one(2) + self._t(w, g.one) + self._t(g.one, w) - self._t(w, w)).scale(CycScalar("1/2"))

    def r_k(self, sector, k: int) -> TensorElement:
        g = self.g
        one2 = self._one(2)
        fp, fm, K = g.fp(k), g.fm(k), g.K
        fmfp = fm * fp
        t = self._t
        if sector == (0, 0):
            return one2 - t(fm * K, fp).scale(2)
        if sector == (0, 1):
            return (one2 - t(fm * K, fp).scale(1 + I) - t(fp * K, fm).scale(1 + I)
                    + t(fmfp, g.one).scale(1 - I) + t(fmfp, fmfp).scale(2 * I))
        if sector == (1, 0):
            return (one2 + t(fm * K, fp).scale(1 + I) + t(fp * K, fm).scale(1 + I)
                    + t(g.one, fmfp).scale(1 + I) - t(fmfp, fmfp).scale(2 * I))
        return (one2 - t(fm * K, fp).scale(2 * I) + t(g.one, fmfp).scale(I - 1)
                - t(fmfp, g.one).scale(1 + I) + t(fmfp, fmfp).scale(2))

    def _r_factors(self):
        g = self.g
        n = self.n
        ks = range(1, n + 1)
        rho = self.rhoK
        c11 = CycScalar(self.sign_n) * I * self.cfg.bpow(1)
        comps = {}
        for sec in ((0, 0), (0, 1), (1, 0), (1, 1)):
            prod = [self.r_k(sec, k) for k in ks]
            if sec[0] == 0:
                comps[sec] = [rho] + prod
            elif sec == (1, 0):
                comps[sec] = [rho] + prod + [self._t(g.one, g.K)]
            else:
                comps[sec] = ([rho, self._t(g.one, g.Kp(n - 1)).scale(c11)] + prod
                              + [self._t(g.Kp(n), g.one)])
        return comps

    def _products(self, factors):
        return {sec: product(fs, self._one(len(sec))) for sec, fs in factors.items()}

    @staticmethod
    def _inverse_factors(factors, units):
        return {sec: [tensor_inverse(f, units[sec]) for f in reversed(fs)]
                for sec, fs in factors.items()}

    def _sector_inverses(self, inverses, units):
        """Inverse of each sector component as the reversed product of factor inverses."""
        return {sec: product(invs, units[sec]) for sec, invs in inverses.items()}

    def _units(self, factors):
        es = (self.g.e0, self.g.e1)
        return {sec: self._t(*(es[a] for a in sec)) for sec in factors}

    @cached_property
    def phi_inverse_factors(self):
        factors = self._phi_factors()
        return self._inverse_factors(factors, self._units(factors))

    @cached_property
    def r_inverse_factors(self):
        factors = self._r_factors()
        return self._inverse_factors(factors, self._units(factors))

    def _assemble2(self, comps) -> TensorElement:
        g = self.g
        es = (g.e0, g.e1)
        out = TensorElement(self.n, 2)
        for (a, b), comp in comps.items():
            out = out + comp * self._t(es[a], es[b])
        return out

    @cached_property
    def R(self) -> TensorElement:
        return self._assemble2(self._products(self._r_factors()))

    @cached_property
    def RInv(self) -> TensorElement:
        factors = self._r_factors()
        return self._assemble2(self._sector_inverses(self.r_inverse_factors, self._units(factors)))

    # -- twist ------------------------------------------------------------
    def zeta10_k(self, k: int, inverse: bool = False) -> TensorElement:
        g = self.g
        one2 = self._one(2)
        fpfm = g.fp(k) * g.fm(k)
        t = self._t
        if not inverse:
            return (one2 + t(g.one, fpfm).scale(1 - I) + t(g.fm(k) * g.K, g.fp(k)).scale(1 - I)
                    + t(g.fp(k) * g.K, g.fm(k)).scale(1 + I) - t(fpfm, fpfm).scale(2))
        return (one2 + t(g.one, fpfm).scale(1 + I) - t(g.fm(k) * g.K, g.fp(k)).scale(1 - I)
                - t(g.fp(k) * g.K, g.fm(k)).scale(1 + I) - t(fpfm, fpfm).scale(2))

    def zeta11_k(self, k: int, inverse: bool = False) -> TensorElement:
        g = self.g
        fpfm = g.fp(k) * g.fm(k)
        c = (1 - I) if inverse else (1 + I)
        return self._one(2) - self._t(g.one, fpfm).scale(c)

    def zeta_chains(self, inverse: bool = False) -> Chains:
        g = self.g
        n = self.n
        ks = list(range(1, n + 1))
        t = self._t
        if not inverse:
            z10 = [self.zeta10_k(k) for k in ks] + [t(g.one, g.K)]
            z11 = [self.zeta11_k(k) for k in ks] + [t(g.one, g.Kp(n - 1))]
        else:
            z10 = [t(g.one, g.Kp(-1))] + [self.zeta10_k(k, True) for k in ks]
            z11 = [t(g.one, g.Kp(1 - n))] + [self.zeta11_k(k, True) for k in ks]
        return Chains([[t(g.e0, g.one)], z10 + [t(g.e1, g.e0)], z11 + [t(g.e1, g.e1)]])

    def _zeta(self, inverse: bool) -> TensorElement:
        return self.zeta_chains(inverse).expand(self._one(2))

    @cached_property
    def zeta(self) -> TensorElement:
        return self._zeta(False)

    @cached_property
    def zetaInv(self) -> TensorElement:
        return self._zeta(True)

    # -- twisted structures ----------------------------------------------
    def twisted_coproduct(self, a: AlgElement) -> TensorElement:
        return self.zeta * self.coproduct(a) * self.zetaInv

    def twisted_R(self) -> TensorElement:
        return self.zeta.permute((1, 0)) * self.R * self.zetaInv

    def twisted_Phi(self) -> TensorElement:
        """(zeta x 1)(Delta x id)(zeta) Phi (id x Delta)(zeta^-1)(1 x zeta^-1), one sector at a time."""
        z, zi = self.zeta_chains(), self.zeta_chains(True)
        pieces = [
            z.map(lambda f: f.place((0, 1), 3)),
            z.map(lambda f: self.delta_on_leg(f, 0)),
            self.phi_chains(),
            zi.map(lambda f: self.delta_on_leg(f, 1)),
            zi.map(lambda f: f.place((1, 2), 3)),
        ]
        out = TensorElement(self.n, 3)
        for _, unit in self._sectors3():
            sector = Chains([[]])
            for piece in pieces:
                sector = sector * piece.project(unit)
            out = out + sector.expand(unit)
        return out

    def inverse_factor_items(self):
        """f f^-1 = sector unit for every factor of Phi and R; PhiInv and RInv are built from these."""
        items = []
        for label, factors, inverses in (("Phi", self._phi_factors(), self.phi_inverse_factors),
                                         ("R", self._r_factors(), self.r_inverse_factors)):
            units = self._units(factors)
            for sec, fs in factors.items():
                tag = "".join(map(str, sec))
                for j, (f, fi) in enumerate(zip(fs, reversed(inverses[sec]))):
                    items.append((f"{label}{tag} factor {j} inverse", f * fi - units[sec]))
        return items


def build_qhat(cfg: QConfig) -> QHat:
    return QHat(cfg)


# ---------------------------------------------------------------------------
# checks

def structure_items(qh: QHat):
    n = qh.n
    g = qh.g
    one2, one3 = TensorElement.one(n, 2), TensorElement.one(n, 3)
    items = [
        ("zeta zetaInv - 1", qh.zeta * qh.zetaInv - one2),
        ("zetaInv zeta - 1", qh.zetaInv * qh.zeta - one2),
        ("(eps x id)(zeta) - 1", qh.counit_on_leg(qh.zeta, 0).to_algelement() - g.one),
        ("(id x eps)(zeta) - 1", qh.counit_on_leg(qh.zeta, 1).to_algelement() - g.one),
        ("rho(K)^2 - 1", qh.rhoK * qh.rhoK - one2),
        ("zeta sector 00", qh.zeta * tensor(g.e0, g.e0) - tensor(g.e0, g.e0)),
    ]
    items += qh.inverse_factor_items()
    if n == 1:
        # expanded products grow as |Phi|^2, so only at the smallest rank
        items += [("Phi PhiInv - 1", qh.Phi * qh.PhiInv - one3),
                  ("R RInv - 1", qh.R * qh.RInv - one2)]
    return items


def twist_items(qh: QHat, q: QuasiHopfQ | None = None, with_phi: bool = True):
    q = q or QuasiHopfQ(qh.cfg)
    items = []
    for name, x in q.g.generators():
        items.append((f"Delta_zeta({name}) - Delta({name})", qh.twisted_coproduct(x) - q.coproduct(x)))
    items.append(("R_zeta - R", qh.twisted_R() - q.R))
    if with_phi:
        items.append(("Phi_zeta - Phi", qh.twisted_Phi() - q.Phi))
    return items


def check_twist_equivalence(cfg: QConfig, with_phi: bool = True, budget=None):
    from .verify import run_check
    qh = QHat(cfg)

    def run(b):
        items = structure_items(qh)
        b.check()
        items += twist_items(qh, with_phi=with_phi)
        return items
    return run_check("twist_equivalence", "Delta_zeta = Delta, R_zeta = R, Phi_zeta = Phi", run, budget)


def check_qhat_axioms(cfg: QConfig, budget=None):
    """Quasi-bialgebra and quasi-triangular checks on (Delta-hat, Phi-hat, R-hat)."""
    from .verify import check_quasi_bialgebra, check_quasitriangular, check_relations_coproduct
    qh = QHat(cfg)
    return [
        check_relations_coproduct(qh, budget=budget),
        check_quasi_bialgebra(qh, full_basis=True, budget=budget),
        check_quasitriangular(qh, budget=budget),
    ]


def commutation_lemma_items(qh: QHat, projected: bool = False):
    """Commutators of distinct-index components; optionally projected to their sector."""
    n = qh.n
    g = qh.g
    es = (g.e0, g.e1)
    items = []

    def sec3(a, b, c):
        return tensor(es[a], es[b], es[c]) if projected else TensorElement.one(n, 3)

    def sec2(a, b):
        return tensor(es[a], es[b]) if projected else TensorElement.one(n, 2)

    kkk = tensor(g.K, g.K, g.K)
    phis = {(0, 1, 0): qh.phi010_k, (1, 0, 1): qh.phi101_k, (1, 1, 1): qh.phi111_k}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for abc, fn in phis.items():
                s = sec3(*abc)
                x, y = fn(i) * s, fn(j) * s
                items.append((f"[Phi{''.join(map(str, abc))}_({i}), ({j})]", x * y - y * x))
            for ab, fn in (((1, 0), qh.zeta10_k), ((1, 1), qh.zeta11_k)):
                s = sec2(*ab)
                x, y = fn(i) * s, fn(j) * s
                items.append((f"[zeta{ab[0]}{ab[1]}_({i}), ({j})]", x * y - y * x))
            x = qh.delta_on_leg(qh.zeta11_k(i) * sec2(1, 1), 0)
            y = qh.phi101_k(j) * sec3(1, 0, 1)
            items.append((f"[(Delta x id)(zeta11_({i})), Phi101_({j})]", x * y - y * x))
            x = (qh.zeta10_k(i) * sec2(1, 0)).place((0, 1), 3)
            y = qh.delta_on_leg(qh.zeta11_k(j) * sec2(1, 1), 1)
            items.append((f"[zeta10_({i}) x 1, (id x Delta)(zeta11_({j}))]", x * y - y * x))
        x = qh.phi101_k(i)
        items.append((f"[Phi101_({i}), K x K x K]", x * kkk - kkk * x))
    return items


def spot_check_commutation_lemma(cfg: QConfig, projected: bool = False, budget=None):
    from .verify import run_check
    qh = QHat(cfg)
    return run_check("commutation_lemma", "distinct-index components commute",
                     lambda b: commutation_lemma_items(qh, projected), budget)


__all__ = [
    "QHat", "build_qhat", "structure_items", "twist_items", "check_twist_equivalence",
    "check_qhat_axioms", "commutation_lemma_items", "spot_check_commutation_lemma",
    "tensor_inverse", "Chains", "ASSOC_AS_GIVEN", "ASSOC_INVERTED",
]
