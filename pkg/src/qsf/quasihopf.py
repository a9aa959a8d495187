"""Structure maps and distinguished elements of the ribbon quasi-Hopf algebra Q(N, beta)."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .algebra import (
    AlgElement,
    Gens,
    TensorElement,
    embed,
    fbit,
    mono,
    product,
    tensor,
)
from .scalars import ONE, BetaChoice, CycScalar, I, i_pow

# placement of Phi in the textbook quasi-bialgebra axioms
ASSOC_AS_GIVEN = "Phi"
ASSOC_INVERTED = "Phi^-1"


@dataclass(frozen=True)
class QConfig:
    n: int
    beta_exp: int = None  # defaults to b = N mod 8 when omitted
    nu: int = 1

    def __post_init__(self):
        b = self.n if self.beta_exp is None else self.beta_exp
        choice = BetaChoice(self.n, b)  # validates the parity constraint
        object.__setattr__(self, "beta_exp", choice.b)
        if self.nu not in (1, -1):
            raise ValueError("nu must be +1 or -1")

    @property
    def beta(self) -> BetaChoice:
        return BetaChoice(self.n, self.beta_exp)

    def bpow(self, k: int) -> CycScalar:
        return self.beta.pow(k)

    def label(self) -> str:
        return f"N={self.n}, beta=zeta^{self.beta_exp}, nu={self.nu}"


def beta_choices(n: int) -> list[int]:
    """The four admissible exponents b with beta = zeta_8^b."""
    return [b for b in range(8) if (b - n) % 2 == 0]


class Bialgebra:
    """Shared leg-wise machinery for Q and Q-hat: subclasses define generator images."""

    n: int

    def __init__(self, n: int):
        self.n = n
        self.g = Gens(n)
        self._delta_cache: dict[int, TensorElement] = {}
        self._delta_terms: dict[int, dict] = {}

    # generator coproducts
    def delta_K(self) -> TensorElement:
        raise NotImplementedError

    def delta_f(self, i: int, sign: int) -> TensorElement:
        raise NotImplementedError

    def delta_mono(self, key: int) -> TensorElement:
        hit = self._delta_cache.get(key)
        if hit is not None:
            return hit
        fm, k = key >> 2, key & 3
        out = TensorElement.one(self.n, 2)
        j = 0
        while fm >> j:
            if fm >> j & 1:
                out = out * self.delta_f(j // 2 + 1, +1 if j % 2 == 0 else -1)
            j += 1
        if k:
            dk = self.delta_K()
            for _ in range(k):
                out = out * dk
        self._delta_cache[key] = out
        return out

    def _delta_leg_terms(self, key):
        t = self._delta_terms.get(key)
        if t is None:
            t = self.delta_mono(key).terms
            self._delta_terms[key] = t
        return t

    def coproduct(self, a: AlgElement) -> TensorElement:
        out = TensorElement(self.n, 2)
        acc = {}
        for key, c in a.terms.items():
            for t, v in self._delta_leg_terms(key).items():
                x = c * v
                acc[t] = acc[t] + x if t in acc else x
        out.terms = {t: v for t, v in acc.items() if v}
        return out

    def delta_op(self, a: AlgElement) -> TensorElement:
        return self.coproduct(a).permute((1, 0))

    def delta_on_leg(self, x: TensorElement, slot: int) -> TensorElement:
        return x.apply_leg(slot, self._delta_leg_terms, 2)

    @staticmethod
    def counit_mono(key: int) -> CycScalar:
        return ONE if key >> 2 == 0 else CycScalar()

    def counit(self, a: AlgElement) -> CycScalar:
        out = CycScalar()
        for key, c in a.terms.items():
            if key >> 2 == 0:
                out = out + c
        return out

    def counit_on_leg(self, x: TensorElement, slot: int) -> TensorElement:
        return x.apply_leg(slot, lambda m: {(): ONE} if m >> 2 == 0 else {}, 0)


def _inv_K_power(e: int) -> int:
    return (-e) % 4


class QuasiHopfQ(Bialgebra):
    """All structure data of Q(N, beta) with integral normalisation nu.

    Phi here maps the left-bracketed triple product to the right-bracketed one,
    so in the textbook Drinfeld axioms it appears as Phi^-1."""

    assoc_convention = ASSOC_INVERTED

    def __init__(self, cfg: QConfig):
        super().__init__(cfg.n)
        self.cfg = cfg
        g = self.g
        n = self.n
        self.sign_n = 1 if n % 2 == 0 else -1
        self._antipode_cache: dict[int, AlgElement] = {}
        # Delta(K) = K (x) K - (1 + (-1)^N)(e1 (x) e1)(K (x) K)
        kk = tensor(g.K, g.K)
        self._delta_K = kk - (tensor(g.e1, g.e1) * kk).scale(1 + self.sign_n)
        self._delta_f = {}
        for i in range(1, n + 1):
            for s, om in ((+1, g.omega_plus), (-1, g.omega_minus)):
                f = g.f(i, s)
                self._delta_f[(i, s)] = tensor(f, g.one) + tensor(om, f)

    def delta_K(self):
        return self._delta_K

    def delta_f(self, i, sign):
        return self._delta_f[(i, sign)]

    # -- antipode ---------------------------------------------------------
    def antipode_generator(self, name) -> AlgElement:
        g = self.g
        if name == "K":
            return (g.e0 + g.e1.scale(self.sign_n)) * g.K
        i, s = name
        return g.f(i, s) * (g.e0 + g.e1.scale(I * (s * self.sign_n))) * g.K

    def antipode_mono(self, key: int) -> AlgElement:
        hit = self._antipode_cache.get(key)
        if hit is not None:
            return hit
        fm, k = key >> 2, key & 3
        letters = []
        j = 0
        while fm >> j:
            if fm >> j & 1:
                letters.append((j // 2 + 1, +1 if j % 2 == 0 else -1))
            j += 1
        letters += ["K"] * k
        out = self.g.one
        for letter in reversed(letters):
            out = out * self.antipode_generator(letter)
        self._antipode_cache[key] = out
        return out

    def antipode(self, a: AlgElement) -> AlgElement:
        out = AlgElement(self.n)
        for key, c in a.terms.items():
            out = out + self.antipode_mono(key).scale(c)
        return out

    def antipode_on_leg(self, x: TensorElement, slot: int) -> TensorElement:
        return x.apply_leg(
            slot, lambda m: {(k,): c for k, c in self.antipode_mono(m).terms.items()}, 1
        )

    # -- coassociator -----------------------------------------------------
    def _phi(self, sign: int) -> TensorElement:
        g = self.g
        n = self.n
        b2 = self.cfg.bpow(2)
        last = (g.Kp(n) - g.one) * g.e0 + ((g.Kp(n)).scale(b2 * i_pow(sign * n)) - g.one) * g.e1
        return TensorElement.one(n, 3) + tensor(g.e1, g.e1, last)

    @cached_property
    def Phi(self) -> TensorElement:
        return self._phi(+1)

    @cached_property
    def PhiInv(self) -> TensorElement:
        return self._phi(-1)

    # -- antipode data ----------------------------------------------------
    @cached_property
    def alpha(self) -> AlgElement:
        return self.g.one

    @cached_property
    def beta_elem(self) -> AlgElement:
        g = self.g
        return g.e0 + (g.Kp(self.n).scale(self.cfg.bpow(2) * i_pow(self.n))) * g.e1

    # -- R-matrix ---------------------------------------------------------
    def rho(self, n_: int, m_: int) -> TensorElement:
        g = self.g
        out = TensorElement(self.n, 2)
        for i in (0, 1):
            for j in (0, 1):
                c = i_pow(-i * n_ + j * m_) * ((-1) ** (i * j))
                out = out + tensor(g.Kp(i), g.Kp(j)).scale(c * CycScalar("1/2"))
        return out

    def cartan_part(self, inverse: bool = False) -> TensorElement:
        g = self.g
        es = (g.e0, g.e1)
        out = TensorElement(self.n, 2)
        for a in (0, 1):
            for b in (0, 1):
                c = self.cfg.bpow(-a * b if inverse else a * b)
                out = out + (self.rho(a, b) * tensor(es[a], es[b])).scale(c)
        return out

    def nilpotent_factor(self, k: int, sign: int) -> TensorElement:
        """1 (x) 1 + sign * 2 f-_k omega_- (x) f+_k."""
        g = self.g
        return TensorElement.one(self.n, 2) + tensor(g.fm(k) * g.omega_minus, g.fp(k)).scale(2 * sign)

    @cached_property
    def R(self) -> TensorElement:
        facs = [self.nilpotent_factor(k, -1) for k in range(1, self.n + 1)]
        return self.cartan_part() * product(facs, TensorElement.one(self.n, 2))

    @cached_property
    def RInv(self) -> TensorElement:
        facs = [self.nilpotent_factor(k, +1) for k in range(1, self.n + 1)]
        return product(facs, TensorElement.one(self.n, 2)) * self.cartan_part(inverse=True)

    @cached_property
    def M(self) -> TensorElement:
        return self.R.permute((1, 0)) * self.R

    @cached_property
    def MInv(self) -> TensorElement:
        return self.RInv * self.RInv.permute((1, 0))

    # -- ribbon data ------------------------------------------------------
    def _prod_ff(self, coeff, with_k2: bool) -> AlgElement:
        g = self.g
        facs = []
        for k in range(1, self.n + 1):
            t = g.fp(k) * g.fm(k)
            if with_k2:
                t = t * g.K2
            facs.append(g.one + t.scale(coeff))
        return product(facs, g.one)

    @cached_property
    def v(self) -> AlgElement:
        g = self.g
        return (g.e0 - (g.K * g.e1).scale(self.cfg.bpow(1) * I)) * self._prod_ff(-2, False)

    @cached_property
    def vInv(self) -> AlgElement:
        g = self.g
        return (g.e0 - (g.K * g.e1).scale(self.cfg.bpow(-1) * I)) * self._prod_ff(2, True)

    @cached_property
    def u(self) -> AlgElement:
        g = self.g
        n = self.n
        head = g.e0 * g.K + (g.e1 * g.Kp(n)).scale(self.cfg.bpow(1) * i_pow(-n))
        return head * self._prod_ff(-2, False)

    @cached_property
    def uInv(self) -> AlgElement:
        g = self.g
        n = self.n
        head = g.e0 * g.K + (g.e1 * g.Kp(n)).scale(self.cfg.bpow(-1) * i_pow(-n))
        return head * self._prod_ff(2, True)

    @cached_property
    def g_balancing(self) -> AlgElement:
        """Closed form (e0 - (-1)^N i beta^2 e1) K."""
        g = self.g
        return (g.e0 - g.e1.scale(I * self.cfg.bpow(2) * self.sign_n)) * g.K

    def g_from_definition(self) -> AlgElement:
        return self.beta_elem * self.antipode(self.alpha) * self.vInv * self.u

    # -- Drinfeld twist ---------------------------------------------------
    @cached_property
    def fTwist(self) -> TensorElement:
        g = self.g
        n = self.n
        return (
            tensor(g.e0, g.one)
            + tensor(g.e1, g.Kp(n) * g.e0)
            + tensor(g.e1 * g.Kp(n), g.e1).scale(self.cfg.bpow(2) * i_pow(-n))
        )

    @cached_property
    def fTwistInv(self) -> TensorElement:
        g = self.g
        n = self.n
        return (
            tensor(g.e0, g.one)
            + tensor(g.e1, g.Kp(-n) * g.e0)
            + tensor(g.e1 * g.Kp(-n), g.e1).scale(self.cfg.bpow(-2) * i_pow(n))
        )

    # -- integral ---------------------------------------------------------
    @cached_property
    def c_integral(self) -> AlgElement:
        g = self.g
        coeff = CycScalar(self.cfg.nu * 2 ** self.n) * self.cfg.bpow(2)
        return (g.top() * g.e0 * (g.one + g.K)).scale(coeff)

    @cached_property
    def kappa(self) -> AlgElement:
        g = self.g
        return (g.e0 - g.e1.scale(I * self.cfg.bpow(2))) * g.K

    def lambda_hat(self, a: AlgElement) -> CycScalar:
        """Cointegral: supported on the top f-monomial with K^0."""
        val = CycScalar((-1) ** self.n * self.cfg.nu) * self.cfg.bpow(2) * CycScalar(2) ** (1 - self.n)
        return a.coeff(mono((1 << (2 * self.n)) - 1, 0)) * val


@dataclass
class StructureSet:
    cfg: QConfig
    Delta: dict
    counit: object
    Phi: TensorElement
    PhiInv: TensorElement
    S: dict
    alpha: AlgElement
    beta_elem: AlgElement
    R: TensorElement
    RInv: TensorElement
    v: AlgElement
    vInv: AlgElement
    fTwist: TensorElement
    fTwistInv: TensorElement
    u: AlgElement
    uInv: AlgElement
    g: AlgElement
    cIntegral: AlgElement
    kappa: AlgElement
    algebra: QuasiHopfQ = field(repr=False)

    def to_json(self) -> dict:
        out = {"config": {"n": self.cfg.n, "beta_exp": self.cfg.beta_exp, "nu": self.cfg.nu}}
        out["Delta"] = {k: v.to_json() for k, v in self.Delta.items()}
        out["S"] = {k: v.to_json() for k, v in self.S.items()}
        for name in ("Phi", "PhiInv", "alpha", "beta_elem", "R", "RInv", "v", "vInv",
                     "fTwist", "fTwistInv", "u", "uInv", "g", "cIntegral", "kappa"):
            out[name] = getattr(self, name).to_json()
        return out


def build_structures(cfg: QConfig) -> StructureSet:
    q = QuasiHopfQ(cfg)
    gens = q.g.generators()
    delta = {name: q.coproduct(x) for name, x in gens}
    s = {name: q.antipode(x) for name, x in gens}
    return StructureSet(
        cfg=cfg, Delta=delta, counit=q.counit, Phi=q.Phi, PhiInv=q.PhiInv, S=s,
        alpha=q.alpha, beta_elem=q.beta_elem, R=q.R, RInv=q.RInv, v=q.v, vInv=q.vInv,
        fTwist=q.fTwist, fTwistInv=q.fTwistInv, u=q.u, uInv=q.uInv, g=q.g_balancing,
        cIntegral=q.c_integral, kappa=q.kappa, algebra=q,
    )


def coproduct(cfg_or_q, a: AlgElement) -> TensorElement:
    q = cfg_or_q if isinstance(cfg_or_q, Bialgebra) else QuasiHopfQ(cfg_or_q)
    return q.coproduct(a)


def counit(a: AlgElement) -> CycScalar:
    return Bialgebra.counit(None, a)


def antipode(cfg_or_q, a: AlgElement) -> AlgElement:
    q = cfg_or_q if isinstance(cfg_or_q, QuasiHopfQ) else QuasiHopfQ(cfg_or_q)
    return q.antipode(a)


def monodromy(cfg_or_q) -> TensorElement:
    q = cfg_or_q if isinstance(cfg_or_q, QuasiHopfQ) else QuasiHopfQ(cfg_or_q)
    return q.M


def monodromy_closed_form(q: QuasiHopfQ) -> TensorElement:
    """Sector-by-sector closed form of R21 R."""
    g = q.g
    n = q.n
    es = (g.e0, g.e1)
    b2 = q.cfg.bpow(2)
    out = TensorElement(n, 2)
    one2 = TensorElement.one(n, 2)
    for a in (0, 1):
        for m in (0, 1):
            head = tensor(g.Kp(m) * es[a], g.Kp(a) * es[m]).scale((-b2) ** (a * m))
            facs = []
            for j in range(1, n + 1):
                left = one2 + tensor(g.fp(j) * g.omega_minus, g.fm(j)).scale(2 * (-1) ** m)
                right = one2 - tensor(g.fm(j) * g.omega_minus, g.fp(j)).scale(2)
                facs.append(left * right)
            out = out + head * product(facs, one2)
    return out


__all__ = [
    "QConfig", "QuasiHopfQ", "Bialgebra", "StructureSet", "build_structures",
    "coproduct", "counit", "antipode", "monodromy", "monodromy_closed_form",
    "beta_choices", "embed", "fbit",
]
