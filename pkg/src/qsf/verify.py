"""Exact verification of the (ribbon, factorisable) quasi-Hopf axioms.

Every check returns a CheckResult.  Residuals are counted as the number of
nonzero terms left after subtracting the two sides.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .algebra import AlgElement, TensorElement, all_monomials, fbit, mono, product
from .linalg import rank
from .scalars import ONE, CycScalar

from .quasihopf import ASSOC_AS_GIVEN, ASSOC_INVERTED


class BudgetExceeded(Exception):
    pass


class Budget:
    """Cooperative wall-clock budget; exact checks stop, they never approximate."""

    def __init__(self, seconds: float | None = None):
        self.deadline = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded()


@dataclass
class CheckResult:
    name: str
    status: str
    residual_terms: int = 0
    runtime_ms: int = 0
    ref: str = ""
    detail: str = ""
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "paper_ref": self.ref,
            "status": self.status,
            "residual_count": self.residual_terms,
            "runtime_ms": self.runtime_ms,
        }
        if self.detail:
            out["detail"] = self.detail
        if self.data:
            out["data"] = self.data
        return out


def run_check(name: str, ref: str, fn, budget: Budget | None = None) -> CheckResult:
    """fn returns a list of (label, residual) with residual an element or int."""
    t0 = time.monotonic()
    budget = budget or Budget()
    try:
        out = fn(budget)
    except BudgetExceeded:
        return CheckResult(name, "budget", 0, int(1000 * (time.monotonic() - t0)), ref,
                           "aborted: budget exhausted")
    if isinstance(out, tuple):
        items, extra = out
    else:
        items, extra = out, {}
    bad = []
    total = 0
    for label, res in items:
        cnt = res if isinstance(res, int) else len(res.terms)
        if cnt:
            bad.append(label)
            total += cnt
    status = "pass" if not bad else "fail"
    detail = extra.pop("detail", "")
    if bad:
        detail = (detail + "; " if detail else "") + "nonzero: " + ", ".join(bad[:10])
    return CheckResult(name, status, total, int(1000 * (time.monotonic() - t0)), ref, detail, extra)


# ---------------------------------------------------------------------------
# leg notation helpers

def legs(x: TensorElement, pattern: str, k: int | None = None) -> TensorElement:
    """Leg notation: digit j of the pattern is the slot receiving component j.

    So R21 = legs(R, '21'), R13 = legs(R, '13', 3) and, for Phi = X (x) Y (x) Z,
    Phi_312 = Y (x) Z (x) X."""
    digits = [int(c) - 1 for c in pattern]
    return x.place(digits, k or len(digits))


def _identity(n, k):
    return TensorElement.one(n, k)


# ---------------------------------------------------------------------------
# checks generic over Q and Q-hat

def residual_relations(A, budget: Budget):
    g = A.g
    items = []
    for name, rel in g.relations():
        budget.check()
        items.append((f"Delta({name})", A.coproduct(rel)))
        items.append((f"eps({name})", 1 if A.counit(rel) else 0))
        if hasattr(A, "antipode"):
            items.append((f"S({name})", A.antipode(rel)))
    return items


def check_relations_coproduct(A, budget=None) -> CheckResult:
    return run_check("relations", "Delta, eps, S respect the defining relations",
                     lambda b: residual_relations(A, b), budget)


def _test_elements(A, full: bool):
    if full:
        return [(f"basis[{k}]", AlgElement.basis(A.n, k)) for k in all_monomials(A.n)]
    return A.g.generators()


def coassoc_sides(A, a: AlgElement, phi: TensorElement):
    d = A.coproduct(a)
    left = A.delta_on_leg(d, 0)   # (Delta (x) id) Delta(a)
    right = A.delta_on_leg(d, 1)  # (id (x) Delta) Delta(a)
    return left, right


def pentagon_sides(A, phi: TensorElement):
    n = A.n
    one1 = _identity(n, 1)
    p_id_id_d = A.delta_on_leg(phi, 2)
    p_d_id_id = A.delta_on_leg(phi, 0)
    p_id_d_id = A.delta_on_leg(phi, 1)
    one_phi = legs(phi, "234", 4)
    phi_one = legs(phi, "123", 4)
    lhs = p_id_id_d * p_d_id_id
    rhs = one_phi * p_id_d_id * phi_one
    # second association order of the triple product
    rhs2 = one_phi * (p_id_d_id * phi_one)
    del one1
    return lhs, rhs, rhs2


def _assoc_pair(A, variant: str):
    if variant == ASSOC_AS_GIVEN:
        return A.Phi, A.PhiInv
    return A.PhiInv, A.Phi


def quasi_bialgebra_items(A, variant: str, full_basis: bool, budget: Budget):
    """Axioms written in the textbook form with `phi` as the associator:
    phi (Delta (x) id)Delta(a) = (id (x) Delta)Delta(a) phi, pentagon, counit."""
    phi, _ = _assoc_pair(A, variant)
    items = []
    for label, a in _test_elements(A, full_basis):
        budget.check()
        left, right = coassoc_sides(A, a, phi)
        items.append((f"coassoc {label}", phi * left - right * phi))
    budget.check()
    lhs, rhs, rhs2 = pentagon_sides(A, phi)
    items.append(("pentagon", lhs - rhs))
    items.append(("pentagon association orders", rhs - rhs2))
    one2 = _identity(A.n, 2)
    for slot in range(3):
        items.append((f"counit on leg {slot + 1} of Phi", A.counit_on_leg(phi, slot) - one2))
    return items


def hexagon_items(A, variant: str, braid: str, budget: Budget):
    """Textbook hexagons with associator `phi` and braiding element r."""
    phi, phiinv = _assoc_pair(A, variant)
    if braid == "R":
        r = A.R
    else:  # the reverse braiding R21^-1
        r = A.RInv.permute((1, 0))
    budget.check()
    lhs1 = A.delta_on_leg(r, 0)
    rhs1 = legs(phi, "312") * legs(r, "13", 3) * legs(phiinv, "132") * legs(r, "23", 3) * phi
    budget.check()
    lhs2 = A.delta_on_leg(r, 1)
    rhs2 = legs(phiinv, "231") * legs(r, "13", 3) * legs(phi, "213") * legs(r, "12", 3) * phiinv
    return [("hexagon (Delta x id)(R)", lhs1 - rhs1), ("hexagon (id x Delta)(R)", lhs2 - rhs2)]


def intertwiner_items(A, budget: Budget):
    items = []
    one2 = _identity(A.n, 2)
    items.append(("R RInv - 1", A.R * A.RInv - one2))
    items.append(("RInv R - 1", A.RInv * A.R - one2))
    for name, x in A.g.generators():
        budget.check()
        items.append((f"R Delta({name}) - Delta^op({name}) R",
                      A.R * A.coproduct(x) - A.delta_op(x) * A.R))
    return items


def probe_conventions(A, full_basis: bool = False, budget: Budget | None = None) -> dict:
    """Evaluate the axioms under each associator placement and braiding choice."""
    budget = budget or Budget()
    table = {}
    for variant in (ASSOC_AS_GIVEN, ASSOC_INVERTED):
        qb = quasi_bialgebra_items(A, variant, full_basis, budget)
        qb_ok = all(not (r if isinstance(r, int) else r.terms) for _, r in qb)
        for braid in ("R", "R21^-1"):
            hx = hexagon_items(A, variant, braid, budget)
            hx_ok = all(not r.terms for _, r in hx)
            table[(variant, braid)] = {"quasi_bialgebra": qb_ok, "hexagons": hx_ok}
    return table


def declared_convention(A) -> str:
    return getattr(A, "assoc_convention", ASSOC_AS_GIVEN)


def _clean(items) -> bool:
    return all(not (r if isinstance(r, int) else r.terms) for _, r in items)


def check_quasi_bialgebra(A, full_basis: bool = True, budget=None) -> CheckResult:
    """Quasi-coassociativity on basis elements, pentagon and counit of Phi, in the
    algebra's declared associator placement; on failure the other placement is probed."""
    def run(b):
        declared = declared_convention(A)
        items = quasi_bialgebra_items(A, declared, full_basis, b)
        extra = {"variant": declared}
        if not _clean(items):
            other = ASSOC_INVERTED if declared == ASSOC_AS_GIVEN else ASSOC_AS_GIVEN
            if _clean(quasi_bialgebra_items(A, other, full_basis, b)):
                extra["detail"] = f"fails as declared, holds with placement {other}"
                extra["holding_variant"] = other
        return items, extra
    return run_check("quasi_bialgebra", "quasi-coassociativity, pentagon, counit of Phi", run, budget)


def check_quasitriangular(A, budget=None) -> CheckResult:
    def run(b):
        declared = declared_convention(A)
        items = intertwiner_items(A, b)
        hx = hexagon_items(A, declared, "R", b)
        items += hx
        extra = {"variant": declared}
        if not _clean(hx):
            table = probe_conventions(A, False, b)
            holding = [f"{v}/{r}" for (v, r), res in table.items() if res["hexagons"]]
            extra["holding_variants"] = holding
            extra["detail"] = "hexagons fail as declared; holding: " + (", ".join(holding) or "none")
        return items, extra
    return run_check("quasitriangular", "R intertwines Delta and Delta^op; hexagons", run, budget)


# ---------------------------------------------------------------------------
# checks specific to Q(N, beta)

def _sum_legs(x: TensorElement, fn) -> AlgElement:
    out = AlgElement(x.n)
    for c, parts in x.legs():
        out = out + fn(*parts).scale(c)
    return out


def antipode_items(q, full_basis: bool, budget: Budget):
    items = []
    alpha, beta = q.alpha, q.beta_elem
    for label, a in _test_elements(q, full_basis):
        budget.check()
        d = q.coproduct(a)
        eps = q.counit(a)
        lhs1 = _sum_legs(d, lambda x, y: q.antipode(x) * alpha * y)
        lhs2 = _sum_legs(d, lambda x, y: x * beta * q.antipode(y))
        items.append((f"S(a')alpha a'' {label}", lhs1 - alpha.scale(eps)))
        items.append((f"a' beta S(a'') {label}", lhs2 - beta.scale(eps)))
    budget.check()
    one = q.g.one
    s_phi = _sum_legs(q.Phi, lambda x, y, z: q.antipode(x) * alpha * y * beta * q.antipode(z))
    s_phiinv = _sum_legs(q.PhiInv, lambda x, y, z: x * beta * q.antipode(y) * alpha * z)
    items.append(("S(Phi1) alpha Phi2 beta S(Phi3) - 1", s_phi - one))
    items.append(("PhiInv1 beta S(PhiInv2) alpha PhiInv3 - 1", s_phiinv - one))
    return items


def check_antipode_axioms(q, full_basis: bool = True, budget=None) -> CheckResult:
    return run_check("antipode", "S(a')alpha a'' = eps(a)alpha, a' beta S(a'') = eps(a)beta, Phi identities",
                     lambda b: antipode_items(q, full_basis, b), budget)


def ribbon_items(q, budget: Budget):
    g = q.g
    items = []
    v, vinv = q.v, q.vInv
    for name, x in g.generators():
        items.append((f"[v, {name}]", v.commutator(x)))
    items.append(("v vInv - 1", v * vinv - g.one))
    items.append(("eps(v) - 1", 1 if q.counit(v) != 1 else 0))
    items.append(("S(v) - v", q.antipode(v) - v))
    budget.check()
    items.append(("Delta(vInv) - (vInv x vInv) M",
                  q.coproduct(vinv) - TensorElement.tensor(vinv, vinv) * q.M))
    items.append(("uv - vu", q.u.commutator(v)))
    items.append(("u uInv - 1", q.u * q.uInv - g.one))
    items.append(("uInv - S(u^-1)", q.uInv - q.antipode(q.uInv)))
    items.append(("beta S(alpha) vInv u - g", q.g_from_definition() - q.g_balancing))
    gg = q.g_balancing
    items.append(("Delta(g) - g x g", q.coproduct(gg) - TensorElement.tensor(gg, gg)))
    return items


def check_ribbon(q, budget=None) -> CheckResult:
    return run_check("ribbon", "v central, S(v)=v, Delta(v^-1)=(v^-1 x v^-1)M, balancing element",
                     lambda b: ribbon_items(q, b), budget)


def drinfeld_twist_items(q, budget: Budget):
    g = q.g
    n = q.n
    f, finv = q.fTwist, q.fTwistInv
    one2 = TensorElement.one(n, 2)
    items = [("f fInv - 1", f * finv - one2), ("fInv f - 1", finv * f - one2)]
    for name, x in [("1", g.one)] + g.generators():
        budget.check()
        lhs = f * q.coproduct(q.antipode(x))
        sop = q.antipode_on_leg(q.antipode_on_leg(q.delta_op(x), 0), 1)
        items.append((f"f Delta(S({name})) - (S x S)Delta^op({name}) f", lhs - sop * f))
    # sector table: e_a (x) e_b components
    es = (g.e0, g.e1)
    sectors = {
        (0, 0): TensorElement.tensor(g.e0, g.e0),
        (0, 1): TensorElement.tensor(g.e0, g.e1),
        (1, 0): TensorElement.tensor(g.e1, g.Kp(n) * g.e0),
        (1, 1): TensorElement.tensor(g.e1 * g.Kp(n), g.e1).scale(q.cfg.bpow(2) * CycScalar(0, 0, 1) ** (-n)),
    }
    for (a, b), expect in sectors.items():
        part = f * TensorElement.tensor(es[a], es[b])
        items.append((f"f sector {a}{b}", part - expect))
    return items


def check_drinfeld_twist(q, budget=None) -> CheckResult:
    return run_check("drinfeld_twist", "f Delta(S(a)) = (S x S)(Delta^op(a)) f",
                     lambda b: drinfeld_twist_items(q, b), budget)


def flatten_two_leg(x: TensorElement) -> list[dict]:
    rows: dict[int, dict] = {}
    for (a, b), c in x.terms.items():
        rows.setdefault(a, {})[b] = c
    return list(rows.values())


def coordinate_rows(elements: list[AlgElement]) -> list[dict]:
    return [dict(e.terms) for e in elements]


def factorisable_bases(q):
    """The two families f_I and g_I pairing M = sum_I f_I (x) g_I."""
    g = q.g
    n = q.n
    es = (g.e0, g.e1)
    b2 = q.cfg.bpow(2)
    ft = {(j, s): g.f(j, s) * g.omega_minus for j in range(1, n + 1) for s in (+1, -1)}
    f_list, g_list = [], []
    for nn in (0, 1):
        for m in (0, 1):
            for bits in range(1 << (2 * n)):
                s_exp = [(bits >> (2 * j)) & 1 for j in range(n)]
                t_exp = [(bits >> (2 * j + 1)) & 1 for j in range(n)]
                fi = g.Kp(nn) * es[m]
                gi = g.Kp(m) * es[nn]
                sign = 0
                for j in range(n):
                    if t_exp[j]:
                        fi = fi * g.fm(j + 1)
                        gi = gi * ft[(j + 1, +1)]
                    if s_exp[j]:
                        fi = fi * g.fp(j + 1)
                        gi = gi * ft[(j + 1, -1)]
                    sign += m * t_exp[j] + s_exp[j]
                coeff = (-b2) ** (nn * m) * CycScalar(2 ** (sum(s_exp) + sum(t_exp)) * (-1) ** sign)
                f_list.append(fi)
                g_list.append(gi.scale(coeff))
    return f_list, g_list


def factorisable_items(q, budget: Budget):
    dim = 4 ** (q.n + 1)
    rk = rank(flatten_two_leg(q.M))
    budget.check()
    fl, gl = factorisable_bases(q)
    rf = rank(coordinate_rows(fl))
    rg = rank(coordinate_rows(gl))
    items = [("rank of M", dim - rk), ("rank of f_I", dim - rf), ("rank of g_I", dim - rg)]
    return items, {"rank_M": rk, "rank_f": rf, "rank_g": rg, "dim": dim}


def check_factorisable(q, budget=None) -> CheckResult:
    return run_check("factorisable", "monodromy M is non-degenerate",
                     lambda b: factorisable_items(q, b), budget)


SUITES = {
    "bialgebra": ("relations", "quasi_bialgebra"),
    "antipode": ("antipode", "drinfeld_twist"),
    "rmatrix": ("quasitriangular",),
    "ribbon": ("ribbon",),
    "factorisable": ("factorisable",),
}


def run_suite(q, suite: str = "all", budget_seconds: float | None = None) -> list[CheckResult]:
    names = []
    if suite == "all":
        for group in SUITES.values():
            names += list(group)
    else:
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}")
        names = list(SUITES[suite])
    fns = {
        "relations": check_relations_coproduct,
        "quasi_bialgebra": check_quasi_bialgebra,
        "antipode": check_antipode_axioms,
        "drinfeld_twist": check_drinfeld_twist,
        "quasitriangular": check_quasitriangular,
        "ribbon": check_ribbon,
        "factorisable": check_factorisable,
    }
    return [fns[nm](q, budget=Budget(budget_seconds)) for nm in names]


__all__ = [
    "Budget", "BudgetExceeded", "CheckResult", "run_check", "legs",
    "check_relations_coproduct", "check_quasi_bialgebra", "check_antipode_axioms",
    "check_quasitriangular", "check_ribbon", "check_drinfeld_twist", "check_factorisable",
    "probe_conventions", "run_suite", "factorisable_bases", "flatten_two_leg",
    "ASSOC_AS_GIVEN", "ASSOC_INVERTED", "fbit", "mono", "product", "ONE",
]
