"""Build Q(1, beta) for each admissible beta and run the full axiom suite."""

from qsf import QConfig, QuasiHopfQ, beta_choices, run_suite
from qsf.algebra import mono_str

for b in beta_choices(1):
    q = QuasiHopfQ(QConfig(1, b))
    print(f"\n{q.cfg.label()}")
    for name, x in q.g.generators():
        print(f"  Delta({name}) has {len(q.coproduct(x))} terms")
    print(f"  Phi has {len(q.Phi)} terms, R has {len(q.R)} terms")
    for r in run_suite(q):
        print(f"  {r.name:16s} {r.status:6s} residual={r.residual_terms} ({r.runtime_ms} ms)")

# the ribbon element, written out
q = QuasiHopfQ(QConfig(1, 1))
print("\nv =", " + ".join(f"({c}) {mono_str(k)}" for k, c in q.v.sorted_terms()))
