"""Centre of Q(N, beta) and the projective SL(2,Z) action on it."""

import sys

from qsf import QConfig, QuasiHopfQ, compute_center
from qsf.sl2z import theorem_st_items

n = int(sys.argv[1]) if len(sys.argv) > 1 else 1
q = QuasiHopfQ(QConfig(n))
cb = compute_center(q)
print(f"{q.cfg.label()}: dim Z(Q) = {len(cb.kernel)}")

items, extra = theorem_st_items(q, cb)
act = extra["action"]


def show(name, mat):
    print(f"\n{name} in the basis {act.labels}")
    for row in mat:
        print("  [" + ", ".join(f"{x!r:>8}" for x in row) + "]")


show("S", act.Smat)
show("T", act.Tmat)
print("\nnilpotency index of T - id on Z_Lambda:", extra["nilpotency_index"])
print("Jordan data of T:", extra["jordan"])
print("all identities hold:", not any(r for _, r in items))
