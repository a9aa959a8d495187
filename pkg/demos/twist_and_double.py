"""Q-hat twists into Q, and the Drinfeld double D(H(N)) maps onto Q."""

from qsf import QConfig
from qsf.double import check_psi
from qsf.qhat import check_qhat_axioms, check_twist_equivalence

cfg = QConfig(1, 1)
print(f"{cfg.label()}")
r = check_twist_equivalence(cfg)
print(f"  twist equivalence: {r.status} in {r.runtime_ms} ms")
for r in check_qhat_axioms(cfg):
    print(f"  Q-hat {r.name}: {r.status}")

for cfg in (QConfig(1, 1), QConfig(2, 0), QConfig(2, 2)):
    print(f"\nD(H) -> Q for {cfg.label()}")
    for r in check_psi(cfg):
        print(f"  {r.name:26s} {r.status}")
