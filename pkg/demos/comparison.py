"""Matrices of S and T on Z(Q) against the pseudo-trace side, intertwined by Upsilon."""

import sys

from qsf.compare import check_comparison, comparison_config

n = int(sys.argv[1]) if len(sys.argv) > 1 else 1
result, data = check_comparison(comparison_config(n))
print(f"N = {n}: {result.status} (residual {result.residual_terms})")
print("\nUpsilon, columns indexed by", data.labels)
print("rows indexed by", data.zb.labels())
for row in data.upsilon:
    print("  [" + ", ".join(f"{x!r}" for x in row) + "]")
