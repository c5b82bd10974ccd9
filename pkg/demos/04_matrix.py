"""The semisimple envelope V(A), the map eta and the dual of its cokernel."""
from pathlib import Path

from gentlekit import build_va, check_conditions, cokernel_dual, eta, parse_qvr, ut_check, verify_eta

HERE = Path(__file__).parent
bq = parse_qvr((HERE / "data" / "ex1.qvr").read_text())

va = build_va(bq)
print("blocks:", [(b.name, b.size) for b in va.blocks], "total dim", va.total_dim)
image = eta(bq, bq.trivial("b"), va)
print("eta(e_b) =", " + ".join(va.label_name(l) for l in sorted(image)))

for check in verify_eta(bq).checks:
    print(f"  {check.name}: {'ok' if check.passed else 'FAILED'} {check.detail}")

print("upper triangular model for k=2 passes:", ut_check(bq, 2).passed)

dual = cokernel_dual(bq)
print(f"cokernel dim {dual.dim}, almost standard {dual.almost_standard}, "
      f"structure constants of DA {dual.quotient_is_DA}")
print("conditions (char 0):", check_conditions(bq, 0))
