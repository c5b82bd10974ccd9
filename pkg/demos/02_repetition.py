"""Finite repetitions: the formula for phi against a direct computation, then Moebius inversion."""
from pathlib import Path

from gentlekit import parse_qvr, phi, phi_mobius_recover, phi_repetition, repeat
from gentlekit.quiver import path_basis

HERE = Path(__file__).parent
bq = parse_qvr((HERE / "data" / "ex1.qvr").read_text())
base = phi(bq)

tables = {}
for k in range(1, 5):
    rep = repeat(bq, k)
    tables[k] = phi(rep.quiver)
    predicted = phi_repetition(base, k)
    print(f"k={k}: {len(rep.quiver.vertices)} vertices, dim = {len(path_basis(rep.quiver))}"
          f" (k^2 dim A = {k * k * len(path_basis(bq))}), formula agrees: {predicted == tables[k]}")

print("phi of the 3-fold repetition:", tables[3].as_dict())

# orbit entries of the base come back from the repetition tables alone
for (q, l), count in base.entries:
    if q:
        print(f"recovered phi({q},{l}) = {phi_mobius_recover(tables, q, l)} (direct {count})")
