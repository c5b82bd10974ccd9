"""Threads, the blossoming permutation and the AG table of a small gentle algebra."""
from pathlib import Path

from gentlekit import ag_structure, blossom, hochschild_dims, parse_qvr, phi, threads
from gentlekit.invariants import euler_sum

HERE = Path(__file__).parent

bq = parse_qvr((HERE / "data" / "ex1.qvr").read_text())
th = threads(bq)
print(f"{bq.name}: {len(bq.vertices)} vertices, {len(bq.arrows)} arrows, d = {bq.d}")
print("maximal paths:", ", ".join(str(p) for p in th.maximal_paths))
print("trivial threads at:", ", ".join(th.trivial))
print("anticycles:", ", ".join(str(c) for c in th.anticycles) or "none")

# the permutation acts on thread labels 1..d
b = blossom(bq)
print("Phi =", b.phi)
for orbit in ag_structure(bq, b):
    print(f"  orbit {orbit.indices} has type {orbit.type_ungraded}")

table = phi(bq)
print("phi:", table.as_dict())
print(f"Euler check: 2 chi = {2 * bq.chi}, sum phi(q,l)(q-l) = {euler_sum(table)}")

profile = hochschild_dims(table, bq.chi, 0, 7)
print("dim HH^n, n = 0..7:", list(profile.dims))
