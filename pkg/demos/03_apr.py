"""A generalized APR reflection, with a failing vertex for contrast."""
from pathlib import Path

from gentlekit import apr_reflect, apr_transport, emit, iso, parse_qvr, phi, repeat
from gentlekit.constructions import reflection_failure

HERE = Path(__file__).parent
ex2 = parse_qvr((HERE / "data" / "ex2.qvr").read_text())
ex1 = parse_qvr((HERE / "data" / "ex1.qvr").read_text())

print("EX1 at d:", reflection_failure(ex1, "d"))

reflected = apr_reflect(ex2, "x")
print(emit(reflected), end="")
print("phi before:", phi(ex2).as_dict(), "after:", phi(reflected).as_dict())
print("transported maximal paths of the blossomed quiver:")
for p in apr_transport(ex2, "x"):
    print("  ", p)

# reflecting then repeating matches repeating then reflecting every copy of x
lhs = repeat(reflected, 2).quiver
rhs = apr_reflect(apr_reflect(repeat(ex2, 2).quiver, "x#2"), "x#1")
print("repeat(reflect) isomorphic to reflect(repeat):", iso(lhs, rhs) is not None)
