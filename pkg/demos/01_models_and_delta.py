"""Tour of the built-in action models and the thin-triangle constant.

Four desk-scale models ship with the package: the free group of rank two on
its Cayley tree, the free product Z * Z/2 (also a tree, but with torsion),
a cycle graph with its rotation group, and arbitrary finite graphs with
explicit automorphisms.  Trees are 0-hyperbolic; the 4-cycle needs delta = 1
because an antipodal pair has two geodesics and each strays from the other.
"""

from freecert import CycleModel, FreeGroupModel, FreeProductModel, all_geodesics, compute_delta

f2 = FreeGroupModel(2, cap=128)
print("free group F2:")
print("  generators:", f2.generator_names)
print("  |ball(e, 2)| =", len(f2.ball((), 2)), "(1 + 4 + 12)")
print("  d(e, ab) =", f2.distance((), (1, 2)))
print("  geodesic e -> ab:", f2.geodesic((), (1, 2)))

report = compute_delta(f2, radius=3)
print("  delta on radius-3 ball:", report.delta, "(exhaustive)" if report.exhaustive else "(sampled)")

c4 = CycleModel(4)
paths, _ = all_geodesics(c4, 0, 2)
print("\n4-cycle:")
print("  geodesics between antipodes:", paths)
print("  delta:", compute_delta(c4).delta)

zz2 = FreeProductModel(cap=128)
print("\nZ * Z/2 (generators f, s with s^2 = 1):")
print("  canon(s s) =", zz2.canon((2, 2)))
print("  canon(f s^-1 f) =", zz2.canon((1, -2, 1)))
print("  delta:", compute_delta(zz2, radius=3).delta)
