# Normal cones of a lattice simplex and their finite groups.
#
# Every face E of a simplex has a normal cone spanned by the inward normals of
# the facets through E. When those normals do not form part of a lattice
# basis, the quotient of the plane lattice by their span is a nontrivial group.
# Its elements carry one angle gamma_j per generator.

from toric_ehrhart import simplex as sx
from toric_ehrhart.conegrp import Cone, cone_group
from toric_ehrhart.simplex import Face, Simplex

# %% the corner (0,0) of the triangle (0,0),(1,0),(1,2) is singular
T = Simplex([(0, 0), (1, 0), (1, 2)])
for F, fd in T.facets.items():
    print("facet", F, "normal", fd.normal, "offset", fd.offset)

G = cone_group(sx.dual_cone(T, Face((0,))))
print("generators", G.cone.generators, "order", G.order)
for rep, gam in zip(G.reps, G.gamma):
    print("  rep", rep, "gamma", [str(g) for g in gam])

# %% a cone with a bigger group; gamma_j is the j-th coordinate of the
# representative in the basis of generators, taken mod 1
G = cone_group(Cone([(1, 0), (1, 5)]))
print([[str(g) for g in gam] for gam in G.gamma])
print("interior elements (all angles nonzero):", G.interior)

# %% groups of 3-dimensional cones are stored through their Smith form
R = Simplex([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 5)])
for E in sx.faces(R):
    G = cone_group(sx.dual_cone(R, E))
    if G.order > 1:
        print(E, "order", G.order, "invariants", G.invariants)
