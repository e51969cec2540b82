"""Plumbing graphs, intersection forms, and the weighted cube complex.

A weighted graph determines a symmetric bilinear form; characteristic
vectors for that form carry a quadratic weight, and cubes in the lattice
carry the max weight of their corners.  Everything downstream (the
differential, the cohomology, the surgery triangle) is built from these
integers, so this walk-through prints them for the smallest examples.
"""

from latcoh import (Chain, CubePair, Region, absolute_q, cube_boundary,
                    cube_corners, cube_weight, delta, determinant,
                    intersection_matrix, is_negative_definite, make_graph,
                    parse_graph, relative_weight, spinc_representatives,
                    truncation_region)

print("=== a single -2 vertex (boundary: RP^3) ===")
g = parse_graph("plumbing v1\nvertex a -2\n")
print("intersection matrix:", intersection_matrix(g))
print("determinant:", determinant(g))
print("negative definite:", bool(is_negative_definite(g)))

print("\nspin-c classes are characteristic vectors modulo twice the lattice:")
for cls in spinc_representatives(g):
    print("  class %d: representative %s" % (cls.index, cls.base))

print("\nrelative weights w(x) = q(base + 2Mx) - q(base) along each class:")
for base in ((0,), (2,)):
    row = [relative_weight(g, base, (x,)) for x in range(-3, 4)]
    print("  base %s: %s  (x = -3..3)" % (base, row))
print("absolute weight of K = (2,):", absolute_q(g, (2,)))

print("\ncubes: a pair (K, S) spans the corners K + 2*sum E_j:")
cube = CubePair((0,), 1)
print("  corners of ((0,), {a}):", cube_corners(g, cube))
print("  weight:", cube_weight(g, (0,), ["a"]), " (max of corner weights 0, 1)")
print("  boundary faces:", cube_boundary(g, cube))

print("\nthe coboundary on dual generators, truncated to a finite window:")
region = truncation_region(g, (0,), 3)
print("  region:", region.to_json())
for m in (0, 1):
    img = delta(Chain.dual((0,), 0, m), region)
    print("  delta(U^-%d ((0,), {})^v) has %d terms: %s"
          % (m, len(img.terms), sorted(img.terms)))
print("  (at U-power 0 both cofaces cost one U, so the image vanishes)")

print("\n=== a two-vertex chain ===")
g2 = make_graph(([("a", -2), ("b", -2)], [("a", "b")]))
print("matrix:", intersection_matrix(g2), " determinant:", determinant(g2))
print("classes:", [c.base for c in spinc_representatives(g2)])
sq = CubePair((0, 0), 3)
print("the square ((0,0), {a,b}) has faces:")
for face in cube_boundary(g2, sq):
    print("   ", face)
