"""A tour of the intersection-lattice toolkit.

Builds the standard forms, decomposes signatures exactly, finds
characteristic vectors, takes orthogonal complements over the integers,
and runs the bounded searches for isotropic pairs and vectors of
prescribed square.
"""

from wittenform import (Sublattice, characteristic_base, diagonal_form,
                        direct_sum, e8_form, find_hyperbolic_pair,
                        find_vector_with_square, hyperbolic_plane,
                        orthogonal_complement)

H = hyperbolic_plane()
print("hyperbolic plane H:", H.gram)
print("  signature:", H.signature_decomposition())
print("  pairing of the basis vectors:", H.pairing((1, 0), (0, 1)))
print()

e8 = e8_form(negative=True)
print("-E8 (even, negative definite):")
print("  signature:", e8.signature_decomposition())
print("  characteristic class mod 2:", characteristic_base(e8))
print()

k3 = direct_sum(H, H, H, e8, e8)
print("3H + 2(-E8), the K3 form:")
print("  rank:", k3.rank, " signature:", k3.signature_decomposition())
print()

odd = diagonal_form([1, -1])
print("diag(1,-1) (odd, indefinite):")
print("  characteristic vectors are odd-odd:", characteristic_base(odd))
print("  hyperbolic pair within bound 5:",
      find_hyperbolic_pair(Sublattice.full(odd), bound=5))
print("  (none exists: e.f is even for isotropic e, f in the odd lattice)")
print()

print("searches in H:")
sub = Sublattice.full(H)
for target in (-6, -4, 0, 2):
    v = find_vector_with_square(sub, target, bound=5)
    print(f"  vector of square {target:>2}: {v}")
print("  hyperbolic pair:", find_hyperbolic_pair(sub, bound=1))
print()

print("orthogonal complement of (1,1) in diag(1,-1):")
comp = orthogonal_complement(odd, [(1, 1)])
print("  basis:", comp.basis)
print("  induced Gram matrix:", comp.induced_gram())
