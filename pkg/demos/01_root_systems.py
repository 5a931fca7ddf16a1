"""Walk through root-system construction from Cartan matrices.

Roots are integer vectors over the simple roots; everything is generated by
root strings and validated against the highest-root property.  The height of
a root against the highest root drives the five-piece grading used by every
other demo.
"""

from contactcheck.rootsystem import CARTAN_MATRICES, builtin_root_system

for name in ("A2", "C2", "G2"):
    rs = builtin_root_system(name)
    print(f"== {name}: Cartan matrix {CARTAN_MATRICES[name]}")
    print(f"   {len(rs.roots)} roots, highest root rho = {rs.highest}")
    by_height = {}
    for root in rs.roots:
        by_height.setdefault(rs.rho_height(root), []).append(root)
    for h in sorted(by_height):
        print(f"   height {h:+d}: {sorted(by_height[h])}")
    print()

print("The height-0 layer plus the Cartan subalgebra will become the middle")
print("piece of the grading; exactly one root sits at height +2 (rho itself).")

g2 = builtin_root_system("G2")
print()
print("G2 fine print: the SHORT simple root (1,0) is orthogonal to rho,")
print(f"   pairing (a1, rho) = {g2.pairing((1, 0), g2.highest)},")
print(f"   while the long simple root pairs to {g2.pairing((0, 1), g2.highest)}.")
