"""The two chart models and their bundle axioms.

A contact chart carries a 1-form theta, a nonzero degree, and scaling
weights.  The global quadratic model lives on punctured affine space with all
weights 1; the fibered model puts the whole weight on one Laurent-enabled
fiber coordinate.  The axioms -- vertical annihilation, exact scaling, and
symplectic nondegeneracy of d(theta) -- are verified symbolically plus at
seeded rational points.
"""

from contactcheck.contact import euler_field, fibered_chart, hopf_chart, verify_axioms
from contactcheck.forms import exterior_derivative
from contactcheck.sampling import SeededSampler

for cc in (hopf_chart(1), fibered_chart(1, 3), fibered_chart(0, -2)):
    print(f"== {cc.label}")
    print(f"   theta = {cc.theta}")
    print(f"   d theta = {exterior_derivative(cc.theta)}")
    sampler = SeededSampler(7)
    for result in verify_axioms(cc, [sampler.point(cc) for _ in range(2)]):
        print(f"   {result.status:4s}  {result.check_id}")
    print(f"   Euler operator: {euler_field(cc)}")
    print()

print("Degree 0 is rejected up front -- d(theta) would be degenerate:")
try:
    fibered_chart(0, 0)
except ValueError as exc:
    print(f"   ValueError: {exc}")
