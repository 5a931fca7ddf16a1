"""Hamiltonian vector fields and the exact identities they satisfy.

The field stored for f is the holomorphic solution of
``iota_X d(theta) = -df`` (it determines the real field as twice its real
part).  For homogeneous f of degree ell on a degree-delta chart:

* ``theta(X_f) = (ell/delta) f``;
* ``[X_f, X_g] = X_{dtheta(X_f, X_g)}`` -- the bracket is again Hamiltonian;
* the degree of the Poisson companion is ``ell + m - delta``;
* a field preserves theta exactly when its function has degree delta.
"""

from contactcheck.contact import (
    HomogeneousFunction,
    check_scaling_identities,
    hamiltonian_field,
    hopf_chart,
    pairing_with_theta,
    poisson_function,
)
from contactcheck.forms import lie_derivative

cc = hopf_chart(0)
z0, z1 = cc.chart.coeff_var("z0"), cc.chart.coeff_var("z1")

print(f"chart {cc.label}: theta = {cc.theta}")
for f, label in [(z0 * z0, "z0^2"), (z0 * z1, "z0*z1"), (z1 * z1, "z1^2")]:
    X = hamiltonian_field(cc, f)
    print(f"   X[{label}] = {X}")
    print(f"   theta(X) = {pairing_with_theta(cc, X)}   (equals (2/2)*{label})")

print()
print("Poisson bracket of z0^2 and z1^2:", poisson_function(cc, z0 * z0, z1 * z1))
xf = hamiltonian_field(cc, z0 * z0)
xg = hamiltonian_field(cc, z1 * z1)
print("field bracket [X, Y]:", xf.bracket(xg))
print("X of the Poisson function:", hamiltonian_field(cc, poisson_function(cc, z0 * z0, z1 * z1)))

print()
print("The full identity suite for that pair:")
f = HomogeneousFunction(cc, z0 * z0, 2)
g = HomogeneousFunction(cc, z1 * z1, 2)
for result in check_scaling_identities(cc, f, g):
    print(f"   {result.status:4s}  {result.check_id}")

print()
print("Invariance threshold: degree-2 functions preserve theta, degree-3 do not:")
for f, d in [(z0 * z1, 2), (z0 * z0 * z1, 3)]:
    lie = lie_derivative(hamiltonian_field(cc, f), cc.theta)
    print(f"   deg {d}: L_X theta = {lie}")
