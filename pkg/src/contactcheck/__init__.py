"""Exact-arithmetic verification of contact bundles, graded Lie algebras and moment maps.

Everything in this package computes over the Gaussian rationals: scalars are
pairs of ``fractions.Fraction``, polynomials are sparse exponent dictionaries,
and every verification is an exact identity check (equality of canonical
forms), never a floating-point comparison.

All value types are immutable after construction and all operations are
pure, so readers may share objects across threads freely; the only internal
cache (a per-chart solver matrix) is idempotent, making its benign race
harmless.

Subpackage map:

* :mod:`contactcheck.scalars`, :mod:`contactcheck.poly`,
  :mod:`contactcheck.laurent`, :mod:`contactcheck.ratfunc` -- scalar and
  polynomial arithmetic kernels.
* :mod:`contactcheck.rootsystem` -- finite root systems from Cartan matrices.
* :mod:`contactcheck.lie` -- structure constants, Killing form, highest-root
  grading of the simple Lie algebras.
* :mod:`contactcheck.forms` -- polynomial exterior calculus on a chart.
* :mod:`contactcheck.contact` -- contact charts, Euler operator, Hamiltonian
  vector fields and the identity suites built on them.
* :mod:`contactcheck.orbits` -- unipotent orbits through the highest root
  vector, moment maps, embedding rank checks.
* :mod:`contactcheck.cli` -- the ``contactcheck`` command line front end.
"""

__version__ = "0.1.0"
