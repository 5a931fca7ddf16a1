"""Unipotent orbits through the highest-root vector, moment maps, rank checks.

Group elements are generated exclusively by exponentials ``exp(t ad e_a)`` at
rational parameters: ``ad e_a`` is nilpotent, so the series terminates and
the matrices stay exactly rational.  Torus directions are not exponentiated
(that needs ``e^z``); the scaling action is covered instead by rational
rescalings of orbit points together with the infinitesimal character value
``B([H_rho, e_rho], -e_{-rho}) = 2``, which pins the weight of the
fiber action on the orbit cone.  Orbit membership is always certified by the
generating word stored with each point; it is never decided for arbitrary
vectors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .lie import GradedDecomposition, KillingData, StructureConstants, Vector
from .report import CheckResult, check
from .rootsystem import Root
from .scalars import GaussianRational

Word = Sequence[Tuple[Root, Fraction]]


class AlgebraAutomorphism:
    """A bracket-preserving matrix in the Lie basis."""

    __slots__ = ("sc", "matrix")

    def __init__(self, sc: StructureConstants, matrix: List[Vector]):
        object.__setattr__(self, "sc", sc)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraAutomorphism is immutable")

    def apply(self, vec: Sequence[GaussianRational]) -> Vector:
        return linalg.mat_vec(self.matrix, list(vec))

    def compose(self, other: "AlgebraAutomorphism") -> "AlgebraAutomorphism":
        return AlgebraAutomorphism(self.sc, linalg.matmul(self.matrix, other.matrix))

    def preserves_brackets(self) -> bool:
        sc = self.sc
        n = sc.dim
        for i in range(n):
            mi = [row[i] for row in self.matrix]
            for j in range(i + 1, n):
                mj = [row[j] for row in self.matrix]
                lhs = self.apply(sc.bracket(sc.unit(i), sc.unit(j)))
                rhs = sc.bracket(mi, mj)
                if lhs != rhs:
                    return False
        return True

    def preserves_form(self, kd: KillingData) -> bool:
        n = self.sc.dim
        for i in range(n):
            mi = [row[i] for row in self.matrix]
            for j in range(i, n):
                mj = [row[j] for row in self.matrix]
                if kd.form(mi, mj) != kd.gram[i][j]:
                    return False
        return True


class OrbitPoint:
    """A point of the minimal nilpotent cone with its generating word."""

    __slots__ = ("vector", "word")

    def __init__(self, vector: Vector, word: Word):
        object.__setattr__(self, "vector", vector)
        object.__setattr__(self, "word", tuple(word))

    def __setattr__(self, name, value):
        raise AttributeError("OrbitPoint is immutable")


class MomentVector:
    """Pairings B(point, basis element) for one orbit point."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Vector):
        object.__setattr__(self, "coefficients", coefficients)

    def __setattr__(self, name, value):
        raise AttributeError("MomentVector is immutable")


def exp_ad(sc: StructureConstants, root: Root, t: Fraction) -> AlgebraAutomorphism:
    """``exp(t ad e_root)`` as an exact matrix; the series terminates."""
    rs = sc.basis.rs
    if not rs.is_root(tuple(root)):
        raise ValueError(f"{root} is not a root; only nilpotent directions exponentiate")
    n = sc.dim
    ad = sc.ad_matrix(sc.unit(sc.basis.root_index(tuple(root))))
    scalar = GaussianRational(t)
    result = linalg.identity(n)
    power = linalg.identity(n)
    k = 1
    while True:
        power = linalg.matmul(ad, power)
        if all(all(c.is_zero() for c in row) for row in power):
            break
        factor = scalar**k / GaussianRational(_factorial(k))
        for i in range(n):
            for j in range(n):
                if not power[i][j].is_zero():
                    result[i][j] = result[i][j] + factor * power[i][j]
        k += 1
        if k > n + 1:
            raise ArithmeticError("ad e_root failed to nilpotate; broken table")
    return AlgebraAutomorphism(sc, result)


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def orbit_sample(sc: StructureConstants, kd: KillingData, word: Word) -> OrbitPoint:
    """Apply the unipotent word to e_rho; checks ``B(pt, pt) = 0`` and pt != 0."""
    rs = sc.basis.rs
    vec = sc.unit(sc.basis.root_index(rs.highest))
    for root, t in word:
        vec = exp_ad(sc, root, Fraction(t)).apply(vec)
    if all(c.is_zero() for c in vec):
        raise ArithmeticError("orbit point collapsed to zero")
    if not kd.form(vec, vec).is_zero():
        raise ArithmeticError("orbit point violates the isotropy condition B(pt, pt) = 0")
    return OrbitPoint(vec, word)


def rescale_point(pt: OrbitPoint, factor: GaussianRational) -> OrbitPoint:
    """The fiber action on the cone: scalar rescaling (kept separate from words)."""
    if factor.is_zero():
        raise ValueError("rescaling by zero leaves the punctured cone")
    return OrbitPoint([factor * c for c in pt.vector], pt.word)


def theta_G_checks(sc: StructureConstants, kd: KillingData, gd: GradedDecomposition) -> List[CheckResult]:
    """Exact checks of the canonical one-form data on the group model.

    * the kernel of ``(X, Y) -> B(e_rho, [X, Y])`` is the centralizer of
      e_rho (the isotropy of the cone point);
    * ``B(e_rho, H_rho) = 0``: the form kills the vertical direction;
    * ``B([H_rho, e_rho], -e_{-rho}) = 2``: the infinitesimal character of
      the fiber action (weight of the scaling on the cone).
    """
    rs = sc.basis.rs
    n = sc.dim
    rho_idx = sc.basis.root_index(rs.highest)
    e_rho = sc.unit(rho_idx)
    results: List[CheckResult] = []
    pairing_matrix = [
        [kd.form(e_rho, sc.bracket(sc.unit(i), sc.unit(j))) for j in range(n)]
        for i in range(n)
    ]
    kernel = linalg.nullspace(pairing_matrix)
    ok = linalg.same_span(kernel, gd.spans["L0"])
    results.append(
        check(
            "theta_G:kernel-is-centralizer",
            ok,
            f"kernel dim {len(kernel)}, centralizer dim {len(gd.spans['L0'])}",
        )
    )
    vertical = kd.form(e_rho, kd.hrho)
    results.append(check("theta_G:vertical-annihilation", vertical.is_zero(), vertical))
    from .lie import chi_differential

    chi = chi_differential(kd, sc)
    results.append(check("theta_G:character-differential", chi == GaussianRational(2), chi))
    return results


def moment_map(sc: StructureConstants, kd: KillingData, pt: OrbitPoint) -> MomentVector:
    """Coefficients ``B(pt, X_i)`` over the basis: the moment pairing at pt."""
    return MomentVector([kd.form(pt.vector, sc.unit(i)) for i in range(sc.dim)])


def kappa(sc: StructureConstants, kd: KillingData, mv: MomentVector) -> Vector:
    """Invert the musical isomorphism: solve ``Gram . x = coefficients``."""
    return linalg.solve(kd.gram, list(mv.coefficients))


def kappa_round_trip(sc: StructureConstants, kd: KillingData, pt: OrbitPoint) -> bool:
    return kappa(sc, kd, moment_map(sc, kd, pt)) == list(pt.vector)


def embedding_checks(
    sc: StructureConstants,
    kd: KillingData,
    gd: GradedDecomposition,
    points: Sequence[OrbitPoint],
) -> List[CheckResult]:
    """Tangent-rank and projective-separation checks at sampled orbit points.

    The tangent space of the orbit at pt is ``[g, pt]``; its dimension must be
    ``dim G_1 + 2`` everywhere (the cone dimension).  Coordinate vectors of
    distinct sample points must be pairwise non-proportional (injectivity of
    the projectivized linear embedding on the sample); coincident points are
    reported as skipped comparisons, not failures.
    """
    expected = len(gd.pieces[1]) + 2
    results: List[CheckResult] = []
    n = sc.dim
    for idx, pt in enumerate(points):
        tangent = [sc.bracket(sc.unit(i), pt.vector) for i in range(n)]
        got = linalg.rank(tangent)
        results.append(
            check(f"embedding:tangent-rank-{idx}", got == expected, f"rank {got} != {expected}")
        )
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            a, b = points[i].vector, points[j].vector
            if _proportional(a, b):
                if a == b:
                    results.append(CheckResult(f"embedding:separation-{i}-{j}", "skipped", "coincident sample"))
                else:
                    results.append(CheckResult(f"embedding:separation-{i}-{j}", "skipped", "proportional sample"))
            else:
                results.append(check(f"embedding:separation-{i}-{j}", True))
    return results


def _proportional(a: Sequence[GaussianRational], b: Sequence[GaussianRational]) -> bool:
    ratio: Optional[GaussianRational] = None
    for x, y in zip(a, b):
        if x.is_zero() and y.is_zero():
            continue
        if x.is_zero() or y.is_zero():
            return False
        candidate = x / y
        if ratio is None:
            ratio = candidate
        elif ratio != candidate:
            return False
    return True


def nilpotency_degree_on(sc: StructureConstants, root_index: int) -> int:
    """Smallest k with ``(ad e)^k = 0``; for the highest root this is 3."""
    ad = sc.ad_matrix(sc.unit(root_index))
    power = linalg.identity(sc.dim)
    k = 0
    while not all(all(c.is_zero() for c in row) for row in power):
        power = linalg.matmul(ad, power)
        k += 1
        if k > sc.dim + 1:
            raise ArithmeticError("matrix is not nilpotent")
    return k
