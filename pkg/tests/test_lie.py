import itertools
from fractions import Fraction

import pytest

from contactcheck.lie import (
    build_algebra,
    chevalley_constants,
    chi_differential,
    g00_span_check,
    grade,
    killing,
    root_action,
)
from contactcheck.rootsystem import builtin_root_system
from contactcheck.scalars import GaussianRational, ZERO
from oracles import ad_eigenvalue

CORE_TYPES = ["A1", "A2", "C2", "G2"]


def jacobi_residual(sc, a, b, c):
    ua, ub, uc = sc.unit(a), sc.unit(b), sc.unit(c)
    return [
        x + y + z
        for x, y, z in zip(
            sc.bracket(sc.bracket(ua, ub), uc),
            sc.bracket(sc.bracket(ub, uc), ua),
            sc.bracket(sc.bracket(uc, ua), ub),
        )
    ]


@pytest.mark.parametrize("name", CORE_TYPES)
def test_jacobi_identity_exhaustive(name, algebra_bundle):
    _, sc, _, _ = algebra_bundle(name)
    for a, b, c in itertools.combinations(range(sc.dim), 3):
        assert all(v.is_zero() for v in jacobi_residual(sc, a, b, c))


@pytest.mark.parametrize("name", CORE_TYPES)
def test_antisymmetry(name, algebra_bundle):
    _, sc, _, _ = algebra_bundle(name)
    for i in range(sc.dim):
        for j in range(sc.dim):
            lhs = sc.bracket(sc.unit(i), sc.unit(j))
            rhs = sc.bracket(sc.unit(j), sc.unit(i))
            assert lhs == [-v for v in rhs]


def test_dimensions(algebra_bundle):
    assert algebra_bundle("A1")[1].dim == 3
    assert algebra_bundle("A2")[1].dim == 8
    assert algebra_bundle("G2")[1].dim == 14


def test_chevalley_constants_are_signed_string_lengths():
    rs = builtin_root_system("A2")
    table = chevalley_constants(rs)
    for (a, b), value in table.pos.items():
        assert value in (1, -1)  # all strings in A2 have p = 0
    g2 = builtin_root_system("G2")
    g2_table = chevalley_constants(g2)
    for (a, b), value in g2_table.pos.items():
        p = g2.string_down_count(a, b)
        assert abs(value) == p + 1


def test_cartan_action_on_root_vectors(algebra_bundle):
    rs, sc, _, _ = algebra_bundle("G2")
    for i in range(rs.rank):
        for root in rs.roots:
            image = sc.bracket(sc.unit(i), sc.unit(sc.basis.root_index(root)))
            expected = [
                GaussianRational(rs.cartan.coroot_pairing(root, i)) * c
                for c in sc.unit(sc.basis.root_index(root))
            ]
            assert image == expected


@pytest.mark.parametrize("name", CORE_TYPES)
def test_weyl_normalization(name, algebra_bundle):
    """[e_a, e_{-a}] = -h_a with h_a the Killing dual of the root functional."""
    rs, sc, kd, _ = algebra_bundle(name)
    for root in rs.roots:
        i = sc.basis.root_index(root)
        j = sc.basis.root_index(rs.negative(root))
        assert sc.bracket(sc.unit(i), sc.unit(j)) == [-c for c in kd.coroots[root]]


@pytest.mark.parametrize("name", CORE_TYPES)
def test_killing_duality_property(name, algebra_bundle):
    """B(h_a, H) = a(H) for Cartan H, the defining property of the duals."""
    rs, sc, kd, _ = algebra_bundle(name)
    for root in rs.roots:
        for i in range(rs.rank):
            assert kd.form(kd.coroots[root], sc.unit(i)) == GaussianRational(
                rs.cartan.coroot_pairing(root, i)
            )


def test_a1_numbers(algebra_bundle):
    """B(h, h) = 8 for the simple coroot, h_a = h/4, a(h_a) = 1/2."""
    rs, sc, kd, _ = algebra_bundle("A1")
    assert kd.gram[0][0] == 8
    assert kd.coroots[(1,)][0] == GaussianRational(Fraction(1, 4))
    assert root_action(kd, (1,), kd.coroots[(1,)]) == GaussianRational(Fraction(1, 2))
    # B(e_a, e_{-a}) = -1 after normalization
    i, j = sc.basis.root_index((1,)), sc.basis.root_index((-1,))
    assert kd.form(sc.unit(i), sc.unit(j)) == -1


@pytest.mark.parametrize("name", CORE_TYPES)
def test_pairing_normalization_all_roots(name, algebra_bundle):
    """B(e_a, e_{-a}) = -1 for every root, so B(e_rho, -e_{-rho}) = 1."""
    rs, sc, kd, _ = algebra_bundle(name)
    for root in rs.roots:
        i = sc.basis.root_index(root)
        j = sc.basis.root_index(rs.negative(root))
        assert kd.form(sc.unit(i), sc.unit(j)) == -1


@pytest.mark.parametrize("name", CORE_TYPES)
def test_killing_orthogonality(name, algebra_bundle):
    """B(e_a, e_b) = 0 unless b = -a; B(H, e_a) = 0."""
    rs, sc, kd, _ = algebra_bundle(name)
    for a in rs.roots:
        i = sc.basis.root_index(a)
        for k in range(rs.rank):
            assert kd.gram[k][i] == ZERO
        for b in rs.roots:
            if tuple(b) == rs.negative(a):
                continue
            j = sc.basis.root_index(b)
            assert kd.gram[i][j] == ZERO


@pytest.mark.parametrize("name", CORE_TYPES)
def test_killing_invariance_exhaustive(name, algebra_bundle):
    _, sc, kd, _ = algebra_bundle(name)
    n = sc.dim
    for x, y, z in itertools.combinations(range(n), 3):
        ux, uy, uz = sc.unit(x), sc.unit(y), sc.unit(z)
        assert kd.form(sc.bracket(ux, uy), uz) == -kd.form(uy, sc.bracket(ux, uz))


@pytest.mark.parametrize("name", CORE_TYPES)
def test_rho_normalization(name, algebra_bundle):
    rs, _, kd, _ = algebra_bundle(name)
    assert root_action(kd, rs.highest, kd.hrho) == GaussianRational(2)


GRADING_DIMS = {
    "A1": (1, 0, 1, 0, 1),
    "A2": (1, 2, 2, 2, 1),
    "C2": (1, 2, 4, 2, 1),
    "G2": (1, 4, 4, 4, 1),
}


@pytest.mark.parametrize("name", sorted(GRADING_DIMS))
def test_grading_dimensions(name, algebra_bundle):
    _, sc, kd, gd = algebra_bundle(name)
    assert gd.dims() == GRADING_DIMS[name]
    assert sum(gd.dims()) == sc.dim


@pytest.mark.parametrize("name", CORE_TYPES)
def test_grading_matches_height_oracle(name, algebra_bundle):
    """ad(H_rho) eigenvalues from the table match the Cartan-pairing heights."""
    rs, sc, kd, gd = algebra_bundle(name)
    for root in rs.roots:
        idx = sc.basis.root_index(root)
        assert ad_eigenvalue(sc, kd, idx) == rs.rho_height(root)
        assert idx in gd.pieces[rs.rho_height(root)]


@pytest.mark.parametrize("name", CORE_TYPES)
def test_bracket_grading(name, algebra_bundle):
    """[G_i, G_j] lands in G_{i+j} (zero beyond the range)."""
    _, sc, kd, gd = algebra_bundle(name)
    level = {}
    for i, members in gd.pieces.items():
        for m in members:
            level[m] = i
    for a in range(sc.dim):
        for b in range(sc.dim):
            target = level[a] + level[b]
            image = sc.bracket(sc.unit(a), sc.unit(b))
            for k, c in enumerate(image):
                if not c.is_zero():
                    assert level[k] == target
                    assert -2 <= target <= 2


@pytest.mark.parametrize("name", CORE_TYPES)
def test_subalgebra_lattice(name, algebra_bundle):
    """dim relations: L0 = G00 + G1 + G2 and dim G = dim N + dim L0."""
    _, sc, kd, gd = algebra_bundle(name)
    d = gd.dims()
    g00 = len(gd.spans["G00"])
    assert g00 == d[2] - 1  # G0 = C H_rho + G00
    assert len(gd.spans["L0"]) == g00 + d[3] + d[4]
    assert sc.dim == len(gd.spans["N"]) + len(gd.spans["L0"])
    assert len(gd.spans["L"]) == d[2] + d[3] + d[4]


@pytest.mark.parametrize("name", CORE_TYPES)
def test_l0_is_centralizer_decomposition(name, algebra_bundle):
    """ker(ad e_rho) equals G00 + G1 + G2 as subspaces."""
    from contactcheck import linalg

    rs, sc, kd, gd = algebra_bundle(name)
    combined = list(gd.spans["G00"])
    for idx in gd.pieces[1] + gd.pieces[2]:
        combined.append(sc.unit(idx))
    assert linalg.same_span(combined, gd.spans["L0"])


G00_DIMS = {"A1": 0, "A2": 1, "G2": 3}


@pytest.mark.parametrize("name", sorted(G00_DIMS))
def test_g00_double_computation(name, algebra_bundle):
    _, sc, kd, gd = algebra_bundle(name)
    assert len(gd.spans["G00"]) == G00_DIMS[name]
    assert g00_span_check(gd, sc)


@pytest.mark.parametrize("name", CORE_TYPES)
def test_character_differential(name, algebra_bundle):
    _, sc, kd, _ = algebra_bundle(name)
    assert chi_differential(kd, sc) == GaussianRational(2)


@pytest.mark.parametrize("name", CORE_TYPES)
def test_opposite_constants_share_signs(name, algebra_bundle):
    """N_{a,b} and N_{-a,-b} agree up to a positive rational factor.

    Full equality would force irrational rescalings (square roots of Chevalley
    pairing norms), which Q(i) does not contain; sign agreement is the exact
    shadow that survives, and it holds for every bracketing pair.
    """
    rs, sc, _, _ = algebra_bundle(name)
    for a in rs.roots:
        for b in rs.roots:
            s = tuple(x + y for x, y in zip(a, b))
            if not any(s) or not rs.is_root(s):
                continue
            n_ab = sc.bracket(sc.unit(sc.basis.root_index(a)), sc.unit(sc.basis.root_index(b)))[
                sc.basis.root_index(s)
            ]
            neg_s = rs.negative(s)
            n_neg = sc.bracket(
                sc.unit(sc.basis.root_index(rs.negative(a))),
                sc.unit(sc.basis.root_index(rs.negative(b))),
            )[sc.basis.root_index(neg_s)]
            assert n_ab.is_real() and n_neg.is_real()
            assert not n_ab.is_zero() and not n_neg.is_zero()
            assert (n_ab.re > 0) == (n_neg.re > 0)
