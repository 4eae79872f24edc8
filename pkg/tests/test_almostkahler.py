import random
from fractions import Fraction

import pytest

from bott import almostkahler as ak
from bott.polynomials import Poly2


def random_data(rng):
    while True:
        p0 = Fraction(rng.randint(1, 10), rng.choice([1, 2]))
        p1, p2 = rng.randint(-5, 8), rng.randint(-5, 8)
        try:
            return ak.SquareFiberData.make(p0, p1, p2)
        except ValueError:
            continue


def derive_system(data):
    """Re-derive the 6x6 system from the extremal residual itself.

    Each unknown is bumped by one in turn; the residual coefficients are
    affine in the unknowns, so the bumps recover the matrix columns and
    the zero solution recovers minus the right-hand side.
    """
    basis = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]

    def residual_vector(values):
        res = ak.extremal_residual(data, ak.AkSolution(*values))
        return [res.coeffs.get(key, Fraction(0)) for key in basis]

    zero = [Fraction(0)] * 6
    base = residual_vector(zero)
    columns = []
    for i in range(6):
        bumped = zero[:]
        bumped[i] = Fraction(1)
        col = residual_vector(bumped)
        columns.append([col[j] - base[j] for j in range(6)])
    matrix = [[columns[i][j] for i in range(6)] for j in range(6)]
    rhs = [-base[j] for j in range(6)]
    return matrix, rhs


class TestData:
    def test_corner_positivity(self):
        with pytest.raises(ValueError):
            ak.SquareFiberData.make(1, -1, 0)
        with pytest.raises(ValueError):
            ak.SquareFiberData.make(1, 2, -3)
        with pytest.raises(ValueError):
            ak.SquareFiberData.make(0, 1, 1)
        ak.SquareFiberData.make(5, 3, -3)


class TestSolve:
    def test_product_case(self):
        data = ak.SquareFiberData.make(1, 0, 0)
        sol = ak.solve_ak(data)
        assert (sol.a11, sol.a12, sol.a22, sol.A1, sol.A2) == (0, 0, 0, 0, 0)
        assert sol.A3 == 12

    def test_swap_symmetry(self):
        rng = random.Random(31)
        for _ in range(25):
            data = random_data(rng)
            mirrored = ak.SquareFiberData.make(data.p0, data.p2, data.p1)
            s1, s2 = ak.solve_ak(data), ak.solve_ak(mirrored)
            assert (s1.a11, s1.A1) == (s2.a22, s2.A2)
            assert (s1.a22, s1.A2) == (s2.a11, s2.A1)
            assert s1.a12 == s2.a12 and s1.A3 == s2.A3

    def test_equal_weights_symmetric(self):
        sol = ak.solve_ak(ak.SquareFiberData.make(1, 1, 1))
        assert sol.A1 == sol.A2 and sol.a11 == sol.a22

    def test_residual_vanishes(self):
        rng = random.Random(32)
        for _ in range(100):
            data = random_data(rng)
            assert ak.extremal_residual(data, ak.solve_ak(data)).is_zero()

    def test_system_rederivation(self):
        rng = random.Random(33)
        for _ in range(20):
            data = random_data(rng)
            matrix, rhs = derive_system(data)
            expected_matrix, expected_rhs = ak.system_matrix(data)
            assert matrix == expected_matrix
            assert rhs == expected_rhs

    def test_determinant_identity(self):
        rng = random.Random(34)
        for _ in range(40):
            data = random_data(rng)
            matrix, _ = ak.system_matrix(data)
            assert _gauss_det(matrix) == ak.system_determinant(data)

    def test_csc_forces_product(self):
        half_steps = [Fraction(k, 2) for k in range(1, 11)]
        for p1 in range(-10, 11):
            for p2 in range(-10, 11):
                for p0 in half_steps:
                    try:
                        data = ak.SquareFiberData.make(p0, p1, p2)
                    except ValueError:
                        continue
                    sol = ak.solve_ak(data)
                    if sol.A1 == 0 and sol.A2 == 0:
                        assert p1 == 0 and p2 == 0


def _gauss_det(matrix):
    m = [row[:] for row in matrix]
    n = len(m)
    sign, det = 1, Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return sign * det


class TestPositivity:
    def test_positive_weights(self):
        for p0, p1, p2 in [(1, 1, 1), (1, 2, 4), (Fraction(1, 2), 1, 1), (5, 2, 4)]:
            data = ak.SquareFiberData.make(p0, p1, p2)
            assert ak.check_positivity(data, ak.solve_ak(data))

    def test_product_positive(self):
        data = ak.SquareFiberData.make(1, 0, 0)
        assert ak.check_positivity(data, ak.solve_ak(data))

    def test_injected_violation(self):
        data = ak.SquareFiberData.make(1, 1, 1)
        sol = ak.solve_ak(data)
        bad = ak.AkSolution(Fraction(-100), sol.a12, sol.a22, sol.A1, sol.A2, sol.A3)
        assert not ak.check_positivity(data, bad)

    def test_touching_zero_at_center_fails(self):
        # 2Q + a11 z1(1-z1) with a11 = -8 p0 touches zero on the center line
        data = ak.SquareFiberData.make(1, 0, 0)
        grazing = ak.AkSolution(Fraction(-8), Fraction(0), Fraction(0),
                                Fraction(0), Fraction(0), Fraction(12))
        assert not ak.check_positivity(data, grazing)

    def test_undecidable_graze_is_inconclusive(self):
        # (z1 - 1/3)^2 vanishes on a non-dyadic line: neither sign certifies
        z1 = Poly2.var(0)
        graze = (z1 - Fraction(1, 3)) * (z1 - Fraction(1, 3))
        with pytest.raises(ak.Inconclusive):
            ak._certify_sign(graze, depth=8)


class TestIntegrability:
    def test_product_integrable(self):
        data = ak.SquareFiberData.make(1, 0, 0)
        assert ak.check_integrability(data, ak.solve_ak(data))

    def test_positive_weights_not_integrable(self):
        data = ak.SquareFiberData.make(1, 2, 2)
        assert not ak.check_integrability(data, ak.solve_ak(data))

    def test_single_point_failure(self):
        data = ak.SquareFiberData.make(5, 2, 4)
        sol = ak.solve_ak(data)
        assert not ak.check_integrability(data, sol,
                                          samples=[(Fraction(1, 3), Fraction(1, 3))])

    def test_positive_scan(self):
        for p1 in range(1, 6):
            for p2 in range(1, 6):
                data = ak.SquareFiberData.make(1, p1, p2)
                assert not ak.check_integrability(data, ak.solve_ak(data))

    def test_singular_sample(self):
        data = ak.SquareFiberData.make(1, 1, 1)
        sol = ak.solve_ak(data)
        with pytest.raises(ak.SingularSample):
            ak.check_integrability(data, sol, samples=[(0, 0)])


class TestBoundary:
    def test_valid_solution_passes(self):
        rng = random.Random(35)
        for _ in range(25):
            data = random_data(rng)
            assert ak.boundary_conditions_check(data, ak.solve_ak(data))

    def test_off_diagonal_perturbation_harmless(self):
        data = ak.SquareFiberData.make(1, 2, 2)
        sol = ak.solve_ak(data)
        perturbed = ak.AkSolution(sol.a11, sol.a12 + 7, sol.a22,
                                  sol.A1, sol.A2, sol.A3)
        assert ak.boundary_conditions_check(data, perturbed)

    def test_wrong_normal_derivative_fails(self):
        data = ak.SquareFiberData.make(1, 2, 2)
        _, p12, p22 = ak.assemble_p(data, ak.solve_ak(data))
        z1 = Poly2.var(0)
        bad_p11 = z1 * (1 - z1)     # drops the 2Q factor
        assert not ak.verify_boundary(data, bad_p11, p12, p22)
