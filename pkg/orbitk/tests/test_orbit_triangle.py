import itertools
import random
import unittest

from sympy import Matrix, eye

from orbitk.abgroup import FgAbGroup, GroupHom, Presentation
from orbitk.config import Settings
from orbitk.errors import (
    DegreeOutOfWindow,
    DimensionMismatch,
    InvalidSpec,
    NonInvertibleAuto,
)
from orbitk.exactla import IntMatrix, rank
from orbitk.fields import PrimeField
from orbitk.orbit_triangle import (
    FieldDegree,
    GroupDegree,
    InvariantSpec,
    extension_warnings,
    fundamental_split,
    hp_sixterm,
    kh0_orbit,
    kh0_orbit_report,
    orbit_degree,
    orbit_groups,
    suspension_orbit,
    universal_coeff_check,
)
from orbitk.quiver import coxeter_matrix
from orbitk.quiver_presets import QuiverFactory


def random_group(rng: random.Random) -> FgAbGroup:
    return FgAbGroup.from_invariants(
        rng.randint(0, 2), [rng.randint(2, 12) for _ in range(rng.randint(0, 2))]
    )


def torsion_orders(group: FgAbGroup):
    return list(group.invariant_factors)


def brute_force_two_torsion(group: FgAbGroup) -> FgAbGroup:
    """Count {g : 2g = 0} in the torsion part by enumerating every element."""
    orders = torsion_orders(group)
    count = sum(
        1
        for element in itertools.product(*(range(d) for d in orders))
        if all((2 * x) % d == 0 for x, d in zip(element, orders))
    )
    return FgAbGroup.from_invariants(0, [2] * (count.bit_length() - 1))


def brute_force_mod_two(group: FgAbGroup) -> FgAbGroup:
    """Count G/2G: each Z gives Z/2, each Z/d gives d / |2·Z/d| cosets."""
    count = 2**group.rank
    for d in torsion_orders(group):
        doubles = {(2 * x) % d for x in range(d)}
        count *= d // len(doubles)
    return FgAbGroup.from_invariants(0, [2] * (count.bit_length() - 1))


class TestInvariantSpec(unittest.TestCase):
    """
    Test cases for invariant specs and their validation.
    """

    def test_non_invertible_auto_rejected(self):
        """
        Test that multiplication by 2 on Z is not accepted as an automorphism.
        """
        with self.assertRaises(NonInvertibleAuto):
            InvariantSpec(
                {0: GroupDegree.of(FgAbGroup.free(1), IntMatrix.from_rows([[2]]))}
            )

    def test_field_flag_must_match_data(self):
        """
        Test that field coefficients require FieldDegree data.
        """
        with self.assertRaises(InvalidSpec):
            InvariantSpec(
                {0: GroupDegree.of(FgAbGroup.free(1))}, field_coefficients=True
            )

    def test_identity_action_checked(self):
        """
        Test that identity_action rejects a nontrivial automorphism.
        """
        with self.assertRaises(InvalidSpec):
            InvariantSpec(
                {0: GroupDegree.of(FgAbGroup.free(1), IntMatrix.from_rows([[-1]]))},
                identity_action=True,
            )

    def test_modulus_must_annihilate(self):
        """
        Test that a Z/4 degree is rejected for coefficients mod 2.
        """
        with self.assertRaises(InvalidSpec):
            InvariantSpec({0: GroupDegree.of(FgAbGroup.cyclic(4))}, modulus=2)
        spec = InvariantSpec({0: GroupDegree.of(FgAbGroup.cyclic(2))}, modulus=4)
        self.assertEqual(spec.modulus, 4)

    def test_connective_and_periodic_exclusive(self):
        """
        Test that a spec cannot be both connective and two-periodic.
        """
        with self.assertRaises(InvalidSpec):
            InvariantSpec(
                {0: FieldDegree.of(1), 1: FieldDegree.of(0)},
                connective=True,
                two_periodic=True,
                field_coefficients=True,
            )

    def test_degree_window(self):
        """
        Test querying outside the stored window of a non-connective spec.
        """
        spec = InvariantSpec({3: GroupDegree.of(FgAbGroup.free(1))})
        with self.assertRaises(DegreeOutOfWindow):
            spec.degree(2)
        with self.assertRaises(DegreeOutOfWindow):
            orbit_groups(spec)

    def test_field_degree_shape(self):
        """
        Test that an automorphism of the wrong size is rejected.
        """
        with self.assertRaises(DimensionMismatch):
            FieldDegree.of(2, [[1]])


class TestOrbitGroups(unittest.TestCase):
    """
    Test cases for the degree-by-degree orbit groups.
    """

    def test_connective_degree_zero(self):
        """
        Test connective K-theory: degree 0 is coker(K0(F) - Id), resolved.
        """
        phi = coxeter_matrix(QuiverFactory.create("A3"))
        spec = InvariantSpec(
            {0: GroupDegree.of(FgAbGroup.free(3), phi)}, connective=True
        )
        results = orbit_groups(spec)
        self.assertEqual([r.degree for r in results], [0, 1])
        self.assertEqual(results[0].resolved, FgAbGroup.cyclic(4))
        self.assertTrue(results[0].ker_piece.is_trivial())
        self.assertTrue(results[1].resolved.is_trivial())

    def test_fundamental_theorem_randomized(self):
        """
        Test F = Id resolves every degree to E_n (+) E_(n-1) for 20 random specs.
        """
        rng = random.Random(Settings.from_environment().seed)
        for _ in range(20):
            groups = {n: random_group(rng) for n in range(-1, 4)}
            spec = InvariantSpec(
                {n: GroupDegree.of(g) for n, g in groups.items()},
                identity_action=True,
            )
            for result in orbit_groups(spec):
                n = result.degree
                expected = groups[n].direct_sum(groups[n - 1])
                self.assertEqual(result.resolved, expected)
                self.assertFalse(result.ambiguous)

    def test_fundamental_split_ignores_autos(self):
        """
        Test fundamental_split replaces the automorphisms by the identity.
        """
        spec = InvariantSpec(
            {
                0: GroupDegree.of(FgAbGroup.free(1), IntMatrix.from_rows([[-1]])),
                1: GroupDegree.of(FgAbGroup.cyclic(3)),
            }
        )
        (result,) = fundamental_split(spec)
        self.assertEqual(result.resolved.render(), "Z (+) Z/3")

    def test_odd_suspension_on_integers(self):
        """
        Test E_n = Z with auto -1 gives Z/2 in each stored degree.
        """
        spec = InvariantSpec(
            {n: GroupDegree.of(FgAbGroup.free(1)) for n in range(0, 3)}
        )
        for result in suspension_orbit(spec, 1):
            self.assertEqual(result.coker_piece, FgAbGroup.cyclic(2))
            self.assertTrue(result.ker_piece.is_trivial())
            self.assertEqual(result.resolved, FgAbGroup.cyclic(2))

    def test_even_suspension_split(self):
        """
        Test an even suspension on connective Z^m gives Z^m in degrees 0 and 1.
        """
        spec = InvariantSpec({0: GroupDegree.of(FgAbGroup.free(2))}, connective=True)
        results = suspension_orbit(spec, 2)
        self.assertEqual([r.resolved for r in results], [FgAbGroup.free(2)] * 2)

    def test_odd_suspension_over_field_vanishes(self):
        """
        Test odd suspensions kill a characteristic-zero invariant.
        """
        spec = InvariantSpec(
            {0: FieldDegree.of(3), 1: FieldDegree.of(2)},
            two_periodic=True,
            field_coefficients=True,
        )
        self.assertTrue(all(r.resolved.is_trivial() for r in suspension_orbit(spec, 3)))

    def test_odd_suspension_in_characteristic_two(self):
        """
        Test that over F_2 the sign is invisible and everything survives.
        """
        field = PrimeField(2)
        spec = InvariantSpec(
            {0: FieldDegree.of(1, field=field), 1: FieldDegree.of(1, field=field)},
            two_periodic=True,
            field_coefficients=True,
        )
        dims = [r.resolved.rank for r in suspension_orbit(spec, 1)]
        self.assertEqual(dims, [2, 2])

    def test_two_periodic_shift(self):
        """
        Test a two-periodic spec gives the same orbit pieces in degrees n and n + 2.
        """
        swap = IntMatrix.from_rows([[0, 1], [1, 0]])
        spec = InvariantSpec(
            {
                0: GroupDegree.of(FgAbGroup.free(2), swap),
                1: GroupDegree.of(FgAbGroup.cyclic(4), IntMatrix.from_rows([[-1]])),
            },
            two_periodic=True,
        )
        self.assertEqual(spec.output_degrees(), [0, 1])
        for n in range(-4, 4):
            here, shifted = orbit_degree(spec, n), orbit_degree(spec, n + 2)
            self.assertEqual(here.coker_piece, shifted.coker_piece)
            self.assertEqual(here.ker_piece, shifted.ker_piece)
            self.assertEqual(here.resolved, shifted.resolved)
        self.assertEqual(orbit_degree(spec, 0).coker_piece, FgAbGroup.free(1))
        self.assertEqual(orbit_degree(spec, 0).ker_piece, FgAbGroup.cyclic(2))
        self.assertEqual(orbit_degree(spec, 1).coker_piece, FgAbGroup.cyclic(2))
        self.assertEqual(orbit_degree(spec, 1).ker_piece, FgAbGroup.free(1))

    def test_coker_rank_nullity(self):
        """
        Test rank coker(F − Id) + rank(F − Id) equals the rank of a free group.
        """
        rng = random.Random(Settings.from_environment().seed)
        for _ in range(60):
            size = rng.randint(1, 4)
            rows = IntMatrix.identity(size).to_rows()
            for _ in range(6):
                i, j = rng.randrange(size), rng.randrange(size)
                if i == j:
                    rows[i] = [-value for value in rows[i]]
                else:
                    factor = rng.randint(-2, 2)
                    rows[i] = [a + factor * b for a, b in zip(rows[i], rows[j])]
            auto = IntMatrix.from_rows(rows, cols=size)
            data = GroupDegree.of(FgAbGroup.free(size), auto)
            data.check_invertible(0)
            moved = rank(auto - IntMatrix.identity(size))
            self.assertEqual(data.coker_minus_identity().rank + moved, size)
            self.assertEqual(data.ker_minus_identity().rank + moved, size)

    def test_ambiguous_extension_warned(self):
        """
        Test Z/2 by Z/2 is reported as an unresolved extension with a warning.
        """
        spec = InvariantSpec(
            {
                0: GroupDegree.of(FgAbGroup.cyclic(2)),
                1: GroupDegree.of(FgAbGroup.cyclic(2)),
            }
        )
        results = suspension_orbit(spec, 1)
        self.assertTrue(results[0].ambiguous)
        self.assertIsNone(results[0].resolved)
        warnings = extension_warnings(results)
        self.assertEqual([w.code for w in warnings], ["AMBIGUOUS_EXTENSION"])

    def test_universal_coefficients_randomized(self):
        """
        Test odd-suspension pieces against brute-force G/2G and 2-torsion.
        """
        rng = random.Random(Settings.from_environment().seed)
        for _ in range(20):
            e_prev, e_cur = random_group(rng), random_group(rng)
            spec = InvariantSpec(
                {0: GroupDegree.of(e_prev), 1: GroupDegree.of(e_cur)}
            )
            (result,) = suspension_orbit(spec, 1)
            self.assertEqual(result.coker_piece, brute_force_mod_two(e_cur))
            self.assertEqual(result.ker_piece, brute_force_two_torsion(e_prev))
            self.assertTrue(universal_coeff_check(result, e_cur, e_prev))

    def test_universal_coefficient_examples(self):
        """
        Test the free, Z/4 and Z/6 cases of the universal coefficient check.
        """
        cases = [
            (FgAbGroup.free(1), FgAbGroup.free(1), "Z/2", "0"),
            (FgAbGroup.cyclic(4), FgAbGroup.free(1), "Z/2", "0"),
            (FgAbGroup.free(1), FgAbGroup.cyclic(6), "Z/2", "Z/2"),
        ]
        for e_m, e_prev, coker, ker in cases:
            spec = InvariantSpec({0: GroupDegree.of(e_prev), 1: GroupDegree.of(e_m)})
            (result,) = suspension_orbit(spec, 1)
            self.assertEqual(result.coker_piece.render(), coker)
            self.assertEqual(result.ker_piece.render(), ker)
            self.assertTrue(universal_coeff_check(result, e_m, e_prev))


class TestKh0AndHp(unittest.TestCase):
    """
    Test cases for KH_0 of orbit categories and the HP six-term sequence.
    """

    def test_kh0_coxeter_a5(self):
        """
        Test coker(Coxeter(A5) - Id) is Z/6.
        """
        p = Presentation.free(5)
        f = GroupHom.endomorphism(p, coxeter_matrix(QuiverFactory.create("A5")))
        self.assertEqual(kh0_orbit(p, f), FgAbGroup.cyclic(6))

    def test_kh0_identity(self):
        """
        Test F = Id leaves K0 = Z^m unchanged.
        """
        p = Presentation.free(3)
        self.assertEqual(kh0_orbit(p, GroupHom.identity(p)), FgAbGroup.free(3))

    def test_kh0_kronecker(self):
        """
        Test -Coxeter of the 3-Kronecker quiver gives Z/3 (+) Z/3.
        """
        p = Presentation.free(2)
        phi = coxeter_matrix(QuiverFactory.create("kronecker3")).scale(-1)
        group = kh0_orbit(p, GroupHom.endomorphism(p, phi))
        self.assertEqual(group.render(), "Z/3 (+) Z/3")

    def test_kh0_report_statements(self):
        """
        Test the report lists the asserted statements and the regularity warning.
        """
        p = Presentation.free(1)
        report = kh0_orbit_report(p, GroupHom.identity(p), h0_triangulated=True)
        self.assertEqual(report.statements[0], "KH_0 = Z")
        self.assertEqual(len(report.statements), 4)
        self.assertEqual(report.to_dict()["warnings"][0]["code"], "REGULARITY_ASSUMED")

    def test_hp_identity_and_odd_suspension(self):
        """
        Test F = Id doubles up and F = -Id kills everything.
        """
        identity = lambda n: [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        minus = lambda n: [[-1 if i == j else 0 for j in range(n)] for i in range(n)]
        self.assertEqual(hp_sixterm(2, 3, identity(2), identity(3)), (5, 5))
        self.assertEqual(hp_sixterm(2, 3, minus(2), minus(3)), (0, 0))

    def test_hp_suspension_parity(self):
        """
        Test auto (-1)^n Id gives doubled dimensions for even n and zero for odd n.
        """
        for n in range(4):
            sign = -1 if n % 2 else 1
            f_even = [[sign, 0], [0, sign]]
            f_odd = [[sign]]
            expected = (0, 0) if n % 2 else (3, 3)
            self.assertEqual(hp_sixterm(2, 1, f_even, f_odd), expected)

    def test_hp_genus_family(self):
        """
        Test the genus-g line bundle matrices give (1 + 2g, 1 + 2g).
        """
        for g in range(0, 6):
            for d in range(1, 6):
                size = 2 * g
                f_odd = [[int(i == j) for j in range(size)] for i in range(size)]
                plus, minus = hp_sixterm(2, 2 * g, [[1, 0], [d, 1]], f_odd)
                self.assertEqual((plus, minus), (1 + 2 * g, 1 + 2 * g))

    def test_hp_sixterm_exactness(self):
        """
        Test HP± is coker(F − Id) of its parity plus ker(F − Id) of the other.
        """
        rng = random.Random(Settings.from_environment().seed)
        for _ in range(40):
            even_dim, odd_dim = rng.randint(1, 4), rng.randint(1, 4)
            f_even = [
                [rng.randint(-2, 2) for _ in range(even_dim)] for _ in range(even_dim)
            ]
            f_odd = [
                [rng.randint(-2, 2) for _ in range(odd_dim)] for _ in range(odd_dim)
            ]
            even = Matrix(f_even) - eye(even_dim)
            odd = Matrix(f_odd) - eye(odd_dim)
            coker_even, ker_even = len(even.T.nullspace()), len(even.nullspace())
            coker_odd, ker_odd = len(odd.T.nullspace()), len(odd.nullspace())
            self.assertEqual(
                hp_sixterm(even_dim, odd_dim, f_even, f_odd),
                (coker_even + ker_odd, coker_odd + ker_even),
            )

    def test_hp_shape_mismatch(self):
        """
        Test that a matrix of the wrong size raises DimensionMismatch.
        """
        with self.assertRaises(DimensionMismatch):
            hp_sixterm(2, 0, [[1]], [])


if __name__ == "__main__":
    unittest.main()
