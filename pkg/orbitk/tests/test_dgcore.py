import unittest
from dataclasses import replace
from unittest.mock import patch

from orbitk.dgcore import (
    CATEGORIES,
    DgEndofunctor,
    FiniteDgCategoryBuilder,
    HomComplex,
    acyclic_pair,
    arrow_category,
    betti,
    check_h0_equivalence,
    collapse_functor,
    comparison_map_check,
    disjoint_pair,
    dual_numbers,
    epsilon_quasi_iso_check,
    h0_category,
    orbit_n,
    orbit_z,
    point_category,
    square_zero,
    square_zero_extension,
    swap_functor,
    validate_category,
    validate_functor,
)
from orbitk.errors import InvalidDgData, TruncationTooSmall
from orbitk.fields import FieldMatrix, PrimeField, RationalField

QQ = RationalField()


class TestFiniteDgCategory(unittest.TestCase):
    """
    Test cases for hom complexes, the builder and validation.
    """

    def test_examples_validate(self):
        """
        Test that every shipped example passes validation.
        """
        for name, make in CATEGORIES.items():
            a = make()
            self.assertIs(validate_category(a), a, msg=name)

    def test_differential_degree_checked(self):
        """
        Test that a differential of degree 0 is rejected.
        """
        with self.assertRaises(InvalidDgData):
            HomComplex(QQ, (0, 0), FieldMatrix.from_values(QQ, [[0, 0], [1, 0]]))

    def test_differential_squares_to_zero(self):
        """
        Test that d∘d ≠ 0 is rejected.
        """
        d = FieldMatrix.from_values(QQ, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
        with self.assertRaises(InvalidDgData):
            HomComplex(QQ, (0, 1, 2), d)

    def test_builder_errors(self):
        """
        Test empty categories, duplicate and unknown objects.
        """
        with self.assertRaises(InvalidDgData):
            FiniteDgCategoryBuilder().build()
        with self.assertRaises(InvalidDgData):
            FiniteDgCategoryBuilder().with_object("x").with_object("x")
        with self.assertRaises(InvalidDgData):
            (
                FiniteDgCategoryBuilder()
                .with_object("x")
                .with_hom("x", "x", [0])
                .with_hom("x", "z", [0])
                .build()
            )

    def test_missing_unit(self):
        """
        Test that an object with an empty endomorphism complex is rejected.
        """
        with self.assertRaises(InvalidDgData):
            FiniteDgCategoryBuilder().with_object("x").build()

    def test_composition_degree_checked(self):
        """
        Test that e∘e = 1 on the dual numbers violates degrees.
        """
        builder = (
            FiniteDgCategoryBuilder()
            .with_object("x")
            .with_hom("x", "x", [0, 1], ["1", "e"])
            .with_composition(("x", "x", "x"), 1, 1, [1, 0])
        )
        with self.assertRaises(InvalidDgData):
            builder.build()

    def test_compose_with_unit(self):
        """
        Test that composing with units is filled in by the builder.
        """
        a = arrow_category()
        arrow = a.basis_vector("x", "y", 0)
        self.assertEqual(a.compose("x", "y", "y", a.unit("y"), arrow), arrow)
        self.assertEqual(a.compose("x", "x", "y", arrow, a.unit("x")), arrow)

    def test_functor_validation(self):
        """
        Test that a functor sending 1 to e, or of the wrong shape, is rejected.
        """
        a = dual_numbers()
        bad = FieldMatrix.from_values(QQ, [[0, 0], [1, 0]])
        with self.assertRaises(InvalidDgData):
            validate_functor(DgEndofunctor(a, {"x": "x"}, {("x", "x"): bad}))
        with self.assertRaises(InvalidDgData):
            DgEndofunctor(a, {"x": "x"}, {("x", "x"): FieldMatrix.identity(QQ, 1)})

    def test_h0_equivalence(self):
        """
        Test that swapping passes and collapsing fails the H0 check.
        """
        pair = disjoint_pair()
        self.assertEqual(check_h0_equivalence(swap_functor(pair)).name, "swap")
        with self.assertRaises(InvalidDgData):
            check_h0_equivalence(collapse_functor(pair))

    def test_functor_powers(self):
        """
        Test that the square of the swap is the identity on objects.
        """
        f = swap_functor(disjoint_pair())
        self.assertEqual(f.power(2)("x"), "x")
        self.assertEqual(f.power(3)("x"), "y")
        self.assertEqual(f.power(0).name, "Id")


class TestHomology(unittest.TestCase):
    """
    Test cases for cohomology of hom complexes and H0 of a category.
    """

    def test_acyclic_hom(self):
        """
        Test that u → v has no cohomology.
        """
        hom = acyclic_pair().hom("x", "y")
        self.assertEqual((betti(hom, 0), betti(hom, 1)), (0, 0))

    def test_h0_dimensions(self):
        """
        Test H0 dimensions of the point, the dual numbers and the acyclic pair.
        """
        self.assertEqual(h0_category(point_category()).dimension("x", "x"), 1)
        self.assertEqual(h0_category(dual_numbers()).dimension("x", "x"), 1)
        h0 = h0_category(acyclic_pair())
        self.assertEqual(h0.dimension("x", "y"), 0)
        self.assertEqual(h0.dimension("y", "y"), 1)
        self.assertEqual(h0.to_dict()["objects"], ["x", "y"])


class TestOrbitCategory(unittest.TestCase):
    """
    Test cases for the weight-truncated orbit category A/F^N.
    """

    def test_point_is_polynomial(self):
        """
        Test End(x) of the point orbit is k[t] truncated at t^3.
        """
        a = point_category()
        orbit = orbit_n(a, DgEndofunctor.identity(a), 3)
        self.assertEqual(orbit.hom("x", "x").dims(), {0: 4})
        c = orbit.category
        for i in range(4):
            for j in range(4):
                g, f = c.basis_vector("x", "x", i), c.basis_vector("x", "x", j)
                product = orbit.compose("x", "x", "x", g, f)
                if i + j <= 3:
                    self.assertEqual(product, QQ.unit_vector(4, i + j))
                else:
                    self.assertFalse(any(product))

    def test_disjoint_pair_has_no_cross_homs(self):
        """
        Test hom(x, y) stays zero for the identity on the disjoint pair.
        """
        a = disjoint_pair()
        orbit = orbit_n(a, DgEndofunctor.identity(a), 1)
        self.assertEqual(orbit.hom("x", "y").dimension, 0)

    def test_dual_numbers_dims(self):
        """
        Test the dual numbers orbit has three copies of each degree at N = 2.
        """
        a = dual_numbers()
        orbit = orbit_n(a, DgEndofunctor.identity(a), 2)
        self.assertEqual(orbit.hom("x", "x").dims(), {0: 3, 1: 3})
        self.assertEqual(orbit.hom("x", "x").label(3), "t^1*e")

    def test_swap_weights(self):
        """
        Test the swap puts hom(x, y) in odd weights and hom(x, x) in even ones.
        """
        a = disjoint_pair()
        orbit = orbit_n(a, swap_functor(a), 3)
        self.assertEqual(orbit.weights[("x", "y")], (1, 3))
        self.assertEqual(orbit.weights[("x", "x")], (0, 2))

    def test_weight_grading(self):
        """
        Test that products of weights m and n land in weight m + n.
        """
        bound = 3
        for name in ["point", "dual", "arrow", "acyclic"]:
            a = CATEGORIES[name]()
            orbit = orbit_n(a, DgEndofunctor.identity(a), bound)
            c = orbit.category
            for x in a.objects:
                for y in a.objects:
                    for z in a.objects:
                        for i, n in enumerate(orbit.weights[(y, z)]):
                            for j, m in enumerate(orbit.weights[(x, y)]):
                                product = c.compose_basis(x, y, z, i, j)
                                support = {
                                    orbit.weights[(x, z)][k]
                                    for k, value in enumerate(product)
                                    if value
                                }
                                if m + n > bound:
                                    self.assertEqual(support, set(), msg=name)
                                else:
                                    self.assertLessEqual(support, {m + n}, msg=name)

    def test_epsilon_in_weight_one(self):
        """
        Test ε′ is the unit of F x placed in weight 1.
        """
        a = point_category()
        orbit = orbit_n(a, DgEndofunctor.identity(a), 2)
        self.assertEqual(orbit.epsilon("x"), QQ.vector([0, 1, 0]))
        self.assertEqual(orbit.include("x", "x", a.unit("x")), QQ.vector([1, 0, 0]))
        with self.assertRaises(TruncationTooSmall):
            orbit_n(a, DgEndofunctor.identity(a), 0).epsilon("x")

    def test_negative_bound(self):
        """
        Test that a negative weight bound raises TruncationTooSmall.
        """
        a = point_category()
        with self.assertRaises(TruncationTooSmall):
            orbit_n(a, DgEndofunctor.identity(a), -1)

    def test_collapse_rejected(self):
        """
        Test that a functor failing the H0 check is rejected by orbit_n.
        """
        a = disjoint_pair()
        with self.assertRaises(InvalidDgData):
            orbit_n(a, collapse_functor(a), 2)

    def test_functor_validated_on_entry(self):
        """
        Test a functor doubling the unit is rejected before any construction.
        """
        a = dual_numbers()
        doubling = DgEndofunctor(
            a, {"x": "x"}, {("x", "x"): FieldMatrix.from_values(QQ, [[2, 0], [0, 1]])}
        )
        with self.assertRaisesRegex(InvalidDgData, "not preserved"):
            orbit_n(a, doubling, 2)
        with self.assertRaisesRegex(InvalidDgData, "not preserved"):
            square_zero_extension(a, doubling)

    def test_prime_field(self):
        """
        Test that the construction works over GF(2).
        """
        a = dual_numbers(PrimeField(2))
        orbit = orbit_n(a, DgEndofunctor.identity(a), 2)
        self.assertEqual(orbit.hom("x", "x").dims(), {0: 3, 1: 3})


class TestColimit(unittest.TestCase):
    """
    Test cases for the colimit approximation of A/F^Z.
    """

    def test_point_does_not_stabilize(self):
        """
        Test the point grows by one each stage and reports a warning.
        """
        a = point_category()
        report = orbit_z(a, DgEndofunctor.identity(a), 3, 3)
        hom = report.hom("x", "x")
        self.assertEqual(list(hom.stage_dims), [{0: 4}, {0: 5}, {0: 6}, {0: 7}])
        self.assertFalse(hom.stabilized)
        self.assertEqual(
            [w.code for w in report.warnings], ["COLIMIT_NOT_STABILIZED"]
        )

    def test_zero_hom_is_stable(self):
        """
        Test that a zero hom counts as stabilized.
        """
        a = disjoint_pair()
        report = orbit_z(a, DgEndofunctor.identity(a), 2, 2)
        self.assertTrue(report.hom("x", "y").stabilized)
        self.assertFalse(report.stabilized)

    def test_weight_dims_match_orbit(self):
        """
        Test the reported weight dimensions equal those of A/F^N.
        """
        a = arrow_category()
        f = DgEndofunctor.identity(a)
        report = orbit_z(a, f, 2, 2)
        orbit = orbit_n(a, f, 2)
        for x, y in a.pairs():
            self.assertEqual(report.hom(x, y).weight_dims, orbit.weight_dims(x, y))

    def test_stage_count_checked(self):
        """
        Test that P = 0 raises TruncationTooSmall.
        """
        a = point_category()
        with self.assertRaises(TruncationTooSmall):
            orbit_z(a, DgEndofunctor.identity(a), 2, 0)


class TestSquareZeroExtension(unittest.TestCase):
    """
    Test cases for A⋉B₁.
    """

    def test_point_dims(self):
        """
        Test End(x) of the point extension is k in degrees 0 and -1.
        """
        a = point_category()
        b = square_zero(a, DgEndofunctor.identity(a))
        self.assertEqual(b.hom("x", "x").dims(), {-1: 1, 0: 1})
        self.assertEqual(b.name, "pointxB1")

    def test_bimodule_squares_to_zero(self):
        """
        Test that the bimodule part composes to zero and the unit acts as one.
        """
        a = point_category()
        extension = square_zero_extension(a, DgEndofunctor.identity(a))
        b = extension.category
        s = b.basis_vector("x", "x", extension.b_part("x", "x")[0])
        self.assertFalse(any(b.compose("x", "x", "x", s, s)))
        self.assertEqual(b.compose("x", "x", "x", b.unit("x"), s), s)
        self.assertEqual(b.compose("x", "x", "x", s, b.unit("x")), s)

    def test_dual_numbers_dims(self):
        """
        Test the shifted copy moves (0, 1) to (-1, 0).
        """
        a = dual_numbers()
        b = square_zero(a, DgEndofunctor.identity(a))
        self.assertEqual(b.hom("x", "x").dims(), {-1: 1, 0: 2, 1: 1})


class TestStructureChecks(unittest.TestCase):
    """
    Test cases for the ε′ and comparison checks.
    """

    def test_epsilon_identity(self):
        """
        Test ε′ is a quasi-isomorphism for the identity on the example categories.
        """
        for name in ["point", "pair", "dual", "arrow"]:
            a = CATEGORIES[name]()
            report = epsilon_quasi_iso_check(a, DgEndofunctor.identity(a), 4, 2)
            self.assertTrue(report.passed, msg=name)

    def test_epsilon_swap(self):
        """
        Test ε′ is a quasi-isomorphism for the swap on the disjoint pair.
        """
        a = disjoint_pair()
        report = epsilon_quasi_iso_check(a, swap_functor(a), 4, 2)
        self.assertTrue(report.passed)
        self.assertTrue(report.result("y").passed)
        self.assertTrue(report.to_dict()["passed"])

    def test_epsilon_bounds(self):
        """
        Test that N = 0 or P = 0 raises TruncationTooSmall.
        """
        a = point_category()
        f = DgEndofunctor.identity(a)
        with self.assertRaises(TruncationTooSmall):
            epsilon_quasi_iso_check(a, f, 0, 1)
        with self.assertRaises(TruncationTooSmall):
            epsilon_quasi_iso_check(a, f, 1, 0)

    def test_epsilon_collapse(self):
        """
        Test that the collapse is rejected before any check runs.
        """
        a = disjoint_pair()
        with self.assertRaises(InvalidDgData):
            epsilon_quasi_iso_check(a, collapse_functor(a), 2, 2)

    def test_epsilon_fails_when_e_is_killed(self):
        """
        Test the functor 1 -> 1, e -> 0 on the dual numbers fails in degree 1.
        """
        a = dual_numbers()
        kill = validate_functor(
            DgEndofunctor(
                a,
                {"x": "x"},
                {("x", "x"): FieldMatrix.from_values(QQ, [[1, 0], [0, 0]])},
                name="kill",
            )
        )
        check_h0_equivalence(kill)
        report = epsilon_quasi_iso_check(a, kill, 3, 2)
        self.assertIs(report.passed, False)
        self.assertEqual(
            report.result("x").to_dict()["first_failure"],
            {"source": "x", "stage": 0, "weight": 0, "degree": 1},
        )

    def test_comparison_identity(self):
        """
        Test the comparison map on the point, the pair and the dual numbers.
        """
        for name in ["point", "pair", "dual"]:
            a = CATEGORIES[name]()
            report = comparison_map_check(a, DgEndofunctor.identity(a), 4)
            self.assertTrue(report.passed, msg=name)
            self.assertTrue(report.pair("x", "x").injective, msg=name)

    def test_comparison_arrow_and_acyclic(self):
        """
        Test the comparison map on categories with a nonzero cross hom.
        """
        for name in ["arrow", "acyclic"]:
            a = CATEGORIES[name]()
            report = comparison_map_check(a, DgEndofunctor.identity(a), 3)
            self.assertTrue(report.passed, msg=name)

    def test_comparison_swap(self):
        """
        Test the comparison map for the swap on the disjoint pair.
        """
        a = disjoint_pair()
        report = comparison_map_check(a, swap_functor(a), 4)
        self.assertTrue(report.passed)
        self.assertEqual(len(report.to_dict()["pairs"]), 4)

    def test_comparison_bound(self):
        """
        Test that N < 2 raises TruncationTooSmall.
        """
        a = point_category()
        with self.assertRaises(TruncationTooSmall):
            comparison_map_check(a, DgEndofunctor.identity(a), 1)

    def test_comparison_detects_broken_composition(self):
        """
        Test that dropping ε′∘t^0 from the orbit composition breaks the chain map.
        """
        a = point_category()
        f = DgEndofunctor.identity(a)
        orbit = orbit_n(a, f, 3)
        tables = {
            triple: dict(table) for triple, table in orbit.category.composition.items()
        }
        del tables[("x", "x", "x")][(1, 0)]
        broken = replace(orbit, category=replace(orbit.category, composition=tables))
        with patch("orbitk.dgcore.checks.orbit_n", return_value=broken):
            report = comparison_map_check(a, f, 3)
        self.assertIs(report.passed, False)
        pair = report.pair("x", "x")
        self.assertTrue(pair.injective)
        self.assertFalse(pair.chain_map)
        self.assertEqual(pair.first_failure, ("chain_map", 0))


if __name__ == "__main__":
    unittest.main()
