import random
import unittest

from sympy import Matrix, Rational

from orbitk.abgroup import FgAbGroup
from orbitk.config import Settings
from orbitk.errors import CyclicQuiver, InputValidationError, InvalidQuiver
from orbitk.exactla import IntMatrix, cokernel_presentation
from orbitk.quiver import (
    Quiver,
    adjacency_matrix,
    cartan_inverse,
    cartan_matrix,
    coxeter_matrix,
    euler_form,
    is_dynkin,
    tits_form,
)
from orbitk.quiver_presets import QuiverFactory, QuiverFamily


class TestQuiver(unittest.TestCase):
    """
    Test cases for quiver validation and the Cartan and Coxeter matrices.
    """

    def setUp(self):
        """
        Set up the small quivers used throughout.
        """
        self.a2 = QuiverFactory.create("A2")
        self.point = Quiver(("1",))
        self.kronecker3 = QuiverFactory.create("kronecker3")

    def test_cartan_matrices(self):
        """
        Test path counts for A2, a single vertex and the 3-Kronecker quiver.
        """
        self.assertEqual(cartan_matrix(self.a2).to_rows(), [[1, 1], [0, 1]])
        self.assertEqual(cartan_matrix(self.point).to_rows(), [[1]])
        self.assertEqual(cartan_matrix(self.kronecker3).to_rows(), [[1, 3], [0, 1]])

    def test_cartan_counts_long_paths(self):
        """
        Test that paths of length two are counted in A3.
        """
        self.assertEqual(
            cartan_matrix(QuiverFactory.create("A3")).to_rows(),
            [[1, 1, 1], [0, 1, 1], [0, 0, 1]],
        )

    def test_coxeter_matrices(self):
        """
        Test the Coxeter matrices -C^-T C of the small quivers.
        """
        self.assertEqual(coxeter_matrix(self.a2).to_rows(), [[-1, -1], [1, 0]])
        self.assertEqual(coxeter_matrix(self.point).to_rows(), [[-1]])
        self.assertEqual(
            coxeter_matrix(self.kronecker3).to_rows(), [[-1, -3], [3, 8]]
        )

    def test_euler_form(self):
        """
        Test the Euler form C^-T.
        """
        self.assertEqual(euler_form(self.a2).to_rows(), [[1, 0], [-1, 1]])
        self.assertEqual(euler_form(self.point).to_rows(), [[1]])
        self.assertEqual(euler_form(self.kronecker3).to_rows(), [[1, 0], [-3, 1]])

    def test_adjacency_and_tits_form(self):
        """
        Test arrow counts and the symmetric Tits form.
        """
        self.assertEqual(adjacency_matrix(self.kronecker3).to_rows(), [[0, 3], [0, 0]])
        self.assertEqual(
            tits_form(self.a2), Matrix([[1, Rational(-1, 2)], [Rational(-1, 2), 1]])
        )

    def test_cartan_inverse_is_inverse(self):
        """
        Test C times its inverse is the identity on a D5 quiver.
        """
        d5 = QuiverFactory.create("D5")
        self.assertEqual(
            cartan_matrix(d5) @ cartan_inverse(d5), IntMatrix.identity(5)
        )

    def test_random_acyclic_quivers(self):
        """
        Test Cartan and Coxeter determinants are units on random acyclic quivers.
        """
        rng = random.Random(Settings.from_environment().seed)
        for _ in range(30):
            size = rng.randint(1, 7)
            vertices = tuple(str(i) for i in range(size))
            arrows = tuple(
                (vertices[i], vertices[j])
                for i in range(size)
                for j in range(i + 1, size)
                for _ in range(rng.choice([0, 0, 1, 2]))
            )
            order = list(vertices)
            rng.shuffle(order)
            q = Quiver(tuple(order), arrows)
            self.assertIn(cartan_matrix(q).det(), (1, -1), msg=str(arrows))
            self.assertIn(coxeter_matrix(q).det(), (1, -1), msg=str(arrows))
            self.assertEqual(
                cartan_matrix(q) @ cartan_inverse(q), IntMatrix.identity(size)
            )

    def test_coxeter_of_a3_minus_identity(self):
        """
        Test coker(Coxeter(A3) - Id) is Z/4.
        """
        phi = coxeter_matrix(QuiverFactory.create("A3"))
        group = cokernel_presentation(phi - IntMatrix.identity(3))
        self.assertEqual(group, FgAbGroup.cyclic(4))

    def test_cyclic_quiver_rejected(self):
        """
        Test that an oriented cycle raises CyclicQuiver.
        """
        with self.assertRaises(CyclicQuiver):
            Quiver(("1", "2"), (("1", "2"), ("2", "1")))

    def test_unknown_vertex_rejected(self):
        """
        Test that an arrow to an undeclared vertex raises InvalidQuiver.
        """
        with self.assertRaises(InvalidQuiver):
            Quiver(("1",), (("1", "2"),))

    def test_from_json(self):
        """
        Test parsing a quiver from its JSON form.
        """
        q = Quiver.from_json({"vertices": ["a", "b"], "arrows": [["a", "b"]]}, "ab")
        self.assertEqual(q.label, "ab")
        self.assertEqual(cartan_matrix(q).to_rows(), [[1, 1], [0, 1]])
        with self.assertRaises(InputValidationError):
            Quiver.from_json({"arrows": []})

    def test_is_dynkin(self):
        """
        Test positive definiteness of the Tits form on ADE and Kronecker quivers.
        """
        for name in ["A1", "A5", "D4", "D6", "E6", "E7", "E8"]:
            self.assertTrue(is_dynkin(QuiverFactory.create(name)), msg=name)
        for name in ["kronecker2", "kronecker3"]:
            self.assertFalse(is_dynkin(QuiverFactory.create(name)), msg=name)


class TestQuiverFactory(unittest.TestCase):
    """
    Test cases for the preset quiver factory.
    """

    def test_preset_names(self):
        """
        Test that preset names are case-insensitive and accept a dash.
        """
        self.assertEqual(QuiverFactory.create("kronecker-3"), self.kronecker())
        self.assertEqual(len(QuiverFactory.create("e8").vertices), 8)

    def kronecker(self):
        return QuiverFactory.create("Kronecker3")

    def test_unsupported_family(self):
        """
        Test that an unknown family lists the supported ones.
        """
        with self.assertRaises(InputValidationError) as context:
            QuiverFactory.create("B3")
        self.assertIn("Supported families are:", str(context.exception))

    def test_invalid_sizes(self):
        """
        Test that out-of-range sizes are rejected.
        """
        for name in ["A0", "D3", "E9", "kronecker0"]:
            with self.assertRaises(InputValidationError):
                QuiverFactory.create(name)

    def test_register_family(self):
        """
        Test registering a custom family.
        """
        families = QuiverFactory.get_registered_families()
        try:
            QuiverFactory.register_family(
                "star", lambda s: Quiver(tuple(str(i) for i in range(s)))
            )
            self.assertEqual(len(QuiverFactory.create("star3").vertices), 3)
        finally:
            QuiverFactory._families = families
        self.assertIn(QuiverFamily.KRONECKER.value, families)


if __name__ == "__main__":
    unittest.main()
