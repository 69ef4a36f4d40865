import json
import os
import tempfile
import unittest

from click.testing import CliRunner

from orbitk.cli import dispatch, main, parse_int_rows, parse_rows, parse_vector
from orbitk.errors import InputValidationError


class TestParsers(unittest.TestCase):
    """
    Test cases for command-line value parsers.
    """

    def test_vectors_and_rows(self):
        """
        Test comma and semicolon separated values.
        """
        self.assertEqual(parse_vector("2, 0,-1"), [2, 0, -1])
        self.assertEqual(parse_rows("1,0;0,1"), [["1", "0"], ["0", "1"]])
        self.assertEqual(parse_rows(""), [])
        self.assertEqual(parse_int_rows("1,2;3,4").to_rows(), [[1, 2], [3, 4]])

    def test_malformed_values(self):
        """
        Test malformed vectors and ragged matrices are rejected.
        """
        with self.assertRaises(InputValidationError):
            parse_vector("1,x")
        with self.assertRaises(InputValidationError):
            parse_rows("1,;2,3")
        with self.assertRaises(InputValidationError):
            parse_int_rows("1,2;3")


class TestCommands(unittest.TestCase):
    """
    Test cases for the orbitk subcommands.
    """

    def setUp(self):
        """
        Set up the CLI runner.
        """
        self.runner = CliRunner()

    def invoke(self, *args, **kwargs):
        return self.runner.invoke(main, list(args), **kwargs)

    def test_kleinian(self):
        """
        Test the A_7 singularity gives Z/8.
        """
        result = self.invoke("kleinian", "--s", "7")
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output.splitlines()[0], "Z/8")

    def test_cluster_k0(self):
        """
        Test the 1-cluster category of the 3-Kronecker quiver.
        """
        result = self.invoke("cluster-k0", "--quiver", "kronecker3", "--n", "1")
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output.splitlines()[0], "Z/3 (+) Z/3")

    def test_cluster_k0_footnote(self):
        """
        Test the n = 0 footnote is printed for a non-Dynkin quiver.
        """
        result = self.invoke("cluster-k0", "--quiver", "kronecker3", "--n", "0")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("warning [N0_FOOTNOTE]", result.output)

    def test_cluster_triangle(self):
        """
        Test the KH template on the 0-cluster category of A2.
        """
        result = self.invoke(
            "cluster-triangle", "--quiver", "A2", "--n", "0", "--template", "kh"
        )
        self.assertEqual(result.exit_code, 0)
        self.assertIn("degree 0: Z/3", result.output)

    def test_coxeter(self):
        """
        Test the Coxeter matrix of A2 in the JSON report.
        """
        result = self.invoke("coxeter", "--quiver", "A2", "--json")
        data = json.loads(result.stdout)
        self.assertEqual(data["results"]["coxeter"], [["-1", "-1"], ["1", "0"]])
        self.assertTrue(data["results"]["dynkin"])

    def test_json_report_is_deterministic(self):
        """
        Test two runs with --json print identical reports.
        """
        args = ("cluster-k0", "--quiver", "kronecker3", "--n", "1", "--json")
        first, second = self.invoke(*args), self.invoke(*args)
        self.assertEqual(first.stdout, second.stdout)
        data = json.loads(first.stdout)
        self.assertEqual(data["results"]["group"], "Z/3 (+) Z/3")
        self.assertEqual(len(data["inputs_digest"]), 64)

    def test_orbit_triangle(self):
        """
        Test an identity spec read from a file.
        """
        spec = {
            "flags": {"connective": True, "identity_action": True},
            "degrees": {"0": {"group": "Z"}},
        }
        with tempfile.TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, "spec.json")
            with open(path, "w", encoding="utf-8") as handle:
                json.dump(spec, handle)
            result = self.invoke("orbit-triangle", "--spec", path)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output.splitlines()[:2], ["degree 0: Z", "degree 1: Z"])

    def test_hp_sixterm(self):
        """
        Test identity actions double the dimensions.
        """
        result = self.invoke("hp-sixterm", "--even-dim", "2", "--odd-dim", "0")
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output.splitlines()[0], "HP+ = 2, HP- = 2")

    def test_hp_line_bundle(self):
        """
        Test an elliptic curve preset gives (3, 3).
        """
        result = self.invoke(
            "hp-line-bundle", "--preset", "curve", "--genus", "1", "--degree", "1"
        )
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output.splitlines()[0], "HP+ = 3, HP- = 3")

    def test_spherical_k0(self):
        """
        Test the Euler row (2, 0) gives Z (+) Z/2.
        """
        result = self.invoke("spherical-k0", "--chi", "2,0", "--e", "1,0")
        self.assertEqual(result.output.splitlines()[0], "Z (+) Z/2")

    def test_curve_kh0_mismatch(self):
        """
        Test the odd case reports Z/4 and the formula warning.
        """
        result = self.invoke("curve-kh0", "--l", "1", "--n", "1")
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output.splitlines()[0], "Z/4")
        self.assertIn("DISPLAYED_FORMULA_MISMATCH", result.output)

    def test_snf_matrix(self):
        """
        Test the Smith diagonal of diag(2, 3).
        """
        result = self.invoke("snf", "--matrix", "2,0;0,3")
        self.assertEqual(result.output.splitlines()[0], "diag(1, 6)")

    def test_snf_random(self):
        """
        Test the property suite with a seed from the environment.
        """
        result = self.invoke("snf", "--random", "5", env={"ORBITK_SEED": "3"})
        self.assertEqual(result.exit_code, 0)
        self.assertIn("5 random matrices passed (seed 3)", result.output)

    def test_dg_orbit_point(self):
        """
        Test every check on the point passes and the colimit warns.
        """
        result = self.invoke("dg-orbit", "--example", "point", "--N", "3", "--P", "2")
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output.splitlines()[0], "dg-orbit point by Id: pass")
        self.assertIn("COLIMIT_NOT_STABILIZED", result.output)

    def test_dg_orbit_swap(self):
        """
        Test the selected checks for the swap on the disjoint pair.
        """
        result = self.invoke(
            "dg-orbit",
            "--example",
            "pair",
            "--functor-preset",
            "swap",
            "--check",
            "epsilon",
            "--check",
            "comparison",
            "--json",
        )
        self.assertEqual(result.exit_code, 0)
        data = json.loads(result.stdout)
        self.assertTrue(data["results"]["passed"])
        self.assertNotIn("orbit", data["results"])

    def test_usage_errors(self):
        """
        Test missing and conflicting options exit with status 2.
        """
        self.assertEqual(self.invoke("kleinian").exit_code, 2)
        self.assertEqual(self.invoke("snf").exit_code, 2)
        result = self.invoke(
            "cluster-k0", "--quiver", "A2", "--quiver-file", "a2.json", "--n", "1"
        )
        self.assertEqual(result.exit_code, 2)

    def test_input_errors(self):
        """
        Test invalid input exits with status 1 and names the problem.
        """
        result = self.invoke("cluster-k0", "--quiver", "B3", "--n", "1")
        self.assertEqual(result.exit_code, 1)
        self.assertIn("Supported families are:", result.output)
        self.assertEqual(self.invoke("kleinian", "--s", "0").exit_code, 1)
        self.assertEqual(self.invoke("dg-orbit", "--example", "nope").exit_code, 1)
        bad_seed = self.invoke("snf", "--random", "1", env={"ORBITK_SEED": "x"})
        self.assertEqual(bad_seed.exit_code, 1)

    def test_dispatch(self):
        """
        Test dispatch returns the report of the command.
        """
        report = dispatch(["kleinian", "--s", "3"])
        self.assertEqual(report.primary, "Z/4")
        self.assertEqual(report.results["group"], "Z/4")


if __name__ == "__main__":
    unittest.main()
