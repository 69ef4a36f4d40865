import logging
import unittest

from orbitk.config import Settings, configure_logging
from orbitk.errors import InputValidationError


class TestSettings(unittest.TestCase):
    """
    Test cases for settings read from the environment.
    """

    def test_defaults(self):
        """
        Test an empty environment gives seed 0 and WARNING.
        """
        settings = Settings.from_environment({})
        self.assertEqual(settings, Settings(seed=0, log_level="WARNING"))

    def test_values(self):
        """
        Test the seed and a lower-case level are read.
        """
        settings = Settings.from_environment(
            {"ORBITK_SEED": "42", "ORBITK_LOG_LEVEL": "debug"}
        )
        self.assertEqual(settings.seed, 42)
        self.assertEqual(settings.log_level, "DEBUG")

    def test_invalid_values(self):
        """
        Test a non-integer seed and an unknown level are rejected.
        """
        with self.assertRaises(InputValidationError):
            Settings.from_environment({"ORBITK_SEED": "abc"})
        with self.assertRaises(InputValidationError):
            Settings.from_environment({"ORBITK_LOG_LEVEL": "LOUD"})


class TestConfigureLogging(unittest.TestCase):
    """
    Test cases for the package logger setup.
    """

    def test_single_handler(self):
        """
        Test repeated calls keep one handler and update the level.
        """
        configure_logging("INFO")
        package_logger = configure_logging("ERROR")
        self.assertEqual(package_logger.name, "orbitk")
        self.assertEqual(len(package_logger.handlers), 1)
        self.assertEqual(package_logger.level, logging.ERROR)


if __name__ == "__main__":
    unittest.main()
