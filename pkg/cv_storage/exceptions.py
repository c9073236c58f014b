"""Error hierarchy shared by every cv_storage module."""


class CvStorageError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(CvStorageError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvariantViolation(CvStorageError, ArithmeticError):
    """A quantity that must describe a covariance matrix does not."""


class UnsupportedConfiguration(CvStorageError):
    """The requested construction is only defined for equal loss factors."""


class ConfigError(CvStorageError):
    """A configuration file or command-line value could not be used."""
