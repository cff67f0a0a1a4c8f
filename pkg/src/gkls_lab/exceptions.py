"""Base exception for every error the laboratory raises on purpose."""


class LabError(Exception):
    """Root of the package's exception hierarchy.

    The command line maps any ``LabError`` that escapes a command to exit
    code 1 (validation error).
    """
