"""Shared exception base for domain-level failures.

The CLI maps DomainError (and missing files) to exit code 1; usage
errors are handled by argparse and exit with code 2.
"""


class DomainError(Exception):
    """Invalid input or contract violation detected by the library."""
