"""Check modules.

Importing this package registers every check with the suite, in module order.
"""

from supermoduli.verification.checks import cohomology, family, groups, susy

__all__ = ["cohomology", "family", "groups", "susy"]
