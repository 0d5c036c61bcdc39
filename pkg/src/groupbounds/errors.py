"""Exception hierarchy.

Every error carries a stable ``code`` string so that machine-readable output
(JSON reports, CLI exit paths) can refer to it without parsing messages.
"""

from fractions import Fraction


class GroupBoundsError(Exception):
    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        return {"code": self.code, "message": str(self), "details": _plain(self.details)}


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return repr(obj)


# table validation

class ValidationError(GroupBoundsError):
    code = "validation_error"


class NotSquare(ValidationError):
    code = "not_square"


class NotAssociative(ValidationError):
    code = "not_associative"


class NoIdentityAtZero(ValidationError):
    code = "no_identity_at_zero"


class MissingInverse(ValidationError):
    code = "missing_inverse"


class NotLatinSquare(ValidationError):
    code = "not_latin_square"


class IndexOutOfRange(GroupBoundsError, IndexError):
    code = "index_out_of_range"


# structure

class LatticeTooLarge(GroupBoundsError):
    code = "lattice_too_large"


class NotNormal(GroupBoundsError):
    code = "not_normal"


# catalog / files

class InvalidSpec(GroupBoundsError, ValueError):
    code = "invalid_spec"


class OrderCapExceeded(GroupBoundsError):
    code = "order_cap_exceeded"


class CayleySyntaxError(GroupBoundsError):
    code = "cayley_syntax_error"


class OrderMismatch(GroupBoundsError):
    code = "order_mismatch"


# automorphisms

class AutGroupTooLarge(GroupBoundsError):
    code = "aut_group_too_large"


class NotAnAutomorphism(GroupBoundsError):
    code = "not_an_automorphism"


# bounds / lemmas

class RhoOutOfRange(GroupBoundsError, ValueError):
    code = "rho_out_of_range"


class HypothesisViolated(GroupBoundsError):
    code = "hypothesis_violated"


class InvalidParameters(GroupBoundsError, ValueError):
    code = "invalid_parameters"


class CounterexampleFound(GroupBoundsError):
    """A checked inequality failed. Either a published result is false or
    this package has a bug; callers must not swallow it."""

    code = "counterexample_found"
