"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can report
failures without parsing messages.
"""


class FraisseError(Exception):
    code = "error"

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details


class DomainMismatch(FraisseError):
    code = "domain_mismatch"


class NotEnumerable(FraisseError):
    code = "not_enumerable"


class OutOfRange(FraisseError):
    code = "out_of_range"


class LawViolation(FraisseError):
    code = "law_violation"


class NotASubcategory(FraisseError):
    code = "not_a_subcategory"


class DensityFailure(FraisseError):
    code = "density_failure"


class NotDirected(FraisseError):
    code = "not_directed"


class CannotNormalize(FraisseError):
    code = "cannot_normalize"


class ExtensionStuck(FraisseError):
    code = "extension_stuck"


class PreconditionUnmet(FraisseError):
    code = "precondition_unmet"


class AbstractCategory(FraisseError):
    code = "abstract_category"


class UnknownInstance(FraisseError):
    code = "unknown_instance"


class IllegalMove(FraisseError):
    code = "illegal_move"


class WitnessNotFound(FraisseError):
    code = "witness_not_found"


class NoSpoilCertificate(FraisseError):
    code = "no_spoil_certificate"


class DominationWitnessNotFound(FraisseError):
    code = "domination_witness_not_found"


class EmptyList(FraisseError):
    code = "empty_list"


class Explosion(FraisseError):
    code = "explosion"
