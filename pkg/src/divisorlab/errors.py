"""Error taxonomy shared by all modules.

DomainError      -- inputs outside an operation's mathematical domain
ResourceError    -- a configured budget (memory, term count, operator order)
                    would be exceeded; message carries required vs available
PrecisionError   -- the requested computation cannot be delivered at the
                    working precision / available series order
"""


class DivisorLabError(Exception):
    pass


class DomainError(DivisorLabError, ValueError):
    pass


class ResourceError(DivisorLabError, RuntimeError):
    pass


class PrecisionError(DivisorLabError, ArithmeticError):
    pass
