"""Exception hierarchy.

``ConfigError`` subclasses signal bad user input (CLI exit code 2); every
other ``CompfluxError`` is a numerical or physical-validity failure (exit 3).
"""


class CompfluxError(Exception):
    pass


class ConfigError(CompfluxError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class UnitError(ConfigError):
    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


class RangeError(ConfigError):
    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


# rf-SQUID
class NoDoubleWell(CompfluxError, ValueError):
    pass


class SingularSensitivity(CompfluxError, ArithmeticError):
    pass


class NoConvergence(CompfluxError, ArithmeticError):
    pass


class GridTooCoarse(CompfluxError, ArithmeticError):
    pass


class PerturbationInvalid(CompfluxError, ValueError):
    pass


# Ising
class LongitudinalTooLarge(CompfluxError, ValueError):
    pass


class AtCriticality(CompfluxError, ValueError):
    pass


class TooLarge(CompfluxError, ValueError):
    pass


# coupling / capacitance / noise / eeem / design
class RatioTooLarge(CompfluxError, ValueError):
    pass


class GeometryInvalid(CompfluxError, ValueError):
    pass


class QuadratureFailure(CompfluxError, ArithmeticError):
    pass


class NotNormalized(CompfluxError, ValueError):
    pass


class InfeasibleDesign(CompfluxError, ValueError):
    pass
