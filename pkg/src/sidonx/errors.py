"""Exception hierarchy shared by all modules."""


class SidonError(Exception):
    """Base class for every error raised by sidonx."""


class CompositeModulus(SidonError, ValueError):
    pass


class FieldTooLarge(SidonError, ValueError):
    pass


class ExhaustedCandidates(SidonError, RuntimeError):
    pass


class CertificationFailed(SidonError, RuntimeError):
    """An internal invariant was violated; the attached witness explains how."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class EmptyInput(SidonError, ValueError):
    pass


class InvalidOrder(SidonError, ValueError):
    pass


class UnknownValue(SidonError, KeyError):
    pass


class ParseError(SidonError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyFile(SidonError, ValueError):
    pass


class UnknownFamily(SidonError, ValueError):
    pass


class InvalidParams(SidonError, ValueError):
    pass
