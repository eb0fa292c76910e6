"""Exception types shared across the package."""


class CiteSpectroError(Exception):
    """Base class for all citespectro errors."""


class MalformedFile(CiteSpectroError):
    """An input file lacks the structure its format requires."""

    def __init__(self, message: str, source: str | None = None, line: int | None = None):
        self.source = source
        self.line = line
        prefix = ""
        if source is not None:
            prefix = f"{source}: " if line is None else f"{source}:{line}: "
        super().__init__(prefix + message)


class EmptyCorpus(CiteSpectroError):
    """An analysis was asked to run over a corpus with no usable records."""


class EmptyInput(CiteSpectroError):
    """A numeric operation received an empty series."""


class EmptyDistribution(CiteSpectroError):
    """A citation age distribution with zero total has no half-life."""


class ZeroTotal(CiteSpectroError):
    """A share cannot be computed against a zero denominator."""


class VenueNotFound(CiteSpectroError):
    """The corpus holds no citation pairs for the requested venue."""


class NoPapers(CiteSpectroError):
    """The venue published no papers in the requested year."""


class InsufficientData(CiteSpectroError):
    """Too few observations for the requested model order."""
