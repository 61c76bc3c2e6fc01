"""
Errors Module

Exception hierarchy shared by the kernels, the sweeps and the CLI.
The CLI maps every BeilabError to exit code 2.
"""


class BeilabError(Exception):
    """Base class for operational errors (bad input, size caps, config)."""


class Graph6ParseError(BeilabError):
    def __init__(self, offset: int, message: str):
        self.offset = offset
        super().__init__(f"graph6 parse error at byte {offset}: {message}")


class EdgeListParseError(BeilabError):
    pass


class SizeLimitError(BeilabError):
    pass


class PreconditionError(BeilabError):
    pass


class InvalidPrimeError(BeilabError):
    pass


class NotSquarefreeError(BeilabError):
    pass


class ConfigError(BeilabError):
    pass
