class IoconfError(Exception):
    """Base class for all errors raised by ioconf."""


class ParseError(IoconfError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(IoconfError):
    pass


class UnknownStateError(IoconfError, KeyError):
    def __str__(self):
        return f"unknown state {self.args[0]!r}"


class FragmentError(IoconfError):
    pass


class CapExceeded(IoconfError):
    pass
