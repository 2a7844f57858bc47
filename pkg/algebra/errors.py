class WorkbenchError(Exception):
    """Base class for every error raised by the workbench"""


class ConfigError(WorkbenchError):
    """Invalid run configuration"""


class ParseError(WorkbenchError):
    """Syntax or semantic error in an input file"""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, col {column or 1}: {message}"
        super().__init__(message)


class NonAdmissibleError(WorkbenchError):
    """Relations do not bound the path algebra to a finite dimension"""


class NotAnIdealError(WorkbenchError):
    """A subspace handed in as an ideal is not two-sided"""


class NonBasicAlgebraError(WorkbenchError):
    """Algebra has isomorphic indecomposable projectives and reduction is off"""


class NonSplitAlgebraError(WorkbenchError):
    """Some simple module has a proper field extension as endomorphism ring"""


class IsomorphismIndeterminate(WorkbenchError):
    """Isomorphism could be neither certified nor refuted"""


class IncompleteCatalogError(WorkbenchError):
    """An operation needed a complete indecomposable catalog"""


class HypothesisError(WorkbenchError):
    """Input violates the precondition of an operation"""


class InternalCheckError(WorkbenchError):
    """A consistency check that must hold failed"""
