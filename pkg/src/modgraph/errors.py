"""Exception hierarchy. Every error raised on bad input derives from ModGraphError."""


class ModGraphError(ValueError):
    pass


# involutive sets
class DuplicateElement(ModGraphError):
    pass


class MissingElement(ModGraphError):
    pass


# graphs
class FixedArc(ModGraphError):
    pass


class DartNotArc(ModGraphError):
    pass


class AxiomC(ModGraphError):
    pass


class AxiomD(ModGraphError):
    pass


class BoundaryMeetsDarts(ModGraphError):
    pass


class BoundaryNotArc(ModGraphError):
    pass


class UnknownVertex(ModGraphError):
    pass


class DartAssignedTwice(ModGraphError):
    pass


# étale maps and embeddings
class NotInvolutive(ModGraphError):
    pass


class PullbackFails(ModGraphError):
    pass


class InteriorLeak(ModGraphError):
    pass


class NotEmbedding(ModGraphError):
    pass


# substitution
class NotBijection(ModGraphError):
    pass


class ColorMismatch(ModGraphError):
    pass


class BaseHasNoVertices(ModGraphError):
    pass


# graphical maps
class VertexDoubleCover(ModGraphError):
    pass


class BoundaryMismatch(ModGraphError):
    pass


class CollapseViolation(ModGraphError):
    pass


class NoVertices(ModGraphError):
    pass


class NotComposable(ModGraphError):
    pass


# operads
class FiberMismatch(ModGraphError):
    pass


class OrderDependence(ModGraphError):
    pass


class ArityBoundExceeded(ModGraphError):
    pass


# presheaves
class MissingCoreObject(ModGraphError):
    pass


class SegalFailure(ModGraphError):
    pass


class MissingActiveMap(ModGraphError):
    pass


class NotFunctorial(ModGraphError):
    pass


class ParseError(ModGraphError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
