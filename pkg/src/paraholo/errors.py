"""Exception hierarchy.

Errors fall in three families that the command line maps to exit codes:
malformed input (2), degenerate input such as zero divisors (3), and
failed verifications that are raised rather than reported (1).
"""


class ParaholoError(Exception):
    """Base class for every error raised by the package."""


class InputError(ParaholoError):
    """Malformed user input: syntax, schema, or inconsistent data."""


class DegenerateError(ParaholoError):
    """A quantity that must be invertible is not at the evaluation point."""


class CheckError(ParaholoError):
    """A structural verification failed badly enough to stop a computation."""


class ZeroDivisor(DegenerateError):
    def __init__(self, value, eps=None):
        self.value = value
        self.eps = eps
        super().__init__(f"{value} is a zero divisor (|re^2 - im^2| <= {eps})")


class SingularProjection(DegenerateError):
    def __init__(self, which: str, det: float = 0.0):
        self.which = which
        self.det = det
        super().__init__(f"{which} null-basis projection is singular (det={det:.3g})")


class DegeneratePlane(DegenerateError):
    def __init__(self, denominator):
        self.denominator = denominator
        super().__init__(f"plane is degenerate: denominator {denominator} not invertible")


class SingularRealMetric(DegenerateError):
    def __init__(self, det: float):
        self.det = det
        super().__init__(f"realized metric is singular (det={det:.3g})")


class NotSemisimple(DegenerateError):
    def __init__(self, det=None):
        self.det = det
        super().__init__(f"Killing form is degenerate (det={det})")


class NotSemisimpleWarning(UserWarning):
    pass


class ExprSyntaxError(InputError):
    def __init__(self, position: int, expected: str, src: str = ""):
        self.position = position
        self.expected = expected
        self.src = src
        super().__init__(f"syntax error at position {position}: expected {expected}")


class IndexOutOfRange(InputError):
    def __init__(self, index: int, n: int | None = None):
        self.index = index
        self.n = n
        super().__init__(f"variable index {index} out of range 1..{n}")


class AsymmetricInput(InputError):
    def __init__(self, a: int, b: int, violation: float):
        self.a, self.b, self.violation = a, b, violation
        super().__init__(f"G[{a}][{b}] and G[{b}][{a}] differ by {violation:.3g}")


class NotAntisymmetric(InputError):
    def __init__(self, a: int, b: int, c: int):
        self.indices = (a, b, c)
        super().__init__(f"C^{a}_{b}{c} != -C^{a}_{c}{b}")


class SchemaError(InputError):
    pass


class NotNorden(CheckError):
    def __init__(self, point, violation: float):
        self.point = point
        self.violation = violation
        super().__init__(f"metric violates g(IX,IY)=g(X,Y) by {violation:.3g} at {point}")


class JacobiViolation(CheckError):
    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"Jacobi identity violated, max residual {residual:.3g}")


class NonRealScalar(CheckError):
    def __init__(self, imag: float):
        self.imag = imag
        super().__init__(f"scalar curvature has imaginary part {imag:.3g}")


class NoSignWorks(CheckError):
    def __init__(self, residuals):
        self.residuals = residuals
        super().__init__(f"neither series sign satisfies Maurer-Cartan: {residuals}")
