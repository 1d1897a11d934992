class BhcpError(Exception):
    """Base class of every error raised by meyerbhcp."""


class GridError(BhcpError):
    """An invalid grid, or fields/multipliers living on different grids."""


class WaveVectorOutOfRange(GridError, IndexError):
    pass


class NonRealReconstructionError(BhcpError):
    """
    The inverse transform left an imaginary residue above tolerance.
    Usually means a multiplier was not symmetric under k -> -k.
    """


class DomainError(BhcpError, ValueError):
    """An argument lies outside the domain of the operation."""


class NoiseExceedsPriorBound(DomainError):
    def __init__(self, delta: float, big_m: float):
        super().__init__(f'noise exceeds prior bound: delta={delta} >= M={big_m}')
        self.delta = delta
        self.big_m = big_m


class QuadratureFailure(BhcpError):
    pass


class AmplificationOverflow(BhcpError):
    def __init__(self, max_exponent: float):
        super().__init__(f'amplification overflow: exponent {max_exponent:.6g} exceeds the cap')
        self.max_exponent = max_exponent


class UndefinedRelativeError(BhcpError):
    pass


class AliasingError(DomainError):
    pass


class FieldFileError(BhcpError):
    def __init__(self, message: str, line_number: int = None):
        if line_number is not None:
            message = f'line {line_number}: {message}'
        super().__init__(message)
        self.line_number = line_number
