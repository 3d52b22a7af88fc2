EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_PARAMETER_CAP = 3


class SE2Exception(Exception):
    def __init__(self, detail: str, exit_code: int = EXIT_USAGE):
        super().__init__(detail)
        self.detail = detail
        self.exit_code = exit_code


class GridIncompatibilityError(SE2Exception):
    def __init__(self, detail: str, exit_code: int = EXIT_USAGE):
        super().__init__(detail, exit_code=exit_code)


class DegenerateInputError(SE2Exception):
    def __init__(self, detail: str, exit_code: int = EXIT_USAGE):
        super().__init__(detail, exit_code=exit_code)


class ResolutionError(SE2Exception):
    def __init__(self, detail: str, exit_code: int = EXIT_PARAMETER_CAP):
        super().__init__(detail, exit_code=exit_code)


class NormalizationError(SE2Exception):
    def __init__(self, detail: str, exit_code: int = EXIT_USAGE):
        super().__init__(detail, exit_code=exit_code)


class TruncationError(SE2Exception):
    def __init__(self, detail: str, exit_code: int = EXIT_USAGE):
        super().__init__(detail, exit_code=exit_code)


class TailEnergyError(SE2Exception):
    def __init__(self, detail: str, exit_code: int = EXIT_PARAMETER_CAP):
        super().__init__(detail, exit_code=exit_code)


class RepresentationError(SE2Exception):
    def __init__(self, detail: str, exit_code: int = EXIT_USAGE):
        super().__init__(detail, exit_code=exit_code)


class NotInRangeError(SE2Exception):
    def __init__(self, detail: str, exit_code: int = EXIT_USAGE):
        super().__init__(detail, exit_code=exit_code)


class FormatError(SE2Exception):
    def __init__(self, detail: str, exit_code: int = EXIT_USAGE):
        super().__init__(detail, exit_code=exit_code)


class ParameterCapError(SE2Exception):
    def __init__(self, detail: str, exit_code: int = EXIT_PARAMETER_CAP):
        super().__init__(detail, exit_code=exit_code)
