"""Exception hierarchy. The class name is what the CLI reports on stderr."""


class FuturityError(ValueError):
    pass


class BadJ(FuturityError):
    pass


class BadPeriod(FuturityError):
    pass


class BadDist(FuturityError):
    pass


class BadPattern(FuturityError):
    pass


class BadK(FuturityError):
    pass


class BadSpecFile(FuturityError):
    pass


class SingularSystem(FuturityError):
    pass


class DegenerateVariance(FuturityError):
    pass
