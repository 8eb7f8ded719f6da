"""Exception types raised across the package."""


class PointDegenerate(ValueError):
    """All three vertices of a triangle coincide."""


class DegenerateAngle(ValueError):
    """Largest angle requested at a shape where it is undefined (x = y = 0)."""


class DepthTooLarge(ValueError):
    """Exhaustive word enumeration would exceed the supported depth."""


class FlatTrace(ValueError):
    """A trace contains a flat state, so ln(y) is undefined."""


class SizeMismatch(ValueError):
    """Two empirical measures do not carry the same number of samples."""


class ZeroPolynomial(ValueError):
    """An operation that needs a nonzero polynomial received the zero polynomial."""
