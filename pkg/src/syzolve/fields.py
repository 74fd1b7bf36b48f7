"""Coefficient fields.

Two concrete fields are provided: exact rationals (gmpy2.mpq, arbitrary
precision) and double-precision floats.  Exact arithmetic is the default for
verification; the float field is the performance path.  Polynomials and
matrices carry a field object around and delegate element handling to it.
"""

from fractions import Fraction

from gmpy2 import mpq

from .errors import UnsupportedFieldError


class RationalField:
    """Exact rational numbers backed by gmpy2.mpq."""

    name = "rational"
    exact = True

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def coerce(self, x):
        if isinstance(x, (str, int, Fraction)):
            return mpq(x)
        if isinstance(x, type(self.zero)):
            return x
        if isinstance(x, float):
            if x != int(x):
                raise ValueError(f"refusing lossy float->rational coercion of {x!r}")
            return mpq(int(x))
        return mpq(x)

    def to_str(self, a):
        return str(a)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def inv(self, a):
        return 1 / mpq(a)

    def abs(self, a):
        return abs(a)

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")


class Float64Field:
    """Double precision real (optionally complex) floats.

    Normalization / zero tests use an explicit epsilon and are never applied
    implicitly; callers opt in where a tolerance is meaningful.
    """

    name = "float64"
    exact = False

    def __init__(self):
        self.zero = 0.0
        self.one = 1.0

    def coerce(self, x):
        if isinstance(x, complex):
            return x
        if isinstance(x, str):
            if "/" in x:
                return float(Fraction(x))
            return float(x)
        return float(x)

    def to_str(self, a):
        return repr(a)

    def is_zero(self, a, eps=0.0):
        return abs(a) <= eps

    def eq(self, a, b, eps=0.0):
        return abs(a - b) <= eps

    def inv(self, a):
        return 1.0 / a

    def abs(self, a):
        return abs(a)

    def __repr__(self):
        return "Float64Field()"

    def __eq__(self, other):
        return isinstance(other, Float64Field)

    def __hash__(self):
        return hash("float64")


QQ = RationalField()
RR = Float64Field()

_BY_NAME = {"rational": QQ, "float64": RR}


def field_by_name(name):
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnsupportedFieldError(f"unknown field {name!r}") from None
