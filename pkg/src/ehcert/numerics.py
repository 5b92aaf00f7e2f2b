"""Exact threshold arithmetic.

Size bounds such as ``eps**(k*k/2) * n`` are irrational in general; a vertex
set meets them iff its size is at least the smallest integer above them, which
these helpers find with integer-only comparisons.
"""

import math
from fractions import Fraction

from .bits import as_fraction


def ceil_frac(q):
    q = Fraction(q)
    return -((-q.numerator) // q.denominator)


def floor_frac(q):
    q = Fraction(q)
    return q.numerator // q.denominator


def _least_int(ok, estimate):
    """Least integer ``w >= 0`` with ``ok(w)``, for monotone ``ok``."""
    try:
        w = max(0, int(math.floor(estimate)) - 1)
    except (OverflowError, ValueError):
        w = 0
    if ok(w):
        # float estimates of huge powers can overshoot by many units
        step = 1
        while w - step >= 0 and ok(w - step):
            step *= 2
        lo, hi = max(w - step, -1), w - step // 2
    else:
        step = 1
        while not ok(w + step):
            step *= 2
        lo, hi = w + step // 2, w + step
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def ceil_scaled_power(r, base, e):
    """Least integer ``w >= 0`` with ``w >= r * base**e`` (r >= 0, base > 0 rationals, e rational)."""
    r, base, e = Fraction(r), Fraction(base), as_fraction(e)
    if r == 0:
        return 0
    p, q = e.numerator, e.denominator

    def ok(w):
        lhs = Fraction(w) / r
        if lhs <= 0:
            return False
        # lhs >= base**(p/q)  <=>  lhs**q >= base**p
        return lhs**q >= base**p

    try:
        est = float(r) * float(base) ** float(e)
    except OverflowError:
        est = float("inf")
    if est == float("inf"):
        est = 0
    return _least_int(ok, est)


def ceil_pow(n, e):
    """Least integer ``>= n**e``."""
    return ceil_scaled_power(1, n, e)


def pow_le(a, b, e):
    """Exact test ``a <= b**e`` for rationals a, b > 0 and rational e."""
    a, b, e = Fraction(a), Fraction(b), as_fraction(e)
    if a <= 0:
        return True
    p, q = e.numerator, e.denominator
    return a**q <= b**p


def _log2q(q):
    """log2 of a positive rational, accurate for huge numerators and denominators."""
    return math.log2(q.numerator) - math.log2(q.denominator)


class Power:
    """The positive real ``coef * base**exp`` with rational parts, compared exactly.

    Thresholds such as ``y**(1/6) * |A|`` are irrational; comparing an integer
    count against them reduces to integer powers.  Multiplying by a rational
    folds into ``coef``.
    """

    __slots__ = ("coef", "base", "exp")

    def __init__(self, coef, base, exp):
        coef, base, exp = as_fraction(coef), as_fraction(base), as_fraction(exp)
        if coef <= 0 or base <= 0:
            raise ValueError("Power needs positive coefficient and base")
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Power is immutable")

    @classmethod
    def of(cls, base, exp):
        return cls(1, base, exp)

    def _log2(self):
        return _log2q(self.coef) + float(self.exp) * _log2q(self.base)

    def _sign_minus(self, q):
        """Sign of ``self - q``."""
        q = Fraction(q)
        if q <= 0:
            return 1
        a, b = self._log2(), _log2q(q)
        if abs(a - b) > 1e-9 * (1 + abs(a) + abs(b)):
            return 1 if a > b else -1
        r = q / self.coef
        p, d = self.exp.numerator, self.exp.denominator
        lhs, rhs = self.base**p, r**d
        return (lhs > rhs) - (lhs < rhs)

    def __mul__(self, q):
        if isinstance(q, (int, Fraction)):
            return Power(self.coef * q, self.base, self.exp) if q > 0 else Fraction(0)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, q):
        if isinstance(q, (int, Fraction)) and q > 0:
            return Power(self.coef / q, self.base, self.exp)
        return NotImplemented

    def _cmp(self, other):
        if isinstance(other, Power):
            if other.base == self.base and other.exp == self.exp:
                return (self.coef > other.coef) - (self.coef < other.coef)
            a, b = self._log2(), other._log2()
            if abs(a - b) > 1e-9 * (1 + abs(a) + abs(b)):
                return (a > b) - (a < b)
            lcm = self.exp.denominator * other.exp.denominator // math.gcd(self.exp.denominator,
                                                                           other.exp.denominator)
            lhs = self.coef**lcm * self.base ** int(self.exp * lcm)
            rhs = other.coef**lcm * other.base ** int(other.exp * lcm)
            return (lhs > rhs) - (lhs < rhs)
        if isinstance(other, (int, Fraction)):
            return self._sign_minus(other)
        return None

    def __lt__(self, o):
        c = self._cmp(o)
        return NotImplemented if c is None else c < 0

    def __le__(self, o):
        c = self._cmp(o)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, o):
        c = self._cmp(o)
        return NotImplemented if c is None else c > 0

    def __ge__(self, o):
        c = self._cmp(o)
        return NotImplemented if c is None else c >= 0

    def __eq__(self, o):
        c = self._cmp(o)
        return NotImplemented if c is None else c == 0

    def __hash__(self):
        return hash((self.coef, self.base, self.exp))

    def __float__(self):
        try:
            return float(self.coef) * float(self.base) ** float(self.exp)
        except OverflowError:
            return float("inf")

    def ceil(self):
        return ceil_scaled_power(self.coef, self.base, self.exp)

    def text(self):
        def f(x):
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return f"{f(self.coef)}*({f(self.base)})^({f(self.exp)})"

    def __repr__(self):
        return f"Power({self.text()})"

    @classmethod
    def parse(cls, text):
        coef, rest = text.split("*", 1)
        base, exp = rest.split("^", 1)
        return cls(Fraction(coef), Fraction(base.strip("()")), Fraction(exp.strip("()")))


def exact(x):
    """Normalise a bound: ``Power`` with an integral exponent collapses to a Fraction."""
    if isinstance(x, Power):
        if x.exp.denominator == 1:
            return x.coef * x.base ** x.exp.numerator
        return x
    return as_fraction(x)


def ceil_of(x):
    """Least integer >= x for a Fraction or Power."""
    x = exact(x)
    return x.ceil() if isinstance(x, Power) else ceil_frac(x)


def parse_real(text):
    return Power.parse(text) if "^" in str(text) else Fraction(str(text))


def real_text(x):
    x = exact(x)
    if isinstance(x, Power):
        return x.text()
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
