"""Small helpers for Python-int bitsets."""

from fractions import Fraction


def iter_bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def to_list(x):
    return list(iter_bits(x))


def from_iter(vs):
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def popcount(x):
    return x.bit_count()


def lowest(x):
    return (x & -x).bit_length() - 1


def as_fraction(x):
    """Exact rational view of an int, Fraction, float or 'p/q' string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # decimal reading: 0.1 means 1/10, not the nearest binary double
        return Fraction(repr(x))
    return Fraction(str(x))
