"""Constant sheet: every numeric parameter of the pipeline, with override slots.

Two groups live here.  Global constants (``eta``, ``d``, ``delta``, ``alpha``
and friends) depend only on ``s``, ``t``, ``|F|`` and ``h``.  Level constants
(keys starting ``sd_`` or ``hs_``) depend on the current sparsity level ``y``
and are read through :meth:`ConstantSheet.at`.  An override replaces the
formula outright and is recorded, so traces and certificates always show which
numbers were in force.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

from .bits import as_fraction
from .construct import swiss_army_size
from .errors import PreconditionError
from .numerics import Power, ceil_of, exact, parse_real, real_text

GLOBAL_KEYS = (
    "s", "t", "nf", "h", "eta_bound", "eta", "rho", "d", "delta", "alpha", "beta", "gamma",
    "d_pure1", "alpha_prime", "beta_prime", "delta_prime", "c", "c_stronger",
)

LEVEL_KEYS = (
    "sd_eps", "sd_k", "sd_pair_frac", "sd_sparse_frac", "sd_sparse_density", "sd_inner", "sd_cross",
    "sd_trim_nonedge", "sd_pair_nonedge",
    "hs_k", "hs_dense", "hs_m", "hs_n", "hs_cross", "hs_width_frac",
)


def _pow(y, e):
    return exact(Power.of(y, e))


def _level_formula(key, y, h, g):
    """Default value of a level constant at sparsity ``y`` for a pattern on ``h`` vertices."""
    if key == "sd_eps":
        return y * y / 8
    if key == "sd_k":
        return ceil_of(_pow(y, Fraction(-1, 4)))
    if key == "sd_pair_frac":
        return (y * y / 16) ** (h * h)
    if key == "sd_sparse_frac":
        return y ** (h * h)
    if key == "sd_sparse_density":
        return y * y
    if key == "sd_inner":
        return _pow(y, Fraction(1, 2))
    if key == "sd_cross":
        return _pow(y, Fraction(1, 6))
    if key == "sd_trim_nonedge":
        return y * y / 8
    if key == "sd_pair_nonedge":
        return y * y / 2
    if key == "hs_k":
        return ceil_of(_pow(y, Fraction(-1, 16)))
    if key == "hs_dense":
        return 1 - y * y
    if key == "hs_n":
        return ceil_of(_pow(y, Fraction(-1, 64)))
    if key == "hs_cross":
        return 2 * _pow(y, Fraction(1, 6))
    if key == "hs_width_frac":
        return exact(Power(Fraction(1, 2), y, g["d"]))
    if key == "hs_m":
        # m = ceil((y^2/16)^(-c h^2) y^(-c rho) 2^c); exponents have huge
        # denominators, so this one is evaluated in log space.
        c, rho = g["c"], g["rho"]
        lg = -float(c) * h * h * (2 * math.log2(float(y)) - 4) - float(c * rho) * math.log2(float(y)) + float(c)
        return math.ceil(2.0**lg) if lg < 1000 else None
    raise KeyError(key)


@dataclass(frozen=True)
class ConstantSheet:
    values: MappingProxyType
    overrides: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __getitem__(self, key):
        if key in self.overrides:
            return self.overrides[key]
        return self.values[key]

    def is_overridden(self, key):
        return key in self.overrides

    @property
    def pristine(self):
        """True when no override is active."""
        return not self.overrides

    def at(self, key, y, h=None):
        if key in self.overrides:
            return self.overrides[key]
        return _level_formula(key, as_fraction(y), int(self["h"]) if h is None else int(h), self)

    def with_overrides(self, **kw):
        return ConstantSheet(self.values, MappingProxyType({**self.overrides, **_clean(kw)}))

    def to_dict(self):
        return {
            "values": {k: real_text(v) for k, v in sorted(self.values.items())},
            "overrides": {k: real_text(v) for k, v in sorted(self.overrides.items())},
        }

    @classmethod
    def from_dict(cls, d):
        return cls(MappingProxyType({k: parse_real(v) for k, v in d["values"].items()}),
                   MappingProxyType({k: parse_real(v) for k, v in d.get("overrides", {}).items()}))


def _clean(kw):
    out = {}
    for k, v in kw.items():
        if k not in GLOBAL_KEYS and k not in LEVEL_KEYS:
            raise KeyError(f"unknown constant {k!r}")
        out[k] = parse_real(v) if isinstance(v, str) else exact(v)
    return out


def eta_bound(s, t):
    return min(Fraction(1, 2**99), Fraction(1, (16 * s * t * t) ** 6), Fraction(1, (8 * s) ** 24),
               Fraction(1, 2 ** (96 * t)))


def _eta_second(eta, s, t):
    """eta s (t + 2 eta^(-1/64)) + (2st(t + 2 eta^(-1/64)) + t) eta^(1/6) < 1/2, in log space."""
    le = math.log2(float(eta)) if eta > 0 else -math.inf
    if le == -math.inf:
        le = -(eta.denominator.bit_length() - eta.numerator.bit_length())
    inv = 2.0 ** (-le / 64)
    lhs = 2.0**le * s * (t + 2 * inv) + (2 * s * t * (t + 2 * inv) + t) * 2.0 ** (le / 6)
    return lhs < 0.5


def least_d(eta, h):
    """Least integer d > 1 with (y^2/16)^(h^2) >= y^d for every y <= eta.

    With y^(d - 2h^2) increasing in y, the worst case is y = eta, which gives
    eta^(d - 2h^2) <= 16^(-h^2).
    """
    d = 2 * h * h + 1
    while eta ** (d - 2 * h * h) > Fraction(1, 16 ** (h * h)):
        d += 1
    return d


def _log2_exact(d):
    if d > 0 and d & (d - 1) == 0:
        return Fraction(d.bit_length() - 1)
    # round log d up: alpha' shrinks, which only weakens the claim
    return Fraction(math.log2(d)).limit_denominator(10**6) + Fraction(1, 10**6)


def constants_sheet(s, t, nf=1, h=None, overrides=None, d_pure1=8):
    """Default constants for the Swiss Army graph ``F^s_t`` with ``|F| = nf``.

    ``h`` defaults to ``|F^s_t|``.  Overrides may target any global or level
    key; overriding an input such as ``d`` or ``rho`` also feeds every constant
    derived from it.
    """
    if s < 1 or t < 1 or nf < 0:
        raise PreconditionError("s, t must be positive and |F| non-negative")
    if h is None:
        h = swiss_army_size(nf, s, t)
    ov = _clean(overrides or {})

    def pick(key, default):
        return ov.get(key, default)

    eb = eta_bound(s, t)
    eta = eb
    while not _eta_second(eta, s, t):
        eta /= 2
    eta = pick("eta", eta)
    rho = pick("rho", Fraction(h * h))
    d = pick("d", Fraction(least_d(eta, h)))
    t_ = Fraction(t)
    delta = pick("delta", 1 / (64 * (d + rho) * t_))
    alpha, gamma = pick("alpha", Fraction(1, 128)), pick("gamma", Fraction(1, 12))
    beta = pick("beta", 2 * d + rho + 1)
    dp = int(pick("d_pure1", Fraction(d_pure1)))
    alpha_p = pick("alpha_prime", alpha / (5 * _log2_exact(dp)))
    beta_p = pick("beta_prime", alpha + beta)
    delta_p = pick("delta_prime", alpha_p / (2 * beta_p))
    c = pick("c", min(delta, delta_p, 1 / (4 * (rho + 1))))
    values = {
        "s": Fraction(s), "t": t_, "nf": Fraction(nf), "h": Fraction(h),
        "eta_bound": eb, "eta": eta, "rho": rho, "d": d, "delta": delta,
        "alpha": alpha, "beta": beta, "gamma": gamma, "d_pure1": Fraction(dp),
        "alpha_prime": alpha_p, "beta_prime": beta_p, "delta_prime": delta_p, "c": c,
        "c_stronger": delta / (6 * h * h),
    }
    # derived values already reflect the overrides; the overrides stay on record
    return ConstantSheet(MappingProxyType(values), MappingProxyType(ov))


def desk_sheet(**overrides):
    """A sheet for small fixtures: parameters s = t = 1, then the given overrides."""
    return constants_sheet(1, 1, 1, h=4, overrides=overrides)
