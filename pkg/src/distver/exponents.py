"""Asymptotic complexity exponents of the search engines.

Entropy and Gilbert-Varshamov bounds, average weight spectra of regular
LDPC ensembles (with the derived distance ``delta*`` and erasure threshold
``theta*``), the per-technique exponents for generic, quantum, CSS and LDPC
codes, and the branching constants of the irreducible-cluster search.

Every exponent is reported in bits: a cost of ``2^{F n}``.  Formulas whose
natural unit is ``q^{F n}`` are multiplied by ``log2 q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import optimize

from .errors import ConfigurationError, DomainError, NumericalError
from .search.cluster import enumerate_ai_strings, max_ai_length

TECHNIQUES = ("SW", "MB", "PB", "CS", "IC", "combined")
CODE_CLASSES = ("classical", "stabilizer", "css", "ldpc-classical", "ldpc-quantum")
GV_CLASSES = ("classical", "stabilizer", "css")

#: grid size for the maximization over beta in ``f_theta``
BETA_GRID = 1024
#: grid sizes used to bracket the first sign change of the spectrum and of f
SCAN_GRID = 400
THETA_GRID = 50
ROOT_TOL = 1e-12


# ---------------------------------------------------------------------------
# entropies and GV bounds


def entropy_hq(q: int, x: float) -> float:
    """q-ary entropy ``x log_q(q-1) - x log_q x - (1-x) log_q(1-x)``."""
    if q < 2:
        raise DomainError("entropy needs q >= 2")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    out = 0.0
    if x > 0:
        out += x * math.log(q - 1) - x * math.log(x)
    if x < 1:
        out -= (1 - x) * math.log(1 - x)
    return out / math.log(q)


def h2(x: float) -> float:
    return entropy_hq(2, x)


def _h2_array(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(x > 0, -x * np.log2(np.where(x > 0, x, 1.0)), 0.0)
        b = np.where(x < 1, -(1 - x) * np.log2(np.where(x < 1, 1 - x, 1.0)), 0.0)
    return a + b


def gv_distance(q: int, R: float, code_class: str = "classical") -> float:
    """Smaller root ``delta`` of the Gilbert-Varshamov equation.

    ``classical``: ``R = 1 - h_q(delta)``; ``stabilizer``: ``R = 1 - 2 h_4(delta)``;
    ``css``: ``R = 1 - 2 h_2(delta)``.  ``q`` is ignored for the quantum classes.
    """
    if not 0.0 <= R <= 1.0:
        raise DomainError(f"rate {R} outside [0, 1]")
    if code_class == "classical":
        Q, target = q, 1.0 - R
    elif code_class == "stabilizer":
        Q, target = 4, (1.0 - R) / 2
    elif code_class == "css":
        Q, target = 2, (1.0 - R) / 2
    else:
        raise ConfigurationError(f"GV bound needs a class in {GV_CLASSES}, got {code_class!r}")
    if target <= 0:
        return 0.0
    top = (Q - 1) / Q
    if target >= 1.0:
        return top
    return optimize.bisect(lambda x: entropy_hq(Q, x) - target, 0.0, top, xtol=ROOT_TOL)


# ---------------------------------------------------------------------------
# LDPC ensemble spectra


def _t_from_beta(m: int, beta: np.ndarray) -> np.ndarray:
    """Vectorized root of ``((1+t)^{m-1} + (1-t)^{m-1}) / ((1+t)^m + (1-t)^m) = 1 - beta``.

    Solved by bisection in ``s = (1 - t) / (1 + t) in (-1, 1]`` where the
    left side reads ``(1 + s)/2 * (1 + s^{m-1}) / (1 + s^m)`` and is
    monotone; entries outside the attainable range come back as ``nan``.
    """
    beta = np.atleast_1d(np.asarray(beta, dtype=float))
    target = 1.0 - beta

    def lhs(s):
        return 0.5 * (1 + s) * (1 + s ** (m - 1)) / (1 + s**m)

    lo = np.full(beta.shape, -1.0)
    hi = np.ones(beta.shape)
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            above = lhs(mid) >= target
            hi = np.where(above, mid, hi)
            lo = np.where(above, lo, mid)
        s = 0.5 * (lo + hi)
        t = (1 - s) / (1 + s)
    # beyond the largest attainable beta the bracket collapses onto s = -1
    return np.where(_admissible(m, beta) & (beta >= 0), t, np.nan)


def _admissible(m: int, beta: np.ndarray) -> np.ndarray:
    if m % 2:
        return beta < 1 - 1 / m
    return beta < 1


def spectral_root_t(m: int, beta: float) -> float:
    """Unique positive root ``t(beta)``; ``0`` at ``beta = 0`` and ``1`` at ``beta = 1/2``.

    Raises :class:`DomainError` outside ``0 <= beta < 1`` (``< 1 - 1/m`` for odd ``m``).
    """
    if m < 2:
        raise DomainError("row weight m must be at least 2")
    if beta == 0:
        return 0.0
    t = float(_t_from_beta(m, np.array([beta]))[0])
    if math.isnan(t):
        raise DomainError(f"beta = {beta} has no positive root for m = {m}")
    return t


def _q_array(l: int, m: int, beta: np.ndarray) -> np.ndarray:
    beta = np.atleast_1d(np.asarray(beta, dtype=float))
    alpha = l / m
    t = _t_from_beta(m, beta)
    out = np.full(beta.shape, -np.inf)
    ok = ~np.isnan(t)
    b, tt = beta[ok], t[ok]
    with np.errstate(divide="ignore", invalid="ignore"):
        s = (1 - tt) / (1 + tt)
        # log2((1+t)^m + (1-t)^m) = m log2(1+t) + log2(1 + s^m)
        num = m * np.log2(1 + tt) + np.log2(1 + s**m) - 1.0
        logt = np.where(b > 0, b * m * np.log2(np.where(tt > 0, tt, 1.0)), 0.0)
    out[ok] = alpha * (num - logt) - alpha * m * _h2_array(b)
    out[ok & (beta == 0)] = 0.0
    return out


def q_alpha_beta(l: int, m: int, beta: float) -> float:
    """Exponent of the probability that a fixed weight-``beta n`` word lies in an ``(l, m)`` code.

    Returns ``-math.inf`` (IEEE negative infinity, which ``max`` orders
    correctly) for odd ``m`` and ``beta >= 1 - 1/m``.
    """
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"beta = {beta} outside [0, 1]")
    return float(_q_array(l, m, np.array([beta]))[0])


def spectrum(l: int, m: int, beta: float) -> float:
    """Average weight spectrum exponent ``h2(beta) + q(alpha, beta)`` in bits."""
    return h2(beta) + q_alpha_beta(l, m, beta)


def _f_objective(l: int, m: int, theta: float, beta: np.ndarray) -> np.ndarray:
    return _q_array(l, m, beta * theta) + theta * _h2_array(beta)


def f_theta(l: int, m: int, theta: float, grid: int = BETA_GRID) -> float:
    """Exponent of the average number of non-zero words of a code shortened to ``theta n`` positions.

    The objective ``q(alpha, beta theta) + theta h2(beta)`` tends to 0 as
    ``beta -> 0``, a limit that only counts sublinear weights and is
    excluded.  The value returned is the largest of the interior local
    maxima on a ``grid``-point grid, refined by golden-section search, and
    the value at the ``beta -> 1`` end.
    """
    if not 0.0 < theta <= 1.0:
        raise DomainError(f"theta = {theta} outside (0, 1]")
    betas = (np.arange(grid) + 0.5) / grid
    g = _f_objective(l, m, theta, betas)
    peaks = [i for i in range(1, grid - 1) if g[i] > -np.inf and g[i] >= g[i - 1] and g[i] >= g[i + 1]]
    best = float(g[-1])
    for i in peaks:
        res = optimize.minimize_scalar(lambda b: -float(_f_objective(l, m, theta, np.array([b]))[0]),
                                       bracket=(betas[i - 1], betas[i], betas[i + 1]),
                                       method="golden", tol=1e-10)
        best = max(best, -float(res.fun), float(g[i]))
    return best


@dataclass(frozen=True)
class SpectralParams:
    """Average relative distance and erasure threshold of the ``(l, m)``-regular ensemble."""

    l: int
    m: int
    delta_star: float
    theta_star: float

    @property
    def alpha(self) -> float:
        return self.l / self.m

    @property
    def rate(self) -> float:
        return 1 - self.l / self.m

    def t(self, beta: float) -> float:
        return spectral_root_t(self.m, beta)

    def to_dict(self) -> dict:
        return {"l": self.l, "m": self.m, "alpha": self.alpha, "delta_star": self.delta_star,
                "theta_star": self.theta_star}


def _first_crossing(fn, lo: float, hi: float, what: str, tol: float, grid: int) -> float:
    """First ``-`` to ``+`` sign change of ``fn`` on a grid over ``[lo, hi]``, refined by Brent."""
    xs = np.linspace(lo, hi, grid + 1)
    prev_x, prev = xs[0], fn(xs[0])
    for x in xs[1:]:
        v = fn(x)
        if prev < 0 <= v:
            return optimize.brentq(fn, prev_x, x, xtol=tol, rtol=4 * np.finfo(float).eps)
        prev_x, prev = x, v
    raise NumericalError(f"no sign change of {what} on [{lo}, {hi}]: values {fn(lo):.3g} .. {fn(hi):.3g}")


@lru_cache(maxsize=None)
def ensemble_params(l: int, m: int) -> SpectralParams:
    """``delta*`` (first positive zero of the spectrum) and ``theta*`` (zero of ``f``)."""
    if not 3 <= l <= m:
        raise ConfigurationError("ensemble parameters need 3 <= l <= m")
    delta = _first_crossing(lambda b: spectrum(l, m, b), 1e-6, 0.5, f"h2 + q for ({l},{m})", 1e-13, SCAN_GRID)
    theta = _first_crossing(lambda th: f_theta(l, m, th), 1e-3, 1.0, f"f(theta) for ({l},{m})", 1e-11, THETA_GRID)
    return SpectralParams(l, m, delta, theta)


# ---------------------------------------------------------------------------
# irreducible-cluster branching constants


def ai_counts(q: int, stabilizer: bool = False) -> tuple[int, ...]:
    """``N_v(q)`` for ``v = 1 .. v_max``, times ``q^v`` for stabilizer codes."""
    return tuple(enumerate_ai_strings(q, v).per_value * (q**v if stabilizer else 1)
                 for v in range(1, max_ai_length(q) + 1))


def cluster_polynomial(q: int, m: int, stabilizer: bool = False) -> tuple[int, ...]:
    """Integer coefficients ``a_h = N_h C(m-1, h)`` of ``T(z)``, starting at ``h = 1``."""
    t = m - 1
    N = ai_counts(q, stabilizer)
    return tuple(N[h - 1] * math.comb(t, h) for h in range(1, min(t, len(N)) + 1))


def cluster_series(q: int, m: int, h_max: int, stabilizer: bool = False) -> list[int]:
    """Exact coefficients ``S_0 .. S_{h_max}`` of ``1 / (1 - T(z))`` by convolution."""
    a = cluster_polynomial(q, m, stabilizer)
    S = [1]
    for h in range(1, h_max + 1):
        S.append(sum(a[k - 1] * S[h - k] for k in range(1, min(h, len(a)) + 1)))
    return S


def cluster_series_residue(q: int, m: int, h_max: int, stabilizer: bool = False) -> list[float]:
    """``S_h = sum_r 1 / (z_r^{h+1} T'(z_r))`` over the roots of ``1 - T(z)``.

    Roots come from the companion matrix and are polished by Newton steps;
    the roots must be simple.
    """
    a = np.array(cluster_polynomial(q, m, stabilizer), dtype=float)
    # numpy.roots wants the highest power first: 1 - T(z) = -a_k z^k - ... - a_1 z + 1
    coeffs = np.concatenate([-a[::-1], [1.0]])
    roots = np.roots(coeffs).astype(complex)
    dT = np.polyder(np.concatenate([a[::-1], [0.0]]))
    T = np.concatenate([a[::-1], [0.0]])
    for _ in range(5):
        roots = roots - (np.polyval(T, roots) - 1) / np.polyval(dT, roots)
    deriv = np.polyval(dT, roots)
    if np.any(np.abs(deriv) < 1e-12):
        raise NumericalError("repeated root of 1 - T(z)")
    return [float(np.real(np.sum(1.0 / (roots ** (h + 1) * deriv)))) for h in range(h_max + 1)]


@dataclass(frozen=True)
class ClusterModel:
    """Branching constant of the IC search for row weight ``m`` over GF(q).

    ``x = (m - 1) rho`` is the scaled root of ``1 - T``; for ``m = inf``
    the root of the limiting series ``sum_v N_v x^v / v! = 1`` is used and
    ``rho`` is reported as 0.
    """

    q: int
    m: float
    stabilizer: bool
    n_v: tuple[int, ...]
    rho: float
    gamma: float
    gamma_bar: float

    @property
    def x(self) -> float:
        return 1.0 / self.gamma


def gamma_bar(q: int, m: float) -> float:
    """Upper bound ``(q-1) / ((m-1)(q^{1/(m-1)} - 1))``; ``(q-1)/ln q`` at ``m = inf``."""
    if math.isinf(m):
        return (q - 1) / math.log(q)
    t = m - 1
    return (q - 1) / (t * math.expm1(math.log(q) / t))


def gamma_m(q: int, m: float, stabilizer: bool = False) -> ClusterModel:
    """``gamma_m = 1 / ((m - 1) rho)`` with ``rho`` the smallest positive root of ``1 - T(z)``.

    With ``stabilizer`` every ``N_v`` gains a factor ``q^v``, which scales
    both ``gamma_m`` and the bound by ``q``.
    """
    if not (math.isinf(m) or (float(m).is_integer() and m >= 2)):
        raise ConfigurationError("row weight m must be an integer >= 2 or inf")
    N = ai_counts(q, stabilizer)
    if math.isinf(m):
        coef = [N[h - 1] / math.factorial(h) for h in range(1, len(N) + 1)]
    else:
        t = int(m) - 1
        # C(t, h) / t^h, the coefficient of x^h after substituting z = x / t
        coef = [N[h - 1] * math.comb(t, h) / t**h for h in range(1, min(t, len(N)) + 1)]

    def poly(x):
        return sum(c * x ** (h + 1) for h, c in enumerate(coef)) - 1.0

    hi = 1.0
    while poly(hi) < 0:
        hi *= 2
    x = optimize.bisect(poly, 0.0, hi, xtol=ROOT_TOL, rtol=4 * np.finfo(float).eps)
    rho = 0.0 if math.isinf(m) else x / (m - 1)
    scale = q if stabilizer else 1
    return ClusterModel(q, m, stabilizer, N, rho, 1.0 / x, scale * gamma_bar(q, m))


# ---------------------------------------------------------------------------
# technique exponents


@dataclass(frozen=True)
class ExponentQuery:
    """One exponent evaluation.  ``delta`` defaults to the GV distance
    (generic classes) or ``delta*`` (LDPC classes); LDPC classes take their
    rate from ``(l, m)``."""

    technique: str
    code_class: str
    R: float | None = None
    delta: float | None = None
    q: int = 2
    l: int | None = None
    m: int | None = None

    def __post_init__(self):
        if self.technique not in TECHNIQUES:
            raise ConfigurationError(f"unknown technique {self.technique!r}; expected one of {TECHNIQUES}")
        if self.code_class not in CODE_CLASSES:
            raise ConfigurationError(f"unknown code class {self.code_class!r}; expected one of {CODE_CLASSES}")
        if self.R is not None and not 0.0 <= self.R <= 1.0:
            raise DomainError(f"rate {self.R} outside [0, 1]")
        if self.delta is not None and not 0.0 <= self.delta <= 1.0:
            raise DomainError(f"relative distance {self.delta} outside [0, 1]")


def _classical(technique: str, q: int, R: float, delta: float) -> float:
    bits = math.log2(q)
    hq = entropy_hq(q, delta)
    if technique == "SW":
        return R * hq * bits
    if technique == "MB":
        return hq / 2 * bits
    if technique == "PB":
        return hq * R / (1 + R) * bits
    if technique == "CS":
        if R >= 1:
            return 0.0
        return (1 - R) * (1 - h2(min(1.0, delta / (1 - R))))
    raise ConfigurationError(f"{technique} has no generic exponent")


def _stabilizer(technique: str, R: float, delta: float) -> float:
    h4 = entropy_hq(4, delta)
    if technique == "SW":
        return (1 + R) * h4
    if technique == "MB":
        return h4
    if technique == "PB":
        return 2 * (1 + R) / (3 + R) * h4
    if technique == "CS":
        if R >= 1:
            return 0.0
        return h2(delta) - (1 - R) / 2 * h2(min(1.0, 2 * delta / (1 - R)))
    raise ConfigurationError(f"{technique} has no generic exponent")


def _ldpc(technique: str, q: int, p: SpectralParams, delta: float) -> float:
    bits = math.log2(q)
    if technique == "SW":
        return (1 - p.theta_star) * entropy_hq(q, delta) * bits
    if technique == "MB":
        return entropy_hq(q, delta) / 2 * bits
    if technique == "CS":
        return h2(delta) - p.theta_star * h2(min(1.0, delta / p.theta_star))
    raise ConfigurationError(f"{technique} has no LDPC exponent")


def _ic(query: ExponentQuery, delta: float) -> float:
    if query.m is None:
        raise ConfigurationError("the IC exponent needs the row weight m")
    stab = query.code_class in ("stabilizer", "ldpc-quantum")
    g = gamma_m(query.q, query.m, stab).gamma
    return delta * math.log2(g * (query.m - 1))


_AVAILABLE = {
    "classical": ("SW", "MB", "PB", "CS"),
    "stabilizer": ("SW", "MB", "PB", "CS"),
    "css": ("SW", "MB", "PB", "CS"),
    "ldpc-classical": ("SW", "MB", "CS"),
    "ldpc-quantum": (),
}


def technique_exponent(query: ExponentQuery, params: SpectralParams | None = None) -> float:
    """Complexity exponent ``F`` (cost ``2^{F n}``) of one technique on one code class.

    ``css`` evaluates the binary classical formulas at ``R' = (1 + R) / 2``.
    LDPC classes need :class:`SpectralParams` (computed from ``l, m`` when
    omitted).  ``combined`` is the minimum over the techniques available for
    the class, plus IC when ``m`` is given.
    """
    cls = query.code_class
    ldpc = cls.startswith("ldpc")
    if ldpc:
        if params is None:
            if query.l is None or query.m is None:
                raise ConfigurationError("LDPC classes need spectral parameters or (l, m)")
            params = ensemble_params(query.l, query.m)
        delta = params.delta_star if query.delta is None else query.delta
        R = params.rate
    else:
        if query.R is None:
            raise ConfigurationError("generic classes need the rate R")
        R = query.R
        delta = gv_distance(query.q, R, cls) if query.delta is None else query.delta

    def one(tech: str) -> float:
        if tech == "IC":
            return _ic(query, delta)
        if tech not in _AVAILABLE[cls]:
            raise ConfigurationError(f"{tech} exponent is not defined for {cls} codes")
        if cls == "classical":
            return _classical(tech, query.q, R, delta)
        if cls == "css":
            return _classical(tech, 2, (1 + R) / 2, delta)
        if cls == "stabilizer":
            return _stabilizer(tech, R, delta)
        return _ldpc(tech, query.q, params, delta)

    if query.technique != "combined":
        return one(query.technique)
    techs = list(_AVAILABLE[cls]) + (["IC"] if query.m is not None else [])
    if not techs:
        raise ConfigurationError(f"no technique is available for {cls} codes without m")
    return min(one(t) for t in techs)


def deterministic_ldpc_exponent(params: SpectralParams) -> float:
    """``min{(1 - theta*) h2(delta*), h2(delta*) / 2}``: the better of SW and MB on an LDPC ensemble."""
    return min(_ldpc("SW", 2, params, params.delta_star), _ldpc("MB", 2, params, params.delta_star))


def deterministic_generic_exponent(R: float) -> float:
    """``min{R(1 - R), (1 - R)/2}``: SW or MB on binary codes at the GV bound."""
    return min(R * (1 - R), (1 - R) / 2)
