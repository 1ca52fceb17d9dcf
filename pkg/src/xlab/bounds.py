"""Asymptotic rate/distance curves: ensemble spectra, GV/Zyablov-type bounds,
constrained-distance machinery and the two improved product-bound curves.

All logarithms are base 2 and epsilon slack terms are dropped (curves are
the limiting values).  Optimizers run a fixed coarse grid followed by
golden-section refinement, so outputs are deterministic.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import RootNotFoundError, ValidationError

GRID_BETA = 2048
GRID_R0 = 512
GRID_ENVELOPE = 4096
GOLDEN_TOL = 1e-10
_EDGE = 1e-9
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_LN2 = math.log(2.0)


# ---------------------------------------------------------------------------
# entropy and its inverse

def _h_interior(x: np.ndarray) -> np.ndarray:
    """Entropy for arrays known to lie strictly inside (0, 1)."""
    return -x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x)


def _h(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape)
    m = (x > 0.0) & (x < 1.0)
    out[m] = _h_interior(x[m])
    return out


def _hinv(y: np.ndarray) -> np.ndarray:
    """Branch in [0, 1/2] by pure bisection; vectorized, ~1e-19 in x."""
    y = np.asarray(y, dtype=float)
    lo = np.zeros(y.shape)
    hi = np.full(y.shape, 0.5)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        below = _h_interior(np.maximum(mid, 1e-300)) < y
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _hinv_fast(y: np.ndarray) -> np.ndarray:
    """Bisection plus Newton polish; plenty for curve evaluation grids."""
    y = np.asarray(y, dtype=float)
    lo = np.zeros(y.shape)
    hi = np.full(y.shape, 0.5)
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        below = _h_interior(np.maximum(mid, 1e-300)) < y
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    x = 0.5 * (lo + hi)
    for _ in range(3):
        xs = np.clip(x, 1e-300, 0.5)
        resid = y - _h_interior(xs)
        slope = np.maximum(np.log2((1.0 - xs) / xs), 1e-12)
        x = np.clip(x + resid / slope, np.maximum(lo, 1e-300), hi)
    return x


def entropy(x: float) -> float:
    """Binary entropy h(x) with h(0) = h(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"entropy argument {x} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x))


def entropy_inv(y: float) -> float:
    """Inverse of entropy on the branch [0, 1/2]."""
    if not 0.0 <= y <= 1.0:
        raise ValidationError(f"entropy_inv argument {y} outside [0, 1]")
    if y == 1.0:
        return 0.5  # h is flat to machine precision around 1/2
    return float(_hinv(np.asarray([y]))[0])


def gv_delta(rate: float) -> float:
    """Gilbert-Varshamov distance h^{-1}(1 - R)."""
    if not 0.0 <= rate <= 1.0:
        raise ValidationError(f"rate {rate} outside [0, 1]")
    return entropy_inv(1.0 - rate)


# ---------------------------------------------------------------------------
# golden-section optimizers (deterministic grid + refinement)

def _golden_max(f, a: float, b: float, tol: float = GOLDEN_TOL) -> tuple[float, float]:
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _grid_golden_max(fvec, a: float, b: float, npts: int) -> tuple[float, float]:
    """fvec maps an ndarray to an ndarray; refines around the best grid point."""
    xs = np.linspace(a, b, npts)
    vals = fvec(xs)
    i = int(np.argmax(vals))
    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, npts - 1)]
    return _golden_max(lambda x: float(fvec(np.asarray([x]))[0]), lo, hi)


def _grid_golden_min(fvec, a: float, b: float, npts: int) -> tuple[float, float]:
    x, v = _grid_golden_max(lambda t: -fvec(t), a, b, npts)
    return x, -v


def _bisect(f, lo: float, hi: float, iters: int = 100) -> float:
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (flo < 0) == (fm < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# random ensemble spectrum and distance

@dataclass(frozen=True)
class SpectrumPoint:
    omega: float
    exponent: float
    x_opt: float
    z: float


def spectrum_exponent(r0: float, omega: float) -> SpectrumPoint:
    """Growth rate of the average weight distribution at relative weight omega.

    The overall rate is R = 2*R0 - 1.  Below the junction 1 - 2^(R0-1) the
    inner maximization sits at x0 = omega/(1-z); above it at x = 1 where the
    exponent collapses to h(omega) + R - 1.
    """
    if not 0.5 < r0 < 1.0:
        raise ValidationError(f"local rate {r0} outside (1/2, 1)")
    if not 0.0 < omega < 1.0:
        raise ValidationError(f"omega {omega} outside (0, 1)")
    rate = 2.0 * r0 - 1.0
    z = 2.0 ** (r0 - 1.0)
    junction = 1.0 - z
    if omega <= junction:
        f = omega * (rate - 1.0 - 2.0 * math.log2(junction)) - entropy(omega)
        return SpectrumPoint(omega, f, omega / junction, z)
    return SpectrumPoint(omega, entropy(omega) + rate - 1.0, 1.0, z)


@dataclass(frozen=True)
class BoundPoint:
    rate: float
    delta: float
    beta_star: float | None = None
    r0_star: float | None = None


def _ensemble_branch_gap(rate: float) -> float:
    """Positive when the GV branch is active: R0 - log2(2*(1 - gv))."""
    r0 = (1.0 + rate) / 2.0
    return r0 - math.log2(2.0 * (1.0 - gv_delta(rate)))


def ensemble_distance(rate: float) -> BoundPoint:
    """Average relative distance of the random bipartite-graph ensemble."""
    if not 0.0 < rate < 1.0:
        raise ValidationError(f"rate {rate} outside (0, 1)")
    r0 = (1.0 + rate) / 2.0
    if _ensemble_branch_gap(rate) > 0.0:
        return BoundPoint(rate, gv_delta(rate), None, r0)
    c = rate - 1.0 - 2.0 * math.log2(1.0 - 2.0 ** ((rate - 1.0) / 2.0))
    junction = 1.0 - 2.0 ** ((rate - 1.0) / 2.0)
    root = _bisect(lambda w: w * c - entropy(w), 1e-12, junction)
    return BoundPoint(rate, root, None, r0)


@functools.lru_cache(maxsize=1)
def ensemble_gv_crossover() -> float:
    """Rate at which the ensemble distance leaves the GV branch."""
    return _bisect(_ensemble_branch_gap, 0.05, 0.4)


# ---------------------------------------------------------------------------
# fixed-local-code spectrum (Chernov / saddle point)

@dataclass(frozen=True)
class ChernovPoint:
    omega: float
    exponent: float
    s_star: float


def _validate_enumerator(coeffs) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(coeffs, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ValidationError("weight enumerator must be a 1-d sequence")
    if arr[0] != 1:
        raise ValidationError("weight enumerator must have A_0 = 1")
    if np.any(arr < 0):
        raise ValidationError("weight enumerator coefficients must be >= 0")
    support = np.nonzero(arr)[0]
    if support.size < 2:
        raise ValidationError("weight enumerator has no nonzero-weight terms")
    return arr[support], support.astype(float)


def chernov_exponent(coeffs, delta: int, omega: float) -> ChernovPoint:
    """Spectrum exponent for a fixed local code with enumerator a(y).

    Solves (ln a(e^s))' = delta*omega for the tilt s (the derivative is a
    strictly increasing mean weight), then evaluates
    (2/ln 2) * (ln a(e^s)/delta - s*omega) - h(omega).
    """
    amps, weights = _validate_enumerator(coeffs)
    w_max = float(weights[-1])
    if not 0.0 < omega < w_max / delta:
        raise ValidationError(
            f"omega {omega} outside the solvable range (0, {w_max / delta})"
        )
    target = delta * omega

    def mean_weight(s: float) -> float:
        e = amps * np.exp(s * weights - np.max(s * weights))
        return float((weights * e).sum() / e.sum())

    lo, hi = -1.0, 1.0
    while mean_weight(lo) > target:
        lo *= 2.0
    while mean_weight(hi) < target:
        hi *= 2.0
    s_star = _bisect(lambda s: mean_weight(s) - target, lo, hi, iters=200)
    shift = float(np.max(s_star * weights))
    ln_a = shift + math.log(float(np.sum(amps * np.exp(s_star * weights - shift))))
    exponent = (2.0 / _LN2) * (ln_a / delta - s_star * omega) - entropy(omega)
    return ChernovPoint(omega, exponent, s_star)


def chernov_zero_crossing(coeffs, delta: int, scan_points: int = 4096) -> float:
    """Smallest positive omega where the fixed-code exponent crosses zero."""
    amps, weights = _validate_enumerator(coeffs)
    w_max = float(weights[-1]) / delta
    grid = np.linspace(1e-6, w_max - 1e-6, scan_points)
    prev = chernov_exponent(coeffs, delta, float(grid[0])).exponent
    for x in grid[1:]:
        cur = chernov_exponent(coeffs, delta, float(x)).exponent
        if prev < 0.0 <= cur:
            return _bisect(
                lambda w: chernov_exponent(coeffs, delta, w).exponent,
                float(x) - (grid[1] - grid[0]),
                float(x),
            )
        prev = cur
    raise RootNotFoundError("no zero crossing found for the fixed-code exponent")


# ---------------------------------------------------------------------------
# serially concatenated ensemble (reference curves)

def serial_spectrum(r0: float, rate: float, omega: float) -> float:
    """Average spectrum exponent of serial concatenation (random inner, MDS outer)."""
    if not 0.0 < rate <= r0 < 1.0:
        raise ValidationError("need 0 < R <= R0 < 1")
    if not 0.0 < omega < 1.0:
        raise ValidationError(f"omega {omega} outside (0, 1)")
    if omega <= 1.0 - 2.0 ** (r0 - 1.0):
        return rate - r0 - omega * math.log2(2.0 ** (1.0 - r0) - 1.0)
    return entropy(omega) + rate - 1.0


def serial_distance(rate: float, r0: float) -> float:
    """Average relative distance of the serial ensemble at inner rate R0."""
    if not 0.0 < rate <= r0 < 1.0:
        raise ValidationError("need 0 < R <= R0 < 1")
    dgv = gv_delta(rate)
    if r0 >= math.log2(2.0 * (1.0 - dgv)):
        return dgv
    return (rate - r0) / math.log2(2.0 ** (1.0 - r0) - 1.0)


# ---------------------------------------------------------------------------
# product (Zyablov) bound and the multiedge-family bound

def zyablov(rate: float) -> BoundPoint:
    """max over x in [R, 1] of gv(x) * (1 - R/x)."""
    if not 0.0 < rate < 1.0:
        raise ValidationError(f"rate {rate} outside (0, 1)")
    fvec = lambda x: _hinv_fast(1.0 - x) * (1.0 - rate / x)
    x_star, val = _grid_golden_max(fvec, rate + _EDGE, 1.0 - _EDGE, GRID_BETA)
    return BoundPoint(rate, val, None, x_star)


def mult_bound(rate: float) -> float:
    """(1/2)(1-R) h^{-1}((1-R)/2), the easy multiedge-construction distance."""
    if not 0.0 <= rate < 1.0:
        raise ValidationError(f"rate {rate} outside [0, 1)")
    return 0.5 * (1.0 - rate) * entropy_inv((1.0 - rate) / 2.0)


# ---------------------------------------------------------------------------
# constrained-distance machinery (weight-per-entropy curve and g(beta))

def wpe(beta: float) -> float:
    """beta / h(beta): binary weight forced per unit of entropy."""
    if not 0.0 < beta < 1.0:
        raise ValidationError(f"beta {beta} outside (0, 1)")
    return beta / entropy(beta)


def _wpe_arr(beta: np.ndarray) -> np.ndarray:
    return beta / _h(beta)


def _wpe_second_derivative(beta: float) -> float:
    hb = entropy(beta)
    hp = math.log2((1.0 - beta) / beta)
    hpp = -1.0 / (_LN2 * beta * (1.0 - beta))
    return (-beta * hpp * hb - 2.0 * hp * (hb - beta * hp)) / hb**3


@functools.lru_cache(maxsize=1)
def wpe_inflection() -> float:
    """The unique inflection of wpe in (0, 1/2); convex to the right of it."""
    return _bisect(_wpe_second_derivative, 0.05, 0.4)


@functools.lru_cache(maxsize=1)
def chord_rate_threshold() -> float:
    """Largest R0 whose GV distance still lies in the convex region of wpe."""
    return 1.0 - entropy(wpe_inflection())


def _beta1_tangent(r0: float) -> float:
    """Largest root of the tangency equation for the chord piece of g."""
    dgv = gv_delta(r0)
    scale = dgv / (1.0 - r0)

    def tangency(beta: np.ndarray) -> np.ndarray:
        hb = _h(beta)
        return hb * (beta - hb * scale) + (beta - dgv) * np.log2(1.0 - beta)

    grid = np.linspace(dgv + 1e-7, 1.0 - _EDGE, GRID_ENVELOPE)
    vals = tangency(grid)
    neg = vals < 0
    flips = np.nonzero(neg[1:] != neg[:-1])[0]
    if flips.size == 0:
        raise RootNotFoundError(f"no tangency root for R0={r0}")
    i = int(flips[-1])
    f1 = lambda b: float(tangency(np.asarray([b]))[0])
    return _bisect(f1, float(grid[i]), float(grid[i + 1]))


@dataclass(frozen=True)
class GBetaCurve:
    """Piecewise convex minorant g for the beta-constrained distance of A.

    Constant head at gv/(1-R0) up to the GV distance, then either wpe
    directly (low R0) or a chord tangent to wpe at beta1, then wpe.
    delta0(beta) = (1-R0) * g(beta).
    """

    r0: float
    delta_gv: float
    beta1: float | None
    chord_a: float | None
    chord_b: float | None

    def g(self, beta) -> np.ndarray:
        beta = np.asarray(beta, dtype=float)
        head = self.delta_gv / (1.0 - self.r0)
        safe = np.clip(beta, 1e-12, 1.0 - 1e-12)
        out = np.where(beta <= self.delta_gv, head, _wpe_arr(safe))
        if self.beta1 is not None:
            chord = (self.chord_a * beta + self.chord_b) / (self.beta1 - self.delta_gv)
            out = np.where((beta > self.delta_gv) & (beta <= self.beta1), chord, out)
        return out

    def g_scalar(self, beta: float) -> float:
        return float(self.g(np.asarray([beta]))[0])

    def delta0(self, beta) -> np.ndarray:
        return (1.0 - self.r0) * self.g(beta)


def g_beta(r0: float) -> GBetaCurve:
    """Constrained-distance shape function for a random code of rate R0."""
    if not 0.0 < r0 < 1.0:
        raise ValidationError(f"rate {r0} outside (0, 1)")
    dgv = gv_delta(r0)
    if r0 <= chord_rate_threshold():
        return GBetaCurve(r0, dgv, None, None, None)
    beta1 = _beta1_tangent(r0)
    w1 = wpe(beta1)
    w0 = wpe(dgv)
    return GBetaCurve(r0, dgv, beta1, w1 - w0, w0 * beta1 - w1 * dgv)


def sigma_lower(gamma: float, r1: float) -> float:
    """(1 - R1) / min(h(gamma), 1-clipped): lower bound on the active fraction."""
    if not 0.0 < gamma < 1.0:
        raise ValidationError(f"gamma {gamma} outside (0, 1)")
    if not 0.0 < r1 < 1.0:
        raise ValidationError(f"rate {r1} outside (0, 1)")
    h_hat = 1.0 if gamma >= 0.5 else entropy(gamma)
    return (1.0 - r1) / h_hat


def constrained_q_distance(r1: float, beta: float) -> float:
    """(1 - R1)/h(beta); values above 1 mean no such codewords exist."""
    if not 0.0 < beta < 1.0:
        raise ValidationError(f"beta {beta} outside (0, 1)")
    if not 0.0 < r1 < 1.0:
        raise ValidationError(f"rate {r1} outside (0, 1)")
    return (1.0 - r1) / entropy(beta)


def bound_bb(rate: float) -> BoundPoint:
    """Improved distance of the plain construction at R0 = R1 = (1+R)/2."""
    if not 0.0 < rate < 1.0:
        raise ValidationError(f"rate {rate} outside (0, 1)")
    r0 = (1.0 + rate) / 2.0
    curve = g_beta(r0)
    fvec = lambda b: curve.g(b) / _h(b)
    beta_star, val = _grid_golden_min(
        fvec, curve.delta_gv + _EDGE, 0.5 - _EDGE, GRID_BETA
    )
    return BoundPoint(rate, 0.25 * (1.0 - rate) ** 2 * val, beta_star, r0)


# ---------------------------------------------------------------------------
# modified construction: omega(beta) and its convex envelope

def _a_beta_arr(beta: np.ndarray) -> np.ndarray:
    return 1.0 / (2.0 ** (_h(beta) / beta) + 1.0)


def _omega_star_arr(beta: np.ndarray, r0: float) -> np.ndarray:
    ab = _a_beta_arr(beta)
    return (1.0 - r0) * (ab + (beta / _h(beta)) * (1.0 - _h(ab)))


def _omega_2star_arr(beta: np.ndarray, r0: float) -> np.ndarray:
    arg = np.clip(1.0 - r0 * _h(beta) / (1.0 - r0), 0.0, 1.0)
    return r0 * beta + (1.0 - r0) * _hinv_fast(arg)


def _lower_hull(xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Lower convex hull of a function graph sampled on increasing xs."""
    if xs.size < 3:
        return xs, ys
    try:
        from scipy.spatial import ConvexHull

        hull = ConvexHull(np.column_stack([xs, ys]))
    except Exception:
        return _lower_hull_chain(xs, ys)
    verts = list(hull.vertices)
    # vertices are counterclockwise; walking from the leftmost to the
    # rightmost point traverses the lower side.
    left = int(min(verts, key=lambda i: (xs[i], ys[i])))
    right = int(max(verts, key=lambda i: (xs[i], ys[i])))
    pos = verts.index(left)
    path = [left]
    while path[-1] != right:
        pos = (pos + 1) % len(verts)
        path.append(verts[pos])
    idx = np.asarray(path)
    return xs[idx], ys[idx]


def _lower_hull_chain(xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Monotone-chain fallback for degenerate inputs."""
    hx: list[float] = []
    hy: list[float] = []
    for x, y in zip(xs, ys):
        while len(hx) >= 2 and (hy[-1] - hy[-2]) * (x - hx[-2]) >= (y - hy[-2]) * (
            hx[-1] - hx[-2]
        ):
            hx.pop()
            hy.pop()
        hx.append(float(x))
        hy.append(float(y))
    return np.asarray(hx), np.asarray(hy)


@dataclass(frozen=True, eq=False)
class ModOmegaCurve:
    """omega(beta) for the modified construction plus its convex envelope.

    omega is the two-piece curve (boundary piece up to beta1_prime, interior
    optimum after); delta0 evaluates the lower convex envelope sampled on a
    fixed grid over [gv(R0), 1/2].
    """

    r0: float
    delta_gv: float
    beta1_prime: float
    hull_beta: np.ndarray = field(repr=False)
    hull_omega: np.ndarray = field(repr=False)

    def a_of(self, beta: float) -> float:
        return float(_a_beta_arr(np.asarray([beta]))[0])

    def omega_star(self, beta: float) -> float:
        return float(_omega_star_arr(np.asarray([beta]), self.r0)[0])

    def omega_2star(self, beta: float) -> float:
        return float(_omega_2star_arr(np.asarray([beta]), self.r0)[0])

    def omega(self, beta) -> np.ndarray:
        beta = np.asarray(beta, dtype=float)
        return np.where(
            beta <= self.beta1_prime,
            _omega_2star_arr(beta, self.r0),
            _omega_star_arr(beta, self.r0),
        )

    def omega_witnesses(self, beta: float) -> tuple[float, float]:
        """(omega1, omega2) achieving the count at this beta."""
        if beta <= self.beta1_prime:
            arg = min(max(1.0 - self.r0 * entropy(beta) / (1.0 - self.r0), 0.0), 1.0)
            return beta, entropy_inv(arg)
        ab = self.a_of(beta)
        w = self.omega_star(beta)
        return (w - (1.0 - self.r0) * ab) / self.r0, ab

    def delta0(self, beta) -> np.ndarray:
        return np.interp(np.asarray(beta, dtype=float), self.hull_beta, self.hull_omega)


def omega_modified(r0: float) -> ModOmegaCurve:
    """Constrained-weight curve of the modified construction at inner rate R0."""
    if not 0.0 < r0 < 1.0:
        raise ValidationError(f"rate {r0} outside (0, 1)")
    dgv = gv_delta(r0)
    lo = min(dgv, 0.5 - 2e-9)
    fstar = lambda b: _omega_star_arr(np.asarray(b, dtype=float), r0) - dgv
    if float(fstar([0.5])[0]) <= 0.0:
        beta1p = 0.5  # omega* stays below the GV floor: boundary piece only
    else:
        grid = np.linspace(max(lo, 1e-6), 0.5, 512)
        vals = fstar(grid)
        neg = vals < 0
        flips = np.nonzero(neg[1:] != neg[:-1])[0]
        if flips.size == 0:
            beta1p = float(grid[0]) if vals[0] > 0 else 0.5
        else:
            i = int(flips[0])
            beta1p = _bisect(
                lambda b: float(fstar([b])[0]), float(grid[i]), float(grid[i + 1])
            )
    xs = np.linspace(lo + _EDGE, 0.5 - _EDGE, GRID_ENVELOPE)
    ys = np.empty_like(xs)
    boundary = xs <= beta1p
    ys[boundary] = _omega_2star_arr(xs[boundary], r0)
    ys[~boundary] = _omega_star_arr(xs[~boundary], r0)
    hx, hy = _lower_hull(xs, ys)
    return ModOmegaCurve(r0, dgv, beta1p, hx, hy)


def _ria_inner(rate: float, r0: float) -> float:
    if r0 <= rate or r0 >= 1.0:
        return 0.0
    curve = omega_modified(r0)
    lo = curve.delta_gv + _EDGE
    hi = 0.5 - _EDGE
    if hi - lo < 1e-8:
        return 0.0
    factor = 1.0 - rate / r0
    fvec = lambda b: curve.delta0(b) * factor / _h(b)
    _, val = _grid_golden_min(fvec, lo, hi, GRID_BETA)
    return val


def bound_ria(rate: float) -> BoundPoint:
    """Distance of the modified family: max over R0 of the inner beta minimum."""
    if not 0.0 < rate < 1.0:
        raise ValidationError(f"rate {rate} outside (0, 1)")
    r0s = np.linspace(rate + 1e-6, 1.0 - 1e-6, GRID_R0)
    vals = np.array([_ria_inner(rate, float(r0)) for r0 in r0s])
    i = int(np.argmax(vals))
    lo = float(r0s[max(i - 1, 0)])
    hi = float(r0s[min(i + 1, GRID_R0 - 1)])
    r0_star, best = _golden_max(lambda r0: _ria_inner(rate, r0), lo, hi)
    curve = omega_modified(r0_star)
    factor = 1.0 - rate / r0_star
    fvec = lambda b: curve.delta0(b) * factor / _h(b)
    beta_star, val = _grid_golden_min(
        fvec, curve.delta_gv + _EDGE, 0.5 - _EDGE, GRID_BETA
    )
    return BoundPoint(rate, val, beta_star, r0_star)


# ---------------------------------------------------------------------------
# multilevel concatenation (Blokh-Zyablov) reference curves

@dataclass(frozen=True)
class BZPoint:
    delta: float
    order: int | None  # None means the infinite-order limit
    rate: float
    r0_star: float | None = None


def blokh_zyablov(delta: float, m: int) -> BZPoint:
    """Best rate of an order-m multilevel concatenation at relative distance delta."""
    if not 0.0 < delta < 0.5:
        raise ValidationError(f"delta {delta} outside (0, 1/2)")
    if m < 1:
        raise ValidationError("order m must be >= 1")
    top = 1.0 - entropy(delta)
    js = np.arange(1, m + 1) / m

    def fvec(r0: np.ndarray) -> np.ndarray:
        inner = _hinv(1.0 - np.outer(r0, js))
        return r0 * (1.0 - (delta / m) * np.sum(1.0 / inner, axis=1))

    r0_star, val = _grid_golden_max(fvec, _EDGE, top - _EDGE, GRID_BETA)
    return BZPoint(delta, m, val, r0_star)


def _adaptive_simpson(f, a: float, b: float, tol: float) -> float:
    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, tol, depth):
        x1 = 0.5 * (x0 + x2)
        lm, rm = 0.5 * (x0 + x1), 0.5 * (x1 + x2)
        flm, frm = f(lm), f(rm)
        left = simpson(x0, x1, f0, flm, f1)
        right = simpson(x1, x2, f1, frm, f2)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return recurse(x0, x1, f0, flm, f1, left, tol / 2.0, depth - 1) + recurse(
            x1, x2, f1, frm, f2, right, tol / 2.0, depth - 1
        )

    mid = 0.5 * (a + b)
    fa, fm, fb = f(a), f(mid), f(b)
    return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 48)


def blokh_zyablov_inf(delta: float, tol: float = 1e-8) -> BZPoint:
    """Infinite-order limit 1 - h(delta) - delta * integral of 1/gv."""
    if not 0.0 < delta < 0.5:
        raise ValidationError(f"delta {delta} outside (0, 1/2)")
    top = 1.0 - entropy(delta)
    integral = _adaptive_simpson(
        lambda x: 1.0 / float(_hinv(np.asarray([1.0 - x]))[0]), 0.0, top, tol
    )
    return BZPoint(delta, None, top - delta * integral, None)


def bz_delta_at_rate(rate: float, m: int) -> BZPoint:
    """Invert the order-m curve: the delta whose best rate equals `rate`."""
    if not 0.0 < rate < 1.0:
        raise ValidationError(f"rate {rate} outside (0, 1)")
    delta = _bisect(
        lambda d: blokh_zyablov(d, m).rate - rate, 1e-9, 0.5 - 1e-9, iters=60
    )
    point = blokh_zyablov(delta, m)
    return BZPoint(delta, m, rate, point.r0_star)
