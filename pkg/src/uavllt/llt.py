"""Analytic link-lifetime (LLT) computation for a UAV pair.

The link between two UAVs lives until their planar separation first exceeds
the transmission range. With both trajectories known, the squared
separation is a quadratic in time plus a handful of sinusoids::

    D^2(t) = q0 + q1*t + q2*t^2 + sum_j  K_j * t^{p_j} * cos(phi_j + nu_j * t)

Three motion pairings occur. When both UAVs fly curves (case A) there are
three sinusoids, at the two orbital rates and their difference. A
curve/straight pair (case B) has sinusoids at the orbital rate only, one of
them with a linear-in-t amplitude. Two straight flyers (case C) give a pure
quadratic that is solved exactly.

For cases A and B the sinusoids are Taylor-expanded (degree 12 by default)
to obtain a polynomial whose real roots locate candidate break times. A
fixed-degree expansion of a cosine is only trustworthy while its argument
stays small, so the expansion is applied piecewise over certified trust
windows: each window is sized from the largest sinusoid rate and shrunk
until a remainder bound guarantees the requested relative accuracy, and the
search re-anchors at the window edge until a break is found or the horizon
is reached. Every polynomial root is polished against the exact
transcendental separation by bracketed root refinement before acceptance,
so the reported break time does not inherit the expansion error; the
polynomial only supplies brackets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import brentq

from .kinematics import (
    CurveTrajectory,
    Position,
    StraightTrajectory,
    Trajectory,
    position_at,
    re_anchor,
)

DEFAULT_TAYLOR_DEGREE = 12
DEFAULT_HORIZON = 3600.0
# Target relative accuracy of the Taylor polynomial inside a trust window.
TRUST_REL_ERROR = 1e-6
# Root refinement target relative to the polynomial's largest coefficient.
ROOT_RESIDUAL_RTOL = 1e-9
# A bounded result must sit on the range circle to within this fraction.
RANGE_RESIDUAL_RTOL = 0.01


class LinkNotUp(RuntimeError):
    """The pair is already farther apart than the transmission range."""


class ZeroPolynomial(ValueError):
    """Root finding was asked for the identically-zero polynomial."""


# ---------------------------------------------------------------------------
# Case geometry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CaseGeometry:
    """Absolute center gaps, their signs, and the gap angle.

    For a planar offset (dx, dy) between two reference points:
    ``a = |dx|``, ``b = |dy|``, ``sign1 = dx/a``, ``sign2 = dy/b`` and
    ``alpha = acos(a / sqrt(a^2 + b^2))``. A zero gap takes sign +1; the
    corresponding term carries a zero factor, so the choice is a removable
    singularity (verified against the direct expansion in the tests).
    """

    a: float
    b: float
    sign1: float
    sign2: float
    alpha: float

    @property
    def gap(self) -> float:
        """sqrt(a^2 + b^2), the planar distance between the reference points."""
        return math.hypot(self.a, self.b)

    @property
    def cross_sign(self) -> float:
        return self.sign1 * self.sign2


def case_geometry(dx: float, dy: float) -> CaseGeometry:
    a = abs(dx)
    b = abs(dy)
    sign1 = -1.0 if dx < 0.0 else 1.0
    sign2 = -1.0 if dy < 0.0 else 1.0
    return CaseGeometry(a, b, sign1, sign2, math.atan2(b, a))


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Dense real polynomial with coefficients in ascending degree."""

    coefficients: tuple[float, ...]

    @classmethod
    def from_coefficients(cls, coeffs) -> "Polynomial":
        trimmed = list(map(float, coeffs))
        while len(trimmed) > 1 and trimmed[-1] == 0.0:
            trimmed.pop()
        if not trimmed:
            trimmed = [0.0]
        return cls(tuple(trimmed))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0.0 for c in self.coefficients)

    def __call__(self, t):
        return npoly.polyval(t, self.coefficients)

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial.from_coefficients([0.0])
        return Polynomial.from_coefficients(npoly.polyder(self.coefficients))

    def minus_constant(self, value: float) -> "Polynomial":
        coeffs = list(self.coefficients)
        coeffs[0] -= value
        return Polynomial.from_coefficients(coeffs)


def find_real_roots(p: Polynomial) -> list[float]:
    """All real roots of ``p`` in ascending order, Newton-polished.

    Complex-conjugate pairs are dropped (imaginary part beyond a small
    relative threshold); surviving roots are refined on the real axis until
    ``|p(t)| <= 1e-9 * max|coefficient|`` or the step size degenerates.
    Raises :class:`ZeroPolynomial` for the identically-zero input.
    """
    if p.is_zero:
        raise ZeroPolynomial("the zero polynomial has no isolated roots")
    if p.degree == 0:
        return []
    coeffs = np.asarray(p.coefficients, dtype=float)
    raw = npoly.polyroots(coeffs)
    dcoeffs = npoly.polyder(coeffs)
    target = ROOT_RESIDUAL_RTOL * float(np.max(np.abs(coeffs)))

    roots = []
    for z in raw:
        if abs(z.imag) > 1e-5 * (1.0 + abs(z.real)):
            continue
        t = float(z.real)
        best_t, best_f = t, abs(float(npoly.polyval(t, coeffs)))
        for _ in range(60):
            ft = float(npoly.polyval(t, coeffs))
            if abs(ft) < best_f:
                best_t, best_f = t, abs(ft)
            if abs(ft) <= 0.01 * target:
                break
            dt = float(npoly.polyval(t, dcoeffs))
            if dt == 0.0:
                break
            step = ft / dt
            t -= step
            if not math.isfinite(t) or abs(step) <= 1e-16 * (1.0 + abs(t)):
                if math.isfinite(t):
                    ft = float(npoly.polyval(t, coeffs))
                    if abs(ft) < best_f:
                        best_t, best_f = t, abs(ft)
                break
        roots.append(best_t)
    return sorted(roots)


# ---------------------------------------------------------------------------
# Squared separation model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrigTerm:
    """One sinusoid ``amplitude * t^t_power * cos(phase + rate * t)``."""

    amplitude: float
    phase: float
    rate: float
    t_power: int = 0

    def __call__(self, t):
        value = self.amplitude * np.cos(self.phase + self.rate * np.asarray(t, dtype=float))
        if self.t_power:
            value = value * np.asarray(t, dtype=float) ** self.t_power
        return value

    def taylor_coefficients(self, degree: int) -> np.ndarray:
        """Ascending coefficients of the degree-``degree`` expansion about t=0."""
        out = np.zeros(degree + 1)
        order = degree - self.t_power
        # d^k/dt^k cos(phase + rate*t) at 0 cycles through +-cos/sin(phase)
        cycle = (
            math.cos(self.phase),
            -math.sin(self.phase),
            -math.cos(self.phase),
            math.sin(self.phase),
        )
        rate_pow = 1.0
        fact = 1.0
        for k in range(order + 1):
            if k > 0:
                rate_pow *= self.rate
                fact *= k
            out[k + self.t_power] = self.amplitude * cycle[k % 4] * rate_pow / fact
        return out

    def remainder_bound(self, degree: int, window: float) -> float:
        """Upper bound on the truncation error over ``[0, window]``."""
        order = degree - self.t_power
        x = abs(self.rate) * window
        if x == 0.0:
            return 0.0
        tail = x ** (order + 1) / math.factorial(order + 1)
        if x < order + 2:
            tail /= 1.0 - x / (order + 2)
        else:  # far outside any window this module produces; keep it safe
            tail = abs(self.amplitude) * math.exp(x)
        return abs(self.amplitude) * (window ** self.t_power) * tail


@dataclass(frozen=True)
class SquaredDistance:
    """Exact squared planar separation of a UAV pair as a function of time.

    ``quadratic`` holds (q0, q1, q2); ``terms`` the sinusoids. Calling the
    model evaluates the exact (non-expanded) function; no Taylor error here.
    """

    quadratic: tuple[float, float, float]
    terms: tuple[TrigTerm, ...]
    case_label: str

    def __call__(self, t):
        tt = np.asarray(t, dtype=float)
        q0, q1, q2 = self.quadratic
        value = q0 + tt * (q1 + tt * q2)
        for term in self.terms:
            value = value + term(tt)
        if np.ndim(t) == 0:
            return float(value)
        return value

    def taylor(self, degree: int) -> Polynomial:
        """Taylor polynomial of the model about t=0, exact for case C."""
        coeffs = np.zeros(degree + 1)
        q0, q1, q2 = self.quadratic
        coeffs[0] = q0
        if degree >= 1:
            coeffs[1] = q1
        if degree >= 2:
            coeffs[2] = q2
        for term in self.terms:
            coeffs += term.taylor_coefficients(degree)
        return Polynomial.from_coefficients(coeffs)

    def max_rate(self) -> float:
        if not self.terms:
            return 0.0
        return max(abs(term.rate) for term in self.terms)

    def remainder_bound(self, degree: int, window: float) -> float:
        return sum(term.remainder_bound(degree, window) for term in self.terms)


def classify_case(traj_a: Trajectory, traj_b: Trajectory) -> str:
    """"A" for curve/curve, "B" for mixed, "C" for straight/straight."""
    a_curve = isinstance(traj_a, CurveTrajectory)
    b_curve = isinstance(traj_b, CurveTrajectory)
    if a_curve and b_curve:
        return "A"
    if a_curve or b_curve:
        return "B"
    return "C"


def _curve_pair_model(c1: CurveTrajectory, c2: CurveTrajectory) -> SquaredDistance:
    geom = case_geometry(c1.center_x - c2.center_x, c1.center_y - c2.center_y)
    gap = geom.gap
    beta = geom.cross_sign * geom.alpha
    q0 = gap * gap + c1.radius**2 + c2.radius**2
    terms = [TrigTerm(-2.0 * c1.radius * c2.radius,
                      c1.initial_phase - c2.initial_phase,
                      c1.omega - c2.omega)]
    if gap > 0.0:
        scale = 2.0 * geom.sign1 * gap
        terms.append(TrigTerm(scale * c1.radius, c1.initial_phase - beta, c1.omega))
        terms.append(TrigTerm(-scale * c2.radius, c2.initial_phase - beta, c2.omega))
    return SquaredDistance((q0, 0.0, 0.0), tuple(terms), "A")


def _curve_straight_model(c: CurveTrajectory, s: StraightTrajectory) -> SquaredDistance:
    # Gaps measured from the straight flyer's origin to the turn center.
    geom = case_geometry(c.center_x - s.origin_x, c.center_y - s.origin_y)
    gap = geom.gap
    beta = geom.cross_sign * geom.alpha
    q0 = gap * gap + c.radius**2
    q1 = -2.0 * geom.sign1 * s.speed * gap * math.cos(s.heading - beta)
    q2 = s.speed**2
    terms = []
    if gap > 0.0:
        terms.append(TrigTerm(2.0 * geom.sign1 * c.radius * gap,
                              c.initial_phase - beta, c.omega))
    if s.speed > 0.0:
        terms.append(TrigTerm(-2.0 * c.radius * s.speed,
                              c.initial_phase - s.heading, c.omega, t_power=1))
    return SquaredDistance((q0, q1, q2), tuple(terms), "B")


def _straight_pair_model(s1: StraightTrajectory, s2: StraightTrajectory) -> SquaredDistance:
    dx = s1.origin_x - s2.origin_x
    dy = s1.origin_y - s2.origin_y
    h1, h2 = s1.heading, s2.heading
    v1, v2 = s1.speed, s2.speed
    q0 = dx * dx + dy * dy
    q1 = (2.0 * v1 * (dx * math.cos(h1) + dy * math.sin(h1))
          - 2.0 * v2 * (dx * math.cos(h2) + dy * math.sin(h2)))
    q2 = v1 * v1 + v2 * v2 - 2.0 * v1 * v2 * math.cos(h1 - h2)
    return SquaredDistance((q0, q1, q2), (), "C")


def _to_shared_epoch(traj_a: Trajectory, traj_b: Trajectory) -> tuple[Trajectory, Trajectory, float]:
    """Re-anchor both trajectories at the later of their epochs."""
    epoch = max(traj_a.epoch, traj_b.epoch)
    return re_anchor(traj_a, epoch), re_anchor(traj_b, epoch), epoch


def squared_link_distance(traj_a: Trajectory, traj_b: Trajectory) -> SquaredDistance:
    """Exact squared planar separation, as a callable model of elapsed time.

    ``t`` counts seconds from the pair's shared epoch; if the anchors differ,
    both trajectories are first re-anchored at the later epoch. Altitude is
    ignored: each UAV holds a fixed unique altitude and the vertical gap is
    treated as negligible against the planar separation.
    """
    a, b, _ = _to_shared_epoch(traj_a, traj_b)
    a_curve = isinstance(a, CurveTrajectory)
    b_curve = isinstance(b, CurveTrajectory)
    if a_curve and b_curve:
        return _curve_pair_model(a, b)
    if a_curve:
        return _curve_straight_model(a, b)
    if b_curve:
        return _curve_straight_model(b, a)
    return _straight_pair_model(a, b)


def taylor_link_polynomial(
    traj_a: Trajectory, traj_b: Trajectory, degree: int = DEFAULT_TAYLOR_DEGREE
) -> Polynomial:
    """Polynomial approximation of the squared separation about the epoch.

    Each sinusoid is expanded to the requested degree; the quadratic part is
    carried exactly, so for a straight/straight pair the result is the exact
    quadratic whatever ``degree`` says.
    """
    if degree < 2:
        raise ValueError(f"degree must be >= 2, got {degree}")
    return squared_link_distance(traj_a, traj_b).taylor(degree)


def trust_window(model: SquaredDistance, degree: int = DEFAULT_TAYLOR_DEGREE,
                 cap: float = math.inf) -> float:
    """Certified window [0, W] on which the expansion is relatively accurate.

    Starts from a quarter period of the fastest sinusoid (which keeps every
    argument at or below pi/2, including the difference-rate term of case A)
    and halves until an analytic remainder bound is small against the
    smallest sampled separation. Purely quadratic models trust any window.
    """
    rate = model.max_rate()
    if rate == 0.0:
        return cap
    window = min(cap, (math.pi / 2.0) / rate)
    floor = window / 4096.0
    for _ in range(13):
        bound = model.remainder_bound(degree, window)
        smallest = float(np.min(model(np.linspace(0.0, window, 65))))
        if bound <= 0.25 * TRUST_REL_ERROR * max(smallest, 1e-12):
            break
        if window <= floor:
            break
        window *= 0.5
    return window


# ---------------------------------------------------------------------------
# Root selection
# ---------------------------------------------------------------------------


def _polish_upward_crossing(f, t: float, trust_radius: float):
    """Bracket and refine an upward zero crossing of ``f`` near ``t``.

    Returns the refined crossing time, or None when no sign change from
    below to above exists nearby (entering-range crossings and tangencies
    are rejected here).
    """
    delta = max(1e-9, 1e-6 * max(1.0, abs(t)))
    delta_max = max(0.5 * min(trust_radius, 1e9), 4.0 * delta)
    while delta <= delta_max:
        lo = max(0.0, t - delta)
        hi = t + delta
        flo = f(lo)
        fhi = f(hi)
        if flo < 0.0 < fhi:
            return float(brentq(f, lo, hi, xtol=1e-12, rtol=4 * np.finfo(float).eps))
        if flo == 0.0 and lo == 0.0 and fhi > 0.0:
            return 0.0
        if flo > 0.0 and fhi < 0.0:
            return None
        delta *= 4.0
    return None


def select_root(roots, exact_dist, tx_range: float, trust_radius: float,
                *, range_tol: float | None = None):
    """Pick the break time from polynomial root candidates.

    ``exact_dist`` maps time to the exact squared separation. Candidates
    must be real, non-negative and within the trust radius; each is polished
    against the exact function and kept only if the separation crosses the
    range from below to above there (a link break, not a link formation).
    Returns the smallest accepted time, or None.
    """
    if tx_range <= 0.0:
        raise ValueError(f"transmission range must be positive, got {tx_range}")
    tol = RANGE_RESIDUAL_RTOL * tx_range if range_tol is None else range_tol
    r2 = tx_range * tx_range

    def f(t):
        return exact_dist(t) - r2

    accepted = []
    for t in sorted(roots):
        if t < -1e-9 or t > trust_radius * (1.0 + 1e-9):
            continue
        crossing = _polish_upward_crossing(f, max(t, 0.0), trust_radius)
        if crossing is None:
            continue
        if abs(math.sqrt(max(exact_dist(crossing), 0.0)) - tx_range) <= tol:
            accepted.append(crossing)
    return min(accepted) if accepted else None


# ---------------------------------------------------------------------------
# LLT computation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LltResult:
    """Outcome of a link-lifetime computation.

    ``llt`` is the predicted remaining lifetime in seconds measured from the
    pair's shared epoch. When no break is found by the horizon,
    ``horizon_capped`` is set and ``llt`` equals the horizon (the lifetime
    is at least that); ``root`` and ``residual`` are then None.
    """

    llt: float
    case_used: str
    root: float | None
    residual: float | None
    horizon_capped: bool

    @property
    def bounded(self) -> bool:
        return not self.horizon_capped

    @property
    def unbounded(self) -> bool:
        return self.horizon_capped


def _trajectory_of(state) -> Trajectory:
    if isinstance(state, (CurveTrajectory, StraightTrajectory)):
        return state
    return state.trajectory


def _canonical_key(traj: Trajectory):
    if isinstance(traj, CurveTrajectory):
        return (0, traj.center_x, traj.center_y, traj.radius, traj.speed,
                float(traj.direction), traj.initial_phase, traj.altitude)
    return (1, traj.origin_x, traj.origin_y, traj.heading, traj.speed, traj.altitude)


def _unbounded(case: str, horizon: float) -> LltResult:
    return LltResult(llt=horizon, case_used=case, root=None, residual=None,
                     horizon_capped=True)


def _bounded(case: str, root: float, model: SquaredDistance, tx_range: float) -> LltResult:
    residual = abs(math.sqrt(max(model(root), 0.0)) - tx_range)
    return LltResult(llt=root, case_used=case, root=root, residual=residual,
                     horizon_capped=False)


def _solve_case_c(model: SquaredDistance, tx_range: float, horizon: float) -> LltResult:
    q0, q1, q2 = model.quadratic
    c = min(q0 - tx_range * tx_range, 0.0)  # at most on the range circle at t=0
    if q2 <= 0.0:
        # Equal velocity vectors: constant separation, never a break.
        if q1 > 0.0 and c < 0.0:
            root = -c / q1
            if root <= horizon:
                return _bounded("C", root, model, tx_range)
        return _unbounded("C", horizon)
    disc = q1 * q1 - 4.0 * q2 * c
    root = (-q1 + math.sqrt(max(disc, 0.0))) / (2.0 * q2)
    root = max(root, 0.0)
    if root > horizon:
        return _unbounded("C", horizon)
    return _bounded("C", root, model, tx_range)


def _equal_rate_peak(c1: CurveTrajectory, c2: CurveTrajectory) -> float:
    """Largest squared separation when both UAVs share one angular velocity.

    The two gap sinusoids then combine into a single sinusoid via a phasor
    sum, so the exact envelope maximum is available in closed form.
    """
    geom = case_geometry(c1.center_x - c2.center_x, c1.center_y - c2.center_y)
    gap = geom.gap
    base = (gap * gap + c1.radius**2 + c2.radius**2
            - 2.0 * c1.radius * c2.radius * math.cos(c1.initial_phase - c2.initial_phase))
    px = c1.radius * math.cos(c1.initial_phase) - c2.radius * math.cos(c2.initial_phase)
    py = c1.radius * math.sin(c1.initial_phase) - c2.radius * math.sin(c2.initial_phase)
    return base + 2.0 * gap * math.hypot(px, py)


def _first_crossing_scan(model: SquaredDistance, tx_range: float, window: float):
    """Safety net: locate the first upward crossing on [0, window] by scanning."""
    r2 = tx_range * tx_range
    ts = np.linspace(0.0, window, 257)
    values = model(ts) - r2
    for i in range(1, len(ts)):
        if values[i - 1] <= 0.0 < values[i]:
            lo, hi = float(ts[i - 1]), float(ts[i])
            return float(brentq(lambda t: model(t) - r2, lo, hi,
                                xtol=1e-12, rtol=4 * np.finfo(float).eps))
    return None


def compute_llt(
    state_a,
    state_b,
    tx_range: float,
    horizon: float = DEFAULT_HORIZON,
    *,
    degree: int = DEFAULT_TAYLOR_DEGREE,
) -> LltResult:
    """Predicted remaining link lifetime of a UAV pair.

    Accepts trajectories or any objects with a ``trajectory`` attribute and
    re-anchors both at the later epoch, so ``llt`` counts seconds from that
    instant. Requires the link to be up (planar separation at most
    ``tx_range``); raises :class:`LinkNotUp` otherwise.

    Straight/straight pairs are solved exactly. Curve cases run the
    expand/root/polish pipeline over successive trust windows. A bounded
    result's ``root`` sits on the range circle to within 1% of the range
    (far tighter in practice, since roots are polished against the exact
    separation); if no break is found by ``horizon`` the result is marked
    ``horizon_capped``.
    """
    if tx_range <= 0.0:
        raise ValueError(f"transmission range must be positive, got {tx_range}")
    if horizon <= 0.0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    traj_a = _trajectory_of(state_a)
    traj_b = _trajectory_of(state_b)
    traj_a, traj_b, _ = _to_shared_epoch(traj_a, traj_b)
    # Canonical argument order makes the result exactly symmetric in the pair.
    if _canonical_key(traj_b) < _canonical_key(traj_a):
        traj_a, traj_b = traj_b, traj_a

    model = squared_link_distance(traj_a, traj_b)
    case = model.case_label
    d0_sq = model(0.0)
    r2 = tx_range * tx_range
    if d0_sq > r2 * (1.0 + 1e-12):
        raise LinkNotUp(
            f"initial separation {math.sqrt(d0_sq):.3f} m exceeds range {tx_range:.3f} m"
        )

    if case == "C":
        return _solve_case_c(model, tx_range, horizon)

    if case == "A":
        omega_a = traj_a.omega
        omega_b = traj_b.omega
        max_abs = max(abs(omega_a), abs(omega_b))
        if abs(omega_a - omega_b) <= 1e-12 * max_abs:
            # Locked relative phase: the separation envelope never grows.
            if _equal_rate_peak(traj_a, traj_b) <= r2 * (1.0 - 1e-9):
                return _unbounded(case, horizon)
        # Unreachable range: the separation can never exceed |gap| + R1 + R2.
        geom_gap = math.hypot(traj_a.center_x - traj_b.center_x,
                              traj_a.center_y - traj_b.center_y)
        if geom_gap + traj_a.radius + traj_b.radius <= tx_range * (1.0 - 1e-12):
            return _unbounded(case, horizon)

    t_base = 0.0
    win_a, win_b = traj_a, traj_b
    while t_base < horizon * (1.0 - 1e-12):
        window_model = squared_link_distance(win_a, win_b)
        window = trust_window(window_model, degree, cap=horizon - t_base)
        if not math.isfinite(window):
            window = horizon - t_base
        poly = window_model.taylor(degree).minus_constant(r2)
        if poly.is_zero:
            break  # separation identically equal to the range: never exceeds
        roots = find_real_roots(poly)
        pick = select_root(roots, window_model, tx_range, window * 1.05)
        if pick is None and window_model(window) - r2 > 0.0:
            # The window provably contains a crossing the roots missed.
            pick = _first_crossing_scan(window_model, tx_range, window)
        if pick is not None:
            total = t_base + pick
            if total > horizon:
                return _unbounded(case, horizon)
            result = _bounded(case, pick, window_model, tx_range)
            return LltResult(llt=total, case_used=case, root=total,
                             residual=result.residual, horizon_capped=False)
        t_base += window
        win_a = re_anchor(win_a, win_a.epoch + window)
        win_b = re_anchor(win_b, win_b.epoch + window)
    return _unbounded(case, horizon)


def planar_separation(state_a, state_b, at: float | None = None) -> float:
    """Current planar separation of two states, or at an absolute time."""
    traj_a = _trajectory_of(state_a)
    traj_b = _trajectory_of(state_b)
    t = max(traj_a.epoch, traj_b.epoch) if at is None else at
    pa: Position = position_at(traj_a, t - traj_a.epoch)
    pb: Position = position_at(traj_b, t - traj_b.epoch)
    return math.hypot(pa.x - pb.x, pa.y - pb.y)
