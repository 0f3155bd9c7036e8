"""Detection-theoretic verification of designed quantizers.

Two independent checks live here.  The first is exact: for a stream of
i.i.d. received bits, the optimal fixed-false-alarm test is a randomized
threshold on the ones-count, and its miss probability follows from the
binomial law; computed in log space, the decay rate of that miss recovers
the per-symbol divergence the designs were optimized for.  The second is
empirical: a seeded Monte Carlo of the whole pipeline (Gaussian sensing,
quantization, channel flips, log-likelihood fusion), whose estimates are
compared against the exact numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import logsumexp
from scipy.stats import binom

from .allocation import AllocationResult, NetworkConfig
from .roc import CLAMP_EPS, OperatingPoint, bsc_transform

#: Default false-alarm level for the exact miss computations: small enough
#: for the exponent to dominate, large enough to keep the randomized
#: threshold well-conditioned.
DEFAULT_DELTA = 0.01

#: Trials are simulated in fixed-size blocks, each with its own
#: counter-derived substream, so results do not depend on how blocks are
#: scheduled.
_BLOCK_TRIALS = 65536

_CAL_STREAM, _H0_STREAM, _H1_STREAM = 0, 1, 2


@dataclass(frozen=True)
class ExponentCurvePoint:
    """Exact miss of the best fixed-false-alarm test over one window.

    ``log_miss`` is ``ln q_T`` (miss probabilities are only ever carried
    in log space); ``exponent`` is ``-ln(q_T)/T`` and ``local_slope`` the
    discrete rate ``(ln q_T - ln q_{2T})/T``, both in nats per symbol.
    """

    window: int
    log_miss: float
    exponent: float
    local_slope: float

    @property
    def miss(self) -> float:
        return math.exp(self.log_miss)


@dataclass(frozen=True)
class TrialRecord:
    """Bit streams of one simulated trial, flattened sensor-major."""

    hypothesis: int
    sensor_bits: tuple[int, ...]
    fc_bits: tuple[int, ...]
    eve_bits: tuple[int, ...]


@dataclass(frozen=True)
class MonteCarloResult:
    """Estimates from the end-to-end pipeline simulation.

    The miss/false-alarm standard errors fold in the uncertainty of the
    simulated threshold calibration (propagated through the likelihood
    ratio at the threshold) on top of the estimation-stream binomial
    error, so they are standard errors with respect to the exact
    fixed-false-alarm operating point.
    """

    fc_fa_estimate: float
    fc_miss_estimate: float
    eve_fa_estimate: float
    eve_miss_estimate: float
    fc_fa_se: float
    fc_miss_se: float
    eve_fa_se: float
    eve_miss_se: float
    delta: float
    window: int
    trials: int
    calibration_trials: int
    seed: int


def _validate_interior_op(op: OperatingPoint) -> tuple[float, float]:
    x, y = op.pfa, op.pd
    if not (0.0 < x < 1.0 and 0.0 < y < 1.0):
        raise ValueError(
            f"exact test needs an operating point strictly inside the unit "
            f"square, got ({x!r}, {y!r})"
        )
    if not y >= x:
        raise ValueError(
            f"counting test is one-sided; needs pd >= pfa, got ({x!r}, {y!r})"
        )
    return x, y


def _np_components(
    x: float, y: float, window: int, delta: float
) -> tuple[float, int, float]:
    """Log miss, count threshold, and randomization weight of the optimal
    ones-count test with false alarm exactly ``delta``.

    The test rejects H0 when the ones-count exceeds ``t`` and with
    probability ``gamma`` when it equals ``t``.
    """
    ks = np.arange(window + 1)
    lp0 = binom.logpmf(ks, window, x)
    lp1 = binom.logpmf(ks, window, y)
    # suffix[k] = ln P(K >= k | H0); suffix[window + 1] = -inf
    suffix = np.full(window + 2, -np.inf)
    suffix[:-1] = np.logaddexp.accumulate(lp0[::-1])[::-1]
    log_delta = math.log(delta)
    # smallest t with P(K > t | H0) <= delta; suffix is nonincreasing
    t = int(np.argmax(suffix <= log_delta)) - 1
    p_gt = math.exp(suffix[t + 1])
    p_eq = math.exp(lp0[t])
    gamma = min(max((delta - p_gt) / p_eq, 0.0), 1.0)
    log_accept_lt = logsumexp(lp1[:t]) if t > 0 else -math.inf
    if gamma < 1.0:
        log_miss = np.logaddexp(log_accept_lt, math.log1p(-gamma) + lp1[t])
    else:
        log_miss = log_accept_lt
    return float(log_miss), t, gamma


def exact_np_miss(
    fc_op: OperatingPoint, window: int, delta: float = DEFAULT_DELTA
) -> ExponentCurvePoint:
    """Exact miss of the best test over ``window`` i.i.d. received bits.

    The per-bit law is Bernoulli(``fc_op.pfa``) under H0 and
    Bernoulli(``fc_op.pd``) under H1; the randomized ones-count threshold
    achieves false alarm exactly ``delta``, and the miss is summed from
    the binomial law entirely in log space (windows up to 10^4 stay
    representable).  ``local_slope`` additionally evaluates the window
    doubled.
    """
    if window < 1:
        raise ValueError(f"window must be at least 1, got {window!r}")
    if not (0.0 < delta < 0.5):
        raise ValueError(f"delta must lie in (0, 0.5), got {delta!r}")
    x, y = _validate_interior_op(fc_op)
    log_miss, _, _ = _np_components(x, y, window, delta)
    log_miss_doubled, _, _ = _np_components(x, y, 2 * window, delta)
    return ExponentCurvePoint(
        window=window,
        log_miss=log_miss,
        exponent=-log_miss / window,
        local_slope=(log_miss - log_miss_doubled) / window,
    )


def stein_curve(
    fc_op: OperatingPoint,
    windows: Sequence[int],
    delta: float = DEFAULT_DELTA,
) -> list[ExponentCurvePoint]:
    """Exact miss exponents over an ascending sequence of windows."""
    pairs = list(zip(windows, list(windows)[1:]))
    if any(b <= a for a, b in pairs):
        raise ValueError("windows must be strictly ascending")
    return [exact_np_miss(fc_op, window, delta) for window in windows]


def _llr_weights(op: OperatingPoint, channel) -> tuple[np.ndarray, np.ndarray]:
    """Per-bit log-likelihood increments for ones and zeros after a channel."""
    received = bsc_transform(op, channel)
    x = min(max(received.pfa, CLAMP_EPS), 1.0 - CLAMP_EPS)
    y = min(max(received.pd, CLAMP_EPS), 1.0 - CLAMP_EPS)
    return math.log(y / x), math.log((1.0 - y) / (1.0 - x))


def _block_rng(seed: int, stream: int, block: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(stream, block))
    )


def _simulate_block(
    rng: np.random.Generator,
    config: NetworkConfig,
    thresholds: np.ndarray,
    hypothesis: int,
    window: int,
    n_trials: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sensor, FC, and Eve bit arrays of shape (n_trials, n_sensors, window).

    Draw order (observations, FC flips, Eve flips) is fixed so a block is
    reproducible from its substream alone.
    """
    n = len(config.sites)
    thetas = np.array([site.model.theta for site in config.sites])
    sigmas = np.array([site.model.sigma for site in config.sites])
    fc_rho = np.array([site.fc_channel.crossover for site in config.sites])
    eve_rho = np.array([site.eve_channel.crossover for site in config.sites])

    shape = (n_trials, n, window)
    mean = thetas[None, :, None] if hypothesis == 1 else 0.0
    observations = mean + sigmas[None, :, None] * rng.standard_normal(shape)
    sensor = observations >= thresholds[None, :, None]
    fc = sensor ^ (rng.random(shape) < fc_rho[None, :, None])
    eve = sensor ^ (rng.random(shape) < eve_rho[None, :, None])
    return sensor, fc, eve


def _fusion_statistics(
    bits: np.ndarray, w_one: np.ndarray, w_zero: np.ndarray, window: int
) -> np.ndarray:
    """Log-likelihood-ratio sums per trial for (trials, sensors, window) bits."""
    ones = bits.sum(axis=2)
    return ones @ w_one + (window - ones) @ w_zero


def _calibrate(values: np.ndarray, delta: float) -> tuple[float, float]:
    """Randomized threshold with empirical false alarm exactly ``delta``.

    Returns ``(tau, gamma)``: reject when the statistic exceeds ``tau``,
    and with probability ``gamma`` at ``tau`` itself.
    """
    ordered = np.sort(values)[::-1]
    target = delta * len(values)
    tau = float(ordered[int(target)])
    count_gt = float(np.count_nonzero(values > tau))
    count_eq = float(np.count_nonzero(values == tau))
    gamma = (target - count_gt) / count_eq
    return tau, min(max(gamma, 0.0), 1.0)


def _rejection_rate(
    values: np.ndarray, tau: float, gamma: float
) -> tuple[float, float]:
    """Rejection frequency of the randomized test and its share of atoms."""
    frac_gt = float(np.mean(values > tau))
    frac_eq = float(np.mean(values == tau))
    return frac_gt + gamma * frac_eq, frac_eq


def simulate_monte_carlo(
    config: NetworkConfig,
    designs: AllocationResult,
    window: int,
    trials: int,
    seed: int,
    delta: float = DEFAULT_DELTA,
    calibration_trials: int | None = None,
) -> MonteCarloResult:
    """Simulate the sensing-quantize-transmit-fuse pipeline end to end.

    Every trial draws ``window`` Gaussian observations per sensor under
    each hypothesis, quantizes them with the designed thresholds, flips
    the bits through the FC and Eve channels independently, and fuses each
    receiver's bits with its log-likelihood-ratio sum.  The fusion
    thresholds are calibrated to false alarm ``delta`` on a separate H0
    stream (4x the estimation size by default).  Identical
    ``(seed, config)`` give bit-identical results regardless of execution
    layout: trials are partitioned into fixed blocks with counter-derived
    substreams.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials!r}")
    if window < 1:
        raise ValueError(f"window must be positive, got {window!r}")
    if len(designs.per_sensor) != len(config.sites):
        raise ValueError(
            f"designs cover {len(designs.per_sensor)} sensors but the config "
            f"has {len(config.sites)}"
        )
    if calibration_trials is None:
        calibration_trials = 4 * trials

    thresholds = np.array([rec.design.threshold for rec in designs.per_sensor])
    fc_w = [
        _llr_weights(rec.design.op, site.fc_channel)
        for rec, site in zip(designs.per_sensor, config.sites)
    ]
    eve_w = [
        _llr_weights(rec.design.op, site.eve_channel)
        for rec, site in zip(designs.per_sensor, config.sites)
    ]
    fc_w1 = np.array([w[0] for w in fc_w])
    fc_w0 = np.array([w[1] for w in fc_w])
    eve_w1 = np.array([w[0] for w in eve_w])
    eve_w0 = np.array([w[1] for w in eve_w])

    def collect(stream: int, hypothesis: int, count: int) -> tuple[np.ndarray, np.ndarray]:
        fc_stats = np.empty(count)
        eve_stats = np.empty(count)
        done = 0
        block = 0
        while done < count:
            n_block = min(_BLOCK_TRIALS, count - done)
            rng = _block_rng(seed, stream, block)
            _, fc_bits, eve_bits = _simulate_block(
                rng, config, thresholds, hypothesis, window, n_block
            )
            fc_stats[done : done + n_block] = _fusion_statistics(
                fc_bits, fc_w1, fc_w0, window
            )
            eve_stats[done : done + n_block] = _fusion_statistics(
                eve_bits, eve_w1, eve_w0, window
            )
            done += n_block
            block += 1
        return fc_stats, eve_stats

    cal_fc, cal_eve = collect(_CAL_STREAM, 0, calibration_trials)
    fc_tau, fc_gamma = _calibrate(cal_fc, delta)
    eve_tau, eve_gamma = _calibrate(cal_eve, delta)

    h0_fc, h0_eve = collect(_H0_STREAM, 0, trials)
    h1_fc, h1_eve = collect(_H1_STREAM, 1, trials)

    fc_fa, _ = _rejection_rate(h0_fc, fc_tau, fc_gamma)
    eve_fa, _ = _rejection_rate(h0_eve, eve_tau, eve_gamma)
    fc_reject_h1, _ = _rejection_rate(h1_fc, fc_tau, fc_gamma)
    eve_reject_h1, _ = _rejection_rate(h1_eve, eve_tau, eve_gamma)
    fc_miss = 1.0 - fc_reject_h1
    eve_miss = 1.0 - eve_reject_h1

    # calibration noise: the test's true false alarm deviates from delta
    # by ~ sqrt(delta(1-delta)/M); the induced miss deviation scales by
    # the likelihood ratio at the fusion threshold, exp(tau)
    cal_se = math.sqrt(delta * (1.0 - delta) / calibration_trials)

    def estimate_se(p: float) -> float:
        return math.sqrt(max(p * (1.0 - p), 0.0) / trials)

    def miss_se(p: float, tau: float) -> float:
        return math.sqrt(
            estimate_se(p) ** 2 + (math.exp(min(tau, 50.0)) * cal_se) ** 2
        )

    return MonteCarloResult(
        fc_fa_estimate=fc_fa,
        fc_miss_estimate=fc_miss,
        eve_fa_estimate=eve_fa,
        eve_miss_estimate=eve_miss,
        fc_fa_se=math.sqrt(estimate_se(fc_fa) ** 2 + cal_se**2),
        fc_miss_se=miss_se(fc_miss, fc_tau),
        eve_fa_se=math.sqrt(estimate_se(eve_fa) ** 2 + cal_se**2),
        eve_miss_se=miss_se(eve_miss, eve_tau),
        delta=delta,
        window=window,
        trials=trials,
        calibration_trials=calibration_trials,
        seed=seed,
    )


def sample_trial_records(
    config: NetworkConfig,
    designs: AllocationResult,
    hypothesis: int,
    window: int,
    count: int,
    seed: int,
) -> list[TrialRecord]:
    """First ``count`` trials of the estimation stream, as bit records.

    Uses the same substream derivation as :func:`simulate_monte_carlo`, so
    these records are exactly the bits behind its estimates.
    """
    if hypothesis not in (0, 1):
        raise ValueError(f"hypothesis must be 0 or 1, got {hypothesis!r}")
    if count < 1 or count > _BLOCK_TRIALS:
        raise ValueError(
            f"count must be in [1, {_BLOCK_TRIALS}], got {count!r}"
        )
    thresholds = np.array([rec.design.threshold for rec in designs.per_sensor])
    stream = _H1_STREAM if hypothesis == 1 else _H0_STREAM
    rng = _block_rng(seed, stream, 0)
    sensor, fc, eve = _simulate_block(
        rng, config, thresholds, hypothesis, window, count
    )
    records = []
    for k in range(count):
        records.append(
            TrialRecord(
                hypothesis=hypothesis,
                sensor_bits=tuple(int(b) for b in sensor[k].reshape(-1)),
                fc_bits=tuple(int(b) for b in fc[k].reshape(-1)),
                eve_bits=tuple(int(b) for b in eve[k].reshape(-1)),
            )
        )
    return records
