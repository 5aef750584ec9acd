"""
Validation signal generators.

Every generator is a pure function of its arguments. Signals are sampled at
exact grid points t_i = i / sample_rate with no band limiting: they are test
vectors for the estimators, not playback audio.
"""

import logging
import math

import numpy as np
from pydantic import ValidationError

from data.errors import InputError
from data.time_series import TimeSeries, WeierstrassParams

logger = logging.getLogger(__name__)


def _sample_count(sample_rate: float, duration: float) -> int:
    if not (math.isfinite(sample_rate) and sample_rate > 0):
        raise InputError(f"Sample rate must be positive, got {sample_rate}")
    if not (math.isfinite(duration) and duration > 0):
        raise InputError(f"Duration must be positive, got {duration}")
    n = int(round(duration * sample_rate))
    if n < 2:
        raise InputError(f"duration * sample_rate must give at least 2 samples, got {n}")
    return n


def _check_frequency(freq: float, sample_rate: float) -> None:
    if not (math.isfinite(freq) and freq > 0):
        raise InputError(f"Frequency must be positive, got {freq}")
    if freq >= sample_rate / 2:
        raise InputError(f"Frequency {freq} Hz is not below the Nyquist limit {sample_rate / 2} Hz")


def _phase(freq: float, sample_rate: float, n: int) -> np.ndarray:
    """Fraction of the period elapsed at each sample, in [0, 1)."""
    return np.mod(freq * np.arange(n) / sample_rate, 1.0)


def gen_sine(freq: float, sample_rate: float, duration: float, amplitude: float = 1.0) -> TimeSeries:
    """amplitude * sin(2 pi freq i / sample_rate)"""
    n = _sample_count(sample_rate, duration)
    _check_frequency(freq, sample_rate)
    samples = amplitude * np.sin(2.0 * np.pi * freq * np.arange(n) / sample_rate)
    return TimeSeries(samples=samples, sample_rate=sample_rate, theoretical_dimension=1.0)


def gen_square(freq: float, sample_rate: float, duration: float, amplitude: float = 1.0) -> TimeSeries:
    """+amplitude on the first half of each period, -amplitude on the second."""
    n = _sample_count(sample_rate, duration)
    _check_frequency(freq, sample_rate)
    samples = np.where(_phase(freq, sample_rate, n) < 0.5, amplitude, -amplitude)
    return TimeSeries(samples=samples, sample_rate=sample_rate, theoretical_dimension=1.0)


def gen_triangle(freq: float, sample_rate: float, duration: float, amplitude: float = 1.0) -> TimeSeries:
    """Linear rise from -amplitude to +amplitude over half a period, then back."""
    n = _sample_count(sample_rate, duration)
    _check_frequency(freq, sample_rate)
    phase = _phase(freq, sample_rate, n)
    samples = amplitude * (1.0 - 4.0 * np.abs(phase - 0.5))
    return TimeSeries(samples=samples, sample_rate=sample_rate, theoretical_dimension=1.0)


def gen_weierstrass(params: WeierstrassParams, sample_rate: float, duration: float) -> TimeSeries:
    """
    Truncated Weierstrass sum  X(t_i) = sum_{n < n_terms} a^n cos(b^n pi t_i).

    When b and sample_rate are integers the phase b^n * i / sample_rate is
    reduced modulo 2 in exact integer arithmetic, so high-order terms keep
    full precision instead of evaluating cos at arguments near 1e30.

    Args:
        params: Weierstrass parameters (a*b > 1 is enforced by the model)
        sample_rate: Samples per unit of t
        duration: Length of the series in units of t

    Returns:
        TimeSeries carrying theoretical_dimension = 2 + ln(a)/ln(b)
    """
    n = _sample_count(sample_rate, duration)
    index = np.arange(n, dtype=np.int64)
    samples = np.zeros(n)

    exact = float(params.b).is_integer() and float(sample_rate).is_integer()
    if exact:
        b = int(params.b)
        modulus = 2 * int(sample_rate)
        for term in range(params.n_terms):
            multiplier = pow(b, term, modulus)
            phase = (multiplier * index) % modulus
            samples += params.a**term * np.cos(np.pi * phase / int(sample_rate))
    else:
        t = index / sample_rate
        for term in range(params.n_terms):
            samples += params.a**term * np.cos(params.b**term * np.pi * t)

    logger.debug(
        f"Weierstrass a={params.a:.6g} b={params.b:.6g} terms={params.n_terms} exact_phase={exact}"
    )
    return TimeSeries(
        samples=samples,
        sample_rate=sample_rate,
        theoretical_dimension=params.theoretical_dimension,
    )


def weierstrass_params(a: float, b: float, n_terms: int = None) -> WeierstrassParams:
    """Build WeierstrassParams, reporting violations as InputError."""
    try:
        return WeierstrassParams(a=a, b=b, n_terms=n_terms)
    except ValidationError as e:
        raise InputError(f"Invalid Weierstrass parameters: {e.errors()[0]['msg']}") from e


def gen_white_noise(seed: int, sample_rate: float, duration: float, amplitude: float = 1.0) -> TimeSeries:
    """
    I.i.d. uniform samples in [-amplitude, amplitude].

    The stream comes from numpy's PCG64 bit generator seeded with `seed`; the
    seed and this algorithm are part of the public contract, so a seed always
    reproduces the same series.
    """
    n = _sample_count(sample_rate, duration)
    if seed < 0:
        raise InputError(f"Seed must be a non-negative integer, got {seed}")
    rng = np.random.Generator(np.random.PCG64(seed))
    samples = rng.uniform(-amplitude, amplitude, n)
    return TimeSeries(samples=samples, sample_rate=sample_rate, theoretical_dimension=2.0)


def gen_ramp(n: int) -> TimeSeries:
    """samples[i] = i at a sample rate of 1."""
    if n < 2:
        raise InputError(f"A ramp needs at least 2 samples, got {n}")
    return TimeSeries(samples=np.arange(n, dtype=np.float64), sample_rate=1.0, theoretical_dimension=1.0)
