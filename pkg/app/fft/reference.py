"""Software oracles for the FFT datapaths and complex bus packing.

Batched oracles take integer arrays shaped ``(vectors, points, 2)`` where the
last axis is (re, im); all results are reduced mod 2^width.
"""

from collections.abc import Sequence

import numpy as np

from app.errors import FFTError, FormatMismatch
from app.fft.models import ComplexWord, FixedPointFormat, twiddle_coefficient
from app.netlist.models import Netlist
from app.netlist.ports import pack_buses, read_bus


def _signed(values: np.ndarray, width: int) -> np.ndarray:
    values = values & ((1 << width) - 1)
    return np.where(values >> (width - 1), values - (1 << width), values)


def _dft4_matrix() -> tuple[np.ndarray, np.ndarray]:
    """Real and imaginary parts of exp(-2j*pi*n*k/4); every entry is 0 or +-1."""
    nk = np.outer(np.arange(4), np.arange(4))
    w = np.exp(-2j * np.pi * nk / 4)
    return np.rint(w.real).astype(np.int64), np.rint(w.imag).astype(np.int64)


def dft4_batch(samples: np.ndarray, width: int) -> np.ndarray:
    """Exact 4-point DFT, X(k) = sum over n of x(n) * (-j)^(n*k), by direct summation."""
    samples = np.asarray(samples, dtype=np.int64)
    w_re, w_im = _dft4_matrix()
    x_re, x_im = samples[..., 0], samples[..., 1]
    # Gaussian-integer product, summed over n
    re = x_re @ w_re - x_im @ w_im
    im = x_re @ w_im + x_im @ w_re
    return np.stack([re, im], axis=-1) & ((1 << width) - 1)


def fft8_batch(samples: np.ndarray, width: int, fmt: FixedPointFormat) -> np.ndarray:
    """Quantized 8-point FFT with the datapath's coefficient and rounding.

    Each twiddle product is ``floor(x * K / 2^f)`` on the signed value of ``x``,
    wrapped to ``width`` bits.
    """
    if fmt.total_bits != width:
        raise FormatMismatch(f"format has {fmt.total_bits} bits, data has {width}")
    samples = np.asarray(samples, dtype=np.int64)
    mask = (1 << width) - 1
    k_coef = twiddle_coefficient(fmt)
    even = dft4_batch(samples[:, 0::2], width)
    odd = dft4_batch(samples[:, 1::2], width)

    def cmul(x: np.ndarray) -> np.ndarray:
        return ((_signed(x, width) * k_coef) >> fmt.frac_bits) & mask

    twiddled = np.zeros_like(odd)
    twiddled[:, 0] = odd[:, 0]
    twiddled[:, 2, 0] = odd[:, 2, 1]
    twiddled[:, 2, 1] = -odd[:, 2, 0]
    for k in (1, 3):
        m_a, m_b = cmul(odd[:, k, 0]), cmul(odd[:, k, 1])
        total, diff = m_a + m_b, m_b - m_a
        twiddled[:, k] = np.stack([total, diff], -1) if k == 1 else np.stack([diff, -total], -1)

    out = np.concatenate([even + twiddled, even - twiddled], axis=1)
    return out & mask


def reference_dft(
    points: int,
    inputs: Sequence[ComplexWord],
    fmt: FixedPointFormat | None = None,
) -> list[ComplexWord]:
    """Direct DFT of ``inputs``; exact for 4 points, quantized to ``fmt`` for 8."""
    if len(inputs) != points:
        raise FFTError(f"{len(inputs)} samples for a {points}-point transform")
    width = inputs[0].width
    samples = np.array([[[w.re, w.im] for w in inputs]], dtype=np.int64)
    if points == 4:
        out = dft4_batch(samples, width)
    elif points == 8:
        if fmt is None:
            raise FormatMismatch("the 8-point transform has non-trivial twiddles and needs a format")
        out = fft8_batch(samples, width, fmt)
    else:
        raise FFTError(f"no reference for a {points}-point transform in this mode")
    return [ComplexWord(re=int(re), im=int(im), width=width) for re, im in out[0]]


def pack_complex(netlist: Netlist, samples: np.ndarray) -> np.ndarray:
    """Input rows for ``x{n}_re_*`` / ``x{n}_im_*`` from ``(vectors, points, 2)``."""
    values = {}
    for n in range(samples.shape[1]):
        values[f"x{n}_re_"] = samples[:, n, 0]
        values[f"x{n}_im_"] = samples[:, n, 1]
    return pack_buses(netlist, values)


def read_complex(netlist: Netlist, rows: np.ndarray, points: int) -> np.ndarray:
    return np.stack(
        [
            np.stack(
                [read_bus(netlist, rows, f"X{k}_re_"), read_bus(netlist, rows, f"X{k}_im_")], -1
            )
            for k in range(points)
        ],
        axis=1,
    )
