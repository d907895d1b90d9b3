"""
Number-theoretic transform over word-size primes, used for quasi-linear
multiplication of large integers.

Operands are split into base-2^16 digits; the cyclic convolution of the
digit arrays is computed modulo two NTT-friendly primes and recombined by
the Chinese remainder theorem. Both primes are below 2^31, so every
butterfly product fits in int64 and the whole transform vectorizes with
numpy.

Transform lengths are powers of two up to 2^26 (limited by the 2-adic
valuation of P2 - 1). With 16-bit digits the largest convolution
coefficient for a length-L transform is below L * 2^32 <= 2^58, well under
P1 * P2 ~ 2^61.66, so the CRT reconstruction is exact.
"""

import threading

import numpy as np

# p = c * 2^v + 1, primitive root g (verified in the test suite)
P1, G1 = 2013265921, 31   # 15 * 2^27 + 1
P2, G2 = 1811939329, 13   # 27 * 2^26 + 1

MAX_TRANSFORM = 1 << 26

_INV_P1_MOD_P2 = pow(P1, P2 - 2, P2)

DIGIT_BITS = 16
_DIGIT_MASK = (1 << DIGIT_BITS) - 1


class NTTCapacityError(OverflowError):
    """Operands need a transform longer than the moduli support."""


def transform_length(total_digits: int) -> int:
    """Smallest usable power-of-two transform length for a product whose
    digit count is `total_digits`. Raises NTTCapacityError beyond the
    supported range instead of ever wrapping around."""
    length = 1 << max(1, total_digits - 1).bit_length()
    if length > MAX_TRANSFORM:
        raise NTTCapacityError(
            f"product of {total_digits} base-2^{DIGIT_BITS} digits exceeds "
            f"the {MAX_TRANSFORM}-point transform capacity"
        )
    return length


# Root power tables, cached per (prime, length, direction).
_table_lock = threading.Lock()
_tables: dict = {}


def _root_powers(p: int, g: int, length: int, inverse: bool) -> np.ndarray:
    key = (p, length, inverse)
    table = _tables.get(key)
    if table is not None:
        return table
    with _table_lock:
        table = _tables.get(key)
        if table is not None:
            return table
        w = pow(g, (p - 1) // length, p)
        if inverse:
            w = pow(w, p - 2, p)
        n = length // 2
        powers = np.ones(max(n, 1), dtype=np.int64)
        if n > 1:
            powers[1] = w
            filled = 2
            while filled < n:
                m = min(filled, n - filled)
                powers[filled:filled + m] = (
                    powers[:m] * pow(w, filled, p)) % p
                filled += m
        _tables[key] = powers
        return powers


def _forward(a: np.ndarray, p: int, g: int) -> None:
    """In-place decimation-in-frequency transform; natural input,
    bit-reversed output. Output order does not matter because the inverse
    transform consumes it directly."""
    n = len(a)
    roots = _root_powers(p, g, n, inverse=False)
    m = n
    while m >= 2:
        half = m // 2
        w = roots[:: n // m][:half]
        blocks = a.reshape(-1, m)
        left = blocks[:, :half]
        right = blocks[:, half:]
        t = left - right
        left += right
        left %= p
        t *= w
        t %= p
        blocks[:, half:] = t
        m = half


def _inverse(a: np.ndarray, p: int, g: int) -> np.ndarray:
    """In-place decimation-in-time inverse; consumes bit-reversed input,
    returns natural order scaled by 1/n mod p."""
    n = len(a)
    roots = _root_powers(p, g, n, inverse=True)
    m = 2
    while m <= n:
        half = m // 2
        w = roots[:: n // m][:half]
        blocks = a.reshape(-1, m)
        t = blocks[:, half:] * w
        t %= p
        u = blocks[:, :half]
        blocks[:, half:] = (u - t) % p
        u += t
        u %= p
        m *= 2
    a *= pow(n, p - 2, p)
    a %= p
    return a


def _digits_of(x: int) -> np.ndarray:
    nbytes = ((x.bit_length() + DIGIT_BITS - 1) // DIGIT_BITS) * 2
    raw = x.to_bytes(nbytes, "little")
    return np.frombuffer(raw, dtype="<u2").astype(np.int64)


def _assemble(values: np.ndarray) -> int:
    """Sum of values[i] * 2^(16 i) for int64 entries below 2^32."""
    lo = (values & _DIGIT_MASK).astype("<u2").tobytes()
    hi = (values >> DIGIT_BITS).astype("<u2").tobytes()
    return int.from_bytes(lo, "little") + (int.from_bytes(hi, "little") << DIGIT_BITS)


def ntt_mul(x: int, y: int) -> int:
    """Exact product of two nonnegative integers by NTT convolution."""
    if x == 0 or y == 0:
        return 0
    square = x is y or x == y
    xd = _digits_of(x)
    yd = xd if square else _digits_of(y)
    length = transform_length(len(xd) + len(yd))

    residues = []
    for p, g in ((P1, G1), (P2, G2)):
        fx = np.zeros(length, dtype=np.int64)
        fx[: len(xd)] = xd
        _forward(fx, p, g)
        if square:
            fx *= fx
        else:
            fy = np.zeros(length, dtype=np.int64)
            fy[: len(yd)] = yd
            _forward(fy, p, g)
            fx *= fy
        fx %= p
        residues.append(_inverse(fx, p, g))

    r1, r2 = residues
    # Garner: coefficient = r1 + P1 * ((r2 - r1) / P1 mod P2)
    t = ((r2 - r1) % P2) * _INV_P1_MOD_P2 % P2
    return _assemble(r1) + P1 * _assemble(t)
