"""
Arbitrary-precision integer and fixed-point arithmetic with selectable
multiplication algorithms.

Integers are stored as Python ints and viewed as little-endian arrays of
32-bit limbs; the three multiplication routines (schoolbook, Karatsuba,
NTT) operate on that limb structure and must return identical results.
Schoolbook accumulates one limb-scalar row at a time, so it is
quadratic in the limb count; Karatsuba recurses down to schoolbook below
a size threshold; the NTT route is in `ntt.py`.

Division and square root are Newton iterations with precision doubling,
reduced entirely to multiplication so that the multiplication policy
controls the cost of every derived operation. Both finish with an exact
correction step: reciprocals and quotients are true floor values and
square roots are true integer square roots.

Real values are fixed point: a signed mantissa at a single global binary
scale fixed by the active PrecisionContext. Rounding is truncation
toward zero everywhere; the context's guard bits absorb the accumulated
error.
"""

import math
import re
import threading
from dataclasses import dataclass

from .ntt import NTTCapacityError, ntt_mul, transform_length

LIMB_BITS = 32
LIMB_MASK = (1 << LIMB_BITS) - 1

# Multiplication thresholds in limbs, tuned with the benchmark harness.
KARATSUBA_LIMBS = 32
NTT_LIMBS = 512

POLICIES = ("schoolbook", "karatsuba", "ntt", "auto")

# Below this bit size, plain int division / math.isqrt are used directly;
# CPython stays in its basecase routines there, so no policy is violated.
_SMALL_NEWTON_BITS = 2048

_LOG2_10 = math.log2(10)
_LOG10_2 = math.log10(2)


class DomainError(ValueError):
    """Argument outside an operation's domain."""


class ConvergenceError(ArithmeticError):
    """An iteration failed to converge; indicates an internal bug."""


def bits_for_digits(digits: int) -> int:
    return math.ceil(digits * _LOG2_10)


# ---------------------------------------------------------------------------
# multiplication policies
# ---------------------------------------------------------------------------

def _limb_view(x: int):
    nbytes = ((x.bit_length() + LIMB_BITS - 1) // LIMB_BITS) * 4
    return memoryview(x.to_bytes(nbytes, "little")).cast("I")


def _mul_schoolbook(x: int, y: int) -> int:
    """Operand-scanning schoolbook product: one limb-scalar row per limb
    of the smaller factor."""
    if x == 0 or y == 0:
        return 0
    if x.bit_length() < y.bit_length():
        x, y = y, x
    acc = 0
    shift = 0
    for limb in _limb_view(y):
        if limb:
            acc += (x * limb) << shift
        shift += LIMB_BITS
    return acc


def _mul_karatsuba(x: int, y: int) -> int:
    if min(x.bit_length(), y.bit_length()) <= KARATSUBA_LIMBS * LIMB_BITS:
        return _mul_schoolbook(x, y)
    # split at half the larger operand, on a limb boundary
    h = (max(x.bit_length(), y.bit_length()) // (2 * LIMB_BITS)) * LIMB_BITS
    mask = (1 << h) - 1
    x0, x1 = x & mask, x >> h
    y0, y1 = y & mask, y >> h
    z0 = _mul_karatsuba(x0, y0)
    z2 = _mul_karatsuba(x1, y1)
    z1 = _mul_karatsuba(x0 + x1, y0 + y1) - z0 - z2
    return z0 + (z1 << h) + (z2 << (2 * h))


def _ntt_capacity_ok(x: int, y: int) -> bool:
    total = (x.bit_length() + y.bit_length()) // 16 + 2
    try:
        transform_length(total)
    except NTTCapacityError:
        return False
    return True


def _mul_auto(x: int, y: int) -> int:
    small = min(x.bit_length(), y.bit_length())
    if small <= KARATSUBA_LIMBS * LIMB_BITS:
        return _mul_schoolbook(x, y)
    if small >= NTT_LIMBS * LIMB_BITS and _ntt_capacity_ok(x, y):
        return ntt_mul(x, y)
    return _mul_karatsuba(x, y)


_MUL_FUNCS = {
    "schoolbook": _mul_schoolbook,
    "karatsuba": _mul_karatsuba,
    "ntt": ntt_mul,
    "auto": _mul_auto,
}


def check_policy(policy: str) -> str:
    if policy not in _MUL_FUNCS:
        raise DomainError(f"unknown multiplication policy {policy!r}")
    return policy


def mul_int(x: int, y: int, policy: str = "auto") -> int:
    """Product of two nonnegative integers under the given policy."""
    if x < 0 or y < 0:
        raise DomainError("mul_int takes nonnegative operands")
    return _MUL_FUNCS[policy](x, y)


def _imul(x: int, y: int, policy: str) -> int:
    """Signed product routed through the policy multiplier."""
    if x == 0 or y == 0:
        return 0
    sign = -1 if (x < 0) ^ (y < 0) else 1
    ax = -x if x < 0 else x
    ay = ax if y is x else (-y if y < 0 else y)
    p = _MUL_FUNCS[policy](ax, ay)
    return -p if sign < 0 else p


def _isqr(x: int, policy: str) -> int:
    ax = -x if x < 0 else x
    return _MUL_FUNCS[policy](ax, ax)


def _tshift(v: int, s: int) -> int:
    """Shift right truncating toward zero (Python >> floors)."""
    if s <= 0:
        return v << -s
    return v >> s if v >= 0 else -((-v) >> s)


def _tdiv(a: int, b: int) -> int:
    """Quotient truncated toward zero."""
    q = abs(a) // abs(b)
    return -q if (a < 0) ^ (b < 0) else q


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

class Natural:
    """Arbitrary-precision unsigned integer. The canonical limb view is
    little-endian with no trailing zero limb; zero is the empty tuple."""

    __slots__ = ("_value",)

    def __init__(self, value: int = 0):
        value = int(value)
        if value < 0:
            raise DomainError("Natural cannot be negative")
        self._value = value

    @property
    def limbs(self) -> tuple:
        return tuple(_limb_view(self._value))

    def __int__(self):
        return self._value

    __index__ = __int__

    def bit_length(self) -> int:
        return self._value.bit_length()

    def hex(self) -> str:
        return hex(self._value)

    def __eq__(self, other):
        return self._value == int(other)

    def __lt__(self, other):
        return self._value < int(other)

    def __le__(self, other):
        return self._value <= int(other)

    def __hash__(self):
        return hash(self._value)

    def __add__(self, other):
        return Natural(self._value + int(other))

    def __sub__(self, other):
        d = self._value - int(other)
        if d < 0:
            raise DomainError("Natural subtraction underflow")
        return Natural(d)

    def __mul__(self, other):
        return nat_mul(self, Natural(int(other)))

    def __repr__(self):
        return f"Natural({self._value})"


def nat_mul(a: Natural, b: Natural, policy: str = "auto") -> Natural:
    """Exact product; all policies return identical limb sequences."""
    check_policy(policy)
    return Natural(mul_int(int(a), int(b), policy))


class BigInt:
    """Signed integer as sign plus Natural magnitude."""

    __slots__ = ("_sign", "_mag")

    def __init__(self, value: int = 0):
        value = int(value)
        self._sign = (value > 0) - (value < 0)
        self._mag = Natural(abs(value))

    @property
    def sign(self) -> int:
        return self._sign

    @property
    def magnitude(self) -> Natural:
        return self._mag

    def __int__(self):
        return self._sign * int(self._mag)

    __index__ = __int__

    def __eq__(self, other):
        return int(self) == int(other)

    def __hash__(self):
        return hash(int(self))

    def __repr__(self):
        return f"BigInt({int(self)})"


@dataclass(frozen=True)
class PrecisionContext:
    """Requested decimal digits plus the derived binary working precision.

    working_bits is both the fixed-point scale of every FixedReal in the
    computation and the precision target of all Newton iterations;
    guard_bits of it are sacrificial and never reported.
    """

    decimal_digits: int
    working_bits: int
    guard_bits: int
    mul_policy: str = "auto"

    def __post_init__(self):
        check_policy(self.mul_policy)
        if self.decimal_digits < 1:
            raise DomainError("decimal_digits must be positive")
        if self.guard_bits < 32:
            raise DomainError("guard_bits must be at least 32")
        if self.working_bits < bits_for_digits(self.decimal_digits) + self.guard_bits:
            raise DomainError("working_bits too small for requested digits")

    @staticmethod
    def _default_guard(base_bits: int) -> int:
        return 32 + max(base_bits, 1).bit_length()

    @classmethod
    def for_digits(cls, digits: int, mul_policy: str = "auto",
                   guard_bits: int | None = None) -> "PrecisionContext":
        if digits < 1:
            raise DomainError("digits must be positive")
        base = bits_for_digits(digits)
        guard = cls._default_guard(base) if guard_bits is None else guard_bits
        return cls(digits, base + guard, guard, mul_policy)

    @classmethod
    def for_bits(cls, working_bits: int, mul_policy: str = "auto",
                 guard_bits: int | None = None) -> "PrecisionContext":
        guard = cls._default_guard(working_bits) if guard_bits is None else guard_bits
        digits = max(1, math.floor((working_bits - guard) * _LOG10_2))
        return cls(digits, working_bits, guard, mul_policy)

    def with_bits(self, working_bits: int) -> "PrecisionContext":
        return PrecisionContext.for_bits(working_bits, self.mul_policy)

    @property
    def scale(self) -> int:
        return self.working_bits


class FixedReal:
    """Signed fixed-point real: mantissa / 2^scale_bits."""

    __slots__ = ("man", "scale")

    def __init__(self, man: int, scale: int):
        if scale < 0:
            raise DomainError("scale_bits must be nonnegative")
        self.man = man
        self.scale = scale

    @classmethod
    def from_int(cls, v: int, scale: int) -> "FixedReal":
        return cls(v << scale, scale)

    @classmethod
    def from_float(cls, v: float, scale: int) -> "FixedReal":
        m, e = math.frexp(v)
        return cls(_tshift(int(math.ldexp(m, 53)), 53 - e - scale), scale)

    @classmethod
    def from_fraction(cls, num: int, den: int, scale: int) -> "FixedReal":
        if den == 0:
            raise DomainError("zero denominator")
        return cls(_tdiv(num << scale, den), scale)

    @property
    def mantissa(self) -> BigInt:
        return BigInt(self.man)

    @property
    def scale_bits(self) -> int:
        return self.scale

    def to_float(self) -> float:
        m = self.man
        sign = -1.0 if m < 0 else 1.0
        m = abs(m)
        sh = max(0, m.bit_length() - 64)
        return sign * math.ldexp(m >> sh, sh - self.scale)

    def is_zero(self) -> bool:
        return self.man == 0

    def mul_pow2(self, k: int) -> "FixedReal":
        return FixedReal(_tshift(self.man, -k), self.scale)

    def hex_mantissa(self) -> str:
        return ("-" if self.man < 0 else "") + hex(abs(self.man))

    def _same_scale(self, other: "FixedReal") -> None:
        if self.scale != other.scale:
            raise DomainError("mixed fixed-point scales in one expression")

    def __add__(self, other):
        self._same_scale(other)
        return FixedReal(self.man + other.man, self.scale)

    def __sub__(self, other):
        self._same_scale(other)
        return FixedReal(self.man - other.man, self.scale)

    def __neg__(self):
        return FixedReal(-self.man, self.scale)

    def __abs__(self):
        return FixedReal(abs(self.man), self.scale)

    def __eq__(self, other):
        self._same_scale(other)
        return self.man == other.man

    def __lt__(self, other):
        self._same_scale(other)
        return self.man < other.man

    def __le__(self, other):
        self._same_scale(other)
        return self.man <= other.man

    def __hash__(self):
        return hash((self.man, self.scale))

    def __repr__(self):
        return f"FixedReal({self.to_float()!r}, scale={self.scale})"


# ---------------------------------------------------------------------------
# Newton-iteration kernels
# ---------------------------------------------------------------------------

def giant_steps(start: int, target: int) -> list:
    """Precision ladder for Newton iteration, ascending to target."""
    steps = [target]
    while steps[-1] > 2 * start:
        steps.append(steps[-1] // 2 + 6)
    return steps[::-1]


def _recip_bits(m: int, fbits: int, policy: str) -> int:
    """Exact floor(2^(mb + fbits) / m) for m > 0, where mb = m.bit_length().

    Newton iteration r <- 2r - m r^2 with precision doubling; operands are
    truncated to the precision of each step, and a final correction pass
    makes the result an exact floor quotient."""
    mb = m.bit_length()
    if fbits <= 48 or mb + fbits <= _SMALL_NEWTON_BITS:
        return (1 << (mb + fbits)) // m

    f0 = 48
    if mb <= 56:
        r = (1 << (mb + f0)) // m
    else:
        top = m >> (mb - 56)
        r = (1 << (56 + f0)) // top  # overestimates by < 2^-54 relative
    f = f0
    for f2 in giant_steps(f0, fbits):
        r <<= f2 - f
        sh = max(0, mb - (f2 + 32))
        m_t = m >> sh
        # r' = 2r - m r^2 / 2^(mb + f2)
        r = (r << 1) - ((_imul(m_t, _isqr(r, policy), policy))
                        >> (mb + f2 - sh))
        f = f2

    e = (1 << (mb + fbits)) - _imul(r, m, policy)
    while e < 0:
        r -= 1
        e += m
    while e >= m:
        r += 1
        e -= m
    return r


def int_divmod(a: int, d: int, policy: str = "auto") -> tuple:
    """Exact (a // d, a % d) for a >= 0, d > 0, via Newton reciprocal."""
    if d <= 0:
        raise DomainError("nonpositive divisor")
    if a < 0:
        raise DomainError("negative dividend")
    if (d.bit_length() <= _SMALL_NEWTON_BITS
            or a.bit_length() <= 2 * _SMALL_NEWTON_BITS or a < d):
        return divmod(a, d)
    f = a.bit_length() - d.bit_length() + 4
    r = _recip_bits(d, f, policy)
    q = _imul(a, r, policy) >> (d.bit_length() + f)
    rem = a - _imul(q, d, policy)
    while rem < 0:
        q -= 1
        rem += d
    while rem >= d:
        q += 1
        rem -= d
    return q, rem


def int_isqrt(m: int, policy: str = "auto") -> int:
    """Exact floor square root via Newton iteration on the reciprocal
    square root (division-free), then sqrt = m * rsqrt, then an exact
    adjustment."""
    if m < 0:
        raise DomainError("negative square root")
    if m.bit_length() <= _SMALL_NEWTON_BITS * 2:
        return math.isqrt(m)

    mb = m.bit_length()
    t = (mb + 1) // 2
    # seed r ~ 2^(t + f0) / sqrt(m) from the leading bits
    f0 = 44
    sh = mb - 50
    sh += sh & 1
    s_top = math.isqrt((m >> sh) << 20)  # ~ sqrt(m) / 2^(sh/2 - 10)
    r = (1 << (t + f0 - sh // 2 + 10)) // s_top
    f = f0
    for f2 in giant_steps(f0, t + 8):
        r <<= f2 - f
        shm = max(0, mb - (f2 + 32))
        m_t = m >> shm
        # g = m r^2 / 2^(2(t + f2)) ~ 1, at scale f2
        g = _imul(m_t, _isqr(r, policy), policy) >> (2 * t + f2 - shm)
        r = _imul(r, (3 << f2) - g, policy) >> (f2 + 1)
        f = f2

    # y = m * r / 2^(t + f) ~ sqrt(m)
    shy = max(0, mb - (t + 40))
    y = _imul(m >> shy, r, policy) >> (t + f - shy)
    e = m - _isqr(y, policy)
    while e < 0:
        y -= 1
        e += 2 * y + 1
    while e >= 2 * y + 1:
        e -= 2 * y + 1
        y += 1
    return y


def _div_scaled(num: int, den: int, scale: int, policy: str) -> int:
    """floor-ish(num * 2^scale / den) for num >= 0, den > 0, within 2 ulp.

    Operands are cut to scale + 64 leading bits first, so the cost depends
    on the requested scale, not on the size of an exact-fraction operand."""
    sh = den.bit_length() - (scale + 64)
    if sh > 0:
        num >>= sh
        den >>= sh
    return int_divmod(num << scale, den, policy)[0]


# ---------------------------------------------------------------------------
# fixed-point operations
# ---------------------------------------------------------------------------

def fx_mul(a: FixedReal, b: FixedReal, ctx: PrecisionContext) -> FixedReal:
    a._same_scale(b)
    return FixedReal(_tshift(_imul(a.man, b.man, ctx.mul_policy), a.scale),
                     a.scale)


def fx_sqr(a: FixedReal, ctx: PrecisionContext) -> FixedReal:
    return FixedReal(_isqr(a.man, ctx.mul_policy) >> a.scale, a.scale)


def fx_mul_small(a: FixedReal, c: int) -> FixedReal:
    """Exact product with a machine-size integer coefficient."""
    return FixedReal(a.man * c, a.scale)


def fx_recip(x: FixedReal, ctx: PrecisionContext) -> FixedReal:
    """Reciprocal at the working scale; the mantissa is the exact floor of
    2^(2 scale) / |x.man|, so the error is below one ulp."""
    if x.man == 0:
        raise DomainError("division by zero")
    s = x.scale
    m = abs(x.man)
    f = 2 * s - m.bit_length()
    if f <= 48:
        r = (1 << (2 * s)) // m
    else:
        r = _recip_bits(m, f, ctx.mul_policy)
    return FixedReal(-r if x.man < 0 else r, s)


def fx_div(a: FixedReal, b: FixedReal, ctx: PrecisionContext) -> FixedReal:
    return fx_mul(a, fx_recip(b, ctx), ctx)


def fx_sqrt(x: FixedReal, ctx: PrecisionContext) -> FixedReal:
    """Exact-floor square root: the mantissa is isqrt(man << scale)."""
    if x.man < 0:
        raise DomainError("square root of a negative value")
    if x.man == 0:
        return FixedReal(0, x.scale)
    return FixedReal(int_isqrt(x.man << x.scale, ctx.mul_policy), x.scale)


# ---------------------------------------------------------------------------
# decimal conversion (divide and conquer in both directions)
# ---------------------------------------------------------------------------

_pow10_lock = threading.Lock()
_pow10_cache: dict = {1: 10}


def pow10(k: int, policy: str = "auto") -> int:
    """10^k via cached binary powering."""
    if k == 0:
        return 1
    p = _pow10_cache.get(k)
    if p is not None:
        return p
    with _pow10_lock:
        p = _pow10_cache.get(k)
        if p is not None:
            return p
        half = k // 2
        p = _imul(pow10(half, policy), pow10(k - half, policy), policy)
        _pow10_cache[k] = p
        return p


_STR_LEAF_BITS = 6800  # ~2047 digits, below CPython's int->str guard


def _dyadic_half(n: int) -> int:
    """Largest power of two not exceeding n // 2 (n >= 2)."""
    return 1 << ((n // 2).bit_length() - 1)


def _int_to_dec(n: int, policy: str) -> str:
    if n.bit_length() <= _STR_LEAF_BITS:
        return str(n)
    dlen = int(n.bit_length() * _LOG10_2)  # underestimate of digit count
    k = _dyadic_half(dlen)
    hi, lo = int_divmod(n, pow10(k, policy), policy)
    return _int_to_dec(hi, policy) + _int_to_dec(lo, policy).zfill(k)


def _dec_to_int(s: str, policy: str) -> int:
    if len(s) <= 2048:
        return int(s)
    k = _dyadic_half(len(s))
    return (_imul(_dec_to_int(s[:-k], policy), pow10(k, policy), policy)
            + _dec_to_int(s[-k:], policy))


def fx_to_decimal(x: FixedReal, digits: int, policy: str = "auto") -> str:
    """Sign, integer part, '.', then exactly `digits` truncated fractional
    digits."""
    if digits < 1:
        raise DomainError("digits must be positive")
    if digits > x.scale * _LOG10_2:
        raise DomainError("digits exceed the fixed-point precision")
    scaled = _imul(abs(x.man), pow10(digits, policy), policy) >> x.scale
    body = _int_to_dec(scaled, policy)
    if len(body) <= digits:
        int_part, frac = "0", body.zfill(digits)
    else:
        int_part, frac = body[:-digits], body[-digits:]
    sign = "-" if (x.man < 0 and scaled > 0) else ""
    return f"{sign}{int_part}.{frac}"


_DECIMAL_RE = re.compile(r"^([+-]?)(\d+)(?:\.(\d+))?$")


def fx_from_decimal(text: str, ctx: PrecisionContext) -> FixedReal:
    """Parse a decimal literal to a FixedReal at the context scale,
    truncating toward zero."""
    m = _DECIMAL_RE.match(text.strip())
    if not m:
        raise DomainError(f"not a decimal literal: {text!r}")
    sign, int_part, frac = m.group(1), m.group(2), m.group(3) or ""
    policy = ctx.mul_policy
    units = _dec_to_int(int_part + frac, policy) if frac else _dec_to_int(int_part, policy)
    man = units << ctx.working_bits
    if frac:
        man = int_divmod(man, pow10(len(frac), policy), policy)[0]
    return FixedReal(-man if sign == "-" else man, ctx.working_bits)
