"""Exact arithmetic for a positive irrational algebraic alpha.

Floors [alpha*n] and scaled floors [alpha*h*n/m] are computed exactly, never
through bare floating point.  Two representations are supported:

* quadratic -- (a + b*sqrt(D))/c with integer a, b, c and non-square D > 0.
  Floors reduce to one integer square root: b*w*sqrt(D) is irrational for
  w >= 1, so floor(b*w*sqrt(D)) = isqrt(b^2 w^2 D) (sign-adjusted) and no
  integer can sit strictly between a*w + floor(b*w*sqrt(D)) and the true
  value; hence floor((a*w + b*w*sqrt(D))/(c*m)) = (a*w + floor(b*w*sqrt(D))) // (c*m).

* poly_root -- the unique root of an integer polynomial inside a rational
  isolating interval, refined by exact bisection.  The interval is cached on
  the instance and only ever shrinks; refinement is idempotent, so instances
  are safe to share across threads.

Fractional parts are exposed only as floating approximations for exponential
sum evaluation; counting decisions always go through the exact floors.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (
    AlphaParseError,
    InvalidRangeError,
    NonPositiveAlphaError,
    NotIrrationalError,
    PrecisionExhaustedError,
)

#: Refinement starts here and doubles per round.
_START_BITS = 128

#: Hard cap on working precision; hitting it means the representation is broken.
_MAX_BITS = 1 << 20

#: Scale used for bulk fractional parts (mod-1 error per term below 1e-14).
_FRAC_BITS = 96

_ONE_BELOW_ONE = math.nextafter(1.0, 0.0)


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _floor_mul_sqrt(y: int, D: int) -> int:
    """floor(y * sqrt(D)) for integer y (any sign), D > 0 non-square."""
    if y == 0:
        return 0
    s = math.isqrt(y * y * D)
    # y*sqrt(D) is irrational, so s < |y|*sqrt(D) < s+1 strictly
    return s if y > 0 else -s - 1


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return out


class AlgebraicAlpha:
    """A positive irrational algebraic number with exact floor operations.

    Build instances through sqrt / quadratic / poly_root or parse_alpha.
    """

    def __init__(self):
        raise TypeError("use AlgebraicAlpha.sqrt, .quadratic, .poly_root or parse_alpha")

    # ---- constructors ----

    @classmethod
    def sqrt(cls, D: int) -> "AlgebraicAlpha":
        return cls.quadratic(0, 1, 1, D, spec=f"sqrt:{D}")

    @classmethod
    def quadratic(cls, a: int, b: int, c: int, D: int,
                  spec: Optional[str] = None) -> "AlgebraicAlpha":
        """(a + b*sqrt(D))/c, validated irrational and positive."""
        if c == 0:
            raise AlphaParseError("quadratic denominator c must be nonzero")
        if c < 0:
            a, b, c = -a, -b, -c
        if D <= 0:
            raise AlphaParseError(f"need D > 0, got D={D}")
        if b == 0 or _is_square(D):
            raise NotIrrationalError(f"(({a})+({b})*sqrt({D}))/{c} is rational")
        if b > 0:
            positive = a >= 0 or a * a < b * b * D
        else:
            positive = a > 0 and a * a > b * b * D
        if not positive:
            raise NonPositiveAlphaError("alpha must be positive")
        self = object.__new__(cls)
        self.kind = "quadratic"
        self.spec = spec if spec is not None else f"quad:{a},{b},{c},{D}"
        self._a, self._b, self._c, self._D = a, b, c, D
        self._scaled_floors = {}
        return self

    @classmethod
    def poly_root(cls, coeffs: Sequence[int], lo, hi,
                  spec: Optional[str] = None) -> "AlgebraicAlpha":
        """The unique root of Sum c_i x^i inside the rational interval (lo, hi).

        Validation is rational-root exclusion plus a strict sign change;
        irreducibility for degree >= 3 is the caller's responsibility.
        """
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 3:
            raise NotIrrationalError("polynomial degree must be >= 2")
        lo = Fraction(lo)
        hi = Fraction(hi)
        if not lo < hi:
            raise AlphaParseError(f"isolating interval needs lo < hi, got ({lo}, {hi})")
        slo = cls._poly_sign_static(coeffs, lo)
        shi = cls._poly_sign_static(coeffs, hi)
        if slo == 0 or shi == 0 or slo == shi:
            raise AlphaParseError("polynomial must change sign strictly across (lo, hi)")
        cls._reject_rational_roots(coeffs, lo, hi)
        self = object.__new__(cls)
        self.kind = "poly_root"
        if spec is None:
            cs = ",".join(str(c) for c in coeffs)
            spec = (f"poly:{cs}@{lo.numerator}/{lo.denominator},"
                    f"{hi.numerator}/{hi.denominator}")
        self.spec = spec
        self._coeffs = tuple(coeffs)
        self._lo, self._hi = lo, hi
        self._sign_lo = slo
        self._bits = 0
        self._scaled_floors = {}
        while self._lo < 0:
            if self._hi <= 0:
                raise NonPositiveAlphaError("alpha must be positive")
            self._bisect_once()
        return self

    @staticmethod
    def _reject_rational_roots(coeffs, lo: Fraction, hi: Fraction) -> None:
        c0, ck = coeffs[0], coeffs[-1]
        if c0 == 0:
            if lo < 0 < hi:
                raise NotIrrationalError("0 is a rational root inside the interval")
            return
        for p in _divisors(c0):
            for q in _divisors(ck):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if lo < cand < hi and AlgebraicAlpha._poly_sign_static(coeffs, cand) == 0:
                        raise NotIrrationalError(f"rational root {cand} inside the interval")

    # ---- poly_root internals ----

    @staticmethod
    def _poly_sign_static(coeffs, x: Fraction) -> int:
        # sign of f(p/q) via the integer Sum c_i p^i q^(k-i)
        p, q = x.numerator, x.denominator
        k = len(coeffs) - 1
        acc = 0
        qpow = 1
        for i in range(k, -1, -1):
            acc = acc * p + coeffs[i] * qpow
            if i:
                qpow *= q
        return (acc > 0) - (acc < 0)

    def _bisect_once(self) -> None:
        if self._bits > _MAX_BITS:
            raise PrecisionExhaustedError(
                f"refinement of {self.spec} exceeded {_MAX_BITS} bits"
            )
        mid = (self._lo + self._hi) / 2
        # mid cannot be a root: rational roots in the interval were excluded
        if self._poly_sign_static(self._coeffs, mid) == self._sign_lo:
            self._lo = mid
        else:
            self._hi = mid
        self._bits += 1

    def _refine_below(self, width: Fraction) -> None:
        while self._hi - self._lo >= width:
            self._bisect_once()

    # ---- exact floors ----

    def floor_times(self, n: int) -> int:
        """[alpha * n] exactly, n >= 0."""
        return self.floor_scaled(1, n, 1)

    def floor_scaled(self, h: int, n: int, m: int) -> int:
        """[alpha * h * n / m] exactly; h >= 1, n >= 0, m >= 1."""
        if h < 1 or m < 1 or n < 0:
            raise InvalidRangeError(
                f"need h >= 1, m >= 1, n >= 0; got h={h}, n={n}, m={m}"
            )
        w = h * n
        if w == 0:
            return 0
        if self.kind == "quadratic":
            return (self._a * w + _floor_mul_sqrt(self._b * w, self._D)) // (self._c * m)
        bits = _START_BITS
        while True:
            flo = (self._lo.numerator * w) // (self._lo.denominator * m)
            fhi = (self._hi.numerator * w) // (self._hi.denominator * m)
            if flo == fhi:
                return flo
            self._refine_below(Fraction(1, 1 << bits))
            bits *= 2

    def frac_in_window(self, n: int, m: int, q: int) -> bool:
        """Exact test of q/m < {alpha*n/m} < (q+1)/m.

        With F = [alpha*n/m] the window condition says alpha*n lies in
        (m*F + q, m*F + q + 1), i.e. [alpha*n] == m*F + q.  Both floors are
        computed independently, which is what makes the congruence
        cross-check in the tests meaningful.
        """
        if m < 1 or n < 1:
            raise InvalidRangeError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
        if not 0 <= q <= m - 1:
            raise InvalidRangeError(f"need 0 <= q <= m-1, got q={q}")
        return self.floor_times(n) == m * self.floor_scaled(1, n, m) + q

    # ---- approximations (exponential sums only; never counting decisions) ----

    def scaled_floor_bits(self, bits: int) -> int:
        """floor(alpha * 2**bits), cached; alpha lies within 2**-bits above it."""
        cached = self._scaled_floors.get(bits)
        if cached is not None:
            return cached
        if self.kind == "quadratic":
            val = (self._a * (1 << bits)
                   + _floor_mul_sqrt(self._b << bits, self._D)) // self._c
        else:
            shift = 1 << bits
            extra = 8
            while True:
                flo = (self._lo.numerator * shift) // self._lo.denominator
                fhi = (self._hi.numerator * shift) // self._hi.denominator
                if flo == fhi:
                    val = flo
                    break
                self._refine_below(Fraction(1, shift << extra))
                extra *= 2
        self._scaled_floors[bits] = val
        return val

    def frac_part_approx(self, h: int, n: int, m: int, eps: float = 1e-12) -> float:
        """A float x in [0, 1) with |x - {alpha*h*n/m}| < eps.

        Anchored on the exact floor, so the bound holds even when the true
        fractional part sits next to 0 or 1.
        """
        if h < 1 or n < 1 or m < 1:
            raise InvalidRangeError(f"need h, n, m >= 1, got h={h}, n={n}, m={m}")
        if not eps > 0:
            raise InvalidRangeError("eps must be positive")
        w = h * n
        bits = max(_FRAC_BITS,
                   (w // m).bit_length() + max(8, math.ceil(-math.log2(eps))) + 8)
        A = self.scaled_floor_bits(bits)
        F = self.floor_scaled(h, n, m)
        num = A * w - F * (m << bits)
        x = num / (m << bits)
        return min(max(x, 0.0), _ONE_BELOW_ONE)

    def frac_parts(self, h: int, ns, m: int) -> np.ndarray:
        """{alpha*h*n/m} for each n in ns, float64, mod-1 error below 1e-14.

        Values within ~2**-50 of an integer may wrap to the other end of
        [0, 1); the exponential e(2*pi*i*x) is unaffected, which is the only
        consumer of this bulk path.
        """
        if h < 1 or m < 1:
            raise InvalidRangeError(f"need h >= 1 and m >= 1, got h={h}, m={m}")
        A = self.scaled_floor_bits(_FRAC_BITS) * h
        den = m << _FRAC_BITS
        out = np.empty(len(ns), dtype=np.float64)
        for i, n in enumerate(ns):
            out[i] = (A * int(n)) % den / den
        return out

    # ---- conversions ----

    def to_float(self) -> float:
        """Double-precision approximation (diagnostics and bound checks only)."""
        if self.kind == "quadratic":
            return (self._a + self._b * math.sqrt(self._D)) / self._c
        self._refine_below(Fraction(1, 1 << 64))
        mid = (self._lo + self._hi) / 2
        return mid.numerator / mid.denominator

    def floors_bulk(self, ns) -> np.ndarray:
        """[alpha * n] for an array of n >= 0; exact despite the float fast path.

        Float candidates are kept only when the computed point is safely away
        from an integer boundary; the rare suspects fall back to the exact
        per-element floor.
        """
        ns = np.asarray(ns, dtype=np.int64)
        vf = self.to_float()
        r = ns * vf
        floors = np.floor(r).astype(np.int64)
        fr = r - floors
        margin = 256.0 * np.spacing(r) + 1e-15
        suspects = np.nonzero((fr < margin) | (fr > 1.0 - margin))[0]
        for i in suspects.tolist():
            floors[i] = self.floor_times(int(ns[i]))
        return floors

    def __repr__(self) -> str:
        return f"AlgebraicAlpha({self.spec!r})"


def _parse_int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise AlphaParseError(f"bad integer {token!r} in {what}") from None


def _parse_fraction(token: str) -> Fraction:
    if "/" in token:
        num, den = token.split("/", 1)
        d = _parse_int(den, "fraction")
        if d <= 0:
            raise AlphaParseError(f"fraction denominator must be positive in {token!r}")
        return Fraction(_parse_int(num, "fraction"), d)
    return Fraction(_parse_int(token, "fraction"))


def parse_alpha(spec: str) -> AlgebraicAlpha:
    """Parse an alpha spec string.

    Grammar:
        sqrt:<D>
        quad:<a>,<b>,<c>,<D>              meaning (a + b*sqrt(D))/c
        poly:<c0>,...,<ck>@<lo>,<hi>      root of Sum c_i x^i in (lo, hi);
                                          lo and hi are rationals like 7/5
    """
    spec = spec.strip()
    if ":" not in spec:
        raise AlphaParseError(f"alpha spec {spec!r} lacks a 'kind:' prefix")
    kind, _, body = spec.partition(":")
    if kind == "sqrt":
        D = _parse_int(body, "sqrt spec")
        if D <= 0:
            raise NonPositiveAlphaError(f"sqrt:{D} is not positive")
        if _is_square(D):
            raise NotIrrationalError(f"sqrt:{D} is rational")
        return AlgebraicAlpha.sqrt(D)
    if kind == "quad":
        parts = body.split(",")
        if len(parts) != 4:
            raise AlphaParseError("quad spec needs exactly a,b,c,D")
        a, b, c, D = (_parse_int(t, "quad spec") for t in parts)
        return AlgebraicAlpha.quadratic(a, b, c, D, spec=spec)
    if kind == "poly":
        if "@" not in body:
            raise AlphaParseError("poly spec needs '@lo,hi' interval suffix")
        coeff_part, _, iv_part = body.partition("@")
        coeffs = [_parse_int(t, "poly coefficients") for t in coeff_part.split(",")]
        iv_tokens = iv_part.split(",")
        if len(iv_tokens) != 2:
            raise AlphaParseError("poly interval needs exactly lo,hi")
        lo = _parse_fraction(iv_tokens[0])
        hi = _parse_fraction(iv_tokens[1])
        return AlgebraicAlpha.poly_root(coeffs, lo, hi, spec=spec)
    raise AlphaParseError(f"unknown alpha kind {kind!r}")
