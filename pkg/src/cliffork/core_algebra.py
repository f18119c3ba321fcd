"""Exact multivector arithmetic for real and complex Clifford algebras.

Everything runs on Gaussian rationals (pairs of fractions.Fraction), so all
comparisons downstream are exact equalities. Blades are encoded as bitmasks
over the generators e1..en; generator i squares to +1 for i <= p and to -1
for i > p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple


# ---------------------------------------------------------------------------
# scalars


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact fraction from {type(x).__name__}")


@dataclass(frozen=True)
class GaussianScalar:
    """Exact complex rational a + b*i with Fraction components."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "GaussianScalar":
        if isinstance(x, GaussianScalar):
            return x
        return GaussianScalar(_as_fraction(x))

    def __add__(self, other) -> "GaussianScalar":
        o = GaussianScalar.of(other)
        return GaussianScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianScalar":
        o = GaussianScalar.of(other)
        return GaussianScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "GaussianScalar":
        return GaussianScalar.of(other) - self

    def __neg__(self) -> "GaussianScalar":
        return GaussianScalar(-self.re, -self.im)

    def __mul__(self, other) -> "GaussianScalar":
        o = GaussianScalar.of(other)
        if not self or not o:
            return _GS_ZERO
        return GaussianScalar(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianScalar":
        d = self.re * self.re + self.im * self.im
        if d == 0:
            raise ZeroDivisionError("inverse of zero Gaussian scalar")
        return GaussianScalar(self.re / d, -self.im / d)

    def __truediv__(self, other) -> "GaussianScalar":
        return self * GaussianScalar.of(other).inverse()

    def conjugate(self) -> "GaussianScalar":
        return GaussianScalar(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def is_imaginary(self) -> bool:
        """Purely imaginary (zero counts as neither real-only nor imaginary-only)."""
        return self.re == 0 and self.im != 0

    def __str__(self) -> str:
        return format_gaussian(self)

    def __repr__(self) -> str:
        return f"GaussianScalar({format_gaussian(self)!r})"


_GS_ZERO = GaussianScalar()
_GS_ONE = GaussianScalar(Fraction(1))
_GS_I = GaussianScalar(Fraction(0), Fraction(1))

GaussianScalar.ZERO = _GS_ZERO
GaussianScalar.ONE = _GS_ONE
GaussianScalar.I = _GS_I


def format_gaussian(z: GaussianScalar) -> str:
    """Canonical text form, e.g. '0', '3/2', '-i', '1/2+3i', '1/2-3/4i'."""
    if not z:
        return "0"
    if z.im == 0:
        return str(z.re)
    if z.im == 1:
        imtxt = "i"
    elif z.im == -1:
        imtxt = "-i"
    else:
        imtxt = f"{z.im}i"
    if z.re == 0:
        return imtxt
    sign = "+" if z.im > 0 else ""
    return f"{z.re}{sign}{imtxt}"


def parse_gaussian(text: str) -> GaussianScalar:
    """Inverse of format_gaussian. Accepts '2', '-1/3', 'i', '2-i', '1/2+3/4i'."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar text")
    if s == "i":
        return _GS_I
    if s == "-i":
        return -_GS_I
    if s.endswith("i"):
        body = s[:-1]
        # split off a real part if one precedes the imaginary term
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "+-/":
                re_part, im_part = body[:k], body[k:]
                if im_part in ("+", "-"):
                    im_part += "1"
                return GaussianScalar(Fraction(re_part), Fraction(im_part))
        if body in ("", "+"):
            body = "1"
        elif body == "-":
            body = "-1"
        return GaussianScalar(Fraction(0), Fraction(body))
    return GaussianScalar(Fraction(s))


# ---------------------------------------------------------------------------
# signatures


@dataclass(frozen=True)
class SignatureSpec:
    """Metric signature (p, q): p generators square to +1, q to -1.

    field is "R" for the real algebra Cl(p,q) and "C" when the same blade
    arithmetic is read inside the complexified algebra (the complex algebra
    of dimension n marked with real form (p,q); the unmarked complex algebra
    is (n, 0, "C")).
    """

    p: int
    q: int
    field: str = "R"

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError(f"signature ({self.p},{self.q}) has a negative count")
        if self.field not in ("R", "C"):
            raise ValueError(f"field must be 'R' or 'C', got {self.field!r}")

    @property
    def n(self) -> int:
        return self.p + self.q

    def metric(self, i: int) -> int:
        """Square of generator e_i, 1-based."""
        if not 1 <= i <= self.n:
            raise ValueError(f"generator index {i} outside 1..{self.n}")
        return 1 if i <= self.p else -1

    def type_index(self) -> int:
        return (self.p - self.q) % 8

    def __str__(self) -> str:
        base = f"Cl({self.p},{self.q})"
        return base if self.field == "R" else f"C({self.n}|{self.p},{self.q})"


# ---------------------------------------------------------------------------
# blades


def _reorder_sign(a: int, b: int) -> int:
    # counts pairs i in a, j in b with i > j; parity gives the sorting sign
    a >>= 1
    total = 0
    while a:
        total += (a & b).bit_count()
        a >>= 1
    return -1 if total & 1 else 1


def blade_product(sig: SignatureSpec, a: int, b: int) -> Tuple[int, int]:
    """Geometric product of basis blades (bitmasks). Returns (mask, sign)."""
    sign = _reorder_sign(a, b)
    common = a & b
    while common:
        low = common & -common
        if low.bit_length() > sig.p:  # generator index = bit_length, 1-based
            sign = -sign
        common ^= low
    return a ^ b, sign


def blade_indices(mask: int) -> Tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def blade_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError("generator indices are 1-based")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated generator index {i}")
        mask |= bit
    return mask


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    idx = blade_indices(mask)
    if idx[-1] <= 9:
        return "e" + "".join(str(i) for i in idx)
    return "e{" + ",".join(str(i) for i in idx) + "}"


# per-blade signs of the three linear (anti)automorphisms
def involution_sign(grade: int) -> int:
    return -1 if grade & 1 else 1


def reversion_sign(grade: int) -> int:
    return -1 if (grade * (grade - 1) // 2) & 1 else 1


def conjugation_sign(grade: int) -> int:
    return -1 if (grade * (grade + 1) // 2) & 1 else 1


# ---------------------------------------------------------------------------
# multivectors


class MultiVector:
    """Element of Cl(p,q) (or its complexification) with exact coefficients."""

    __slots__ = ("sig", "_c")

    def __init__(self, sig: SignatureSpec, coeffs: Optional[Dict[int, GaussianScalar]] = None):
        self.sig = sig
        clean: Dict[int, GaussianScalar] = {}
        if coeffs:
            limit = 1 << sig.n
            for mask, c in coeffs.items():
                if not 0 <= mask < limit:
                    raise ValueError(f"blade mask {mask} outside algebra of dimension {sig.n}")
                c = GaussianScalar.of(c)
                if c:
                    clean[mask] = c
        self._c = clean

    # construction helpers

    @classmethod
    def zero(cls, sig: SignatureSpec) -> "MultiVector":
        return cls(sig)

    @classmethod
    def scalar(cls, sig: SignatureSpec, value) -> "MultiVector":
        return cls(sig, {0: GaussianScalar.of(value)})

    @classmethod
    def unit(cls, sig: SignatureSpec, i: int) -> "MultiVector":
        sig.metric(i)  # bounds check
        return cls(sig, {1 << (i - 1): _GS_ONE})

    @classmethod
    def blade(cls, sig: SignatureSpec, indices: Iterable[int], coeff=1) -> "MultiVector":
        return cls(sig, {blade_mask(indices): GaussianScalar.of(coeff)})

    @classmethod
    def from_mask(cls, sig: SignatureSpec, mask: int, coeff=1) -> "MultiVector":
        return cls(sig, {mask: GaussianScalar.of(coeff)})

    # inspection

    def coeff(self, mask: int) -> GaussianScalar:
        return self._c.get(mask, _GS_ZERO)

    def items(self):
        return self._c.items()

    def grades(self) -> List[int]:
        return sorted({m.bit_count() for m in self._c})

    def grade_projection(self, k: int) -> "MultiVector":
        return MultiVector(self.sig, {m: c for m, c in self._c.items() if m.bit_count() == k})

    def is_zero(self) -> bool:
        return not self._c

    def is_scalar(self) -> bool:
        return not self._c or set(self._c) == {0}

    def scalar_part(self) -> GaussianScalar:
        return self.coeff(0)

    # ring operations

    def _check_sig(self, other: "MultiVector"):
        if self.sig != other.sig:
            raise ValueError(f"signature mismatch: {self.sig} vs {other.sig}")

    def __add__(self, other) -> "MultiVector":
        if not isinstance(other, MultiVector):
            other = MultiVector.scalar(self.sig, other)
        self._check_sig(other)
        out = dict(self._c)
        for m, c in other._c.items():
            s = out.get(m, _GS_ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiVector(self.sig, out)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiVector":
        if not isinstance(other, MultiVector):
            other = MultiVector.scalar(self.sig, other)
        return self + (-other)

    def __rsub__(self, other) -> "MultiVector":
        return (-self) + other

    def __neg__(self) -> "MultiVector":
        return MultiVector(self.sig, {m: -c for m, c in self._c.items()})

    def __mul__(self, other) -> "MultiVector":
        if not isinstance(other, MultiVector):
            c = GaussianScalar.of(other)
            return MultiVector(self.sig, {m: v * c for m, v in self._c.items()})
        self._check_sig(other)
        acc: Dict[int, GaussianScalar] = {}
        for ma, ca in self._c.items():
            for mb, cb in other._c.items():
                mask, sgn = blade_product(self.sig, ma, mb)
                term = ca * cb
                if sgn < 0:
                    term = -term
                s = acc.get(mask, _GS_ZERO) + term
                if s:
                    acc[mask] = s
                else:
                    acc.pop(mask, None)
        return MultiVector(self.sig, acc)

    def __rmul__(self, other) -> "MultiVector":
        # only scalars end up here
        c = GaussianScalar.of(other)
        return MultiVector(self.sig, {m: c * v for m, v in self._c.items()})

    def __pow__(self, k: int) -> "MultiVector":
        if k < 0:
            raise ValueError("negative powers not supported; invert explicitly")
        out = MultiVector.scalar(self.sig, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiVector):
            if isinstance(other, (int, Fraction, GaussianScalar)):
                return self == MultiVector.scalar(self.sig, other)
            return NotImplemented
        return self.sig == other.sig and self._c == other._c

    def __hash__(self):
        return hash((self.sig, frozenset(self._c.items())))

    # the four involutive coefficient/blade maps

    def grade_involution(self) -> "MultiVector":
        return MultiVector(
            self.sig,
            {m: (c if involution_sign(m.bit_count()) > 0 else -c) for m, c in self._c.items()},
        )

    def reversion(self) -> "MultiVector":
        return MultiVector(
            self.sig,
            {m: (c if reversion_sign(m.bit_count()) > 0 else -c) for m, c in self._c.items()},
        )

    def clifford_conjugation(self) -> "MultiVector":
        return MultiVector(
            self.sig,
            {m: (c if conjugation_sign(m.bit_count()) > 0 else -c) for m, c in self._c.items()},
        )

    def pseudo_conjugation(self, positive_count: Optional[int] = None) -> "MultiVector":
        """Antilinear automorphism: conjugate coefficients, flip the sign of
        every generator that squares to -1 (count taken from the signature
        unless positive_count overrides the split)."""
        p = self.sig.p if positive_count is None else positive_count
        if not 0 <= p <= self.sig.n:
            raise ValueError(f"positive_count {p} outside 0..{self.sig.n}")
        neg_mask = ((1 << self.sig.n) - 1) & ~((1 << p) - 1)
        out = {}
        for m, c in self._c.items():
            c = c.conjugate()
            if (m & neg_mask).bit_count() & 1:
                c = -c
            out[m] = c
        return MultiVector(self.sig, out)

    def complex_conjugation(self) -> "MultiVector":
        """Coefficient-wise conjugation, blades untouched."""
        return MultiVector(self.sig, {m: c.conjugate() for m, c in self._c.items()})

    def involution_by_omega(self) -> "MultiVector":
        """omega * x * omega^(-1). Agrees with grade_involution; only inner
        for even n, so odd n is rejected."""
        if self.sig.n % 2:
            raise ValueError(
                f"involution by the volume element needs even n, got n={self.sig.n}"
            )
        omega = volume_element(self.sig)
        s = volume_square_sign(self.sig.p, self.sig.q)
        inv = omega * s  # omega^(-1) = omega / omega^2
        return omega * self * inv

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for m in sorted(self._c, key=lambda m: (m.bit_count(), blade_indices(m))):
            c = self._c[m]
            ctext = format_gaussian(c)
            if m == 0:
                parts.append(ctext)
            elif ctext == "1":
                parts.append(blade_name(m))
            elif ctext == "-1":
                parts.append("-" + blade_name(m))
            else:
                if ("+" in ctext[1:]) or ("-" in ctext[1:]):
                    ctext = "(" + ctext + ")"
                parts.append(f"{ctext}*{blade_name(m)}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"<{self.sig} | {self}>"


# ---------------------------------------------------------------------------
# volume element and center


def volume_element(sig: SignatureSpec) -> MultiVector:
    return MultiVector.from_mask(sig, (1 << sig.n) - 1)


def volume_square_sign(p: int, q: int) -> int:
    """Sign of omega^2 in Cl(p,q): +1 iff p-q = 0,1 (mod 4)."""
    return 1 if (p - q) % 4 in (0, 1) else -1


def volume_square(sig: SignatureSpec) -> GaussianScalar:
    omega = volume_element(sig)
    sq = omega * omega
    if not sq.is_scalar():
        raise AssertionError("volume element squared to a non-scalar")
    return sq.scalar_part()


def center_basis(sig: SignatureSpec) -> List[MultiVector]:
    """Basis of the center: {1} for even n, {1, omega} for odd n."""
    out = [MultiVector.scalar(sig, 1)]
    if sig.n % 2 == 1:
        out.append(volume_element(sig))
    return out
