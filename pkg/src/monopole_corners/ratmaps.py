"""Rational-map coordinates: exact resultants, centring predicates, and the
torus and deck actions.

A degree-k map is a pair of polynomials (phi, psi) with psi monic of degree
k and deg phi <= k-1, held with exact Gaussian-rational coefficients.  The
resultant is the Sylvester determinant of (psi, phi), normalized so that
for monic psi it equals the product of phi over the roots of psi; it is
computed by fraction-free (Bareiss) elimination, so every predicate
(|R| = 1, R = 1) is decided exactly.

Unit scalars that are not Gaussian (general roots of unity, as needed for
the deck action at k not dividing 4) are carried as an exact phase tag on
phi, a rational number of turns; quarter turns are folded into the
coefficients at construction.  A root of unity is a Gaussian rational only
if it is a fourth root, which is what makes the strong-centring test on a
phase-tagged map exactly decidable.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable, Sequence


class GaussianRational:
    """An exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction, str)):
            return cls(Fraction(value))
        if isinstance(value, (tuple, list)) and len(value) == 2:
            return cls(Fraction(value[0]), Fraction(value[1]))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (o.re * self.im - o.im * self.re) / n)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __pow__(self, n: int):
        out = GaussianRational(1)
        base = self
        e = int(n)
        if e < 0:
            base = GaussianRational(1) / base
            e = -e
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, other) -> bool:
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def to_json_pair(self) -> list[str]:
        return [str(self.re), str(self.im)]


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)

_QUARTER_UNITS = {
    Fraction(0): ONE,
    Fraction(1, 4): I_UNIT,
    Fraction(1, 2): -ONE,
    Fraction(3, 4): -I_UNIT,
}


class Phase:
    """The unit complex number exp(2*pi*i*turns) with rational turns."""

    __slots__ = ("turns",)

    def __init__(self, turns):
        object.__setattr__(self, "turns", Fraction(turns) % 1)

    def __setattr__(self, name, value):
        raise AttributeError("Phase is immutable")

    def as_gaussian(self) -> GaussianRational | None:
        """The exact value, when it happens to be a Gaussian rational."""
        return _QUARTER_UNITS.get(self.turns)

    def __eq__(self, other) -> bool:
        return isinstance(other, Phase) and self.turns == other.turns

    def __hash__(self) -> int:
        return hash(("Phase", self.turns))

    def __complex__(self) -> complex:
        return cmath.exp(2j * cmath.pi * float(self.turns))

    def __repr__(self) -> str:
        return f"Phase({self.turns})"


class RationalMapPair:
    """A based rational map of degree k: phi over monic psi.

    `phi_phase` is an exact extra unit factor on phi (in turns); direct
    constructions have phase 0, and quarter turns are always folded into
    the coefficients.
    """

    __slots__ = ("k", "phi", "psi", "phi_phase")

    def __init__(self, phi: Iterable, psi: Iterable, phi_phase=0):
        phi_t = tuple(GaussianRational.coerce(c) for c in phi)
        psi_t = tuple(GaussianRational.coerce(c) for c in psi)
        k = len(psi_t)
        if k < 1:
            raise ValueError("degree must be at least 1")
        if len(phi_t) > k:
            raise ValueError(f"deg phi must be < deg psi = {k}")
        phi_t = phi_t + (ZERO,) * (k - len(phi_t))
        turns = Fraction(phi_phase) % 1
        quarter = Fraction(int(turns * 4), 4)
        unit = _QUARTER_UNITS[quarter]
        if unit != ONE:
            phi_t = tuple(c * unit for c in phi_t)
            turns = (turns - quarter) % 1
        if all(c.is_zero() for c in phi_t):
            turns = Fraction(0)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "phi", phi_t)
        object.__setattr__(self, "psi", psi_t)
        object.__setattr__(self, "phi_phase", turns)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMapPair is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMapPair)
            and (self.k, self.phi, self.psi, self.phi_phase)
            == (other.k, other.phi, other.psi, other.phi_phase)
        )

    def __hash__(self) -> int:
        return hash((self.k, self.phi, self.psi, self.phi_phase))

    def __repr__(self) -> str:
        return f"RationalMapPair(k={self.k}, phi={[str(c) for c in self.phi]}, psi={[str(c) for c in self.psi]}, phase={self.phi_phase})"

    def to_json_dict(self) -> dict:
        out = {
            "k": self.k,
            "phi": [c.to_json_pair() for c in self.phi],
            "psi": [c.to_json_pair() for c in self.psi],
        }
        if self.phi_phase:
            out["phi_phase"] = str(self.phi_phase)
        return out

    @classmethod
    def from_json_dict(cls, d: dict) -> "RationalMapPair":
        return cls(
            [GaussianRational(Fraction(p[0]), Fraction(p[1])) for p in d["phi"]],
            [GaussianRational(Fraction(p[0]), Fraction(p[1])) for p in d["psi"]],
            phi_phase=Fraction(d.get("phi_phase", 0)),
        )


def _det_bareiss(m: list[list[GaussianRational]]) -> GaussianRational:
    """Exact determinant by fraction-free one-step elimination."""
    n = len(m)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for t in range(n - 1):
        if m[t][t].is_zero():
            pivot = next((r for r in range(t + 1, n) if not m[r][t].is_zero()), None)
            if pivot is None:
                return ZERO
            m[t], m[pivot] = m[pivot], m[t]
            sign = -sign
        for r in range(t + 1, n):
            for c in range(t + 1, n):
                m[r][c] = (m[r][c] * m[t][t] - m[r][t] * m[t][c]) / prev
            m[r][t] = ZERO
        prev = m[t][t]
    det = m[-1][-1]
    return det if sign > 0 else -det


def _sylvester(psi: Sequence[GaussianRational], phi: Sequence[GaussianRational]) -> list[list[GaussianRational]]:
    """Sylvester matrix of monic psi (degree k) and phi at formal degree k-1."""
    k = len(psi)
    size = 2 * k - 1
    psi_desc = [ONE] + list(reversed(psi))        # z^k + b_{k-1} z^{k-1} + ...
    phi_desc = list(reversed(phi))                # a_{k-1} z^{k-1} + ...
    rows = []
    for shift in range(k - 1):
        rows.append([ZERO] * shift + psi_desc + [ZERO] * (size - shift - k - 1))
    for shift in range(k):
        rows.append([ZERO] * shift + phi_desc + [ZERO] * (size - shift - k))
    return rows


def _gauss_resultant(m: RationalMapPair) -> GaussianRational:
    return _det_bareiss(_sylvester(m.psi, m.phi))


def resultant(m: RationalMapPair) -> GaussianRational:
    """The resultant of (psi, phi): the product of phi over psi's roots.

    Homogeneous of degree k in phi.  For a phase-tagged map the phase
    enters through its k-th power; if that is not a Gaussian unit the value
    leaves the Gaussian rationals and an error explains how to retrieve the
    two exact factors.
    """
    base = _gauss_resultant(m)
    total = (m.phi_phase * m.k) % 1
    unit = _QUARTER_UNITS.get(total)
    if unit is None:
        raise ValueError(
            f"resultant is exp(2*pi*i*{total}) times {base}; not a Gaussian rational"
        )
    return base * unit


def is_based(m: RationalMapPair) -> bool:
    """No common factor: the resultant does not vanish."""
    return not _gauss_resultant(m).is_zero()


def is_centred(m: RationalMapPair) -> bool:
    """Based, traceless denominator, and unit-modulus resultant."""
    r = _gauss_resultant(m)
    return (not r.is_zero()) and m.psi[m.k - 1].is_zero() and r.abs2() == 1


def is_strongly_centred(m: RationalMapPair) -> bool:
    """Based, traceless denominator, and resultant exactly 1."""
    r = _gauss_resultant(m)
    if r.is_zero() or not m.psi[m.k - 1].is_zero():
        return False
    total = (m.phi_phase * m.k) % 1
    unit = _QUARTER_UNITS.get(total)
    if unit is None:
        # exp(2*pi*i*total) is a root of unity outside the Gaussian
        # rationals, so the product cannot equal 1.
        return False
    return r * unit == ONE


def torus_act(lam, m: RationalMapPair) -> RationalMapPair:
    """Scale phi by a unit scalar: a Gaussian unit or an exact Phase."""
    if isinstance(lam, Phase):
        return RationalMapPair(m.phi, m.psi, phi_phase=m.phi_phase + lam.turns)
    g = GaussianRational.coerce(lam)
    if g.abs2() != 1:
        raise ValueError(f"torus action needs a unit scalar, got |lam|^2 = {g.abs2()}")
    return RationalMapPair([c * g for c in m.phi], m.psi, phi_phase=m.phi_phase)


def deck_transform(m: RationalMapPair, zeta) -> RationalMapPair:
    """Act by a k-th root of unity: phi -> zeta*phi.

    `zeta` is an integer exponent j (meaning exp(2*pi*i*j/k)), an exact
    Phase whose k-th power is 1, or a floating unit complex number within
    1e-9 of such a root.
    """
    k = m.k
    if isinstance(zeta, int):
        turns = Fraction(zeta, k)
    elif isinstance(zeta, Phase):
        if (zeta.turns * k) % 1 != 0:
            raise ValueError(f"{zeta!r} is not a {k}-th root of unity")
        turns = zeta.turns
    elif isinstance(zeta, complex):
        if abs(abs(zeta) - 1.0) > 1e-9:
            raise ValueError(f"|zeta| = {abs(zeta)} is not 1")
        j = round(cmath.phase(zeta) / (2 * math.pi) * k) % k
        if abs(zeta - cmath.exp(2j * cmath.pi * j / k)) > 1e-9:
            raise ValueError(f"{zeta} is not a {k}-th root of unity (tol 1e-9)")
        turns = Fraction(j, k)
    else:
        raise TypeError(f"cannot interpret {zeta!r} as a k-th root of unity")
    return RationalMapPair(m.phi, m.psi, phi_phase=m.phi_phase + turns)


def deck_orbit(m: RationalMapPair) -> list[RationalMapPair]:
    """The orbit of m under all k-th roots of unity acting on phi."""
    seen = []
    for j in range(m.k):
        img = deck_transform(m, j)
        if img not in seen:
            seen.append(img)
    return seen
