"""Finite-dimensional representations of the deformed rotation subalgebra.

A spin-j representation is a quadruple of (2j+1)x(2j+1) Scalar matrices
for the four Omega letters, acting on a weight basis ordered
m = j, j-1, ..., -j.  O11 is diagonal with entries q^(2m), O12 lowers m,
O21 raises m, and O22 is fixed by the q-trace value k(j).  Only the
product of the raising and lowering coefficients is determined; the
"rational" gauge keeps every entry inside the exact field, while the
"hermitian" gauge splits the product into conjugate square roots (using
the adjoined radical r = sqrt(q^2+1) where it suffices).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg
from .scalars import ONE, S, Scalar, ZERO, sqrt_in_field
from .words import NCPoly, parse_ncpoly

HalfInt = Fraction


class GaugeError(ValueError):
    pass


def half_integer(x) -> Fraction:
    """Coerce x to an exact half-integer Fraction."""
    j = Fraction(x) if not isinstance(x, Fraction) else x
    if j.denominator not in (1, 2):
        raise ValueError(f"{x} is not a half-integer")
    return j


def k(j) -> Scalar:
    """The deformed j(j+1): k(j) = q*(q^(2j+1) + q^-(2j+1))."""
    j = half_integer(j)
    e = int(2 * j)  # 2j, an integer
    return Scalar.q_power(e + 2) + Scalar.q_power(-e)


def factor_gap(j, m) -> Tuple[Scalar, Scalar]:
    """Split k(j) - k(m) = q*u*v with u, v plain q-binomials.

    u = q^(j+m+1) - q^-(j+m+1) and v = q^(j-m) - q^-(j-m); both exponents
    are integers whenever j and m belong to the same multiplet.
    """
    j, m = half_integer(j), half_integer(m)
    up = j + m + 1
    vp = j - m
    if up.denominator != 1 or vp.denominator != 1:
        raise ValueError(f"j={j}, m={m} do not differ by an integer")
    u = Scalar.q_power(int(up)) - Scalar.q_power(-int(up))
    v = Scalar.q_power(int(vp)) - Scalar.q_power(-int(vp))
    return u, v


def _b_squared(j: Fraction, m: Fraction) -> Scalar:
    """|B_{j,m}|^2 = q^(2(m-1)) * (k(j) - k(m))."""
    return Scalar.q_power(int(2 * (m - 1))) * (k(j) - k(m))


@dataclass(frozen=True)
class OmegaRep:
    """Immutable spin-j representation of the four Omega letters."""

    spin: Fraction
    gauge: str
    matrices: Dict[str, List[List[Scalar]]]
    a_coeff: Dict[Fraction, Scalar] = field(repr=False, default=None)  # type: ignore[assignment]
    b_coeff: Dict[Fraction, Scalar] = field(repr=False, default=None)  # type: ignore[assignment]

    @property
    def dim(self) -> int:
        return int(2 * self.spin) + 1

    @property
    def k_value(self) -> Scalar:
        return k(self.spin)

    def weights(self) -> List[Fraction]:
        j = self.spin
        return [j - i for i in range(self.dim)]

    def index_of(self, m: Fraction) -> int:
        i = int(self.spin - m)
        if not (0 <= i < self.dim) or (self.spin - m).denominator != 1:
            raise ValueError(f"m={m} outside multiplet of spin {self.spin}")
        return i

    def act(self, letter: str, m) -> Optional[Tuple[Fraction, Scalar]]:
        """Action of a single Omega letter on weight m.

        Returns (new_m, coefficient) or None when the state is annihilated.
        Each letter maps a weight vector to (a multiple of) a single weight
        vector, so no superposition is needed.
        """
        m = half_integer(m)
        j = self.spin
        if letter == "O11":
            return m, Scalar.q_power(int(2 * m))
        if letter == "O22":
            return m, (self.k_value - Scalar.q_power(int(2 * m))) / S("q^2")
        if letter == "O12":  # lowering
            if m - 1 < -j:
                return None
            return m - 1, self.a_coeff[m]
        if letter == "O21":  # raising
            if m + 1 > j:
                return None
            return m + 1, self.b_coeff[m]
        raise ValueError(f"not an Omega letter: {letter}")


# The defining quadratic relations and the unimodularity constraint,
# copied from the relation catalog so that a representation can be
# verified standalone by plain matrix arithmetic.
_OMEGA_RELATION_STRINGS = (
    "O12*O11 - q^2*O11*O12",
    "O21*O11 - q^-2*O11*O21",
    "O22*O11 - O11*O22",
    "O22*O12 - O12*O22 - (q^2-1)/q^4*O12*O11",
    "O21*O12 - O12*O21 + (q^2-1)/q^2*(O22-O11)*O11",
    "O22*O21 - O21*O22 + (q^2-1)/q^2*O21*O11",
    "O11*O22 - q^2*O21*O12 - 1",
)


def _eval_on_matrices(p: NCPoly, mats: Dict[str, List[List[Scalar]]], dim: int):
    from .words import LETTER_NAMES

    total = None
    for w, c in p.terms.items():
        acc = linalg.identity(dim)
        for letter in w:
            acc = linalg.mat_mul(acc, mats[LETTER_NAMES[letter]])
        acc = linalg.mat_scale(acc, c)
        total = acc if total is None else linalg.mat_add(total, acc)
    return total if total is not None else linalg.zeros(dim, dim)


def verify_rep(rep: OmegaRep) -> None:
    """Exact checks: defining relations, unimodularity, q-trace, spectrum."""
    dim = rep.dim
    for text in _OMEGA_RELATION_STRINGS:
        res = _eval_on_matrices(parse_ncpoly(text), rep.matrices, dim)
        if any(not e.is_zero() for row in res for e in row):
            raise AssertionError(f"relation {text} fails for spin {rep.spin}")
    # q-trace is the constant k(j)
    kj = rep.k_value
    o11, o22 = rep.matrices["O11"], rep.matrices["O22"]
    for i in range(dim):
        for jx in range(dim):
            want = kj if i == jx else ZERO
            if o11[i][jx] + S("q^2") * o22[i][jx] != want:
                raise AssertionError(f"q-trace != k(j) for spin {rep.spin}")
    # diagonal spectrum q^(2m), multiplicity one each
    for i, m in enumerate(rep.weights()):
        if o11[i][i] != Scalar.q_power(int(2 * m)):
            raise AssertionError(f"O11 spectrum wrong at m={m}")


def build_rep(j, gauge: str = "rational") -> OmegaRep:
    """Construct and verify the spin-j representation in the given gauge.

    rational: B_{j,m} = q^(2(m-1))(k(j)-k(m)), A_{j,m} = 1 -- everything
    stays inside the exact field.
    hermitian: B_{j,m} = +sqrt(q^(2(m-1))(k(j)-k(m))), A_{j,m} = B_{j,m-1};
    only available symbolically when the single radical r suffices.
    """
    j = half_integer(j)
    if j < 0:
        raise ValueError("spin must be >= 0")
    if gauge not in ("rational", "hermitian"):
        raise ValueError(f"unknown gauge {gauge!r}")
    dim = int(2 * j) + 1
    weights = [j - i for i in range(dim)]

    b: Dict[Fraction, Scalar] = {}
    for m in weights:
        if m + 1 > j:
            b[m] = ZERO
            continue
        b2 = _b_squared(j, m)
        if gauge == "rational":
            b[m] = b2
        else:
            try:
                b[m] = sqrt_in_field(b2)
            except ValueError as exc:
                raise GaugeError(
                    f"hermitian gauge for spin {j} needs square roots outside "
                    f"the exact field ({exc}); use the rational gauge or a "
                    f"numeric point"
                ) from exc
    a: Dict[Fraction, Scalar] = {}
    for m in weights:
        if m - 1 < -j:
            a[m] = ZERO
        else:
            # coefficients are real in both gauges, so conjugation is trivial
            a[m] = ONE if gauge == "rational" else b[m - 1].conj()

    z = linalg.zeros(dim, dim)
    o11 = [row[:] for row in z]
    o12 = [row[:] for row in z]
    o21 = [row[:] for row in z]
    o22 = [row[:] for row in z]
    kj = k(j)
    for i, m in enumerate(weights):
        o11[i][i] = Scalar.q_power(int(2 * m))
        o22[i][i] = (kj - o11[i][i]) / S("q^2")
        if m - 1 >= -j:
            o12[i + 1][i] = a[m]
        if m + 1 <= j:
            o21[i - 1][i] = b[m]
    rep = OmegaRep(spin=j, gauge=gauge,
                   matrices={"O11": o11, "O12": o12, "O21": o21, "O22": o22},
                   a_coeff=a, b_coeff=b)
    verify_rep(rep)
    return rep


def rep_json(rep: OmegaRep, point=None) -> dict:
    """JSON-ready layout; Scalars are canonical strings, or numeric at a point."""
    def show(x: Scalar):
        if point is None:
            return str(x)
        v = x.evaluate(point)
        return v.real if abs(v.imag) < 1e-15 else [v.real, v.imag]

    return {
        "spin": str(rep.spin),
        "gauge": rep.gauge,
        "matrices": {n: [[show(e) for e in row] for row in m]
                     for n, m in sorted(rep.matrices.items())},
    }
