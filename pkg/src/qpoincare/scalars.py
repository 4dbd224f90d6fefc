"""Exact coefficient field for the deformed algebra.

Elements live in F = Q(i)(q, a, M, beta) extended by one formal radical r
with r^2 = q^2 + 1.  A ``Scalar`` is a reduced fraction of sparse Laurent
polynomials over the Gaussian rationals; q may carry negative exponents,
r never appears at power >= 2, and denominators are kept r-free by
rationalisation.  Equality is canonical: two Scalars are equal iff their
internal representations coincide.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, Tuple

# monomial exponent tuple: (q, a, M, beta, r); r exponent is 0 or 1
Mono = Tuple[int, int, int, int, int]
# Gaussian rational: (real, imag)
QI = Tuple[Fraction, Fraction]
Poly = Dict[Mono, QI]

_F0 = Fraction(0)
_F1 = Fraction(1)
QI_ZERO: QI = (_F0, _F0)
QI_ONE: QI = (_F1, _F0)

NVARS = 5
_IDX = {"q": 0, "a": 1, "M": 2, "beta": 3, "r": 4}
_NAMES = ("q", "a", "M", "beta", "r")
MONO_ONE: Mono = (0, 0, 0, 0, 0)


def _qi_add(x: QI, y: QI) -> QI:
    return (x[0] + y[0], x[1] + y[1])


def _qi_mul(x: QI, y: QI) -> QI:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _qi_neg(x: QI) -> QI:
    return (-x[0], -x[1])


def _qi_conj(x: QI) -> QI:
    return (x[0], -x[1])


def _qi_inv(x: QI) -> QI:
    n = x[0] * x[0] + x[1] * x[1]
    if n == 0:
        raise ZeroDivisionError("division by zero Gaussian rational")
    return (x[0] / n, -x[1] / n)


def _qi_div(x: QI, y: QI) -> QI:
    return _qi_mul(x, _qi_inv(y))


# ---------------------------------------------------------------------------
# raw polynomial arithmetic on sparse dicts
# ---------------------------------------------------------------------------

_R2: Poly = {(2, 0, 0, 0, 0): QI_ONE, MONO_ONE: QI_ONE}  # q^2 + 1


def _p_iadd_term(p: Poly, m: Mono, c: QI) -> None:
    cur = p.get(m)
    if cur is None:
        if c != QI_ZERO:
            p[m] = c
        return
    s = (cur[0] + c[0], cur[1] + c[1])
    if s[0] == 0 and s[1] == 0:
        del p[m]
    else:
        p[m] = s


def _p_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for m, c in q.items():
        _p_iadd_term(out, m, c)
    return out


def _p_neg(p: Poly) -> Poly:
    return {m: (-c[0], -c[1]) for m, c in p.items()}


def _p_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            c = _qi_mul(c1, c2)
            er = m1[4] + m2[4]
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3], er & 1)
            if er == 2:
                # r^2 -> q^2 + 1
                _p_iadd_term(out, (m[0] + 2, m[1], m[2], m[3], 0), c)
                _p_iadd_term(out, m, c)
            else:
                _p_iadd_term(out, m, c)
    return out


def _p_scale(p: Poly, c: QI) -> Poly:
    if c == QI_ZERO:
        return {}
    return {m: _qi_mul(v, c) for m, v in p.items()}


def _p_conj(p: Poly) -> Poly:
    return {m: (c[0], -c[1]) for m, c in p.items()}


def _p_shift(p: Poly, shift: Mono) -> Poly:
    return {
        (m[0] + shift[0], m[1] + shift[1], m[2] + shift[2], m[3] + shift[3], m[4] + shift[4]): c
        for m, c in p.items()
    }


def _p_rconj(p: Poly) -> Poly:
    """r -> -r."""
    return {m: (c if m[4] == 0 else _qi_neg(c)) for m, c in p.items()}


def _p_is_q_only(p: Poly) -> bool:
    return all(m[1] == 0 and m[2] == 0 and m[3] == 0 and m[4] == 0 for m in p)


# ---------------------------------------------------------------------------
# univariate (in q) helpers; dense lists of QI indexed by exponent
# ---------------------------------------------------------------------------


def _uni_from_items(items) -> Tuple[int, list]:
    """items: iterable of (eq, coeff); returns (offset, dense coeffs)."""
    items = list(items)
    lo = min(e for e, _ in items)
    hi = max(e for e, _ in items)
    dense = [QI_ZERO] * (hi - lo + 1)
    for e, c in items:
        dense[e - lo] = _qi_add(dense[e - lo], c)
    return lo, dense


def _uni_trim(p: list) -> list:
    while p and p[-1] == QI_ZERO:
        p.pop()
    while p and p[0] == QI_ZERO:
        p.pop(0)
    return p


def _uni_norm(p: list) -> list:
    while p and p[-1] == QI_ZERO:
        p.pop()
    return p


def _uni_divmod(a: list, b: list):
    a = list(a)
    out = [QI_ZERO] * (max(len(a) - len(b) + 1, 0))
    inv_lead = _qi_inv(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        c = _qi_mul(a[i + len(b) - 1], inv_lead)
        if c != QI_ZERO:
            out[i] = c
            for j, bc in enumerate(b):
                a[i + j] = _qi_add(a[i + j], _qi_neg(_qi_mul(c, bc)))
    _uni_norm(a)
    return out, a


def _uni_gcd(a: list, b: list) -> list:
    a = _uni_norm(list(a))
    b = _uni_norm(list(b))
    while b:
        _, rem = _uni_divmod(a, b)
        a, b = b, rem
    if a:
        inv = _qi_inv(a[-1])
        a = [_qi_mul(c, inv) for c in a]
    return a


def _uni_sqrt(p: list):
    """Exact square root of a univariate polynomial, or None."""
    p = _uni_norm(list(p))
    if not p:
        return []
    if (len(p) - 1) % 2 != 0:
        return None
    lead = p[-1]
    # leading coefficient must be a rational square (imaginary part zero)
    if lead[1] != 0 or lead[0] < 0:
        return None
    num, den = lead[0].numerator, lead[0].denominator
    rn, rd = _isqrt(num), _isqrt(den)
    if rn is None or rd is None:
        return None
    n = (len(p) - 1) // 2
    s = [QI_ZERO] * (n + 1)
    s[n] = (Fraction(rn, rd), _F0)
    inv2lead = _qi_inv(_qi_add(s[n], s[n]))
    for k in range(n - 1, -1, -1):
        acc = p[k + n]
        for j in range(k + 1, n):
            if k + n - j <= n:
                acc = _qi_add(acc, _qi_neg(_qi_mul(s[j], s[k + n - j])))
        s[k] = _qi_mul(acc, inv2lead)
    # verify
    sq = [QI_ZERO] * (2 * n + 1)
    for i_, ci in enumerate(s):
        for j_, cj in enumerate(s):
            sq[i_ + j_] = _qi_add(sq[i_ + j_], _qi_mul(ci, cj))
    if _uni_norm(sq) != p:
        return None
    return s


def _isqrt(n: int):
    if n < 0:
        return None
    r = int(n ** 0.5)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand * cand == n:
            return cand
    return None


# ---------------------------------------------------------------------------
# fraction reduction
# ---------------------------------------------------------------------------


def _group_by_rest(p: Poly) -> Dict[Tuple[int, int, int, int], Dict[int, QI]]:
    """Group monomials by their (a, M, beta, r) part; values are q-Laurent polys."""
    out: Dict[Tuple[int, int, int, int], Dict[int, QI]] = {}
    for m, c in p.items():
        key = (m[1], m[2], m[3], m[4])
        out.setdefault(key, {})[m[0]] = c
    return out


def _poly_div_uni_q(p: Poly, g_lo: int, g: list) -> Poly:
    """Exact division of p by a q-univariate polynomial (offset g_lo, coeffs g)."""
    out: Poly = {}
    for rest, qpoly in _group_by_rest(p).items():
        lo, dense = _uni_from_items(qpoly.items())
        quo, rem = _uni_divmod(dense, g)
        if _uni_norm(rem):
            raise ArithmeticError("inexact polynomial division")
        for e, c in enumerate(quo):
            if c != QI_ZERO:
                out[(lo - g_lo + e, rest[0], rest[1], rest[2], rest[3])] = c
    return out


def _reduce_fraction(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, {MONO_ONE: QI_ONE}
    # rationalise the radical out of the denominator
    if any(m[4] for m in den):
        conj = _p_rconj(den)
        num = _p_mul(num, conj)
        den = _p_mul(den, conj)
    # strip the denominator's monomial content
    shift = [min(m[i] for m in den) for i in range(NVARS)]
    if any(shift):
        sh = tuple(-s for s in shift)
        den = _p_shift(den, sh)  # type: ignore[arg-type]
        num = _p_shift(num, sh)  # type: ignore[arg-type]
    # polynomial gcd: denominators occurring here are univariate in q
    if len(den) > 1:
        if _p_is_q_only(den):
            g_lo, g = _uni_from_items((m[0], c) for m, c in den.items())
            for qpoly in _group_by_rest(num).values():
                if len(g) <= 1:
                    break
                _, dense = _uni_from_items(qpoly.items())
                g = _uni_gcd(g, dense)
            else:
                if len(g) > 1:
                    num = _poly_div_uni_q(num, 0, g)
                    den = _poly_div_uni_q(den, 0, g)
                    shift2 = [min(m[i] for m in den) for i in range(NVARS)]
                    if any(shift2):
                        sh2 = tuple(-s for s in shift2)
                        den = _p_shift(den, sh2)  # type: ignore[arg-type]
                        num = _p_shift(num, sh2)  # type: ignore[arg-type]
        else:
            num, den = _sympy_reduce(num, den)
    # make the denominator monic at its largest monomial
    lead = max(den)
    lc = den[lead]
    if lc != QI_ONE:
        inv = _qi_inv(lc)
        num = _p_scale(num, inv)
        den = _p_scale(den, inv)
    if den == {MONO_ONE: QI_ONE} or len(den) == 0:
        den = {MONO_ONE: QI_ONE}
    return num, den


def _sympy_reduce(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    # slow path; multivariate denominators essentially never occur here
    import sympy

    syms = sympy.symbols("q a M beta r")

    def to_expr(p: Poly):
        e = sympy.Integer(0)
        for m, c in p.items():
            t = sympy.Rational(c[0]) + sympy.I * sympy.Rational(c[1])
            for i in range(NVARS):
                t *= syms[i] ** m[i]
            e += t
        return e

    frac = sympy.cancel(to_expr(num) / to_expr(den))
    n_expr, d_expr = sympy.fraction(sympy.together(frac))
    return _from_sympy(n_expr, syms), _from_sympy(d_expr, syms)


def _from_sympy(expr, syms) -> Poly:
    import sympy

    expr = sympy.expand(expr)
    out: Poly = {}
    terms = expr.as_ordered_terms() if expr != 0 else []
    for t in terms:
        coeff_c, parts = t.as_coeff_Mul()
        mono = [0] * NVARS
        imag = 0
        for f in sympy.Mul.make_args(parts):
            b, e = f.as_base_exp()
            if b == sympy.I:
                imag += int(e)
            else:
                mono[list(syms).index(b)] += int(e)
        c = sympy.Rational(coeff_c) * sympy.I ** imag
        re, im = sympy.re(c), sympy.im(c)
        _p_iadd_term(out, tuple(mono), (Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))))  # type: ignore[arg-type]
    return out


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------


class PoleError(ArithmeticError):
    """Numeric evaluation hit a vanishing denominator."""


class Scalar:
    """Canonical element of the coefficient field."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly, *, _reduced: bool = False):
        if not _reduced:
            num, den = _reduce_fraction(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_fraction(x: Fraction) -> "Scalar":
        if x == 0:
            return ZERO
        return Scalar({MONO_ONE: (x, _F0)}, {MONO_ONE: QI_ONE}, _reduced=True)

    @staticmethod
    def from_int(n: int) -> "Scalar":
        return Scalar.from_fraction(Fraction(n))

    @staticmethod
    def var(name: str) -> "Scalar":
        mono = [0] * NVARS
        mono[_IDX[name]] = 1
        return Scalar({tuple(mono): QI_ONE}, {MONO_ONE: QI_ONE}, _reduced=True)

    @staticmethod
    def imaginary() -> "Scalar":
        return Scalar({MONO_ONE: (_F0, _F1)}, {MONO_ONE: QI_ONE}, _reduced=True)

    @staticmethod
    def q_power(n: int) -> "Scalar":
        return Scalar({(n, 0, 0, 0, 0): QI_ONE}, {MONO_ONE: QI_ONE}, _reduced=True)

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == {MONO_ONE: QI_ONE} and self.den == {MONO_ONE: QI_ONE}

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return Scalar.from_int(x)
        if isinstance(x, Fraction):
            return Scalar.from_fraction(x)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return Scalar(_p_add(self.num, other.num), self.den)
        num = _p_add(_p_mul(self.num, other.den), _p_mul(other.num, self.den))
        return Scalar(num, _p_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(_p_neg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar._coerce(other) - self

    def __mul__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        return Scalar(_p_mul(self.num, other.num), _p_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero Scalar")
        if self.is_zero():
            return ZERO
        return Scalar(_p_mul(self.num, other.den), _p_mul(self.den, other.num))

    def __rtruediv__(self, other):
        return Scalar._coerce(other) / self

    def __pow__(self, n: int):
        if n == 0:
            return ONE
        if n < 0:
            return ONE / self ** (-n)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def conj(self) -> "Scalar":
        """Complex conjugation: i -> -i; q, a, M, beta, r fixed."""
        return Scalar(_p_conj(self.num), _p_conj(self.den))

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar._coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    # -- evaluation -------------------------------------------------------
    def evaluate(self, point: "NumericPoint") -> complex:
        dv = _p_eval(self.den, point)
        nv = _p_eval(self.num, point)
        scale = max(abs(c[0]) + abs(c[1]) for c in self.den.values())
        if abs(dv) <= 1e-14 * float(scale):
            raise PoleError(f"denominator {poly_str(self.den)} vanishes at {point}")
        return nv / dv

    # -- printing ---------------------------------------------------------
    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        ns = poly_str(self.num)
        if self.den == {MONO_ONE: QI_ONE}:
            return ns
        if len(self.num) > 1:
            ns = f"({ns})"
        ds = poly_str(self.den)
        if len(self.den) > 1 or _needs_parens_as_den(self.den):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"Scalar({self})"


@dataclass(frozen=True)
class NumericPoint:
    """Numeric parameter point; r evaluates to +sqrt(q0^2+1)."""

    q0: float
    a0: float = 1.0
    M0: float = 1.0
    beta0: float = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.q0 <= 0:
            raise ValueError("q0 must be positive")
        if self.M0 <= 0:
            raise ValueError("M0 must be positive")
        if self.beta0 is None:
            object.__setattr__(self, "beta0", self.q0 ** 3)

    def values(self):
        return (self.q0, self.a0, self.M0, self.beta0, (self.q0 ** 2 + 1) ** 0.5)


def _p_eval(p: Poly, point: NumericPoint) -> complex:
    vals = point.values()
    total = 0j
    for m, c in p.items():
        t = complex(c[0]) + 1j * complex(c[1])
        for i in range(NVARS):
            e = m[i]
            if e:
                t *= vals[i] ** e
        total += t
    return total


# ---------------------------------------------------------------------------
# printing helpers
# ---------------------------------------------------------------------------


def _needs_parens_as_den(p: Poly) -> bool:
    (m, c), = [next(iter(p.items()))]  # single-term denominator
    nfac = sum(1 for e in m if e) + (0 if c == QI_ONE else 1)
    return nfac > 1


def _frac_str(x: Fraction) -> str:
    return str(x)


def _mono_str(m: Mono, c: QI) -> str:
    parts = []
    if c[1] == 0:
        coeff = c[0]
        ipart = False
    elif c[0] == 0:
        coeff = c[1]
        ipart = True
    else:
        re, im = c
        inner = f"{_frac_str(re)}{'+' if im > 0 else '-'}{_frac_str(abs(im))}*i"
        parts.append(f"({inner})")
        coeff = None
        ipart = False
    sign = ""
    if coeff is not None:
        if coeff < 0:
            sign = "-"
            coeff = -coeff
        if coeff != 1 or (not ipart and not any(m)):
            parts.append(_frac_str(coeff))
        if ipart:
            parts.append("i")
    for i in range(NVARS):
        e = m[i]
        if e == 0:
            continue
        parts.append(_NAMES[i] if e == 1 else f"{_NAMES[i]}^{e}")
    if not parts:
        parts = ["1"]
    return sign + "*".join(parts)


def poly_str(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for m in sorted(p, reverse=True):
        s = _mono_str(m, p[m])
        if terms and not s.startswith("-"):
            terms.append("+" + s)
        else:
            terms.append(s)
    return "".join(terms)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


class ScalarParseError(ValueError):
    pass


class _Tok:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_ident(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def take_int(self) -> int:
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            raise ScalarParseError(f"expected integer at position {start}")
        return int(self.text[start:self.pos])


_SCALAR_ATOMS = {
    "q": lambda: Q,
    "a": lambda: A,
    "M": lambda: M,
    "beta": lambda: BETA,
    "r": lambda: R,
    "i": lambda: I,
}


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical Scalar grammar; parse(str(x)) == x."""
    tok = _Tok(text)
    val = _parse_sum(tok, _SCALAR_ATOMS)
    if tok.peek():
        raise ScalarParseError(f"trailing input at position {tok.pos}: {text[tok.pos:]!r}")
    return val


def _parse_sum(tok: _Tok, atoms):
    val = _parse_term(tok, atoms)
    while True:
        c = tok.peek()
        if c == "+":
            tok.pos += 1
            val = val + _parse_term(tok, atoms)
        elif c == "-":
            tok.pos += 1
            val = val - _parse_term(tok, atoms)
        else:
            return val


def _parse_term(tok: _Tok, atoms):
    val = _parse_factor(tok, atoms)
    while True:
        c = tok.peek()
        if c == "*":
            tok.pos += 1
            val = val * _parse_factor(tok, atoms)
        elif c == "/":
            tok.pos += 1
            val = val / _parse_factor(tok, atoms)
        else:
            return val


def _parse_factor(tok: _Tok, atoms):
    sign = 1
    while tok.peek() in "+-":
        if tok.peek() == "-":
            sign = -sign
        tok.pos += 1
    c = tok.peek()
    if c == "(":
        tok.pos += 1
        val = _parse_sum(tok, atoms)
        if tok.peek() != ")":
            raise ScalarParseError(f"expected ')' at position {tok.pos}")
        tok.pos += 1
    elif c.isdigit():
        val = Scalar.from_int(tok.take_int()) if atoms is _SCALAR_ATOMS else atoms["__int__"](tok.take_int())
    elif c.isalpha():
        name = tok.take_ident()
        if name not in atoms:
            raise ScalarParseError(f"unknown identifier {name!r} at position {tok.pos - len(name)}")
        val = atoms[name]()
    else:
        raise ScalarParseError(f"unexpected character {c!r} at position {tok.pos}")
    if tok.peek() == "^":
        tok.pos += 1
        val = val ** tok.take_int()
    if sign < 0:
        val = -val
    return val


# shared constants
ZERO = Scalar({}, {MONO_ONE: QI_ONE}, _reduced=True)
ONE = Scalar({MONO_ONE: QI_ONE}, {MONO_ONE: QI_ONE}, _reduced=True)
Q = Scalar.var("q")
A = Scalar.var("a")
M = Scalar.var("M")
BETA = Scalar.var("beta")
R = Scalar.var("r")
I = Scalar.imaginary()


def S(text) -> Scalar:
    """Shorthand constructor used all over the rule catalog."""
    if isinstance(text, Scalar):
        return text
    if isinstance(text, (int, Fraction)):
        return Scalar._coerce(text)
    return parse_scalar(text)


def sqrt_in_field(x: Scalar) -> Scalar:
    """Positive square root of x inside F, if one exists.

    Tries x = s^2 and x = s^2 * (q^2+1) with s a Laurent polynomial in q
    over the rationals; raises ValueError otherwise.  Positivity is the
    convention s(q0) > 0 at q0 = 1.3.
    """
    if x.is_zero():
        return ZERO
    # factor out the even monomial content in the non-q variables
    mins = [min(m[i] for m in x.num) for i in range(NVARS)]
    evens = tuple((mins[i] - (mins[i] % 2)) if i else 0 for i in range(NVARS))
    if any(evens):
        shifted = Scalar(_p_shift(x.num, tuple(-e for e in evens)), dict(x.den))
        half = tuple(e // 2 for e in evens)
        factor = Scalar({half: QI_ONE}, {MONO_ONE: QI_ONE})
        return _positive(sqrt_in_field(shifted) * factor)
    for extra, mult in ((ONE, ONE), (Q * Q + 1, R)):
        y = x / extra
        if y.den != {MONO_ONE: QI_ONE}:
            # denominators are q-monomials or even powers; fold into numerator
            (dm, dc), = [next(iter(y.den.items()))] if len(y.den) == 1 else [(None, None)]
            if dm is None:
                continue
            if any(dm[i] % 2 for i in range(NVARS)) or dc != QI_ONE:
                continue
            half = tuple(-e // 2 for e in dm)
            y2 = Scalar(_p_shift(y.num, half), {MONO_ONE: QI_ONE})
            root = _poly_sqrt(y2)
            if root is not None:
                return _positive(root * mult)
            continue
        root = _poly_sqrt(y)
        if root is not None:
            return _positive(root * mult)
    raise ValueError(f"no square root of {x} in the coefficient field; use a numeric point")


def _poly_sqrt(x: Scalar):
    if x.den != {MONO_ONE: QI_ONE}:
        return None
    if not _p_is_q_only(x.num):
        return None
    lo, dense = _uni_from_items((m[0], c) for m, c in x.num.items())
    if lo % 2:
        return None
    root = _uni_sqrt(dense)
    if root is None:
        return None
    out: Poly = {}
    for e, c in enumerate(root):
        if c != QI_ZERO:
            out[(lo // 2 + e, 0, 0, 0, 0)] = c
    return Scalar(out, {MONO_ONE: QI_ONE})


def _positive(x: Scalar) -> Scalar:
    v = x.evaluate(NumericPoint(q0=1.3))
    return -x if v.real < 0 else x
