"""2x2 operator matrices, q-trace machinery, the W matrix and Casimirs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg, rmatrix
from .relations import build_system, nf, star
from .rmatrix import rtt_expand, ybe_check
from .scalars import A, BETA, ONE, Q, S, Scalar
from .words import LETTER_NAMES, NC, NCPoly, Word, word_key


class OpMatrix:
    """2x2 matrix of normal-formed NCPoly entries."""

    __slots__ = ("e",)

    def __init__(self, entries: Sequence[Sequence[NCPoly]], normalize: bool = True):
        if normalize:
            self.e = [[nf(entries[i][j]) for j in range(2)] for i in range(2)]
        else:
            self.e = [[entries[i][j] for j in range(2)] for i in range(2)]

    @staticmethod
    def from_letters(fam: str) -> "OpMatrix":
        return OpMatrix(rmatrix.letters_matrix(fam), normalize=False)

    @staticmethod
    def scalar(c) -> "OpMatrix":
        c = S(c)
        z = NCPoly.zero()
        return OpMatrix([[NCPoly.scalar(c), z], [z, NCPoly.scalar(c)]], normalize=False)

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        return OpMatrix([[self.e[i][j] + other.e[i][j] for j in range(2)] for i in range(2)],
                        normalize=False)

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        return OpMatrix([[self.e[i][j] - other.e[i][j] for j in range(2)] for i in range(2)],
                        normalize=False)

    def __mul__(self, other: "OpMatrix") -> "OpMatrix":
        out = [[NCPoly.zero(), NCPoly.zero()], [NCPoly.zero(), NCPoly.zero()]]
        for i in range(2):
            for j in range(2):
                acc = NCPoly.zero()
                for k in range(2):
                    acc = acc + self.e[i][k] * other.e[k][j]
                out[i][j] = nf(acc)
        return OpMatrix(out, normalize=False)

    def scale(self, c) -> "OpMatrix":
        return OpMatrix([[self.e[i][j].scale(S(c)) for j in range(2)] for i in range(2)],
                        normalize=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OpMatrix):
            return NotImplemented
        return self.e == other.e

    def __str__(self) -> str:
        return "[[{}, {}], [{}, {}]]".format(self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1])


P_MATRIX = OpMatrix.from_letters("P")
GAMMA = OpMatrix.from_letters("G")
GAMMABAR = OpMatrix.from_letters("B")
OMEGA = OpMatrix.from_letters("O")

GAMMA_INV = OpMatrix([
    [NC("q^2*G22 - (q^2-1)*G11"), NC("-q^2*G12")],
    [NC("-q^2*G21"), NC("G11")],
], normalize=False)

GAMMABAR_INV = OpMatrix([
    [NC("Gb22"), NC("-q^-2*Gb12")],
    [NC("-q^-2*Gb21"), NC("q^-2*(Gb11 + (q^2-1)*Gb22)")],
], normalize=False)


def trq(m: OpMatrix) -> NCPoly:
    return nf(m.e[0][0] + m.e[1][1].scale(Q * Q))


def adjugate(m: OpMatrix, kind: str) -> OpMatrix:
    """The printed adjugate: twiddle form, plus the extra P term for kind W."""
    q2 = Q * Q
    base = OpMatrix([
        [m.e[1][1], m.e[0][1].scale(-ONE / q2)],
        [m.e[1][0].scale(-ONE / q2), (m.e[0][0] + m.e[1][1].scale(q2 - ONE)).scale(ONE / q2)],
    ])
    if kind == "P":
        return base
    if kind == "W":
        return base - adjugate(P_MATRIX, "P").scale(A * (q2 - ONE))
    raise ValueError(f"unknown adjugate kind {kind!r}")


def qdot(a: OpMatrix, b: OpMatrix, kind: str) -> NCPoly:
    """Deformed scalar product -(1/(q^2+1)) Tr_q(a * adjugate(b))."""
    return nf(trq(a * adjugate(b, kind)).scale(-ONE / (Q * Q + ONE)))


def w_matrix(beta: Optional[Scalar] = None) -> OpMatrix:
    """W = a(beta Gbar^-1 P G - P); beta defaults to the symbolic parameter."""
    b = BETA if beta is None else S(beta)
    return ((GAMMABAR_INV * P_MATRIX * GAMMA).scale(b) - P_MATRIX).scale(A)


def trq_w_product_form() -> NCPoly:
    """Tr_q(W)/a at beta = q^3, written over Omega letters.

    (P11-P22)(O11 - TrqO/(q^2+1)) + P12*O21 + q^2*P21*O12
    + Tr_q(P)(TrqO/(q^2+1) - 1), with the Omega segment normal-ordered
    to the left of the P segment.
    """
    q2p1 = "(q^2+1)"
    expr = (
        f"(P11-P22)*(O11 - (O11+q^2*O22)/{q2p1})"
        f" + P12*O21 + q^2*P21*O12"
        f" + (P11+q^2*P22)*((O11+q^2*O22)/{q2p1} - 1)"
    )
    return nf(NC(expr))


# ---------------------------------------------------------------------------
# observable catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Observable:
    name: str
    poly: NCPoly


def observables(beta: Optional[Scalar] = None) -> Dict[str, Observable]:
    """The named operators: Casimirs, commuting set, and subalgebra traces."""
    w = w_matrix(beta)
    cat = {
        "C1": qdot(P_MATRIX, P_MATRIX, "P"),
        "C2": qdot(w, w, "W"),
        "K1": trq(P_MATRIX),
        "K2": trq(w),
        "K3": trq(OMEGA),
        "K4": NC("O11"),
        "P3": NC("P11 - P22"),
        "TrqGpGb": trq(GAMMA + GAMMABAR),
        "TrqGmGb": trq(GAMMA - GAMMABAR),
        "TrqPOmega": trq(P_MATRIX * OMEGA),
    }
    return {k: Observable(k, v) for k, v in cat.items()}


BASE_GENERATORS = tuple(n for n in LETTER_NAMES if n[0] != "O")


def casimir_commutation(obs: Observable, generators: Sequence[str] = BASE_GENERATORS) -> List[Tuple[str, NCPoly]]:
    """nf of [obs, g] for each generator letter g."""
    sysm = build_system()
    out = []
    for g in generators:
        lg = NCPoly.letter(g)
        out.append((g, sysm.commutator(obs.poly, lg)))
    return out


def omega_link_check() -> Dict[str, bool]:
    """Substitute the composite G*Gbar^-1 matrix for the O letters.

    Every O-segment rule of the loaded system and the O unimodularity
    identity must reduce to zero over the G/B letters alone.
    """
    sysm = build_system()
    prime = GAMMA * GAMMABAR_INV
    sub = {
        "O11": prime.e[0][0], "O12": prime.e[0][1],
        "O21": prime.e[1][0], "O22": prime.e[1][1],
    }

    def substitute(p: NCPoly) -> NCPoly:
        out = NCPoly.zero()
        for w, c in p.terms.items():
            piece = NCPoly.scalar(c)
            for letter in w:
                name = LETTER_NAMES[letter]
                piece = piece * sub.get(name, NCPoly.letter(name))
            for w2, c2 in piece.terms.items():
                out.iadd_term(w2, c2)
        return nf(out)

    results = {}
    from .words import FAMILY, FAMILY_NAMES
    ofam = FAMILY_NAMES.index("O")
    for lhs, rhs in sysm.rules.items():
        if any(FAMILY[l] == ofam for l in lhs):
            residual = substitute(NCPoly({lhs: ONE}) - rhs)
            results[" ".join(LETTER_NAMES[l] for l in lhs)] = residual.is_zero()
    det = substitute(NC("O11*O22 - q^2*O21*O12 - 1"))
    results["det"] = det.is_zero()
    return results


def pauli_decompose(m: OpMatrix) -> Tuple[NCPoly, NCPoly, NCPoly, NCPoly]:
    """Components (c0, c1, c2, c3) with m = -c0*I + sum_k sigma_k c_k."""
    half = S("1/2")
    i2 = S("1/2")/S("i")
    c0 = nf((m.e[0][0] + m.e[1][1]).scale(-half))
    c3 = nf((m.e[0][0] - m.e[1][1]).scale(half))
    c1 = nf((m.e[0][1] + m.e[1][0]).scale(half))
    c2 = nf((m.e[1][0] - m.e[0][1]).scale(i2))
    return c0, c1, c2, c3


def pauli_recompose(c0: NCPoly, c1: NCPoly, c2: NCPoly, c3: NCPoly) -> OpMatrix:
    i = NCPoly.scalar(S("i"))
    return OpMatrix([
        [c3 - c0, c1 - i * c2],
        [c1 + i * c2, (c0 + c3).scale(S(-1))],
    ])


# ---------------------------------------------------------------------------
# span comparison of relation sets (RTT output vs printed catalog)
# ---------------------------------------------------------------------------


def relations_span_equal(rels_a: Sequence[NCPoly], rels_b: Sequence[NCPoly]) -> bool:
    """Do two sets of vanishing combinations span the same linear space?"""
    words = sorted({w for rel in list(rels_a) + list(rels_b) for w in rel.terms}, key=word_key)
    col = {w: j for j, w in enumerate(words)}

    def to_matrix(rels):
        from .scalars import ZERO
        m = []
        for rel in rels:
            row = [ZERO] * len(words)
            for w, c in rel.terms.items():
                row[col[w]] = c
            m.append(row)
        return m

    return linalg.same_row_span(to_matrix(rels_a), to_matrix(rels_b))
