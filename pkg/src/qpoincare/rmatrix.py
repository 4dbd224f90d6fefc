"""R-matrix data and componentwise expansion of the defining relations.

The 4x4 solution of the Yang-Baxter equation used throughout, with the
overall q^(-1/2) normalisation dropped (it cancels in every relation we
expand, since both sides carry equally many R factors or the prefactors
divide out of homogeneous equalities).

Operators on the tensor square are 4x4 matrices of NCPoly with composite
row index 2*i + k for (space-1 index i, space-2 index k).
"""

from __future__ import annotations

from typing import Dict, List, Sequence

from . import linalg
from .scalars import ONE, S, Scalar, ZERO
from .words import NCPoly

_QM = S("q - q^-1")

R12: List[List[Scalar]] = [
    [S("q"), ZERO, ZERO, ZERO],
    [ZERO, ONE, ZERO, ZERO],
    [ZERO, _QM, ONE, ZERO],
    [ZERO, ZERO, ZERO, S("q")],
]

# swap of the tensor factors on both indices
R21: List[List[Scalar]] = [
    [R12[2 * (r % 2) + r // 2][2 * (c % 2) + c // 2] for c in range(4)]
    for r in range(4)
]

R12_INV = linalg.inverse(R12)
R21_INV = linalg.inverse(R21)

FAMILY_MATRIX_NAMES = {"P": "P", "G": "G", "B": "B", "O": "O"}


def letters_matrix(fam: str) -> List[List[NCPoly]]:
    """The 2x2 matrix of generator letters for a family (P, G, B or O)."""
    return [
        [NCPoly.letter(f"{fam}11"), NCPoly.letter(f"{fam}12")],
        [NCPoly.letter(f"{fam}21"), NCPoly.letter(f"{fam}22")],
    ]


def _nc(m: Sequence[Sequence[Scalar]]) -> List[List[NCPoly]]:
    return [[NCPoly.scalar(x) for x in row] for row in m]


def embed1(x: Sequence[Sequence[NCPoly]]) -> List[List[NCPoly]]:
    """x tensor identity on the composite index."""
    out = [[NCPoly.zero() for _ in range(4)] for _ in range(4)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                out[2 * i + k][2 * j + k] = x[i][j]
    return out


def embed2(x: Sequence[Sequence[NCPoly]]) -> List[List[NCPoly]]:
    """identity tensor x on the composite index."""
    out = [[NCPoly.zero() for _ in range(4)] for _ in range(4)]
    for k in range(2):
        for i in range(2):
            for j in range(2):
                out[2 * k + i][2 * k + j] = x[i][j]
    return out


def _prod(*factors):
    out = None
    for f in factors:
        out = f if out is None else linalg.mat_mul(out, f)
    return out


def ybe_check() -> bool:
    """R12 R13 R23 = R23 R13 R12 on the 8-dimensional tensor cube."""
    def emb(m, a, b):
        # place the 4x4 matrix on tensor slots a < b of three 2-dim spaces
        out = [[ZERO for _ in range(8)] for _ in range(8)]
        for r in range(8):
            for c in range(8):
                bits_r = ((r >> 2) & 1, (r >> 1) & 1, r & 1)
                bits_c = ((c >> 2) & 1, (c >> 1) & 1, c & 1)
                free = [s for s in range(3) if s not in (a, b)][0]
                if bits_r[free] != bits_c[free]:
                    continue
                rr = 2 * bits_r[a] + bits_r[b]
                cc = 2 * bits_c[a] + bits_c[b]
                out[r][c] = m[rr][cc]
        return out

    r12 = emb(R12, 0, 1)
    r13 = emb(R12, 0, 2)
    r23 = emb(R12, 1, 2)
    lhs = linalg.mat_mul(linalg.mat_mul(r12, r13), r23)
    rhs = linalg.mat_mul(linalg.mat_mul(r23, r13), r12)
    return all(lhs[i][j] == rhs[i][j] for i in range(8) for j in range(8))


# relation patterns: each side is a list of factor specs; "1"/"2" embed the
# first/second operand matrix, other entries name numeric R factors
_RFACTORS = {"R12": R12, "R21": R21, "R12inv": R12_INV, "R21inv": R21_INV}

RTT_PATTERNS: Dict[str, tuple] = {
    "PP": (("P", "P"), ("R12", "1", "R12inv", "2"), ("2", "R21inv", "1", "R21")),
    "GG": (("G", "G"), ("R21inv", "1", "R21", "2"), ("2", "R12", "1", "R12inv")),
    "GB": (("G", "B"), ("R12", "1", "R12inv", "2"), ("2", "R12", "1", "R12inv")),
    # the PG and PB right-hand sides carry two R-inverses against one
    # balanced pair on the left, so with the q^(-1/2) prefactor dropped a
    # compensating factor q multiplies the right side
    "PG": (("P", "G"), ("R21inv", "1", "R21", "2"), ("q", "2", "R21inv", "1", "R12inv")),
    # barred partners of GG and PG, fixed here and pinned against the
    # componentwise catalog by the relation tests
    "BB": (("B", "B"), ("R12", "1", "R12inv", "2"), ("2", "R21inv", "1", "R21")),
    "PB": (("P", "B"), ("R12", "1", "R12inv", "2"), ("q", "2", "R21inv", "1", "R12inv")),
    # Z1 R21 O2 R12 = R21 O2 R12 Z1 with Z one of P, G, B, O
    "OO": (("O", "O"), ("1", "R21", "2", "R12"), ("R21", "2", "R12", "1")),
    "OP": (("P", "O"), ("1", "R21", "2", "R12"), ("R21", "2", "R12", "1")),
    "OG": (("G", "O"), ("1", "R21", "2", "R12"), ("R21", "2", "R12", "1")),
    "OB": (("B", "O"), ("1", "R21", "2", "R12"), ("R21", "2", "R12", "1")),
}


def rtt_expand(tag: str, z_matrix: Sequence[Sequence[NCPoly]] | None = None) -> List[NCPoly]:
    """Expand one matrix relation into its 16 component relations.

    Returns NCPoly values that the algebra declares to vanish.  For the
    "OZ" tag the first operand matrix can be supplied explicitly, which is
    how composite matrices (such as W) are linked to the catalog.
    """
    if tag == "OZ":
        if z_matrix is None:
            raise ValueError("tag OZ requires an explicit z_matrix")
        fams, lhs_spec, rhs_spec = ("?", "O"), RTT_PATTERNS["OP"][1], RTT_PATTERNS["OP"][2]
        mats = (z_matrix, letters_matrix("O"))
    else:
        if tag not in RTT_PATTERNS:
            raise ValueError(f"unknown relation tag {tag!r}")
        fams, lhs_spec, rhs_spec = RTT_PATTERNS[tag]
        mats = (letters_matrix(fams[0]), letters_matrix(fams[1]))

    def build(spec):
        factors = []
        for f in spec:
            if f == "1":
                factors.append(embed1(mats[0]))
            elif f == "2":
                factors.append(embed2(mats[1]))
            elif f == "q":
                factors.append(_nc(linalg.mat_scale(linalg.identity(4), S("q"))))
            else:
                factors.append(_nc(_RFACTORS[f]))
        return _prod(*factors)

    lhs = build(lhs_spec)
    rhs = build(rhs_spec)
    rels = []
    for i in range(4):
        for j in range(4):
            d = lhs[i][j] - rhs[i][j]
            if not d.is_zero():
                rels.append(d)
    return rels
