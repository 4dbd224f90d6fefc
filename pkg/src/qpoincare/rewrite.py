"""Oriented rewrite systems and normal forms for the 16-letter algebra.

Rules map a left-hand word (quadratic, plus any completion rules found
by the critical-pair check) to a normal-formed NCPoly.  Every rule must
strictly decrease the graded word order; this is checked at load time
and guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .scalars import ONE
from .words import NCPoly, Word, word_gt, word_key, word_str

STEP_BUDGET = 10 ** 6


class RewriteBudgetError(RuntimeError):
    pass


class OrientationError(ValueError):
    pass


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: NCPoly

    def __str__(self) -> str:
        return f"{word_str(self.lhs)} -> {self.rhs}"


class RewriteSystem:
    """Immutable-after-load rule set with a memoised normal-form engine."""

    def __init__(self, rules: Sequence[RewriteRule], check_termination: bool = True):
        self.rules: Dict[Word, NCPoly] = {}
        for r in rules:
            if r.lhs in self.rules:
                raise OrientationError(f"duplicate rule LHS {word_str(r.lhs)}")
            self.rules[r.lhs] = r.rhs
        self.lhs_lengths = sorted({len(l) for l in self.rules}) or [2]
        if check_termination:
            self.check_termination()
        self._cache: Dict[Word, NCPoly] = {}
        self._steps = 0

    def check_termination(self) -> None:
        for lhs, rhs in self.rules.items():
            for w in rhs.terms:
                if not word_gt(lhs, w):
                    raise OrientationError(
                        f"rule {word_str(lhs)} -> ... does not decrease at word {word_str(w)}"
                    )

    # -- matching ---------------------------------------------------------
    def _find_redex(self, w: Word):
        n = len(w)
        for i in range(n):
            for L in self.lhs_lengths:
                if i + L > n:
                    break
                sub = w[i:i + L]
                rhs = self.rules.get(sub)
                if rhs is not None:
                    return i, L, rhs
        return None

    # -- normal form --------------------------------------------------------
    def nf_word(self, w: Word) -> NCPoly:
        cached = self._cache.get(w)
        if cached is not None:
            return cached
        # iterative DFS with memoisation; post-order combination
        stack: List[Word] = [w]
        while stack:
            cur = stack[-1]
            if cur in self._cache:
                stack.pop()
                continue
            red = self._find_redex(cur)
            if red is None:
                self._cache[cur] = NCPoly({cur: ONE})
                stack.pop()
                continue
            i, L, rhs = red
            pending = []
            ready = True
            for w2 in rhs.terms:
                child = cur[:i] + w2 + cur[i + L:]
                if child not in self._cache:
                    pending.append(child)
                    ready = False
            if not ready:
                self._steps += len(pending)
                if self._steps > STEP_BUDGET:
                    self._steps = 0
                    raise RewriteBudgetError(f"rewrite budget exceeded on word {word_str(w)}")
                stack.extend(pending)
                continue
            acc = NCPoly({})
            for w2, c2 in rhs.terms.items():
                child = cur[:i] + w2 + cur[i + L:]
                for w3, c3 in self._cache[child].terms.items():
                    acc.iadd_term(w3, c2 * c3)
            self._cache[cur] = acc
            stack.pop()
        self._steps = 0
        return self._cache[w]

    def nf(self, p: NCPoly) -> NCPoly:
        out = NCPoly({})
        for w, c in p.terms.items():
            for w2, c2 in self.nf_word(w).terms.items():
                out.iadd_term(w2, c * c2)
        return out

    def mul(self, p: NCPoly, r: NCPoly) -> NCPoly:
        return self.nf(p * r)

    def commutator(self, p: NCPoly, r: NCPoly) -> NCPoly:
        return self.nf(p * r - r * p)

    def is_normal_word(self, w: Word) -> bool:
        return self._find_redex(w) is None

    # -- reporting ----------------------------------------------------------
    def dump_rules(self) -> str:
        lines = [str(RewriteRule(l, r)) for l, r in self.rules.items()]
        lines.sort()
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# orientation: solve printed/expanded relation blocks for the bad products
# ---------------------------------------------------------------------------


def orient(relations: Sequence[NCPoly], unknowns: Sequence[Word]) -> List[RewriteRule]:
    """Solve a linear relation block for the given non-conforming words.

    Each relation is an NCPoly that must vanish.  Returns one rule per
    unknown, with right-hand sides supported on the remaining (conforming)
    words.  Raises OrientationError when the induced linear system is
    singular or inconsistent.
    """
    unknowns = list(unknowns)
    col = {w: j for j, w in enumerate(unknowns)}
    nu = len(unknowns)
    rows = []
    for rel in relations:
        lhs_row = [None] * nu
        rhs = NCPoly({})
        for w, c in rel.terms.items():
            j = col.get(w)
            if j is None:
                rhs.iadd_term(w, -c)
            else:
                lhs_row[j] = c if lhs_row[j] is None else lhs_row[j] + c
        rows.append(([c if c is not None else None for c in lhs_row], rhs))

    # Gaussian elimination over the Scalar field
    from .scalars import ZERO as SZERO

    mat = [[c if c is not None else SZERO for c in row] for row, _ in rows]
    rhss = [rhs for _, rhs in rows]
    nrows = len(mat)
    pivots: Dict[int, int] = {}
    rank = 0
    for j in range(nu):
        pr = None
        for i in range(rank, nrows):
            if not mat[i][j].is_zero():
                pr = i
                break
        if pr is None:
            continue
        mat[rank], mat[pr] = mat[pr], mat[rank]
        rhss[rank], rhss[pr] = rhss[pr], rhss[rank]
        inv = ONE / mat[rank][j]
        mat[rank] = [c * inv for c in mat[rank]]
        rhss[rank] = rhss[rank].scale(inv)
        for i in range(nrows):
            if i != rank and not mat[i][j].is_zero():
                f = mat[i][j]
                mat[i] = [ci - f * cj for ci, cj in zip(mat[i], mat[rank])]
                rhss[i] = rhss[i] - rhss[rank].scale(f)
        pivots[j] = rank
        rank += 1
    if len(pivots) != nu:
        missing = [word_str(w) for j, w in enumerate(unknowns) if j not in pivots]
        raise OrientationError(f"singular orientation system; unsolved products: {missing}")
    for i in range(rank, nrows):
        if not rhss[i].is_zero():
            raise OrientationError("inconsistent relation block")
    rules = []
    for j, w in enumerate(unknowns):
        rules.append(RewriteRule(w, rhss[pivots[j]]))
    return rules


# ---------------------------------------------------------------------------
# local confluence at overlap words, with optional completion
# ---------------------------------------------------------------------------


@dataclass
class ConfluenceReport:
    checked: int = 0
    nonjoinable: List[Tuple[Word, NCPoly]] = field(default_factory=list)
    completions: List[RewriteRule] = field(default_factory=list)

    @property
    def confluent(self) -> bool:
        return not self.nonjoinable


def _overlap_words(rules: Dict[Word, NCPoly], max_len: int):
    lhss = list(rules)
    seen = set()
    for l1 in lhss:
        for l2 in lhss:
            # suffix of l1 == prefix of l2, proper overlap
            for k in range(1, min(len(l1), len(l2))):
                if l1[len(l1) - k:] == l2[:k]:
                    w = l1 + l2[k:]
                    if len(w) <= max_len and w not in seen:
                        seen.add(w)
                        yield w, l1, l2
            # l2 inside l1
            if len(l2) < len(l1):
                for i in range(1, len(l1) - len(l2)):
                    if l1[i:i + len(l2)] == l2:
                        if l1 not in seen:
                            seen.add(l1)
                            yield l1, l1, l2


def confluence_check(system: RewriteSystem, max_overlap_len: int = 3,
                     complete: bool = False, max_rounds: int = 40) -> Tuple[RewriteSystem, ConfluenceReport]:
    """Check all overlap ambiguities up to the given length.

    With ``complete=True``, non-joinable differences are oriented into new
    rules (recorded in the report) until the check closes or the round cap
    is hit.
    """
    report = ConfluenceReport()
    rules = dict(system.rules)
    for _ in range(max_rounds):
        sys_now = RewriteSystem([RewriteRule(l, r) for l, r in rules.items()])
        found = []
        report.checked = 0
        for w, l1, l2 in _overlap_words(rules, max_overlap_len):
            report.checked += 1
            # reduce first with rule at position 0 (l1), then leftmost normal form
            r1 = rules[l1]
            p1 = NCPoly({})
            for w2, c2 in r1.terms.items():
                for w3, c3 in sys_now.nf_word(w2 + w[len(l1):]).terms.items():
                    p1.iadd_term(w3, c2 * c3)
            # reduce with the second rule occurrence
            i = len(w) - len(l2)
            r2 = rules[l2]
            p2 = NCPoly({})
            for w2, c2 in r2.terms.items():
                for w3, c3 in sys_now.nf_word(w[:i] + w2).terms.items():
                    p2.iadd_term(w3, c2 * c3)
            d = p1 - p2
            if not d.is_zero():
                found.append((w, d))
        if not found or not complete:
            report.nonjoinable = found
            return sys_now, report
        # orient each difference on its largest word and add as a rule
        for _, d in found:
            lead = max(d.terms, key=word_key)
            c = d.terms[lead]
            rhs = NCPoly({wt: -ct / c for wt, ct in d.terms.items() if wt != lead})
            if lead in rules:
                continue
            rule = RewriteRule(lead, rhs)
            rules[lead] = rhs
            report.completions.append(rule)
    sys_now = RewriteSystem([RewriteRule(l, r) for l, r in rules.items()])
    report.nonjoinable = found
    return sys_now, report
