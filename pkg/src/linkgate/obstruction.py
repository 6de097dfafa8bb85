"""Polynomial-level concordance obstructions.

Two questions are decided exactly (within the factorization budget):

* is ``Δ ≐ f·f̄`` for some ``f`` with ``|f(1,…,1)| = 1``  (norm test), and
* are there ``f0, f1`` with ``|f_i(1,…,1)| = 1`` and
  ``Δ0·f0·f̄0 ≐ Δ1·f1·f̄1``  (pair test).

Both reduce to bookkeeping on irreducible factors because Λ_μ is a UFD.
A factor ``π`` with ``|π(1,…,1)| ≠ 1`` can never occur in an admissible
``f``, so such factors and the integer content must already match.
"""

from dataclasses import dataclass, field
from math import isqrt

from .errors import FactorizationUnavailable, PreconditionError, UNLIMITED
from .laurent import (
    DEFAULT_FACTOR_BUDGET,
    LaurentPoly,
    associated,
    canonical,
    evaluate,
    factor,
    format_poly,
    involve,
)

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

OBSTRUCTED = "OBSTRUCTED"
PASSES_ABELIAN = "PASSES_ABELIAN"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class NormVerdict:
    """``status`` is yes/no/unknown; ``witness`` is set for yes.

    For the pair test ``witness`` is the tuple ``(f0, f1)``.
    """

    status: str
    witness: object = None
    reason: str = ""

    @property
    def is_yes(self):
        return self.status == YES


def _ones(n):
    return (1,) * n


def _is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def _conj(p):
    return canonical(involve(p))


def verify_norm_certificate(delta, f):
    """True iff ``delta ≐ f·f̄`` and ``|f(1,…,1)| = 1``."""
    if delta.nvars != f.nvars:
        return False
    if abs(evaluate(f, _ones(f.nvars))) != 1:
        return False
    return associated(delta, f * involve(f))


def verify_pair_certificate(delta0, delta1, f0, f1):
    for f in (f0, f1):
        if abs(evaluate(f, _ones(f.nvars))) != 1:
            return False
    return associated(delta0 * f0 * involve(f0), delta1 * f1 * involve(f1))


@dataclass(frozen=True)
class ConditionReport:
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())


def necessary_conditions(delta):
    """Cheap consequences of ``Δ ≐ f f̄`` with ``|f(1,…,1)| = 1``.

    * ``|Δ(1,…,1)| = 1``
    * ``Δ(-1,…,-1)`` is plus or minus a perfect square
    * ``Δ ≐ Δ̄``
    """
    if not delta:
        raise PreconditionError("norm conditions need a nonzero polynomial")
    n = delta.nvars
    at_one = evaluate(delta, _ones(n))
    at_minus = evaluate(delta, (-1,) * n)
    checks = {
        "unit_at_one": abs(at_one) == 1,
        "square_at_minus_one": at_minus.denominator == 1 and _is_square(abs(at_minus.numerator)),
        "symmetric": associated(delta, involve(delta)),
    }
    return ConditionReport(checks)


def _factor_or_none(p, limits):
    try:
        return factor(p, limits), None
    except FactorizationUnavailable as exc:
        return None, str(exc)


def _multiset(facs):
    return {f: k for f, k in facs}


def _balance(m0, m1, nvars):
    """Build ``(f0, f1)`` balancing two factor multisets, or return a reason for failure.

    ``m0`` and ``m1`` map canonical irreducibles to multiplicities.
    """
    f0 = LaurentPoly.one(nvars)
    f1 = LaurentPoly.one(nvars)
    ones = _ones(nvars)
    seen = set()
    keys = sorted(set(m0) | set(m1), key=lambda p: (p.degree_span(), len(p), str(p)))
    for p in keys:
        if p in seen:
            continue
        q = _conj(p)
        seen.add(p)
        seen.add(q)
        d = m1.get(p, 0) - m0.get(p, 0)
        usable = abs(evaluate(p, ones)) == 1
        if q == p:
            if d == 0:
                continue
            if not usable:
                return None, f"factor {format_poly(p)} with |value at 1| != 1 has unmatched multiplicity"
            if d % 2:
                return None, f"self-conjugate factor {format_poly(p)} has odd excess multiplicity {abs(d)}"
            if d > 0:
                f0 = f0 * p ** (d // 2)
            else:
                f1 = f1 * p ** (-d // 2)
            continue
        dq = m1.get(q, 0) - m0.get(q, 0)
        if d == 0 and dq == 0:
            continue
        if not usable:
            return None, f"factor {format_poly(p)} with |value at 1| != 1 has unmatched multiplicity"
        if d != dq:
            return None, (
                f"factor {format_poly(p)} and its conjugate {format_poly(q)} "
                f"have unequal excess multiplicities {d} and {dq}"
            )
        # p precedes q in the sort order, so p is the deterministic choice
        if d > 0:
            f0 = f0 * p ** d
        else:
            f1 = f1 * p ** (-d)
    return (f0, f1), None


def exact_norm_test(delta, limits=DEFAULT_FACTOR_BUDGET):
    """Decide ``Δ ≐ f f̄`` with ``|f(1,…,1)| = 1``; Unknown past the factor budget."""
    if not delta:
        raise PreconditionError("norm test needs a nonzero polynomial")
    n = delta.nvars
    if abs(evaluate(delta, _ones(n))) != 1:
        return NormVerdict(NO, reason="|Δ(1,…,1)| != 1")
    fac, why = _factor_or_none(delta, limits)
    if fac is None:
        return NormVerdict(UNKNOWN, reason=why)
    content, facs = fac
    if content != 1:
        return NormVerdict(NO, reason=f"integer content {content} cannot come from f with |f(1,…,1)| = 1")
    pair, why = _balance({}, _multiset(facs), n)
    if pair is None:
        return NormVerdict(NO, reason=why)
    f = canonical(pair[0])
    if not verify_norm_certificate(delta, f):
        raise AssertionError("assembled norm witness failed verification")
    return NormVerdict(YES, witness=f)


def pair_test(delta0, delta1, limits=DEFAULT_FACTOR_BUDGET):
    """Decide whether ``Δ0 f0 f̄0 ≐ Δ1 f1 f̄1`` has a solution with ``|f_i(1,…,1)| = 1``."""
    if not delta0 or not delta1:
        raise PreconditionError("pair test needs nonzero polynomials")
    if delta0.nvars != delta1.nvars:
        raise PreconditionError(
            f"variable counts differ: {delta0.nvars} vs {delta1.nvars}"
        )
    n = delta0.nvars
    a0 = abs(evaluate(delta0, _ones(n)))
    a1 = abs(evaluate(delta1, _ones(n)))
    if a0 != a1:
        return NormVerdict(NO, reason=f"|Δ0(1,…,1)| = {a0} differs from |Δ1(1,…,1)| = {a1}")
    fac0, why0 = _factor_or_none(delta0, limits)
    fac1, why1 = _factor_or_none(delta1, limits)
    if fac0 is None or fac1 is None:
        return NormVerdict(UNKNOWN, reason=why0 or why1)
    c0, facs0 = fac0
    c1, facs1 = fac1
    if c0 != c1:
        return NormVerdict(NO, reason=f"integer contents {c0} and {c1} differ")
    pair, why = _balance(_multiset(facs0), _multiset(facs1), n)
    if pair is None:
        return NormVerdict(NO, reason=why)
    f0, f1 = canonical(pair[0]), canonical(pair[1])
    if not verify_pair_certificate(delta0, delta1, f0, f1):
        raise AssertionError("assembled pair witness failed verification")
    return NormVerdict(YES, witness=(f0, f1))


@dataclass(frozen=True)
class HopfReport:
    """Outcome of comparing a 2-component link with the Hopf link."""

    link: str
    rank: object
    torsion_poly: LaurentPoly
    norm: NormVerdict
    necessary: ConditionReport

    @property
    def rank_zero(self):
        return self.rank == 0

    @property
    def verdict(self):
        if not self.rank_zero or self.norm.status == NO:
            return OBSTRUCTED
        if self.norm.status == UNKNOWN:
            return INCONCLUSIVE
        return PASSES_ABELIAN

    def to_dict(self):
        witness = self.norm.witness
        return {
            "link": self.link,
            "rank": self.rank,
            "torsion_poly": format_poly(self.torsion_poly),
            "norm_status": self.norm.status,
            "witness": None if witness is None else format_poly(witness),
            "reason": self.norm.reason or None,
            "checks": dict(self.necessary.checks, rank_zero=self.rank_zero),
            "verdict": self.verdict,
        }


def hopf_test_poly(delta, rank=0, link="poly", limits=DEFAULT_FACTOR_BUDGET):
    """Hopf comparison on a stored torsion polynomial (rank supplied by the caller)."""
    if not delta:
        raise PreconditionError("torsion polynomial must be nonzero")
    return HopfReport(link, rank, canonical(delta), exact_norm_test(delta, limits),
                      necessary_conditions(delta))


def hopf_test(D, link="diagram", limits=DEFAULT_FACTOR_BUDGET, budget=UNLIMITED):
    """Abelian obstructions to L being height-3 Whitney-tower concordant to the Hopf link."""
    from .alexander import fox_matrix, h1_rank, torsion_alexander
    from .link_codec import linking_matrix
    from .presentation import wirtinger

    if D.num_components != 2:
        raise PreconditionError(f"Hopf comparison needs 2 components, got {D.num_components}")
    lk = int(linking_matrix(D)[0, 1])
    if lk != 1:
        raise PreconditionError(f"Hopf comparison needs linking number 1, got {lk}")
    P, _, mmap = wirtinger(D)
    J = fox_matrix(P, mmap)
    rank = h1_rank(J)
    delta = torsion_alexander(J, budget)
    return hopf_test_poly(delta, rank, link, limits)
