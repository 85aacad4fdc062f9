"""Certified exponential envelopes and the named-inequality catalog.

Every singular modulus of discriminant delta and denominator a satisfies

    exp(pi sqrt(|delta|)/a) - 2079 <= |x| <= exp(pi sqrt(|delta|)/a) + 2079,

and when the conductor of delta exceeds the conductor g of another modulus x
with the same fundamental part,

    |x| <= 0.005 exp(pi sqrt(|delta|)) + 2079.

Combining these envelopes with a linear relation between singular moduli
forces the leading |delta| below an explicit constant.  Each such forcing
step is recorded here as a catalog entry whose predicate is normalised to

    R(d) >= 1,   R(d) = max over branches of sums of terms
                 coef * sqrt(d)^s * exp(pi sqrt(boost)) * exp(-rate pi sqrt(d)),

with coef > 0, rate > 0 and s in {0, 1}.  Every such term is strictly
decreasing for d >= 1 (the derivative of (s/2) log d - rate pi sqrt(d) is
negative once sqrt(d) > s / (rate pi), and s / (rate pi) < 1 for all catalog
entries), so R is decreasing, the satisfying set is an initial segment of the
integers, and the largest satisfying d is found by certified bisection.

threshold_max solves over all positive integers, not only discriminant
residues; the stored claimed constant is an upper bound to compare against,
not a value to reproduce exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .discriminants import factor_discriminant
from .errors import (
    DepthExhausted,
    Indeterminate,
    NoSmallerConductor,
    UnknownInequality,
)
from .intervals import CInt, IntervalContext, RInt
from .jfun import DEFAULT_PRECISION, CertifiedValue

ENVELOPE_CONSTANT = 2079
SMALL_CONDUCTOR_FACTOR = (1, 200)  # 0.005 as an exact fraction


def _real_value(cx: IntervalContext, r: RInt, prec: int) -> CertifiedValue:
    return CertifiedValue(CInt(r, cx.exact(0)), prec)


def bdsing_interval(delta, a: int, precision_bits: int = 128):
    """Certified [exp(pi sqrt(|delta|)/a) - 2079, ... + 2079] envelope."""
    if a < 1:
        raise ValueError("denominator must be a positive integer")
    d = factor_discriminant(delta)
    cx = IntervalContext(precision_bits)
    core = cx.exp(cx.div(cx.mul(cx.pi(), cx.sqrt_int(d.abs_value)), cx.exact(a)))
    lower = cx.sub(core, cx.exact(ENVELOPE_CONSTANT))
    upper = cx.add(core, cx.exact(ENVELOPE_CONSTANT))
    return (
        _real_value(cx, lower, precision_bits),
        _real_value(cx, upper, precision_bits),
    )


def bdfund_upper(delta, precision_bits: int = 128) -> CertifiedValue:
    """Upper bound for any modulus of smaller conductor, same fundamental part.

    Only meaningful when delta itself has conductor at least 2.
    """
    d = factor_discriminant(delta)
    if d.conductor < 2:
        raise NoSmallerConductor(
            f"{d.value} has conductor 1; no smaller-conductor modulus exists"
        )
    cx = IntervalContext(precision_bits)
    core = cx.exp(cx.mul(cx.pi(), cx.sqrt_int(d.abs_value)))
    bound = cx.add(
        cx.mul(cx.fraction(*SMALL_CONDUCTOR_FACTOR), core),
        cx.exact(ENVELOPE_CONSTANT),
    )
    return _real_value(cx, bound, precision_bits)


# ---------------------------------------------------------------------------
# the threshold catalog


@dataclass(frozen=True)
class Term:
    """coef * sqrt(d)^s * exp(pi sqrt(boost)) * exp(-rate * pi * sqrt(d))."""

    coef: Fraction
    rate: Fraction
    sqrt_arg: bool = False
    boost: int = 0

    def __post_init__(self):
        assert self.coef > 0 and self.rate > 0
        # Guarantees monotone decrease on d >= 1; see module docstring.
        assert not self.sqrt_arg or self.rate >= Fraction(1, 3)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    claimed: int
    description: str
    branches: tuple[tuple[Term, ...], ...] = ()
    derived: Optional[Callable[[], int]] = None


def _t(coef, rate, sqrt_arg=False, boost=0) -> Term:
    return Term(Fraction(coef), Fraction(rate), sqrt_arg, boost)


_E = ENVELOPE_CONSTANT  # 2079


def _branch(*terms: Term) -> tuple[tuple[Term, ...], ...]:
    return (tuple(terms),)


THRESHOLD_CATALOG: dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry) -> None:
    THRESHOLD_CATALOG[entry.id] = entry


_register(CatalogEntry(
    id="none_dominant",
    claimed=8,
    description="largest |d1| where a dominant modulus can equal a sum of "
                "three denominator >= 2 moduli of discriminants at most d1",
    branches=_branch(_t(3, Fraction(1, 2)), _t(4 * _E, 1)),
))
_register(CatalogEntry(
    id="one_dominant",
    claimed=10,
    description="largest |d1| compatible with exactly one dominant modulus "
                "among the three right-hand terms",
    branches=_branch(_t(2, Fraction(1, 2), sqrt_arg=True), _t(4 * _E, 1, sqrt_arg=True)),
))
_register(CatalogEntry(
    id="two_dominant_same_fund",
    claimed=8,
    description="largest |d1| when both dominant right-hand moduli share the "
                "fundamental discriminant of d1 (small-conductor envelope)",
    branches=_branch(
        _t(Fraction(100, 99), Fraction(1, 2)),
        _t(Fraction(4 * _E * 100, 99), 1),
    ),
))
_register(CatalogEntry(
    id="triple_same_fund",
    claimed=8,
    description="largest |d2| in the doubled relation when both discriminants "
                "share a fundamental part, via the 9/4 conductor gap",
    branches=_branch(_t(2, Fraction(1, 3)), _t(1, Fraction(1, 2)), _t(4 * _E, 1)),
))
_register(CatalogEntry(
    id="conjugate_scale_pair",
    claimed=3,
    description="largest |d| where a conjugate swap between discriminants d "
                "and 4d stays consistent; must fall below the least "
                "discriminant magnitude 3",
    branches=_branch(_t(3, 1), _t(4 * _E, 2)),
))
_register(CatalogEntry(
    id="two_dominant_conjugate_elim",
    claimed=10,
    description="largest |d1| after eliminating the shared dominant pair "
                "through a fixing automorphism",
    branches=_branch(_t(2, Fraction(1, 2), sqrt_arg=True), _t(4 * _E, 1, sqrt_arg=True)),
))
_register(CatalogEntry(
    id="two_dominant_fund_bound",
    claimed=3,
    description="largest fundamental |D1| surviving the conductor >= 2 "
                "envelope comparison 1/(8 sqrt(D)) <= 2 e^{-pi sqrt(D)} + "
                "8316 e^{-2 pi sqrt(D)}",
    branches=_branch(_t(16, 1, sqrt_arg=True), _t(8 * 4 * _E, 2, sqrt_arg=True)),
))
_register(CatalogEntry(
    id="two_dominant_fund_cap",
    claimed=192,
    description="cap f^2 |D| with conductor at most 8 and fundamental part "
                "at most 3 in magnitude",
    derived=lambda: 8 * 8 * threshold_max("two_dominant_fund_bound"),
))
_register(CatalogEntry(
    id="dstar_mixed",
    claimed=7638,
    description="largest |d1| when one right-hand dominant is capped at the "
                "2-elementary magnitude 7392",
    branches=_branch(
        _t(1, 1, sqrt_arg=True, boost=7392),
        _t(1, Fraction(1, 2), sqrt_arg=True),
        _t(4 * _E, 1, sqrt_arg=True),
    ),
))
_register(CatalogEntry(
    id="dstar_final",
    claimed=22,
    description="largest fundamental |D| surviving 1/(60 sqrt(D)) <= "
                "8317 e^{-pi sqrt(D)} + e^{-pi sqrt(D)/2}",
    branches=_branch(
        _t(60 * 8317, 1, sqrt_arg=True),
        _t(60, Fraction(1, 2), sqrt_arg=True),
    ),
))
_register(CatalogEntry(
    id="case1_total",
    claimed=7429,
    description="largest |d1| when the two dominant right-hand moduli are "
                "2-elementary hence at most 7392 in magnitude",
    branches=_branch(
        _t(2, 1, boost=7392),
        _t(1, Fraction(1, 2)),
        _t(4 * _E, 1),
    ),
))
_register(CatalogEntry(
    id="case2_total",
    claimed=7638,
    description="largest |d1| with one 2-elementary dominant capped at 7392 "
                "and the non-dominant absorbed by the sqrt(d) gap",
    branches=_branch(
        _t(1, 1, sqrt_arg=True, boost=7392),
        _t(1, Fraction(1, 2), sqrt_arg=True),
        _t(4 * _E, 1, sqrt_arg=True),
    ),
))
_register(CatalogEntry(
    id="case5_total",
    claimed=7392,
    description="largest |d1| where a same-fundamental dominant plus a "
                "capped 2-elementary dominant can reach the leading modulus",
    branches=_branch(
        _t(Fraction(200, 199), 1, boost=7392),
        _t(Fraction(200, 199), Fraction(1, 2)),
        _t(Fraction(4 * _E * 200, 199), 1),
    ),
))
_register(CatalogEntry(
    id="case7_distinct_k",
    claimed=9,
    description="largest |d1| when the non-dominant eliminations leave one "
                "denominator >= 2 term and four small-conductor terms",
    branches=_branch(
        _t(Fraction(100, 98), Fraction(1, 2)),
        _t(Fraction(6 * _E * 100, 98), 1),
    ),
))
_register(CatalogEntry(
    id="case7_fixed_k",
    claimed=8,
    description="largest |d1| when the swapped term is fixed and two "
                "small-conductor terms remain",
    branches=_branch(
        _t(Fraction(100, 99), Fraction(1, 2)),
        _t(Fraction(4 * _E * 100, 99), 1),
    ),
))
_register(CatalogEntry(
    id="case7_nondominant_k",
    claimed=9,
    description="largest |d1| with three denominator >= 2 terms and two "
                "small-conductor terms",
    branches=_branch(
        _t(Fraction(300, 99), Fraction(1, 2)),
        _t(Fraction(6 * _E * 100, 99), 1),
    ),
))
_register(CatalogEntry(
    id="case7_positive_sign",
    claimed=7,
    description="largest |d1| when the swapped dominant adds rather than "
                "cancels, doubling the leading envelope",
    branches=_branch(
        _t(Fraction(2 * 100, 199), Fraction(1, 2)),
        _t(Fraction(6 * _E * 100, 199), 1),
    ),
))
_register(CatalogEntry(
    id="case7_swapped",
    claimed=8,
    description="largest |d1| for the rearranged relation between the "
                "swapped dominant and two small-conductor terms",
    branches=_branch(
        _t(Fraction(100, 99), Fraction(1, 2)),
        _t(Fraction(4 * _E * 100, 99), 1),
    ),
))
_register(CatalogEntry(
    id="case7_conjugate_pair_cap",
    claimed=11,
    description="cap on max(|di|, |dk|) for the conjugate swap inside the "
                "two-dominant elimination",
    branches=_branch(_t(3, Fraction(1, 2)), _t(4 * _E, 1)),
))
_register(CatalogEntry(
    id="same_fund_gap_decay",
    claimed=12,
    description="largest d where 1/sqrt(d) - e^{-pi sqrt(d)/2} - 8316 "
                "e^{-pi sqrt(d)} dips below 1/(2 sqrt(d))",
    branches=_branch(
        _t(2, Fraction(1, 2), sqrt_arg=True),
        _t(2 * 4 * _E, 1, sqrt_arg=True),
    ),
))
_register(CatalogEntry(
    id="dstar_ratio_gap",
    claimed=3,
    description="largest fundamental |D| with 120 sqrt(D) e^{-pi sqrt(D)} "
                ">= 1; must fall below the least fundamental magnitude 3",
    branches=_branch(_t(120, 1, sqrt_arg=True)),
))
_register(CatalogEntry(
    id="all_dominant_same_fund",
    claimed=8,
    description="largest |d1| when all four dominants share one fundamental "
                "discriminant (three small-conductor envelopes)",
    branches=_branch(_t(Fraction(4 * _E * 200, 197), 1)),
))
_register(CatalogEntry(
    id="all_dominant_not2elem",
    claimed=9,
    description="largest |d1| after eliminating a non-2-elementary leading "
                "discriminant against two same-fundamental dominants",
    branches=_branch(
        _t(Fraction(100, 98), Fraction(1, 2)),
        _t(Fraction(6 * _E * 100, 98), 1),
    ),
))
_register(CatalogEntry(
    id="all_dominant_dstar",
    claimed=7452,
    description="largest |d1| when each remaining dominant is either capped "
                "at 7392 or has a small conductor over the same fundamental "
                "part; branches cover the case split",
    branches=(
        # k capped terms and 3 - k small-conductor terms, k = 3, 2, 1, 0:
        # (1 - 0.005 (3 - k)) e^{pi sqrt d} <= k e^{pi sqrt 7392} + 4 * 2079.
        (_t(3, 1, boost=7392), _t(4 * _E, 1)),
        (_t(Fraction(2 * 200, 199), 1, boost=7392), _t(Fraction(4 * _E * 200, 199), 1)),
        (_t(Fraction(100, 99), 1, boost=7392), _t(Fraction(4 * _E * 100, 99), 1)),
        (_t(Fraction(4 * _E * 200, 197), 1),),
    ),
))


def _entry(id: str) -> CatalogEntry:
    entry = THRESHOLD_CATALOG.get(id)
    if entry is None:
        raise UnknownInequality(f"no threshold catalog entry named {id!r}")
    return entry


def _branch_value(cx: IntervalContext, terms: Sequence[Term], d: int) -> RInt:
    pi = cx.pi()
    sq = cx.sqrt_int(d)
    total = cx.exact(0)
    for t in terms:
        boost = cx.sqrt_int(t.boost) if t.boost else cx.exact(0)
        exponent = cx.mul(
            pi,
            cx.sub(boost, cx.mul(cx.fraction(t.rate.numerator, t.rate.denominator), sq)),
        )
        val = cx.mul(cx.fraction(t.coef.numerator, t.coef.denominator), cx.exp(exponent))
        if t.sqrt_arg:
            val = cx.mul(val, sq)
        total = cx.add(total, val)
    return total


def _holds_at(entry: CatalogEntry, d: int, precision_bits: int) -> bool:
    """Certified R(d) >= 1; raises Indeterminate if straddling."""
    cx = IntervalContext(precision_bits)
    one = cx.exact(1)
    best_hi_below = True
    for terms in entry.branches:
        val = _branch_value(cx, terms, d)
        if val.lo >= 1:
            return True
        if not val.hi < 1:
            best_hi_below = False
    if best_hi_below:
        return False
    raise Indeterminate(f"{entry.id} straddles 1 at d = {d}, prec {precision_bits}")


def _holds_escalating(entry: CatalogEntry, d: int, precision_bits: int, cap: int) -> bool:
    prec = precision_bits
    while True:
        try:
            return _holds_at(entry, d, prec)
        except Indeterminate:
            if prec >= cap:
                raise
            prec = min(2 * prec, cap)


def threshold_max(
    id: str,
    precision_bits: int = 192,
    precision_cap: int = 8192,
) -> int:
    """Largest integer d >= 1 satisfying the named inequality (0 if none).

    Monotone decrease of R makes the satisfying set an initial segment, so
    bisection between a certified-true and a certified-false point is exact.
    """
    entry = _entry(id)
    if entry.derived is not None:
        return entry.derived()

    def holds(d: int) -> bool:
        return _holds_escalating(entry, d, precision_bits, precision_cap)

    if not holds(1):
        return 0
    hi = max(4, 2 * entry.claimed)
    while holds(hi):
        hi *= 2
        if hi > 1 << 40:
            raise AssertionError(f"{id}: no certified failure point found")
    lo = 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(mid):
            lo = mid
        else:
            hi = mid
    # Local re-verification of the boundary pair.
    assert holds(lo) and not holds(lo + 1)
    return lo


def catalog_ids() -> list[str]:
    return list(THRESHOLD_CATALOG)


def claimed_bound(id: str) -> int:
    return _entry(id).claimed


# ---------------------------------------------------------------------------
# multi-argument certified inequalities


@dataclass(frozen=True)
class Inequality:
    id: str
    arity: int
    description: str
    # margin(cx, args): certified-positive means the inequality holds.
    margin: Callable[[IntervalContext, Sequence[int]], RInt] = field(repr=False, default=None)
    strict: bool = True


def _env_term(cx: IntervalContext, d: int, denom: int = 1) -> RInt:
    return cx.exp(cx.div(cx.mul(cx.pi(), cx.sqrt_int(d)), cx.exact(denom)))


def _fourdisc_rhs(cx: IntervalContext, args, last_denom: int) -> RInt:
    d1, di, dj, dk = args
    rhs = cx.add(_env_term(cx, di), _env_term(cx, dj))
    rhs = cx.add(rhs, _env_term(cx, dk, last_denom))
    return cx.add(rhs, cx.exact(4 * ENVELOPE_CONSTANT))


def _m_fourdisc1(cx, args):
    # holds: e^{pi sqrt(d1)} - 2079 > sum of three envelopes
    return cx.sub(_env_term(cx, args[0]), _fourdisc_rhs(cx, args, 2))


def _m_fourdisc2(cx, args):
    # holds: e^{pi sqrt(d1)} - 2079 <= sum of three envelopes
    return cx.sub(_fourdisc_rhs(cx, args, 2), _env_term(cx, args[0]))


def _m_fourdisc3(cx, args):
    return cx.sub(_fourdisc_rhs(cx, args, 1), _env_term(cx, args[0]))


def _m_case5_margin(cx, args):
    # 0.995 - e^{-pi sqrt(19)/2} - 8316 e^{-pi sqrt(19)} > 0.9845
    pi = cx.pi()
    s19 = cx.sqrt_int(19)
    val = cx.sub(cx.fraction(995, 1000), cx.exp(cx.neg(cx.div(cx.mul(pi, s19), cx.exact(2)))))
    val = cx.sub(val, cx.mul_int(cx.exp(cx.neg(cx.mul(pi, s19))), 4 * ENVELOPE_CONSTANT))
    return cx.sub(val, cx.fraction(9845, 10000))


def _m_case5_log(cx, args):
    # -log(0.9845)/pi < 0.005
    val = cx.div(cx.neg(cx.log(cx.fraction(9845, 10000))), cx.pi())
    return cx.sub(cx.fraction(*SMALL_CONDUCTOR_FACTOR), val)


INEQUALITIES: dict[str, Inequality] = {
    ineq.id: ineq
    for ineq in (
        Inequality(
            "fourdisc1", 4,
            "leading envelope strictly exceeds two dominant envelopes plus "
            "one denominator-2 envelope", _m_fourdisc1,
        ),
        Inequality(
            "fourdisc2", 4,
            "leading envelope is reachable by two dominant envelopes plus "
            "one denominator-2 envelope", _m_fourdisc2, strict=False,
        ),
        Inequality(
            "fourdisc3", 4,
            "leading envelope is reachable by three dominant envelopes",
            _m_fourdisc3, strict=False,
        ),
        Inequality("case5_margin", 0, "decay margin at |d| = 19 exceeds 0.9845",
                   _m_case5_margin),
        Inequality("case5_log_margin", 0, "-log(0.9845)/pi is below 0.005",
                   _m_case5_log),
    )
}


def inequality_holds(
    id: str,
    args: Sequence[int] = (),
    precision_bits: int = 128,
) -> bool:
    """Certified truth value of a named inequality at integer arguments.

    Raises Indeterminate when the margin enclosure straddles zero; verdicts
    never flip under higher precision, only Indeterminate resolves.
    """
    ineq = INEQUALITIES.get(id)
    if ineq is None:
        raise UnknownInequality(f"no inequality named {id!r}")
    if len(args) != ineq.arity:
        raise ValueError(f"{id} takes {ineq.arity} arguments, got {len(args)}")
    cx = IntervalContext(precision_bits)
    margin = ineq.margin(cx, list(args))
    if margin.lo > 0 or (not ineq.strict and margin.lo >= 0):
        return True
    if margin.hi < 0 or (ineq.strict and margin.hi <= 0):
        return False
    raise Indeterminate(f"{id}{tuple(args)} straddles zero at prec {precision_bits}")


def inequality_holds_escalating(
    id: str,
    args: Sequence[int] = (),
    precision_bits: int = 128,
    precision_cap: int = 8192,
) -> bool:
    prec = precision_bits
    while True:
        try:
            return inequality_holds(id, args, prec)
        except Indeterminate:
            if prec >= precision_cap:
                raise
            prec = min(2 * prec, precision_cap)


# ---------------------------------------------------------------------------
# the direct [2, 5] gap certificate


def _small_gap_margin(cx: IntervalContext, x: RInt) -> RInt:
    """e^{pi sqrt(x)} - e^{pi sqrt(x-1)} - e^{pi sqrt(x)}/sqrt(x) over x."""
    pi = cx.pi()
    sq = cx.sqrt(x)
    lead = cx.exp(cx.mul(pi, sq))
    prev = cx.exp(cx.mul(pi, cx.sqrt(cx.sub(x, cx.exact(1)))))
    return cx.sub(cx.sub(lead, prev), cx.div(lead, sq))


def verify_small_lemma(
    lo: int = 2,
    hi: int = 5,
    max_depth: int = 48,
    precision_bits: int = 128,
    reverse: bool = False,
):
    """Certify the exponential gap inequality on [lo, hi] by subdivision.

    The claim: e^{pi sqrt(d)} - e^{pi sqrt(d-1)} > e^{pi sqrt(d)}/sqrt(d) for
    every real d in [lo, hi].  Also spot-certifies the closed-form route
    pi/2 - pi^2/(8 sqrt(x)) > 1 used beyond hi, at sample points.

    Returns a Verdict whose refuted flag means "the violation region is
    certified empty"; with reverse=True the reversed inequality is tested
    instead (it must fail).  Raises DepthExhausted if subdivision cannot
    separate within max_depth.
    """
    from .reports import Verdict

    if lo < 2:
        raise ValueError("the gap inequality is only claimed for d >= 2")
    cx = IntervalContext(precision_bits)

    def margin(x: RInt) -> RInt:
        m = _small_gap_margin(cx, x)
        return cx.neg(m) if reverse else m

    min_margin = None
    stack = [(Fraction(lo), Fraction(hi), 0)]
    while stack:
        u, v, depth = stack.pop()
        box = RInt(cx.fraction(u.numerator, u.denominator).lo,
                   cx.fraction(v.numerator, v.denominator).hi)
        val = margin(box)
        if val.lo > 0:
            if min_margin is None or val.lo < min_margin:
                min_margin = val.lo
            continue
        if val.hi < 0:
            # A whole subinterval certifiably violates the inequality.
            return Verdict(refuted=False, margin=float(val.hi), precision_bits=precision_bits)
        if depth >= max_depth:
            raise DepthExhausted(
                f"cannot separate the gap inequality on [{float(u)}, {float(v)}]"
            )
        mid = (u + v) / 2
        stack.append((u, mid, depth + 1))
        stack.append((mid, v, depth + 1))

    if not reverse:
        # Closed-form tail: pi/2 - pi^2/(8 sqrt(x)) > 1 at spot points x >= 5.
        pi = cx.pi()
        for x in (5, 8, 13, 100, 7392, 10**6):
            val = cx.sub(
                cx.div(pi, cx.exact(2)),
                cx.div(cx.mul(pi, pi), cx.mul_int(cx.sqrt_int(x), 8)),
            )
            if not val.lo > 1:
                return Verdict(refuted=False, margin=float(val.lo) - 1.0,
                               precision_bits=precision_bits)
    return Verdict(
        refuted=True,
        margin=float(min_margin) if min_margin is not None else 0.0,
        precision_bits=precision_bits,
    )
