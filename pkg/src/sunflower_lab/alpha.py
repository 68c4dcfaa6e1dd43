"""The pairwise-equal-intersection probability, bound evaluators, and checkers.

``alpha_exact`` is the exact probability that r independent uniform draws
(with replacement) from a family have pairwise equal intersections; the
Monte-Carlo twin is chunk-seeded so its output depends only on (seed, trials),
never on scheduling.  ``evaluate_bound`` computes every catalogued closed-form
bound in exact big-integer / rational arithmetic; the two bounds that divide
by e carry a certified rational enclosure instead of a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .dimensions import ls_dimension, sauer_shelah_capacity, vc_dimension
from .errors import EmptyFamilyError, ParameterError
from .family import (
    SetFamily,
    count_sunflower_tuples,
    find_sunflower,
    lambda_number,
    packing_number,
    popular_element,
    transversal_number,
)
from .rng import seeded_rng

# certified enclosure of 1/e, used wherever a bound divides by e
INV_E_LO = Fraction("0.36787944117144232")
INV_E_HI = Fraction("0.36787944117144233")

_MC_CHUNK = 4096


@dataclass(frozen=True)
class AlphaEstimate:
    """Exact and/or sampled value of the pairwise-equal-intersection probability."""

    r: int
    m: int
    exact: Optional[Fraction] = None
    estimate: Optional[float] = None
    trials: Optional[int] = None
    seed: Optional[int] = None


def alpha_exact(family: SetFamily, r: int, budget: int | None = None) -> Fraction:
    """Exact probability that r uniform with-replacement draws have pairwise
    equal intersections: the sunflower tuple count over m^r."""
    if family.m == 0:
        raise EmptyFamilyError("alpha_exact needs a nonempty family")
    count = count_sunflower_tuples(family, r, budget=budget)
    return Fraction(count, family.m**r)


def alpha_monte_carlo(
    family: SetFamily, r: int, trials: int, seed: int = 0
) -> AlphaEstimate:
    """Unbiased sampled estimate, deterministic given (seed, trials).

    Trials are split into fixed-size chunks, each with its own derived seed,
    so any partition of chunks over workers reproduces the same total.
    """
    if family.m == 0:
        raise EmptyFamilyError("alpha_monte_carlo needs a nonempty family")
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    if r < 2:
        raise ParameterError("alpha_monte_carlo requires r >= 2")
    masks = family.masks
    m = family.m
    successes = 0
    chunk_count = (trials + _MC_CHUNK - 1) // _MC_CHUNK
    for chunk in range(chunk_count):
        size = min(_MC_CHUNK, trials - chunk * _MC_CHUNK)
        rng = seeded_rng("alpha-mc", seed, chunk)
        randrange = rng.randrange
        for _ in range(size):
            draw = [masks[randrange(m)] for _ in range(r)]
            core = draw[0] & draw[1]
            good = True
            for a in range(r):
                for b in range(a + 1, r):
                    if draw[a] & draw[b] != core:
                        good = False
                        break
                if not good:
                    break
            if good:
                successes += 1
    return AlphaEstimate(
        r=r, m=m, estimate=successes / trials, trials=trials, seed=seed
    )


def log_star(k: int) -> int:
    """Iterated base-2 logarithm count: least i with the i-fold log of k <= 2.

    Compares k against the tower 2, 4, 16, 65536, ... in exact integer
    arithmetic; bit-length comparisons keep every intermediate no larger
    than k itself, so arbitrarily big inputs are fine.
    """
    if k < 1:
        raise ParameterError("log_star needs k >= 1")
    i = 0
    tower = 2
    while True:
        if k <= tower:
            return i
        i += 1
        # is k <= 2**tower, without materializing that power?
        bits = k.bit_length() - 1
        if bits < tower or (bits == tower and k == 1 << tower):
            return i
        tower = 1 << tower  # safe: k > 2**tower, so this is no bigger than k


# ---------------------------------------------------------------------------
# bound catalog


@dataclass(frozen=True)
class BoundValue:
    """One evaluated closed-form bound.

    ``value`` is the exact rational part; when ``over_e`` is set the true
    value is ``value / e`` and ``interval`` is a certified rational enclosure
    of it (otherwise the interval is degenerate at ``value``).  ``asymptotic``
    marks forms evaluated without their vanishing correction term.
    """

    bound_id: str
    params: tuple[tuple[str, int], ...]
    value: Fraction
    formula: str
    over_e: bool = False
    asymptotic: bool = False
    note: str = ""

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        if self.over_e:
            return (self.value * INV_E_LO, self.value * INV_E_HI)
        return (self.value, self.value)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


def _bound_er(r: int, k: int) -> BoundValue:
    _require(r >= 2 and k >= 1, "ER needs r >= 2, k >= 1")
    return BoundValue(
        "ER",
        (("r", r), ("k", k)),
        Fraction(math.factorial(k) * (r - 1) ** k),
        "k! (r-1)^k",
    )


def _bound_t1(r: int, k: int) -> BoundValue:
    _require(r >= 3 and k >= 1, "T1 needs r >= 3, k >= 1")
    return BoundValue("T1", (("r", r), ("k", k)), Fraction(r ** (10 * k)), "r^(10k)")


def _bound_t2(r: int, k: int, d: int) -> BoundValue:
    _require(d >= 2 and k >= 2 and r >= 2, "T2 needs d, k, r >= 2")
    exponent = 10 * k * (d * r) ** (2 * log_star(k))
    return BoundValue(
        "T2",
        (("r", r), ("k", k), ("d", d)),
        Fraction(2**exponent),
        "2^(10 k (d r)^(2 log* k))",
    )


def _bound_t3u(r: int, k: int, d: int) -> BoundValue:
    _require(d >= 1 and k >= 1 and r >= 1, "T3U needs d, k, r >= 1")
    return BoundValue(
        "T3U", (("r", r), ("k", k), ("d", d)), Fraction((r * k) ** d), "(r k)^d"
    )


def _bound_t3l(r: int, k: int, d: int) -> BoundValue:
    _require(d >= 3 and r >= 3 and k >= 4 * d, "T3L needs d, r >= 3 and k >= 4d")
    return BoundValue(
        "T3L",
        (("r", r), ("k", k), ("d", d)),
        Fraction(r * k, d) ** d,
        "(r k / d)^d",
        asymptotic=True,
        note="evaluated without the o(d) correction; asymptotic form, not a certified bound",
    )


def _bound_t7(r: int, k: int, lam: int) -> BoundValue:
    _require(r >= 3 and k >= 1 and lam >= 1, "T7 needs r >= 3, k >= 1, lambda >= 1")
    return BoundValue(
        "T7",
        (("r", r), ("k", k), ("lam", lam)),
        Fraction((lam + r) ** (6 * lam * k)),
        "(lambda + r)^(6 lambda k)",
    )


def _bound_dsw(lam: int, nu: int) -> BoundValue:
    _require(lam >= 1 and nu >= 0, "DSW needs lambda >= 1, nu >= 0")
    value = 11 * lam**2 * (lam + nu + 3) * math.comb(lam + nu, lam) ** 2
    return BoundValue(
        "DSW",
        (("lam", lam), ("nu", nu)),
        Fraction(value),
        "11 lambda^2 (lambda + nu + 3) C(lambda + nu, lambda)^2",
    )


def _bound_ss(n: int, d: int) -> BoundValue:
    _require(n >= 0 and d >= 0, "SS needs n, d >= 0")
    return BoundValue(
        "SS",
        (("n", n), ("d", d)),
        Fraction(sauer_shelah_capacity(n, d)),
        "sum_{i<=d} C(n, i)",
    )


def _bound_l3(r: int, g: int) -> BoundValue:
    _require(r >= 2 and g >= 1, "L3 needs r >= 2, g >= 1")
    return BoundValue(
        "L3",
        (("r", r), ("g", g)),
        Fraction(1, g ** (r - 1)),
        "g^(1-r) / e",
        over_e=True,
    )


def _bound_c1(r: int, k: int) -> BoundValue:
    _require(r >= 2 and k >= 2, "C1 needs r, k >= 2")
    base = math.factorial(k) * (r - 1) ** (k + 1) + 1
    return BoundValue(
        "C1",
        (("r", r), ("k", k)),
        Fraction(1, base ** (r - 1)),
        "(k! (r-1)^(k+1) + 1)^(1-r) / e",
        over_e=True,
    )


def _bound_t4(r: int, k: int) -> BoundValue:
    _require(r >= 3 and k >= 1, "T4 needs r >= 3, k >= 1")
    return BoundValue(
        "T4", (("r", r), ("k", k)), Fraction((500 + r) ** (900 * k)), "(500 + r)^(900 k)"
    )


def _bound_t6(r: int, k: int, d: int) -> BoundValue:
    _require(d >= 2 and k >= 2 and r >= 2, "T6 needs d, k, r >= 2")
    exponent = 10 * k * (d * r) ** (2 * log_star(k))
    return BoundValue(
        "T6",
        (("r", r), ("k", k), ("d", d)),
        Fraction(1, 2**exponent),
        "2^(-10 k (d r)^(2 log* k))",
    )


_BOUNDS: dict[str, Callable[..., BoundValue]] = {
    "ER": _bound_er,
    "T1": _bound_t1,
    "T2": _bound_t2,
    "T3U": _bound_t3u,
    "T3L": _bound_t3l,
    "T7": _bound_t7,
    "DSW": _bound_dsw,
    "SS": _bound_ss,
    "L3": _bound_l3,
    "C1": _bound_c1,
    "T4": _bound_t4,
    "T6": _bound_t6,
}

BOUND_IDS = tuple(sorted(_BOUNDS))


def evaluate_bound(bound_id: str, **params: int) -> BoundValue:
    """Evaluate one catalogued bound exactly; see :data:`BOUND_IDS`."""
    fn = _BOUNDS.get(bound_id)
    if fn is None:
        raise ParameterError(f"unknown bound id {bound_id!r} (have {', '.join(BOUND_IDS)})")
    try:
        return fn(**params)
    except TypeError as exc:
        raise ParameterError(f"bound {bound_id}: {exc}") from None


# ---------------------------------------------------------------------------
# inequality battery


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str


@dataclass(frozen=True)
class InequalityReport:
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failed(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if c.status == "fail")

    def skipped(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if c.status == "skip")


def check_inequalities(
    family: SetFamily,
    r: int,
    extremal_f: Optional[int] = None,
    extremal_g: Optional[int] = None,
    lambda_cap: int = 8,
    budget: int | None = None,
) -> InequalityReport:
    """Evaluate every inequality instantiable from the family alone.

    Checks that cannot be decided exactly (capped lambda, missing
    preconditions) are reported as skipped, never as passed.  Supplying a
    known extremal value enables the threshold-form checks.
    """
    if r < 2:
        raise ParameterError("check_inequalities requires r >= 2")
    checks: list[CheckResult] = []
    m = family.m
    if m == 0:
        return InequalityReport(
            (CheckResult("nonempty", "skip", "empty family: nothing to check"),)
        )

    distinct, _ = family.distinct()
    md = distinct.m
    n_active = sum(1 for col in family.columns if col)

    vc, _ = vc_dimension(family, budget)
    ls, _ = ls_dimension(family, budget)

    def add(name: str, ok: bool, detail: str) -> None:
        checks.append(CheckResult(name, "pass" if ok else "fail", detail))

    add("vc<=ls", vc <= ls, f"vc={vc}, ls={ls}")
    log2_md = md.bit_length() - 1
    add("ls<=log2(m)", ls <= log2_md, f"ls={ls}, floor(log2 {md})={log2_md}")
    cap = sauer_shelah_capacity(n_active, vc)
    add(
        "sauer_shelah",
        md <= cap,
        f"m_distinct={md} <= capacity(n_active={n_active}, vc={vc})={cap}",
    )

    has_empty_member = any(not mem for mem in family.members)
    nu = packing_number(family, budget)
    if has_empty_member:
        checks.append(
            CheckResult("nu<=tau", "skip", "empty member: transversal undefined")
        )
        checks.append(CheckResult("dsw", "skip", "empty member: transversal undefined"))
    else:
        tau = transversal_number(family, budget)
        add("nu<=tau", nu.value <= tau.value, f"nu={nu.value}, tau={tau.value}")
        lam = lambda_number(family, cap=lambda_cap, budget=budget)
        if lam.cap_hit:
            checks.append(
                CheckResult(
                    "dsw",
                    "skip",
                    f"lambda search capped at {lam.cap}; value not exact",
                )
            )
        else:
            bound = evaluate_bound("DSW", lam=max(lam.value, 1), nu=nu.value).value
            add(
                "dsw",
                Fraction(tau.value) <= bound,
                f"tau={tau.value} <= DSW(lambda={lam.value}, nu={nu.value})={bound}",
            )

    # popular-element bound applies to (r+1)-sunflower-free families of
    # nonempty members
    if has_empty_member:
        checks.append(CheckResult("popular_element", "skip", "empty member present"))
    elif find_sunflower(family, r + 1, budget=budget) is not None:
        checks.append(
            CheckResult(
                "popular_element", "skip", f"family contains an {r + 1}-sunflower"
            )
        )
    else:
        k = family.max_member_size()
        _, frac = popular_element(family)
        threshold = Fraction(1, k * r)
        add(
            "popular_element",
            frac >= threshold,
            f"max fraction {frac} >= 1/(k r) = {threshold}",
        )

    uniform_k = family.is_uniform()
    if extremal_f is not None:
        if family.multifamily or md != m:
            checks.append(
                CheckResult("size<=f-1", "skip", "needs distinct members")
            )
        elif uniform_k is None:
            checks.append(CheckResult("size<=f-1", "skip", "needs a uniform family"))
        elif find_sunflower(family, max(r, 3), budget=budget) is not None:
            checks.append(
                CheckResult("size<=f-1", "skip", "family is not sunflower-free")
            )
        else:
            a = alpha_exact(family, r, budget)
            ok = m <= extremal_f - 1 and a == Fraction(1, m ** (r - 1))
            add(
                "size<=f-1",
                ok,
                f"sunflower-free size {m} <= f-1 = {extremal_f - 1}; alpha = m^(1-r) = {a}",
            )
    if extremal_g is not None:
        a = alpha_exact(family, r, budget)
        lo = evaluate_bound("L3", r=r, g=extremal_g).interval[1]
        add(
            "alpha>=g^(1-r)/e",
            a >= lo,
            f"alpha={a} >= conservative g^(1-r)/e = {float(lo):.6g}",
        )

    return InequalityReport(tuple(checks))
