"""Stage checks and whole-prefix certification.

Each check inspects one stage (or one connecting map) of a system prefix
and returns a verdict with machine-checkable witnesses for failures.  The
verdict statuses are:

    pass            the condition holds at this stage
    fail            it does not; a witness is attached
    not-applicable  the stage lacks the marks or structure the check needs
    bounded         a subgroup sweep was skipped because the group exceeds
                    the configured bound, so the result is inconclusive

A bounded check is never reported as a pass.  certify_system never trusts
kernels or marks from the input file beyond what parse-time validation
established; witnesses can be re-checked independently with
revalidate_witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .classdata import SchurTable, SimpleClass, count_class_factors
from .errors import DerivationError, HomomorphismError, NotNormalError
from .group import (
    PermGroup,
    centralizer,
    centralizer_of_section,
    commutator_subgroup,
    e_p_subgroup,
    is_nilpotent,
    join,
    normal_closure,
    subgroup_generated,
)
from .hom import GroupHom, quotient
from .lattice import (
    all_subgroups,
    central_decomposition,
    chief_series,
    critical_pairs,
    decompose_char_simple,
    is_critical_pair,
    maximal_normal_subgroups,
    minimal_normal_subgroups,
    normal_subgroups,
)
from .perm import Permutation
from .prefixes import SystemPrefix
from .simples import _is_prime

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
BOUNDED = "bounded"

DEFAULT_SUBGROUP_BOUND = 2000

CHECK_CRITICAL_PAIR = "critical_pair"
CHECK_CENTRALIZER_PRODUCT = "centralizer_product"
CHECK_WILSON_I = "wilson_i"
CHECK_WILSON_II = "wilson_ii"
CHECK_COMMUTING_CONJUGATES = "commuting_conjugates"
CHECK_DICHOTOMY = "normalized_dichotomy"
CHECK_NO_CENTRAL_FACTOR = "no_central_factor"

CHECK_ORDER = (
    CHECK_CRITICAL_PAIR,
    CHECK_CENTRALIZER_PRODUCT,
    CHECK_WILSON_I,
    CHECK_WILSON_II,
    CHECK_COMMUTING_CONJUGATES,
    CHECK_DICHOTOMY,
    CHECK_NO_CENTRAL_FACTOR,
)


@dataclass(frozen=True)
class CheckResult:
    status: str
    witness: Optional[dict] = None
    note: Optional[str] = None


@dataclass
class StageVerdict:
    stage_index: int
    order: int
    degree: int
    checks: dict[str, CheckResult] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


@dataclass
class ClassCountReport:
    member_names: tuple[str, ...]
    counts: tuple[int, ...]
    strictly_increasing: bool


@dataclass
class SystemVerdict:
    stages: tuple[StageVerdict, ...]
    summary: str
    limit_claim: str
    class_counts: Optional[ClassCountReport] = None


@dataclass(frozen=True)
class CertifyOptions:
    wilson: bool = False
    commuting_conjugates: bool = False
    strengthened: bool = False
    subgroup_bound: int = DEFAULT_SUBGROUP_BOUND
    count_class: Optional[SimpleClass] = None


# -- witness plumbing --------------------------------------------------------


def _count(k: int, noun: str) -> str:
    return f"{k} {noun}" if k == 1 else f"{k} {noun}s"


def _sub_w(sub: PermGroup) -> dict:
    return {
        "order": sub.order,
        "generators": [list(p.images) for p in sub.generators],
    }


def _witness_subgroup(g: PermGroup, blob: object) -> Optional[PermGroup]:
    if not isinstance(blob, dict):
        return None
    try:
        gens = [Permutation(tuple(row)) for row in blob["generators"]]
        sub = subgroup_generated(g, gens)
    except Exception:
        return None
    if sub.order != blob.get("order", sub.order):
        return None
    return sub


def _require_normal(g: PermGroup, sub: PermGroup, what: str) -> None:
    if not sub.is_subgroup_of(g) or not sub.is_normal_in(g):
        raise NotNormalError(f"{what} is not a normal subgroup of the stage group")


# -- conjugate families ------------------------------------------------------


def _conjugates(g: PermGroup, u: PermGroup) -> list[PermGroup]:
    """All distinct conjugates of u under g, found by generator orbit."""
    seen = {u.canonical_key(): u}
    frontier = [u]
    while frontier:
        v = frontier.pop()
        for t in g.generators:
            w = subgroup_generated(g, [x ** t for x in v.generators])
            key = w.canonical_key()
            if key not in seen:
                seen[key] = w
                frontier.append(w)
    return list(seen.values())


def _pairwise_commute(subs: Sequence[PermGroup]) -> bool:
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            for x in subs[i].generators:
                for y in subs[j].generators:
                    if x * y != y * x:
                        return False
    return True


def _normalized_by(h: PermGroup, a: PermGroup) -> bool:
    return all(h.contains(x ** y) for y in a.generators for x in h.generators)


# -- per-stage checks --------------------------------------------------------


def check_wilson_stage(
    g: PermGroup,
    k: PermGroup,
    *,
    stage_index: int = 0,
    subgroup_bound: int = DEFAULT_SUBGROUP_BOUND,
) -> StageVerdict:
    """Kernel-containment and commuting-generation conditions for (g, k).

    (i)  every normal subgroup not inside k contains k;
    (ii) no such normal subgroup is generated, as a normal subgroup, by a
         non-normal subgroup whose distinct conjugates commute elementwise.

    k = g is allowed and makes both conditions vacuous.
    """
    _require_normal(g, k, "the kernel")
    sv = StageVerdict(stage_index=stage_index, order=g.order, degree=g.degree)

    above = [
        n for n in normal_subgroups(g) if not n.is_subgroup_of(k)
    ]
    if not above:
        note = "vacuous: every normal subgroup lies inside the kernel"
        sv.checks[CHECK_WILSON_I] = CheckResult(PASS, note=note)
        sv.checks[CHECK_WILSON_II] = CheckResult(PASS, note=note)
        return sv

    bad = next((n for n in above if not k.is_subgroup_of(n)), None)
    if bad is None:
        sv.checks[CHECK_WILSON_I] = CheckResult(
            PASS,
            note=f"{_count(len(above), 'normal subgroup')} outside the kernel; "
            "each contains it",
        )
    else:
        sv.checks[CHECK_WILSON_I] = CheckResult(
            FAIL,
            witness={"normal_subgroup": _sub_w(bad)},
            note="a normal subgroup neither contains nor lies inside the kernel",
        )

    hit = None
    skipped: list[int] = []
    for lsub in above:
        if lsub.order > subgroup_bound:
            skipped.append(lsub.order)
            continue
        for u in all_subgroups(lsub):
            if u.is_normal_in(g):
                continue
            if not _pairwise_commute(_conjugates(g, u)):
                continue
            if normal_closure(g, u.generators).order == lsub.order:
                hit = (lsub, u)
                break
        if hit:
            break
    if hit:
        lsub, u = hit
        sv.checks[CHECK_WILSON_II] = CheckResult(
            FAIL,
            witness={"normal_subgroup": _sub_w(lsub), "subgroup": _sub_w(u)},
            note="a commuting-conjugates subgroup normally generates this normal subgroup",
        )
    elif skipped:
        sv.checks[CHECK_WILSON_II] = CheckResult(
            BOUNDED,
            note=(
                "subgroup sweep skipped for normal subgroups of order "
                f"{sorted(skipped)} above the bound {subgroup_bound}"
            ),
        )
    else:
        sv.checks[CHECK_WILSON_II] = CheckResult(
            PASS,
            note="no qualifying subgroup among "
            f"{_count(len(above), 'normal subgroup')}",
        )
    return sv


def check_critical_stage(
    rho: GroupHom,
    a_next: PermGroup,
    a_n: PermGroup,
    b_n: PermGroup,
    *,
    stage_index: int = 0,
) -> StageVerdict:
    """Pair conditions at one stage of a marked prefix.

    critical_pair: (a_n, b_n) is a critical pair of the target group.
    centralizer_product: with P the image of the deeper mark a_next,
    P C(P) lies inside b_n.
    """
    g = rho.target
    if not rho.is_surjective():
        raise HomomorphismError("connecting map is not surjective")
    if not a_next.is_subgroup_of(rho.source) or not a_next.is_normal_in(rho.source):
        raise NotNormalError("the deeper mark is not normal in the source stage")
    _require_normal(g, a_n, "the top mark")
    _require_normal(g, b_n, "the bottom mark")
    if b_n.order == g.order:
        raise ValueError("the bottom mark must be a proper subgroup")

    sv = StageVerdict(stage_index=stage_index, order=g.order, degree=g.degree)

    if a_n.order == b_n.order and a_n == b_n:
        sv.checks[CHECK_CRITICAL_PAIR] = CheckResult(
            FAIL,
            witness={"top": _sub_w(a_n), "bottom": _sub_w(b_n)},
            note="degenerate pair: top and bottom marks coincide",
        )
    elif not b_n.is_subgroup_of(a_n):
        sv.checks[CHECK_CRITICAL_PAIR] = CheckResult(
            FAIL,
            witness={"top": _sub_w(a_n), "bottom": _sub_w(b_n)},
            note="bottom mark is not contained in the top mark",
        )
    else:
        ok, wit = is_critical_pair(g, a_n, b_n)
        if ok:
            sv.checks[CHECK_CRITICAL_PAIR] = CheckResult(
                PASS, note=f"pair orders ({a_n.order}, {b_n.order})"
            )
        else:
            sv.checks[CHECK_CRITICAL_PAIR] = CheckResult(
                FAIL,
                witness={"normal_subgroup": _sub_w(wit)},
                note="a proper normal subgroup of the top mark escapes the bottom mark",
            )

    p = rho.image(a_next)
    pc = join(g, p, centralizer(g, p))
    if pc.is_subgroup_of(b_n):
        sv.checks[CHECK_CENTRALIZER_PRODUCT] = CheckResult(
            PASS, note=f"image order {p.order}, product order {pc.order}"
        )
    else:
        x = next(x for x in pc.sorted_elements() if not b_n.contains(x))
        sv.checks[CHECK_CENTRALIZER_PRODUCT] = CheckResult(
            FAIL,
            witness={"element": list(x.images), "image_order": p.order},
            note="the image times its centralizer escapes the bottom mark",
        )
    return sv


def check_commuting_conjugates_stage(
    g: PermGroup,
    a: PermGroup,
    *,
    stage_index: int = 0,
    subgroup_bound: int = DEFAULT_SUBGROUP_BOUND,
) -> StageVerdict:
    """No non-normal subgroup with elementwise-commuting distinct conjugates
    may normally generate a subgroup containing the mark a."""
    _require_normal(g, a, "the stage mark")
    sv = StageVerdict(stage_index=stage_index, order=g.order, degree=g.degree)

    if g.order > subgroup_bound:
        sv.checks[CHECK_COMMUTING_CONJUGATES] = CheckResult(
            BOUNDED,
            note=f"group order {g.order} exceeds the subgroup bound {subgroup_bound}",
        )
        return sv

    for u in all_subgroups(g):
        if u.is_normal_in(g):
            continue
        if not _pairwise_commute(_conjugates(g, u)):
            continue
        if a.is_subgroup_of(normal_closure(g, u.generators)):
            sv.checks[CHECK_COMMUTING_CONJUGATES] = CheckResult(
                FAIL,
                witness={"subgroup": _sub_w(u)},
                note="its normal closure contains the stage mark",
            )
            return sv
    sv.checks[CHECK_COMMUTING_CONJUGATES] = CheckResult(
        PASS, note="no qualifying subgroup"
    )
    return sv


def check_strengthened_stage(
    g: PermGroup,
    a: PermGroup,
    b: PermGroup,
    p: PermGroup,
    *,
    stage_index: int = 0,
    subgroup_bound: int = DEFAULT_SUBGROUP_BOUND,
) -> StageVerdict:
    """Dichotomy and indecomposability conditions at one stage.

    normalized_dichotomy: every subgroup normalized by a either contains
    P C(P) or lies inside every maximal normal subgroup of a (as a group
    in its own right).
    no_central_factor: every normal subgroup containing a is centrally
    indecomposable.
    """
    _require_normal(g, a, "the top mark")
    _require_normal(g, b, "the bottom mark")
    _require_normal(g, p, "the image mark")
    sv = StageVerdict(stage_index=stage_index, order=g.order, degree=g.degree)

    if a.is_trivial():
        sv.checks[CHECK_DICHOTOMY] = CheckResult(
            PASS, note="vacuous: the trivial mark has no maximal normal subgroups"
        )
    elif g.order > subgroup_bound:
        sv.checks[CHECK_DICHOTOMY] = CheckResult(
            BOUNDED,
            note=f"group order {g.order} exceeds the subgroup bound {subgroup_bound}",
        )
    else:
        pc = join(g, p, centralizer(g, p))
        maxn = maximal_normal_subgroups(a)
        verdict = None
        for h in all_subgroups(g):
            if not _normalized_by(h, a):
                continue
            if pc.is_subgroup_of(h):
                continue
            m = next((m for m in maxn if not h.is_subgroup_of(m)), None)
            if m is not None:
                verdict = CheckResult(
                    FAIL,
                    witness={"subgroup": _sub_w(h), "maximal_normal": _sub_w(m)},
                    note=(
                        "a subgroup normalized by the mark misses the centralizer "
                        "product and escapes a maximal normal subgroup of the mark"
                    ),
                )
                break
        sv.checks[CHECK_DICHOTOMY] = verdict or CheckResult(
            PASS, note="every normalized subgroup satisfies the dichotomy"
        )

    bad = None
    above = [n for n in normal_subgroups(g) if a.is_subgroup_of(n)]
    for n in above:
        parts = central_decomposition(n)
        if parts is not None:
            bad = (n, parts)
            break
    if bad is None:
        sv.checks[CHECK_NO_CENTRAL_FACTOR] = CheckResult(
            PASS,
            note=f"{_count(len(above), 'normal subgroup')} above the mark; "
            "each is indecomposable",
        )
    else:
        n, parts = bad
        sv.checks[CHECK_NO_CENTRAL_FACTOR] = CheckResult(
            FAIL,
            witness={
                "normal_subgroup": _sub_w(n),
                "factors": [_sub_w(f) for f in parts],
            },
            note="a normal subgroup above the mark is a central product",
        )
    return sv


def check_centralize_or_contain(
    g: PermGroup, pair: tuple[PermGroup, PermGroup], k: PermGroup
) -> bool:
    """For a critical pair (a, b) and normal k: either k centralizes the
    section a/b, or k contains a and is not nilpotent."""
    a, b = pair
    _require_normal(g, a, "the pair top")
    _require_normal(g, b, "the pair bottom")
    if a.order == b.order or not b.is_subgroup_of(a):
        raise ValueError("the pair is not critical")
    ok, _ = is_critical_pair(g, a, b)
    if not ok:
        raise ValueError("the pair is not critical")
    _require_normal(g, k, "the normal subgroup")
    if k.is_subgroup_of(centralizer_of_section(g, a, b)):
        return True
    return a.is_subgroup_of(k) and not is_nilpotent(k)


# -- E^p properness ----------------------------------------------------------


@dataclass(frozen=True)
class EpVerdict:
    status: str
    note: str
    ep_order: Optional[int] = None
    ep_index: Optional[int] = None


def check_ep_proper(
    g: PermGroup, p: int, table: Optional[SchurTable] = None
) -> EpVerdict:
    """Test the hypotheses under which E^p(g) = [g,g] g^p must be proper.

    Needs: some chief factor is elementary abelian of exponent p, all such
    factors are central, and no nonabelian composition factor has a
    multiplier of order divisible by p.  Status "table-incomplete" means a
    composition factor falls outside the loaded multiplier table.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not a prime")
    if table is None:
        table = SchurTable.load()
    if g.is_trivial():
        return EpVerdict(NOT_APPLICABLE, "the trivial group has no chief factors")

    series = chief_series(g)
    layers = []
    factor_ids = []
    for lo, hi in zip(series, series[1:]):
        q, _ = quotient(hi, lo)
        tid, mult = decompose_char_simple(q)
        factor_ids.append((tid, mult))
        if tid.is_cyclic and tid.order == p:
            layers.append((lo, hi))

    if not layers:
        return EpVerdict(
            NOT_APPLICABLE, f"no chief factor is elementary abelian of exponent {p}"
        )
    for lo, hi in layers:
        if not commutator_subgroup(g, g, hi).is_subgroup_of(lo):
            return EpVerdict(
                NOT_APPLICABLE,
                f"a chief factor of order {hi.order // lo.order} is not central",
            )
    seen = set()
    for tid, _ in factor_ids:
        if tid.is_cyclic or tid.name in seen:
            continue
        seen.add(tid.name)
        if tid.order > table.order_bound:
            return EpVerdict(
                "table-incomplete",
                f"composition factor {tid.name} of order {tid.order} is outside "
                f"the multiplier table (bound {table.order_bound})",
            )
        if table.multiplier_order(tid.name) % p == 0:
            return EpVerdict(
                NOT_APPLICABLE,
                f"composition factor {tid.name} has multiplier order divisible by {p}",
            )

    ep = e_p_subgroup(g, p)
    if ep.order < g.order:
        return EpVerdict(
            PASS,
            f"agreed proper: index {g.order // ep.order}",
            ep_order=ep.order,
            ep_index=g.order // ep.order,
        )
    return EpVerdict(
        FAIL,
        "the subgroup is not proper despite the hypotheses",
        ep_order=ep.order,
        ep_index=1,
    )


# -- mark derivation ---------------------------------------------------------


def derive_critical_marks(prefix: SystemPrefix) -> SystemPrefix:
    """Choose pair marks for an unmarked prefix, coarsest stage first.

    At each stage n >= 1 the mark is the full preimage of the first minimal
    normal subgroup m of stage n-1 whose centralizer does not swallow the
    previous kernel and with m C(m) inside that kernel (at n = 1 only the
    non-degeneracy half applies).  Stage 0 then gets a critical pair whose
    bottom contains m C(m) when one exists.  DerivationError carries the
    shallowest failing level.
    """
    if len(prefix.groups) < 2:
        raise ValueError("mark derivation needs at least two stages")

    marks: dict[int, PermGroup] = {}
    m0 = None
    for n in range(1, len(prefix.groups)):
        g = prefix.groups[n - 1]
        k = prefix.kernels[n - 1]
        if g.is_trivial():
            raise DerivationError("the stage group is trivial", level=n)
        chosen = None
        for m in minimal_normal_subgroups(g):
            c = centralizer(g, m)
            if k is None:
                if c.order == g.order:
                    continue
            else:
                if k.is_subgroup_of(c):
                    continue
                if not join(g, m, c).is_subgroup_of(k):
                    continue
            chosen = m
            break
        if chosen is None:
            raise DerivationError(
                f"no minimal normal subgroup of stage {n - 1} meets the "
                "selection rule",
                level=n,
            )
        marks[n] = prefix.homs[n - 1].preimage(chosen)
        if n == 1:
            m0 = chosen

    g0 = prefix.groups[0]
    pairs = critical_pairs(g0)
    if not pairs:
        raise DerivationError("the coarsest stage group has no critical pair", level=0)
    pc0 = join(g0, m0, centralizer(g0, m0))
    pick = next((pr for pr in pairs if pc0.is_subgroup_of(pr.bottom)), pairs[0])
    marks[0] = pick.top
    return prefix.with_marks(marks, b0=pick.bottom)


# -- whole-prefix certification ----------------------------------------------


def _merge(target: StageVerdict, src: StageVerdict) -> None:
    target.checks.update(src.checks)
    target.notes.extend(src.notes)


def _mark_na(sv: StageVerdict, names: Sequence[str], note: str) -> None:
    for name in names:
        sv.checks[name] = CheckResult(NOT_APPLICABLE, note=note)


def _summarize(stages: Sequence[StageVerdict]) -> str:
    ran = 0
    parts = []
    for name in CHECK_ORDER:
        fails = [v.stage_index for v in stages if _status(v, name) == FAIL]
        bounded = [v.stage_index for v in stages if _status(v, name) == BOUNDED]
        ran += sum(1 for v in stages if _status(v, name) in (PASS, FAIL, BOUNDED))
        if fails:
            parts.append(f"{name} fails at stage {', '.join(map(str, fails))}")
        if bounded:
            parts.append(
                f"{name} inconclusive (bounded) at stage {', '.join(map(str, bounded))}"
            )
    if ran == 0:
        return "no checks were applicable"
    if not parts:
        return "all requested checks pass at every applicable stage"
    return "; ".join(parts)


def _status(sv: StageVerdict, name: str) -> Optional[str]:
    res = sv.checks.get(name)
    return res.status if res else None


def _family_certified(
    stages: Sequence[StageVerdict], names: Sequence[str], indices: Sequence[int]
) -> bool:
    """True when every named check ran and passed at every listed stage."""
    if not indices:
        return False
    for i in indices:
        for name in names:
            if _status(stages[i], name) != PASS:
                return False
    return True


def _limit_claim(stages: Sequence[StageVerdict], options: CertifyOptions) -> str:
    last = len(stages) - 1
    interior = list(range(last))
    everything = list(range(last + 1))

    if last == 0:
        return "the prefix has a single stage; no limit property is certified"

    sentences = []
    critical_ok = _family_certified(
        stages, (CHECK_CRITICAL_PAIR, CHECK_CENTRALIZER_PRODUCT), interior
    )
    if critical_ok:
        s = (
            "if the pair conditions continue to hold at all but finitely many "
            "stages of an inverse system extending this prefix, its limit is "
            "just infinite and not virtually pronilpotent"
        )
        if options.commuting_conjugates and _family_certified(
            stages, (CHECK_COMMUTING_CONJUGATES,), everything
        ):
            s += (
                "; if the commuting-conjugates condition also holds at "
                "infinitely many stages, the limit is hereditarily just infinite"
            )
        if options.strengthened and _family_certified(
            stages, (CHECK_DICHOTOMY, CHECK_NO_CENTRAL_FACTOR), interior
        ):
            s += (
                "; if the dichotomy and indecomposability conditions also hold "
                "at all but finitely many stages, the limit is hereditarily "
                "just infinite and not virtually pronilpotent"
            )
        sentences.append(s)
    if options.wilson and _family_certified(
        stages, (CHECK_WILSON_I, CHECK_WILSON_II), everything
    ):
        sentences.append(
            "if the kernel-containment and commuting-generation conditions hold "
            "at every stage of an extension, the limit is just infinite, and is "
            "then either virtually abelian or hereditarily just infinite"
        )
    if not sentences:
        return (
            "no limit property is certified: a requested check fails, is "
            "inconclusive, or lacks marks"
        )
    return "; and ".join(sentences)


def certify_system(
    prefix: SystemPrefix, options: Optional[CertifyOptions] = None
) -> SystemVerdict:
    """Run the requested checks at every stage and assemble the verdict.

    The pair checks always run where marks allow; the other families are
    opt-in.  Kernels come from the prefix (recomputed at parse time), never
    from the document.
    """
    options = options or CertifyOptions()
    if not prefix.groups:
        raise ValueError("empty system prefix")
    last = len(prefix.groups) - 1

    verdicts = [
        StageVerdict(stage_index=n, order=grp.order, degree=grp.degree)
        for n, grp in enumerate(prefix.groups)
    ]

    def kernel_at(n: int) -> Optional[PermGroup]:
        return prefix.b0 if n == 0 else prefix.kernels[n]

    pair_checks = (CHECK_CRITICAL_PAIR, CHECK_CENTRALIZER_PRODUCT)
    for n in range(last):
        a_next, a_n, b_n = prefix.a_marks[n + 1], prefix.a_marks[n], kernel_at(n)
        if a_next is None or a_n is None or b_n is None:
            missing = [
                what
                for what, sub in (
                    (f"a[{n + 1}]", a_next),
                    (f"a[{n}]", a_n),
                    ("b0" if n == 0 else f"kernel[{n}]", b_n),
                )
                if sub is None
            ]
            _mark_na(verdicts[n], pair_checks, f"missing marks: {', '.join(missing)}")
        else:
            _merge(
                verdicts[n],
                check_critical_stage(
                    prefix.homs[n], a_next, a_n, b_n, stage_index=n
                ),
            )
    _mark_na(verdicts[last], pair_checks, "deepest stage: no further connecting map")

    if options.wilson:
        for n in range(last + 1):
            k = kernel_at(n)
            if k is None:
                _mark_na(
                    verdicts[n],
                    (CHECK_WILSON_I, CHECK_WILSON_II),
                    "stage 0 has no b0 mark to act as kernel",
                )
            else:
                _merge(
                    verdicts[n],
                    check_wilson_stage(
                        prefix.groups[n],
                        k,
                        stage_index=n,
                        subgroup_bound=options.subgroup_bound,
                    ),
                )

    if options.commuting_conjugates:
        for n in range(last + 1):
            a_n = prefix.a_marks[n]
            if a_n is None:
                _mark_na(
                    verdicts[n], (CHECK_COMMUTING_CONJUGATES,), f"missing mark a[{n}]"
                )
            else:
                _merge(
                    verdicts[n],
                    check_commuting_conjugates_stage(
                        prefix.groups[n],
                        a_n,
                        stage_index=n,
                        subgroup_bound=options.subgroup_bound,
                    ),
                )

    if options.strengthened:
        thmb_checks = (CHECK_DICHOTOMY, CHECK_NO_CENTRAL_FACTOR)
        for n in range(last):
            a_next, a_n, b_n = prefix.a_marks[n + 1], prefix.a_marks[n], kernel_at(n)
            if a_next is None or a_n is None or b_n is None:
                _mark_na(verdicts[n], thmb_checks, "missing marks")
            else:
                p_n = prefix.homs[n].image(a_next)
                _merge(
                    verdicts[n],
                    check_strengthened_stage(
                        prefix.groups[n],
                        a_n,
                        b_n,
                        p_n,
                        stage_index=n,
                        subgroup_bound=options.subgroup_bound,
                    ),
                )
        _mark_na(verdicts[last], thmb_checks, "deepest stage: no further connecting map")

    class_counts = None
    if options.count_class is not None:
        counts = tuple(
            count_class_factors(grp, options.count_class) for grp in prefix.groups
        )
        class_counts = ClassCountReport(
            member_names=options.count_class.member_names,
            counts=counts,
            strictly_increasing=all(
                counts[i] < counts[i + 1] for i in range(len(counts) - 1)
            ),
        )

    return SystemVerdict(
        stages=tuple(verdicts),
        summary=_summarize(verdicts),
        limit_claim=_limit_claim(verdicts, options),
        class_counts=class_counts,
    )


# -- independent witness re-checks -------------------------------------------


def revalidate_witness(
    check_name: str,
    witness: Mapping,
    *,
    g: PermGroup,
    k: Optional[PermGroup] = None,
    a: Optional[PermGroup] = None,
    b: Optional[PermGroup] = None,
    p: Optional[PermGroup] = None,
) -> bool:
    """Re-check a failure witness against the stage context from scratch.

    Returns True when the witness still demonstrates the failure.  The
    context arguments mirror the ones the original check received; a
    malformed witness simply fails to revalidate.
    """
    if check_name == CHECK_WILSON_I:
        lsub = _witness_subgroup(g, witness.get("normal_subgroup"))
        return (
            lsub is not None
            and k is not None
            and lsub.is_normal_in(g)
            and not lsub.is_subgroup_of(k)
            and not k.is_subgroup_of(lsub)
        )
    if check_name == CHECK_WILSON_II:
        lsub = _witness_subgroup(g, witness.get("normal_subgroup"))
        u = _witness_subgroup(g, witness.get("subgroup"))
        if lsub is None or u is None or k is None:
            return False
        return (
            lsub.is_normal_in(g)
            and not lsub.is_subgroup_of(k)
            and u.is_subgroup_of(lsub)
            and not u.is_normal_in(g)
            and _pairwise_commute(_conjugates(g, u))
            and normal_closure(g, u.generators).order == lsub.order
        )
    if check_name == CHECK_CRITICAL_PAIR:
        if a is None or b is None:
            return False
        if "normal_subgroup" in witness:
            n = _witness_subgroup(g, witness["normal_subgroup"])
            return (
                n is not None
                and n.is_normal_in(g)
                and n.is_subgroup_of(a)
                and n.order < a.order
                and not n.is_subgroup_of(b)
            )
        return a.order == b.order or not b.is_subgroup_of(a)
    if check_name == CHECK_CENTRALIZER_PRODUCT:
        if b is None or p is None:
            return False
        try:
            x = Permutation(tuple(witness["element"]))
        except Exception:
            return False
        pc = join(g, p, centralizer(g, p))
        return pc.contains(x) and not b.contains(x)
    if check_name == CHECK_COMMUTING_CONJUGATES:
        u = _witness_subgroup(g, witness.get("subgroup"))
        if u is None or a is None:
            return False
        return (
            not u.is_normal_in(g)
            and _pairwise_commute(_conjugates(g, u))
            and a.is_subgroup_of(normal_closure(g, u.generators))
        )
    if check_name == CHECK_DICHOTOMY:
        h = _witness_subgroup(g, witness.get("subgroup"))
        m = _witness_subgroup(g, witness.get("maximal_normal"))
        if h is None or m is None or a is None or p is None:
            return False
        pc = join(g, p, centralizer(g, p))
        return (
            _normalized_by(h, a)
            and not pc.is_subgroup_of(h)
            and any(m == mm for mm in maximal_normal_subgroups(a))
            and not h.is_subgroup_of(m)
        )
    if check_name == CHECK_NO_CENTRAL_FACTOR:
        n = _witness_subgroup(g, witness.get("normal_subgroup"))
        if n is None or not isinstance(witness.get("factors"), list):
            return False
        parts = [_witness_subgroup(g, f) for f in witness["factors"]]
        if len(parts) != 2 or any(f is None for f in parts):
            return False
        f1, f2 = parts
        return (
            n.is_normal_in(g)
            and (a is None or a.is_subgroup_of(n))
            and f1.order < n.order
            and f2.order < n.order
            and all(x * y == y * x for x in f1.generators for y in f2.generators)
            and join(g, f1, f2).order == n.order
        )
    raise ValueError(f"unknown check name {check_name!r}")
