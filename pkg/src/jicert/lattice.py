"""Normal subgroup lattices, chief series, critical pairs, central decompositions.

Everything here enumerates elements, so inputs must be dense-mode groups.
All returned subgroup lists are sorted by (order, canonical element list),
which makes every search in this module deterministic.
"""

from __future__ import annotations

import functools
import math
from typing import Iterator, NamedTuple, Optional

from .errors import KernelBugError, NotNormalError
from .group import (
    PermGroup,
    center,
    centralizer,
    centralizer_of_section,
    conjugacy_classes,
    e_p_subgroup,
    intersection,
    normal_closure,
    product_order,
    subgroup_generated,
)
from .hom import quotient
from .perm import Permutation
from .simples import SimpleTypeId, group_fingerprint, identify_simple_type


class CriticalPair(NamedTuple):
    """Pair of normal subgroups B < A such that every normal N < A lies in B."""

    top: PermGroup
    bottom: PermGroup


def _sorted_groups(groups) -> tuple[PermGroup, ...]:
    return tuple(sorted(groups, key=lambda s: (s.order, s.canonical_key())))


def _proper_in(n: PermGroup, g: PermGroup) -> bool:
    return n.order < g.order


@functools.lru_cache(maxsize=None)
def normal_subgroups(g: PermGroup) -> tuple[PermGroup, ...]:
    """All normal subgroups of g, sorted by (order, canonical element list).

    A subgroup is normal iff it is a union of conjugacy classes, so the lattice
    is generated by closing class representatives into the subgroups already
    found: the generating set of each candidate is a union of full classes,
    hence conjugation-stable, hence the closure is normal.
    """
    classes = conjugacy_classes(g)
    trivial = PermGroup.trivial(g.degree)
    found: dict[frozenset[Permutation], PermGroup] = {trivial.elements(): trivial}
    frontier = [trivial]
    while frontier:
        n = frontier.pop()
        for rep, _cls in classes:
            if rep in n.elements():
                continue
            m = normal_closure(g, n.generators + (rep,))
            if m.elements() not in found:
                found[m.elements()] = m
                frontier.append(m)
    return _sorted_groups(found.values())


def minimal_normal_subgroups(g: PermGroup) -> tuple[PermGroup, ...]:
    """Minimal elements among the nontrivial normal subgroups (g itself counts
    when it is simple)."""
    if g.is_trivial():
        raise ValueError("the trivial group has no nontrivial normal subgroup")
    nontrivial = [n for n in normal_subgroups(g) if not n.is_trivial()]
    return _sorted_groups(
        n
        for n in nontrivial
        if not any(m.order < n.order and m.is_subgroup_of(n) for m in nontrivial)
    )


@functools.lru_cache(maxsize=None)
def maximal_normal_subgroups(g: PermGroup) -> tuple[PermGroup, ...]:
    """Maximal elements among the proper normal subgroups (trivial counts when
    g is simple)."""
    if g.is_trivial():
        raise ValueError("the trivial group has no proper normal subgroup")
    proper = [n for n in normal_subgroups(g) if _proper_in(n, g)]
    return _sorted_groups(
        n
        for n in proper
        if not any(n.order < m.order and n.is_subgroup_of(m) for m in proper)
    )


def _covers(g: PermGroup, lo: PermGroup, hi: PermGroup) -> bool:
    """hi covers lo in the normal lattice: nothing normal strictly between."""
    return not any(
        lo.order < n.order < hi.order and lo.is_subgroup_of(n) and n.is_subgroup_of(hi)
        for n in normal_subgroups(g)
    )


def chief_factor_pairs(g: PermGroup) -> tuple[tuple[PermGroup, PermGroup], ...]:
    """All covering pairs (bottom, top) of the normal lattice of g."""
    normals = normal_subgroups(g)
    out = []
    for lo in normals:
        for hi in normals:
            if lo.order < hi.order and lo.is_subgroup_of(hi) and _covers(g, lo, hi):
                out.append((lo, hi))
    return tuple(out)


def chief_series(g: PermGroup) -> tuple[PermGroup, ...]:
    """An ascending chief series 1 = N_0 < ... < N_k = g.

    Consecutive quotients N_{i+1}/N_i are minimal normal subgroups of g/N_i,
    equivalently each step is a covering pair of the normal lattice. Ties are
    broken by (order, canonical element list), so the series is deterministic.
    """
    normals = normal_subgroups(g)
    series = [normals[0]]
    while series[-1].order < g.order:
        cur = series[-1]
        step = next(
            n
            for n in normals
            if cur.order < n.order and cur.is_subgroup_of(n) and _covers(g, cur, n)
        )
        series.append(step)
    return tuple(series)


def is_critical_pair(
    g: PermGroup, a: PermGroup, b: PermGroup
) -> tuple[bool, Optional[PermGroup]]:
    """Whether every normal subgroup of g properly inside a lies inside b.

    Returns (True, None) or (False, witness) with the least offending normal
    subgroup as witness. a = b is rejected: the pair carries no section.
    """
    for sub in (a, b):
        if not sub.is_normal_in(g):
            raise NotNormalError("critical pair members must be normal")
    if not b.is_subgroup_of(a):
        raise ValueError("bottom of a critical pair must lie in the top")
    if a.order == b.order:
        raise ValueError("degenerate pair: top equals bottom")
    for n in normal_subgroups(g):
        if _proper_in(n, a) and n.is_subgroup_of(a) and not n.is_subgroup_of(b):
            return False, n
    return True, None


def critical_pairs(g: PermGroup) -> tuple[CriticalPair, ...]:
    """All critical pairs of g, ascending in the top subgroup.

    For each nontrivial normal A the only possible partner is the join B of
    all normal subgroups properly inside A; the pair exists iff B < A.
    """
    normals = normal_subgroups(g)
    out = []
    for a in normals:
        if a.is_trivial():
            continue
        inside = [n for n in normals if _proper_in(n, a) and n.is_subgroup_of(a)]
        gens = [p for n in inside for p in n.generators]
        b = subgroup_generated(g, gens)
        if b.order < a.order:
            out.append(CriticalPair(a, b))
    return tuple(out)


def find_critical_refinement(g: PermGroup, k: PermGroup, lsub: PermGroup) -> CriticalPair:
    """Critical pair (A, B) with A/B carrying the chief factor k/lsub.

    A is the least normal subgroup inside k not inside lsub and B = A n lsub.
    Minimality of A forces A*lsub = k, A/B isomorphic to k/lsub with the same
    section centralizer, and criticality of (A, B); all four consequences are
    re-verified on the output and a violation is reported as a kernel bug.
    """
    for sub in (k, lsub):
        if not sub.is_normal_in(g):
            raise NotNormalError("chief factor members must be normal")
    if not lsub.is_subgroup_of(k) or lsub.order == k.order:
        raise ValueError("need lsub properly inside k")
    if not _covers(g, lsub, k):
        raise ValueError("k/lsub is not a chief factor: a normal subgroup lies between")
    a = next(
        n
        for n in normal_subgroups(g)
        if n.is_subgroup_of(k) and not n.is_subgroup_of(lsub)
    )
    b = intersection(a, lsub)
    if product_order(a, lsub) != k.order:
        raise KernelBugError("refinement does not generate the chief factor top")
    qa, _ = quotient(a, b)
    qk, _ = quotient(k, lsub)
    if group_fingerprint(qa) != group_fingerprint(qk):
        raise KernelBugError("refined section is not isomorphic to the chief factor")
    if centralizer_of_section(g, a, b) != centralizer_of_section(g, k, lsub):
        raise KernelBugError("refined section has a different centralizer")
    ok, _witness = is_critical_pair(g, a, b)
    if not ok:
        raise KernelBugError("refined pair is not critical")
    return CriticalPair(a, b)


def decompose_char_simple(q: PermGroup) -> tuple[SimpleTypeId, int]:
    """Write a characteristically simple group as (simple type, multiplicity).

    Abelian inputs must be elementary abelian; nonabelian inputs must be a
    direct power of a simple group, whose isomorphism type is read off any
    minimal normal subgroup. Anything else raises ValueError, which signals
    that the input was not a chief factor.
    """
    if q.is_trivial():
        raise ValueError("the trivial group is not characteristically simple")
    if q.is_abelian():
        p = min(x.order() for x in q.elements() if not x.is_identity())
        k = round(math.log(q.order, p))
        if p**k != q.order or any(x.order() not in (1, p) for x in q.elements()):
            raise ValueError("abelian input is not elementary abelian")
        return SimpleTypeId.cyclic(p), k
    s = minimal_normal_subgroups(q)[0]
    tid = identify_simple_type(s)
    k = round(math.log(q.order, s.order))
    if s.order**k != q.order:
        raise ValueError("input is not a direct power of a simple group")
    return tid, k


def composition_factors(g: PermGroup) -> dict[str, int]:
    """Composition factor multiplicities, keyed by simple type name.

    Computed by refining a chief series: a chief factor isomorphic to S^k
    contributes k composition factors S. The multiset does not depend on the
    chosen series.
    """
    series = chief_series(g)
    out: dict[str, int] = {}
    for lo, hi in zip(series, series[1:]):
        q, _ = quotient(hi, lo)
        tid, k = decompose_char_simple(q)
        out[tid.name] = out.get(tid.name, 0) + k
    return out


# -- central decompositions --------------------------------------------------


def _is_prime_power(n: int) -> tuple[bool, int]:
    for p in range(2, n + 1):
        if p * p > n:
            return True, n
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1, p
    return False, 0


def _abelian_split(g: PermGroup) -> Optional[list[PermGroup]]:
    if g.is_trivial():
        return None
    is_pp, p = _is_prime_power(g.order)
    if not is_pp:
        # Elements of p-power order form one factor, elements of order prime
        # to p the other; both are proper and together they span g.
        p = min(q for q in range(2, g.order + 1) if g.order % q == 0)
        part = [x for x in g.elements() if _is_ppow(x.order(), p)]
        rest = [x for x in g.elements() if x.order() % p != 0]
        return [subgroup_generated(g, part), subgroup_generated(g, rest)]
    if max(x.order() for x in g.elements()) == g.order:
        return None  # cyclic of prime power order: the subgroup lattice is a chain
    # Non-cyclic abelian p-group: pull back two distinct hyperplanes of the
    # quotient by the p-th powers.
    ep = e_p_subgroup(g, p)
    q, proj = quotient(g, ep)
    basis: list[Permutation] = []
    span = PermGroup.trivial(q.degree)
    for x in q.sorted_elements():
        if span.contains(x):
            continue
        basis.append(x)
        span = subgroup_generated(q, basis)
        if span.order == q.order:
            break
    w1 = subgroup_generated(q, basis[:-1])
    w2 = subgroup_generated(q, basis[1:])
    return [proj.preimage(w1), proj.preimage(w2)]


def _is_ppow(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _central_factor_scan(g: PermGroup) -> Optional[list[PermGroup]]:
    """Search (N, C_g(N)) over normal subgroups for a central decomposition.

    Complete for nonabelian g: if g = H*K with [H, K] = 1 and both proper,
    then N = C(C(H)) is normal (it is a factor in g = N * C(N), so inner
    conjugation fixes it), C(N) is proper unless N is central, and the central
    case collapses to g = K * Z(g) with K normal. Either way some normal
    subgroup passes the scan below.
    """
    for n in normal_subgroups(g):
        if n.is_trivial() or not _proper_in(n, g):
            continue
        c = centralizer(g, n)
        if _proper_in(c, g) and product_order(n, c) == g.order:
            return [n, c]
    return None


def central_decomposition(
    g: PermGroup, exhaustive_bound: int = 300
) -> Optional[list[PermGroup]]:
    """Two proper subgroups that commute elementwise and generate g, or None.

    None is a definitive verdict: the searches are complete (abelian structure
    on one side, the normal-subgroup centralizer scan on the other). Below
    exhaustive_bound a raw scan over all subgroup pairs backs the verdict up.
    """
    found = _abelian_split(g) if g.is_abelian() else _central_factor_scan(g)
    if found is not None:
        h, k = found
        if not (_proper_in(h, g) and _proper_in(k, g)):
            raise KernelBugError("central factor is not proper")
        if product_order(h, k) != g.order or not all(
            x * y == y * x for x in h.generators for y in k.generators
        ):
            raise KernelBugError("central factors do not decompose the group")
        return found
    if 1 < g.order <= exhaustive_bound:
        subs = all_subgroups(g)
        for h in subs:
            if not _proper_in(h, g):
                continue
            c = centralizer(g, h)
            for k in subs:
                if (
                    _proper_in(k, g)
                    and k.is_subgroup_of(c)
                    and product_order(h, k) == g.order
                ):
                    return [h, k]
    return None


def centdec_witness(
    g: PermGroup, k: PermGroup, lsub: PermGroup
) -> tuple[PermGroup, PermGroup]:
    """For decomposable g: normal H and maximal normal M of lsub with
    H not inside M and k not inside H.

    k must be a non-central subgroup and lsub a nontrivial normal subgroup
    (maximal normal subgroups of the trivial group do not exist). Such a pair
    always exists for decomposable g; exhaustion is a kernel bug.
    """
    if central_decomposition(g) is None:
        raise ValueError("group is not centrally decomposable")
    if not k.is_subgroup_of(g) or k.is_subgroup_of(center(g)):
        raise ValueError("k must be a non-central subgroup")
    if not lsub.is_normal_in(g):
        raise NotNormalError("lsub must be normal")
    if lsub.is_trivial():
        raise ValueError("lsub must be nontrivial")
    for h in normal_subgroups(g):
        if k.is_subgroup_of(h):
            continue
        for m in maximal_normal_subgroups(lsub):
            if not h.is_subgroup_of(m):
                return h, m
    raise KernelBugError("no witness pair found for a decomposable group")


# -- full subgroup enumeration ------------------------------------------------


@functools.lru_cache(maxsize=None)
def all_subgroups(g: PermGroup) -> tuple[PermGroup, ...]:
    """Every subgroup of g, sorted by (order, canonical element list).

    Breadth-first cyclic extension: every subgroup arises from the trivial one
    by repeatedly adjoining an element of prime power order, so extending each
    found subgroup by all such elements outside it reaches everything.
    Exponential in general; callers gate on the group order.
    """
    ppow = [x for x in g.sorted_elements() if _is_prime_power(x.order())[0]]
    trivial = PermGroup.trivial(g.degree)
    found: dict[frozenset[Permutation], PermGroup] = {trivial.elements(): trivial}
    frontier = [trivial]
    while frontier:
        h = frontier.pop()
        for x in ppow:
            if h.contains(x):
                continue
            m = subgroup_generated(g, h.generators + (x,))
            if m.elements() not in found:
                found[m.elements()] = m
                frontier.append(m)
    return _sorted_groups(found.values())


def nonnormal_subgroups(g: PermGroup) -> Iterator[PermGroup]:
    for h in all_subgroups(g):
        if not h.is_normal_in(g):
            yield h
