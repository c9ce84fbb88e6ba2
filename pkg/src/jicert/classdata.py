"""Classes of finite simple groups and Schur multiplier reference data.

A class here is a plain set of isomorphism types. The closure check asks, for
each prime p whose cyclic group lies in the class, whether the class also
contains every nonabelian simple group (within the table bound) whose Schur
multiplier has order divisible by p. The table bound is part of every verdict;
the check never claims anything beyond it.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable

from .errors import KernelBugError
from .group import PermGroup, center, derived_subgroup
from .hom import quotient
from .lattice import composition_factors
from .library import sl2
from .simples import SimpleGroupRow, SimpleTypeId, is_simple, simple_table_rows


@dataclass(frozen=True)
class SimpleClass:
    """A set of simple isomorphism types, closed over nothing by itself."""

    members: frozenset[SimpleTypeId]

    @property
    def primes(self) -> frozenset[int]:
        """Primes p with the cyclic group of order p in the class."""
        return frozenset(m.order for m in self.members if m.is_cyclic)

    @property
    def member_names(self) -> frozenset[str]:
        return frozenset(m.name for m in self.members)


@dataclass(frozen=True)
class SchurTable:
    """Nonabelian simple groups up to order_bound with Schur multiplier orders."""

    rows: tuple[SimpleGroupRow, ...]
    order_bound: int

    @staticmethod
    def load(order_bound: int = 1_000_000) -> SchurTable:
        return _load_checked(order_bound)

    def multiplier_order(self, name: str) -> int:
        for row in self.rows:
            if row.name == name:
                return row.multiplier_order
        raise KeyError(name)


@functools.lru_cache(maxsize=None)
def _load_checked(order_bound: int) -> SchurTable:
    rows = tuple(r for r in simple_table_rows() if r.order <= order_bound)
    table = SchurTable(rows=rows, order_bound=order_bound)
    _spot_check(table)
    return table


def _spot_check(table: SchurTable) -> None:
    """Witness one table row: SL(2,5) is a perfect central extension, with
    center of order 2, of a simple group of order 60, so that row's
    multiplier order must be even."""
    s = sl2(5)
    if derived_subgroup(s).order != s.order:
        raise KernelBugError("SL(2,5) should be perfect")
    z = center(s)
    if z.order != 2:
        raise KernelBugError("SL(2,5) should have center of order 2")
    q, _ = quotient(s, z)
    if q.order != 60 or not is_simple(q):
        raise KernelBugError("SL(2,5) modulo its center should be simple of order 60")
    for row in table.rows:
        if row.order == 60:
            if row.multiplier_order % 2 != 0:
                raise KernelBugError("order-60 multiplier row contradicts its double cover")
            return
    if table.order_bound >= 60:
        raise KernelBugError("table is missing the order-60 simple group")


@dataclass(frozen=True)
class SchurClosureVerdict:
    ok: bool
    missing: tuple[str, ...]
    order_bound: int

    @property
    def text(self) -> str:
        if self.ok:
            return f"pass (up to order {self.order_bound})"
        return f"fail: missing {', '.join(self.missing)} (up to order {self.order_bound})"


def schur_closure_check(cls: SimpleClass, table: SchurTable) -> SchurClosureVerdict:
    """Whether the class contains every tabulated nonabelian simple group whose
    multiplier order is divisible by one of the class's primes."""
    names = cls.member_names
    missing = sorted(
        {
            row.name
            for p in cls.primes
            for row in table.rows
            if row.multiplier_order % p == 0 and row.name not in names
        }
    )
    return SchurClosureVerdict(
        ok=not missing, missing=tuple(missing), order_bound=table.order_bound
    )


def count_class_factors(g: PermGroup, cls: SimpleClass) -> int:
    """Number of composition factors of g lying in the class, with multiplicity."""
    names = cls.member_names
    return sum(k for name, k in composition_factors(g).items() if name in names)


def class_from_names(names: Iterable[str], table: SchurTable) -> SimpleClass:
    """Class with the named members: C<p> for primes, table names otherwise.

    Type ids built here carry an empty fingerprint placeholder, since the
    table stores no element-order data; they are meant for name-based
    counting and closure checks, not for comparison against identified
    groups.
    """
    members = set()
    for name in names:
        m = re.fullmatch(r"C(\d+)", name)
        if m:
            members.add(SimpleTypeId.cyclic(int(m.group(1))))
            continue
        for row in table.rows:
            if row.name == name:
                members.add(
                    SimpleTypeId(name=row.name, order=row.order, fingerprint=())
                )
                break
        else:
            raise KeyError(f"unknown simple group name {name!r}")
    return SimpleClass(frozenset(members))
