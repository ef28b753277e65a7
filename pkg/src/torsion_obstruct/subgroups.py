"""Subgroup enumeration, the subgroup lattice and its Moebius function.

Subgroups are held internally as integer bitmasks over element indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from weakref import WeakKeyDictionary

from .errors import ResourceError
from .groups import DEFAULT_ORDER_CAP, FiniteGroup, check_cap

DEFAULT_LATTICE_CAP = 20_000


def _mask(elems) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def _elements(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class SubgroupRecord:
    mask: int
    order: int
    generators: tuple[int, ...]

    @property
    def elements(self) -> frozenset[int]:
        return frozenset(_elements(self.mask))


class SubgroupLattice:
    """All subgroups of ``G``, found by joining cyclic subgroups breadth-first."""

    def __init__(self, g: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> None:
        self.group = g
        self.cap = cap
        self.records = self._enumerate()
        self.index = {r.mask: i for i, r in enumerate(self.records)}

    def _enumerate(self) -> list[SubgroupRecord]:
        g = self.group
        cyclic: dict[int, int] = {}
        for x in range(g.order):
            m = _mask(g.powers(x))
            cyclic.setdefault(m, x)
        cyc_items = sorted(cyclic.items(), key=lambda kv: (bin(kv[0]).count("1"), kv[1]))
        found: dict[int, tuple[int, ...]] = {1: ()}
        for m, x in cyc_items:
            found.setdefault(m, (x,))
        frontier = [m for m, _ in cyc_items if m != 1]
        while frontier:
            nxt = []
            for hm in frontier:
                gens = found[hm]
                for cm, x in cyc_items:
                    if cm & ~hm == 0:
                        continue
                    k = _mask(g.closure(gens + (x,)))
                    if k not in found:
                        found[k] = gens + (x,)
                        nxt.append(k)
                        if len(found) > self.cap:
                            raise ResourceError(f"{g.name} has more than {self.cap} subgroups")
            frontier = nxt
        recs = [SubgroupRecord(m, bin(m).count("1"), gens) for m, gens in found.items()]
        recs.sort(key=lambda r: (r.order, _elements(r.mask)))
        return recs

    def __len__(self) -> int:
        return len(self.records)

    @property
    def whole(self) -> int:
        return len(self.records) - 1

    @cached_property
    def moebius(self) -> list[int]:
        """``mu(H, G)`` for every subgroup ``H`` (by record index)."""
        recs = self.records
        n = len(recs)
        mu = [0] * n
        mu[n - 1] = 1
        for i in range(n - 2, -1, -1):
            hm = recs[i].mask
            s = 0
            for j in range(i + 1, n):
                if mu[j] and recs[j].order % recs[i].order == 0 and recs[j].mask & hm == hm:
                    s += mu[j]
            mu[i] = -s
        return mu

    @cached_property
    def conjugacy_class_of(self) -> list[int]:
        """Index of the least record conjugate to each record."""
        g = self.group
        out = [-1] * len(self.records)
        for i, r in enumerate(self.records):
            if out[i] >= 0:
                continue
            elems = _elements(r.mask)
            for t in range(g.order):
                cm = _mask(g.conjugate(h, t) for h in elems)
                out[self.index[cm]] = i
        return out

    def subgroup_group(self, i: int) -> FiniteGroup:
        r = self.records[i]
        return self.group.subgroup(_elements(r.mask), name=f"{self.group.name}[{i}]")


_LATTICES: "WeakKeyDictionary[FiniteGroup, SubgroupLattice]" = WeakKeyDictionary()


def subgroup_lattice(g: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    lat = _LATTICES.get(g)
    if lat is None:
        lat = SubgroupLattice(g, cap)
        _LATTICES[g] = lat
    return lat


def all_subgroups(g: FiniteGroup, cap: int | None = DEFAULT_ORDER_CAP) -> list[frozenset[int]]:
    """Every subgroup as an element set, sorted by (order, elements)."""
    check_cap(g, cap)
    return [r.elements for r in subgroup_lattice(g).records]


def index2_subgroups(g: FiniteGroup, cap: int | None = DEFAULT_ORDER_CAP) -> list[frozenset[int]]:
    """Kernels of the surjections ``G -> C2``, read off the abelianisation.

    Each such kernel contains ``G'``; the surjections are the +-1 valued
    nontrivial characters of ``G/G'``.
    """
    from .characters import character_table

    check_cap(g, cap)
    if g.order % 2:
        return []
    ids = g.coset_ids(g.derived_subgroup)
    q = g.quotient(g.derived_subgroup)
    tab = character_table(q, cap=None)
    cd = q.conjugacy
    out = []
    for row in tab.rows[1:]:
        if all(v == 1 or v == -1 for v in row):
            kernel = frozenset(x for x in range(g.order) if row[cd.class_of[ids[x]]] == 1)
            out.append(kernel)
    return sorted(out, key=sorted)
