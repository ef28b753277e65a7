"""Finite groups as explicit multiplication tables.

Elements are the integers ``0 .. order-1`` and the identity is always ``0``.
Every constructor numbers elements canonically so tables (and therefore
cache keys) are reproducible across runs.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import GroupConstructionError, ResourceError

DEFAULT_ORDER_CAP = 200

_LABELS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class ConjugacyData:
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    class_sizes: tuple[int, ...]
    class_of: tuple[int, ...]
    # power_table[i][k] is the class of representatives[i] ** k, 0 <= k < exponent
    power_table: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.classes)

    def power_class(self, i: int, k: int) -> int:
        row = self.power_table[i]
        return row[k % len(row)]

    @property
    def power_map(self) -> tuple[tuple[int, ...], ...]:
        return self.power_table


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``table[i][j]`` is the index of the product ``i*j``.  Construction
    verifies the group axioms (associativity exhaustively up to order 200).
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]] | np.ndarray,
        name: str | None = None,
        generators: Sequence[int] | None = None,
        generator_labels: dict[str, int] | None = None,
        check: bool = True,
    ) -> None:
        arr = np.asarray(table, dtype=np.int32)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise GroupConstructionError("table must be a non-empty square array")
        n = arr.shape[0]
        arr.setflags(write=False)
        self._table = arr
        self._rows: list[list[int]] = arr.tolist()
        self.order = n
        self.name = name or f"G{n}"
        if check:
            self._check_axioms()
        inv = [0] * n
        for x in range(n):
            row = self._rows[x]
            for y in range(n):
                if row[y] == 0:
                    inv[x] = y
                    break
        self.inverses: tuple[int, ...] = tuple(inv)
        self.element_orders: tuple[int, ...] = tuple(self._order_of(x) for x in range(n))
        if generators is None:
            generators = self._greedy_generators()
        self.generators: tuple[int, ...] = tuple(generators)
        if generator_labels is None:
            generator_labels = {_LABELS[i]: g for i, g in enumerate(self.generators[:26])}
        self.generator_labels = dict(generator_labels)

    # -- axioms -------------------------------------------------------------

    def _check_axioms(self) -> None:
        t = self._table
        n = self.order
        if t.min() < 0 or t.max() >= n:
            raise GroupConstructionError("table entries out of range")
        ident = np.arange(n)
        if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
            raise GroupConstructionError("element 0 is not a two-sided identity")
        for row in (t, t.T):
            srt = np.sort(row, axis=1)
            if not np.array_equal(srt, np.broadcast_to(ident, (n, n))):
                raise GroupConstructionError("table is not a Latin square (inverses fail)")
        if n <= DEFAULT_ORDER_CAP:
            left = t[t]  # [a, b, c] -> (ab)c
            right = t[:, t]  # [a, b, c] -> a(bc)
            if not np.array_equal(left, right):
                raise GroupConstructionError("table is not associative")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 20000))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise GroupConstructionError("table is not associative")

    def _order_of(self, x: int) -> int:
        k, y = 1, x
        rows = self._rows
        while y != 0:
            y = rows[y][x]
            k += 1
        return k

    def _greedy_generators(self) -> tuple[int, ...]:
        # elements of large order first; keep one only if it enlarges the span
        cand = sorted(range(1, self.order), key=lambda x: (-self.element_orders[x], x))
        gens: list[int] = []
        span = frozenset([0])
        for x in cand:
            if len(span) == self.order:
                break
            if x not in span:
                gens.append(x)
                span = self.closure(gens)
        return tuple(gens)

    # -- arithmetic ---------------------------------------------------------

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def rows(self) -> list[list[int]]:
        return self._rows

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def product(self, elems: Iterable[int]) -> int:
        rows = self._rows
        acc = 0
        for e in elems:
            acc = rows[acc][e]
        return acc

    def power(self, a: int, k: int) -> int:
        k %= self.element_orders[a]
        return self.powers(a)[k]

    def powers(self, a: int) -> tuple[int, ...]:
        return self._power_lists[a]

    @cached_property
    def _power_lists(self) -> list[tuple[int, ...]]:
        rows = self._rows
        out = []
        for x in range(self.order):
            seq = [0]
            y = x
            while y != 0:
                seq.append(y)
                y = rows[y][x]
            out.append(tuple(seq))
        return out

    def commutator(self, a: int, b: int) -> int:
        """``a b a^-1 b^-1`` (the convention of the surface relation)."""
        r = self._rows
        inv = self.inverses
        return r[r[r[a][b]][inv[a]]][inv[b]]

    def conjugate(self, x: int, g: int) -> int:
        """``g x g^-1``."""
        r = self._rows
        return r[r[g][x]][self.inverses[g]]

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._table, self._table.T))

    @cached_property
    def center(self) -> frozenset[int]:
        t = self._table
        return frozenset(int(x) for x in np.nonzero((t == t.T).all(axis=1))[0])

    def involutions(self) -> list[int]:
        return [x for x in range(self.order) if self.element_orders[x] == 2]

    # -- subgroups ----------------------------------------------------------

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by ``gens`` (right-multiplication BFS from 1)."""
        gens = [g for g in dict.fromkeys(gens) if g != 0]
        rows = self._rows
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                row = rows[x]
                for g in gens:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def generates(self, gens: Iterable[int]) -> bool:
        return len(self.closure(gens)) == self.order

    @cached_property
    def conjugacy(self) -> ConjugacyData:
        n = self.order
        rows = self._rows
        inv = self.inverses
        class_of = [-1] * n
        classes: list[tuple[int, ...]] = []
        for x in range(n):
            if class_of[x] >= 0:
                continue
            idx = len(classes)
            orbit = set()
            for g in range(n):
                orbit.add(rows[rows[g][x]][inv[g]])
            for y in orbit:
                class_of[y] = idx
            classes.append(tuple(sorted(orbit)))
        reps = tuple(c[0] for c in classes)
        e = self.exponent
        power_table = []
        for r in reps:
            p = self.powers(r)
            o = len(p)
            power_table.append(tuple(class_of[p[k % o]] for k in range(e)))
        return ConjugacyData(
            classes=tuple(classes),
            representatives=reps,
            class_sizes=tuple(len(c) for c in classes),
            class_of=tuple(class_of),
            power_table=tuple(power_table),
        )

    @cached_property
    def derived_subgroup(self) -> frozenset[int]:
        comms = {self.commutator(a, b) for a in range(self.order) for b in range(self.order)}
        return self.closure(comms)

    def is_normal(self, sub: frozenset[int]) -> bool:
        return all(self.conjugate(h, g) in sub for g in self.generators for h in sub)

    def subgroup(self, elements: Iterable[int], name: str | None = None) -> "FiniteGroup":
        """The subgroup on ``elements`` as a standalone group (sorted relabelling)."""
        elems = sorted(set(elements))
        if not elems or elems[0] != 0:
            raise GroupConstructionError("subgroup must contain the identity")
        pos = {e: i for i, e in enumerate(elems)}
        rows = self._rows
        try:
            tab = [[pos[rows[a][b]] for b in elems] for a in elems]
        except KeyError:
            raise GroupConstructionError("elements are not closed under multiplication") from None
        return FiniteGroup(tab, name=name or f"{self.name}<{len(elems)}>", check=False)

    def coset_ids(self, normal: frozenset[int]) -> list[int]:
        """Coset number of each element, cosets ordered by their least element."""
        rows = self._rows
        coset_id = [-1] * self.order
        cid = 0
        nlist = sorted(normal)
        for x in range(self.order):
            if coset_id[x] >= 0:
                continue
            for h in nlist:
                coset_id[rows[x][h]] = cid
            cid += 1
        return coset_id

    def quotient(self, normal: frozenset[int], name: str | None = None) -> "FiniteGroup":
        """``G / normal`` with cosets numbered by their least element."""
        rows = self._rows
        coset_id = self.coset_ids(normal)
        reps = []
        for x in range(self.order):
            if coset_id[x] == len(reps):
                reps.append(x)
        tab = [[coset_id[rows[a][b]] for b in reps] for a in reps]
        return FiniteGroup(tab, name=name or f"{self.name}/N{len(normal)}", check=False)

    # -- descriptions -------------------------------------------------------

    @cached_property
    def words(self) -> tuple[str, ...]:
        """Shortest word (BFS over the generator labels) for each element."""
        labels = sorted(self.generator_labels.items(), key=lambda kv: kv[1])
        out: list[str | None] = [None] * self.order
        out[0] = "1"
        q = deque([0])
        while q:
            x = q.popleft()
            for lab, g in labels:
                y = self._rows[x][g]
                if out[y] is None:
                    out[y] = lab if x == 0 else f"{out[x]}*{lab}"
                    q.append(y)
        return tuple(w if w is not None else f"e{i}" for i, w in enumerate(out))

    @cached_property
    def table_hash(self) -> str:
        return hashlib.sha256(self._table.astype("<i4").tobytes() + str(self.order).encode()).hexdigest()

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order


# -- constructors -------------------------------------------------------------


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise GroupConstructionError(msg)


def make_cyclic(n: int) -> FiniteGroup:
    _require(isinstance(n, int) and n >= 1, f"cyclic group needs n >= 1, got {n!r}")
    idx = np.arange(n)
    tab = (idx[:, None] + idx[None, :]) % n
    gens = (1,) if n > 1 else ()
    return FiniteGroup(tab, name=f"C{n}", generators=gens)


def make_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``; element ``r^i s^e`` has index ``i + n*e``."""
    _require(isinstance(n, int) and n >= 1, f"dihedral group needs n >= 1, got {n!r}")
    size = 2 * n
    tab = np.empty((size, size), dtype=np.int32)
    for e in (0, 1):
        for i in range(n):
            for f in (0, 1):
                for j in range(n):
                    k = (i + (j if e == 0 else -j)) % n
                    tab[i + n * e, j + n * f] = k + n * ((e + f) % 2)
    gens = (1, n) if n > 1 else (n,)
    return FiniteGroup(tab, name=f"D{n}", generators=gens)


def make_dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group ``<x, y | x^2n, x^n = y^2, y^-1 x y = x^-1>`` of order ``4n``.

    Element ``x^i y^e`` has index ``i + 2n*e``.
    """
    _require(isinstance(n, int) and n >= 2, f"dicyclic group needs n >= 2, got {n!r}")
    m = 2 * n
    size = 2 * m
    tab = np.empty((size, size), dtype=np.int32)
    for e in (0, 1):
        for i in range(m):
            for f in (0, 1):
                for j in range(m):
                    if e == 0:
                        k, s = (i + j) % m, f
                    elif f == 0:
                        k, s = (i - j) % m, 1
                    else:
                        k, s = (i - j + n) % m, 0
                    tab[i + m * e, j + m * f] = k + m * s
    return FiniteGroup(tab, name=f"DC{n}", generators=(1, m))


def semidirect_product(n: int, k: int, r: int) -> FiniteGroup:
    """``Z_n x| Z_k`` with ``b a b^-1 = a^r``; ``a^i b^e`` has index ``i + n*e``."""
    _require(n >= 1 and k >= 1, "semidirect product needs n, k >= 1")
    r %= n if n > 1 else 1
    _require(math.gcd(r, n) == 1 or n == 1, f"r={r} is not a unit mod {n}")
    _require(pow(r, k, n) == 1 % n, f"order of {r} mod {n} does not divide {k}")
    rp = [pow(r, e, n) if n > 1 else 0 for e in range(k)]
    size = n * k
    i = np.arange(n)
    tab = np.empty((size, size), dtype=np.int32)
    for e in range(k):
        for f in range(k):
            block = ((i[:, None] + rp[e] * i[None, :]) % n) + n * ((e + f) % k)
            tab[e * n:(e + 1) * n, f * n:(f + 1) * n] = block
    gens = tuple(g for g in ((1 if n > 1 else None), (n if k > 1 else None)) if g is not None)
    return FiniteGroup(tab, name=f"SD({n},{k},{r})", generators=gens)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Pairs ``(x, y)`` indexed ``x*|H| + y`` (lexicographic)."""
    m = h.order
    tab = (g.table[:, None, :, None] * m + h.table[None, :, None, :]).reshape(g.order * m, g.order * m)
    gens = [x * m for x in g.generators] + list(h.generators)
    return FiniteGroup(tab, name=f"{g.name} x {h.name}", generators=gens)


def central_product(g: FiniteGroup, z_g: int, h: FiniteGroup, z_h: int) -> FiniteGroup:
    """``G x H`` modulo ``{(1,1), (z_G, z_H)}`` for central involutions ``z_G, z_H``."""
    for grp, z in ((g, z_g), (h, z_h)):
        _require(0 <= z < grp.order, f"element {z} out of range for {grp.name}")
        _require(grp.element_orders[z] == 2, f"element {z} of {grp.name} is not an involution")
        _require(z in grp.center, f"element {z} of {grp.name} is not central")
    dp = direct_product(g, h)
    z = z_g * h.order + z_h
    q = dp.quotient(frozenset([0, z]), name=f"CP({g.name},{h.name})")
    return q


def from_generators(
    gens: Sequence[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
    name: str | None = None,
    cap: int = 10_000,
) -> tuple[FiniteGroup, list[Hashable]]:
    """Close concrete elements (permutations, matrices...) under ``mul``.

    Elements are numbered in BFS discovery order from the identity.  Returns
    the group and the list of concrete elements by index.
    """
    elems: list[Hashable] = [identity]
    index = {identity: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for s in gens:
            y = mul(x, s)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                if len(elems) > cap:
                    raise ResourceError(f"closure exceeded {cap} elements")
        i += 1
    n = len(elems)
    tab = [[index[mul(a, b)] for b in elems] for a in elems]
    gen_idx = [index[s] for s in gens]
    return FiniteGroup(tab, name=name, generators=gen_idx), elems


def _perm_mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # apply p then q
    return tuple(q[i] for i in p)


def permutation_group(gens: Sequence[Sequence[int]], name: str | None = None) -> FiniteGroup:
    gens = [tuple(g) for g in gens]
    ident = tuple(range(len(gens[0])))
    grp, _ = from_generators(gens, _perm_mul, ident, name=name)
    return grp


def make_symmetric(n: int) -> FiniteGroup:
    _require(1 <= n <= 6, "symmetric group supported for 1 <= n <= 6")
    if n == 1:
        return FiniteGroup([[0]], name="S1")
    cyc = tuple(list(range(1, n)) + [0])
    tr = tuple([1, 0] + list(range(2, n)))
    return permutation_group([cyc, tr], name=f"S{n}")


def make_alternating(n: int) -> FiniteGroup:
    _require(1 <= n <= 6, "alternating group supported for 1 <= n <= 6")
    if n <= 2:
        return FiniteGroup([[0]], name=f"A{n}")
    gens = [tuple([(i + 1) % 3 if i < 3 else i for i in range(n)])]
    for k in range(3, n):
        # 3-cycles (0 1 k) generate A_n
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return permutation_group(gens, name=f"A{n}")


def _mat_mul_mod(p: int):
    def mul(a, b):
        return (
            (a[0] * b[0] + a[1] * b[2]) % p,
            (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p,
        )
    return mul


def make_sl2(p: int) -> FiniteGroup:
    """``SL(2, p)`` from 2x2 matrices over the prime field (row-major tuples)."""
    _require(p in (2, 3, 5, 7), "SL(2,p) supported for p in 2,3,5,7")
    gens = [(1, 1, 0, 1), (1, 0, 1, 1)]
    grp, _ = from_generators(gens, _mat_mul_mod(p), (1, 0, 0, 1), name=f"SL(2,{p})")
    return grp


# -- invariants ---------------------------------------------------------------


def conjugacy_classes(g: FiniteGroup) -> ConjugacyData:
    return g.conjugacy


def _abelian_group_invariants(q: FiniteGroup) -> list[int]:
    """Prime-power invariants of an abelian group from order statistics."""
    n = q.order
    out: list[int] = []
    for p in _prime_factors(n):
        counts = []
        k = 0
        while True:
            c = sum(1 for o in q.element_orders if (p ** k) % o == 0)
            counts.append(round(math.log(c, p)))
            if c == p ** _valuation(n, p):
                break
            k += 1
        # counts[k] - counts[k-1] = number of cyclic factors of order >= p^k
        ge = [counts[k] - counts[k - 1] for k in range(1, len(counts))] + [0]
        for k in range(len(ge) - 1):
            out.extend([p ** (k + 1)] * (ge[k] - ge[k + 1]))
    return sorted(out)


def abelian_invariants(g: FiniteGroup) -> list[int]:
    """Invariants of ``G/G'`` as sorted prime powers (trivial group -> [])."""
    ab = g.quotient(g.derived_subgroup) if not g.is_abelian else g
    return _abelian_group_invariants(ab)


def derived_series_orders(g: FiniteGroup) -> list[int]:
    out = [g.order]
    cur = g
    while True:
        d = cur.derived_subgroup
        if len(d) == cur.order:
            break
        out.append(len(d))
        if len(d) == 1:
            break
        cur = cur.subgroup(d)
    return out


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def check_cap(g: FiniteGroup, cap: int | None) -> None:
    if cap is not None and g.order > cap:
        raise ResourceError(f"{g.name} has order {g.order} > cap {cap}")


def basic_invariants(g: FiniteGroup) -> tuple:
    cd = g.conjugacy
    return (
        g.order,
        tuple(sorted(cd.class_sizes)),
        tuple(sorted(Counter(g.element_orders).items())),
        tuple(abelian_invariants(g)),
        tuple(derived_series_orders(g)),
        tuple(sorted(Counter(
            (g.element_orders[r], s) for r, s in zip(cd.representatives, cd.class_sizes)
        ).items())),
    )


def is_isomorphic(g: FiniteGroup, h: FiniteGroup, cap: int | None = DEFAULT_ORDER_CAP) -> bool:
    """Invariant screening followed by a backtracking search for generator images."""
    check_cap(g, cap)
    check_cap(h, cap)
    if g.order != h.order:
        return False
    if g.table_hash == h.table_hash:
        return True
    if basic_invariants(g) != basic_invariants(h):
        return False
    from .characters import character_table  # late import: characters depends on groups

    if character_table(g).degrees != character_table(h).degrees:
        return False
    return find_isomorphism(g, h) is not None


def _class_signature(grp: FiniteGroup, x: int) -> tuple[int, int]:
    cd = grp.conjugacy
    return grp.element_orders[x], cd.class_sizes[cd.class_of[x]]


def _extend_hom(g: FiniteGroup, h: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]) -> list[int] | None:
    """Extend ``gens -> imgs`` to a homomorphism on ``<gens>``; None if inconsistent."""
    phi = [-1] * g.order
    phi[0] = 0
    grow, hrow = g.rows, h.rows
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            fx = phi[x]
            for s, t in zip(gens, imgs):
                y = grow[x][s]
                fy = hrow[fx][t]
                if phi[y] < 0:
                    phi[y] = fy
                    nxt.append(y)
                elif phi[y] != fy:
                    return None
        frontier = nxt
    return phi


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> list[int] | None:
    """An explicit isomorphism ``G -> H`` as an image list, or None."""
    if g.order != h.order:
        return None
    gens = list(g.generators)
    cands = []
    for s in gens:
        sig = _class_signature(g, s)
        cands.append([y for y in range(h.order) if _class_signature(h, y) == sig])
    imgs: list[int] = []

    def rec(t: int) -> list[int] | None:
        if t == len(gens):
            phi = _extend_hom(g, h, gens, imgs)
            if phi is None or -1 in phi or len(set(phi)) != h.order:
                return None
            return phi
        for y in cands[t]:
            imgs.append(y)
            ok = _extend_hom(g, h, gens[: t + 1], imgs) is not None
            if ok:
                res = rec(t + 1)
                if res is not None:
                    return res
            imgs.pop()
        return None

    return rec(0)
