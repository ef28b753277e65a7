"""Exact character tables (Dixon-Schneider) and the orthogonal-embedding test.

Class-sum matrices are diagonalised simultaneously over a prime field
``F_p`` with ``p = 1 (mod exponent)``; each character value is then lifted
to ``Z[zeta_e]`` from its eigenvalue multiplicities, which are integers in
``[0, chi(1)]`` and therefore recovered exactly mod ``p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence
from weakref import WeakKeyDictionary

from .cyclotomic import Cyclotomic
from .errors import InternalError, ResourceError
from .groups import DEFAULT_ORDER_CAP, FiniteGroup, check_cap

# -- prime field helpers -------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime ``p = 1 (mod exponent)`` with ``p > 2*order``."""
    p = 2 * order + 1
    p += (1 - p) % exponent
    while not _is_prime(p):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    fac = []
    n = p - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            fac.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        fac.append(n)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    return 1


def _rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _nullspace(mat: list[list[int]], p: int) -> list[list[int]]:
    """Basis of ``{x : mat @ x = 0}`` over ``F_p``."""
    n = len(mat[0])
    red, piv = _rref(mat, p)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, piv):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def _charpoly(m: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial (low degree first) via Hessenberg reduction."""
    n = len(m)
    h = [row[:] for row in m]
    for k in range(1, n - 1):
        i = next((i for i in range(k, n) if h[i][k - 1] % p), None)
        if i is None:
            continue
        if i != k:
            h[i], h[k] = h[k], h[i]
            for row in h:
                row[i], row[k] = row[k], row[i]
        t = pow(h[k][k - 1], p - 2, p)
        for i in range(k + 1, n):
            u = (h[i][k - 1] * t) % p
            if u:
                h[i] = [(a - u * b) % p for a, b in zip(h[i], h[k])]
                for row in h:
                    row[k] = (row[k] + u * row[i]) % p
    polys: list[list[int]] = [[1]]
    for mm in range(1, n + 1):
        prev = polys[mm - 1]
        cur = [0] + prev  # x * prev
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - h[mm - 1][mm - 1] * c) % p
        t = 1
        for i in range(1, mm):
            t = (t * h[mm - i][mm - i - 1]) % p
            coef = (t * h[mm - i - 1][mm - 1]) % p
            if coef:
                for j, c in enumerate(polys[mm - i - 1]):
                    cur[j] = (cur[j] - coef * c) % p
        polys.append(cur)
    return polys[n]


def _roots_mod(poly: list[int], p: int) -> list[int]:
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


# -- the table -----------------------------------------------------------------


def _eigen_exponents(power_sums: Sequence[int], o: int, e: int, p: int, z: int) -> dict[int, int]:
    """Eigenvalue multiset of ``rho(x)`` for ``x`` of order ``o``, as exponents of ``zeta_e``.

    ``power_sums[l-1] = chi(x^l) mod p`` for ``l = 1..deg``; Newton's identities
    give the characteristic polynomial mod ``p``, whose roots are found among
    the ``o``-th roots of unity (distinct mod ``p`` since ``p = 1 mod e``).
    """
    d = len(power_sums)
    el = [1]
    for k in range(1, d + 1):
        acc = 0
        for j in range(1, k + 1):
            t = el[k - j] * power_sums[j - 1]
            acc += t if j % 2 else -t
        el.append(acc * pow(k, p - 2, p) % p)
    poly = [(-el[k] if k % 2 else el[k]) % p for k in range(d + 1)]
    step = e // o
    zo = pow(z, step, p)
    counts: dict[int, int] = {}
    root = 1
    for k in range(o):
        while len(poly) > 1:
            q = [poly[0]]
            for c in poly[1:]:
                q.append((c + q[-1] * root) % p)
            if q[-1]:
                break
            poly = q[:-1]
            counts[step * k] = counts.get(step * k, 0) + 1
        if len(poly) == 1:
            break
        root = root * zo % p
    if len(poly) != 1:
        raise InternalError("eigenvalues are not roots of unity mod p")
    return counts


@dataclass
class CharacterTable:
    group: FiniteGroup
    conductor: int
    rows: list[tuple[Cyclotomic, ...]]
    degrees: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        self.degrees = tuple(int(r[0].to_rational()) for r in self.rows)

    @property
    def classes(self):
        return self.group.conjugacy

    def __len__(self) -> int:
        return len(self.rows)

    def inner_product(self, chi: Sequence[Cyclotomic], psi: Sequence[Cyclotomic]) -> Fraction:
        cd = self.classes
        acc = Cyclotomic.zero(self.conductor)
        for size, a, b in zip(cd.class_sizes, chi, psi):
            acc = acc + a * b.conjugate() * size
        return Fraction(acc.to_rational()) / self.group.order

    def kernel_mask(self, chi: Sequence[Cyclotomic]) -> int:
        """Bit ``i`` set iff class ``i`` lies in the kernel of ``chi``."""
        d = chi[0]
        mask = 0
        for i, v in enumerate(chi):
            if v == d:
                mask |= 1 << i
        return mask

    def conjugate_row(self, i: int) -> int:
        target = tuple(v.conjugate() for v in self.rows[i])
        return self.rows.index(target)

    def power_values(self, chi: Sequence[Cyclotomic], k: int) -> tuple[Cyclotomic, ...]:
        """``g -> chi(g^k)`` per class."""
        cd = self.classes
        return tuple(chi[cd.power_class(i, k)] for i in range(len(cd)))

    @property
    def modular_data(self) -> tuple[int, int]:
        """A prime ``p = 1 mod conductor`` above ``2|G|`` and a primitive ``conductor``-th root mod ``p``."""
        cached = getattr(self, "_modular_cache", None)
        if cached is None:
            p = dixon_prime(self.group.order, self.conductor)
            z = pow(_primitive_root(p), (p - 1) // self.conductor, p)
            cached = self._modular_cache = (p, z)
        return cached

    def reduce_mod_p(self, v: Cyclotomic) -> int:
        p, z = self.modular_data
        acc, f = 0, 1
        for c in v.coeffs:
            acc += int(c) * f
            f = f * z % p
        return acc % p

    @property
    def trivial(self) -> tuple[Cyclotomic, ...]:
        return self.rows[0]

    def order_sum(self, i: int, order: int) -> int:
        """``sum of chi_i(x)`` over elements ``x`` of the given order (a rational integer)."""
        return self._order_sums[i].get(order, 0)

    @property
    def _order_sums(self) -> list[dict[int, int]]:
        cached = getattr(self, "_order_sums_cache", None)
        if cached is not None:
            return cached
        cd = self.classes
        g = self.group
        out = []
        for row in self.rows:
            acc: dict[int, Cyclotomic] = {}
            for i, size in enumerate(cd.class_sizes):
                o = g.element_orders[cd.representatives[i]]
                acc[o] = acc.get(o, Cyclotomic.zero(self.conductor)) + row[i] * size
            out.append({o: int(v.to_rational()) for o, v in acc.items()})
        self._order_sums_cache = out
        return out

    # -- serialisation --------------------------------------------------------

    def to_json(self) -> dict:
        cd = self.classes
        return {
            "conductor": self.conductor,
            "class_sizes": list(cd.class_sizes),
            "representatives": list(cd.representatives),
            "power_maps": [list(r) for r in cd.power_table],
            "rows": [[[int(c) for c in v.coeffs] for v in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, group: FiniteGroup, data: dict) -> "CharacterTable":
        cd = group.conjugacy
        if list(cd.class_sizes) != data["class_sizes"] or list(cd.representatives) != data["representatives"]:
            raise ValueError("serialised table does not match the group's classes")
        m = data["conductor"]
        rows = [tuple(Cyclotomic(m, v) for v in row) for row in data["rows"]]
        return cls(group, m, rows)


_TABLES: "WeakKeyDictionary[FiniteGroup, CharacterTable]" = WeakKeyDictionary()


def character_table(g: FiniteGroup, cap: int | None = DEFAULT_ORDER_CAP) -> CharacterTable:
    """Complete exact character table; memoised per group object."""
    tab = _TABLES.get(g)
    if tab is not None:
        return tab
    check_cap(g, cap)
    tab = _abelian_table(g) if g.is_abelian else _dixon_table(g)
    if sum(d * d for d in tab.degrees) != g.order:
        raise InternalError(f"sum of squared degrees != |G| for {g.name}")
    _TABLES[g] = tab
    return tab


def install_table(g: FiniteGroup, tab: CharacterTable) -> None:
    _TABLES[g] = tab


def _sort_rows(g: FiniteGroup, e: int, rows: list[tuple[Cyclotomic, ...]]) -> list[tuple[Cyclotomic, ...]]:
    def key(row):
        d = int(row[0].to_rational())
        triv = all(v == 1 for v in row)
        return (d, not triv, tuple(v.coeffs for v in row))

    return sorted(rows, key=key)


def _abelian_table(g: FiniteGroup) -> CharacterTable:
    e = g.exponent
    n = g.order
    # homomorphisms G -> Z_e built by extending along a chain of subgroups
    homs: list[list[int]] = [[0] + [-1] * (n - 1)]
    span = [0]
    in_span = [False] * n
    in_span[0] = True
    rows = g.rows
    for x in g.generators:
        if in_span[x]:
            continue
        # m = least positive power of x landing in the current span
        m, y = 1, x
        while not in_span[y]:
            y = rows[y][x]
            m += 1
        new_span = []
        xp = [g.power(x, k) for k in range(m)]
        for k in range(m):
            for s in span:
                new_span.append(rows[s][xp[k]])
        new_homs = []
        step = e // m
        for phi in homs:
            target = phi[y]
            # m * v = target (mod e) has solutions iff m | target (m divides e)
            if target % m:
                raise InternalError("abelian character extension failed")
            base = target // m
            for t in range(m):
                v = (base + t * step) % e
                new = phi[:]
                for k in range(m):
                    for s in span:
                        new[rows[s][xp[k]]] = (phi[s] + k * v) % e
                new_homs.append(new)
        homs = new_homs
        span = new_span
        for s in span:
            in_span[s] = True
    cd = g.conjugacy
    table_rows = [tuple(Cyclotomic.root_of_unity(e, phi[r]) for r in cd.representatives) for phi in homs]
    return CharacterTable(g, e, _sort_rows(g, e, table_rows))


def _structure_matrices(g: FiniteGroup) -> list[list[list[int]]]:
    """``a[i][j][k] = #{x in C_i : x^-1 z_k in C_j}`` for the representative ``z_k``."""
    cd = g.conjugacy
    h = len(cd)
    cls = cd.class_of
    rows = g.rows
    inv = g.inverses
    a = [[[0] * h for _ in range(h)] for _ in range(h)]
    for k, z in enumerate(cd.representatives):
        for x in range(g.order):
            a[cls[x]][cls[rows[inv[x]][z]]][k] += 1
    return a


def _dixon_table(g: FiniteGroup) -> CharacterTable:
    cd = g.conjugacy
    h = len(cd)
    e = g.exponent
    p = dixon_prime(g.order, e)
    a = _structure_matrices(g)
    spaces: list[list[list[int]]] = [[[int(i == j) for j in range(h)] for i in range(h)]]
    order_of_use = sorted(range(1, h), key=lambda i: (cd.class_sizes[i], i))
    for ci in order_of_use:
        if all(len(s) == 1 for s in spaces):
            break
        ai = a[ci]
        nxt = []
        for basis in spaces:
            if len(basis) == 1:
                nxt.append(basis)
                continue
            _, piv = _rref(basis, p)
            # W = B A_i^T ; W = R B with R read off at the pivot columns
            w = [[sum(b[k] * ai[j][k] for k in range(h)) % p for j in range(h)] for b in basis]
            r = [[w[s][pc] for pc in piv] for s in range(len(basis))]
            lams = _roots_mod(_charpoly(r, p), p)
            dim_total = 0
            for lam in lams:
                shifted_t = [[(r[s][t] - (lam if s == t else 0)) % p for s in range(len(r))] for t in range(len(r))]
                ns = _nullspace(shifted_t, p)
                if not ns:
                    continue
                vecs = [[sum(c[s] * basis[s][j] for s in range(len(basis))) % p for j in range(h)] for c in ns]
                vecs, _ = _rref(vecs, p)
                nxt.append(vecs)
                dim_total += len(vecs)
            if dim_total != len(basis):
                raise InternalError(f"class matrix {ci} not diagonalisable mod {p} for {g.name}")
        spaces = nxt
    if len(spaces) != h or any(len(s) != 1 for s in spaces):
        raise InternalError(f"Dixon-Schneider splitting incomplete for {g.name}")

    inv_class = [cd.class_of[g.inverses[r]] for r in cd.representatives]
    sizes = cd.class_sizes
    z = pow(_primitive_root(p), (p - 1) // e, p)
    max_deg = math.isqrt(g.order)
    table_rows = []
    for (v,) in spaces:
        s0 = v[0]
        omega = [(x * pow(s0, p - 2, p)) % p for x in v]
        total = sum(omega[i] * omega[inv_class[i]] * pow(sizes[i], p - 2, p) for i in range(h)) % p
        target = (g.order * pow(total, p - 2, p)) % p
        deg = next((d for d in range(1, max_deg + 1) if (d * d - target) % p == 0), None)
        if deg is None:
            raise InternalError(f"no degree found for a character of {g.name}")
        vals = [(omega[i] * deg * pow(sizes[i], p - 2, p)) % p for i in range(h)]
        row = []
        for i in range(h):
            o = g.element_orders[cd.representatives[i]]
            sums = [vals[cd.power_class(i, l % e)] for l in range(1, deg + 1)]
            row.append(Cyclotomic.from_exponent_counts(e, _eigen_exponents(sums, o, e, p, z)))
        table_rows.append(tuple(row))
    return CharacterTable(g, e, _sort_rows(g, e, table_rows))


# -- indicators, determinants, embeddings ------------------------------------------


def _as_values(tab: CharacterTable, chi) -> tuple[Cyclotomic, ...]:
    return tab.rows[chi] if isinstance(chi, int) else tuple(chi)


def frobenius_schur(tab: CharacterTable, chi) -> int:
    """``(1/|G|) sum chi(g^2)``: 1 real, 0 complex, -1 quaternionic."""
    vals = _as_values(tab, chi)
    cd = tab.classes
    acc = Cyclotomic.zero(tab.conductor)
    for i, size in enumerate(cd.class_sizes):
        acc = acc + vals[cd.power_class(i, 2)] * size
    q = Fraction(acc.to_rational()) / tab.group.order
    if q.denominator != 1:
        raise InternalError("Frobenius-Schur indicator is not an integer")
    return int(q)


def determinant_character(tab: CharacterTable, chi) -> tuple[Cyclotomic, ...]:
    """Linear character ``g -> det rho(g)``, read off the eigenvalues of ``rho(g)``."""
    vals = _as_values(tab, chi)
    d = int(vals[0].to_rational())
    p, z = tab.modular_data
    red = [tab.reduce_mod_p(v) for v in vals]
    cd = tab.classes
    e = tab.conductor
    out = []
    for i in range(len(cd)):
        o = tab.group.element_orders[cd.representatives[i]]
        sums = [red[cd.power_class(i, l % e)] for l in range(1, d + 1)]
        cnt = _eigen_exponents(sums, o, e, p, z)
        out.append(Cyclotomic.root_of_unity(e, sum(k * m for k, m in cnt.items())))
    return tuple(out)


@dataclass(frozen=True)
class RealBlock:
    """An irreducible real representation: kind is 'real', 'complex' or 'quaternionic'."""

    kind: str
    constituents: tuple[int, ...]
    degree: int
    kernel: int
    det_sign: int  # bit i set iff det = -1 on class i


@dataclass(frozen=True)
class EmbeddingResult:
    embeds: bool
    dimension: int
    witness: tuple[RealBlock, ...] | None
    blocks_searched: int

    def __bool__(self) -> bool:
        return self.embeds

    def describe(self) -> list[dict]:
        if not self.witness:
            return []
        return [
            {"kind": b.kind, "characters": list(b.constituents), "degree": b.degree}
            for b in self.witness
        ]


def _sign_mask(det: Sequence[Cyclotomic]) -> int:
    mask = 0
    for i, v in enumerate(det):
        if v == -1:
            mask |= 1 << i
        elif v != 1:
            raise InternalError("determinant of a real block is not +-1")
    return mask


def real_blocks(tab: CharacterTable, max_degree: int) -> list[RealBlock]:
    """Irreducible real representations of degree <= max_degree, built from FS indicators."""
    out = []
    for i, row in enumerate(tab.rows):
        d = tab.degrees[i]
        fs = frobenius_schur(tab, i)
        if fs == 1:
            if d > max_degree:
                continue
            chi = row
            kind, cons = "real", (i,)
        elif fs == 0:
            j = tab.conjugate_row(i)
            if j < i or 2 * d > max_degree:
                continue
            chi = tuple(a + b for a, b in zip(row, tab.rows[j]))
            kind, cons = "complex", (i, j)
        else:
            if 2 * d > max_degree:
                continue
            chi = tuple(a * 2 for a in row)
            kind, cons = "quaternionic", (i,)
        det = determinant_character(tab, chi)
        degree = d if kind == "real" else 2 * d
        out.append(RealBlock(kind, cons, degree, tab.kernel_mask(row), _sign_mask(det)))
    return out


def _so_search(tab: CharacterTable, blocks: list[RealBlock], n: int) -> EmbeddingResult:
    blocks = [b for b in blocks if b.degree <= n]
    full = (1 << len(tab.classes)) - 1
    reach: list[dict[tuple[int, int], tuple[int, ...]]] = [dict() for _ in range(n + 1)]
    reach[0][(full, 0)] = ()
    for d in range(n):
        for (ker, sign), wit in reach[d].items():
            for bi, b in enumerate(blocks):
                nd = d + b.degree
                if nd > n:
                    continue
                key = (ker & b.kernel, sign ^ b.det_sign)
                if key not in reach[nd]:
                    reach[nd][key] = tuple(sorted(wit + (bi,)))
    wit = reach[n].get((1, 0))
    if wit is None:
        return EmbeddingResult(False, n, None, len(blocks))
    return EmbeddingResult(True, n, tuple(blocks[i] for i in wit), len(blocks))


def embeds_in_SO(g: FiniteGroup, n: int, cap: int | None = DEFAULT_ORDER_CAP) -> EmbeddingResult:
    """Is there a faithful real character of degree ``n`` with trivial determinant?

    Degrees below ``n`` are covered by padding with the trivial character.
    """
    tab = character_table(g, cap)
    return _so_search(tab, real_blocks(tab, n), n)


def embeds_in_O(g: FiniteGroup, n: int, cap: int | None = DEFAULT_ORDER_CAP) -> EmbeddingResult:
    """Like ``embeds_in_SO`` without the determinant condition."""
    tab = character_table(g, cap)
    blocks = [RealBlock(b.kind, b.constituents, b.degree, b.kernel, 0) for b in real_blocks(tab, n)]
    return _so_search(tab, blocks, n)


def min_faithful_O_degree(g: FiniteGroup, limit: int = 16, cap: int | None = DEFAULT_ORDER_CAP) -> int | None:
    tab = character_table(g, cap)
    blocks = [RealBlock(b.kind, b.constituents, b.degree, b.kernel, 0) for b in real_blocks(tab, limit)]
    for d in range(1, limit + 1):
        if _so_search(tab, blocks, d):
            return d
    return None


def min_faithful_SO_degree(g: FiniteGroup, limit: int = 16, cap: int | None = DEFAULT_ORDER_CAP) -> int | None:
    tab = character_table(g, cap)
    blocks = real_blocks(tab, limit)
    for d in range(1, limit + 1):
        if _so_search(tab, blocks, d):
            return d
    return None


# -- Frobenius counting ----------------------------------------------------------


def frobenius_solution_count(g: FiniteGroup, g0: int, class_choices: Sequence[int], cap: int | None = DEFAULT_ORDER_CAP) -> int:
    """Number of ``(a_1, b_1, ..., c_r)`` with ``prod [a_i, b_i] * prod c_j = 1``, ``c_j`` in the given classes."""
    tab = character_table(g, cap)
    cd = tab.classes
    r = len(class_choices)
    total = Cyclotomic.zero(tab.conductor)
    for row, d in zip(tab.rows, tab.degrees):
        term = Cyclotomic.rational(tab.conductor, Fraction(d) ** (2 - 2 * g0 - r))
        for c in class_choices:
            term = term * row[c] * cd.class_sizes[c]
        total = total + term
    value = Fraction(g.order) ** (2 * g0 - 1) * total
    if not value.is_rational():
        raise InternalError("Frobenius count is not rational: table corrupt")
    q = Fraction(value.to_rational())
    if q.denominator != 1 or q < 0:
        raise InternalError(f"Frobenius count {q} is not a non-negative integer: table corrupt")
    return int(q)


def count_by_orders(tab: CharacterTable, g0: int, periods: Sequence[int]) -> int:
    """Tuples with ``c_j`` ranging over *all* elements of order ``periods[j]``."""
    r = len(periods)
    total = Fraction(0)
    for i, d in enumerate(tab.degrees):
        term = Fraction(d) ** (2 - 2 * g0 - r)
        for lam in periods:
            s = tab.order_sum(i, lam)
            if s == 0:
                term = Fraction(0)
                break
            term *= s
        total += term
    value = Fraction(tab.group.order) ** (2 * g0 - 1) * total
    if value.denominator != 1 or value < 0:
        raise InternalError(f"order-class count {value} is not a non-negative integer")
    return int(value)
