"""Obstructions to finite group actions on low-dimensional spheres.

Membership in ``SO(3)`` is decided against the classical list; membership in
``SO(n)`` for larger ``n`` by real characters (see ``embeds_in_SO``).  For
``SO(4)`` a structural search inside central products of binary polyhedral
groups serves as an independent cross-check on small groups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .characters import EmbeddingResult, character_table, embeds_in_SO, min_faithful_SO_degree, real_blocks
from .errors import GroupConstructionError, InternalError, ResourceError
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    _extend_hom,
    check_cap,
    is_isomorphic,
    make_alternating,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_symmetric,
    semidirect_product,
)
from .subgroups import index2_subgroups

SCHEMA = "torsion-obstruct/1"
STRUCTURAL_MAX_ORDER = 48
DIRICHLET_CEILING = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def multiplicative_order(r: int, p: int) -> int:
    if math.gcd(r, p) != 1:
        raise ValueError(f"{r} is not a unit mod {p}")
    k, x = 1, r % p
    while x != 1 % p:
        x = x * r % p
        k += 1
    return k


# -- metacyclic groups ---------------------------------------------------------------


@dataclass(frozen=True)
class MetacyclicParams:
    p: int
    k: int
    r: int | None = None
    orientation: str = "preserving"

    def __post_init__(self) -> None:
        if not (self.p > 2 and is_prime(self.p)):
            raise GroupConstructionError(f"p = {self.p} must be an odd prime")
        if self.k < 2 or (self.p - 1) % self.k:
            raise GroupConstructionError(f"k = {self.k} must be >= 2 and divide p - 1 = {self.p - 1}")
        if self.orientation not in ("preserving", "any"):
            raise ValueError("orientation must be 'preserving' or 'any'")
        r = self.r if self.r is not None else least_effective_root(self.p, self.k)
        if multiplicative_order(r, self.p) != self.k:
            raise GroupConstructionError(f"r = {r} does not have multiplicative order {self.k} mod {self.p}")
        object.__setattr__(self, "r", r)

    def group(self) -> FiniteGroup:
        g = semidirect_product(self.p, self.k, self.r)
        g.name = f"M({self.p},{self.k})"
        return g


def least_effective_root(p: int, k: int) -> int:
    """Least ``r > 1`` of multiplicative order exactly ``k`` modulo ``p``."""
    for r in range(2, p):
        if pow(r, k, p) == 1 and multiplicative_order(r, p) == k:
            return r
    raise GroupConstructionError(f"no element of order {k} mod {p}")


def metacyclic_group(p: int, k: int) -> FiniteGroup:
    return MetacyclicParams(p, k).group()


def metacyclic_pairs(max_order: int) -> list[tuple[int, int]]:
    """All ``(p, k)`` with ``p`` an odd prime, ``k >= 2`` dividing ``p - 1`` and ``pk <= max_order``."""
    out = []
    for p in range(3, max_order // 2 + 1):
        if is_prime(p):
            out += [(p, k) for k in range(2, p) if (p - 1) % k == 0 and p * k <= max_order]
    return out


def min_sphere_dim(m: MetacyclicParams) -> int:
    """Least ``n`` for a faithful action of ``Z_p x| Z_k`` on ``S^n``."""
    if m.k % 2:
        return 2 * m.k - 1
    return m.k if m.orientation == "preserving" else m.k - 1


# -- SO(3) ------------------------------------------------------------------------------


def embeds_in_SO3_classical(g: FiniteGroup, cap: int | None = DEFAULT_ORDER_CAP) -> bool:
    """Is ``G`` cyclic, dihedral, or one of A4, S4, A5?"""
    check_cap(g, cap)
    n = g.order
    if max(g.element_orders) == n:
        return True
    if n % 2 == 0 and is_isomorphic(g, make_dihedral(n // 2), cap=None):
        return True
    for order, build in ((12, lambda: make_alternating(4)), (24, lambda: make_symmetric(4)), (60, lambda: make_alternating(5))):
        if n == order and is_isomorphic(g, build(), cap=None):
            return True
    return False


# -- SO(4) structural route --------------------------------------------------------------


def _bp_contains(small: tuple[str, int], big: tuple[str, int]) -> bool:
    """Known inclusions among cyclic ``("C", order)``, dicyclic ``("DC", n)`` and ``2T/2O/2I``."""
    if small == big:
        return True
    ks, ns = small
    kb, nb = big
    exceptional = {"2T": (24, {2, 4, 6}, {2}), "2O": (48, {2, 4, 6, 8}, {2, 3, 4}), "2I": (120, {2, 4, 6, 10}, {2, 3, 5})}
    if kb == "C":
        return ks == "C" and nb % ns == 0
    if kb == "DC":
        if ks == "C":
            return (2 * nb) % ns == 0 or ns == 4
        return ks == "DC" and nb % ns == 0
    _, cyc, dic = exceptional[kb]
    if ks == "C":
        return ns in cyc
    if ks == "DC":
        return ns in dic
    return ks == "2T" and kb in ("2O", "2I")


def _bp_order(d: tuple[str, int]) -> int:
    kind, n = d
    return {"C": n, "DC": 4 * n, "2T": 24, "2O": 48, "2I": 120}[kind]


@lru_cache(maxsize=None)
def _bp_group(d: tuple[str, int]) -> FiniteGroup:
    from .catalog import binary_polyhedral

    kind, n = d
    if kind == "C":
        return make_cyclic(n)
    if kind == "DC":
        return make_dicyclic(n)
    return binary_polyhedral(kind)


@lru_cache(maxsize=None)
def _bp_central_product(d1: tuple[str, int], d2: tuple[str, int]) -> FiniteGroup:
    from .catalog import central_product_of

    return central_product_of(_bp_group(d1), _bp_group(d2))


def _candidate_pairs(n: int, product_cap: int) -> tuple[list[tuple], bool]:
    """Maximal pairs of binary polyhedral groups to search, and whether the cap cut any off.

    If ``G <= SO(4)`` then its preimage in ``S^3 x S^3`` has order ``2|G|`` and
    projects onto binary polyhedral ``P1, P2`` whose orders divide ``2|G|``.
    """
    m = 2 * n
    descs = [("C", d) for d in range(2, m + 1, 2) if m % d == 0]
    descs += [("DC", k) for k in range(2, m // 4 + 1) if m % (4 * k) == 0]
    descs += [(t, 0) for t, o in (("2T", 24), ("2O", 48), ("2I", 120)) if m % o == 0]
    descs = [(k, v) if k in ("C", "DC") else (k, 0) for k, v in descs]
    pairs = [
        (a, b) for i, a in enumerate(descs) for b in descs[i:]
        if (_bp_order(a) * _bp_order(b) // 2) % n == 0
    ]
    truncated = any(_bp_order(a) * _bp_order(b) // 2 > product_cap for a, b in pairs)
    pairs = [(a, b) for a, b in pairs if _bp_order(a) * _bp_order(b) // 2 <= product_cap]

    def below(x, y):
        return (_bp_contains(x[0], y[0]) and _bp_contains(x[1], y[1])) or (
            _bp_contains(x[0], y[1]) and _bp_contains(x[1], y[0])
        )

    maximal = [x for x in pairs if not any(y != x and below(x, y) for y in pairs)]
    return maximal, truncated


def find_embedding(g: FiniteGroup, h: FiniteGroup) -> list[int] | None:
    """An injective homomorphism ``G -> H`` as an image list, or None."""
    if h.order % g.order:
        return None
    gens = list(g.generators)
    if not gens:
        return [0]
    reps = set(h.conjugacy.representatives)
    cands = [[y for y in range(h.order) if h.element_orders[y] == g.element_orders[s]] for s in gens]
    # conjugating by H preserves injectivity, so the first image is a class representative
    cands[0] = [y for y in cands[0] if y in reps]
    imgs: list[int] = []

    def rec(t: int) -> list[int] | None:
        if t == len(gens):
            phi = _extend_hom(g, h, gens, imgs)
            if phi is not None and len(set(phi)) == g.order:
                return phi
            return None
        for y in cands[t]:
            imgs.append(y)
            if _extend_hom(g, h, gens[: t + 1], imgs) is not None:
                res = rec(t + 1)
                if res is not None:
                    return res
            imgs.pop()
        return None

    return rec(0)


@dataclass
class StructuralVerdict:
    embeds: bool | None  # None: cap cut the search short without finding an embedding
    pair: tuple | None
    pairs_searched: int
    note: str = ""


def so4_structural(g: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> StructuralVerdict:
    """Search for ``G`` inside ``P1 x_C2 P2`` over binary polyhedral pairs of order <= 2*cap."""
    if g.order > STRUCTURAL_MAX_ORDER:
        return StructuralVerdict(None, None, 0, f"structural route limited to order <= {STRUCTURAL_MAX_ORDER}")
    pairs, truncated = _candidate_pairs(g.order, 2 * cap)
    for i, (a, b) in enumerate(pairs):
        if find_embedding(g, _bp_central_product(a, b)) is not None:
            return StructuralVerdict(True, (a, b), i + 1)
    if truncated:
        return StructuralVerdict(None, None, len(pairs), "some central products exceed the order cap")
    return StructuralVerdict(False, None, len(pairs))


def _describe_pair(pair: tuple) -> str:
    def one(d):
        kind, n = d
        return f"C{n}" if kind == "C" else f"DC{n}" if kind == "DC" else kind

    return f"{one(pair[0])} x_C2 {one(pair[1])}"


def so4_membership(g: FiniteGroup, cross_check: bool = False, cap: int | None = DEFAULT_ORDER_CAP) -> bool:
    """Character verdict for ``G <= SO(4)``; optionally confirmed structurally."""
    res = bool(embeds_in_SO(g, 4, cap))
    if cross_check:
        s = so4_structural(g)
        if s.embeds is not None and s.embeds != res:
            raise InternalError(f"SO(4) verdicts disagree for {g.name}: characters {res}, structure {s.embeds}")
    return res


# -- S^3 / S^4 verdicts --------------------------------------------------------------------


@dataclass
class Evidence:
    verdict: bool
    detail: dict

    def __bool__(self) -> bool:
        return self.verdict


def _embedding_detail(res: EmbeddingResult) -> dict:
    if res.embeds:
        return {"embeds": True, "witness": res.describe()}
    return {"embeds": False, "searched": f"all sums of {res.blocks_searched} real irreducible blocks of degree <= {res.dimension}"}


def s3_obstructed(g: FiniteGroup, cap: int | None = DEFAULT_ORDER_CAP) -> Evidence:
    """True when ``G`` is not a subgroup of ``SO(4)``, hence not of ``Homeo+(S^3)``."""
    res = embeds_in_SO(g, 4, cap)
    return Evidence(not res.embeds, {"so4": _embedding_detail(res)})


def s4_obstructed(g: FiniteGroup, cap: int | None = DEFAULT_ORDER_CAP) -> Evidence:
    """True when ``G`` is not in ``SO(5)`` and has no index-2 subgroup in ``SO(4)``."""
    so5 = embeds_in_SO(g, 5, cap)
    subs = []
    hit = None
    for k in index2_subgroups(g, cap):
        h = g.subgroup(k, name=f"{g.name}:index2")
        r = embeds_in_SO(h, 4, cap)
        subs.append(_embedding_detail(r))
        if r.embeds and hit is None:
            hit = len(subs) - 1
    verdict = not so5.embeds and hit is None
    return Evidence(verdict, {"so5": _embedding_detail(so5), "index2": subs, "index2_in_so4": hit})


@dataclass
class SphereReport:
    group: str
    tests: dict[str, bool]
    witnesses: dict[str, object]
    min_dim: dict[str, object]
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "group": self.group,
            "tests": dict(sorted(self.tests.items())),
            "witnesses": self.witnesses,
            "min_dim": self.min_dim,
            "notes": self.notes,
        }


def sphere_report(g: FiniteGroup, cap: int | None = DEFAULT_ORDER_CAP, metacyclic: tuple[int, int] | None = None) -> SphereReport:
    check_cap(g, cap)
    so3 = embeds_in_SO(g, 3, cap)
    s3 = s3_obstructed(g, cap)
    s4 = s4_obstructed(g, cap)
    so4 = not s3.verdict
    tests = {
        "so3": so3.embeds,
        "so4": so4,
        "so5": s4.detail["so5"]["embeds"],
        "index2_so4": s4.detail["index2_in_so4"] is not None,
        "s3_obstructed": s3.verdict,
        "s4_obstructed": s4.verdict,
    }
    witnesses: dict[str, object] = {
        "so3": _embedding_detail(so3),
        "so4": s3.detail["so4"],
        "so5": s4.detail["so5"],
        "index2": s4.detail["index2"],
    }
    notes = []
    classical = embeds_in_SO3_classical(g, cap=None)
    if classical != so3.embeds:
        raise InternalError(f"SO(3) verdicts disagree for {g.name}")
    witnesses["so3_classical"] = classical
    if g.order <= STRUCTURAL_MAX_ORDER:
        sv = so4_structural(g)
        if sv.embeds is not None and sv.embeds != so4:
            raise InternalError(f"SO(4) verdicts disagree for {g.name}")
        witnesses["so4_structural"] = {
            "embeds": sv.embeds,
            "central_product": _describe_pair(sv.pair) if sv.pair else None,
            "pairs_searched": sv.pairs_searched,
        }
        if sv.note:
            notes.append(f"structural cross-check inconclusive: {sv.note}")
    if not tests["so5"] and tests["index2_so4"]:
        notes.append("S^4 obstruction not decided by the linear test: an index-2 subgroup lies in SO(4); requires topological argument")
    min_dim: dict[str, object] = {"faithful_SO_degree": min_faithful_SO_degree(g, cap=None)}
    if metacyclic is not None:
        p, k = metacyclic
        min_dim["metacyclic"] = {"p": p, "k": k, "preserving": min_sphere_dim(MetacyclicParams(p, k)),
                                 "any": min_sphere_dim(MetacyclicParams(p, k, orientation="any"))}
    return SphereReport(g.name, tests, witnesses, min_dim, notes)


# -- the dimension pipeline ----------------------------------------------------------------


def least_prime_in_window(n: int) -> int:
    """Least odd prime ``q`` with ``(n + 1) / 2 < q <= n + 1``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    for q in range(n // 2 + 1, n + 2):
        if 2 * q > n + 1 and q > 2 and is_prime(q):
            return q
    raise InternalError(f"no odd prime in the window for n = {n}")


def least_prime_1_mod(q: int, ceiling: int = DIRICHLET_CEILING) -> int:
    p = q + 1
    while p <= ceiling:
        if is_prime(p):
            return p
        p += q
    raise ResourceError(f"no prime = 1 mod {q} below {ceiling}")


@dataclass
class DirichletWitness:
    n: int
    q: int
    p: int
    group: FiniteGroup | None

    @property
    def params(self) -> MetacyclicParams:
        return MetacyclicParams(self.p, self.q)

    @property
    def min_dim(self) -> int:
        return min_sphere_dim(self.params)

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "p": self.p, "order": self.p * self.q,
                "min_sphere_dim": self.min_dim, "built": self.group is not None}


def dirichlet_witness(n: int, cap: int | None = DEFAULT_ORDER_CAP) -> DirichletWitness:
    """A metacyclic group that cannot act faithfully on ``S^n``."""
    q = least_prime_in_window(n)
    p = least_prime_1_mod(q)
    grp = metacyclic_group(p, q) if cap is None or p * q <= cap else None
    return DirichletWitness(n, q, p, grp)


def stable_onset(g: FiniteGroup, window: int | None = None) -> dict:
    """Least ``g0`` with an action on every genus in ``[g0, g0 + |G|]``, inside ``[2, window]``."""
    from .surfaces import genus_spectrum

    window = window or max(60, 4 * g.order)
    acting = set(genus_spectrum(g, 2, window, want_witness=False, cap=None).acting_genera)
    for g0 in range(2, window - g.order + 1):
        if all(x in acting for x in range(g0, g0 + g.order + 1)):
            return {"onset": g0, "window": [2, window], "missing_below_onset": sorted(set(range(2, g0)) - acting)}
    return {"onset": None, "window": [2, window], "missing_below_onset": None}


def genus_bound_pipeline(n: int, cap: int | None = DEFAULT_ORDER_CAP, window: int | None = None) -> dict:
    w = dirichlet_witness(n, cap)
    out = {"schema": SCHEMA, **w.to_json(), "p2q": w.p * w.p * w.q}
    if w.group is not None:
        out["empirical"] = stable_onset(w.group, window)
        out["empirical"]["note"] = "data from a finite search window, not a proof"
    return out
