"""Finite group actions on closed surfaces of genus >= 2.

A group ``G`` acts on ``S_g`` with signature ``(g0; l_1..l_r)`` iff
``|G| * A = 2g - 2`` for the normalised area ``A`` and there is a surface
kernel generating vector: ``a_i, b_i, c_j`` generating ``G`` with
``|c_j| = l_j`` and ``prod [a_i, b_i] * prod c_j = 1``.

Existence is decided exactly by counting solutions with characters and
keeping only the surjective ones by Moebius inversion over the subgroup
lattice.  Explicit witnesses come from a memoised depth-first search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence
from weakref import WeakKeyDictionary

from .budget import UNLIMITED, Deadline
from .characters import CharacterTable, character_table, count_by_orders
from .errors import BudgetExceeded, ResourceError, VerificationFailure
from .groups import DEFAULT_ORDER_CAP, FiniteGroup, check_cap
from .subgroups import DEFAULT_LATTICE_CAP, _mask, subgroup_lattice

SCHEMA = "torsion-obstruct/1"


@dataclass(frozen=True, order=True)
class Signature:
    g0: int
    periods: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.g0 < 0:
            raise ValueError("quotient genus must be >= 0")
        if any(p < 2 for p in self.periods):
            raise ValueError("cone point orders must be >= 2")
        object.__setattr__(self, "periods", tuple(sorted(self.periods)))

    @property
    def r(self) -> int:
        return len(self.periods)

    @property
    def area(self) -> Fraction:
        return normalized_area(self)

    def sort_key(self) -> tuple:
        return (self.r, self.periods, self.g0)

    def __str__(self) -> str:
        return f"({self.g0}; {', '.join(map(str, self.periods))})" if self.periods else f"({self.g0}; -)"

    def to_json(self) -> dict:
        return {"g0": self.g0, "periods": list(self.periods)}


def normalized_area(s: Signature) -> Fraction:
    return 2 * s.g0 - 2 + sum((1 - Fraction(1, p) for p in s.periods), Fraction(0))


def genus_of_action(group_order: int, s: Signature) -> Fraction:
    """``g = 1 + |G| A / 2``; an integer exactly when the signature fits the order."""
    return 1 + Fraction(group_order) * normalized_area(s) / 2


@dataclass(frozen=True)
class GeneratingVector:
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    def flat(self) -> list[int]:
        out = []
        for x, y in zip(self.a, self.b):
            out += [x, y]
        return out + list(self.c)

    def check(self, g: FiniteGroup, s: Signature) -> None:
        """Raise ``VerificationFailure`` naming the first identity that fails."""
        if len(self.a) != s.g0 or len(self.b) != s.g0 or len(self.c) != s.r:
            raise VerificationFailure("vector length does not match the signature")
        if sorted(g.element_orders[x] for x in self.c) != list(s.periods):
            raise VerificationFailure("orders of the c_j do not match the periods")
        prod = 0
        for x, y in zip(self.a, self.b):
            prod = g.mul(prod, g.commutator(x, y))
        for x in self.c:
            prod = g.mul(prod, x)
        if prod != 0:
            raise VerificationFailure("prod [a_i, b_i] * prod c_j != 1")
        if not g.generates(self.flat()):
            raise VerificationFailure("the vector does not generate G")

    def is_valid(self, g: FiniteGroup, s: Signature) -> bool:
        try:
            self.check(g, s)
        except VerificationFailure:
            return False
        return True

    def words(self, g: FiniteGroup) -> list[str]:
        return [g.words[x] for x in self.flat()]


# -- signatures ------------------------------------------------------------------


def _period_multisets(orders: Sequence[int], budget: Fraction, start: int = 0) -> Iterator[tuple[int, ...]]:
    if budget == 0:
        yield ()
        return
    for i in range(start, len(orders)):
        w = 1 - Fraction(1, orders[i])
        if w > budget:
            # weights increase with the order
            break
        for rest in _period_multisets(orders, budget - w, i):
            yield (orders[i],) + rest


def signatures_for(order: int, element_orders: Sequence[int], g: int) -> list[Signature]:
    """Signatures with periods among ``element_orders`` giving genus ``g`` for ``order``."""
    area = Fraction(2 * g - 2, order)
    if area <= 0:
        return []
    orders = sorted(set(o for o in element_orders if o > 1))
    out = []
    g0 = 0
    while 2 * g0 - 2 <= area:
        budget = area - (2 * g0 - 2)
        for periods in _period_multisets(orders, budget):
            out.append(Signature(g0, periods))
        g0 += 1
    out.sort(key=Signature.sort_key)
    return out


def admissible_signatures(g_: FiniteGroup, g: int) -> list[Signature]:
    """Riemann-Hurwitz admissible signatures of ``G`` at genus ``g`` (canonical order)."""
    if g < 2:
        raise ValueError("genus must be >= 2")
    return signatures_for(g_.order, g_.element_orders, g)


# -- counting -------------------------------------------------------------------


class _CountingEngine:
    """Moebius-weighted character tables of the subgroups that matter."""

    def __init__(self, g: FiniteGroup, lattice_cap: int) -> None:
        self.group = g
        lat = subgroup_lattice(g, lattice_cap)
        mu = lat.moebius
        rep_of = lat.conjugacy_class_of
        tables: dict[int, CharacterTable] = {}
        terms: dict[int, int] = {}
        for i, m in enumerate(mu):
            if m:
                c = rep_of[i]
                terms[c] = terms.get(c, 0) + m
        self.terms: list[tuple[int, CharacterTable, frozenset[int]]] = []
        for c, m in sorted(terms.items()):
            if not m:
                continue
            sub = g if c == lat.whole else lat.subgroup_group(c)
            tab = tables.setdefault(c, character_table(sub, cap=None))
            self.terms.append((m, tab, frozenset(sub.element_orders)))

    def surjective_count(self, g0: int, periods: Sequence[int]) -> int:
        total = 0
        need = set(periods)
        for m, tab, orders in self.terms:
            if not need <= orders:
                continue
            total += m * count_by_orders(tab, g0, periods)
        if total < 0:
            raise ResourceError("negative surjective count")
        return total


_ENGINES: "WeakKeyDictionary[FiniteGroup, _CountingEngine]" = WeakKeyDictionary()


def _engine(g: FiniteGroup, lattice_cap: int = DEFAULT_LATTICE_CAP) -> _CountingEngine:
    eng = _ENGINES.get(g)
    if eng is None:
        eng = _CountingEngine(g, lattice_cap)
        _ENGINES[g] = eng
    return eng


def surface_kernel_count(g: FiniteGroup, s: Signature, lattice_cap: int = DEFAULT_LATTICE_CAP) -> int:
    """Exact number of generating vectors (all tuples, not up to symmetry)."""
    return _engine(g, lattice_cap).surjective_count(s.g0, s.periods)


def _screen(g: FiniteGroup, s: Signature) -> bool:
    """Cheap necessary conditions; False means no vector can exist."""
    orders = set(g.element_orders)
    if any(p not in orders for p in s.periods):
        return False
    if s.g0 == 0:
        if s.r < 2:
            return g.order == 1
        # for abelian G the c_j alone generate, so their orders realise the exponent
        if g.is_abelian and math.lcm(*s.periods) != g.exponent:
            return False
    return True


# -- witness search ---------------------------------------------------------------


class _Spans:
    """Memoised ``<M, x>`` for subgroup bitmasks ``M``."""

    def __init__(self, g: FiniteGroup) -> None:
        self.g = g
        self.gens: dict[int, tuple[int, ...]] = {1: ()}
        self.cache: dict[tuple[int, int], int] = {}
        self.full = (1 << g.order) - 1

    def join(self, m: int, x: int) -> int:
        if m >> x & 1:
            return m
        key = (m, x)
        out = self.cache.get(key)
        if out is None:
            gens = self.gens[m] + (x,)
            out = _mask(self.g.closure(gens))
            self.gens.setdefault(out, gens)
            self.cache[key] = out
        return out


def search_generating_vector(
    g: FiniteGroup,
    s: Signature,
    deadline: Deadline = UNLIMITED,
) -> GeneratingVector | None:
    """Exhaustive memoised DFS; None means no vector exists.

    The first entry is restricted to conjugacy class representatives since
    conjugating a whole vector preserves every required property.
    """
    if g.order == 1:
        vec = GeneratingVector((0,) * s.g0, (0,) * s.g0, ())
        return vec if not s.periods else None
    spans = _Spans(g)
    rows = g.rows
    inv = g.inverses
    reps = set(g.conjugacy.representatives)
    by_order: dict[int, list[int]] = {}
    for x, o in enumerate(g.element_orders):
        by_order.setdefault(o, []).append(x)
    pairs = []
    for a in range(g.order):
        for b in range(g.order):
            pairs.append((a, b, g.commutator(a, b)))
    # steps: g0 pairs followed by the r cone points
    steps: list[object] = ["pair"] * s.g0 + list(s.periods)
    n = len(steps)
    failed: set[tuple[int, int, int]] = set()
    chosen: list[tuple[int, ...]] = []
    counter = [0]

    def rec(j: int, prod: int, span: int) -> bool:
        counter[0] += 1
        if counter[0] & 0x3FF == 1:
            deadline.check("generating-vector search")
        if j == n:
            return prod == 0 and span == spans.full
        key = (j, prod, span)
        if key in failed:
            return False
        step = steps[j]
        if j == n - 1 and step != "pair":
            x = inv[prod]
            if g.element_orders[x] == step and (j > 0 or x in reps):
                ns = spans.join(span, x)
                if ns == spans.full:
                    chosen.append((x,))
                    return True
            failed.add(key)
            return False
        if step == "pair":
            for a, b, c in pairs:
                if j == 0 and a not in reps:
                    continue
                ns = spans.join(spans.join(span, a), b)
                if rec(j + 1, rows[prod][c], ns):
                    chosen.append((a, b))
                    return True
        else:
            for x in by_order.get(step, ()):
                if j == 0 and x not in reps:
                    continue
                if rec(j + 1, rows[prod][x], spans.join(span, x)):
                    chosen.append((x,))
                    return True
        failed.add(key)
        return False

    if not rec(0, 0, 1):
        return None
    chosen.reverse()
    a = tuple(p[0] for p in chosen[: s.g0])
    b = tuple(p[1] for p in chosen[: s.g0])
    c = tuple(p[0] for p in chosen[s.g0:])
    # periods are sorted; the search assigned c_j in that order
    return GeneratingVector(a, b, c)


@dataclass(frozen=True)
class SignatureVerdict:
    signature: Signature
    exists: bool | None  # None: undecided (budget ran out)
    method: str  # "screen" | "counting" | "search"
    count: int | None = None
    vector: GeneratingVector | None = None


def decide_signature(
    g: FiniteGroup,
    s: Signature,
    want_witness: bool = True,
    deadline: Deadline = UNLIMITED,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
) -> SignatureVerdict:
    if not _screen(g, s):
        return SignatureVerdict(s, False, "screen", 0)
    try:
        count = surface_kernel_count(g, s, lattice_cap)
    except ResourceError:
        count = None
    if count is not None:
        vec = None
        if count and want_witness:
            vec = search_generating_vector(g, s, deadline)
            if vec is None:
                raise VerificationFailure(f"counting found {count} vectors for {s} but search found none")
        return SignatureVerdict(s, count > 0, "counting", count, vec)
    try:
        vec = search_generating_vector(g, s, deadline)
    except BudgetExceeded:
        return SignatureVerdict(s, None, "search")
    return SignatureVerdict(s, vec is not None, "search", None, vec)


def has_generating_vector(
    g: FiniteGroup,
    s: Signature,
    deadline: Deadline = UNLIMITED,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
) -> GeneratingVector | None:
    """A witness if one exists, else None; raises BudgetExceeded when undecided."""
    v = decide_signature(g, s, True, deadline, lattice_cap)
    if v.exists is None:
        raise BudgetExceeded(f"could not decide {s} within the time budget")
    return v.vector


def exists_by_counting(g: FiniteGroup, s: Signature) -> bool:
    return _screen(g, s) and surface_kernel_count(g, s) > 0


def exists_by_search(g: FiniteGroup, s: Signature, deadline: Deadline = UNLIMITED) -> bool:
    return search_generating_vector(g, s, deadline) is not None


# -- spectra -------------------------------------------------------------------------


@dataclass
class GenusResult:
    genus: int
    acts: bool | None
    method: str
    signature: Signature | None = None
    vector: GeneratingVector | None = None
    signatures_checked: int = 0


@dataclass
class SpectrumReport:
    group: str
    g_min: int
    g_max: int
    results: dict[int, GenusResult] = field(default_factory=dict)
    group_ref: FiniteGroup | None = field(default=None, repr=False)

    @property
    def acting_genera(self) -> list[int]:
        return sorted(g for g, r in self.results.items() if r.acts)

    @property
    def undecided(self) -> list[int]:
        return sorted(g for g, r in self.results.items() if r.acts is None)

    @property
    def witnesses(self) -> dict[int, Signature]:
        return {g: r.signature for g, r in sorted(self.results.items()) if r.acts}

    def to_json(self) -> dict:
        grp = self.group_ref
        wit = {}
        for g, r in sorted(self.results.items()):
            if r.acts:
                entry = r.signature.to_json()
                if r.vector is not None and grp is not None:
                    entry["vector"] = r.vector.words(grp)
                wit[str(g)] = entry
        return {
            "schema": SCHEMA,
            "group": self.group,
            "range": [self.g_min, self.g_max],
            "genera": self.acting_genera,
            "witnesses": wit,
            "methods": {str(g): r.method for g, r in sorted(self.results.items())},
            "undecided": self.undecided,
        }


def decide_genus(
    g: FiniteGroup,
    genus: int,
    want_witness: bool = True,
    deadline: Deadline = UNLIMITED,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
) -> GenusResult:
    sigs = admissible_signatures(g, genus)
    undecided = False
    methods = set()
    for i, s in enumerate(sigs):
        v = decide_signature(g, s, want_witness, deadline, lattice_cap)
        methods.add(v.method)
        if v.exists:
            if want_witness and v.vector is not None:
                v.vector.check(g, s)
            return GenusResult(genus, True, v.method, s, v.vector, i + 1)
        if v.exists is None:
            undecided = True
    method = "search" if "search" in methods else "counting"
    return GenusResult(genus, None if undecided else False, method, signatures_checked=len(sigs))


def acts_on_genus(g: FiniteGroup, genus: int, cap: int | None = DEFAULT_ORDER_CAP) -> bool:
    check_cap(g, cap)
    r = decide_genus(g, genus, want_witness=False)
    if r.acts is None:
        raise BudgetExceeded(f"undecided at genus {genus}")
    return r.acts


def genus_spectrum(
    g: FiniteGroup,
    g_min: int,
    g_max: int,
    want_witness: bool = True,
    deadline: Deadline = UNLIMITED,
    cap: int | None = DEFAULT_ORDER_CAP,
) -> SpectrumReport:
    check_cap(g, cap)
    if g_min < 2:
        g_min = 2
    rep = SpectrumReport(g.name, g_min, g_max, group_ref=g)
    for genus in range(g_min, g_max + 1):
        if deadline.expired():
            rep.results[genus] = GenusResult(genus, None, "budget")
            continue
        rep.results[genus] = decide_genus(g, genus, want_witness, deadline)
    return rep


def strong_symmetric_genus(g: FiniteGroup, ceiling: int | None = None, cap: int | None = DEFAULT_ORDER_CAP) -> int:
    """Least genus >= 2 admitting a faithful orientation-preserving action."""
    check_cap(g, cap)
    ceiling = ceiling if ceiling is not None else 1 + g.order
    for genus in range(2, ceiling + 1):
        if acts_on_genus(g, genus, cap=None):
            return genus
    raise ResourceError(f"no action of {g.name} found up to genus {ceiling}")


# -- the two families with a spectrum gap ---------------------------------------------


@dataclass
class LemmaReport:
    genus: int
    family: str
    expected_range: tuple[int, int]
    spectrum: SpectrumReport
    passed: bool
    witness: Signature | None
    expected_witness: Signature

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "genus": self.genus,
            "group": self.family,
            "range": list(self.expected_range),
            "genera": self.spectrum.acting_genera,
            "witness": str(self.witness) if self.witness else None,
            "expected_witness": str(self.expected_witness),
            "refutations": {
                str(g): {"method": r.method, "signatures_checked": r.signatures_checked}
                for g, r in sorted(self.spectrum.results.items()) if not r.acts
            },
            "passed": self.passed,
        }


def verify_lemma_MZ(genus: int, deadline: Deadline = UNLIMITED) -> LemmaReport:
    """Even g: DC_g acts only at g below 2g-1.  Odd g: C4 x D_g acts only at g below 2g+1."""
    from .groups import direct_product, make_cyclic, make_dicyclic, make_dihedral

    if genus < 2:
        raise ValueError("genus must be >= 2")
    if genus % 2 == 0:
        grp = make_dicyclic(genus)
        hi = 2 * genus - 2
        expected = Signature(0, (4, 4, 2 * genus))
    else:
        if genus < 3:
            raise ValueError("odd case needs genus >= 3")
        grp = direct_product(make_cyclic(4), make_dihedral(genus))
        hi = 2 * genus
        expected = Signature(0, (2, 4, 4 * genus))
    spec = genus_spectrum(grp, 2, hi, deadline=deadline, cap=None)
    res = spec.results.get(genus)
    wit = res.signature if res and res.acts else None
    passed = spec.acting_genera == [genus] and not spec.undecided
    if genus % 2 == 0:
        passed = passed and wit == expected
    return LemmaReport(genus, grp.name, (2, hi), spec, passed, wit, expected)
