"""Verification suites run by ``torsion-obstruct verify``.

Each suite returns a ``SuiteResult`` whose status is ``pass``, ``fail`` or
``inconclusive`` (a budget or cap ran out before a verdict).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .budget import UNLIMITED, Deadline
from .characters import character_table, frobenius_schur, min_faithful_O_degree, min_faithful_SO_degree
from .cyclotomic import Cyclotomic
from .errors import ResourceError, TorsionObstructError
from .groups import FiniteGroup, direct_product, is_isomorphic, make_cyclic, semidirect_product
from .subgroups import index2_subgroups

SCHEMA = "torsion-obstruct/1"

EXCEPTIONAL_GENERA = (4, 5, 7, 11, 13, 16, 23, 25, 34, 41)
D_P3_PRIMES = (7, 13, 19, 31, 37)


@dataclass
class SuiteResult:
    name: str
    checks: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    error: str | None = None

    def check(self, label: str, ok: bool, **detail) -> bool:
        self.checks.append({"check": label, "passed": bool(ok), **detail})
        return bool(ok)

    @property
    def status(self) -> str:
        if self.error is not None:
            return "inconclusive"
        return "pass" if all(c["passed"] for c in self.checks) else "fail"

    def to_json(self) -> dict:
        out = {"schema": SCHEMA, "suite": self.name, "status": self.status, "checks": self.checks, "notes": self.notes}
        if self.error is not None:
            out["error"] = self.error
        return out


def _elementary_3(rank: int) -> FiniteGroup:
    g = make_cyclic(3)
    for _ in range(rank - 1):
        g = direct_product(g, make_cyclic(3))
    g.name = " x ".join(["C3"] * rank)
    return g


# -- suites --------------------------------------------------------------------------


def suite_lemma_mz(res: SuiteResult, deadline: Deadline, genera=(3, 4, 5, 6, 7, 8)) -> None:
    from .surfaces import verify_lemma_MZ

    for g in genera:
        rep = verify_lemma_MZ(g, deadline)
        if rep.spectrum.undecided:
            raise ResourceError(f"{rep.family} undecided at genera {rep.spectrum.undecided}")
        res.check(
            f"{rep.family}: spectrum on [{rep.expected_range[0]}, {rep.expected_range[1]}] is {{{g}}}",
            rep.passed,
            genera=rep.spectrum.acting_genera,
            witness=str(rep.witness) if rep.witness else None,
        )


def suite_exceptional_genera(res: SuiteResult, deadline: Deadline) -> None:
    from .spheres import metacyclic_group
    from .surfaces import genus_spectrum

    acting: set[int] = set()
    for p in D_P3_PRIMES:
        spec = genus_spectrum(metacyclic_group(p, 3), 3, 41, want_witness=False, deadline=deadline)
        acting |= set(spec.acting_genera)
        if spec.undecided:
            raise ResourceError(f"M({p},3) undecided at {spec.undecided}")
    missing = sorted(set(range(3, 42)) - acting)
    res.check("genera in [3,41] with no action of M(p,3), p in {7,13,19,31,37}", tuple(missing) == EXCEPTIONAL_GENERA,
              found=missing, expected=list(EXCEPTIONAL_GENERA))
    spec = genus_spectrum(metacyclic_group(7, 3), 42, 60, want_witness=True, deadline=deadline)
    res.check("M(7,3) acts on every genus in [42,60]", spec.acting_genera == list(range(42, 61)),
              missing=sorted(set(range(42, 61)) - set(spec.acting_genera)))
    from .catalog import small_group
    from .surfaces import acts_on_genus

    for key, genera in (((16, 4), (5, 7, 13, 23)), ((20, 3), (4, 11, 16, 25, 34, 41)), ((32, 2), (5, 13, 25, 41)),
                        ((27, 4), (7, 16, 34)), ((96, 66), (23,))):
        grp = small_group(*key)
        bad = [g for g in genera if not acts_on_genus(grp, g)]
        res.check(f"{grp.name} acts on genera {list(genera)}", not bad, failing=bad)


def suite_s3_groups(res: SuiteResult, deadline: Deadline) -> None:
    from .catalog import small_group
    from .spheres import MetacyclicParams, metacyclic_group, min_sphere_dim, s3_obstructed

    groups = [metacyclic_group(p, 3) for p in D_P3_PRIMES]
    groups += [small_group(20, 3), small_group(16, 4), semidirect_product(4, 4, 3), _elementary_3(3)]
    for g in groups:
        deadline.check()
        ev = s3_obstructed(g)
        res.check(f"{g.name} is not a subgroup of SO(4)", ev.verdict)
    res.check("M(5,4) needs dimension 4 > 3", min_sphere_dim(MetacyclicParams(5, 4)) == 4)
    res.check("M(7,3) needs dimension 5 > 3", min_sphere_dim(MetacyclicParams(7, 3)) == 5)


def suite_s4_groups(res: SuiteResult, deadline: Deadline) -> None:
    from .catalog import small_group
    from .characters import embeds_in_SO
    from .spheres import metacyclic_group, s4_obstructed

    for g in [small_group(32, 2), small_group(27, 4), small_group(96, 66), _elementary_3(3)] + [
        metacyclic_group(p, 3) for p in D_P3_PRIMES
    ]:
        deadline.check()
        ev = s4_obstructed(g)
        res.check(f"{g.name}: not in SO(5) and no index-2 subgroup in SO(4)", ev.verdict)
    g = small_group(40, 3)
    res.check("SG(40,3) is not a subgroup of SO(5)", not embeds_in_SO(g, 5))
    subs = index2_subgroups(g)
    res.check("SG(40,3) has a unique index-2 subgroup", len(subs) == 1, count=len(subs))
    if len(subs) == 1:
        h = g.subgroup(subs[0])
        res.check("its index-2 subgroup is SG(20,1) = SD(5,4,4)",
                  is_isomorphic(h, small_group(20, 1)) and is_isomorphic(h, semidirect_product(5, 4, 4)))
        res.check("its index-2 subgroup lies in SO(4)", bool(embeds_in_SO(h, 4)))
    res.notes.append("SG(40,3): obstruction requires topological argument (g = 11 case); not asserted here")


def suite_metacyclic_bounds(res: SuiteResult, deadline: Deadline, max_order: int = 200) -> None:
    from .spheres import MetacyclicParams, dirichlet_witness, genus_bound_pipeline, metacyclic_pairs, min_sphere_dim

    bad = []
    for p, k in metacyclic_pairs(max_order):
        deadline.check()
        g = MetacyclicParams(p, k).group()
        pres = min_sphere_dim(MetacyclicParams(p, k))
        anyo = min_sphere_dim(MetacyclicParams(p, k, orientation="any"))
        so = min_faithful_SO_degree(g, limit=2 * k + 2, cap=None)
        if k % 2:
            ok = pres == anyo == 2 * k - 1 and so == 2 * k
        else:
            ok = pres == k and anyo == k - 1 and so == k + 1 and min_faithful_O_degree(g, limit=k + 1, cap=None) == k
        if not ok:
            bad.append({"p": p, "k": k, "so_degree": so})
    res.check(f"dimension formula and linear realisations for all pk <= {max_order}", not bad, failures=bad)
    bad_n = [n for n in range(2, 33) if not (2 * dirichlet_witness(n).q > n + 1 and dirichlet_witness(n).min_dim > n)]
    res.check("Dirichlet witness beats S^n for 2 <= n <= 32", not bad_n, failing=bad_n)
    res.check("n in {2,3,4} gives (q,p) = (3,7)", all((dirichlet_witness(n).q, dirichlet_witness(n).p) == (3, 7) for n in (2, 3, 4)))
    pipe = genus_bound_pipeline(3)
    res.check("n = 3: p^2 q = 147", pipe["p2q"] == 147)
    onset = pipe.get("empirical", {}).get("onset")
    res.check("M(7,3) acts on every genus from 42 on (search window)", onset is not None and onset <= 42, onset=onset)


def suite_symplectic(res: SuiteResult, deadline: Deadline) -> None:
    from .symplectic import verify_witness

    for g in range(1, 9):
        deadline.check()
        rep = verify_witness(g, raise_on_failure=False)
        res.check(f"(Z/3)^{g} inside Sp({2 * g}, Z)", rep.passed, group_order=rep.group_order, failure=rep.failure)


def char_sanity_groups() -> list[FiniteGroup]:
    from .catalog import binary_polyhedral, catalog_keys, fixture
    from .groups import make_alternating, make_dicyclic, make_dihedral, make_symmetric
    from .spheres import metacyclic_group

    out = [fixture(k) for k in catalog_keys()]
    out += [binary_polyhedral(t) for t in ("2T", "2O", "2I")]
    out += [make_dihedral(5), make_dicyclic(3), make_symmetric(4), make_alternating(5), metacyclic_group(7, 3),
            direct_product(make_cyclic(4), make_dihedral(3)), _elementary_3(3)]
    return out


def character_identities(g: FiniteGroup) -> dict[str, bool]:
    """Row and column orthogonality and the involution count from indicators."""
    tab = character_table(g, cap=None)
    cd = g.conjugacy
    h = len(cd)
    m = tab.conductor
    conj = [tuple(v.conjugate() for v in row) for row in tab.rows]
    rows_ok = all(
        tab.inner_product(tab.rows[i], tab.rows[j]) == (1 if i == j else 0) for i in range(h) for j in range(i, h)
    )
    cols_ok = True
    for a in range(h):
        for b in range(a, h):
            acc = Cyclotomic.zero(m)
            for i in range(h):
                acc = acc + tab.rows[i][a] * conj[i][b]
            want = g.order // cd.class_sizes[a] if a == b else 0
            cols_ok &= acc == want
    fs = sum(frobenius_schur(tab, i) * d for i, d in enumerate(tab.degrees))
    return {"row orthogonality": rows_ok, "column orthogonality": cols_ok,
            "sum FS(chi) chi(1) = #{x : x^2 = 1}": fs == 1 + len(g.involutions())}


def suite_char_sanity(res: SuiteResult, deadline: Deadline) -> None:
    for g in char_sanity_groups():
        deadline.check()
        for label, ok in character_identities(g).items():
            res.check(f"{g.name}: {label}", ok)


SUITES: dict[str, Callable[[SuiteResult, Deadline], None]] = {
    "lemma-mz": suite_lemma_mz,
    "exceptional-genera": suite_exceptional_genera,
    "s3-groups": suite_s3_groups,
    "s4-groups": suite_s4_groups,
    "metacyclic-bounds": suite_metacyclic_bounds,
    "symplectic": suite_symplectic,
    "char-sanity": suite_char_sanity,
}


def run_suite(name: str, time_budget: float | None = None) -> SuiteResult:
    """Run one suite; resource exhaustion makes it inconclusive, other errors propagate."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    res = SuiteResult(name)
    deadline = Deadline(time_budget) if time_budget is not None else UNLIMITED
    try:
        SUITES[name](res, deadline)
    except ResourceError as exc:
        res.error = str(exc)
    return res


def _run_suite_json(args: tuple[str, float | None]) -> dict:
    name, budget = args
    try:
        return run_suite(name, budget).to_json()
    except TorsionObstructError as exc:
        return {"schema": SCHEMA, "suite": name, "status": "fail", "checks": [], "notes": [], "error": f"{type(exc).__name__}: {exc}"}


def run_suites(names: list[str], time_budget: float | None = None, jobs: int = 1) -> list[dict]:
    """Run suites (in parallel processes when ``jobs > 1``); results keep the order of ``names``."""
    args = [(n, time_budget) for n in names]
    if jobs <= 1 or len(names) == 1:
        return [_run_suite_json(a) for a in args]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_suite_json, args))
