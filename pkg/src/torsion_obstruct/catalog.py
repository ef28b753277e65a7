"""Named groups: SmallGroup fixtures, binary polyhedral groups, the SO(3) list.

Catalog groups are built from the presentation files in ``fixtures/`` and
validated against the manifest (order, class count, abelian invariants,
character degrees) every time they are loaded.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .errors import TorsionObstructError
from .groups import (
    FiniteGroup,
    abelian_invariants,
    central_product,
    make_alternating,
    make_cyclic,
    make_dicyclic,
    make_sl2,
    make_symmetric,
)
from .presentation import load_presentation, todd_coxeter

FIXTURE_ENV = "TORSION_OBSTRUCT_FIXTURES"
DEFAULT_FIXTURE_DIR = Path(__file__).parent / "fixtures"


class FixtureMismatch(TorsionObstructError):
    """A fixture group does not match its manifest entry."""


@dataclass(frozen=True)
class FixtureEntry:
    key: str
    file: str
    order: int
    class_count: int
    abelian_invariants: tuple[int, ...]
    degrees: tuple[int, ...]
    structure: str = ""
    metacyclic: tuple[int, int] | None = None


def fixture_dir() -> Path:
    return Path(os.environ.get(FIXTURE_ENV, DEFAULT_FIXTURE_DIR))


def load_manifest(directory: Path | None = None) -> dict[str, FixtureEntry]:
    directory = directory or fixture_dir()
    data = json.loads((directory / "manifest.json").read_text())
    out = {}
    for e in data["groups"]:
        out[e["key"]] = FixtureEntry(
            key=e["key"],
            file=e["file"],
            order=e["order"],
            class_count=e["class_count"],
            abelian_invariants=tuple(e["abelian_invariants"]),
            degrees=tuple(e["degrees"]),
            structure=e.get("structure", ""),
            metacyclic=tuple(e["metacyclic"]) if e.get("metacyclic") else None,
        )
    return out


def validate_fixture(g: FiniteGroup, entry: FixtureEntry) -> None:
    from .characters import character_table

    got = {
        "order": g.order,
        "class_count": len(g.conjugacy),
        "abelian_invariants": tuple(abelian_invariants(g)),
        "degrees": character_table(g, cap=None).degrees,
    }
    want = {
        "order": entry.order,
        "class_count": entry.class_count,
        "abelian_invariants": entry.abelian_invariants,
        "degrees": entry.degrees,
    }
    bad = [k for k in want if got[k] != want[k]]
    if bad:
        detail = ", ".join(f"{k}: expected {want[k]}, got {got[k]}" for k in bad)
        raise FixtureMismatch(f"fixture {entry.key} ({entry.file}) failed validation: {detail}")


@lru_cache(maxsize=None)
def _load_fixture(key: str, directory: str) -> FiniteGroup:
    try:
        manifest = load_manifest(Path(directory))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise FixtureMismatch(f"fixture manifest in {directory} is unreadable: {exc}") from exc
    if key not in manifest:
        raise KeyError(f"no fixture named {key}")
    entry = manifest[key]
    try:
        g = todd_coxeter(load_presentation(Path(directory) / entry.file), max_cosets=50 * entry.order + 1000, name=key)
    except (OSError, ValueError, TorsionObstructError) as exc:
        # an infinite or unparsable presentation is a corrupted fixture, not a resource problem
        raise FixtureMismatch(f"fixture {key} ({entry.file}) could not be built: {exc}") from exc
    validate_fixture(g, entry)
    return g


def fixture(key: str) -> FiniteGroup:
    return _load_fixture(key, str(fixture_dir()))


def small_group(order: int, index: int) -> FiniteGroup:
    """A SmallGroup-library group; only the shipped fixtures are available."""
    return fixture(f"SG({order},{index})")


def catalog_keys() -> list[str]:
    return sorted(k for k in load_manifest() if k.startswith("SG("))


def metacyclic_params(key: str) -> tuple[int, int] | None:
    entry = load_manifest().get(key)
    return entry.metacyclic if entry else None


BINARY_TAGS = ("2T", "2O", "2I")


def binary_polyhedral(tag: str) -> FiniteGroup:
    """Binary tetrahedral/octahedral/icosahedral groups.

    ``2T`` and ``2I`` are ``SL(2,3)`` and ``SL(2,5)`` as matrices; ``2O``
    comes from its presentation (validated against the manifest).
    """
    tag = tag.upper()
    if tag == "2T":
        g = make_sl2(3)
        g.name = "BP(2T)"
        return g
    if tag == "2I":
        g = make_sl2(5)
        g.name = "BP(2I)"
        return g
    if tag == "2O":
        return fixture("BP(2O)")
    raise KeyError(f"unknown binary polyhedral tag {tag!r}; expected one of {BINARY_TAGS}")


def so3_reference_groups(max_order: int) -> list[FiniteGroup]:
    """The classical finite rotation groups of order <= max_order."""
    from .groups import make_dihedral

    out = [make_cyclic(n) for n in range(1, max_order + 1)]
    out += [make_dihedral(n) for n in range(2, max_order // 2 + 1)]
    for n, f in ((12, lambda: make_alternating(4)), (24, lambda: make_symmetric(4)), (60, lambda: make_alternating(5))):
        if n <= max_order:
            out.append(f())
    return out


def unique_central_involution(g: FiniteGroup) -> int:
    invs = [z for z in g.center if g.element_orders[z] == 2]
    if len(invs) != 1:
        raise ValueError(f"{g.name} has {len(invs)} central involutions")
    return invs[0]


def binary_polyhedral_family(max_order: int) -> list[FiniteGroup]:
    """Cyclic C_2n, dicyclic DC_n and the three exceptional binary groups up to max_order."""
    out = [make_cyclic(2 * n) for n in range(1, max_order // 2 + 1)]
    out += [make_dicyclic(n) for n in range(2, max_order // 4 + 1)]
    for tag in BINARY_TAGS:
        g = binary_polyhedral(tag)
        if g.order <= max_order:
            out.append(g)
    return out


def central_product_of(p1: FiniteGroup, p2: FiniteGroup) -> FiniteGroup:
    return central_product(p1, unique_central_involution(p1), p2, unique_central_involution(p2))
