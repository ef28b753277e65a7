"""Group expressions such as ``C4 x D5``, ``M(7,3)`` or ``CP(DC2, 4, BP(2T), 1)``.

Grammar (whitespace-insensitive)::

    expr := term ("x" term)*
    term := NAME INT | NAME "(" args ")" | "(" expr ")"
          | "CP(" expr "," INT "," expr "," INT ")"
    NAME := C | D | DC | SD | M | SG | P | BP | A | S

``P(...)`` takes a path to a presentation file; ``BP`` takes ``2T``, ``2O``
or ``2I``.  Printing an expression and parsing it back gives the same tree.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import GroupConstructionError
from .groups import DEFAULT_ORDER_CAP, FiniteGroup

SIMPLE_NAMES = {"C": 1, "D": 1, "DC": 1, "A": 1, "S": 1, "SD": 3, "M": 2, "SG": 2}


class ExprError(ValueError):
    """Syntax or semantic error in a group expression."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()) -> None:
        self.message = message
        self.position = position
        self.expected = expected
        extra = f" (expected one of: {', '.join(expected)})" if expected else ""
        super().__init__(f"at position {position}: {message}{extra}")


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    n: int


@dataclass(frozen=True)
class Dicyclic:
    n: int


@dataclass(frozen=True)
class Alternating:
    n: int


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class Semidirect:
    n: int
    k: int
    r: int


@dataclass(frozen=True)
class Metacyclic:
    p: int
    q: int


@dataclass(frozen=True)
class Catalog:
    order: int
    id: int


@dataclass(frozen=True)
class Presented:
    path: str


@dataclass(frozen=True)
class BinaryPolyhedral:
    tag: str


@dataclass(frozen=True)
class DirectProduct:
    left: "GroupExpr"
    right: "GroupExpr"


@dataclass(frozen=True)
class CentralProduct:
    left: "GroupExpr"
    zl: int
    right: "GroupExpr"
    zr: int


GroupExpr = Union[
    Cyclic, Dihedral, Dicyclic, Alternating, Symmetric, Semidirect, Metacyclic,
    Catalog, Presented, BinaryPolyhedral, DirectProduct, CentralProduct,
]

_ONE_ARG = {"C": Cyclic, "D": Dihedral, "DC": Dicyclic, "A": Alternating, "S": Symmetric}
_SHORT = {v: k for k, v in _ONE_ARG.items()}


# -- printing ----------------------------------------------------------------------


def format_expr(e: GroupExpr) -> str:
    if isinstance(e, tuple(_ONE_ARG.values())):
        return f"{_SHORT[type(e)]}{e.n}"
    if isinstance(e, Semidirect):
        return f"SD({e.n},{e.k},{e.r})"
    if isinstance(e, Metacyclic):
        return f"M({e.p},{e.q})"
    if isinstance(e, Catalog):
        return f"SG({e.order},{e.id})"
    if isinstance(e, Presented):
        return f"P({e.path})"
    if isinstance(e, BinaryPolyhedral):
        return f"BP({e.tag})"
    if isinstance(e, CentralProduct):
        return f"CP({format_expr(e.left)},{e.zl},{format_expr(e.right)},{e.zr})"
    if isinstance(e, DirectProduct):
        right = format_expr(e.right)
        if isinstance(e.right, DirectProduct):
            right = f"({right})"
        return f"{format_expr(e.left)} x {right}"
    raise TypeError(f"not a group expression: {e!r}")


# -- parsing ---------------------------------------------------------------------------

_NAME = re.compile(r"DC|SD|SG|BP|CP|[CDMPAS]")


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ExprError(f"unexpected {self._found()}", self.pos, (repr(ch),))
        self.pos += 1

    def _found(self) -> str:
        return repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"

    def integer(self) -> tuple[int, int]:
        self.skip()
        m = re.compile(r"-?\d+").match(self.text, self.pos)
        if not m:
            raise ExprError(f"unexpected {self._found()}", self.pos, ("integer",))
        self.pos = m.end()
        return int(m.group()), m.start()

    def parse(self) -> GroupExpr:
        e = self.expr()
        self.skip()
        if self.pos != len(self.text):
            raise ExprError(f"unexpected {self._found()}", self.pos, ("'x'", "end of input"))
        return e

    def expr(self) -> GroupExpr:
        e = self.term()
        while self.peek() in ("x", "×"):
            self.pos += 1
            e = DirectProduct(e, self.term())
        return e

    def term(self) -> GroupExpr:
        self.skip()
        start = self.pos
        if self.peek() == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        m = _NAME.match(self.text, self.pos)
        if not m:
            raise ExprError(f"unexpected {self._found()}", start, tuple(sorted(list(SIMPLE_NAMES) + ["P", "BP", "CP", "("])))
        name = m.group()
        self.pos = m.end()
        if name == "CP":
            self.expect("(")
            left = self.expr()
            self.expect(",")
            zl, _ = self.integer()
            self.expect(",")
            right = self.expr()
            self.expect(",")
            zr, _ = self.integer()
            self.expect(")")
            return CentralProduct(left, zl, right, zr)
        if name == "P":
            self.expect("(")
            end = self.text.find(")", self.pos)
            if end < 0:
                raise ExprError("unterminated path", self.pos, ("')'",))
            path = self.text[self.pos:end].strip()
            if not path:
                raise ExprError("empty path", self.pos, ("path",))
            self.pos = end + 1
            return Presented(path)
        if name == "BP":
            self.expect("(")
            self.skip()
            tag_pos = self.pos
            tag = self.text[self.pos:self.pos + 2].upper()
            if tag not in ("2T", "2O", "2I"):
                raise ExprError("unknown binary polyhedral tag", tag_pos, ("2T", "2O", "2I"))
            self.pos += 2
            self.expect(")")
            return BinaryPolyhedral(tag)
        if self.peek() == "(":
            self.pos += 1
            args = [self.integer()]
            while self.peek() == ",":
                self.pos += 1
                args.append(self.integer())
            self.expect(")")
        else:
            args = [self.integer()]
        want = SIMPLE_NAMES[name]
        if len(args) != want:
            raise ExprError(f"{name} takes {want} argument(s), got {len(args)}", start)
        return _make_node(name, args)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % f for f in range(2, math.isqrt(n) + 1))


def _make_node(name: str, args: list[tuple[int, int]]) -> GroupExpr:
    vals = [v for v, _ in args]

    def need(ok: bool, i: int, msg: str) -> None:
        if not ok:
            raise ExprError(msg, args[i][1])

    if name in _ONE_ARG:
        n = vals[0]
        low = {"C": 1, "D": 1, "DC": 2, "A": 1, "S": 1}[name]
        need(n >= low, 0, f"n >= {low} required")
        if name in ("A", "S"):
            need(n <= 6, 0, "n <= 6 required")
        return _ONE_ARG[name](n)
    if name == "SD":
        n, k, r = vals
        need(n >= 1, 0, "n >= 1 required")
        need(k >= 1, 1, "k >= 1 required")
        need(math.gcd(r, n) == 1, 2, "r must be a unit mod n")
        need(pow(r, k, n) == 1 % n, 2, "r^k must be 1 mod n")
        return Semidirect(n, k, r % n if n > 1 else 0)
    if name == "M":
        p, q = vals
        need(_is_prime(p) and p > 2, 0, f"p = {p} must be an odd prime")
        need(q >= 2 and (p - 1) % q == 0, 1, f"q = {q} must be >= 2 and divide p - 1")
        return Metacyclic(p, q)
    order, ident = vals
    need(order >= 1, 0, "order >= 1 required")
    need(ident >= 1, 1, "id >= 1 required")
    return Catalog(order, ident)


def parse_group(text: str) -> GroupExpr:
    return _Parser(text).parse()


# -- evaluation ---------------------------------------------------------------------------


def expr_order(e: GroupExpr) -> int | None:
    """Order predicted from the expression alone (None when it needs a build)."""
    if isinstance(e, Cyclic):
        return e.n
    if isinstance(e, Dihedral):
        return 2 * e.n
    if isinstance(e, Dicyclic):
        return 4 * e.n
    if isinstance(e, Symmetric):
        return math.factorial(e.n)
    if isinstance(e, Alternating):
        return max(1, math.factorial(e.n) // 2)
    if isinstance(e, Semidirect):
        return e.n * e.k
    if isinstance(e, Metacyclic):
        return e.p * e.q
    if isinstance(e, Catalog):
        return e.order
    if isinstance(e, BinaryPolyhedral):
        return {"2T": 24, "2O": 48, "2I": 120}[e.tag]
    if isinstance(e, DirectProduct):
        a, b = expr_order(e.left), expr_order(e.right)
        return a * b if a and b else None
    if isinstance(e, CentralProduct):
        a, b = expr_order(e.left), expr_order(e.right)
        return a * b // 2 if a and b else None
    return None


def build_group(e: GroupExpr | str, cap: int | None = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Construct the group, refusing anything predicted to exceed ``cap``."""
    from . import catalog, groups
    from .errors import ResourceError
    from .presentation import load_presentation, todd_coxeter
    from .spheres import metacyclic_group

    if isinstance(e, str):
        e = parse_group(e)
    n = expr_order(e)
    if cap is not None and n is not None and n > cap:
        raise ResourceError(f"{format_expr(e)} has order {n} > cap {cap}")
    if isinstance(e, Cyclic):
        g = groups.make_cyclic(e.n)
    elif isinstance(e, Dihedral):
        g = groups.make_dihedral(e.n)
    elif isinstance(e, Dicyclic):
        g = groups.make_dicyclic(e.n)
    elif isinstance(e, Alternating):
        g = groups.make_alternating(e.n)
    elif isinstance(e, Symmetric):
        g = groups.make_symmetric(e.n)
    elif isinstance(e, Semidirect):
        g = groups.semidirect_product(e.n, e.k, e.r)
    elif isinstance(e, Metacyclic):
        g = metacyclic_group(e.p, e.q)
    elif isinstance(e, Catalog):
        try:
            g = catalog.small_group(e.order, e.id)
        except KeyError:
            raise GroupConstructionError(f"SG({e.order},{e.id}) is not among the shipped fixtures") from None
    elif isinstance(e, BinaryPolyhedral):
        g = catalog.binary_polyhedral(e.tag)
    elif isinstance(e, Presented):
        g = todd_coxeter(load_presentation(e.path), max_cosets=max(1000, 50 * (cap or 4000)))
    elif isinstance(e, DirectProduct):
        g = groups.direct_product(build_group(e.left, cap), build_group(e.right, cap))
    elif isinstance(e, CentralProduct):
        left, right = build_group(e.left, cap), build_group(e.right, cap)
        for grp, z in ((left, e.zl), (right, e.zr)):
            if not 0 <= z < grp.order:
                raise GroupConstructionError(f"element index {z} out of range for {grp.name}")
        g = groups.central_product(left, e.zl, right, e.zr)
    else:
        raise TypeError(f"not a group expression: {e!r}")
    if cap is not None and g.order > cap:
        raise ResourceError(f"{format_expr(e)} has order {g.order} > cap {cap}")
    g.name = format_expr(e)
    return g
