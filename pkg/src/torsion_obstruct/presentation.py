"""Finite presentations, their text format, and Todd-Coxeter coset enumeration.

Words are tuples of signed generator numbers: ``+i`` is generator ``i-1`` and
``-i`` its inverse (so generator ``a`` is ``1`` and ``A`` is ``-1``).

Text format::

    gens 2
    a^4
    b^4
    B a b a        # b^-1 a b a, i.e. b^-1 a b = a^-1
    (a b)^2 = b^3  # "lhs = rhs" is shorthand for lhs rhs^-1
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import GroupConstructionError, ResourceError
from .groups import FiniteGroup

Word = tuple[int, ...]

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Presentation:
    num_generators: int
    relators: tuple[Word, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.num_generators < 1:
            raise GroupConstructionError("presentation needs at least one generator")
        if not self.relators:
            raise GroupConstructionError("presentation needs at least one relator")
        for w in self.relators:
            if not w:
                raise GroupConstructionError("empty relator")
            for s in w:
                if s == 0 or abs(s) > self.num_generators:
                    raise GroupConstructionError(f"relator uses undeclared generator {s}")
        if not self.names:
            object.__setattr__(self, "names", tuple(_LETTERS[: self.num_generators]))

    def format(self) -> str:
        lines = [f"gens {self.num_generators}"]
        for w in self.relators:
            lines.append(" ".join(_letter(s) for s in w))
        return "\n".join(lines) + "\n"


def _letter(s: int) -> str:
    c = _LETTERS[abs(s) - 1]
    return c if s > 0 else c.upper()


_TOKEN = re.compile(r"\s*(?:([A-Za-z])|(\()|(\))|\^\s*(-?\d+)|(=))")


def parse_word(text: str, num_generators: int) -> Word:
    """Parse ``a^4``, ``B a b a``, ``(ab)^-2 = b`` into a signed word."""
    pos = 0
    stack: list[list[int]] = [[]]
    last: list[int] | None = None
    sides: list[list[int]] = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise GroupConstructionError(f"cannot parse word {text!r} at position {pos}")
        pos = m.end()
        letter, lpar, rpar, exp, eq = m.groups()
        if letter:
            i = _LETTERS.index(letter.lower()) + 1
            if i > num_generators:
                raise GroupConstructionError(f"generator {letter!r} not declared (gens {num_generators})")
            last = [i if letter.islower() else -i]
            stack[-1].extend(last)
        elif lpar:
            stack.append([])
            last = None
        elif rpar:
            if len(stack) == 1:
                raise GroupConstructionError(f"unbalanced ')' in {text!r}")
            last = stack.pop()
            stack[-1].extend(last)
        elif exp is not None:
            if last is None:
                raise GroupConstructionError(f"dangling exponent in {text!r}")
            k = int(exp)
            del stack[-1][len(stack[-1]) - len(last):]
            base = last if k >= 0 else [-s for s in reversed(last)]
            stack[-1].extend(base * abs(k))
            last = None
        elif eq:
            if len(stack) != 1:
                raise GroupConstructionError(f"'=' inside parentheses in {text!r}")
            sides.append(stack.pop())
            stack = [[]]
            last = None
    if len(stack) != 1:
        raise GroupConstructionError(f"unbalanced '(' in {text!r}")
    sides.append(stack[0])
    word = sides[0]
    for rhs in sides[1:]:
        word = word + [-s for s in reversed(rhs)]
    return free_reduce(tuple(word))


def free_reduce(w: Word) -> Word:
    out: list[int] = []
    for s in w:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def parse_presentation(text: str) -> Presentation:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GroupConstructionError("empty presentation")
    head = lines[0].split()
    if len(head) < 2 or head[0] != "gens" or not head[1].isdigit():
        raise GroupConstructionError("first line must be 'gens k'")
    k = int(head[1])
    if not 1 <= k <= 26:
        raise GroupConstructionError("gens must be between 1 and 26")
    rels = []
    for line in lines[1:]:
        w = parse_word(line, k)
        if w:
            rels.append(w)
    return Presentation(k, tuple(rels))


def load_presentation(path: str | Path) -> Presentation:
    return parse_presentation(Path(path).read_text())


# -- coset enumeration ----------------------------------------------------------


class _CosetTable:
    def __init__(self, ngens: int, max_cosets: int) -> None:
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent: list[int] = [0]
        self.defined = 1

    @staticmethod
    def col(s: int) -> int:
        # generator i (1-based) -> column 2(i-1); its inverse -> 2(i-1)+1
        return 2 * (abs(s) - 1) + (s < 0)

    @staticmethod
    def inv_col(c: int) -> int:
        return c ^ 1

    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> int:
        if self.defined >= self.max_cosets:
            raise ResourceError(f"coset enumeration exceeded {self.max_cosets} cosets")
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.defined += 1
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        return d

    def scan_and_fill(self, c: int, word: list[int]) -> None:
        t = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] >= 0:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i and t[b][word[j] ^ 1] >= 0:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        lo, hi = min(k, l), max(k, l)
        self.parent[hi] = lo
        queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        t = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            e = queue[qi]
            qi += 1
            for x in range(self.ncols):
                f = t[e][x]
                if f < 0:
                    continue
                if t[f][x ^ 1] == e:
                    t[f][x ^ 1] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if t[e1][x] >= 0:
                    self._merge(f1, t[e1][x], queue)
                elif t[f1][x ^ 1] >= 0:
                    self._merge(e1, t[f1][x ^ 1], queue)
                else:
                    t[e1][x] = f1
                    t[f1][x ^ 1] = e1


def todd_coxeter(pres: Presentation, max_cosets: int = 200_000, name: str | None = None) -> FiniteGroup:
    """Enumerate cosets of the trivial subgroup (HLT) and return the group table.

    Elements are numbered by a breadth-first standardisation of the final
    coset table, so the numbering depends only on the presentation.
    """
    ct = _CosetTable(pres.num_generators, max_cosets)
    rels = [[ct.col(s) for s in w] for w in pres.relators]
    # cyclic conjugates are implied when scanning every coset
    c = 0
    while c < len(ct.table):
        if ct.live(c):
            for w in rels:
                ct.scan_and_fill(c, w)
                if not ct.live(c):
                    break
            if ct.live(c):
                for x in range(ct.ncols):
                    if ct.table[c][x] < 0:
                        ct.define(c, x)
        c += 1

    t = ct.table
    order: list[int] = [0]
    newnum = {0: 0}
    i = 0
    while i < len(order):
        cur = order[i]
        for x in range(ct.ncols):
            d = ct.rep(t[cur][x])
            if d not in newnum:
                newnum[d] = len(order)
                order.append(d)
        i += 1
    n = len(order)
    act = [[newnum[ct.rep(t[c][x])] for x in range(ct.ncols)] for c in order]

    # word of each element as (parent element, column) from the BFS tree
    tree: list[tuple[int, int]] = [(-1, -1)] * n
    seen = [False] * n
    seen[0] = True
    bfs = [0]
    k = 0
    while k < len(bfs):
        cur = bfs[k]
        k += 1
        for x in range(ct.ncols):
            d = act[cur][x]
            if not seen[d]:
                seen[d] = True
                tree[d] = (cur, x)
                bfs.append(d)
    tab = [[0] * n for _ in range(n)]
    for i_ in range(n):
        tab[i_][0] = i_
    for j in bfs[1:]:
        par, x = tree[j]
        for i_ in range(n):
            tab[i_][j] = act[tab[i_][par]][x]
    gens = [act[0][2 * g] for g in range(pres.num_generators)]
    labels = {pres.names[g]: gens[g] for g in range(pres.num_generators)}
    return FiniteGroup(tab, name=name or f"FP{n}", generators=gens, generator_labels=labels)
