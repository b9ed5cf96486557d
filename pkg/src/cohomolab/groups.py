"""Finite groups given by multiplication tables, and their actions on finite sets.

Elements are integer indices.  ``mul[a][b]`` is the index of the product ab.
All validation is exhaustive; corpus groups are small enough for that.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence


class GroupError(ValueError):
    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message if witness is None else f"{message}: witness {witness}")
        self.witness = witness


@dataclass(frozen=True, eq=False)
class Group:
    order: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    name: str = ""
    labels: tuple[str, ...] | None = None

    def __repr__(self):
        return f"Group({self.name or '?'}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def product(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = self.mul[acc][x]
        return acc

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def commute(self, a: int, b: int) -> bool:
        return self.mul[a][b] == self.mul[b][a]

    @cached_property
    def is_abelian(self) -> bool:
        return all(self.commute(a, b) for a in self.elements() for b in range(a))

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    def generators(self) -> list[int]:
        """A small generating set, greedy by element index."""
        gens: list[int] = []
        span = {self.identity}
        for g in self.elements():
            if g not in span:
                gens.append(g)
                span = set(self.subgroup_generated(gens).elements)
            if len(span) == self.order:
                break
        return gens

    def subgroup_generated(self, gens: Sequence[int]) -> "Subgroup":
        seen = {self.identity}
        todo = deque([self.identity])
        while todo:
            x = todo.popleft()
            for g in gens:
                y = self.mul[x][g]
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return Subgroup(self, tuple(sorted(seen)))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(self.elements()))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))


def build_group(mul_table: Sequence[Sequence[int]], name: str = "", labels=None) -> Group:
    """Validate a Cayley table and derive identity and inverses.

    Raises GroupError carrying a witness triple for the first failing axiom.
    """
    n = len(mul_table)
    if n == 0:
        raise GroupError("empty table")
    mul = tuple(tuple(int(x) for x in row) for row in mul_table)
    for a, row in enumerate(mul):
        if len(row) != n:
            raise GroupError(f"row {a} has length {len(row)}, expected {n}")
        for b, c in enumerate(row):
            if not 0 <= c < n:
                raise GroupError("table entry out of range", (a, b, c))
    ident = next((e for e in range(n) if all(mul[e][x] == x and mul[x][e] == x for x in range(n))), None)
    if ident is None:
        # witness: for candidate 0, an element it fails to fix
        bad = next(x for x in range(n) if mul[0][x] != x or mul[x][0] != x)
        raise GroupError("no two-sided identity", (0, bad, mul[0][bad]))
    inv = []
    for a in range(n):
        b = next((b for b in range(n) if mul[a][b] == ident and mul[b][a] == ident), None)
        if b is None:
            raise GroupError("element has no two-sided inverse", (a, a, mul[a][a]))
        inv.append(b)
    for a in range(n):
        ma = mul[a]
        for b in range(n):
            ab = ma[b]
            mab = mul[ab]
            mb = mul[b]
            for c in range(n):
                if mab[c] != ma[mb[c]]:
                    raise GroupError("table is not associative", (a, b, c))
    if labels is not None:
        labels = tuple(str(s) for s in labels)
    return Group(n, mul, ident, tuple(inv), name, labels)


def group_from_permutations(generators: Sequence[Sequence[int]], name: str = "") -> tuple[Group, list[int]]:
    """Close permutation generators into a Cayley table.

    Composition is ``(a*b)(i) = a[b[i]]``.  Elements are numbered in
    breadth-first order from the identity by right multiplication with the
    generators, so the numbering is deterministic.  Returns the group and the
    element index of each generator.
    """
    if not generators:
        raise GroupError("need at least one generator (use [[0]] for the trivial group)")
    d = len(generators[0])
    gens = [tuple(g) for g in generators]
    for g in gens:
        if len(g) != d or sorted(g) != list(range(d)):
            raise GroupError(f"not a permutation of range({d})", (g,))
    ident = tuple(range(d))
    elems = [ident]
    index = {ident: 0}
    todo = deque([ident])
    while todo:
        x = todo.popleft()
        for g in gens:
            y = tuple(x[g[i]] for i in range(d))
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                todo.append(y)
    mul = [[index[tuple(a[b[i]] for i in range(d))] for b in elems] for a in elems]
    return build_group(mul, name, labels=["".join(map(str, e)) if d <= 10 else str(e) for e in elems]), [index[g] for g in gens]


def direct_product(a: Group, b: Group, name: str = "") -> Group:
    nb = b.order
    mul = [[a.mul[x // nb][y // nb] * nb + b.mul[x % nb][y % nb] for y in range(a.order * nb)]
           for x in range(a.order * nb)]
    return build_group(mul, name or f"{a.name}x{b.name}")


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group
    elements: tuple[int, ...]

    def __post_init__(self):
        g = self.parent
        es = set(self.elements)
        if g.identity not in es:
            raise GroupError("subgroup must contain the identity")
        for a in self.elements:
            if g.inv[a] not in es:
                raise GroupError("subgroup not closed under inverse", (a, g.inv[a]))
            for b in self.elements:
                if g.mul[a][b] not in es:
                    raise GroupError("subgroup not closed under multiplication", (a, b, g.mul[a][b]))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._index

    @cached_property
    def _index(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def local(self, x: int) -> int:
        """Position of a parent element inside ``elements``."""
        return self._index[x]

    @cached_property
    def as_group(self) -> Group:
        """The subgroup as a standalone Group, local index i <-> elements[i]."""
        g = self.parent
        idx = self._index
        mul = [[idx[g.mul[a][b]] for b in self.elements] for a in self.elements]
        labels = [g.label(e) for e in self.elements]
        return build_group(mul, f"{g.name}<{','.join(labels)}>" if g.name else "", labels)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.elements == other.elements

    def __hash__(self):
        return hash((id(self.parent), self.elements))


# element-level structure ------------------------------------------------


def conjugacy_classes(g: Group) -> list[list[int]]:
    """Partition of G into conjugacy classes, each sorted; classes ordered by smallest element."""
    seen: set[int] = set()
    classes = []
    for x in g.elements():
        if x in seen:
            continue
        cls = sorted({g.conj(h, x) for h in g.elements()})
        seen.update(cls)
        classes.append(cls)
    return classes


def centralizer(g: Group, x: int) -> Subgroup:
    if not 0 <= x < g.order:
        raise IndexError(f"element {x} out of range for order {g.order}")
    return Subgroup(g, tuple(h for h in g.elements() if g.commute(h, x)))


@dataclass(frozen=True)
class CTVerdict:
    commutative_transitive: bool
    witness: tuple[int, int, int] | None = None  # (x, a, b): a, b in C_x with ab != ba

    def __bool__(self):
        return self.commutative_transitive


def is_commutative_transitive(g: Group) -> CTVerdict:
    """Every non-identity element has an abelian centralizer?"""
    for x in g.elements():
        if x == g.identity:
            continue
        c = centralizer(g, x).elements
        for i, a in enumerate(c):
            for b in c[:i]:
                if not g.commute(a, b):
                    return CTVerdict(False, (x, b, a))
    return CTVerdict(True)


# actions ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GAction:
    """Left action: ``act[g][s]`` is the point g.s."""

    group: Group
    set_size: int
    act: tuple[tuple[int, ...], ...]
    label: str = ""
    point_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        g = self.group
        if self.set_size < 1:
            raise GroupError("action needs a nonempty set")
        if len(self.act) != g.order or any(len(r) != self.set_size for r in self.act):
            raise GroupError(f"action table must be {g.order}x{self.set_size}")
        for r in self.act:
            for s in r:
                if not 0 <= s < self.set_size:
                    raise GroupError("action entry out of range", (s,))
        for s in range(self.set_size):
            if self.act[g.identity][s] != s:
                raise GroupError("identity does not act trivially", (g.identity, s))
        for a in g.elements():
            for b in g.elements():
                ab = g.mul[a][b]
                for s in range(self.set_size):
                    if self.act[a][self.act[b][s]] != self.act[ab][s]:
                        raise GroupError("not an action: g.(h.s) != (gh).s", (a, b, s))

    def __call__(self, g: int, s: int) -> int:
        return self.act[g][s]


def make_action(g: Group, table, label="", point_labels=None) -> GAction:
    return GAction(g, len(table[0]) if table else 0, tuple(tuple(r) for r in table), label,
                   tuple(point_labels) if point_labels else None)


def conjugation_action(g: Group) -> GAction:
    """G acting on S = G minus {identity} by g.x = g x g^-1.

    Point i of S is the i-th non-identity element in index order.
    """
    if g.order < 2:
        raise GroupError("conjugation action needs |G| >= 2 (S would be empty)")
    pts = [x for x in g.elements() if x != g.identity]
    pos = {x: i for i, x in enumerate(pts)}
    table = [[pos[g.conj(h, x)] for x in pts] for h in g.elements()]
    return make_action(g, table, f"conjugation({g.name})", [g.label(x) for x in pts])


def regular_action(g: Group) -> GAction:
    return make_action(g, [list(r) for r in g.mul], f"regular({g.name})", [g.label(x) for x in g.elements()])


def trivial_action(g: Group, n: int = 1) -> GAction:
    return make_action(g, [list(range(n)) for _ in g.elements()], f"trivial({g.name},{n})")


def coset_action(g: Group, h: Subgroup) -> GAction:
    """G acting on left cosets G/H."""
    t = transversal(g, h)
    table = [[t.coset_of[g.mul[x][t.tau[j]]] for j in range(t.index)] for x in g.elements()]
    return make_action(g, table, f"cosets({g.name}/{h.order})")


def disjoint_union(*actions: GAction) -> GAction:
    g = actions[0].group
    rows = [[] for _ in g.elements()]
    off = 0
    for a in actions:
        if a.group is not g:
            raise GroupError("disjoint union of actions of different groups")
        for x in g.elements():
            rows[x].extend(s + off for s in a.act[x])
        off += a.set_size
    return make_action(g, rows, "+".join(a.label for a in actions))


@dataclass(frozen=True)
class OrbitDecomposition:
    action: GAction
    representatives: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]
    stabilizers: tuple[Subgroup, ...]


def orbit_decompose(a: GAction) -> OrbitDecomposition:
    g = a.group
    seen: set[int] = set()
    reps, orbits, stabs = [], [], []
    for s in range(a.set_size):
        if s in seen:
            continue
        orb = sorted({a.act[x][s] for x in g.elements()})
        seen.update(orb)
        stab = Subgroup(g, tuple(x for x in g.elements() if a.act[x][s] == s))
        if len(orb) * stab.order != g.order:
            raise GroupError("orbit-stabilizer count failed", (s, len(orb), stab.order))
        reps.append(s)
        orbits.append(tuple(orb))
        stabs.append(stab)
    return OrbitDecomposition(a, tuple(reps), tuple(orbits), tuple(stabs))


# cosets ----------------------------------------------------------------


@dataclass(frozen=True)
class Transversal:
    """Left cosets gH with a chosen representative tau per coset.

    ``eta[g]`` is the parent index of the H-element with g = tau(gH) eta(g).
    """

    subgroup: Subgroup
    tau: tuple[int, ...]
    eta: tuple[int, ...]
    coset_of: tuple[int, ...]
    cosets: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> int:
        return len(self.tau)


def transversal(g: Group, h: Subgroup, rng: random.Random | None = None) -> Transversal:
    """Enumerate left cosets in order of their smallest element.

    By default tau picks the smallest element of each coset (the identity for
    H itself).  With ``rng`` the representative is drawn at random instead;
    everything downstream must be independent of that choice.
    """
    if h.parent is not g:
        raise GroupError("subgroup belongs to a different group")
    coset_of = [-1] * g.order
    cosets = []
    for x in g.elements():
        if coset_of[x] >= 0:
            continue
        c = tuple(sorted(g.mul[x][y] for y in h.elements))
        for y in c:
            coset_of[y] = len(cosets)
        cosets.append(c)
    if rng is None:
        tau = [g.identity if g.identity in c else c[0] for c in cosets]
    else:
        tau = [rng.choice(c) for c in cosets]
    eta = [g.mul[g.inv[tau[coset_of[x]]]][x] for x in g.elements()]
    return Transversal(h, tuple(tau), tuple(eta), tuple(coset_of), tuple(cosets))


def check_transversal(g: Group, t: Transversal) -> tuple | None:
    """Exhaustive scan of the transversal laws; returns a failing witness or None."""
    h = t.subgroup
    for j, c in enumerate(t.cosets):
        if t.coset_of[t.tau[j]] != j:
            return ("tau outside its coset", j)
    for x in g.elements():
        if t.eta[x] not in h:
            return ("eta outside H", x)
        if g.mul[t.tau[t.coset_of[x]]][t.eta[x]] != x:
            return ("g != tau(gH) eta(g)", x)
        for y in h.elements:
            if t.eta[g.mul[x][y]] != g.mul[t.eta[x]][y]:
                return ("eta(gh) != eta(g) h", x, y)
    return None
