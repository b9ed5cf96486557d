"""Hochschild cochain complexes C*(k[G], M) for explicit finite-dimensional bimodules.

A bimodule is stored as one left-action and one right-action matrix per
group element, acting on column vectors: ``g.m = left[g] @ m`` and
``m.g = right[g] @ m``.  Thus ``left[g] @ left[h] == left[gh]`` while
``right[g] @ right[h] == right[hg]``.

Cochain basis: C^n has basis indexed by (g_1, ..., g_n, i) in lexicographic
order with the module index i varying fastest.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complexes import CohomologyReport, ComplexError, NormedComplex, cohomology_dims
from .groups import GAction, Group
from .linalg import ExactMatrix, FieldTag, kernel_basis, rank, vstack

DEFAULT_MEMORY_CAP = 2_000_000


class MemoryCapError(ComplexError):
    pass


@dataclass(frozen=True, eq=False)
class Bimodule:
    group: Group
    field: FieldTag
    dim: int
    left: tuple[ExactMatrix, ...]
    right: tuple[ExactMatrix, ...]
    label: str = ""

    def __repr__(self):
        return f"Bimodule({self.label}, dim={self.dim}, over {self.field})"


def check_bimodule(m: Bimodule) -> tuple | None:
    """Exhaustive check of the three bimodule laws; returns (law, g, h) on failure."""
    g = m.group
    for a in g.elements():
        if m.left[a].shape != (m.dim, m.dim) or m.right[a].shape != (m.dim, m.dim):
            return ("shape", a, None)
    for a in g.elements():
        for b in g.elements():
            if m.left[a] @ m.left[b] != m.left[g.mul[a][b]]:
                return ("left action is not multiplicative", a, b)
            if m.right[a] @ m.right[b] != m.right[g.mul[b][a]]:
                return ("right action is not multiplicative", a, b)
            if m.left[a] @ m.right[b] != m.right[b] @ m.left[a]:
                return ("left and right actions do not commute", a, b)
    return None


def _perm_matrices(field, perms, n):
    return tuple(ExactMatrix.permutation(field, p, n) for p in perms)


def group_algebra_bimodule(g: Group, field: FieldTag) -> Bimodule:
    """k[G] with left and right translation."""
    n = g.order
    left = _perm_matrices(field, [[g.mul[a][x] for x in range(n)] for a in range(n)], n)
    right = _perm_matrices(field, [[g.mul[x][a] for x in range(n)] for a in range(n)], n)
    return Bimodule(g, field, n, left, right, f"k[{g.name}]")


def dualize(m: Bimodule) -> Bimodule:
    """M' with adjoint actions: (g.f)(x) = f(x.g) and (f.g)(x) = f(g.x)."""
    left = tuple(r.transpose() for r in m.right)
    right = tuple(l.transpose() for l in m.left)
    label = m.label[:-1] if m.label.endswith("'") else m.label + "'"
    return Bimodule(m.group, m.field, m.dim, left, right, label)


def augmentation_bimodule(g: Group, field: FieldTag) -> Bimodule:
    """The one-dimensional module k_eps: every group element acts as 1 on both sides."""
    one = ExactMatrix.identity(field, 1)
    acts = tuple(one for _ in g.elements())
    return Bimodule(g, field, 1, acts, acts, "k_eps")


def permutation_module(a: GAction, field: FieldTag) -> Bimodule:
    """k(S): left action from the G-set, right action trivial."""
    n = a.set_size
    left = _perm_matrices(field, [list(a.act[x]) for x in a.group.elements()], n)
    ident = ExactMatrix.identity(field, n)
    return Bimodule(a.group, field, n, left, tuple(ident for _ in a.group.elements()), f"k({a.label or 'S'})")


def function_dual_of_action(a: GAction, field: FieldTag) -> Bimodule:
    """k(S)': the adjoint dual of k(S) (left action from the G-set, trivial right
    action).  So the left action on k(S)' is trivial and (f.g)(s) = f(g.s)."""
    return dualize(permutation_module(a, field))


def twisted(m: Bimodule) -> Bimodule:
    """Same space; left action g -> left[g] right[g^-1] (conjugation), right action trivial."""
    g = m.group
    left = tuple(m.left[x] @ m.right[g.inv[x]] for x in g.elements())
    ident = ExactMatrix.identity(m.field, m.dim)
    return Bimodule(g, m.field, m.dim, left, tuple(ident for _ in g.elements()), f"tw({m.label})")


def cotwisted(m: Bimodule) -> Bimodule:
    """Same space; left action trivial, right action g -> left[g^-1] right[g].

    For M = N' this is exactly dualize(twisted(N)).
    """
    g = m.group
    right = tuple(m.left[g.inv[x]] @ m.right[x] for x in g.elements())
    ident = ExactMatrix.identity(m.field, m.dim)
    label = f"tw({m.label[:-1]})'" if m.label.endswith("'") else f"cotw({m.label})"
    return Bimodule(g, m.field, m.dim, tuple(ident for _ in g.elements()), right, label)


def center_dim(m: Bimodule) -> int:
    """dim {x : g.x = x.g for all g}, solved directly from a generating set."""
    gens = m.group.generators()
    if not gens:
        return m.dim
    stacked = vstack([m.left[x] - m.right[x] for x in gens])
    return m.dim - rank(stacked)


def center_basis(m: Bimodule) -> ExactMatrix:
    gens = m.group.generators()
    if not gens:
        return ExactMatrix.identity(m.field, m.dim)
    return kernel_basis(vstack([m.left[x] - m.right[x] for x in gens]))


# cochains ----------------------------------------------------------------


def cochain_dim(g: Group, m: Bimodule, n: int) -> int:
    return g.order ** n * m.dim


def coboundary(g: Group, m: Bimodule, n: int) -> ExactMatrix:
    """Matrix of d : C^n -> C^{n+1},

    (d psi)(a_1..a_{n+1}) = a_1 psi(a_2..) + sum_j (-1)^j psi(.., a_j a_{j+1}, ..)
                            + (-1)^{n+1} psi(a_1..a_n) a_{n+1}
    """
    N = g.order
    d = m.dim
    mul = g.mul
    p = m.field.characteristic
    left_nz = [list(x.entries()) for x in m.left]
    right_nz = [list(x.entries()) for x in m.right]
    pow_n = N ** n
    last_sign = -1 if n % 2 == 0 else 1
    cols: dict[int, dict[int, object]] = {}

    def put(row, col, v):
        c = cols.get(col)
        if c is None:
            cols[col] = {row: v}
        else:
            c[row] = c.get(row, 0) + v

    digits = [0] * (n + 1)
    for rt in range(N ** (n + 1)):
        x = rt
        for k in range(n, -1, -1):
            x, digits[k] = divmod(x, N)
        a1 = digits[0]
        tail = rt % pow_n if n else 0
        head = rt // N
        base = rt * d
        for i, k, v in left_nz[a1]:
            put(base + i, tail * d + k, v)
        for j in range(1, n + 1):
            # merge positions j-1 and j (0-based)
            mid = 0
            for k in range(j - 1):
                mid = mid * N + digits[k]
            mid = mid * N + mul[digits[j - 1]][digits[j]]
            for k in range(j + 1, n + 1):
                mid = mid * N + digits[k]
            s = -1 if j % 2 else 1
            mb = mid * d
            for i in range(d):
                put(base + i, mb + i, s)
        an = digits[n]
        hb = head * d
        for i, k, v in right_nz[an]:
            put(base + i, hb + k, last_sign * v)
    out = {}
    for j, c in cols.items():
        if p:
            c = {i: v % p for i, v in c.items() if v % p}
        else:
            c = {i: v for i, v in c.items() if v}
        if c:
            out[j] = c
    return ExactMatrix(m.field, N ** (n + 1) * d, pow_n * d, out)


def hochschild_complex(g: Group, m: Bimodule, max_degree: int = 3, memory_cap: int = DEFAULT_MEMORY_CAP) -> NormedComplex:
    """C^0 .. C^{max_degree+1} with the coboundaries between them.

    Cohomology is then determined through degree ``max_degree``.  Cochains
    carry the sup norm over basis tuples.
    """
    if max_degree < 0:
        raise ComplexError("max_degree must be >= 0")
    if m.group is not g:
        raise ComplexError("bimodule is over a different group")
    top = cochain_dim(g, m, max_degree + 1)
    if top > memory_cap:
        raise MemoryCapError(
            f"C^{max_degree + 1}(k[{g.name}], {m.label}) has dimension {top} > memory cap {memory_cap}; "
            f"lower --max-degree or raise --memory-cap"
        )
    dims = tuple(cochain_dim(g, m, n) for n in range(max_degree + 2))
    maps = tuple(coboundary(g, m, n) for n in range(max_degree + 1))
    return NormedComplex(m.field, dims, maps, "cochain", ("linf",) * len(dims), f"C*(k[{g.name}], {m.label})")


def hochschild_report(g: Group, m: Bimodule, max_degree: int = 3, memory_cap: int = DEFAULT_MEMORY_CAP,
                      tag: str = "") -> CohomologyReport:
    return cohomology_dims(hochschild_complex(g, m, max_degree, memory_cap), tag=tag)
