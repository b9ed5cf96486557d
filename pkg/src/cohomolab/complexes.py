"""Chain and cochain complexes of exact matrices.

One type holds both directions.  For a complex with spaces ``E_0 .. E_L``:

* ``direction == "chain"``: ``maps[i] : E_{i+1} -> E_i``
* ``direction == "cochain"``: ``maps[i] : E_i -> E_{i+1}``

A splitting homotopy ``homotopies[i]`` always runs against ``maps[i]``.
Complexes are built one degree past the last degree of interest, so
(co)homology is reported for degrees ``0 .. L-1`` only.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import (
    Echelon,
    ExactMatrix,
    FieldTag,
    block_diag,
    dump_dense,
    l1_norm,
    linf_norm,
    load_dense,
    rank,
    solve,
)

NORM_KINDS = ("l1", "linf", "none")


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    """Where a claimed identity fails: the degree, a basis index and the offending value."""

    degree: int
    index: int
    value: object
    what: str = ""

    def __str__(self):
        return f"{self.what or 'failure'} at degree {self.degree}, basis index {self.index}: {self.value}"


@dataclass(frozen=True, eq=False)
class NormedComplex:
    field: FieldTag
    dims: tuple[int, ...]
    maps: tuple[ExactMatrix, ...]
    direction: str = "cochain"
    norm_kind: tuple[str, ...] = ()
    label: str = ""
    basis_labels: tuple | None = None

    def __post_init__(self):
        if self.direction not in ("chain", "cochain"):
            raise ComplexError(f"direction must be chain or cochain, not {self.direction!r}")
        if len(self.maps) != max(len(self.dims) - 1, 0):
            raise ComplexError(f"{len(self.dims)} spaces need {len(self.dims) - 1} maps, got {len(self.maps)}")
        if not self.norm_kind:
            object.__setattr__(self, "norm_kind", ("none",) * len(self.dims))
        if len(self.norm_kind) != len(self.dims) or any(k not in NORM_KINDS for k in self.norm_kind):
            raise ComplexError("norm_kind must give l1/linf/none for every degree")
        for i, m in enumerate(self.maps):
            if m.field != self.field:
                raise ComplexError(f"map {i} is over {m.field}, complex over {self.field}")
            want = self.map_shape(i)
            if m.shape != want:
                raise ComplexError(f"map {i} has shape {m.shape}, expected {want}")

    def map_shape(self, i: int) -> tuple[int, int]:
        if self.direction == "chain":
            return (self.dims[i], self.dims[i + 1])
        return (self.dims[i + 1], self.dims[i])

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def top_degree(self) -> int:
        """Last degree whose (co)homology is determined."""
        return max(self.length - 1, 0)

    def norm(self, m: ExactMatrix, degree: int):
        kind = self.norm_kind[degree]
        if kind == "l1":
            return l1_norm(m)
        if kind == "linf":
            return linf_norm(m)
        return None


def make_complex(field, dims, maps, direction="cochain", norm_kind=(), label="", basis_labels=None) -> NormedComplex:
    """Construct and verify; raises ComplexError with the witness if d.d != 0."""
    c = NormedComplex(field, tuple(dims), tuple(maps), direction, tuple(norm_kind), label, basis_labels)
    w = verify_complex(c)
    if w is not None:
        raise ComplexError(f"{label or 'complex'}: {w}")
    return c


def verify_complex(c: NormedComplex) -> Witness | None:
    """Check every consecutive composite is zero.  Degree is that of the middle space."""
    for i in range(len(c.maps) - 1):
        if c.direction == "chain":
            comp = c.maps[i] @ c.maps[i + 1]
        else:
            comp = c.maps[i + 1] @ c.maps[i]
        nz = comp.first_nonzero()
        if nz is not None:
            r, col, v = nz
            return Witness(i + 1, col, v, "composite of consecutive maps is nonzero")
    return None


# cohomology -----------------------------------------------------------


@dataclass(frozen=True)
class DegreeDims:
    degree: int
    z: int
    b: int

    @property
    def h(self) -> int:
        return self.z - self.b


@dataclass(frozen=True)
class CohomologyReport:
    label: str
    field: FieldTag
    max_degree: int
    degrees: tuple[DegreeDims, ...]
    tag: str = ""

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d.h for d in self.degrees)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "tag": self.tag,
            "field": self.field.name,
            "max_degree": self.max_degree,
            "degrees": [{"n": d.degree, "dim_Z": d.z, "dim_B": d.b, "dim_H": d.h} for d in self.degrees],
        }

    def __str__(self):
        return f"{self.label} [{self.tag}] over {self.field}: H = {self.dims}"


CERTIFY_FIELD = FieldTag(2_147_483_647)


def _integral(m: ExactMatrix) -> bool:
    return all(isinstance(v, int) for col in m.cols.values() for v in col.values())


def map_ranks(c: NormedComplex) -> list[int]:
    """Exact ranks of every map.

    Over Q, for integer matrices, the rank mod a large prime is a lower bound
    for the rank over Q, and d.d = 0 gives the upper bound
    dim(source) - rank(previous map).  When the two meet the modular rank is
    the rational one; otherwise the map is eliminated over Q.
    """
    if not c.field.is_rational:
        return [rank(m) for m in c.maps]
    fp = CERTIFY_FIELD
    out = []
    for i, m in enumerate(c.maps):
        if c.direction == "cochain":
            upper = c.dims[i] - (out[i - 1] if i else 0)
        else:  # maps[i] : E_{i+1} -> E_i; bounded by the space it leaves
            upper = None
        r = None
        if upper is not None and _integral(m):
            low = rank(m.map_field(fp))
            if low == min(upper, m.nrows):
                r = low
        out.append(rank(m) if r is None else r)
    return out


def cohomology_dims(c: NormedComplex, ranks: Sequence[int] | None = None, tag: str = "") -> CohomologyReport:
    """Per-degree dims of cycles, boundaries and their quotient.

    Uses rank-nullity: dim Z = dim space - rank(outgoing), dim B = rank(incoming).
    """
    if ranks is None:
        ranks = map_ranks(c)
    L = c.length
    out = []
    top = L if L == 0 else L - 1
    for n in range(top + 1):
        if c.direction == "cochain":
            z = c.dims[n] - (ranks[n] if n < L else 0)
            b = ranks[n - 1] if n >= 1 else 0
        else:
            z = c.dims[n] - (ranks[n - 1] if n >= 1 else 0)
            b = ranks[n] if n < L else 0
        if b > z:
            raise ComplexError(f"boundaries exceed cycles at degree {n}: not a complex")
        out.append(DegreeDims(n, z, b))
    return CohomologyReport(c.label, c.field, top, tuple(out), tag)


def sum_reports(reports: Sequence[CohomologyReport], label: str, tag: str) -> CohomologyReport:
    """Cohomology of a finite direct sum is the sum of the cohomologies."""
    top = min(r.max_degree for r in reports)
    degs = []
    for n in range(top + 1):
        degs.append(DegreeDims(n, sum(r.degrees[n].z for r in reports), sum(r.degrees[n].b for r in reports)))
    return CohomologyReport(label, reports[0].field, top, tuple(degs), tag)


# splittings ------------------------------------------------------------


class SplitError(ComplexError):
    def __init__(self, witness: Witness):
        super().__init__(str(witness))
        self.witness = witness


@dataclass(frozen=True, eq=False)
class SplitCertificate:
    complex: NormedComplex
    homotopies: tuple[ExactMatrix | None, ...]
    max_norm: Fraction | int | None  # None means norms were not checked
    from_degree: int = 0

    @property
    def norms_checked(self) -> bool:
        return self.max_norm is not None


def _homotopy_shape(c: NormedComplex, i: int):
    r, k = c.map_shape(i)
    return (k, r)


def certify_split(c: NormedComplex, homotopies: Sequence[ExactMatrix | None], check_norms: bool = False,
                  from_degree: int = 0) -> SplitCertificate:
    """Verify the contracting-homotopy identities exactly, degree by degree.

    Chain:   s_{j-1} d_{j-1} + d_j s_j = id on E_j   (d_0 s_0 = id at j = 0)
    Cochain: d^{n-1} s^n + s^{n+1} d^n = id on C^n

    checked for ``from_degree <= j <= L-1``.  With ``check_norms`` every
    homotopy used must have norm <= 1 in the declared norm of its source.
    Raises SplitError carrying the first failure.
    """
    L = c.length
    hs = list(homotopies)
    if len(hs) != L:
        raise ComplexError(f"need {L} homotopies, got {len(hs)}")
    if check_norms and not c.field.is_rational:
        raise ComplexError("norm certification needs field Q")
    for i, h in enumerate(hs):
        if h is not None and h.shape != _homotopy_shape(c, i):
            raise ComplexError(f"homotopy {i} has shape {h.shape}, expected {_homotopy_shape(c, i)}")
    used = set()
    for j in range(from_degree, L):
        total = ExactMatrix.zero(c.field, c.dims[j], c.dims[j])
        if j >= 1:
            h = hs[j - 1]
            if h is None:
                raise ComplexError(f"homotopy {j - 1} missing")
            total = total + (h @ c.maps[j - 1] if c.direction == "chain" else c.maps[j - 1] @ h)
            used.add(j - 1)
        h = hs[j]
        if h is None:
            raise ComplexError(f"homotopy {j} missing")
        total = total + (c.maps[j] @ h if c.direction == "chain" else h @ c.maps[j])
        used.add(j)
        diff = total - ExactMatrix.identity(c.field, c.dims[j])
        nz = diff.first_nonzero()
        if nz is not None:
            r, col, v = nz
            raise SplitError(Witness(j, col, v, "homotopy identity fails"))
    max_norm = None
    if check_norms:
        max_norm = 0
        for i in sorted(used):
            src = i if c.direction == "chain" else i + 1
            nv = c.norm(hs[i], src)
            if nv is None:
                continue
            if nv > 1:
                raise SplitError(Witness(src, i, nv, "homotopy norm exceeds 1"))
            max_norm = max(max_norm, nv)
    return SplitCertificate(c, tuple(hs), max_norm, from_degree)


# chain maps ------------------------------------------------------------


@dataclass(eq=False)
class ChainMap:
    source: NormedComplex
    target: NormedComplex
    components: tuple[ExactMatrix, ...]
    label: str = ""
    isometric: bool | None = None  # set by verify_chain_map(check_isometry=True)


def span_membership(rel: ExactMatrix):
    """Predicate ``v in column span of rel``.

    Relations of the form e_a - e_b (the usual case for tensor-over-H
    presentations) are handled by connected components: v lies in their span
    iff its coordinates sum to zero on every component.  Anything else falls
    back to exact elimination.
    """
    fld = rel.field
    p = fld.characteristic
    minus_one = fld.coerce(-1)
    diff = all(len(c) == 2 and sorted(c.values()) == sorted([1, minus_one]) for c in rel.cols.values())
    if not diff:
        ech = Echelon(fld)
        for v in rel.cols.values():
            ech.add(v)
        return ech.contains
    parent: dict[int, int] = {}

    def find(i):
        root = i
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(i, i) != root:
            parent[i], i = root, parent[i]
        return root

    for c in rel.cols.values():
        a, b = (find(i) for i in c)
        if a != b:
            parent[max(a, b)] = min(a, b)

    def member(v) -> bool:
        sums: dict[int, object] = {}
        for i, x in v.items():
            r = find(i)
            sums[r] = sums.get(r, 0) + x
        return all((x % p if p else x) == 0 for x in sums.values())

    return member


def verify_chain_map(f: ChainMap, inverse: ChainMap | None = None, check_isometry: bool = False,
                     source_relations: Sequence[ExactMatrix] | None = None) -> Witness | None:
    """Check commutation with differentials; optionally a two-sided inverse and isometry.

    ``source_relations`` handles a source presented as a quotient: per degree a
    matrix whose columns span the relations.  Then g.f only has to equal the
    identity modulo those relations, and f must kill them.
    """
    s, t = f.source, f.target
    if s.direction != t.direction or s.field != t.field:
        return Witness(0, 0, None, "source and target complexes are incompatible")
    comps = f.components
    for n, m in enumerate(comps):
        if m.shape != (t.dims[n], s.dims[n]):
            return Witness(n, 0, m.shape, "component has wrong shape")
    for i in range(min(len(comps) - 1, s.length, t.length)):
        if s.direction == "chain":
            lhs = comps[i] @ s.maps[i]
            rhs = t.maps[i] @ comps[i + 1]
            deg = i + 1
        else:
            lhs = comps[i + 1] @ s.maps[i]
            rhs = t.maps[i] @ comps[i]
            deg = i
        nz = (lhs - rhs).first_nonzero()
        if nz is not None:
            return Witness(deg, nz[1], nz[2], "chain map does not commute with the differential")
    if inverse is not None:
        for n, (a, b) in enumerate(zip(comps, inverse.components)):
            nz = (a @ b - ExactMatrix.identity(s.field, t.dims[n])).first_nonzero()
            if nz is not None:
                return Witness(n, nz[1], nz[2], "f.g is not the identity")
            ba = b @ a - ExactMatrix.identity(s.field, s.dims[n])
            if source_relations is None:
                nz = ba.first_nonzero()
                if nz is not None:
                    return Witness(n, nz[1], nz[2], "g.f is not the identity")
            else:
                rel = source_relations[n]
                nz = (a @ rel).first_nonzero()
                if nz is not None:
                    return Witness(n, nz[1], nz[2], "f does not kill the relations")
                member = span_membership(rel)
                for j, col in sorted(ba.cols.items()):
                    if not member(col):
                        return Witness(n, j, None, "g.f is not the identity modulo relations")
    if check_isometry:
        if not s.field.is_rational:
            return Witness(0, 0, s.field.name, "isometry needs field Q")
        pairs = [(comps, s)] + ([(inverse.components, t)] if inverse is not None else [])
        for cs, src in pairs:
            for n, m in enumerate(cs):
                if m.nrows == 0 or m.ncols == 0:
                    continue
                nv = src.norm(m, n)
                if nv != 1:
                    return Witness(n, 0, nv, "component norm is not exactly 1")
        f.isometric = inverse is not None
    return None


def compose_chain_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """g after f."""
    if f.target is not g.source:
        raise ComplexError("compose_chain_maps: f.target must be g.source")
    comps = tuple(b @ a for a, b in zip(f.components, g.components))
    return ChainMap(f.source, g.target, comps, f"{g.label}.{f.label}")


def identity_map(c: NormedComplex) -> ChainMap:
    return ChainMap(c, c, tuple(ExactMatrix.identity(c.field, d) for d in c.dims), "id")


def inverse_chain_map(f: ChainMap) -> ChainMap:
    """Degree-wise exact inverse of a chain map whose components are square and invertible."""
    comps = []
    for n, m in enumerate(f.components):
        if m.nrows != m.ncols:
            raise ComplexError(f"component {n} is not square")
        x = solve(m, ExactMatrix.identity(m.field, m.nrows))
        if x is None or rank(m) != m.nrows:
            raise ComplexError(f"component {n} is singular")
        comps.append(x)
    return ChainMap(f.target, f.source, tuple(comps), f"inv({f.label})")


# sums ------------------------------------------------------------------


@dataclass(frozen=True)
class UniformBoundReport:
    """Finite-index stand-in for sup_x ||d_n^x|| < oo and for contractive splittings."""

    mode: str
    max_map_norm: tuple  # per map index, max over parts (None off Q)
    max_homotopy_norm: tuple | None  # per map index, max over parts, if homotopies were given
    part_homotopy_norms: tuple | None = None  # per part, max over degrees

    @property
    def homotopies_contractive(self) -> bool | None:
        if self.max_homotopy_norm is None:
            return None
        return all(v is None or v <= 1 for v in self.max_homotopy_norm)


def sum_complexes(parts: Sequence[NormedComplex], mode: str = "l1",
                  homotopies: Sequence[Sequence[ExactMatrix]] | None = None,
                  check_norms: bool | None = None):
    """Block-diagonal l1- or linf-sum.

    Returns ``(complex, uniform_bound_report, certificate_or_None)``.  When
    homotopies are supplied for every part the block homotopy is certified on
    the sum (norms checked over Q unless ``check_norms`` is False); a failed
    certification yields None and the report says why.
    """
    if mode not in ("l1", "linf"):
        raise ComplexError("mode must be l1 or linf")
    if not parts:
        raise ComplexError("empty sum")
    f0 = parts[0]
    for p in parts:
        if p.field != f0.field or p.length != f0.length or p.direction != f0.direction:
            raise ComplexError("sum_complexes: parts differ in field, direction or degree range")
    dims = tuple(sum(p.dims[n] for p in parts) for n in range(len(f0.dims)))
    maps = tuple(block_diag([p.maps[i] for p in parts], f0.field) for i in range(f0.length))
    label = f"{mode}-sum(" + ", ".join(p.label for p in parts) + ")"
    out = NormedComplex(f0.field, dims, maps, f0.direction, (mode,) * len(dims), label)
    q = f0.field.is_rational
    norm = l1_norm if mode == "l1" else linf_norm
    max_map = tuple(max(norm(p.maps[i]) for p in parts) if q else None for i in range(f0.length))
    max_h = None
    part_h = None
    cert = None
    if homotopies is not None:
        if len(homotopies) != len(parts):
            raise ComplexError("one homotopy list per part")
        if q:
            max_h = tuple(
                max((norm(hs[i]) for hs in homotopies if hs[i] is not None), default=0) for i in range(f0.length)
            )
            part_h = tuple(max((norm(h) for h in hs if h is not None), default=0) for hs in homotopies)
        block = []
        for i in range(f0.length):
            if any(hs[i] is None for hs in homotopies):
                block.append(None)
            else:
                block.append(block_diag([hs[i] for hs in homotopies], f0.field))
        want_norms = q if check_norms is None else check_norms
        try:
            cert = certify_split(out, block, check_norms=want_norms)
        except SplitError:
            cert = None
    return out, UniformBoundReport(mode, max_map, max_h, part_h), cert


# SNIPER ----------------------------------------------------------------


@dataclass(frozen=True)
class SniperReport:
    n: int
    cokernel_dims: tuple[int, ...]
    sum_of_cokernels: int
    cokernel_of_sum: int
    max_map_norm: Fraction
    inverse_norm: Fraction
    part_splitting_norms: tuple
    monotone: bool

    def to_dict(self):
        return {
            "N": self.n,
            "sum_of_cokernels": self.sum_of_cokernels,
            "cokernel_of_sum": self.cokernel_of_sum,
            "max_map_norm": str(self.max_map_norm),
            "inverse_norm": str(self.inverse_norm),
            "uniformly_bounded_splitting": self.inverse_norm <= 1,
            "monotone_in_N": self.monotone,
        }


def sniper_demo(n: int) -> SniperReport:
    """Truncation F_N of the linf-sum of the maps f_k = (1/k) : Q -> Q, k <= N.

    Every f_k is onto and so is F_N, yet the only right inverse of F_N is
    diag(1, ..., N), whose norm N is unbounded in N: there is no uniformly
    bounded family of splittings, which is what keeps an infinite linf-sum
    from having zero cokernel.
    """
    if n < 1:
        raise ComplexError("N must be >= 1")
    q = FieldTag(0)
    parts, hs = [], []
    for k in range(1, n + 1):
        f = ExactMatrix.diagonal(q, [Fraction(1, k)])
        parts.append(NormedComplex(q, (1, 1), (f,), "chain", ("linf", "linf"), f"f{k}"))
        hs.append([ExactMatrix.diagonal(q, [k])])
    total, report, cert = sum_complexes(parts, "linf", hs)
    fsum = total.maps[0]
    coks = tuple(1 - rank(p.maps[0]) for p in parts)
    cok_sum = total.dims[0] - rank(fsum)
    right_inv = solve(fsum, ExactMatrix.identity(q, n))
    if right_inv is None:
        raise ComplexError("F_N should be onto")
    if rank(fsum) != n:
        raise ComplexError("F_N should be injective, making its right inverse unique")
    inv_norm = linf_norm(right_inv)
    norms = report.part_homotopy_norms
    running = [max(norms[: k + 1]) for k in range(n)]
    monotone = all(a <= b for a, b in zip(running, running[1:])) and running[-1] == inv_norm
    return SniperReport(n, coks, sum(coks), cok_sum, report.max_map_norm[0], inv_norm, norms, monotone)


# dump format -----------------------------------------------------------


def complex_to_json(c: NormedComplex) -> dict:
    return {
        "label": c.label,
        "field": c.field.name,
        "direction": c.direction,
        "degrees": list(range(len(c.dims))),
        "dims": list(c.dims),
        "norm_kind": list(c.norm_kind),
        "maps": [dump_dense(m) for m in c.maps],
    }


def complex_from_json(data: dict) -> NormedComplex:
    f = FieldTag.parse(data["field"])
    dims = data["dims"]
    maps = []
    for i, rows in enumerate(data["maps"]):
        if data["direction"] == "chain":
            r, k = dims[i], dims[i + 1]
        else:
            r, k = dims[i + 1], dims[i]
        maps.append(load_dense(f, rows, r, k))
    return NormedComplex(f, tuple(dims), tuple(maps), data["direction"], tuple(data["norm_kind"]), data.get("label", ""))


def dump_complex(c: NormedComplex, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(complex_to_json(c), fh)
