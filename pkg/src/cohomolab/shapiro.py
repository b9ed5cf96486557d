"""Disintegration of H^n(k[G], k(S)') over stabilizer subgroups, built concretely.

The pipeline, per orbit representative x with stabilizer H = H_x:

1. ``bar_resolution``: the augmented one-sided bar resolution
   0 <- k <- k[H] <- k[H]^(x)2 <- ... with its insert-the-identity
   contracting homotopy.
2. ``induce``: k[G] (x)_H (bar resolution), in the coordinate model
   k(G/H) (x) (bar resolution) obtained from a transversal, with the maps
   T and R between the tensor-over-H presentation and the coordinates.
3. ``assemble_resolution``: the l1-sum over orbits, with the bottom row
   identified with k(S) through gH <-> g.x.  This is a free k[G]-resolution
   of k(S) with a contractive splitting.
4. ``dualize_resolution``: Hom_{k[G]}(P_*, k) as G-fixed functionals, and an
   explicit isometric chain isomorphism onto the sum of C*(k[H_x], k).

``disintegrate`` is the fast path (cohomology of the sum of C*(k[H_x], k)
directly); ``brute_force_oracle`` computes H^n(k[G], k(S)') from the full
Hochschild complex.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .complexes import (
    ChainMap,
    CohomologyReport,
    ComplexError,
    NormedComplex,
    SplitCertificate,
    Witness,
    certify_split,
    cohomology_dims,
    inverse_chain_map,
    span_membership,
    sum_complexes,
    sum_reports,
    verify_chain_map,
)
from .groups import GAction, Group, OrbitDecomposition, Subgroup, Transversal, check_transversal, orbit_decompose, transversal
from .hochschild import (
    DEFAULT_MEMORY_CAP,
    MemoryCapError,
    augmentation_bimodule,
    function_dual_of_action,
    hochschild_complex,
)
from .linalg import ExactMatrix, FieldTag, kron, l1_norm


class PipelineError(ComplexError):
    pass


def _as_group(h) -> Group:
    return h.as_group if isinstance(h, Subgroup) else h


def _check_cap(dim: int, cap: int, what: str):
    if dim > cap:
        raise MemoryCapError(f"{what} has dimension {dim} > memory cap {cap}; lower --max-degree")


# 1. bar resolution -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BarResolution:
    """Augmented bar resolution.  Space E_0 = k, E_{j} = k[H]^(x)j for j >= 1.

    Bar degree n (the module P_n = k[H]^(x)(n+1)) is space n+1; its basis
    words (h_0, ..., h_n) are numbered lexicographically, h_0 most significant.
    """

    group: Group
    complex: NormedComplex
    homotopy: SplitCertificate
    max_degree: int

    @property
    def order(self) -> int:
        return self.group.order

    def action(self, h: int, space: int) -> ExactMatrix:
        """Left action of h on space ``space``: multiply the first tensor factor."""
        return _bar_action(self.group, h, space, self.complex.field)


def _bar_action(grp: Group, h: int, space: int, fld: FieldTag) -> ExactMatrix:
    if space == 0:
        return ExactMatrix.identity(fld, 1)
    m = grp.order
    rest = m ** (space - 1)
    images = [grp.mul[h][w // rest] * rest + w % rest for w in range(m ** space)]
    return ExactMatrix.permutation(fld, images)


def _bar_differential(grp: Group, n: int, fld: FieldTag) -> ExactMatrix:
    """d_n : k[H]^(x)(n+2) -> k[H]^(x)(n+1)."""
    m = grp.order
    mul = grp.mul
    cols = {}
    p = fld.characteristic
    digits = [0] * (n + 2)
    for w in range(m ** (n + 2)):
        x = w
        for k in range(n + 1, -1, -1):
            x, digits[k] = divmod(x, m)
        col: dict[int, int] = {}
        for j in range(n + 1):
            idx = 0
            for k in range(j):
                idx = idx * m + digits[k]
            idx = idx * m + mul[digits[j]][digits[j + 1]]
            for k in range(j + 2, n + 2):
                idx = idx * m + digits[k]
            col[idx] = col.get(idx, 0) + (-1 if j % 2 else 1)
        drop = w // m
        col[drop] = col.get(drop, 0) + (-1 if (n + 1) % 2 else 1)
        col = {i: (v % p if p else v) for i, v in col.items() if (v % p if p else v)}
        if col:
            cols[w] = col
    return ExactMatrix(fld, m ** (n + 1), m ** (n + 2), cols)


def bar_resolution(h, fld: FieldTag, max_degree: int, memory_cap: int = DEFAULT_MEMORY_CAP) -> BarResolution:
    """Bar degrees 0..max_degree, i.e. spaces E_0..E_{max_degree+1}."""
    grp = _as_group(h)
    if max_degree < 0:
        raise ComplexError("max_degree must be >= 0")
    m = grp.order
    _check_cap(m ** (max_degree + 1), memory_cap, f"bar resolution of {grp.name} in degree {max_degree}")
    dims = (1,) + tuple(m ** (j + 1) for j in range(max_degree + 1))
    eps = ExactMatrix(fld, 1, m, {x: {0: 1} for x in range(m)})
    maps = (eps,) + tuple(_bar_differential(grp, n, fld) for n in range(max_degree))
    c = NormedComplex(fld, dims, maps, "chain", ("l1",) * len(dims), f"Bar({grp.name or 'H'})")
    e = grp.identity
    # s: w -> e (x) w ; s_0: 1 -> e_id
    hs = []
    for j in range(len(maps)):
        size = m ** j
        hs.append(ExactMatrix(fld, dims[j + 1], dims[j], {w: {e * size + w: 1} for w in range(size)}))
    cert = certify_split(c, hs, check_norms=fld.is_rational)
    return BarResolution(grp, c, cert, max_degree)


def bar_differential_norms(b: BarResolution) -> list:
    """l1 norms of d_0, d_1, ... (the augmentation excluded)."""
    return [l1_norm(m) for m in b.complex.maps[1:]]


# 2. induction ------------------------------------------------------------


@dataclass(eq=False)
class InducedComplex:
    """k[G] (x)_H B in two models.

    ``presentation``: F_j = k[G] (x) E_j (basis (g, w), g major) with the
    relations e_{gh} (x) v - e_g (x) h.v spanned by ``relations[j]``.
    ``complex``: coordinates k(G/H) (x) E_j (basis (coset, w), coset major).
    ``T`` maps presentation -> coordinates, ``R`` coordinates -> presentation.
    """

    big_group: Group
    subgroup: Subgroup
    transversal: Transversal
    bar: BarResolution
    complex: NormedComplex
    certificate: SplitCertificate
    presentation: NormedComplex
    relations: tuple[ExactMatrix, ...]
    T: ChainMap
    R: ChainMap

    def action(self, g: int, space: int) -> ExactMatrix:
        """Left G-action on the coordinate model: g.(J, w) = (gJ, eta(g tau(J)).w)."""
        G = self.big_group
        t = self.transversal
        H = self.subgroup
        dim = self.bar.complex.dims[space]
        hg = self.bar.group
        images = []
        for J in range(t.index):
            y = G.mul[g][t.tau[J]]
            J2 = t.coset_of[y]
            hl = H.local(t.eta[y])
            act = _bar_perm(hg, hl, space)
            images.extend(J2 * dim + act[w] for w in range(dim))
        return ExactMatrix.permutation(self.complex.field, images)

    def presentation_action(self, g: int, space: int) -> ExactMatrix:
        G = self.big_group
        dim = self.bar.complex.dims[space]
        images = [G.mul[g][x] * dim + w for x in G.elements() for w in range(dim)]
        return ExactMatrix.permutation(self.complex.field, images)


def _bar_perm(grp: Group, h: int, space: int) -> list[int]:
    if space == 0:
        return [0]
    m = grp.order
    rest = m ** (space - 1)
    return [grp.mul[h][w // rest] * rest + w % rest for w in range(m ** space)]


def induce(G: Group, H: Subgroup, B: BarResolution, t: Transversal | None = None,
           rng: random.Random | None = None) -> InducedComplex:
    if H.parent is not G:
        raise PipelineError("subgroup is not in G")
    if B.group.order != H.order:
        raise PipelineError("bar resolution was built over a different group")
    if t is None:
        t = transversal(G, H, rng)
    fld = B.complex.field
    c = t.index
    Ic = ExactMatrix.identity(fld, c)
    bc = B.complex
    coords = NormedComplex(fld, tuple(c * d for d in bc.dims), tuple(kron(Ic, m) for m in bc.maps), "chain",
                           bc.norm_kind, f"k({G.name}/{H.order}) (x) {bc.label}")
    hs = [kron(Ic, s) for s in B.homotopy.homotopies]
    cert = certify_split(coords, hs, check_norms=fld.is_rational)

    n = G.order
    In = ExactMatrix.identity(fld, n)
    pres = NormedComplex(fld, tuple(n * d for d in bc.dims), tuple(kron(In, m) for m in bc.maps), "chain",
                         bc.norm_kind, f"k[{G.name}] (x) {bc.label}")
    hg = B.group
    gens = H.as_group.generators()
    rels, Ts, Rs = [], [], []
    for j, dim in enumerate(bc.dims):
        # relations e_{gh} (x) v - e_g (x) h.v, h over generators of H
        rcols = []
        for hl in gens:
            hp = H.elements[hl]
            act = _bar_perm(hg, hl, j)
            for x in G.elements():
                xh = G.mul[x][hp]
                for w in range(dim):
                    a, b = xh * dim + w, x * dim + act[w]
                    if a != b:
                        rcols.append({a: 1, b: fld.coerce(-1)})
        rels.append(ExactMatrix.from_columns(fld, n * dim, rcols))
        timg = []
        for x in G.elements():
            J = t.coset_of[x]
            act = _bar_perm(hg, H.local(t.eta[x]), j)
            timg.extend(J * dim + act[w] for w in range(dim))
        Ts.append(ExactMatrix.permutation(fld, timg, c * dim))
        Rs.append(ExactMatrix.permutation(fld, [t.tau[J] * dim + w for J in range(c) for w in range(dim)], n * dim))
    T = ChainMap(pres, coords, tuple(Ts), "T")
    R = ChainMap(coords, pres, tuple(Rs), "R")
    return InducedComplex(G, H, t, B, coords, cert, pres, tuple(rels), T, R)


def verify_induction(ic: InducedComplex) -> Witness | None:
    """T and R are mutually inverse chain maps (R.T = id modulo relations), both of l1 norm 1,
    and T is G-equivariant."""
    bad = check_transversal(ic.big_group, ic.transversal)
    if bad is not None:
        return Witness(0, 0, bad, "transversal laws fail")
    w = verify_chain_map(ic.R)
    if w is not None:
        return w
    w = verify_chain_map(ic.T, inverse=ic.R, source_relations=ic.relations)
    if w is not None:
        return w
    # relations are stable under the differential
    for i, d in enumerate(ic.presentation.maps):
        member = span_membership(ic.relations[i])
        img = d @ ic.relations[i + 1]
        for j, col in sorted(img.cols.items()):
            if not member(col):
                return Witness(i, j, None, "differential does not preserve the relations")
    if ic.complex.field.is_rational:
        for n, (a, b) in enumerate(zip(ic.T.components, ic.R.components)):
            if a.ncols and (l1_norm(a) != 1 or l1_norm(b) != 1):
                return Witness(n, 0, (l1_norm(a), l1_norm(b)), "T or R is not of norm 1")
        ic.T.isometric = ic.R.isometric = True
    for g in ic.big_group.generators():
        for j in range(len(ic.complex.dims)):
            lhs = ic.T.components[j] @ ic.presentation_action(g, j)
            rhs = ic.action(g, j) @ ic.T.components[j]
            if lhs != rhs:
                return Witness(j, g, None, "T is not G-equivariant")
    return None


# 3. assembled resolution ---------------------------------------------------


@dataclass(eq=False)
class AssembledResolution:
    """0 <- k(S) <- P_0 <- P_1 <- ...  as a chain complex with E_0 = k(S), E_{n+1} = P_n."""

    action: GAction
    decomposition: OrbitDecomposition
    pieces: tuple[InducedComplex, ...]
    complex: NormedComplex
    certificate: SplitCertificate
    identification: ExactMatrix  # sum_x k(G/H_x) -> k(S)
    max_degree: int

    def module_action(self, g: int, space: int) -> ExactMatrix:
        from .linalg import block_diag

        if space == 0:
            a = self.action
            return ExactMatrix.permutation(self.complex.field, list(a.act[g]))
        return block_diag([p.action(g, space) for p in self.pieces])

    def free_rank(self, n: int) -> list[int]:
        """Per orbit, the rank |H_x|^n of P_n over k[G]."""
        return [p.subgroup.order ** n for p in self.pieces]


def assemble_resolution(a: GAction, fld: FieldTag, max_degree: int, rng: random.Random | None = None,
                        memory_cap: int = DEFAULT_MEMORY_CAP) -> AssembledResolution:
    """P_0 .. P_{max_degree+1}, so that the dual complex determines degrees <= max_degree."""
    G = a.group
    dec = orbit_decompose(a)
    top = G.order * sum(h.order ** (max_degree + 1) for h in dec.stabilizers)
    _check_cap(top, memory_cap, f"P_{max_degree + 1}")
    pieces = []
    for x, H in zip(dec.representatives, dec.stabilizers):
        B = bar_resolution(H, fld, max_degree + 1, memory_cap)
        pieces.append(induce(G, H, B, rng=rng))
    summed, report, cert = sum_complexes([p.complex for p in pieces], "l1",
                                         [p.certificate.homotopies for p in pieces])
    if cert is None:
        raise PipelineError("l1-sum of the induced complexes failed to certify")
    # bottom: (x, J) -> tau(J).x
    images = []
    for x, p in zip(dec.representatives, pieces):
        images.extend(a.act[p.transversal.tau[J]][x] for J in range(p.transversal.index))
    if sorted(images) != list(range(a.set_size)):
        raise PipelineError("cosets do not match orbit points")
    pi = ExactMatrix.permutation(fld, images)
    maps = (pi @ summed.maps[0],) + summed.maps[1:]
    c = NormedComplex(fld, summed.dims, maps, "chain", summed.norm_kind, f"P*({a.label})")
    hs = (cert.homotopies[0] @ pi.transpose(),) + cert.homotopies[1:]
    final = certify_split(c, hs, check_norms=fld.is_rational)
    return AssembledResolution(a, dec, tuple(pieces), c, final, pi, max_degree)


def verify_module_maps(P: AssembledResolution) -> Witness | None:
    """Each differential (and the augmentation onto k(S)) is a k[G]-module map."""
    G = P.action.group
    for g in G.generators():
        for i, d in enumerate(P.complex.maps):
            if P.module_action(g, i) @ d != d @ P.module_action(g, i + 1):
                return Witness(i, g, None, "differential is not G-equivariant")
    return None


def freeness_witness(P: AssembledResolution, n: int) -> ExactMatrix:
    """Isomorphism P_n -> k[G] (x) (sum_x k[H_x]^(x)n), (x, J, h_0, w) -> (tau(J) h_0, (x, w)).

    Target basis: (g, x, w) with g major.
    """
    G = P.action.group
    offs, total = [], 0
    for p in P.pieces:
        offs.append(total)
        total += p.subgroup.order ** n
    images = []
    for off, p in zip(offs, P.pieces):
        H, t = p.subgroup, p.transversal
        m = H.order
        rest = m ** n
        for J in range(t.index):
            for w in range(m ** (n + 1)):
                h0, tail = divmod(w, rest)
                g = G.mul[t.tau[J]][H.elements[h0]]
                images.append(g * total + off + tail)
    return ExactMatrix.permutation(P.complex.field, images)


def verify_freeness(P: AssembledResolution, n: int) -> Witness | None:
    """The witness is bijective and intertwines the action with left translation on k[G]."""
    phi = freeness_witness(P, n)
    if sorted(next(iter(c)) for c in phi.cols.values()) != list(range(phi.nrows)) or phi.nrows != phi.ncols:
        return Witness(n, 0, None, "freeness map is not a bijection of bases")
    G = P.action.group
    fld = P.complex.field
    V = sum(p.subgroup.order ** n for p in P.pieces)
    for g in G.elements():
        free = kron(ExactMatrix.permutation(fld, list(G.mul[g])), ExactMatrix.identity(fld, V))
        if phi @ P.module_action(g, n + 1) != free @ phi:
            return Witness(n, g, None, "freeness map is not G-equivariant")
    return None


# 4. dualization ------------------------------------------------------------


@dataclass(eq=False)
class DualizedResolution:
    resolution: AssembledResolution
    hom_complex: NormedComplex  # Hom_{k[G]}(P_*, k) in fixed-functional coordinates
    bases: tuple[ExactMatrix, ...]  # columns: basis of G-fixed functionals on P_n
    target: NormedComplex  # linf-sum over x of C*(k[H_x], k)
    theta: ChainMap
    theta_inverse: ChainMap


def _fixed_functionals(P: AssembledResolution, space: int) -> ExactMatrix:
    """Basis of {f in P_n^* : f(g.p) = f(p) for all g}.

    The action permutes the basis, so the fixed functionals are the orbit
    indicators.  The result is checked against (g^T - 1) f = 0 per generator.
    """
    fld = P.complex.field
    dim = P.complex.dims[space]
    gens = P.action.group.generators()
    parent = list(range(dim))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    acts = [P.module_action(g, space) for g in gens]
    for a in acts:
        for j, col in a.cols.items():
            (i, v), = col.items()
            if v != 1:
                raise PipelineError("module action is not a permutation of the basis")
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    orbits: dict[int, dict[int, int]] = {}
    for i in range(dim):
        orbits.setdefault(find(i), {})[i] = 1
    basis = ExactMatrix.from_columns(fld, dim, [orbits[r] for r in sorted(orbits)])
    for a in acts:
        if not (a.transpose() @ basis - basis).is_zero():
            raise PipelineError("orbit indicators are not fixed")
    return basis


def _indicator_support(b: ExactMatrix) -> list[int] | None:
    """If the columns are 0/1 vectors with disjoint supports, one support point per column."""
    seen = set()
    reps = []
    for j in range(b.ncols):
        col = b.column(j)
        if not col or any(v != 1 for v in col.values()) or seen & col.keys():
            return None
        seen |= col.keys()
        reps.append(min(col))
    return reps


def dualize_resolution(P: AssembledResolution) -> DualizedResolution:
    fld = P.complex.field
    G = P.action.group
    nsp = len(P.complex.dims)
    bases, reps = [], []
    for space in range(1, nsp):
        b = _fixed_functionals(P, space)
        r = _indicator_support(b)
        if r is None:
            raise PipelineError(f"fixed functionals on P_{space - 1} are not an indicator basis")
        bases.append(b)
        reps.append(r)
    maps = []
    for n in range(nsp - 2):
        d = P.complex.maps[n + 1]  # P_{n+1} -> P_n
        pulled = d.transpose() @ bases[n]
        coeff = pulled.select_rows(reps[n + 1])
        if bases[n + 1] @ coeff != pulled:
            raise PipelineError(f"pullback along d_{n} leaves the fixed functionals")
        maps.append(coeff)
    dims = tuple(b.ncols for b in bases)
    hom = NormedComplex(fld, dims, tuple(maps), "cochain", ("linf",) * len(dims), f"Hom_G(P*, k) [{P.action.label}]")

    parts = []
    for p in P.pieces:
        Hg = p.subgroup.as_group
        parts.append(hochschild_complex(Hg, augmentation_bimodule(Hg, fld), P.max_degree))
    target, _, _ = sum_complexes(parts, "linf")

    # theta_n(F)_x(h_1..h_n) = F(x, coset H_x, (eta(1), h_1, .., h_n))
    comps = []
    for n in range(nsp - 1):
        sel = []
        off = 0
        for p in P.pieces:
            H, t = p.subgroup, p.transversal
            m = H.order
            dim = m ** (n + 1)
            J0 = t.coset_of[G.identity]
            h0 = H.local(t.eta[G.identity])
            sel.extend(off + J0 * dim + h0 * m ** n + w for w in range(m ** n))
            off += t.index * dim
        comps.append(bases[n].select_rows(sel))
    theta = ChainMap(hom, target, tuple(comps), "theta")
    theta_inv = inverse_chain_map(theta)
    return DualizedResolution(P, hom, tuple(bases), target, theta, theta_inv)


def verify_condition_star(D: DualizedResolution) -> Witness | None:
    """theta is a chain isomorphism, isometric for the sup norms when the field is Q."""
    return verify_chain_map(D.theta, inverse=D.theta_inverse, check_isometry=D.hom_complex.field.is_rational)


# 5. the two routes -------------------------------------------------------


def disintegrate(a: GAction, fld: FieldTag, max_degree: int = 3, memory_cap: int = DEFAULT_MEMORY_CAP) -> CohomologyReport:
    """Fast path: cohomology of the sum over orbit representatives of C*(k[H_x], k)."""
    dec = orbit_decompose(a)
    reports = []
    for H in dec.stabilizers:
        Hg = H.as_group
        c = hochschild_complex(Hg, augmentation_bimodule(Hg, fld), max_degree, memory_cap)
        reports.append(cohomology_dims(c))
    return sum_reports(reports, f"sum_x C*(k[H_x], k) [{a.label}]", "fast path")


def fast_path_complex(a: GAction, fld: FieldTag, max_degree: int = 3, memory_cap: int = DEFAULT_MEMORY_CAP) -> NormedComplex:
    dec = orbit_decompose(a)
    parts = []
    for H in dec.stabilizers:
        Hg = H.as_group
        parts.append(hochschild_complex(Hg, augmentation_bimodule(Hg, fld), max_degree, memory_cap))
    return sum_complexes(parts, "linf")[0]


def brute_force_oracle(a: GAction, fld: FieldTag, max_degree: int = 3, memory_cap: int = DEFAULT_MEMORY_CAP) -> CohomologyReport:
    """H^n(k[G], k(S)') straight from the Hochschild complex."""
    M = function_dual_of_action(a, fld)
    c = hochschild_complex(a.group, M, max_degree, memory_cap)
    r = cohomology_dims(c, tag="oracle")
    return CohomologyReport(f"H*(k[{a.group.name}], k(S)') [{a.label}]", fld, r.max_degree, r.degrees, "oracle")


@dataclass
class PipelineResult:
    resolution: AssembledResolution
    dual: DualizedResolution
    report: CohomologyReport
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def resolution_pipeline(a: GAction, fld: FieldTag, max_degree: int = 3, rng: random.Random | None = None,
                        memory_cap: int = DEFAULT_MEMORY_CAP) -> PipelineResult:
    """Build P_*, check every link, and compute H^n of Hom_{k[G]}(P_*, k)."""
    P = assemble_resolution(a, fld, max_degree, rng, memory_cap)
    D = dualize_resolution(P)
    checks, wits = {}, {}

    def record(name, w):
        checks[name] = w is None
        if w is not None:
            wits[name] = str(w)

    record("induction_T_R", next((w for w in (verify_induction(p) for p in P.pieces) if w is not None), None))
    record("module_maps", verify_module_maps(P))
    record("free", next((w for w in (verify_freeness(P, n) for n in range(len(P.complex.dims) - 1)) if w is not None), None))
    record("condition_star", verify_condition_star(D))
    checks["one_split"] = P.certificate.max_norm is None or P.certificate.max_norm <= 1
    r = cohomology_dims(D.hom_complex)
    report = CohomologyReport(f"Hom_G(P*, k) [{a.label}]", fld, r.max_degree, r.degrees, "resolution")
    return PipelineResult(P, D, report, checks, wits)


@dataclass
class DisintegrationResult:
    oracle: CohomologyReport
    fast: CohomologyReport
    pipeline: PipelineResult | None
    timings: dict[str, float]

    @property
    def equal(self) -> bool:
        ok = self.oracle.dims == self.fast.dims
        if self.pipeline is not None:
            ok = ok and self.pipeline.report.dims == self.fast.dims and self.pipeline.ok
        return ok


def compare_routes(a: GAction, fld: FieldTag, max_degree: int = 3, rng: random.Random | None = None,
                   memory_cap: int = DEFAULT_MEMORY_CAP, with_pipeline: bool = True) -> DisintegrationResult:
    timings = {}
    t0 = time.perf_counter()
    fast = disintegrate(a, fld, max_degree, memory_cap)
    timings["fast_path"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    oracle = brute_force_oracle(a, fld, max_degree, memory_cap)
    timings["oracle"] = time.perf_counter() - t0
    pipe = None
    if with_pipeline:
        t0 = time.perf_counter()
        pipe = resolution_pipeline(a, fld, max_degree, rng, memory_cap)
        timings["resolution"] = time.perf_counter() - t0
    return DisintegrationResult(oracle, fast, pipe, timings)
