"""Exact scalar fields and sparse exact matrices.

Two kinds of field are supported: the rationals (entries are ``int`` or
``fractions.Fraction``) and prime fields F_p (entries are ints in
``range(p)``).  Nothing in this module ever rounds.

Matrices are stored column-major as ``{col: {row: value}}`` with no explicit
zeros.  Every complex in the package is built from 0/1/-1 incidence data, so
sparse storage keeps the biggest coboundaries (tens of thousands of rows) in
memory comfortably.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Sequence

Vector = dict  # sparse vector: {index: nonzero value}


class LinalgError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldTag:
    """``FieldTag(0)`` is Q, ``FieldTag(p)`` is F_p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise LinalgError(f"F_{self.characteristic}: characteristic must be prime")

    @classmethod
    def parse(cls, text: str) -> "FieldTag":
        t = text.strip().lower()
        if t in ("q", "qq", "rationals", "0"):
            return RATIONALS
        if t.startswith("f") or t.startswith("gf"):
            t = t.lstrip("gf_")
        try:
            return cls(int(t))
        except ValueError:
            raise LinalgError(f"unknown field {text!r}; use q or f<p>") from None

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "Q" if self.is_rational else f"F{self.characteristic}"

    def __str__(self) -> str:
        return self.name

    def coerce(self, x):
        """Bring an int, Fraction or ``"p/q"`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        p = self.characteristic
        if p == 0:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, int):
                return x
            raise LinalgError(f"cannot coerce {x!r} into Q exactly")
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise LinalgError(f"{x} has no image in F_{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if self.characteristic == 0:
            return self.coerce(Fraction(1) / x)
        return pow(x, -1, self.characteristic)

    def fmt(self, x) -> str:
        return str(x) if self.characteristic else str(Fraction(x))


RATIONALS = FieldTag(0)
F2 = FieldTag(2)
F3 = FieldTag(3)


class ExactMatrix:
    """Sparse exact matrix, column-major."""

    __slots__ = ("field", "nrows", "ncols", "cols")

    def __init__(self, field: FieldTag, nrows: int, ncols: int, cols: dict | None = None):
        if nrows < 0 or ncols < 0:
            raise LinalgError("negative shape")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else {}

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def from_entries(cls, field, nrows, ncols, entries: Iterable[tuple[int, int, object]]):
        """Build from ``(row, col, value)`` triples; repeated positions are summed."""
        cols: dict = {}
        p = field.characteristic
        for i, j, v in entries:
            c = cols.setdefault(j, {})
            c[i] = c.get(i, 0) + v
        out = {}
        for j, c in cols.items():
            if p:
                c = {i: v % p for i, v in c.items() if v % p}
            else:
                c = {i: field.coerce(v) for i, v in c.items() if v}
            if c:
                out[j] = c
        return cls(field, nrows, ncols, out)

    @classmethod
    def from_dense(cls, field, rows: Sequence[Sequence]):
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise LinalgError("ragged rows")
        return cls.from_entries(
            field, nrows, ncols,
            ((i, j, field.coerce(v)) for i, r in enumerate(rows) for j, v in enumerate(r)),
        )

    @classmethod
    def from_columns(cls, field, nrows, columns: Sequence[Vector]):
        return cls(field, nrows, len(columns), {j: dict(c) for j, c in enumerate(columns) if c})

    @classmethod
    def diagonal(cls, field, values: Sequence):
        vals = [field.coerce(v) for v in values]
        return cls(field, len(vals), len(vals), {i: {i: v} for i, v in enumerate(vals) if v})

    @classmethod
    def permutation(cls, field, images: Sequence[int], nrows: int | None = None):
        """Column j is the basis vector ``images[j]``."""
        n = len(images) if nrows is None else nrows
        return cls(field, n, len(images), {j: {i: 1} for j, i in enumerate(images)})

    # access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.cols.get(j, {}).get(i, 0)

    def column(self, j: int) -> Vector:
        return self.cols.get(j, {})

    def columns(self) -> list[Vector]:
        return [self.cols.get(j, {}) for j in range(self.ncols)]

    def rows(self) -> list[Vector]:
        out: list[Vector] = [{} for _ in range(self.nrows)]
        for j, c in self.cols.items():
            for i, v in c.items():
                out[i][j] = v
        return out

    def entries(self) -> Iterator[tuple[int, int, object]]:
        for j, c in self.cols.items():
            for i, v in c.items():
                yield i, j, v

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not self.cols

    def first_nonzero(self):
        """``(row, col, value)`` of some nonzero entry (smallest column), or None."""
        if not self.cols:
            return None
        j = min(self.cols)
        i = min(self.cols[j])
        return i, j, self.cols[j][i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.cols == other.cols

    def __repr__(self) -> str:
        return f"ExactMatrix({self.field}, {self.nrows}x{self.ncols}, nnz={self.nnz})"

    # arithmetic -------------------------------------------------------

    def _check_same(self, other):
        if self.field != other.field:
            raise LinalgError(f"field mismatch {self.field} vs {other.field}")

    def _lincomb(self, other, sign):
        self._check_same(other)
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} vs {other.shape}")
        p = self.field.characteristic
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, c in other.cols.items():
            acc = cols.setdefault(j, {})
            _axpy(acc, c, sign, p)
            if not acc:
                del cols[j]
        return ExactMatrix(self.field, self.nrows, self.ncols, cols)

    def __add__(self, other):
        return self._lincomb(other, 1)

    def __sub__(self, other):
        return self._lincomb(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, a):
        a = self.field.coerce(a)
        if not a:
            return ExactMatrix.zero(self.field, self.nrows, self.ncols)
        p = self.field.characteristic
        if p:
            cols = {j: {i: v * a % p for i, v in c.items()} for j, c in self.cols.items()}
        else:
            cols = {j: {i: _q(v * a) for i, v in c.items()} for j, c in self.cols.items()}
        return ExactMatrix(self.field, self.nrows, self.ncols, cols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        if self.ncols != other.nrows:
            raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.characteristic
        cols = {}
        mine = self.cols
        for j, c in other.cols.items():
            acc: dict = {}
            for k, b in c.items():
                a_col = mine.get(k)
                if a_col:
                    _axpy(acc, a_col, b, p)
            if acc:
                cols[j] = acc
        return ExactMatrix(self.field, self.nrows, other.ncols, cols)

    def apply(self, vec: Vector) -> Vector:
        acc: dict = {}
        p = self.field.characteristic
        for k, b in vec.items():
            a_col = self.cols.get(k)
            if a_col:
                _axpy(acc, a_col, b, p)
        return acc

    def transpose(self) -> "ExactMatrix":
        cols: dict = {}
        for j, c in self.cols.items():
            for i, v in c.items():
                cols.setdefault(i, {})[j] = v
        return ExactMatrix(self.field, self.ncols, self.nrows, cols)

    @property
    def T(self):
        return self.transpose()

    def select_columns(self, idx: Sequence[int]) -> "ExactMatrix":
        cols = {k: dict(self.cols[j]) for k, j in enumerate(idx) if j in self.cols}
        return ExactMatrix(self.field, self.nrows, len(idx), cols)

    def select_rows(self, idx: Sequence[int]) -> "ExactMatrix":
        pos = {i: k for k, i in enumerate(idx)}
        cols = {}
        for j, c in self.cols.items():
            nc = {pos[i]: v for i, v in c.items() if i in pos}
            if nc:
                cols[j] = nc
        return ExactMatrix(self.field, len(idx), self.ncols, cols)

    def map_field(self, field: FieldTag) -> "ExactMatrix":
        return ExactMatrix.from_entries(field, self.nrows, self.ncols, self.entries())


def _q(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _axpy(acc: dict, col: dict, a, p: int) -> None:
    """acc += a * col, in place, dropping zeros."""
    if p:
        for i, v in col.items():
            nv = (acc.get(i, 0) + a * v) % p
            if nv:
                acc[i] = nv
            else:
                acc.pop(i, None)
    else:
        for i, v in col.items():
            nv = acc.get(i, 0) + a * v
            if nv:
                acc[i] = _q(nv)
            else:
                acc.pop(i, None)


def hstack(mats: Sequence[ExactMatrix], field=None, nrows=None) -> ExactMatrix:
    if not mats:
        return ExactMatrix(field, nrows or 0, 0)
    field = mats[0].field
    n = mats[0].nrows
    cols, off = {}, 0
    for m in mats:
        if m.nrows != n or m.field != field:
            raise LinalgError("hstack: incompatible blocks")
        for j, c in m.cols.items():
            cols[j + off] = dict(c)
        off += m.ncols
    return ExactMatrix(field, n, off, cols)


def vstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    return hstack([m.transpose() for m in mats]).transpose()


def block_diag(mats: Sequence[ExactMatrix], field=None) -> ExactMatrix:
    if not mats:
        return ExactMatrix(field, 0, 0)
    field = mats[0].field
    cols, r0, c0 = {}, 0, 0
    for m in mats:
        if m.field != field:
            raise LinalgError("block_diag: field mismatch")
        for j, c in m.cols.items():
            cols[j + c0] = {i + r0: v for i, v in c.items()}
        r0 += m.nrows
        c0 += m.ncols
    return ExactMatrix(field, r0, c0, cols)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    a._check_same(b)
    p = a.field.characteristic
    cols = {}
    for ja, ca in a.cols.items():
        for jb, cb in b.cols.items():
            col = {}
            for ia, va in ca.items():
                base = ia * b.nrows
                for ib, vb in cb.items():
                    v = va * vb
                    col[base + ib] = v % p if p else _q(v)
            cols[ja * b.ncols + jb] = col
    return ExactMatrix(a.field, a.nrows * b.nrows, a.ncols * b.ncols, cols)


# elimination ----------------------------------------------------------


def _primitive(vec: dict) -> dict:
    """Clear denominators and divide out the content; leading (min index) entry > 0."""
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    if den != 1:
        vec = {k: int(v * den) for k, v in vec.items()}
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            break
    if vec[min(vec)] < 0:
        g = -g
    if g != 1:
        vec = {k: v // g for k, v in vec.items()}
    return vec


class Echelon:
    """Incremental row-echelon basis of a span of sparse vectors.

    Pivot = smallest index of a vector.  Over Q the stored vectors are
    primitive integer vectors and reduction is fraction-free; over F_p they
    are scaled so each pivot entry is 1.
    """

    def __init__(self, field: FieldTag):
        self.field = field
        self.pivots: dict[int, dict] = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec: Vector) -> dict:
        """Residual of ``vec`` modulo the current span (not inserted)."""
        p = self.field.characteristic
        piv = self.pivots
        if p:
            r = {k: v % p for k, v in vec.items() if v % p}
            while r:
                c = min(r)
                row = piv.get(c)
                if row is None:
                    return r
                f = r[c]
                for k, v in row.items():
                    nv = (r.get(k, 0) - f * v) % p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            return r
        r = {k: v for k, v in vec.items() if v}
        if r:
            r = _primitive(r)
        while r:
            c = min(r)
            row = piv.get(c)
            if row is None:
                return r
            a, b = row[c], r[c]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                r = {k: v * a for k, v in r.items()}
            for k, v in row.items():
                nv = r.get(k, 0) - b * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
            if r:
                r = _primitive(r)
        return r

    def add(self, vec: Vector) -> bool:
        """Insert ``vec``; return True iff it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        c = min(r)
        p = self.field.characteristic
        if p:
            inv = pow(r[c], -1, p)
            if inv != 1:
                r = {k: v * inv % p for k, v in r.items()}
        self.pivots[c] = r
        return True

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)


def _vectors_for_rank(m: ExactMatrix) -> list[dict]:
    # eliminate along the shorter side; rank(M) = rank(M^T)
    if m.ncols <= m.nrows:
        vecs = list(m.cols.values())
    else:
        vecs = m.rows()
    return sorted((v for v in vecs if v), key=len)


def rank(m: ExactMatrix) -> int:
    ech = Echelon(m.field)
    for v in _vectors_for_rank(m):
        ech.add(v)
    return len(ech)


def span_rank(field: FieldTag, *spanning: ExactMatrix) -> int:
    """Dimension of the span of all columns of the given matrices."""
    ech = Echelon(field)
    vecs = [c for m in spanning for c in m.cols.values()]
    for v in sorted(vecs, key=len):
        ech.add(v)
    return len(ech)


def image_basis(m: ExactMatrix) -> ExactMatrix:
    """A subset of the columns of ``m`` forming a basis of its column space."""
    ech = Echelon(m.field)
    keep = [j for j in range(m.ncols) if j in m.cols and ech.add(m.cols[j])]
    return m.select_columns(keep)


def rref_rows(m: ExactMatrix) -> tuple[dict[int, dict], ExactMatrix]:
    """Reduced row echelon form of ``m`` as ``{pivot_col: row}`` with pivot entry 1."""
    field = m.field
    ech = Echelon(field)
    for r in sorted((r for r in m.rows() if r), key=len):
        ech.add(r)
    p = field.characteristic
    rows = {}
    for c in sorted(ech.pivots, reverse=True):
        r = dict(ech.pivots[c])
        if not p and r[c] != 1:
            inv = Fraction(1, r[c])
            r = {k: _q(v * inv) for k, v in r.items()}
        # back-substitute already-reduced later pivots
        for k in sorted(k for k in r if k != c and k in rows):
            f = r.get(k)
            if f:
                _axpy(r, rows[k], -f, p)
        rows[c] = r
    return rows, m


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns form a basis of ``{x : m x = 0}``."""
    rows, _ = rref_rows(m)
    p = m.field.characteristic
    free = [j for j in range(m.ncols) if j not in rows]
    by_free: dict[int, dict] = {f: {f: 1} for f in free}
    for c, r in rows.items():
        for k, v in r.items():
            if k != c:
                by_free[k][c] = (-v) % p if p else _q(-v)
    return ExactMatrix(m.field, m.ncols, len(free), {j: by_free[f] for j, f in enumerate(free)})


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """Some X with ``a @ X == b``, or None if inconsistent."""
    if a.nrows != b.nrows:
        raise LinalgError("solve: row mismatch")
    aug = hstack([a, b])
    rows, _ = rref_rows(aug)
    n = a.ncols
    p = a.field.characteristic
    cols: dict = {}
    for c, r in rows.items():
        if c >= n:
            return None
        for k, v in r.items():
            if k >= n:
                cols.setdefault(k - n, {})[c] = v % p if p else v
    return ExactMatrix(a.field, n, b.ncols, cols)


@dataclass
class QuotientWitness:
    """A vector of the denominator span that is not in the numerator span."""

    index: int
    vector: dict


class QuotientError(LinalgError):
    def __init__(self, witness: QuotientWitness):
        super().__init__(f"denominator column {witness.index} is not in the numerator span")
        self.witness = witness


def quotient_dim(num: ExactMatrix, den: ExactMatrix) -> int:
    """dim span(num) - dim span(den), after checking span(den) is inside span(num)."""
    if num.field != den.field:
        raise LinalgError("field mismatch")
    ech = Echelon(num.field)
    for v in sorted((v for v in num.cols.values()), key=len):
        ech.add(v)
    dnum = len(ech)
    for j in range(den.ncols):
        c = den.cols.get(j)
        if c and not ech.contains(c):
            raise QuotientError(QuotientWitness(j, dict(c)))
    return dnum - rank(den)


def l1_norm(m: ExactMatrix):
    """Operator norm l1 -> l1: the largest absolute column sum."""
    _require_rational(m)
    return max((sum(abs(v) for v in c.values()) for c in m.cols.values()), default=0)


def linf_norm(m: ExactMatrix):
    """Operator norm linf -> linf: the largest absolute row sum."""
    _require_rational(m)
    sums: dict[int, object] = {}
    for c in m.cols.values():
        for i, v in c.items():
            sums[i] = sums.get(i, 0) + abs(v)
    return max(sums.values(), default=0)


def _require_rational(m):
    if not m.field.is_rational:
        raise LinalgError(f"norms are only defined over Q, not {m.field}")


def to_csv(m: ExactMatrix) -> str:
    """Dense CSV dump, entries as ``p/q`` strings."""
    f = m.field
    return "\n".join(",".join(f.fmt(v) for v in row) for row in m.to_dense()) + "\n"


def dump_dense(m: ExactMatrix) -> list[list[str]]:
    f = m.field
    return [[f.fmt(v) for v in row] for row in m.to_dense()]


def load_dense(field: FieldTag, rows: list[list[str]], nrows: int, ncols: int) -> ExactMatrix:
    if nrows == 0 or ncols == 0:
        return ExactMatrix(field, nrows, ncols)
    return ExactMatrix.from_dense(field, [[field.coerce(v) for v in r] for r in rows])
