"""Exact coefficient fields and the rank / homology kernels.

Prime-field elements are ints in ``range(p)``; rational elements are
:class:`fractions.Fraction`.  Everything is exact, so elimination simply
takes the first nonzero entry of each column as pivot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import ConfigError, InvalidComplexError

DEFAULT_CHARACTERISTIC = 32003


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class FieldConfig:
    kind: str = "prime"
    p: int | None = DEFAULT_CHARACTERISTIC

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not is_prime(self.p):
                raise ConfigError(f"characteristic must be prime, got {self.p}")
        elif self.kind == "rational":
            object.__setattr__(self, "p", None)
        else:
            raise ConfigError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int = DEFAULT_CHARACTERISTIC) -> "FieldConfig":
        return cls("prime", p)

    @classmethod
    def rationals(cls) -> "FieldConfig":
        return cls("rational", None)

    @property
    def name(self) -> str:
        return "q" if self.kind == "rational" else f"gf{self.p}"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "rational" else self.p

    def coerce(self, x):
        """Map an int, a Fraction or an element of this field into the field."""
        if self.kind == "rational":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def reduce(self, x):
        return x if self.kind == "rational" else x % self.p

    def inv(self, x):
        if self.kind == "rational":
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def neg(self, x):
        return -x if self.kind == "rational" else (-x) % self.p


QQ = FieldConfig.rationals()
GF32003 = FieldConfig.prime()


@dataclass
class DenseMatrix:
    rows: int
    cols: int
    entries: list = field(default_factory=list)

    def __post_init__(self):
        if not self.entries:
            self.entries = [[0] * self.cols for _ in range(self.rows)]
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "DenseMatrix":
        return cls(rows, cols)

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.cols, self.rows,
                           [[self.entries[r][c] for r in range(self.rows)]
                            for c in range(self.cols)])

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]


def compose(A: DenseMatrix, B: DenseMatrix, f: FieldConfig) -> DenseMatrix:
    """Matrix product ``A @ B`` over ``f``."""
    if A.cols != B.rows:
        raise ValueError(f"cannot compose {A.rows}x{A.cols} with {B.rows}x{B.cols}")
    Bc = [[f.coerce(x) for x in row] for row in B.entries]
    out = []
    for row in A.entries:
        acc = [0] * B.cols
        for k, a in enumerate(row):
            a = f.coerce(a)
            if a:
                brow = Bc[k]
                for j in range(B.cols):
                    if brow[j]:
                        acc[j] += a * brow[j]
        out.append([f.reduce(x) for x in acc])
    return DenseMatrix(A.rows, B.cols, out)


def rank(A: DenseMatrix, f: FieldConfig) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    rows = []
    for row in A.entries:
        r = {c: f.coerce(x) for c, x in enumerate(row)}
        r = {c: x for c, x in r.items() if x}
        if r:
            rows.append(r)
    return _rank_sparse(rows, f)


def _rank_sparse(rows: list, f: FieldConfig) -> int:
    """Rank of a list of sparse rows ``{col: nonzero element}``; consumes the rows."""
    pivots: dict = {}  # column -> normalized pivot row
    prime = f.kind == "prime"
    p = f.p
    for row in rows:
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = f.inv(row[c])
                if prime:
                    pivots[c] = {k: v * inv % p for k, v in row.items()}
                else:
                    pivots[c] = {k: v * inv for k, v in row.items()}
                break
            a = row[c]
            for k, v in piv.items():
                x = row.get(k, 0) - a * v
                if prime:
                    x %= p
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
    return len(pivots)


def homology_dim(d_in: DenseMatrix, d_out: DenseMatrix, f: FieldConfig) -> int:
    """Dimension of ``ker(d_out) / im(d_in)`` at the middle space of ``-d_in-> V -d_out->``."""
    m = d_out.cols
    if d_in.rows != m:
        raise ValueError(f"middle dimensions disagree: {d_in.rows} vs {m}")
    if d_out.rows and d_in.cols and m:
        prod = compose(d_out, d_in, f)
        for r, row in enumerate(prod.entries):
            for c, x in enumerate(row):
                if x:
                    raise InvalidComplexError(f"composition has nonzero entry at ({r}, {c})")
    return m - rank(d_out, f) - rank(d_in, f)
