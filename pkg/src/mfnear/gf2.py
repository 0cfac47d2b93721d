"""GF(2) linear algebra on bit-packed vectors.

Vectors x = (x_1, ..., x_n) are stored as plain ints with x_1 in the least
significant bit, so int(x) = sum x_i * 2^(i-1).  Matrices are tuples of row
ints sharing a common width.  Subspaces carry a reduced-row-echelon basis,
which makes every subspace representation canonical and hashable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

MAX_WIDTH = 16


def popcount(x: int) -> int:
    return x.bit_count()


def parity(x: int) -> int:
    return x.bit_count() & 1


def dot(x: int, y: int) -> int:
    """Inner product <x, y> over GF(2)."""
    return (x & y).bit_count() & 1


def _check_width(width: int) -> None:
    if not 0 < width <= MAX_WIDTH:
        raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {width}")


@dataclass(frozen=True)
class BitVector:
    """Element of Z2^n packed into an int, x_1 = least significant bit."""

    bits: int
    width: int

    def __post_init__(self) -> None:
        _check_width(self.width)
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"bits 0x{self.bits:x} out of range for width {self.width}")

    @classmethod
    def from_coords(cls, coords: Iterable[int]) -> "BitVector":
        coords = list(coords)
        bits = 0
        for i, c in enumerate(coords):
            if c & 1:
                bits |= 1 << i
        return cls(bits, len(coords))

    def coord(self, i: int) -> int:
        """Coordinate x_i, 1-based."""
        if not 1 <= i <= self.width:
            raise IndexError(i)
        return (self.bits >> (i - 1)) & 1

    def to_tuple(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.width))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.width != other.width:
            raise ValueError("width mismatch")
        return BitVector(self.bits ^ other.bits, self.width)

    def __int__(self) -> int:
        return self.bits

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_tuple())


@dataclass(frozen=True)
class Gf2Matrix:
    """Matrix over GF(2); rows are ints of a common width."""

    rows: tuple[int, ...]
    width: int

    def __post_init__(self) -> None:
        _check_width(self.width)
        for r in self.rows:
            if not 0 <= r < (1 << self.width):
                raise ValueError("row out of range for width")

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def from_vectors(cls, vecs: Iterable[BitVector]) -> "Gf2Matrix":
        vecs = list(vecs)
        if not vecs:
            raise ValueError("need at least one row to infer width")
        width = vecs[0].width
        return cls(tuple(v.bits for v in vecs), width)

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def mul_vec(self, x: int) -> int:
        """Row vector times matrix: x (1 x rows) . M -> width-bit int."""
        acc = 0
        for i, row in enumerate(self.rows):
            if (x >> i) & 1:
                acc ^= row
        return acc

    def rank(self) -> int:
        return len(rref_rows(self.rows, self.width)[0])

    def is_invertible(self) -> bool:
        return self.row_count == self.width and self.rank() == self.width

    def inverse(self) -> "Gf2Matrix":
        n = self.width
        if self.row_count != n:
            raise ValueError("not square")
        # Gauss-Jordan on [M | I] packed as rows of width 2n.
        aug = [self.rows[i] | (1 << (n + i)) for i in range(n)]
        out = []
        for col in range(n):
            mask = 1 << col
            src = next((i for i, v in enumerate(aug) if v & mask), None)
            if src is None:
                raise ValueError("singular matrix")
            piv = aug.pop(src)
            aug = [v ^ piv if v & mask else v for v in aug]
            out = [v ^ piv if v & mask else v for v in out]
            out.append(piv)
        # out[i] has exactly bit i set in the low half
        inv = [0] * n
        for v in out:
            i = (v & ((1 << n) - 1)).bit_length() - 1
            inv[i] = v >> n
        return Gf2Matrix(tuple(inv), n)


def rref_rows(rows: Iterable[int], width: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Reduced row echelon form over GF(2).

    Returns (rows, pivots): nonzero rref rows ordered by pivot and the
    1-based pivot columns.  The row space is preserved.
    """
    work = [r for r in rows if r]
    out: list[int] = []
    pivots: list[int] = []
    for col in range(width):
        mask = 1 << col
        src = next((i for i, v in enumerate(work) if v & mask), None)
        if src is None:
            continue
        piv = work[src]
        work = [v ^ piv if v & mask else v for v in work if v != piv]
        work = [v for v in work if v]
        out = [v ^ piv if v & mask else v for v in out]
        out.append(piv)
        pivots.append(col + 1)
        if not work:
            break
    return tuple(out), tuple(pivots)


@dataclass(frozen=True)
class IndexSet:
    """Strictly increasing subset of {1, ..., n} with its mask form."""

    indices: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        _check_width(self.n)
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError("indices must be strictly increasing")
        if self.indices and not (1 <= self.indices[0] and self.indices[-1] <= self.n):
            raise ValueError("indices out of range")

    @property
    def mask(self) -> int:
        m = 0
        for i in self.indices:
            m |= 1 << (i - 1)
        return m

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def complement(self) -> "IndexSet":
        return IndexSet(tuple(i for i in range(1, self.n + 1) if i not in set(self.indices)), self.n)


def project_bits(x: int, indices: tuple[int, ...]) -> int:
    """Extract coordinates (x_{i_1}, ..., x_{i_k}) into a width-k int."""
    y = 0
    for j, i in enumerate(indices):
        y |= ((x >> (i - 1)) & 1) << j
    return y


def embed_bits(y: int, indices: tuple[int, ...]) -> int:
    """Place y's bits at positions `indices`, zero elsewhere."""
    x = 0
    for j, i in enumerate(indices):
        x |= ((y >> j) & 1) << (i - 1)
    return x


def project(x: BitVector, I: IndexSet) -> BitVector:
    if x.width != I.n:
        raise ValueError("width mismatch")
    if not I.indices:
        raise ValueError("cannot project onto an empty index set")
    return BitVector(project_bits(x.bits, I.indices), len(I.indices))


def embed(y: BitVector, I: IndexSet) -> BitVector:
    if y.width != len(I.indices):
        raise ValueError("width mismatch")
    return BitVector(embed_bits(y.bits, I.indices), I.n)


@dataclass(frozen=True)
class LinearSubspace:
    """Linear subspace of Z2^n held as a reduced-row-echelon basis."""

    basis: tuple[int, ...]
    ambient: int

    def __post_init__(self) -> None:
        _check_width(self.ambient)
        rows, _ = rref_rows(self.basis, self.ambient)
        if rows != self.basis:
            raise ValueError("basis is not in reduced row echelon form")

    @classmethod
    def from_vectors(cls, vectors: Iterable[int], ambient: int) -> "LinearSubspace":
        rows, _ = rref_rows(vectors, ambient)
        return cls(rows, ambient)

    @classmethod
    def zero(cls, ambient: int) -> "LinearSubspace":
        return cls((), ambient)

    @classmethod
    def full(cls, ambient: int) -> "LinearSubspace":
        return cls(tuple(1 << i for i in range(ambient)), ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return rref_rows(self.basis, self.ambient)[1]

    def points(self) -> list[int]:
        """All 2^dim elements, in basis-combination order."""
        pts = [0]
        for b in self.basis:
            pts += [p ^ b for p in pts]
        return pts

    def contains(self, v: int) -> bool:
        return reduce_by_basis(v, self.basis) == 0

    def matrix(self) -> Gf2Matrix:
        return Gf2Matrix(self.basis, self.ambient)

    def orthogonal(self) -> "LinearSubspace":
        return orthogonal(self)


def reduce_by_basis(v: int, basis: tuple[int, ...]) -> int:
    """Reduce v modulo an rref basis: zero out its pivot coordinates."""
    for row in basis:
        piv = row & -row
        if v & piv:
            v ^= row
    return v


@dataclass(frozen=True)
class AffineSubspace:
    """Coset base + direction; base has zero pivot coordinates, making it the
    lexicographically least coset element in (x_1, ..., x_n) order."""

    base: int
    direction: LinearSubspace

    def __post_init__(self) -> None:
        if not 0 <= self.base < (1 << self.direction.ambient):
            raise ValueError("base out of range")
        if reduce_by_basis(self.base, self.direction.basis) != self.base:
            raise ValueError("base is not the canonical coset representative")

    @classmethod
    def coset(cls, base: int, direction: LinearSubspace) -> "AffineSubspace":
        return cls(reduce_by_basis(base, direction.basis), direction)

    @classmethod
    def from_point(cls, v: int, ambient: int) -> "AffineSubspace":
        return cls(v, LinearSubspace.zero(ambient))

    @property
    def ambient(self) -> int:
        return self.direction.ambient

    @property
    def dim(self) -> int:
        return self.direction.dim

    def points(self) -> list[int]:
        return [self.base ^ p for p in self.direction.points()]

    def contains(self, v: int) -> bool:
        return self.direction.contains(v ^ self.base)

    def is_linear(self) -> bool:
        return self.base == 0

    def translate(self, v: int) -> "AffineSubspace":
        return AffineSubspace.coset(self.base ^ v, self.direction)


@dataclass(frozen=True)
class AffineMap:
    """Affine map H(x) = x.matrix xor constant, optionally restricted to a domain.

    When built from values on a domain, the matrix is supported on the pivot
    rows of the domain direction basis, which makes equal maps compare equal.
    """

    matrix: Gf2Matrix
    constant: BitVector
    domain: Optional[AffineSubspace] = None

    def __post_init__(self) -> None:
        if self.matrix.width != self.constant.width:
            raise ValueError("matrix width and constant width differ")

    @property
    def codomain_width(self) -> int:
        return self.constant.width

    def evaluate(self, x: int) -> int:
        return self.matrix.mul_vec(x) ^ self.constant.bits

    def __call__(self, x: int) -> int:
        return self.evaluate(x)

    @classmethod
    def from_values(cls, domain: AffineSubspace, values: dict[int, int], width: int) -> "AffineMap":
        """Affine extension of values given at base and base^v for basis v.

        `values` must contain the domain base point and every base^basis_row;
        other entries are ignored.  The result is canonical for the domain.
        """
        if width < 1:
            raise ValueError("codomain width must be at least 1")
        n = domain.ambient
        b = domain.base
        h0 = values[b]
        rows = [0] * n
        for v in domain.direction.basis:
            piv = (v & -v).bit_length() - 1
            rows[piv] = values[b ^ v] ^ h0
        matrix = Gf2Matrix(tuple(rows), width)
        const = matrix.mul_vec(b) ^ h0
        return cls(matrix, BitVector(const, width), domain)


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional linear subspaces of Z2^n; 0 outside 0<=k<=n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= (1 << n) - (1 << i)
        den *= (1 << k) - (1 << i)
    return num // den


def rref(M: Gf2Matrix) -> tuple[Gf2Matrix, IndexSet]:
    rows, pivots = rref_rows(M.rows, M.width)
    return Gf2Matrix(rows, M.width), IndexSet(pivots, M.width)


def information_set(U: AffineSubspace | LinearSubspace) -> IndexSet:
    """Deterministic information set: pivot columns of the direction rref."""
    direction = U.direction if isinstance(U, AffineSubspace) else U
    return IndexSet(direction.pivots, direction.ambient)


def orthogonal(L: LinearSubspace) -> LinearSubspace:
    """All y with <x, y> = 0 for every x in L."""
    n = L.ambient
    pivset = set(L.pivots)
    rows_by_pivot = {(-r & r).bit_length(): r for r in L.basis}
    out = []
    for col in range(1, n + 1):
        if col in pivset:
            continue
        # free column -> kernel vector with y_col = 1, y_p = row_p[col]
        y = 1 << (col - 1)
        for p, row in rows_by_pivot.items():
            if (row >> (col - 1)) & 1:
                y |= 1 << (p - 1)
        out.append(y)
    return LinearSubspace.from_vectors(out, n)


MAX_ENUM_AMBIENT = 8


@lru_cache(maxsize=None)
def linear_subspace_bases(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All rref bases of k-dimensional subspaces of Z2^n, in canonical order."""
    if not 0 <= k <= n <= MAX_ENUM_AMBIENT:
        raise ValueError(f"need 0 <= k <= n <= {MAX_ENUM_AMBIENT}")
    if k == 0:
        return ((),)
    result = []
    for pivots in itertools.combinations(range(n), k):
        pivset = set(pivots)
        # free positions per row: columns above its pivot that are not pivots
        free = [[c for c in range(p + 1, n) if c not in pivset] for p in pivots]
        counts = [len(f) for f in free]
        for assign in range(1 << sum(counts)):
            rows = []
            off = 0
            for i, p in enumerate(pivots):
                row = 1 << p
                for j, c in enumerate(free[i]):
                    if (assign >> (off + j)) & 1:
                        row |= 1 << c
                rows.append(row)
                off += counts[i]
            result.append(tuple(rows))
    return tuple(result)


def coset_representatives(basis: tuple[int, ...], n: int) -> list[int]:
    """Canonical coset reps of a subspace: ints supported off the pivots."""
    nonpivots = [c for c in range(n) if not any((b & -b) == (1 << c) for b in basis)]
    reps = []
    for y in range(1 << len(nonpivots)):
        v = 0
        for j, c in enumerate(nonpivots):
            if (y >> j) & 1:
                v |= 1 << c
        reps.append(v)
    return reps


def enumerate_subspaces(n: int, k: int, affine: bool = False) -> Iterator[LinearSubspace | AffineSubspace]:
    """Yield every k-dimensional (affine) subspace of Z2^n exactly once."""
    for basis in linear_subspace_bases(n, k):
        direction = LinearSubspace(basis, n)
        if not affine:
            yield direction
            continue
        for rep in coset_representatives(basis, n):
            yield AffineSubspace(rep, direction)


def affine_hull_or_none(points: Iterable[int], ambient: int) -> Optional[AffineSubspace]:
    """The canonical affine subspace equal to the point set, if it is one."""
    pts = set(points)
    if not pts:
        raise ValueError("empty point set")
    b = min(pts)
    rows, _ = rref_rows((p ^ b for p in pts), ambient)
    if (1 << len(rows)) != len(pts):
        return None
    return AffineSubspace.coset(b, LinearSubspace(rows, ambient))


def solve_linear(rows: list[int], rhs: list[int], width: int) -> Optional[tuple[int, list[int]]]:
    """Solve x . row_i^T = rhs_i over GF(2) for x of `width` bits.

    Each equation is <x, rows[i]> = rhs[i].  Returns (particular solution,
    kernel basis) or None when inconsistent.
    """
    aug = [(r | (b << width)) for r, b in zip(rows, rhs)]
    reduced, pivots = rref_rows(aug, width + 1)
    if pivots and pivots[-1] == width + 1:
        return None
    pivcols = [p - 1 for p in pivots]
    pivset = set(pivcols)
    particular = 0
    for row, p in zip(reduced, pivcols):
        if row >> width:
            particular |= 1 << p
    kernel = []
    for c in range(width):
        if c in pivset:
            continue
        v = 1 << c
        for row, p in zip(reduced, pivcols):
            if (row >> c) & 1:
                v |= 1 << p
        kernel.append(v)
    return particular, kernel


def coset_rep_on(x: int, space: LinearSubspace, I: IndexSet) -> int:
    """The unique element of x + space supported on I.

    Requires the complement of I to be an information set of `space`.
    """
    comp = I.complement().indices
    target = project_bits(x, comp)
    rows = [project_bits(b, comp) for b in space.basis]
    # invert the projected basis: find the combination matching target
    sol = solve_linear_combination(rows, target)
    if sol is None:
        raise ValueError("complement of I is not an information set of the space")
    r = 0
    for j, b in enumerate(space.basis):
        if (sol >> j) & 1:
            r ^= b
    return x ^ r


def solve_linear_combination(rows: list[int], target: int) -> Optional[int]:
    """Coefficients c with xor of c-selected rows == target, if any."""
    basis: list[tuple[int, int]] = []  # (vector, combination)
    for j, row in enumerate(rows):
        comb = 1 << j
        for v, c in basis:
            if row & (v & -v):
                row ^= v
                comb ^= c
        if row:
            basis.append((row, comb))
            basis.sort(key=lambda t: t[0] & -t[0])
    comb = 0
    for v, c in basis:
        if target & (v & -v):
            target ^= v
            comb ^= c
    return comb if target == 0 else None


def random_invertible(n: int, rng) -> Gf2Matrix:
    """Uniform random invertible n x n matrix over GF(2)."""
    while True:
        rows = tuple(rng.getrandbits(n) for _ in range(n))
        M = Gf2Matrix(rows, n)
        if M.is_invertible():
            return M
