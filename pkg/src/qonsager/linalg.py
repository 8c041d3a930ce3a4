"""Dense exact linear algebra over Q: matrices, kernels, and the subspace lattice.

Everything is desk-scale ((d+1) <= ~12), so plain O(n^3) rational Gaussian
elimination is used throughout. Subspaces are stored as reduced row-echelon
bases, the unique representation per subspace, so equality is structural.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import ONE, ZERO


class ShapeError(ValueError):
    """Raised on dimension mismatch between operands."""


class SingularMatrixError(ValueError):
    """Raised when inverting a singular matrix; carries the rank as witness."""

    def __init__(self, rank: int, size: int):
        self.rank = rank
        self.size = size
        super().__init__(f"matrix is singular: rank {rank} < {size}")


class Matrix:
    """Immutable dense matrix of exact rationals.

    >>> Matrix([[2, 0], [0, Fraction(1, 2)]]).inverse()
    Matrix([[1/2, 0], [0, 2]])
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(Fraction(e) for e in row) for row in entries)
        if not rows or not rows[0]:
            raise ShapeError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, values) -> "Matrix":
        vals = list(values)
        n = len(vals)
        return cls([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)
        return f"Matrix([{body}])"

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self) -> "Matrix":
        return self.scale(-ONE)

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix([[c * e for e in row] for row in self.entries])

    def __rmul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols = list(zip(*other.entries))
        return Matrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in cols]
                for row in self.entries
            ]
        )

    def __pow__(self, n: int) -> "Matrix":
        if self.rows != self.cols:
            raise ShapeError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        out = Matrix.identity(self.rows)
        for _ in range(n):
            out = out * self
        return out

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.entries)))

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ShapeError("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), ZERO)

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def apply(self, vec):
        """Multiply by a column vector given as a sequence; returns a tuple."""
        if len(vec) != self.cols:
            raise ShapeError(f"vector length {len(vec)} != {self.cols}")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def inverse(self) -> "Matrix":
        """Exact inverse via Gauss-Jordan; raises SingularMatrixError with rank witness."""
        if self.rows != self.cols:
            raise ShapeError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(self.entries)]
        rank = 0
        for col in range(n):
            pivot = next((r for r in range(rank, n) if aug[r][col] != 0), None)
            if pivot is None:
                continue
            aug[rank], aug[pivot] = aug[pivot], aug[rank]
            inv = 1 / aug[rank][col]
            aug[rank] = [e * inv for e in aug[rank]]
            for r in range(n):
                if r != rank and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [e - f * p for e, p in zip(aug[r], aug[rank])]
            rank += 1
        if rank < n:
            raise SingularMatrixError(rank, n)
        return Matrix([row[n:] for row in aug])

    def rank(self) -> int:
        return rref(self).count_nonzero_rows()

    def count_nonzero_rows(self) -> int:
        return sum(1 for row in self.entries if any(e != 0 for e in row))


def commutator(x: Matrix, y: Matrix) -> Matrix:
    """[X, Y] = XY - YX."""
    return x * y - y * x


def q_commutator(x: Matrix, y: Matrix, q) -> Matrix:
    """[X, Y]_q = q XY - q^-1 YX."""
    q = Fraction(q)
    return (x * y).scale(q) - (y * x).scale(1 / q)


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form, pivoting on the first nonzero column."""
    rows = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    lead = 0
    for col in range(ncols):
        if lead >= nrows:
            break
        pivot = next((r for r in range(lead, nrows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[lead], rows[pivot] = rows[pivot], rows[lead]
        inv = 1 / rows[lead][col]
        rows[lead] = [e * inv for e in rows[lead]]
        for r in range(nrows):
            if r != lead and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [e - f * p for e, p in zip(rows[r], rows[lead])]
        lead += 1
    return Matrix(rows)


class Subspace:
    """A subspace of Q^n held as a reduced row-echelon basis with no zero rows.

    The representation is canonical, so two subspaces are equal exactly when
    their stored bases are identical.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis_rows):
        rows = tuple(tuple(Fraction(e) for e in row) for row in basis_rows)
        for row in rows:
            if len(row) != ambient_dim:
                raise ShapeError(f"basis row length {len(row)} != ambient {ambient_dim}")
            if all(e == 0 for e in row):
                raise ValueError("zero row in subspace basis")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors) -> "Subspace":
        vecs = [list(v) for v in vectors]
        if not vecs:
            return cls(ambient_dim, [])
        reduced = rref(Matrix(vecs))
        rows = [r for r in reduced.entries if any(e != 0 for e in r)]
        return cls(ambient_dim, rows)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.from_vectors(ambient_dim, Matrix.identity(ambient_dim).entries)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in row) for row in self.basis)
        return f"Subspace(dim {self.rank} of Q^{self.ambient_dim}: {body})"

    def contains_vector(self, vec) -> bool:
        joined = Subspace.from_vectors(self.ambient_dim, list(self.basis) + [list(vec)])
        return joined.rank == self.rank

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return subspace_sum(self, other).rank == self.rank

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError(
                f"ambient mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def image_under(self, m: Matrix) -> "Subspace":
        """The subspace m(self); basis vectors are mapped as column vectors."""
        if m.cols != self.ambient_dim:
            raise ShapeError(f"matrix cols {m.cols} != ambient {self.ambient_dim}")
        return Subspace.from_vectors(m.rows, [m.apply(v) for v in self.basis])


def kernel(m: Matrix) -> Subspace:
    """Null space of m as a subspace of Q^cols."""
    reduced = rref(m)
    pivots = []
    for row in reduced.entries:
        for j, e in enumerate(row):
            if e != 0:
                pivots.append(j)
                break
    free = [j for j in range(m.cols) if j not in pivots]
    vectors = []
    for f in free:
        vec = [ZERO] * m.cols
        vec[f] = ONE
        for rowidx, pcol in enumerate(pivots):
            vec[pcol] = -reduced.entries[rowidx][f]
        vectors.append(vec)
    return Subspace.from_vectors(m.cols, vectors)


def column_space(m: Matrix) -> Subspace:
    """Column space of m as a subspace of Q^rows."""
    return Subspace.from_vectors(m.rows, zip(*m.entries))


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    s._check_ambient(t)
    return Subspace.from_vectors(s.ambient_dim, list(s.basis) + list(t.basis))


def subspace_intersect(s: Subspace, t: Subspace) -> Subspace:
    """Intersection by the Zassenhaus block trick on the stacked bases."""
    s._check_ambient(t)
    n = s.ambient_dim
    if s.is_zero() or t.is_zero():
        return Subspace.zero(n)
    block = [list(row) + list(row) for row in s.basis]
    block += [list(row) + [ZERO] * n for row in t.basis]
    reduced = rref(Matrix(block))
    vectors = []
    for row in reduced.entries:
        left, right = row[:n], row[n:]
        if all(e == 0 for e in left) and any(e != 0 for e in right):
            vectors.append(right)
    return Subspace.from_vectors(n, vectors)


def subspace_equal(s: Subspace, t: Subspace) -> bool:
    return s == t


class Decomposition:
    """An ordered tuple of d+1 nonzero subspaces whose direct sum is the ambient space."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise ValueError("decomposition needs at least one part")
        ambient = parts[0].ambient_dim
        total = 0
        running = Subspace.zero(ambient)
        for p in parts:
            if p.ambient_dim != ambient:
                raise ShapeError("decomposition parts live in different ambient spaces")
            if p.is_zero():
                raise ValueError("decomposition part is the zero subspace")
            total += p.rank
            running = subspace_sum(running, p)
        if total != ambient or running.rank != ambient:
            raise ValueError(
                f"parts are not a direct-sum decomposition: ranks sum to {total}, "
                f"span has dimension {running.rank}, ambient {ambient}"
            )
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("Decomposition is immutable")

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i) -> Subspace:
        return self.parts[i]

    def __eq__(self, other):
        return isinstance(other, Decomposition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    @property
    def ambient_dim(self) -> int:
        return self.parts[0].ambient_dim

    def inversion(self) -> "Decomposition":
        return Decomposition(self.parts[::-1])


def flag(dec: Decomposition, i: int, direction: str = "ascending") -> Subspace:
    """Partial sums of a decomposition: ascending W_0+...+W_i, descending W_d+...+W_(d-i)."""
    d = len(dec) - 1
    if not 0 <= i <= d:
        raise IndexError(f"flag index {i} out of range 0..{d}")
    if direction == "ascending":
        chosen = dec.parts[: i + 1]
    elif direction == "descending":
        chosen = dec.parts[d - i :]
    else:
        raise ValueError(f"direction must be 'ascending' or 'descending', got {direction!r}")
    out = Subspace.zero(dec.ambient_dim)
    for part in chosen:
        out = subspace_sum(out, part)
    return out
