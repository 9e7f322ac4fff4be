"""Square matrices over an :class:`InvolutiveRing`, plus the hermitian form ``J_n``."""
from __future__ import annotations

from .rings import InvolutiveRing


class Mat:
    """Immutable n x n matrix.  ``rows`` is a tuple of tuples of ring elements."""

    __slots__ = ("ring", "rows", "_hash")

    def __init__(self, ring: InvolutiveRing, rows):
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)
        self._hash = None

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows and self.ring == other.ring

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __matmul__(self, other: "Mat") -> "Mat":
        return Mat(self.ring, mat_mul_rows(self.ring, self.rows, other.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.fmt(x) for x in r) for r in self.rows)
        return f"Mat[{body}]"

    def literal_rows(self) -> list[list[str]]:
        return [[self.ring.fmt(x) for x in r] for r in self.rows]

    def conj(self) -> "Mat":
        th = self.ring.theta
        return Mat(self.ring, [[th(x) for x in r] for r in self.rows])

    def transpose(self) -> "Mat":
        return Mat(self.ring, zip(*self.rows))

    def is_identity(self) -> bool:
        one = self.ring.one
        return all(x == (one if i == j else 0) for i, r in enumerate(self.rows) for j, x in enumerate(r))


def mat_mul_rows(R: InvolutiveRing, A, B):
    add, mul = R.add, R.mul
    cols = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = add(acc, mul(a, b))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def identity(R: InvolutiveRing, n: int) -> Mat:
    return Mat(R, [[R.one if i == j else 0 for j in range(n)] for i in range(n)])


def elementary(R: InvolutiveRing, n: int, entries: dict[tuple[int, int], int]) -> Mat:
    """Identity plus the given off-diagonal entries (0-based positions)."""
    rows = [[R.one if i == j else 0 for j in range(n)] for i in range(n)]
    for (i, j), v in entries.items():
        rows[i][j] = v
    return Mat(R, rows)


def diagonal(R: InvolutiveRing, values) -> Mat:
    values = list(values)
    n = len(values)
    return Mat(R, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])


def hermitian_form(R: InvolutiveRing, n: int) -> Mat:
    """``J_n``: anti-diagonal with entry ``(-1)**i`` in row i (1-based)."""
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        rows[i - 1][n - i] = R.one if i % 2 == 0 else R.neg(R.one)
    return Mat(R, rows)


def det(M: Mat) -> int:
    R = M.ring
    rows = M.rows
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return R.sub(R.mul(rows[0][0], rows[1][1]), R.mul(rows[0][1], rows[1][0]))
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        m = R.mul
        pos = R.add(R.add(m(a, m(e, i)), m(b, m(f, g))), m(c, m(d, h)))
        neg = R.add(R.add(m(c, m(e, g)), m(b, m(d, i))), m(a, m(f, h)))
        return R.sub(pos, neg)
    # Laplace expansion along the first row; fine for n <= 5.
    acc = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = Mat(R, [r[:j] + r[j + 1:] for r in rows[1:]])
        term = R.mul(rows[0][j], det(minor))
        acc = R.add(acc, term if j % 2 == 0 else R.neg(term))
    return acc


def hermitian_gram(M: Mat) -> Mat:
    """``M^t J M-bar``; equals ``J`` exactly when M is sigma-fixed."""
    J = hermitian_form(M.ring, M.n)
    return M.transpose() @ J @ M.conj()


def is_sigma_fixed(M: Mat) -> bool:
    return hermitian_gram(M) == hermitian_form(M.ring, M.n)


def sigma_inverse(M: Mat) -> Mat:
    """Inverse of a sigma-fixed matrix: ``J^{-1} M-bar^t J``.

    ``J_n^2 = (-1)^(n+1) I``, so ``J^{-1}`` is ``J`` for odd n and ``-J`` for even n.
    """
    R = M.ring
    J = hermitian_form(R, M.n)
    out = J @ M.conj().transpose() @ J
    if M.n % 2 == 0:
        out = Mat(R, [[R.neg(x) for x in r] for r in out.rows])
    return out


def unitriangular_inverse(M: Mat) -> Mat:
    """Inverse of an upper or lower unitriangular matrix by substitution."""
    R = M.ring
    n = M.n
    lower = any(M.rows[i][j] for i in range(n) for j in range(i))
    A = M.transpose() if lower else M
    inv = [[R.one if i == j else 0 for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = 0
            for k in range(i + 1, j + 1):
                acc = R.add(acc, R.mul(A.rows[i][k], inv[k][j]))
            inv[i][j] = R.neg(acc)
    out = Mat(R, inv)
    return out.transpose() if lower else out


def is_upper_unitriangular(M: Mat) -> bool:
    one = M.ring.one
    return all(M.rows[i][i] == one for i in range(M.n)) and all(
        M.rows[i][j] == 0 for i in range(M.n) for j in range(i)
    )


def is_lower_unitriangular(M: Mat) -> bool:
    return is_upper_unitriangular(M.transpose())


def is_diagonal(M: Mat) -> bool:
    return all(M.rows[i][j] == 0 for i in range(M.n) for j in range(M.n) if i != j)
