"""The quadratic module and its matrix machinery.

``QuadSpace`` is a free module of rank m+1 with ordered basis
u, v_1, ..., v_m.  The bilinear form pairs any two distinct basis
vectors to 1 and is alternating; the quadratic form takes the value 1
on u and 1/t on every v_i.  Both extend to arbitrary vectors by
q(sum l_i x_i) = sum l_i**2 q(x_i) + sum_{i<j} l_i l_j (x_i, x_j).

Everything uses one global convention: vectors are rows, row i of a
matrix is the image of basis vector i, and composition reads left to
right (x * (g h) = (x * g) * h).

Scalars only need +, *, is_zero/is_one and inverse(), so the same code
runs over the Laurent ring, its quadratic extension, or a finite field
after specialization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import rings
from .errors import NonUnitNormError, UnsupportedFormError
from .rings import L_ONE, L_ZERO, LaurentScalar, T_INV, gf2_rank


class RMatrix:
    """A square matrix over any char-2 scalar ring; rows act on the right."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("RMatrix is immutable")

    @property
    def size(self):
        return len(self.rows)

    @classmethod
    def identity(cls, n, one, zero):
        return cls(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        )

    def __mul__(self, other):
        arows, brows = self.rows, other.rows
        n = len(brows[0])
        some = arows[0][0]
        zero = some + some  # characteristic two
        out = []
        for arow in arows:
            acc = [zero] * n
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = brows[k]
                for j, b in enumerate(brow):
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return RMatrix(tuple(out))

    def __pow__(self, k: int):
        if k <= 0:
            raise ValueError("matrix powers need k >= 1 (identity not inferable)")
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def row_apply(self, vec):
        """Image of a row vector under this matrix."""
        rows = self.rows
        n = len(rows[0])
        some = rows[0][0]
        zero = some + some
        acc = [zero] * n
        for k, a in enumerate(vec):
            if not a:
                continue
            row = rows[k]
            for j, b in enumerate(row):
                if b:
                    acc[j] = acc[j] + a * b
        return tuple(acc)

    def map_entries(self, fn) -> "RMatrix":
        return RMatrix(tuple(tuple(fn(x) for x in row) for row in self.rows))

    @property
    def is_identity(self):
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if i == j:
                    if not x.is_one:
                        return False
                elif x:
                    return False
        return True

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.rows]

    def __eq__(self, other):
        return isinstance(other, RMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return "\n".join(
            "[" + ", ".join(str(x) for x in row) + "]" for row in self.rows
        )

    def __repr__(self):
        return f"RMatrix({self.size}x{self.size})"


class QuadSpace:
    """Rank m+1 module with basis u, v_1..v_m and the standard form.

    ``q_values`` may be overridden (e.g. with field elements) when the
    space is specialized; the bilinear form is always the all-ones
    off-diagonal pairing in the 0/1 of the scalar ring.
    """

    def __init__(self, m: int, q_values=None, one=L_ONE, zero=L_ZERO):
        if m < 3:
            raise ValueError(f"need m >= 3, got {m}")
        self.m = m
        self.rank = m + 1
        self.one = one
        self.zero = zero
        if q_values is None:
            q_values = (L_ONE,) + (T_INV,) * m
        q_values = tuple(q_values)
        if len(q_values) != m + 1:
            raise ValueError("need one q-value per basis vector")
        self.q_values = q_values

    def basis_vector(self, i: int):
        return tuple(
            self.one if j == i else self.zero for j in range(self.rank)
        )

    def basis_labels(self):
        return ("u",) + tuple(f"v{i}" for i in range(1, self.m + 1))

    def vector(self, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != self.rank:
            raise ValueError("coefficient count must match the rank")
        return coeffs

    def identity_matrix(self) -> RMatrix:
        return RMatrix.identity(self.rank, self.one, self.zero)

    def __repr__(self):
        return f"QuadSpace(m={self.m})"


def q_eval(space: QuadSpace, vec):
    """Value of the quadratic form on a vector."""
    total = space.zero
    n = space.rank
    for i in range(n):
        c = vec[i]
        if c:
            total = total + c * c * space.q_values[i]
    for i in range(n):
        ci = vec[i]
        if not ci:
            continue
        for j in range(i + 1, n):
            cj = vec[j]
            if cj:
                total = total + ci * cj
    return total


def bilin(space: QuadSpace, x, y):
    """The alternating bilinear pairing (all distinct basis pairs pair to 1)."""
    total = space.zero
    n = space.rank
    for i in range(n):
        xi = x[i]
        if not xi:
            continue
        for j in range(n):
            if i != j and y[j]:
                total = total + xi * y[j]
    return total


def vec_to_json(vec):
    return [x.to_json() for x in vec]


def vec_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def vec_scale(c, x):
    return tuple(c * a for a in x)


def transvection(space: QuadSpace, w) -> RMatrix:
    """Matrix of x -> x + ((x, w)/q(w)) w; requires q(w) to be a unit."""
    qw = q_eval(space, w)
    try:
        qw_inv = qw.inverse()
    except Exception as exc:
        raise NonUnitNormError(f"q(w) = {qw} is not invertible") from exc
    rows = []
    for i in range(space.rank):
        e = space.basis_vector(i)
        c = bilin(space, e, w) * qw_inv
        rows.append(vec_add(e, vec_scale(c, w)))
    return RMatrix(rows)


@dataclass
class HyperbolicDecomposition:
    """Result of the inductive splitting-off of hyperbolic pairs."""

    pairs: list  # list of (e, f) vector pairs
    residual: list  # basis of the undecomposed remainder
    residual_q: list  # q-values of the residual basis
    states: list = field(default_factory=list)  # (q0, q1, q_rest) per step

    @property
    def pair_count(self):
        return len(self.pairs)


# q-state table for the inductive step: (q0, q1, q_common) -> (alpha, beta).
# The family is periodic with period four starting from (1, 1/t, 1/t).
_T1 = T_INV
_T1P = T_INV + L_ONE
_STATE_TABLE = {
    (L_ONE, _T1, _T1): (1, 1),
    (L_ONE, _T1, _T1P): (0, 1),
    (L_ONE, _T1P, _T1P): (1, 1),
    (L_ONE, _T1P, _T1): (0, 1),
}


def hyperbolic_decompose(space: QuadSpace) -> HyperbolicDecomposition:
    """Split off hyperbolic pairs until the remainder has rank 2 or 3.

    Works over the standard form family only: starting from q-values
    (1, 1/t, ..., 1/t) the reachable states cycle through a fixed table
    of four rows, each providing GF(2) coefficients (alpha, beta) with

        q(alpha e0 + beta e1 + e_k) = 0.

    The step extracts e = alpha e0 + beta e1 + e_k and
    f = alpha e0 + beta e1 + e_{k-1}, corrects the remaining vectors by
    multiples of e + f so they stay orthogonal to the pair, and updates
    the q-values (q0 += beta**2 + 1, q1 += alpha**2 + 1, rest +=
    alpha**2 + beta**2 + 1).  All output vectors are GF(2) combinations
    of the input basis.
    """
    if not isinstance(space.q_values[0], LaurentScalar):
        raise UnsupportedFormError("decomposition runs over the Laurent ring")
    vectors = [space.basis_vector(i) for i in range(space.rank)]
    qs = list(space.q_values)
    if qs[0] != L_ONE or any(q != T_INV for q in qs[1:]):
        raise UnsupportedFormError("q-values are not (1, 1/t, ..., 1/t)")

    one, zero = space.one, space.zero
    pairs = []
    states = []
    while len(vectors) >= 4:
        rest = qs[2:]
        if any(q != rest[0] for q in rest[1:]):
            raise UnsupportedFormError("tail q-values diverged; outside the family")
        state = (qs[0], qs[1], qs[2])
        ab = _STATE_TABLE.get(state)
        if ab is None:
            raise UnsupportedFormError(f"q-state {state} is not in the table")
        alpha, beta = ab
        k = len(vectors) - 1
        sa = one if alpha else zero
        sb = one if beta else zero
        head = vec_add(vec_scale(sa, vectors[0]), vec_scale(sb, vectors[1]))
        e = vec_add(head, vectors[k])
        f = vec_add(head, vectors[k - 1])
        ef = vec_add(e, f)
        # correction coefficients (beta+1, alpha+1, alpha+beta+1) in GF(2)
        c0 = one if (beta ^ 1) else zero
        c1 = one if (alpha ^ 1) else zero
        cr = one if (alpha ^ beta ^ 1) else zero
        new_vectors = [
            vec_add(vectors[0], vec_scale(c0, ef)),
            vec_add(vectors[1], vec_scale(c1, ef)),
        ]
        for i in range(2, k - 1):
            new_vectors.append(vec_add(vectors[i], vec_scale(cr, ef)))
        a_sq = L_ONE if alpha else L_ZERO
        b_sq = L_ONE if beta else L_ZERO
        new_qs = [
            qs[0] + b_sq + L_ONE,
            qs[1] + a_sq + L_ONE,
        ]
        for i in range(2, k - 1):
            new_qs.append(qs[i] + a_sq + b_sq + L_ONE)
        # the table is an advertised contract; cross-check it from scratch
        for vec, q in zip(new_vectors, new_qs):
            if q_eval(space, vec) != q:
                raise UnsupportedFormError("q-update formulas disagree with q_eval")
        pairs.append((e, f))
        states.append(state)
        vectors = new_vectors
        qs = new_qs
    return HyperbolicDecomposition(
        pairs=pairs,
        residual=vectors,
        residual_q=[q_eval(space, v) for v in vectors],
        states=states,
    )


def radical_vector(space: QuadSpace):
    """The radical of the bilinear form: the all-ones vector for even m.

    For odd m returns None; nondegeneracy is certified by the GF(2) rank
    of the Gram matrix (its entries are already 0/1, so any evaluation
    map fixes them).
    """
    n = space.rank
    if space.m % 2 == 0:
        r = tuple(space.one for _ in range(n))
        for i in range(n):
            if bilin(space, r, space.basis_vector(i)):
                raise ArithmeticError("all-ones vector failed the radical check")
        return r
    if gram_rank_gf2(space.m) != n:
        raise ArithmeticError("Gram matrix unexpectedly singular for odd m")
    return None


def gram_rank_gf2(m: int) -> int:
    """GF(2) rank of the (m+1)-square all-ones-off-diagonal Gram matrix."""
    n = m + 1
    full = (1 << n) - 1
    return gf2_rank(full ^ (1 << i) for i in range(n))


def rmat_lift_qe(mat: RMatrix) -> RMatrix:
    """Lift a Laurent matrix into the quadratic extension."""
    return mat.map_entries(rings.QEScalar.from_laurent)


def rmat_lower_laurent(mat: RMatrix) -> RMatrix:
    """Lower a QE matrix into the Laurent subring (raises if impossible)."""
    return mat.map_entries(lambda x: x.laurent_part())
