"""The block-recursive matrix representation and its realization on a
submodule of the Clifford algebra.

Over the quadratic extension, the group generated by a and the s_i has
a family of 2**(m-2)-dimensional matrix representations defined by a
block doubling recursion: the base case is

    a  -> [[alpha, 0], [0, 1/alpha]]
    s1 -> [[1, 0], [1, 1]]
    s2 -> [[0, 1], [1, 0]]

and each step doubles the size, sending a to diag(a, a**-1), s1 and s2
to the unipotent and swap block forms, s3 to [[s2', 0], [I, s2']] and
s_k (k >= 4) to diag(s_{k-1}', s_{k-1}').

The same action lives inside the Clifford algebra: the seed vector

    w = (1/s + alpha) + alpha u v_1 + (1/alpha) u v_2 + s v_1 v_2

is an alpha-eigenvector for right multiplication by the a-image, fixed
by the s1-image, and a (1/alpha)-eigenvector for s u v_2.  Repeatedly
right-multiplying w by the s_j images (stage j = m-1 down to 2, each
stage appending x -> x s_j for everything collected so far) produces an
ordered basis of a rank 2**(m-2) submodule W on which right
multiplication reproduces the matrices above, row for row.  Appending
the u-translates W u doubles the module and extends the action to the
full group including tau.

Linear independence of these bases is certified by specialization:
full coefficient rank over one finite field already implies
independence over the ring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clifford import CliffordElement, PinRep, get_algebra
from .errors import InconclusiveError, MismatchError
from .presentation import A, A_INV, Representation, TAU, s_letter
from .quadspace import RMatrix
from .rings import (
    ALPHA,
    ALPHA_INV,
    EvalMap,
    QE_ONE,
    QE_ZERO,
    QEScalar,
    S,
    S_INV,
    ff_rank,
    make_eval_map,
)


def _id_rows(n):
    return tuple(
        tuple(QE_ONE if i == j else QE_ZERO for j in range(n)) for i in range(n)
    )


def _zero_rows(n):
    return ((QE_ZERO,) * n,) * n


def _block2(tl, tr, bl, br) -> RMatrix:
    rows = [list(a) + list(b) for a, b in zip(tl, tr)]
    rows += [list(a) + list(b) for a, b in zip(bl, br)]
    return RMatrix(rows)


class SpinorRep(Representation):
    """The 2**(m-2)-dimensional block-recursive representation over QE."""

    name = "spinor"

    def __init__(self, m: int):
        if m < 3:
            raise ValueError(f"need m >= 3, got {m}")
        self.m = m
        self.dim = 1 << (m - 2)
        a, a_inv, s_imgs = _build_level(m)
        images = {A: a, A_INV: a_inv}
        for i in range(1, m):
            images[s_letter(i)] = s_imgs[i]
        super().__init__(images, RMatrix(_id_rows(self.dim)))


def _build_level(m: int):
    if m == 3:
        a = RMatrix(((ALPHA, QE_ZERO), (QE_ZERO, ALPHA_INV)))
        a_inv = RMatrix(((ALPHA_INV, QE_ZERO), (QE_ZERO, ALPHA)))
        s1 = RMatrix(((QE_ONE, QE_ZERO), (QE_ONE, QE_ONE)))
        s2 = RMatrix(((QE_ZERO, QE_ONE), (QE_ONE, QE_ZERO)))
        return a, a_inv, {1: s1, 2: s2}
    a_p, a_inv_p, s_p = _build_level(m - 1)
    half = 1 << (m - 3)
    ident = _id_rows(half)
    zero = _zero_rows(half)
    a = _block2(a_p.rows, zero, zero, a_inv_p.rows)
    a_inv = _block2(a_inv_p.rows, zero, zero, a_p.rows)
    s_imgs = {
        1: _block2(ident, zero, ident, ident),
        2: _block2(zero, ident, ident, zero),
        3: _block2(s_p[2].rows, zero, ident, s_p[2].rows),
    }
    for k in range(4, m):
        s_imgs[k] = _block2(s_p[k - 1].rows, zero, zero, s_p[k - 1].rows)
    return a, a_inv, s_imgs


def seed_vector(m: int) -> CliffordElement:
    """The eigenvector w generating the spinor submodule (verified)."""
    alg = get_algebra(m, "qe")
    w = alg.from_terms(
        {
            0: QEScalar(S_INV) + ALPHA,
            0b011: ALPHA,  # u v1
            0b101: ALPHA_INV,  # u v2
            0b110: QEScalar(S),  # v1 v2
        }
    )
    pin = PinRep(m, "qe")
    if w * pin.image(A) != w.scale(ALPHA):
        raise MismatchError("seed vector is not an alpha-eigenvector for a")
    if w * pin.image(s_letter(1)) != w:
        raise MismatchError("seed vector is not fixed by s1")
    s_u_v2 = alg.scalar(S) * alg.u() * alg.v(2)
    if w * s_u_v2 != w.scale(ALPHA_INV):
        raise MismatchError("seed vector fails the 1/alpha eigen-equation")
    return w


@dataclass(frozen=True)
class WBasis:
    """Ordered basis of the spinor submodule.

    ``order="stage"`` is the doubling order (stage j appends the
    s_j-translates of everything so far, j = m-1 down to 2);
    ``order="length"`` is the same elements sorted by word length and
    then lexicographically by the applied index set.
    """

    m: int
    order: str
    elements: tuple
    words: tuple  # applied s-indices, in application order

    def __len__(self):
        return len(self.elements)


def spinor_basis(m: int, order: str = "stage") -> WBasis:
    if not 3 <= m <= 8:
        raise ValueError(f"need 3 <= m <= 8, got {m}")
    if order not in ("stage", "length"):
        raise ValueError(f"unknown order {order!r}")
    pin = PinRep(m, "qe")
    elems = [seed_vector(m)]
    words = [()]
    for j in range(m - 1, 1, -1):
        img = pin.image(s_letter(j))
        elems += [x * img for x in elems]
        words += [wd + (j,) for wd in words]
    if order == "length":
        paired = sorted(
            zip(elems, words), key=lambda ew: (len(ew[1]), tuple(sorted(ew[1])))
        )
        elems = [e for e, _ in paired]
        words = [w for _, w in paired]
    return WBasis(m, order, tuple(elems), tuple(words))


def coefficient_matrix(elements, emap: EvalMap):
    """Specialized monomial-coefficient matrix (rows = elements)."""
    if not elements:
        return []
    m = elements[0].algebra.m
    ncols = 1 << (m + 1)
    field = emap.field
    rows = []
    for el in elements:
        row = [field.zero] * ncols
        for mono, c in el.terms.items():
            row[mono] = emap.apply(c)
        rows.append(row)
    return rows


def full_rank_at(elements, emap: EvalMap) -> bool:
    """True iff the specialized coefficient matrix has full row rank."""
    rows = coefficient_matrix(elements, emap)
    if not rows:
        return True
    return ff_rank(emap.field, rows) == len(rows)


def independence_certificate(elements, ns=(5, 7, 11)) -> bool:
    """Certify ring-linear independence by specialization.

    Returns True on the first n whose evaluation map gives the
    coefficient matrix full row rank (which implies independence over
    the ring).  If every listed specialization is rank-deficient the
    result is inconclusive, not a dependence proof, and is raised as
    such.
    """
    elements = list(getattr(elements, "elements", elements))
    tried = []
    for n in ns:
        emap = make_eval_map(n)
        if full_rank_at(elements, emap):
            return True
        tried.append(n)
    raise InconclusiveError(
        f"rank-deficient at every specialization n in {tuple(ns)}", tried=tried
    )


def _expand_rhs(row, basis_elems):
    acc = None
    for c, x in zip(row, basis_elems):
        if not c:
            continue
        term = x.scale(c)
        acc = term if acc is None else acc + term
    if acc is None:
        return basis_elems[0].algebra.zero
    return acc


def check_action(m: int, letters=None) -> dict:
    """Verify that right multiplication on the stage basis matches the
    block-recursive matrices entry for entry; exact over QE."""
    if not 3 <= m <= 8:
        raise ValueError(f"need 3 <= m <= 8, got {m}")
    basis = spinor_basis(m)
    pin = PinRep(m, "qe")
    eta = SpinorRep(m)
    if letters is None:
        letters = [A] + [s_letter(i) for i in range(1, m)]
    for letter in letters:
        mat = eta.image(letter)
        img = pin.image(letter)
        for i, x in enumerate(basis.elements):
            lhs = x * img
            rhs = _expand_rhs(mat.rows[i], basis.elements)
            if lhs != rhs:
                raise MismatchError(
                    f"action mismatch for {letter} on basis row {i}",
                    witness=(letter, i),
                )
    return {"m": m, "checked": list(letters), "rows": len(basis)}


def check_extended_action(m: int, ns=(5, 7, 11)) -> dict:
    """Verify the doubled module: on the basis (stage basis, then its
    u-translates) tau acts as the block swap, a as diag(a, a**-1) and
    each s_i diagonally; also certifies independence of the doubled
    basis by specialization."""
    if not 3 <= m <= 8:
        raise ValueError(f"need 3 <= m <= 8, got {m}")
    basis = spinor_basis(m)
    pin = PinRep(m, "qe")
    eta = SpinorRep(m)
    u = pin.image(TAU)
    elems = list(basis.elements) + [x * u for x in basis.elements]
    independence_certificate(elems, ns=ns)
    half = len(basis)
    ident = _id_rows(half)
    zero = _zero_rows(half)
    expected = {
        TAU: _block2(zero, ident, ident, zero),
        A: _block2(eta.image(A).rows, zero, zero, eta.image(A_INV).rows),
    }
    for i in range(1, m):
        s_rows = eta.image(s_letter(i)).rows
        expected[s_letter(i)] = _block2(s_rows, zero, zero, s_rows)
    for letter, mat in expected.items():
        img = pin.image(letter)
        for i, x in enumerate(elems):
            lhs = x * img
            rhs = _expand_rhs(mat.rows[i], elems)
            if lhs != rhs:
                raise MismatchError(
                    f"extended action mismatch for {letter} on row {i}",
                    witness=(letter, i),
                )
    return {"m": m, "rows": len(elems), "checked": sorted(expected)}
