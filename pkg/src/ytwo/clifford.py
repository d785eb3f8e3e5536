"""The Clifford algebra of the quadratic module, and the pin-group
representation inside it.

Basis monomials are bit masks over the ordered generators
u < v_1 < ... < v_m (bit 0 is u, bit i is v_i).  Products rewrite to
canonical ascending order with the two relations

    x_j x_i = x_i x_j + 1      (i < j; all distinct pairs pair to 1)
    u u = 1,   v_i v_i = 1/t

Each swap strictly lowers the inversion count and each square strictly
shortens the word, so rewriting terminates.  The coefficients produced
by rewriting are powers of 1/t, so the structure constants of a
monomial product are ring-independent: they are cached globally as
``{mono: polybits}`` where bit e of ``polybits`` is the coefficient of
t**-e.  An algebra instance converts polybits to its own scalar ring
(the Laurent ring, or its quadratic extension for the spinor-module
work).

The pin representation sends

    t -> u,   a -> s u v_1,   S<i> -> v_i + v_{i+1},

all of which have spinor norm c * c^tr = 1.  Conjugation v -> c^-1 v c
by such elements preserves the vector module and recovers the
transvection representation row for row.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    MismatchError,
    MixedAmbientError,
    NotCliffordGroupError,
    NotScalarError,
    NotUnitError,
)
from .presentation import A, A_INV, Representation, TAU, s_letter, st_letter
from .quadspace import RMatrix
from .rings import (
    L_ONE,
    L_ZERO,
    LaurentScalar,
    QE_ONE,
    QE_ZERO,
    QEScalar,
    S,
    T_INV,
    ff_rank,
    make_eval_map,
)

# -- monomial structure constants (shared across algebras) -----------------

_MTG_CACHE: dict = {}
_MTM_CACHE: dict = {}
_TR_CACHE: dict = {}


def _mono_times_gen(mono: int, j: int):
    """Product (monomial) * (generator j) as ((mono', e), ...) pairs,
    the coefficient of mono' being t**-e."""
    key = (mono, j)
    hit = _MTG_CACHE.get(key)
    if hit is not None:
        return hit
    bit = 1 << j
    if mono == 0:
        out = ((bit, 0),)
    else:
        k = mono.bit_length() - 1
        if k < j:
            out = ((mono | bit, 0),)
        elif k == j:
            out = ((mono ^ bit, 0 if j == 0 else 1),)
        else:
            top = 1 << k
            rest = mono ^ top
            out = tuple((m2 | top, e) for m2, e in _mono_times_gen(rest, j))
            out += ((rest, 0),)
    _MTG_CACHE[key] = out
    return out


def _fold_gen(state: dict, j: int) -> dict:
    nxt: dict = {}
    for mono, poly in state.items():
        for m2, e in _mono_times_gen(mono, j):
            pb = poly << e
            cur = nxt.get(m2, 0) ^ pb
            if cur:
                nxt[m2] = cur
            elif m2 in nxt:
                del nxt[m2]
    return nxt


def _mono_times_mono(p: int, q: int) -> dict:
    """Product of two monomials as a {mono: polybits} dict."""
    key = (p, q)
    hit = _MTM_CACHE.get(key)
    if hit is not None:
        return hit
    state = {p: 1}
    qq = q
    while qq:
        low = qq & -qq
        state = _fold_gen(state, low.bit_length() - 1)
        qq ^= low
    _MTM_CACHE[key] = state
    return state


def _mono_transpose(mono: int) -> dict:
    """The reversed product of a monomial's generators, canonicalized."""
    hit = _TR_CACHE.get(mono)
    if hit is not None:
        return hit
    bits = []
    mm = mono
    while mm:
        low = mm & -mm
        bits.append(low.bit_length() - 1)
        mm ^= low
    state = {0: 1}
    for j in reversed(bits):
        state = _fold_gen(state, j)
    _TR_CACHE[mono] = state
    return state


# -- the algebra ------------------------------------------------------------


class CliffordAlgebra:
    """Clifford algebra on u, v_1..v_m over "laurent" or "qe" scalars."""

    def __init__(self, m: int, ring: str = "laurent"):
        if m < 3:
            raise ValueError(f"need m >= 3, got {m}")
        if ring not in ("laurent", "qe"):
            raise ValueError(f"unknown scalar ring {ring!r}")
        self.m = m
        self.ring = ring
        if ring == "laurent":
            self.scalar_zero = L_ZERO
            self.scalar_one = L_ONE
        else:
            self.scalar_zero = QE_ZERO
            self.scalar_one = QE_ONE
        self._polybits_cache = {1: self.scalar_one}
        self.zero = CliffordElement(self, {})
        self.one = CliffordElement(self, {0: self.scalar_one})

    def lift(self, c: LaurentScalar):
        """Coerce a Laurent scalar into this algebra's scalar ring."""
        if self.ring == "laurent":
            return c
        return QEScalar.from_laurent(c)

    def _scalar_from_polybits(self, pb: int):
        hit = self._polybits_cache.get(pb)
        if hit is not None:
            return hit
        exps = []
        e = 0
        v = pb
        while v:
            if v & 1:
                exps.append(-2 * e)
            v >>= 1
            e += 1
        val = self.lift(LaurentScalar.from_exponents(exps))
        self._polybits_cache[pb] = val
        return val

    def scalar(self, c) -> "CliffordElement":
        if isinstance(c, LaurentScalar):
            c = self.lift(c)
        return CliffordElement(self, {0: c} if c else {})

    def gen(self, i: int) -> "CliffordElement":
        """Generator i of the vector module: 0 is u, 1..m are the v_i."""
        if not 0 <= i <= self.m:
            raise IndexError(f"generator index {i} out of range 0..{self.m}")
        return CliffordElement(self, {1 << i: self.scalar_one})

    def u(self) -> "CliffordElement":
        return self.gen(0)

    def v(self, i: int) -> "CliffordElement":
        if not 1 <= i <= self.m:
            raise IndexError(f"v-index {i} out of range 1..{self.m}")
        return self.gen(i)

    def vector(self, coeffs) -> "CliffordElement":
        coeffs = tuple(coeffs)
        if len(coeffs) != self.m + 1:
            raise ValueError("need one coefficient per generator")
        terms = {}
        for i, c in enumerate(coeffs):
            if isinstance(c, LaurentScalar):
                c = self.lift(c)
            if c:
                terms[1 << i] = c
        return CliffordElement(self, terms)

    def from_terms(self, terms: dict) -> "CliffordElement":
        clean = {}
        for mono, c in terms.items():
            if isinstance(c, LaurentScalar):
                c = self.lift(c)
            if c:
                clean[mono] = c
        return CliffordElement(self, clean)

    def radical_element(self) -> "CliffordElement":
        """u + v_1 + ... + v_m embedded in the algebra."""
        return self.vector((self.scalar_one,) * (self.m + 1))

    def __eq__(self, other):
        return (
            isinstance(other, CliffordAlgebra)
            and self.m == other.m
            and self.ring == other.ring
        )

    def __hash__(self):
        return hash((self.m, self.ring))

    def __repr__(self):
        return f"CliffordAlgebra(m={self.m}, ring={self.ring!r})"


_ALGEBRAS: dict = {}


def get_algebra(m: int, ring: str = "laurent") -> CliffordAlgebra:
    key = (m, ring)
    alg = _ALGEBRAS.get(key)
    if alg is None:
        alg = _ALGEBRAS[key] = CliffordAlgebra(m, ring)
    return alg


class CliffordElement:
    """A finite scalar combination of basis monomials, kept canonical."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: CliffordAlgebra, terms: dict):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("CliffordElement is immutable")

    def _check_ambient(self, other):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise MixedAmbientError(
                f"cannot combine {self.algebra!r} with {other.algebra!r}"
            )

    def __add__(self, other):
        self._check_ambient(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            cur = out.get(mono)
            cur = c if cur is None else cur + c
            if cur:
                out[mono] = cur
            elif mono in out:
                del out[mono]
        return CliffordElement(self.algebra, out)

    __sub__ = __add__

    def __mul__(self, other):
        self._check_ambient(other)
        alg = self.algebra
        ringify = alg._scalar_from_polybits
        out: dict = {}
        for p, cp in self.terms.items():
            for q, cq in other.terms.items():
                c = cp * cq
                if not c:
                    continue
                for mono, poly in _mono_times_mono(p, q).items():
                    add = c if poly == 1 else c * ringify(poly)
                    cur = out.get(mono)
                    cur = add if cur is None else cur + add
                    if cur:
                        out[mono] = cur
                    elif mono in out:
                        del out[mono]
        return CliffordElement(alg, out)

    def __pow__(self, k: int):
        if k < 0:
            return cl_inverse(self) ** (-k)
        result = self.algebra.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "CliffordElement":
        if isinstance(c, LaurentScalar) and self.algebra.ring == "qe":
            c = QEScalar.from_laurent(c)
        if not c:
            return self.algebra.zero
        return CliffordElement(
            self.algebra, {mono: c * v for mono, v in self.terms.items()}
        )

    def transpose(self) -> "CliffordElement":
        alg = self.algebra
        ringify = alg._scalar_from_polybits
        out: dict = {}
        for mono, c in self.terms.items():
            for m2, poly in _mono_transpose(mono).items():
                add = c if poly == 1 else c * ringify(poly)
                cur = out.get(m2)
                cur = add if cur is None else cur + add
                if cur:
                    out[m2] = cur
                elif m2 in out:
                    del out[m2]
        return CliffordElement(alg, out)

    # -- views -------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_scalar(self):
        return not self.terms or set(self.terms) == {0}

    def scalar_part(self):
        return self.terms.get(0, self.algebra.scalar_zero)

    @property
    def is_identity(self):
        return set(self.terms) == {0} and self.terms[0].is_one

    def parity(self):
        """0 or 1 if homogeneous in the Z2-grading, else None."""
        ps = {mono.bit_count() & 1 for mono in self.terms}
        if len(ps) == 1:
            return ps.pop()
        return None if ps else 0

    @property
    def is_even(self):
        return all(mono.bit_count() & 1 == 0 for mono in self.terms)

    def as_vector(self) -> tuple:
        """Coefficients on the generators; raises if other monomials appear."""
        alg = self.algebra
        out = [alg.scalar_zero] * (alg.m + 1)
        for mono, c in self.terms.items():
            if mono.bit_count() != 1:
                raise NotCliffordGroupError(
                    f"element has a non-vector component on monomial {bin(mono)}"
                )
            out[mono.bit_length() - 1] = c
        return tuple(out)

    def monomials(self):
        return sorted(self.terms)

    def to_json(self):
        return [[mono, self.terms[mono].to_json()] for mono in sorted(self.terms)]

    def __eq__(self, other):
        return (
            isinstance(other, CliffordElement)
            and self.algebra == other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.algebra, tuple(sorted(self.terms.items()))))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            names = []
            mm = mono
            while mm:
                low = mm & -mm
                i = low.bit_length() - 1
                names.append("u" if i == 0 else f"v{i}")
                mm ^= low
            word = "*".join(names) if names else "1"
            cs = str(c)
            if not names:
                parts.append(cs)
            elif cs == "1":
                parts.append(word)
            elif "+" in cs or " " in cs:
                parts.append(f"({cs})*{word}")
            else:
                parts.append(f"{cs}*{word}")
        return " + ".join(parts)

    def __repr__(self):
        return f"CliffordElement<{self}>"


# -- pin representation ------------------------------------------------------


class PinRep(Representation):
    """Letter images inside the Clifford algebra (see module docstring)."""

    name = "pin"

    def __init__(self, m: int, ring: str = "laurent"):
        alg = get_algebra(m, ring)
        self.algebra = alg
        s_elem = alg.scalar(S)
        u = alg.u()
        images = {
            TAU: u,
            A: s_elem * u * alg.v(1),
            A_INV: s_elem * alg.v(1) * u,
        }
        for i in range(1, m):
            pair = alg.v(i) + alg.v(i + 1)
            images[st_letter(i)] = pair
            images[s_letter(i)] = u * pair
        super().__init__(images, alg.one)


def spinor_norm(c: CliffordElement):
    """The scalar c * c^tr; raises NotScalarError if it is not scalar."""
    prod = c * c.transpose()
    if not prod.is_scalar:
        raise NotScalarError("spinor norm is not a pure scalar", element=prod)
    return prod.scalar_part()


def cl_inverse(c: CliffordElement) -> CliffordElement:
    """Inverse via the conjugation-norm trick (covers the Clifford group:
    if c * c^tr is a unit scalar, the inverse is c^tr / (c * c^tr))."""
    alg = c.algebra
    cbar = c.transpose()
    z = c * cbar
    if not z.is_scalar:
        z = cbar * c
        if not z.is_scalar:
            raise NotUnitError("element norm is not scalar; inverse unavailable")
    try:
        nu_inv = z.scalar_part().inverse()
    except Exception as exc:
        raise NotUnitError(f"norm {z.scalar_part()} is not a unit") from exc
    cand = cbar.scale(nu_inv)
    if not (cand * c).is_identity or not (c * cand).is_identity:
        raise NotUnitError("candidate inverse failed verification")
    return cand


def conjugation_matrix(c: CliffordElement) -> RMatrix:
    """Matrix of v -> c^-1 v c on the vector module (rows are images)."""
    alg = c.algebra
    c_inv = cl_inverse(c)
    rows = []
    for i in range(alg.m + 1):
        y = c_inv * alg.gen(i) * c
        rows.append(y.as_vector())
    return RMatrix(rows)


# -- power identities --------------------------------------------------------


@dataclass(frozen=True)
class PowerSeq:
    """The coefficient pair of (u v_i)**k = a_k + b_k u v_i."""

    k: int
    a: LaurentScalar
    b: LaurentScalar


def power_sequences(kmax: int) -> list:
    """PowerSeq values for k = 0..kmax via a_k = a_{k-1} + a_{k-2}/t."""
    if kmax < 0:
        raise ValueError("need kmax >= 0")
    a_prev, a_cur = L_ONE, L_ZERO  # a_0, a_1
    b_prev, b_cur = L_ZERO, L_ONE  # b_0, b_1
    out = [PowerSeq(0, a_prev, b_prev)]
    if kmax >= 1:
        out.append(PowerSeq(1, a_cur, b_cur))
    for k in range(2, kmax + 1):
        a_prev, a_cur = a_cur, a_cur + T_INV * a_prev
        b_prev, b_cur = b_cur, b_cur + T_INV * b_prev
        out.append(PowerSeq(k, a_cur, b_cur))
    return out


def check_power_identities(k: int, m: int = 3) -> PowerSeq:
    """Verify (u v_i)**k = a_k + b_k u v_i, its v_i u mirror, and the
    exchange identity (v_1 u)**k (v_2 u)**k = (u v_2)**k (u v_1)**k, all
    by direct algebra powering; returns the coefficient pair."""
    seq = power_sequences(k)[k]
    alg = get_algebra(m, "laurent")
    u = alg.u()
    for i in (1, 2):
        uv = u * alg.v(i)
        vu = alg.v(i) * u
        want_uv = alg.scalar(seq.a) + uv.scale(seq.b)
        want_vu = alg.scalar(seq.a) + vu.scale(seq.b)
        if uv ** k != want_uv:
            raise MismatchError(f"(u v{i})^{k} != a_k + b_k u v{i}")
        if vu ** k != want_vu:
            raise MismatchError(f"(v{i} u)^{k} != a_k + b_k v{i} u")
    lhs = (alg.v(1) * u) ** k * (alg.v(2) * u) ** k
    rhs = (u * alg.v(2)) ** k * (u * alg.v(1)) ** k
    if lhs != rhs:
        raise MismatchError(f"exchange identity failed at k={k}")
    return seq


# -- centre and kernel -------------------------------------------------------


@dataclass
class CenterReport:
    m: int
    radical_is_central: bool
    witness: str | None
    specialized_dim: int
    map_desc: dict


def center_report(m: int, n: int = 5) -> CenterReport:
    """Symbolic centrality of 1 and r = u + v_1 + ... + v_m, plus the
    centre dimension of the algebra specialized at the order-n map.

    The dimension is computed by exact linear algebra: z is central iff
    it commutes with every generator, a linear condition on the 2**(m+1)
    monomial coefficients; the nullity over GF(2**d) is read off a GF(2)
    blow-up elimination.
    """
    if not 3 <= m <= 8:
        raise ValueError(f"need 3 <= m <= 8, got {m}")
    alg = get_algebra(m, "laurent")
    r = alg.radical_element()
    witness = None
    radical_central = True
    for i in range(m + 1):
        g = alg.gen(i)
        if r * g + g * r:
            radical_central = False
            witness = "u" if i == 0 else f"v{i}"
            break
    emap = make_eval_map(n)
    field = emap.field
    ncols = 1 << (m + 1)
    t_inv_bits = emap.t_image.inverse().bits

    def ff_bits(polybits: int) -> int:
        bits = 0
        e = 0
        v = polybits
        while v:
            if v & 1:
                bits ^= field.pow_bits(t_inv_bits, e)
            v >>= 1
            e += 1
        return bits

    rows: dict = {}
    for j in range(m + 1):
        gbit = 1 << j
        for col in range(ncols):
            comm: dict = {}
            for mono, e in _mono_times_gen(col, j):
                comm[mono] = comm.get(mono, 0) ^ (1 << e)
            for mono, poly in _mono_times_mono(gbit, col).items():
                cur = comm.get(mono, 0) ^ poly
                comm[mono] = cur
            for mono, poly in comm.items():
                if not poly:
                    continue
                v = ff_bits(poly)
                if v:
                    row = rows.setdefault((j, mono), [0] * ncols)
                    row[col] ^= v
    matrix = [[field.element(v) for v in row] for row in rows.values()]
    rank = ff_rank(field, matrix)
    return CenterReport(
        m=m,
        radical_is_central=radical_central,
        witness=witness,
        specialized_dim=ncols - rank,
        map_desc=emap.describe(),
    )


def kernel_element(m: int, lam: LaurentScalar) -> CliffordElement:
    """A norm-one central element: 1 + lam*r when m = 2 mod 4 (q(r) = 0)
    and 1 + lam*(1 + r) when m = 0 mod 4 (q(r) = 1).  Verified to have
    spinor norm 1 and to conjugate every vector trivially."""
    if m % 2:
        raise ValueError(f"kernel elements exist only for even m, got {m}")
    alg = get_algebra(m, "laurent")
    r = alg.radical_element()
    core = r if m % 4 == 2 else alg.one + r
    z = alg.one + core.scale(lam)
    norm = spinor_norm(z)
    if not norm.is_one:
        raise MismatchError(f"kernel candidate has spinor norm {norm}")
    if not conjugation_matrix(z).is_identity:
        raise MismatchError("kernel candidate does not centralize the module")
    return z
