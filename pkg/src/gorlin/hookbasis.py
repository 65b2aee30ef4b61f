"""Standard bases of the free modules in the resolution, and their combinatorics.

The free module in homological degree r (1 <= r <= d-1) has a basis of two
kinds of elements indexed by a strictly increasing list a_1 < ... < a_r in
[2, d] and a monomial m in x2..xd:

  X(r; a; m): deg m = n, and [2, least(m)] is contained in {a_1..a_r};
  Y(r; a; m): deg m = n-1, and a_1 <= least(m).

Degree 0 has the single generator Y0, degree d the single generator Xd.
This module provides enumeration, rank formulas, the straightening of
elementary wedge generators into the standard basis, the Koszul blocks of
the skeleton, and the perfect-pairing duality between bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .monomials import (
    Mono,
    degree,
    div_var,
    least,
    monomials_of_degree,
    mul_var,
    unit,
    var_divides,
)
from .polynomials import Poly


def gamma_of(a: tuple[int, ...]) -> int:
    """Largest g with [2, g] contained in the index list a (g = 1 when 2 is absent)."""
    g = 1
    for i, ai in enumerate(a):
        if ai == i + 2:
            g = ai
        else:
            break
    return g


@dataclass(frozen=True)
class BasisElement:
    """One standard basis element of the free module in homological degree r."""

    kind: str  # "X" or "Y"
    r: int
    a: tuple[int, ...]
    m: Mono

    @property
    def d(self) -> int:
        return len(self.m)

    def __post_init__(self):
        d = len(self.m)
        if self.kind not in ("X", "Y"):
            raise ValueError(f"kind must be X or Y, got {self.kind}")
        if self.kind == "Y" and self.r == 0:
            if self.a != () or degree(self.m) != 0:
                raise ValueError("the degree-0 generator is Y with empty index list and monomial 1")
            return
        if self.kind == "X" and self.r == d:
            if self.a != tuple(range(2, d + 1)) or degree(self.m) != 0:
                raise ValueError("the degree-d generator is X with full index list and monomial 1")
            return
        if not 1 <= self.r <= d - 1:
            raise ValueError(f"homological degree {self.r} out of range for kind {self.kind}")
        if len(self.a) != self.r or any(x >= y for x, y in zip(self.a, self.a[1:])):
            raise ValueError(f"index list {self.a} is not strictly increasing of length {self.r}")
        if self.a[0] < 2 or self.a[-1] > d:
            raise ValueError(f"index list {self.a} out of range [2, {d}]")
        if var_divides(1, self.m):
            raise ValueError(f"monomial {self.m} must avoid x1")
        if self.kind == "X":
            if least(self.m) > gamma_of(self.a):
                raise ValueError(f"X element {self.a}, {self.m}: [2, least(m)] not contained in index list")
        else:
            if least(self.m) < self.a[0]:
                raise ValueError(f"Y element {self.a}, {self.m}: least(m) smaller than a1")

    def text(self) -> str:
        idx = ",".join(str(x) for x in self.a)
        return f"{self.kind}({self.r}; {idx}; {list(self.m)})"

    def __repr__(self) -> str:
        return self.text()


def y0(d: int) -> BasisElement:
    return BasisElement("Y", 0, (), unit(d))


def xd(d: int) -> BasisElement:
    return BasisElement("X", d, tuple(range(2, d + 1)), unit(d))


Signed = tuple[int, BasisElement]


@dataclass(frozen=True)
class OrderedBasis:
    """An ordered, signed basis of the free module in homological degree r."""

    d: int
    n: int
    r: int
    elements: tuple[Signed, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def labels(self) -> list[str]:
        return [(e.text() if s > 0 else f"-{e.text()}") for s, e in self.elements]

    def position(self) -> dict[BasisElement, tuple[int, int]]:
        """Map element -> (index, sign)."""
        return {e: (i, s) for i, (s, e) in enumerate(self.elements)}

    def x_part(self) -> "OrderedBasis":
        return OrderedBasis(self.d, self.n, self.r, tuple((s, e) for s, e in self.elements if e.kind == "X"))

    def y_part(self) -> "OrderedBasis":
        return OrderedBasis(self.d, self.n, self.r, tuple((s, e) for s, e in self.elements if e.kind == "Y"))


def rank_formulas(d: int, n: int, r: int) -> tuple[int, int, int]:
    """(k_r, l_r, beta_r): ranks of the X block, the Y block, and their sum."""
    if not 1 <= r <= d - 1:
        raise ValueError(f"r={r} out of range 1..{d - 1}")
    k = comb(d + n - 2, r - 1) * comb(d + n - r - 2, n - 1)
    ell = comb(d + n - 2, r - 1 + n) * comb(r + n - 2, r - 1)
    beta_num = (2 * n + d - 2) * comb(n + d - 2, r - 1) * comb(n + d - r - 2, n - 1)
    beta, rem = divmod(beta_num, n + r - 1)
    assert rem == 0 and beta == k + ell
    return k, ell, beta


@lru_cache(maxsize=None)
def enumerate_basis(d: int, n: int, r: int) -> OrderedBasis:
    """The standard basis, X block then Y block, each ordered by index list then monomial."""
    if not 0 <= r <= d:
        raise ValueError(f"r={r} out of range 0..{d}")
    if r == 0:
        return OrderedBasis(d, n, 0, ((1, y0(d)),))
    if r == d:
        return OrderedBasis(d, n, d, ((1, xd(d)),))
    elems: list[Signed] = []
    for a in combinations(range(2, d + 1), r):
        g = gamma_of(a)
        for m in monomials_of_degree(d, n, low_var=2):
            if least(m) <= g:
                elems.append((1, BasisElement("X", r, a, m)))
    for a in combinations(range(2, d + 1), r):
        for m in monomials_of_degree(d, n - 1, low_var=a[0]):
            elems.append((1, BasisElement("Y", r, a, m)))
    k, ell, beta = rank_formulas(d, n, r)
    assert len(elems) == beta
    return OrderedBasis(d, n, r, tuple(elems))


def expand_eta(c: tuple[int, ...], m: Mono) -> list[tuple[int, BasisElement]]:
    """Straighten the elementary generator eta(x_{c_1}^..^x_{c_s} (x) m^*) into X elements.

    c is strictly increasing in [2, d]; m has degree n in x2..xd; the result
    is a signed integer combination of standard X elements of homological
    degree s = len(c).
    """
    s = len(c)
    g = gamma_of(c)
    if least(m) <= g:
        return [(1, BasisElement("X", s, c, m))]
    out: list[tuple[int, BasisElement]] = []
    # insert g+1 after the prefix [2, g], drop c_k, move x_{g+1} into the monomial
    for k in range(g, s + 1):  # 1-based position within c
        ck = c[k - 1]
        if not var_divides(ck, m):
            continue
        new_a = c[:g - 1] + (g + 1,) + tuple(x for x in c[g - 1:] if x != ck)
        new_m = mul_var(div_var(m, ck), g + 1)
        out.append(((-1) ** (k + g), BasisElement("X", s, new_a, new_m)))
    return out


def expand_kappa(c: tuple[int, ...], m: Mono) -> list[tuple[int, BasisElement]]:
    """Straighten kappa(x_{c_1}^..^x_{c_s} (x) m) into standard Y elements."""
    s = len(c)
    lm = least(m)
    if c[0] <= lm:
        return [(1, BasisElement("Y", s, c, m))]
    out: list[tuple[int, BasisElement]] = []
    m_red = div_var(m, lm)
    for k in range(1, s + 1):
        new_a = (lm,) + c[:k - 1] + c[k:]
        new_m = mul_var(m_red, c[k - 1])
        out.append(((-1) ** (k + 1), BasisElement("Y", s, new_a, new_m)))
    return out


def kos_expansion(elt: BasisElement) -> dict[BasisElement, Poly]:
    """The Koszul contraction on the wedge factor, straightened into the standard basis.

    This is the map whose d-1 variable blocks make up the skeleton of the
    resolution (without the determinant factor); the sign normalization is
    (-1)^j on the j-th wedge slot.
    """
    d = elt.d
    out: dict[BasisElement, Poly] = {}
    expand = expand_eta if elt.kind == "X" else expand_kappa
    for j in range(1, elt.r + 1):
        aj = elt.a[j - 1]
        rest = elt.a[:j - 1] + elt.a[j:]
        sign = (-1) ** j
        for coeff, target in expand(rest, elt.m):
            p = out.setdefault(target, Poly.zero(d))
            p.add_term(mul_var(unit(d), aj), Fraction(sign * coeff))
    return {t: p for t, p in out.items() if not p.is_zero()}


def skeleton_kos_blocks(d: int, n: int, r: int):
    """Matrices of the Koszul contraction on the X and Y blocks, degree r -> r-1.

    Entries are linear forms in x2..xd in the enumerate_basis orderings;
    the caller supplies any overall scalar factor.  Returns (K_block, L_block).
    """
    from .polymatrix import PolyMatrix

    if not 2 <= r <= d - 1:
        raise ValueError(f"r={r} out of range 2..{d - 1}")
    blocks = []
    for part in ("X", "Y"):
        rows = enumerate_basis(d, n, r - 1)
        cols = enumerate_basis(d, n, r)
        rows = rows.x_part() if part == "X" else rows.y_part()
        cols = cols.x_part() if part == "X" else cols.y_part()
        pos = rows.position()
        entries = [[Poly.zero(d) for _ in range(len(cols))] for _ in range(len(rows))]
        for j, (_, col_elt) in enumerate(cols):
            for target, p in kos_expansion(col_elt).items():
                i, s = pos[target]
                entries[i][j] = p.scale(s)
        blocks.append(PolyMatrix(rows=rows, cols=cols, entries=entries))
    return blocks[0], blocks[1]


def wedge_sign(seq: tuple[int, ...]) -> int:
    """Sign of the permutation sorting seq ascending; 0 when seq has repeats."""
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def pp_value(e1: BasisElement, e2: BasisElement) -> int:
    """Coefficient of the top generator in the perfect pairing of e1 (x) e2.

    e1 lives in homological degree r, e2 in degree d - r.
    """
    d = e1.d
    if e1.r + e2.r != d:
        raise ValueError(f"pairing needs complementary degrees, got {e1.r} and {e2.r}")
    if e1.r == 0 or e1.r == d:
        return 1
    if e1.kind == e2.kind:
        return 0
    if e1.kind == "Y":
        y, x, flip_sign = e1, e2, 1
        seq = y.a[1:] + x.a
    else:
        x, y, flip_sign = e1, e2, (-1) ** e1.r
        seq = x.a + y.a[1:]
    if not var_divides(y.a[0], x.m) or div_var(x.m, y.a[0]) != y.m:
        return 0
    return flip_sign * wedge_sign(seq)


def pp_dual_element(e: BasisElement) -> tuple[int, BasisElement]:
    """The unique signed partner f with pp(e (x) f) = +1 (the top generator)."""
    d = e.d
    if e.r == 0:
        return 1, xd(d)
    if e.r == d:
        return 1, y0(d)
    if e.kind == "Y":
        tail = tuple(sorted(set(range(2, d + 1)) - set(e.a[1:])))
        partner = BasisElement("X", d - e.r, tail, mul_var(e.m, e.a[0]))
    else:
        head = least(e.m)
        tail = tuple(sorted(set(range(2, d + 1)) - set(e.a)))
        partner = BasisElement("Y", d - e.r, tuple(sorted((head,) + tail)), div_var(e.m, head))
    v = pp_value(e, partner)
    assert v in (1, -1)
    return v, partner


def pp_dual_basis(basis: OrderedBasis) -> OrderedBasis:
    """The ordered signed basis of the complementary module dual to the given one."""
    out: list[Signed] = []
    for s, e in basis.elements:
        v, partner = pp_dual_element(e)
        out.append((s * v, partner))
    return OrderedBasis(basis.d, basis.n, basis.d - basis.r, tuple(out))


def dual_ordered_basis(d: int, n: int, r: int) -> OrderedBasis:
    """The basis of degree d - r dual to enumerate_basis(d, n, r) under the pairing."""
    return pp_dual_basis(enumerate_basis(d, n, r))


@lru_cache(maxsize=None)
def duality_basis(d: int, n: int, r: int) -> OrderedBasis:
    """Self-dual family of ordered bases: raw below the middle, pairing-dual above.

    For even d the middle basis keeps its X block in the raw order and
    completes the Y block as the pairing-dual of that X block, so that
    all pairing matrices between these bases are identities.
    """
    if not 0 <= r <= d:
        raise ValueError(f"r={r} out of range 0..{d}")
    if 2 * r < d:
        return enumerate_basis(d, n, r)
    if 2 * r > d:
        return pp_dual_basis(duality_basis(d, n, d - r))
    xs = enumerate_basis(d, n, r).x_part()
    duals = pp_dual_basis(xs)
    return OrderedBasis(d, n, r, xs.elements + duals.elements)
