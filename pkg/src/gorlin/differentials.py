"""Construction of the resolution matrices from an admissible inverse system.

Two independent routes are provided.  The production route writes each
column of the interior differentials directly in the standard basis using
the closed-form coefficient sums in t and Q.  The alternative route applies
the contraction formulas to elementary wedge generators and straightens the
result with expand_eta / expand_kappa; it exists as a cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hookbasis import (
    BasisElement,
    OrderedBasis,
    duality_basis,
    enumerate_basis,
    expand_eta,
    expand_kappa,
    gamma_of,
    pp_value,
)
from .invsys import Catalecticant, InadmissibleSystemError, InverseSystem, delta_and_Q
from .monomials import (
    Mono,
    div_var,
    least,
    monomials_of_degree,
    mul,
    mul_var,
    unit,
    var_divides,
)
from .polymatrix import PolyMatrix
from .polynomials import Poly


class BuildContext:
    """Shared catalecticant data and memoized coefficient sums for one build."""

    def __init__(self, phi: InverseSystem, cat: Catalecticant | None = None):
        self.phi = phi
        self.cat = cat if cat is not None else delta_and_Q(phi)
        self.d = phi.d
        self.n = phi.n
        self.delta = self.cat.delta
        self.nm1_all = monomials_of_degree(phi.d, phi.n - 1)
        self.nm2_all = monomials_of_degree(phi.d, phi.n - 2)
        self._tq: dict[tuple[Mono, Mono], Fraction] = {}
        self._w: dict[tuple[Mono, Mono], Fraction] = {}
        self._qrow: dict[Mono, Poly] = {}
        self._ycorr: dict[Mono, Poly] = {}

    def Q(self, m1: Mono, m2: Mono) -> Fraction:
        return self.cat.q_entry(m1, m2)

    def tq(self, u: Mono, w: Mono) -> Fraction:
        """sum over m2 of degree n-2 of t_{u*m2} * Q[w, x1*m2]  (u deg n, w deg n-1)."""
        key = (u, w)
        val = self._tq.get(key)
        if val is None:
            t = self.phi.t
            val = Fraction(0)
            for m2 in self.nm2_all:
                c = t(mul(u, m2))
                if c:
                    val += c * self.Q(w, mul_var(m2, 1))
            self._tq[key] = val
        return val

    def W(self, u: Mono, v: Mono) -> Fraction:
        """double sum of Q[x1*m1, x1*m2] t_{u*m2} t_{v*m1} over degree-(n-2) pairs."""
        key = (u, v)
        val = self._w.get(key)
        if val is None:
            t = self.phi.t
            val = Fraction(0)
            for m1 in self.nm2_all:
                cv = t(mul(v, m1))
                if not cv:
                    continue
                x1m1 = mul_var(m1, 1)
                inner = Fraction(0)
                for m2 in self.nm2_all:
                    cu = t(mul(u, m2))
                    if cu:
                        inner += cu * self.Q(x1m1, mul_var(m2, 1))
                val += cv * inner
            self._w[key] = val
            self._w[(v, u)] = val
        return val

    def q_row_poly(self, w: Mono) -> Poly:
        """sum over m1 of degree n-1 of Q[m1, w] * m1, a polynomial of degree n-1."""
        p = self._qrow.get(w)
        if p is None:
            p = Poly.zero(self.d)
            for m1 in self.nm1_all:
                c = self.Q(m1, w)
                if c:
                    p.add_term(m1, c)
            self._qrow[w] = p
        return p

    def y_correction(self, u: Mono) -> Poly:
        """sum over m2 of degree n-1 of tq(u, m2) * m2 (the x1 part of a socle column)."""
        p = self._ycorr.get(u)
        if p is None:
            p = Poly.zero(self.d)
            for m2 in self.nm1_all:
                c = self.tq(u, m2)
                if c:
                    p.add_term(m2, c)
            self._ycorr[u] = p
        return p


def _times_x1(p: Poly) -> Poly:
    return Poly(p.d, {mul_var(m, 1): c for m, c in p.terms.items()})


def _add(out: dict[BasisElement, Poly], target: BasisElement, p: Poly) -> None:
    if p.is_zero():
        return
    cur = out.get(target)
    out[target] = p if cur is None else cur + p


def _x1_term(d: int, c: Fraction) -> Poly:
    return Poly(d, {mul_var(unit(d), 1): c}) if c else Poly.zero(d)


def _var_term(d: int, i: int, c: Fraction) -> Poly:
    return Poly(d, {mul_var(unit(d), i): c}) if c else Poly.zero(d)


def b1_column(ctx: BuildContext, elt: BasisElement) -> Poly:
    """The degree-n generator of the ideal attached to a degree-1 basis element."""
    a1 = elt.a[0]
    if elt.kind == "X":
        return _times_x1(ctx.q_row_poly(div_var(elt.m, a1)))
    u = mul_var(elt.m, a1)
    return Poly.monomial(u, ctx.delta) - _times_x1(ctx.y_correction(u))


def b1_matrix(phi: InverseSystem) -> PolyMatrix:
    """The first differential as a 1 x beta_1 matrix in the standard basis.

    Well defined for every inverse system, including inadmissible ones
    (delta = 0 only degrades the columns, it does not break the formulas).
    """
    ctx = BuildContext(phi)
    rows = enumerate_basis(phi.d, phi.n, 0)
    cols = enumerate_basis(phi.d, phi.n, 1)
    entries = [[b1_column(ctx, e).scale(s) for s, e in cols]]
    return PolyMatrix(rows=rows, cols=cols, entries=entries)


def bd_matrix(phi: InverseSystem) -> PolyMatrix:
    """The last differential as a beta_{d-1} x 1 matrix in the standard basis."""
    ctx = BuildContext(phi)
    rows = enumerate_basis(phi.d, phi.n, phi.d - 1)
    cols = enumerate_basis(phi.d, phi.n, phi.d)
    data = bd_rows(ctx)
    entries = [[data.get(e, Poly.zero(phi.d)).scale(s)] for s, e in rows]
    return PolyMatrix(rows=rows, cols=cols, entries=entries)


def br_column_X(ctx: BuildContext, r: int, elt: BasisElement) -> dict[BasisElement, Poly]:
    """Column of the interior differential on an X generator, in the standard basis."""
    if not 2 <= r <= ctx.d - 1 or elt.kind != "X" or elt.r != r:
        raise ValueError(f"invalid X generator for degree {r}: {elt}")
    d, delta = ctx.d, ctx.delta
    a, m = elt.a, elt.m
    g = gamma_of(a)
    lm = least(m)
    out: dict[BasisElement, Poly] = {}

    # X targets, coefficient x1 times a rational
    for ell in range(2, g + 1):
        for k in range(ell, r + 1):
            ak = a[k - 1]
            rest = a[:k - 1] + a[k:]
            for m2 in monomials_of_degree(d, ctx.n - 1, low_var=ell):
                c = Fraction(0)
                if var_divides(ak, m):
                    c += ctx.tq(mul_var(m2, ell), div_var(m, ak))
                if var_divides(ell, m):
                    c -= ctx.tq(mul_var(m2, ak), div_var(m, ell))
                if c:
                    target = BasisElement("X", r - 1, rest, mul_var(m2, ell))
                    _add(out, target, _x1_term(d, (-1) ** k * c))
    for j in range(g, r + 1):
        for k in range(j + 1, r + 1):
            aj, ak = a[j - 1], a[k - 1]
            prefix = a[:g - 1] + (g + 1,)
            rest = prefix + tuple(x for x in a[g - 1:] if x != aj and x != ak)
            for m2 in monomials_of_degree(d, ctx.n - 1, low_var=g + 1):
                c = Fraction(0)
                if var_divides(ak, m):
                    c += ctx.tq(mul_var(m2, aj), div_var(m, ak))
                if var_divides(aj, m):
                    c -= ctx.tq(mul_var(m2, ak), div_var(m, aj))
                if c:
                    target = BasisElement("X", r - 1, rest, mul_var(m2, g + 1))
                    _add(out, target, _x1_term(d, (-1) ** (g + j + k) * c))

    # X targets, coefficient delta times a variable
    for j in range(1, lm):
        aj = a[j - 1]
        for k in range(j + 1, r + 1):
            ak = a[k - 1]
            if var_divides(ak, m):
                target = BasisElement("X", r - 1, a[:k - 1] + a[k:], mul_var(div_var(m, ak), aj))
                _add(out, target, _var_term(d, aj, (-1) ** (k + 1) * delta))
    for j in range(lm, r + 1):
        aj = a[j - 1]
        target = BasisElement("X", r - 1, a[:j - 1] + a[j:], m)
        _add(out, target, _var_term(d, aj, (-1) ** j * delta))

    # Y targets, coefficient x1 times a rational
    a1 = elt.a[0]
    x_a1_divides_m = var_divides(a1, m)
    for k in range(2, r + 1):
        ak = a[k - 1]
        rest = a[:k - 1] + a[k:]
        for m1 in monomials_of_degree(d, ctx.n - 1, low_var=a1):
            c = Fraction(0)
            if var_divides(ak, m):
                c += ctx.Q(m1, div_var(m, ak))
            if var_divides(ak, m1) and x_a1_divides_m:
                c -= ctx.Q(div_var(mul_var(m1, a1), ak), div_var(m, a1))
            if c:
                _add(out, BasisElement("Y", r - 1, rest, m1), _x1_term(d, (-1) ** k * c))
    if x_a1_divides_m:
        m_div_a1 = div_var(m, a1)
        for ell in range(a1 + 1, a[1]):
            for k in range(2, r + 1):
                ak = a[k - 1]
                rest = (ell,) + a[1:k - 1] + a[k:]
                for m1 in monomials_of_degree(d, ctx.n - 1, low_var=ell):
                    if not var_divides(ak, m1):
                        continue
                    c = ctx.Q(div_var(mul_var(m1, ell), ak), m_div_a1)
                    if c:
                        _add(out, BasisElement("Y", r - 1, rest, m1), _x1_term(d, (-1) ** (k + 1) * c))
        for m1 in monomials_of_degree(d, ctx.n - 1, low_var=a[1]):
            c = ctx.Q(m1, m_div_a1)
            if c:
                _add(out, BasisElement("Y", r - 1, a[1:], m1), _x1_term(d, -c))
    return {t: p for t, p in out.items() if not p.is_zero()}


def br_column_Y(ctx: BuildContext, r: int, elt: BasisElement) -> dict[BasisElement, Poly]:
    """Column of the interior differential on a Y generator, in the standard basis."""
    if not 2 <= r <= ctx.d - 1 or elt.kind != "Y" or elt.r != r:
        raise ValueError(f"invalid Y generator for degree {r}: {elt}")
    d, delta = ctx.d, ctx.delta
    a, m = elt.a, elt.m
    g = gamma_of(a)
    lm = least(m)
    a1, a2 = a[0], a[1]
    out: dict[BasisElement, Poly] = {}

    # X targets, coefficient x1 times a rational
    for ell in range(2, g + 1):
        for k in range(ell, r + 1):
            ak = a[k - 1]
            rest = a[:k - 1] + a[k:]
            for m3 in monomials_of_degree(d, ctx.n - 1, low_var=ell):
                c = ctx.W(mul_var(m, ell), mul_var(m3, ak)) - ctx.W(mul_var(m, ak), mul_var(m3, ell))
                if c:
                    target = BasisElement("X", r - 1, rest, mul_var(m3, ell))
                    _add(out, target, _x1_term(d, (-1) ** k * c))
    for j in range(g, r + 1):
        for k in range(j + 1, r + 1):
            aj, ak = a[j - 1], a[k - 1]
            prefix = a[:g - 1] + (g + 1,)
            rest = prefix + tuple(x for x in a[g - 1:] if x != aj and x != ak)
            for m3 in monomials_of_degree(d, ctx.n - 1, low_var=g + 1):
                c = ctx.W(mul_var(m, aj), mul_var(m3, ak)) - ctx.W(mul_var(m, ak), mul_var(m3, aj))
                if c:
                    target = BasisElement("X", r - 1, rest, mul_var(m3, g + 1))
                    _add(out, target, _x1_term(d, (-1) ** (j + g + k) * c))

    # Y targets, coefficient x1 times a rational
    for ell in range(2, a1):
        for j in range(1, r + 1):
            for k in range(j + 1, r + 1):
                aj, ak = a[j - 1], a[k - 1]
                rest = (ell,) + tuple(x for x in a if x != aj and x != ak)
                for m1 in monomials_of_degree(d, ctx.n - 1, low_var=ell):
                    c = Fraction(0)
                    if var_divides(aj, m1):
                        c += ctx.tq(mul_var(m, ak), div_var(mul_var(m1, ell), aj))
                    if var_divides(ak, m1):
                        c -= ctx.tq(mul_var(m, aj), div_var(mul_var(m1, ell), ak))
                    if c:
                        _add(out, BasisElement("Y", r - 1, rest, m1), _x1_term(d, (-1) ** (k + j) * c))
    for k in range(2, r + 1):
        ak = a[k - 1]
        rest = a[:k - 1] + a[k:]
        for m1 in monomials_of_degree(d, ctx.n - 1, low_var=a1):
            c = Fraction(0)
            if var_divides(ak, m1):
                c += ctx.tq(mul_var(m, a1), div_var(mul_var(m1, a1), ak))
            c -= ctx.tq(mul_var(m, ak), m1)
            if c:
                _add(out, BasisElement("Y", r - 1, rest, m1), _x1_term(d, (-1) ** k * c))
    for ell in range(a1 + 1, a2):
        for k in range(2, r + 1):
            ak = a[k - 1]
            rest = (ell,) + a[1:k - 1] + a[k:]
            for m1 in monomials_of_degree(d, ctx.n - 1, low_var=ell):
                if not var_divides(ak, m1):
                    continue
                c = ctx.tq(mul_var(m, a1), div_var(mul_var(m1, ell), ak))
                if c:
                    _add(out, BasisElement("Y", r - 1, rest, m1), _x1_term(d, (-1) ** k * c))
    for m1 in monomials_of_degree(d, ctx.n - 1, low_var=a2):
        c = ctx.tq(mul_var(m, a1), m1)
        if c:
            _add(out, BasisElement("Y", r - 1, a[1:], m1), _x1_term(d, c))

    # Y targets, coefficient delta times a variable
    for j in range(2, r + 1):
        aj = a[j - 1]
        target = BasisElement("Y", r - 1, a[:j - 1] + a[j:], m)
        _add(out, target, _var_term(d, aj, (-1) ** j * delta))
    if a2 <= lm:
        _add(out, BasisElement("Y", r - 1, a[1:], m), _var_term(d, a1, -delta))
    else:
        m_red = div_var(m, lm)
        for k in range(2, r + 1):
            ak = a[k - 1]
            rest = (lm,) + a[1:k - 1] + a[k:]
            target = BasisElement("Y", r - 1, rest, mul_var(m_red, ak))
            _add(out, target, _var_term(d, a1, -((-1) ** k) * delta))
    return {t: p for t, p in out.items() if not p.is_zero()}


def bd_rows(ctx: BuildContext) -> dict[BasisElement, Poly]:
    """Row coefficients of the last differential on the top generator."""
    d = ctx.d
    full = tuple(range(2, d + 1))
    out: dict[BasisElement, Poly] = {}
    for m in monomials_of_degree(d, ctx.n, low_var=2):
        p = Poly.monomial(m, ctx.delta) - _times_x1(ctx.y_correction(m))
        _add(out, BasisElement("X", d - 1, full, m), p)
    for m in monomials_of_degree(d, ctx.n - 1, low_var=2):
        _add(out, BasisElement("Y", d - 1, full, m), -_times_x1(ctx.q_row_poly(m)))
    return out


# ---------------------------------------------------------------------------
# Alternative route: contraction formulas on elementary generators, then
# straightening.  Used as an independent oracle for the interior columns.
# ---------------------------------------------------------------------------


def br_column_alt(ctx: BuildContext, r: int, elt: BasisElement) -> dict[BasisElement, Poly]:
    """Interior column computed from elementary-generator contraction formulas."""
    if not 2 <= r <= ctx.d - 1:
        raise ValueError(f"r={r} out of range 2..{ctx.d - 1}")
    d, delta = ctx.d, ctx.delta
    a, m = elt.a, elt.m
    out: dict[BasisElement, Poly] = {}
    for j in range(1, r + 1):
        aj = a[j - 1]
        rest = a[:j - 1] + a[j:]
        slot = (-1) ** (j - 1)  # contraction sign of the j-th wedge slot
        if elt.kind == "X":
            if var_divides(aj, m):
                w = div_var(m, aj)
                for m2 in monomials_of_degree(d, ctx.n, low_var=2):
                    c = ctx.tq(m2, w)
                    if c:
                        for sgn, tgt in expand_eta(rest, m2):
                            _add(out, tgt, _x1_term(d, -slot * sgn * c))
                for m1 in monomials_of_degree(d, ctx.n - 1, low_var=2):
                    c = ctx.Q(m1, w)
                    if c:
                        for sgn, tgt in expand_kappa(rest, m1):
                            _add(out, tgt, _x1_term(d, -slot * sgn * c))
            for sgn, tgt in expand_eta(rest, m):
                _add(out, tgt, _var_term(d, aj, -slot * sgn * delta))
        else:
            u = mul_var(m, aj)
            for m3 in monomials_of_degree(d, ctx.n, low_var=2):
                c = ctx.W(u, m3)
                if c:
                    for sgn, tgt in expand_eta(rest, m3):
                        _add(out, tgt, _x1_term(d, slot * sgn * c))
            for m1 in monomials_of_degree(d, ctx.n - 1, low_var=2):
                c = ctx.tq(u, m1)
                if c:
                    for sgn, tgt in expand_kappa(rest, m1):
                        _add(out, tgt, _x1_term(d, slot * sgn * c))
            for sgn, tgt in expand_kappa(rest, m):
                _add(out, tgt, _var_term(d, aj, -slot * sgn * delta))
    return {t: p for t, p in out.items() if not p.is_zero()}


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------


@dataclass
class Resolution:
    """The assembled resolution: ordered bases, matrices, twists, and metadata."""

    phi: InverseSystem
    delta: Fraction
    ordering: str
    bases: tuple[OrderedBasis, ...]
    matrices: tuple[PolyMatrix, ...]
    twists: tuple[int, ...]

    @property
    def d(self) -> int:
        return self.phi.d

    @property
    def n(self) -> int:
        return self.phi.n

    def matrix(self, r: int) -> PolyMatrix:
        """The matrix of the differential out of homological degree r (1-based)."""
        return self.matrices[r - 1]

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bases)

    def __repr__(self) -> str:
        return (f"Resolution(d={self.d}, n={self.n}, delta={self.delta}, "
                f"betti={self.betti}, ordering={self.ordering!r})")


def twist_list(d: int, n: int) -> tuple[int, ...]:
    return (0,) + tuple(n + r - 1 for r in range(1, d)) + (2 * n + d - 2,)


def _assemble(rows: OrderedBasis, cols: OrderedBasis, expansions) -> PolyMatrix:
    d = rows.d
    pos = rows.position()
    entries = [[Poly.zero(d) for _ in range(len(cols))] for _ in range(len(rows))]
    for j, (csign, _) in enumerate(cols.elements):
        for target, p in expansions[j].items():
            i, rsign = pos[target]
            entries[i][j] = p.scale(csign * rsign)
    return PolyMatrix(rows=rows, cols=cols, entries=entries)


def _build(phi: InverseSystem, ordering: str, column_fn) -> Resolution:
    cat = delta_and_Q(phi)
    if not cat.admissible:
        raise InadmissibleSystemError(
            "inverse system is inadmissible: the middle catalecticant has determinant 0, "
            "so the quotient algebra has no Gorenstein-linear minimal resolution "
            "(equivalently, the degree-(n-1) pairing is degenerate)"
        )
    ctx = BuildContext(phi, cat)
    d, n = phi.d, phi.n
    if ordering == "standard":
        bases = tuple(enumerate_basis(d, n, r) for r in range(d + 1))
    elif ordering == "selfdual":
        bases = tuple(duality_basis(d, n, r) for r in range(d + 1))
    else:
        raise ValueError(f"unknown ordering {ordering!r}")
    matrices: list[PolyMatrix] = []

    expans1 = [{bases[0].elements[0][1]: b1_column(ctx, e)} for _, e in bases[1]]
    matrices.append(_assemble(bases[0], bases[1], expans1))
    for r in range(2, d):
        expans = [column_fn(ctx, r, e) for _, e in bases[r]]
        matrices.append(_assemble(bases[r - 1], bases[r], expans))
    rowsd = bd_rows(ctx)
    matrices.append(_assemble(bases[d - 1], bases[d], [rowsd]))
    return Resolution(
        phi=phi,
        delta=cat.delta,
        ordering=ordering,
        bases=bases,
        matrices=tuple(matrices),
        twists=twist_list(d, n),
    )


def _column_direct(ctx: BuildContext, r: int, elt: BasisElement):
    return br_column_X(ctx, r, elt) if elt.kind == "X" else br_column_Y(ctx, r, elt)


def build_resolution(phi: InverseSystem, ordering: str = "standard") -> Resolution:
    """Build the resolution with the closed-form column formulas."""
    return _build(phi, ordering, _column_direct)


def build_resolution_via_straightening(phi: InverseSystem, ordering: str = "standard") -> Resolution:
    """Build the resolution through elementary generators and straightening.

    Independent of build_resolution for the interior differentials; the two
    must agree matrix-for-matrix.
    """
    return _build(phi, ordering, br_column_alt)


def canonical_skeleton(res: Resolution) -> list[PolyMatrix]:
    """The matrices the skeleton must equal: delta times the two Koszul strands.

    Expressed in the ordered (possibly signed) bases of res; independent of
    the inverse system except through the scalar delta.
    """
    from .hookbasis import kos_expansion

    d, n, delta = res.d, res.n, res.delta
    out: list[PolyMatrix] = []
    for r in range(1, d + 1):
        rows, cols = res.bases[r - 1], res.bases[r]
        entries = [[Poly.zero(d) for _ in range(len(cols))] for _ in range(len(rows))]
        if r == 1:
            s0 = rows.elements[0][0]
            for j, (cs, e) in enumerate(cols):
                if e.kind == "Y":
                    entries[0][j] = Poly.monomial(mul_var(e.m, e.a[0]), delta * s0 * cs)
        elif r == d:
            cs = cols.elements[0][0]
            for i, (rs, e) in enumerate(rows):
                if e.kind == "X":
                    entries[i][0] = Poly.monomial(e.m, delta * rs * cs)
        else:
            pos = rows.position()
            for j, (cs, e) in enumerate(cols):
                for target, p in kos_expansion(e).items():
                    i, rs = pos[target]
                    entries[i][j] = p.scale(delta * rs * cs)
        out.append(PolyMatrix(rows=rows, cols=cols, entries=entries))
    return out


def pp_matrix(basis_r: OrderedBasis, basis_dr: OrderedBasis) -> list[list[int]]:
    """The pairing matrix (coefficients of the top generator) on two ordered bases."""
    out = []
    for s1, e1 in basis_r:
        out.append([s1 * s2 * pp_value(e1, e2) for s2, e2 in basis_dr])
    return out


def skeleton(res: Resolution) -> list[PolyMatrix]:
    """All matrices reduced mod x1.

    For interior degrees the result must be block diagonal (X rows pair with
    X columns, Y with Y); a mixed nonzero entry indicates a broken build.
    """
    out = []
    for r in range(1, res.d + 1):
        mat = res.matrix(r).mod_x1()
        if 2 <= r <= res.d - 1:
            for i, (_, re) in enumerate(mat.rows):
                for j, (_, ce) in enumerate(mat.cols):
                    if re.kind != ce.kind and not mat.entries[i][j].is_zero():
                        raise AssertionError(
                            f"skeleton of b_{r} has a mixed {re.kind}->{ce.kind} entry at ({i}, {j})"
                        )
        out.append(mat)
    return out
