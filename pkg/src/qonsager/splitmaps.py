"""The four split decompositions, their corresponding maps, and the conjugation identities.

Each split decomposition arises as ascending-star-flag meet descending-A-flag,
with one or both eigenspace orders optionally inverted: K = (fwd, fwd),
B = (fwd, rev), Kdown = (rev, fwd), Bdown = (rev, rev). The corresponding map
acts as q^(d-2i) on the i-th part.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .linalg import (
    Decomposition,
    Matrix,
    Subspace,
    flag,
    kernel,
    subspace_intersect,
)
from .lusztig import LusztigData
from .model import ModelError, TDModel
from .scalars import ParameterError


def qweyl_eigenvalues(d: int, q: Fraction) -> tuple[Fraction, ...]:
    """The geometric eigenvalue ladder q^d, q^(d-2), ..., q^-d."""
    return tuple(q ** (d - 2 * i) for i in range(d + 1))


def eigenspace_decomposition(m: Matrix, eigs) -> Decomposition:
    """Decomposition of the ambient space into kernels of (m - eig I).

    Raises ModelError unless the kernels are nonzero and fill the space, i.e.
    m is diagonalizable with exactly the given eigenvalues.
    """
    ident = Matrix.identity(m.rows)
    parts = []
    total = 0
    for e in eigs:
        space = kernel(m - ident.scale(Fraction(e)))
        if space.is_zero():
            raise ModelError(f"eigenvalue {e} has no eigenvector")
        total += space.rank
        parts.append(space)
    if total != m.rows:
        raise ModelError(
            f"eigenspace dimensions sum to {total} != {m.rows}; not diagonalizable on this list"
        )
    return Decomposition(parts)


def split_decomposition(model: TDModel, star_order: str = "forward", a_order: str = "forward") -> Decomposition:
    """U_i = (star-flag through i) meet (A-flag from i up), with optional order reversal.

    (forward, forward) gives U_i = (V*_0+...+V*_i) n (V_i+...+V_d); each
    reversal replaces the corresponding eigenspace list by its inversion.
    A degenerate (zero) intersection signals a non-tridiagonal input pair.
    """
    return split_from_decompositions(
        model.eigenspaces_Astar, model.eigenspaces_A, star_order, a_order
    )


def split_from_decompositions(
    star_dec: Decomposition, a_dec: Decomposition, star_order: str, a_order: str
) -> Decomposition:
    for name, value in (("star_order", star_order), ("a_order", a_order)):
        if value not in ("forward", "reversed"):
            raise ParameterError(f"{name} must be 'forward' or 'reversed', got {value!r}")
    if star_order == "reversed":
        star_dec = star_dec.inversion()
    if a_order == "reversed":
        a_dec = a_dec.inversion()
    d = len(star_dec) - 1
    parts = []
    for i in range(d + 1):
        u = subspace_intersect(
            flag(star_dec, i, "ascending"), flag(a_dec, d - i, "descending")
        )
        if u.is_zero():
            raise ModelError(f"split part U_{i} is zero; the pair is not tridiagonal")
        parts.append(u)
    return Decomposition(parts)


def map_from_decomposition(dec: Decomposition, q: Fraction) -> Matrix:
    """The unique map acting as q^(d-2i) on the i-th part, via change of basis."""
    d = len(dec) - 1
    eigs = qweyl_eigenvalues(d, Fraction(q))
    columns = []
    diag = []
    for i, part in enumerate(dec.parts):
        for vec in part.basis:
            columns.append(vec)
            diag.append(eigs[i])
    basis = Matrix(columns).transpose()
    return basis * Matrix.diagonal(diag) * basis.inverse()


@dataclass(frozen=True)
class SplitMaps:
    K: Matrix
    B: Matrix
    Kdown: Matrix
    Bdown: Matrix
    dec_K: Decomposition
    dec_B: Decomposition
    dec_Kdown: Decomposition
    dec_Bdown: Decomposition
    M: Matrix | None = None
    N: Matrix | None = None
    Mdown: Matrix | None = None
    Ndown: Matrix | None = None


def build_split_maps(model: TDModel) -> SplitMaps:
    """Construct K, B, Kdown, Bdown from the four split decompositions."""
    q = model.params.q
    dec_k = split_decomposition(model, "forward", "forward")
    dec_b = split_decomposition(model, "forward", "reversed")
    dec_kd = split_decomposition(model, "reversed", "forward")
    dec_bd = split_decomposition(model, "reversed", "reversed")
    return SplitMaps(
        K=map_from_decomposition(dec_k, q),
        B=map_from_decomposition(dec_b, q),
        Kdown=map_from_decomposition(dec_kd, q),
        Bdown=map_from_decomposition(dec_bd, q),
        dec_K=dec_k,
        dec_B=dec_b,
        dec_Kdown=dec_kd,
        dec_Bdown=dec_bd,
    )


def check_split_flags(model: TDModel, s: SplitMaps):
    """Each split decomposition satisfies both of its defining flag equalities.

    Ascending U-flag = ascending flag of the (possibly inverted) A*-eigenspace
    list; descending U-flag = descending flag of the (possibly inverted)
    A-eigenspace list. Returns (passed, failures).
    """
    star = model.eigenspaces_Astar
    a_dec = model.eigenspaces_A
    cases = [
        ("K", s.dec_K, star, a_dec),
        ("B", s.dec_B, star, a_dec.inversion()),
        ("Kdown", s.dec_Kdown, star.inversion(), a_dec),
        ("Bdown", s.dec_Bdown, star.inversion(), a_dec.inversion()),
    ]
    failures = []
    d = model.d
    for name, dec, star_ref, a_ref in cases:
        for i in range(d + 1):
            if flag(dec, i, "ascending") != flag(star_ref, i, "ascending"):
                failures.append((name, i, "ascending flag != star flag"))
            if flag(dec, i, "descending") != flag(a_ref, i, "descending"):
                failures.append((name, i, "descending flag != A flag"))
    return not failures, failures


def _qweyl_bracket(x: Matrix, y: Matrix, q: Fraction) -> Matrix:
    return ((x * y).scale(q) - (y * x).scale(1 / q)).scale(1 / (q - 1 / q))


def check_KA_relations(model: TDModel, s: SplitMaps):
    """The defining relations tying A to each split-map pair, all exact.

    For (K, B) with parameter a (and the same with Kdown, Bdown):
      (q KA - q^-1 AK)/(q - q^-1) = a K^2 + a^-1 I
      (q BA - q^-1 AB)/(q - q^-1) = a^-1 B^2 + a I
      a K^2 - c1 KB - c2 BK + a^-1 B^2 = 0
      (q A K^-1 - q^-1 K^-1 A)/(q - q^-1) = a^-1 K^-2 + a I
      (q A B^-1 - q^-1 B^-1 A)/(q - q^-1) = a B^-2 + a^-1 I
      a^-1 K^-2 - c1 K^-1 B^-1 - c2 B^-1 K^-1 + a B^-2 = 0
    with c1 = (a^-1 q - a q^-1)/(q - q^-1), c2 = (a q - a^-1 q^-1)/(q - q^-1),
    plus the two inverse-pair statements built from KB cross terms.
    Returns (passed, failures) as (name, residual).
    """
    p = model.params
    q, a = p.q, p.a
    ident = Matrix.identity(model.dim)
    c1 = (q / a - a / q) / (q - 1 / q)
    c2 = (a * q - 1 / (a * q)) / (q - 1 / q)
    failures = []

    def expect_zero(name: str, resid: Matrix) -> None:
        if not resid.is_zero():
            failures.append((name, resid))

    for tag, k, b in (("", s.K, s.B), ("down:", s.Kdown, s.Bdown)):
        k_inv = k.inverse()
        b_inv = b.inverse()
        expect_zero(
            f"{tag}qweyl[K,A] = a K^2 + a^-1 I",
            _qweyl_bracket(k, model.A, q) - (k * k).scale(a) - ident.scale(1 / a),
        )
        expect_zero(
            f"{tag}qweyl[B,A] = a^-1 B^2 + a I",
            _qweyl_bracket(b, model.A, q) - (b * b).scale(1 / a) - ident.scale(a),
        )
        expect_zero(
            f"{tag}a K^2 - c1 KB - c2 BK + a^-1 B^2 = 0",
            (k * k).scale(a) - (k * b).scale(c1) - (b * k).scale(c2) + (b * b).scale(1 / a),
        )
        expect_zero(
            f"{tag}qweyl[A,K^-1] = a^-1 K^-2 + a I",
            _qweyl_bracket(model.A, k_inv, q) - (k_inv * k_inv).scale(1 / a) - ident.scale(a),
        )
        expect_zero(
            f"{tag}qweyl[A,B^-1] = a B^-2 + a^-1 I",
            _qweyl_bracket(model.A, b_inv, q) - (b_inv * b_inv).scale(a) - ident.scale(1 / a),
        )
        expect_zero(
            f"{tag}a^-1 K^-2 - c1 K^-1 B^-1 - c2 B^-1 K^-1 + a B^-2 = 0",
            (k_inv * k_inv).scale(1 / a)
            - (k_inv * b_inv).scale(c1)
            - (b_inv * k_inv).scale(c2)
            + (b_inv * b_inv).scale(a),
        )
        # Two inverse-pair reformulations of the KB relations.
        inv_a = 1 / a - a
        a_inv = a - 1 / a
        p1 = (k_inv * b).scale((q - 1 / q) / (a * inv_a)) - ident.scale((q / a - a / q) / inv_a)
        q1 = (b * k_inv).scale((q - 1 / q) / (a * a_inv)) - ident.scale((a * q - 1 / (a * q)) / a_inv)
        expect_zero(f"{tag}inverse pair (K^-1 B, B K^-1): left product", p1 * q1 - ident)
        expect_zero(f"{tag}inverse pair (K^-1 B, B K^-1): right product", q1 * p1 - ident)
        p2 = (b_inv * k).scale(a * (q - 1 / q) / a_inv) - ident.scale((a * q - 1 / (a * q)) / a_inv)
        q2 = (k * b_inv).scale(a * (q - 1 / q) / inv_a) - ident.scale((q / a - a / q) / inv_a)
        expect_zero(f"{tag}inverse pair (B^-1 K, K B^-1): left product", p2 * q2 - ident)
        expect_zero(f"{tag}inverse pair (B^-1 K, K B^-1): right product", q2 * p2 - ident)
    return not failures, failures


def check_H_conjugation_of_splits(model: TDModel, lus: LusztigData, s: SplitMaps):
    """The eight conjugation identities for the split maps under H.

    H^-1 B H = a A - a^2 B^-1 and H^-1 K H = a^-1 A - a^-2 K^-1 (with the
    down analogues), plus the reformulations H B^-1 H^-1 = a^-1 A - a^-2 B
    and H K^-1 H^-1 = a A - a^2 K (with the down analogues).
    Returns (passed, failures) as (name, residual).
    """
    a = model.params.a
    h, h_inv = lus.H, lus.H_inv
    big_a = model.A
    failures = []
    cases = [
        ("H^-1 B H = a A - a^2 B^-1", h_inv * s.B * h, big_a.scale(a) - s.B.inverse().scale(a * a)),
        ("H^-1 K H = a^-1 A - a^-2 K^-1", h_inv * s.K * h, big_a.scale(1 / a) - s.K.inverse().scale(1 / (a * a))),
        ("H^-1 Bdown H = a A - a^2 Bdown^-1", h_inv * s.Bdown * h, big_a.scale(a) - s.Bdown.inverse().scale(a * a)),
        ("H^-1 Kdown H = a^-1 A - a^-2 Kdown^-1", h_inv * s.Kdown * h, big_a.scale(1 / a) - s.Kdown.inverse().scale(1 / (a * a))),
        ("H B^-1 H^-1 = a^-1 A - a^-2 B", h * s.B.inverse() * h_inv, big_a.scale(1 / a) - s.B.scale(1 / (a * a))),
        ("H K^-1 H^-1 = a A - a^2 K", h * s.K.inverse() * h_inv, big_a.scale(a) - s.K.scale(a * a)),
        ("H Bdown^-1 H^-1 = a^-1 A - a^-2 Bdown", h * s.Bdown.inverse() * h_inv, big_a.scale(1 / a) - s.Bdown.scale(1 / (a * a))),
        ("H Kdown^-1 H^-1 = a A - a^2 Kdown", h * s.Kdown.inverse() * h_inv, big_a.scale(a) - s.Kdown.scale(a * a)),
    ]
    for name, lhs, rhs in cases:
        resid = lhs - rhs
        if not resid.is_zero():
            failures.append((name, resid))
    return not failures, failures


def check_R_ladder(model: TDModel, s: SplitMaps):
    """The raising-ladder properties of R = A - a K - a^-1 K^-1.

    On the i-th part of K's decomposition, a K + a^-1 K^-1 acts as theta_i;
    R maps part i into part i+1 (and kills the top part); R^(d+1) = 0; and
    RK = q^2 KR. Returns (passed, failures) as (name, residual).
    """
    p = model.params
    q, a, d = p.q, p.a, p.d
    from .model import lagrange_projectors

    projectors = lagrange_projectors(s.K, qweyl_eigenvalues(d, q))
    r = model.A - s.K.scale(a) - s.K.inverse().scale(1 / a)
    ident = Matrix.identity(model.dim)
    failures = []

    def expect_zero(name: str, resid: Matrix) -> None:
        if not resid.is_zero():
            failures.append((name, resid))

    for i in range(d + 1):
        expect_zero(
            f"(a K + a^-1 K^-1) acts as theta_{i} on U_{i}",
            (s.K.scale(a) + s.K.inverse().scale(1 / a) - ident.scale(model.theta[i])) * projectors[i],
        )
        if i < d:
            expect_zero(
                f"R U_{i} inside U_{i + 1}",
                r * projectors[i] - projectors[i + 1] * r * projectors[i],
            )
    expect_zero("R kills the top part", r * projectors[d])
    expect_zero(f"R^{d + 1} = 0", r ** (d + 1))
    expect_zero("R K = q^2 K R", r * s.K - (s.K * r).scale(q * q))
    return not failures, failures


def build_MN(model: TDModel, s: SplitMaps) -> SplitMaps:
    """Complete a SplitMaps with M, N, Mdown, Ndown and verify their structure.

    M = (a K - a^-1 B)/(a - a^-1), N = (a^-1 K^-1 - a B^-1)/(a^-1 - a), and the
    down analogues. Each must be diagonalizable with eigenvalues exactly
    q^d, ..., q^-d, and conjugation by H must carry M to N (and Mdown to Ndown).
    """
    a = model.params.a
    if a == 1 or a == -1:
        raise ParameterError("a in {1, -1} makes the M, N denominators vanish")
    denom = a - 1 / a
    m = (s.K.scale(a) - s.B.scale(1 / a)).scale(1 / denom)
    n = (s.K.inverse().scale(1 / a) - s.B.inverse().scale(a)).scale(-1 / denom)
    mdown = (s.Kdown.scale(a) - s.Bdown.scale(1 / a)).scale(1 / denom)
    ndown = (s.Kdown.inverse().scale(1 / a) - s.Bdown.inverse().scale(a)).scale(-1 / denom)
    eigs = qweyl_eigenvalues(model.d, model.params.q)
    for name, mat in (("M", m), ("N", n), ("Mdown", mdown), ("Ndown", ndown)):
        eigenspace_decomposition(mat, eigs)  # raises ModelError when not diagonalizable
    return replace(s, M=m, N=n, Mdown=mdown, Ndown=ndown)


def check_MN_conjugation(model: TDModel, lus: LusztigData, s: SplitMaps):
    """H^-1 M H = N and H^-1 Mdown H = Ndown, exactly."""
    failures = []
    for name, m, n in (("H^-1 M H = N", s.M, s.N), ("H^-1 Mdown H = Ndown", s.Mdown, s.Ndown)):
        resid = lus.H_inv * m * lus.H - n
        if not resid.is_zero():
            failures.append((name, resid))
    return not failures, failures
