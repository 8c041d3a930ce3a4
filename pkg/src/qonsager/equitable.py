"""q-Weyl pairs, the eight equitable triples, and the flag assertions of the diagrams.

An equitable triple is three invertible maps X, Y, Z with
(q XY - q^-1 YX)/(q - q^-1) = I for the cyclically ordered pairs (X,Y),
(Y,Z), (Z,X). The eight rows of the triple table tie the split maps, their
inverses, and the combinations a A - a^2 K (etc.) to M, N and their down
analogues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, SingularMatrixError, flag
from .lusztig import LusztigData
from .model import ModelError, TDModel
from .scalars import ParameterError
from .splitmaps import (
    SplitMaps,
    split_from_decompositions,
    eigenspace_decomposition,
    map_from_decomposition,
    qweyl_eigenvalues,
)


def qweyl_residual(x: Matrix, y: Matrix, q: Fraction) -> Matrix:
    """(q XY - q^-1 YX)/(q - q^-1) - I."""
    q = Fraction(q)
    ident = Matrix.identity(x.rows)
    return ((x * y).scale(q) - (y * x).scale(1 / q)).scale(1 / (q - 1 / q)) - ident


def check_qweyl(x: Matrix, y: Matrix, q: Fraction) -> bool:
    """True when the ordered pair (X, Y) satisfies the q-Weyl relation exactly."""
    return qweyl_residual(x, y, q).is_zero()


def check_equitable_triple(x: Matrix, y: Matrix, z: Matrix, q: Fraction):
    """All three cyclic q-Weyl relations, with invertibility verified first.

    Returns (passed, failures) as (name, residual); a singular input is
    reported as a failure entry rather than raised.
    """
    failures = []
    for name, mat in (("X", x), ("Y", y), ("Z", z)):
        try:
            mat.inverse()
        except SingularMatrixError as exc:
            failures.append((f"{name} invertible", str(exc)))
    if failures:
        return False, failures
    for name, left, right in (("(X,Y)", x, y), ("(Y,Z)", y, z), ("(Z,X)", z, x)):
        resid = qweyl_residual(left, right, q)
        if not resid.is_zero():
            failures.append((f"q-Weyl {name}", resid))
    return not failures, failures


@dataclass(frozen=True)
class TripleTable:
    """The eight (X, Y, Z) rows built from a model's split maps."""

    rows: tuple[tuple[str, Matrix, Matrix, Matrix], ...]


def build_triple_table(model: TDModel, s: SplitMaps) -> TripleTable:
    """Populate the eight equitable-triple rows from A and the split maps."""
    if s.M is None:
        raise ParameterError("SplitMaps must be completed with build_MN first")
    a = model.params.a
    big_a = model.A
    m_inv = s.M.inverse()
    n_inv = s.N.inverse()
    md_inv = s.Mdown.inverse()
    nd_inv = s.Ndown.inverse()
    rows = (
        ("1", big_a.scale(a) - s.K.scale(a * a), m_inv, s.K),
        ("2", big_a.scale(1 / a) - s.B.scale(1 / (a * a)), m_inv, s.B),
        ("3", big_a.scale(a) - s.Kdown.scale(a * a), md_inv, s.Kdown),
        ("4", big_a.scale(1 / a) - s.Bdown.scale(1 / (a * a)), md_inv, s.Bdown),
        ("5", s.K.inverse(), n_inv, big_a.scale(1 / a) - s.K.inverse().scale(1 / (a * a))),
        ("6", s.B.inverse(), n_inv, big_a.scale(a) - s.B.inverse().scale(a * a)),
        ("7", s.Kdown.inverse(), nd_inv, big_a.scale(1 / a) - s.Kdown.inverse().scale(1 / (a * a))),
        ("8", s.Bdown.inverse(), nd_inv, big_a.scale(a) - s.Bdown.inverse().scale(a * a)),
    )
    return TripleTable(rows)


def verify_triple_table(model: TDModel, table: TripleTable):
    """Every row passes all three cyclic q-Weyl relations exactly.

    Returns (passed, failures) as (row label, name, residual).
    """
    q = model.params.q
    failures = []
    for label, x, y, z in table.rows:
        ok, row_failures = check_equitable_triple(x, y, z, q)
        if not ok:
            failures.extend((label, name, resid) for name, resid in row_failures)
    return not failures, failures


def check_qweyl_ladder(x: Matrix, y: Matrix, q: Fraction, d: int):
    """The ladder and crossing-flag consequences of a q-Weyl pair.

    Preconditions reported distinctly: (X, Y) satisfies the q-Weyl relation
    and both are diagonalizable with eigenvalues q^d, ..., q^-d. Then
    (i) (X - q^-2 lam I)(Y - lam^-1 I) kills the lam-eigenspace of X for each
    eigenvalue lam, and (ii) Y_0+...+Y_i = X_(d-i)+...+X_d for every i.
    Returns (passed, failures).
    """
    q = Fraction(q)
    failures = []
    if not check_qweyl(x, y, q):
        failures.append(("precondition", "the pair does not satisfy the q-Weyl relation"))
    eigs = qweyl_eigenvalues(d, q)
    try:
        x_dec = eigenspace_decomposition(x, eigs)
        y_dec = eigenspace_decomposition(y, eigs)
    except ModelError as exc:
        failures.append(("precondition", f"eigenvalue ladder missing: {exc}"))
        return False, failures
    if failures:
        return False, failures
    ident = Matrix.identity(x.rows)
    from .model import lagrange_projectors

    x_projs = lagrange_projectors(x, eigs)
    for i, lam in enumerate(eigs):
        resid = (x - ident.scale(lam / (q * q))) * (y - ident.scale(1 / lam)) * x_projs[i]
        if not resid.is_zero():
            failures.append((f"ladder step from X-eigenvalue {lam}", resid))
    for i in range(d + 1):
        if flag(y_dec, i, "ascending") != flag(x_dec, i, "descending"):
            failures.append((f"crossing flags at {i}", "Y_0+...+Y_i != X_(d-i)+...+X_d"))
    return not failures, failures


def verify_diagrams(model: TDModel, lus: LusztigData, s: SplitMaps):
    """The flag and split-map assertions of the two big comparison diagrams.

    Checks, all exactly:
      - N-flags: N_0+...+N_i = V+_0+...+V+_i and N_i+...+N_d = V*_0+...+V*_(d-i);
        mirrored for Ndown with both orders reversed.
      - M-flags: M_0+...+M_i = V*_0+...+V*_i and M_i+...+M_d = V-_0+...+V-_(d-i);
        mirrored for Mdown.
      - Lower-half edges: the split maps of the pair (A, L(A*)) equal
        a^-1 A - a^-2 K^-1 (K slot), a A - a^2 B^-1 (B slot) and the down
        analogues; those of (A, L^-1(A*)) are the inverses of a A - a^2 K,
        a^-1 A - a^-2 B and the down analogues.
      - Oriented 3-cycles: delegated to the eight table rows.
    Returns (passed, failures) as (name, witness).
    """
    if s.M is None:
        raise ParameterError("SplitMaps must be completed with build_MN first")
    p = model.params
    q, a, d = p.q, p.a, p.d
    eigs = qweyl_eigenvalues(d, q)
    failures = []

    def expect(name: str, condition: bool, witness="flag mismatch") -> None:
        if not condition:
            failures.append((name, witness))

    def expect_zero(name: str, resid: Matrix) -> None:
        if not resid.is_zero():
            failures.append((name, resid))

    n_dec = eigenspace_decomposition(s.N, eigs)
    ndown_dec = eigenspace_decomposition(s.Ndown, eigs)
    m_dec = eigenspace_decomposition(s.M, eigs)
    mdown_dec = eigenspace_decomposition(s.Mdown, eigs)
    vstar = model.eigenspaces_Astar
    vplus = lus.Vplus
    vminus = lus.Vminus

    for i in range(d + 1):
        expect(
            f"N flag {i}: ascending = V+ ascending",
            flag(n_dec, i, "ascending") == flag(vplus, i, "ascending"),
        )
        expect(
            f"N flag {i}: descending = V* ascending reversed",
            flag(n_dec, d - i, "descending") == flag(vstar, d - i, "ascending"),
        )
        expect(
            f"Ndown flag {i}: ascending = V+ descending",
            flag(ndown_dec, i, "ascending") == flag(vplus, i, "descending"),
        )
        expect(
            f"Ndown flag {i}: descending = V* descending",
            flag(ndown_dec, i, "descending") == flag(vstar, i, "descending"),
        )
        expect(
            f"M flag {i}: ascending = V* ascending",
            flag(m_dec, i, "ascending") == flag(vstar, i, "ascending"),
        )
        expect(
            f"M flag {i}: descending = V- ascending reversed",
            flag(m_dec, d - i, "descending") == flag(vminus, d - i, "ascending"),
        )
        expect(
            f"Mdown flag {i}: ascending = V* descending",
            flag(mdown_dec, i, "ascending") == flag(vstar, i, "descending"),
        )
        expect(
            f"Mdown flag {i}: descending = V- descending",
            flag(mdown_dec, i, "descending") == flag(vminus, i, "descending"),
        )

    # Split maps of the twisted pair (A, L(A*)): conjugated forms, directly.
    a_dec = model.eigenspaces_A
    twisted_plus = [
        ("K slot", "forward", "forward", model.A.scale(1 / a) - s.K.inverse().scale(1 / (a * a))),
        ("B slot", "forward", "reversed", model.A.scale(a) - s.B.inverse().scale(a * a)),
        ("Kdown slot", "reversed", "forward", model.A.scale(1 / a) - s.Kdown.inverse().scale(1 / (a * a))),
        ("Bdown slot", "reversed", "reversed", model.A.scale(a) - s.Bdown.inverse().scale(a * a)),
    ]
    for name, star_order, a_order, expected in twisted_plus:
        dec = split_from_decompositions(vplus, a_dec, star_order, a_order)
        expect_zero(
            f"(A, L(A*)) split map at {name}",
            map_from_decomposition(dec, q) - expected,
        )

    # Split maps of the twisted pair (A, L^-1(A*)): inverses of the labels.
    ident = Matrix.identity(model.dim)
    twisted_minus = [
        ("K slot", "forward", "forward", model.A.scale(a) - s.K.scale(a * a)),
        ("B slot", "forward", "reversed", model.A.scale(1 / a) - s.B.scale(1 / (a * a))),
        ("Kdown slot", "reversed", "forward", model.A.scale(a) - s.Kdown.scale(a * a)),
        ("Bdown slot", "reversed", "reversed", model.A.scale(1 / a) - s.Bdown.scale(1 / (a * a))),
    ]
    for name, star_order, a_order, label in twisted_minus:
        dec = split_from_decompositions(vminus, a_dec, star_order, a_order)
        expect_zero(
            f"(A, L^-1(A*)) split map at {name} times its label",
            map_from_decomposition(dec, q) * label - ident,
        )

    # Oriented 3-cycles are equitable triples: the eight table rows.
    table = build_triple_table(model, s)
    ok, table_failures = verify_triple_table(model, table)
    if not ok:
        failures.extend(
            (f"3-cycle row {label}: {name}", resid) for label, name, resid in table_failures
        )
    return not failures, failures
