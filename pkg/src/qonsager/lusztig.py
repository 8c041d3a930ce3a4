"""The conjugating operator H and its polynomial expansions.

H = sum_i t_i E_i acts on a model so that conjugation by H realizes the
algebra automorphism fixing A and shifting A*; its inverse is the same sum
with 1/t_i. Four terminating polynomial expansions of H and H^-1 in A hold
on ascending/descending eigenflags of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .linalg import Decomposition, Matrix, commutator, kernel, q_commutator
from .model import TDModel
from .scalars import ParameterError, q_poch, t_coeff, t_seq


@dataclass(frozen=True)
class LusztigData:
    model: TDModel
    H: Matrix
    H_inv: Matrix
    t: tuple[Fraction, ...]
    LAstar: Matrix
    LinvAstar: Matrix

    @cached_property
    def Vplus(self) -> Decomposition:
        """Eigenspaces of L(A*): images of the A*-eigenspaces under H^-1."""
        return Decomposition(
            [s.image_under(self.H_inv) for s in self.model.eigenspaces_Astar.parts]
        )

    @cached_property
    def Vminus(self) -> Decomposition:
        """Eigenspaces of L^-1(A*): images of the A*-eigenspaces under H."""
        return Decomposition(
            [s.image_under(self.H) for s in self.model.eigenspaces_Astar.parts]
        )


def lusztig_image(model: TDModel, direction: int) -> Matrix:
    """A* + [A, [A, A*]_(q^eps)] / ((q - q^-1)(q^2 - q^-2)) for eps = +1 or -1."""
    if direction not in (1, -1):
        raise ParameterError(f"direction must be +1 or -1, got {direction}")
    q = model.params.q
    qeps = q if direction == 1 else 1 / q
    denom = (q - 1 / q) * (q * q - 1 / (q * q))
    return model.Astar + commutator(model.A, q_commutator(model.A, model.Astar, qeps)).scale(1 / denom)


def build_H(model: TDModel) -> LusztigData:
    """Assemble H = sum t_i E_i and its inverse, plus both twisted images of A*.

    H^-1 is assembled from the 1/t_i eigenvalue formula and cross-checked
    against the exact matrix inverse.
    """
    p = model.params
    t = tuple(t_seq(i, p) for i in range(model.dim))
    h = Matrix.zero(model.dim)
    h_inv = Matrix.zero(model.dim)
    for ti, proj in zip(t, model.projectors_A):
        h = h + proj.scale(ti)
        h_inv = h_inv + proj.scale(1 / ti)
    if h_inv != h.inverse():
        raise AssertionError("eigenvalue form of H^-1 disagrees with matrix inversion")
    return LusztigData(
        model=model,
        H=h,
        H_inv=h_inv,
        t=t,
        LAstar=lusztig_image(model, +1),
        LinvAstar=lusztig_image(model, -1),
    )


def check_L_conjugation(model: TDModel, lus: LusztigData):
    """L(A*) = H^-1 A* H, L^-1(A*) = H A* H^-1, and H^-1 A H = A, all exactly.

    Returns (passed, residuals) keyed by identity name.
    """
    residuals = {
        "L(A*) = H^-1 A* H": lus.LAstar - lus.H_inv * model.Astar * lus.H,
        "L^-1(A*) = H A* H^-1": lus.LinvAstar - lus.H * model.Astar * lus.H_inv,
        "H^-1 A H = A": lus.H_inv * model.A * lus.H - model.A,
    }
    return all(r.is_zero() for r in residuals.values()), residuals


def check_L_entrywise(model: TDModel, lus: LusztigData):
    """E_i L(A*) E_j = t_ij E_i A* E_j for |i-j| <= 1, both sides zero beyond.

    Returns (passed, failures) with failures as (i, j, residual).
    """
    failures = []
    p = model.params
    for i in range(model.dim):
        for j in range(model.dim):
            lhs = model.projectors_A[i] * lus.LAstar * model.projectors_A[j]
            rhs = model.projectors_A[i] * model.Astar * model.projectors_A[j]
            if abs(i - j) <= 1:
                resid = lhs - rhs.scale(t_coeff(i, j, p))
            else:
                resid = lhs if not lhs.is_zero() else rhs
                if lhs.is_zero() and rhs.is_zero():
                    continue
            if not resid.is_zero():
                failures.append((i, j, resid))
    return not failures, failures


def check_L_eigenstructure(model: TDModel, lus: LusztigData):
    """Both twisted images are diagonalizable with the A*-spectrum on conjugated eigenspaces.

    For eps in {+1, -1}: eigenvalues of L^eps(A*) are the theta*_i, with
    theta*_i-eigenspace H^(-eps) V*_i, checked by exact kernel computation.
    Returns (passed, failures) as (eps, i, description) triples.
    """
    failures = []
    ident = Matrix.identity(model.dim)
    cases = [(1, lus.LAstar, lus.Vplus), (-1, lus.LinvAstar, lus.Vminus)]
    for eps, image, expected_parts in cases:
        total = 0
        for i, th in enumerate(model.theta_star):
            eigenspace = kernel(image - ident.scale(th))
            total += eigenspace.rank
            if eigenspace != expected_parts[i]:
                failures.append((eps, i, "eigenspace differs from conjugated V*_i"))
        if total != model.dim:
            failures.append((eps, -1, f"eigenspace dimensions sum to {total} != {model.dim}"))
    return not failures, failures


def expand_H(model: TDModel, r: int, variant: str = "ascending", inverse: bool = False) -> Matrix:
    """Evaluate one terminating polynomial expansion of H or H^-1 in A.

    ascending (anchor r): t_r sum_i a^i q^(i(d-2r)) (A-th_r)...(A-th_(r+i-1)) / (q^2;q^2)_i,
    valid on V_r + ... + V_d; the inverse flips a -> 1/a, q -> 1/q and uses 1/t_r.
    descending (anchor s=r): t_s sum_i a^-i q^(i(2s-d)) (A-th_s)...(A-th_(s-i+1)) / (q^2;q^2)_i,
    valid on V_0 + ... + V_s; inverse analogous.
    """
    d = model.d
    if not 0 <= r <= d:
        raise ParameterError(f"anchor index {r} out of range 0..{d}")
    if variant not in ("ascending", "descending"):
        raise ParameterError(f"variant must be 'ascending' or 'descending', got {variant!r}")
    p = model.params
    q, a = p.q, p.a
    q2 = q * q
    ident = Matrix.identity(model.dim)
    tr = t_seq(r, p)
    out = Matrix.zero(model.dim)
    running = ident  # the growing product of (A - theta I) factors
    length = (d - r) if variant == "ascending" else r
    for i in range(length + 1):
        if i > 0:
            idx = (r + i - 1) if variant == "ascending" else (r - i + 1)
            running = running * (model.A - ident.scale(model.theta[idx]))
        if variant == "ascending":
            coeff = a**i * q ** (i * (d - 2 * r))
        else:
            coeff = a**-i * q ** (i * (2 * r - d))
        if inverse:
            coeff = 1 / coeff
            denom = q_poch(1 / q2, 1 / q2, i)
        else:
            denom = q_poch(q2, q2, i)
        out = out + running.scale(coeff / denom)
    prefactor = 1 / tr if inverse else tr
    return out.scale(prefactor)


def flag_projector(model: TDModel, r: int, variant: str) -> Matrix:
    """Exact projector onto V_r+...+V_d (ascending anchor) or V_0+...+V_r (descending)."""
    indices = range(r, model.dim) if variant == "ascending" else range(r + 1)
    out = Matrix.zero(model.dim)
    for i in indices:
        out = out + model.projectors_A[i]
    return out


def check_H_expansions(model: TDModel, lus: LusztigData):
    """All four expansion families agree with H or H^-1 on their stated flags.

    The residual (expansion - H^(+-1)) is right-multiplied by the exact flag
    projector; a zero product is a complete proof at these dimensions.
    Returns (passed, failures) as (variant, inverse, r, residual).
    """
    failures = []
    for variant in ("ascending", "descending"):
        for inverse in (False, True):
            target = lus.H_inv if inverse else lus.H
            for r in range(model.dim):
                poly = expand_H(model, r, variant, inverse)
                resid = (poly - target) * flag_projector(model, r, variant)
                if not resid.is_zero():
                    failures.append((variant, inverse, r, resid))
    return not failures, failures
