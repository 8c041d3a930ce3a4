"""Matrix realizations of the two-generator modules and their defining checks.

Generated models live in the split basis: A is lower bidiagonal with diagonal
theta_0..theta_d and subdiagonal 1, A* is upper bidiagonal with diagonal
theta*_0..theta*_d and superdiagonal phi_1..phi_d. All verification
operations also accept arbitrary imported square pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .linalg import (
    Decomposition,
    Matrix,
    ShapeError,
    Subspace,
    commutator,
    kernel,
    q_commutator,
    subspace_intersect,
    subspace_sum,
)
from .scalars import ONE, ParameterError, ParamSet, theta, theta_star


class ModelError(ValueError):
    """Raised when a model fails its defining relations at construction time."""

    def __init__(self, message: str, residual: Matrix | None = None):
        super().__init__(message)
        self.residual = residual


def qdg_residuals(a: Matrix, astar: Matrix, q: Fraction) -> tuple[Matrix, Matrix]:
    """Residuals of the two q-Dolan/Grady relations, in order.

    Relation 1: [A,[A,[A,A*]_q]_(q^-1)] - (q^2-q^-2)^2 [A*,A].
    Relation 2: the same with A and A* interchanged.
    """
    if a.rows != a.cols or a.rows != astar.rows or a.cols != astar.cols:
        raise ShapeError("q-Dolan/Grady check needs square matrices of equal shape")
    q = Fraction(q)
    scale = (q * q - 1 / (q * q)) ** 2
    res1 = commutator(a, q_commutator(a, q_commutator(a, astar, q), 1 / q)) - commutator(astar, a).scale(scale)
    res2 = commutator(astar, q_commutator(astar, q_commutator(astar, a, q), 1 / q)) - commutator(a, astar).scale(scale)
    return res1, res2


def check_qdg(a: Matrix, astar: Matrix, q: Fraction):
    """Check both q-Dolan/Grady relations exactly.

    Returns (passed, residuals); each residual is the zero matrix on pass.
    """
    residuals = qdg_residuals(a, astar, q)
    return all(r.is_zero() for r in residuals), residuals


def lagrange_projectors(m: Matrix, eigs) -> tuple[Matrix, ...]:
    """Spectral projectors of a diagonalizable matrix with the given distinct eigenvalues.

    E_i = prod_(j != i) (m - eig_j I)/(eig_i - eig_j). Raises ModelError unless
    (m - eig_i I) E_i = 0 and E_i != 0 for every i, which together certify that
    m is diagonalizable with spectrum exactly the given list.
    """
    eigs = [Fraction(e) for e in eigs]
    if len(set(eigs)) != len(eigs):
        raise ParameterError("projector eigenvalues must be pairwise distinct")
    n = m.rows
    ident = Matrix.identity(n)
    projectors = []
    for i, ei in enumerate(eigs):
        proj = ident
        for j, ej in enumerate(eigs):
            if j != i:
                proj = (proj * (m - ident.scale(ej))).scale(1 / (ei - ej))
        if proj.is_zero():
            raise ModelError(f"eigenvalue {ei} does not occur in the spectrum")
        resid = (m - ident.scale(ei)) * proj
        if not resid.is_zero():
            raise ModelError(
                f"matrix is not diagonalizable with the stated spectrum at {ei}",
                resid,
            )
        projectors.append(proj)
    return tuple(projectors)


@dataclass(frozen=True)
class TDModel:
    """The bundle one verification run consumes.

    ``constructed`` is true for split-basis models built from a phi sequence
    and false for imported pairs, which are verified but never assumed to be
    bidiagonal.
    """

    params: ParamSet
    A: Matrix
    Astar: Matrix
    theta: tuple[Fraction, ...]
    theta_star: tuple[Fraction, ...]
    projectors_A: tuple[Matrix, ...]
    projectors_Astar: tuple[Matrix, ...]
    constructed: bool = True

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def dim(self) -> int:
        return self.A.rows

    @cached_property
    def eigenspaces_A(self) -> Decomposition:
        ident = Matrix.identity(self.dim)
        return Decomposition(
            [kernel(self.A - ident.scale(th)) for th in self.theta]
        )

    @cached_property
    def eigenspaces_Astar(self) -> Decomposition:
        ident = Matrix.identity(self.dim)
        return Decomposition(
            [kernel(self.Astar - ident.scale(th)) for th in self.theta_star]
        )


def build_model(p: ParamSet) -> TDModel:
    """Construct the split-basis model for a full ParamSet and verify it.

    Raises ModelError (with the violated relation's residual) if the phi
    sequence does not satisfy the q-Dolan/Grady relations, or if the pair is
    reducible or fails the block-tridiagonal action.
    """
    if len(p.phi) != p.d:
        raise ParameterError(
            f"ParamSet needs a phi sequence of length d={p.d} to build a model"
        )
    n = p.d + 1
    thetas = tuple(theta(i, p) for i in range(n))
    theta_stars = tuple(theta_star(i, p) for i in range(n))
    a_rows = [[Fraction(0)] * n for _ in range(n)]
    astar_rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        a_rows[i][i] = thetas[i]
        astar_rows[i][i] = theta_stars[i]
    for i in range(p.d):
        a_rows[i + 1][i] = ONE
        astar_rows[i][i + 1] = p.phi[i]
    a = Matrix(a_rows)
    astar = Matrix(astar_rows)

    passed, residuals = check_qdg(a, astar, p.q)
    if not passed:
        which = 1 if not residuals[0].is_zero() else 2
        raise ModelError(
            f"q-Dolan/Grady relation {which} violated by phi={p.phi}",
            residuals[which - 1],
        )

    model = TDModel(
        params=p,
        A=a,
        Astar=astar,
        theta=thetas,
        theta_star=theta_stars,
        projectors_A=lagrange_projectors(a, thetas),
        projectors_Astar=lagrange_projectors(astar, theta_stars),
    )
    ok, failures = check_tridiagonal_action(model)
    if not ok:
        side, i, j, resid = failures[0]
        raise ModelError(f"tridiagonal action violated at {side} ({i},{j})", resid)
    if not check_irreducible(a, astar, thetas, theta_stars):
        raise ModelError("constructed pair is reducible")
    return model


def assemble_imported(p: ParamSet, a: Matrix, astar: Matrix) -> TDModel:
    """Wrap an imported (A, A*) pair with the spectra implied by the header.

    The pair is only bundled, never reshaped; projector construction fails if
    either matrix is not diagonalizable with the stated q-Racah spectrum.
    """
    n = p.d + 1
    if a.rows != n or a.cols != n or astar.rows != n or astar.cols != n:
        raise ShapeError(f"imported matrices must be {n}x{n} for d={p.d}")
    thetas = tuple(theta(i, p) for i in range(n))
    theta_stars = tuple(theta_star(i, p) for i in range(n))
    return TDModel(
        params=p,
        A=a,
        Astar=astar,
        theta=thetas,
        theta_star=theta_stars,
        projectors_A=lagrange_projectors(a, thetas),
        projectors_Astar=lagrange_projectors(astar, theta_stars),
        constructed=False,
    )


def check_tridiagonal_action(model: TDModel):
    """E_i A* E_j = 0 and E*_i A E*_j = 0 whenever |i - j| > 1.

    Returns (passed, failures) with failures as (side, i, j, residual).
    """
    failures = []
    n = model.dim
    for i in range(n):
        for j in range(n):
            if abs(i - j) <= 1:
                continue
            left = model.projectors_A[i] * model.Astar * model.projectors_A[j]
            if not left.is_zero():
                failures.append(("E_i A* E_j", i, j, left))
            right = model.projectors_Astar[i] * model.A * model.projectors_Astar[j]
            if not right.is_zero():
                failures.append(("E*_i A E*_j", i, j, right))
    return not failures, failures


def _char_poly(m: Matrix) -> list[Fraction]:
    """Characteristic polynomial det(xI - m) by Faddeev-LeVerrier; index = degree."""
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = ONE
    work = Matrix.identity(n)
    for k in range(1, n + 1):
        work = m * work
        c = -work.trace() / k
        coeffs[n - k] = c
        work = work + Matrix.identity(n).scale(c)
    return coeffs


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    f = 1
    while f * f <= n:
        if n % f == 0:
            out.add(f)
            out.add(n // f)
        f += 1
    return sorted(out)


def rational_eigenvalues(m: Matrix) -> list[Fraction]:
    """All rational eigenvalues of m, found exactly via the rational root theorem."""
    coeffs = _char_poly(m)
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in coeffs]
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))  # multiplicity does not matter, the eigenspace does
        while len(ints) > 1 and ints[0] == 0:
            ints = ints[1:]
    lead = ints[-1]
    const = ints[0]
    if const == 0:
        candidates = []
    else:
        candidates = [
            Fraction(sp * p, q)
            for p in _divisors(const)
            for q in _divisors(lead)
            for sp in (1, -1)
        ]
    seen = set(roots)
    for cand in candidates:
        if cand in seen:
            continue
        if _poly_eval(coeffs, cand) == 0:
            roots.append(cand)
            seen.add(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _poly_eval(coeffs, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


def _closure(seed: Subspace, maps) -> Subspace:
    """Smallest subspace containing seed and invariant under every map."""
    current = seed
    while True:
        grown = current
        for m in maps:
            grown = subspace_sum(grown, current.image_under(m))
        if grown.rank == current.rank:
            return current
        current = grown


def check_irreducible(
    a: Matrix,
    astar: Matrix,
    eigenvalues_a=None,
    eigenvalues_astar=None,
) -> bool:
    """True iff no proper nonzero subspace is invariant under both maps.

    Searches eigenvector-driven candidates: any joint invariant subspace
    contains an eigenvector of each map, so it suffices to (i) reject joint
    eigenvectors outright and (ii) close every eigenline of either map under
    the pair and demand full rank. Complete whenever either map has all
    eigenspaces one-dimensional over Q (true for every generated model).
    """
    if a.rows != a.cols or a.rows != astar.rows or a.cols != astar.cols:
        raise ShapeError("irreducibility check needs square matrices of equal shape")
    n = a.rows
    if n == 1:
        return True
    ident = Matrix.identity(n)
    eigs_a = list(eigenvalues_a) if eigenvalues_a is not None else rational_eigenvalues(a)
    eigs_astar = (
        list(eigenvalues_astar) if eigenvalues_astar is not None else rational_eigenvalues(astar)
    )
    spaces_a = [kernel(a - ident.scale(e)) for e in eigs_a]
    spaces_astar = [kernel(astar - ident.scale(e)) for e in eigs_astar]
    for va in spaces_a:
        for vs in spaces_astar:
            if not subspace_intersect(va, vs).is_zero():
                return False  # a joint eigenvector spans an invariant line
    pair = (a, astar)
    for space in spaces_a + spaces_astar:
        for vec in space.basis:
            seed = Subspace.from_vectors(n, [vec])
            if _closure(seed, pair).rank < n:
                return False
    return True


@dataclass(frozen=True)
class SpectrumGraph:
    """Classification of the adjacency graph on a set of eigenvalues."""

    kind: str  # "path" | "cycle" | "disconnected" | "branching"
    order: tuple[Fraction, ...] | None = None


def spectrum_graph(eigs, q: Fraction) -> SpectrumGraph:
    """Classify the graph with edges {lam != mu, P(lam, mu) = 0} on the given eigenvalues.

    A valid q-Racah spectrum yields a path, returned with one of its two
    traversal orders (starting from the endpoint earliest in the input).
    Over Q the "cycle" and "branching" outcomes cannot actually arise (a
    cycle forces q to be a root of unity and P is quadratic in each slot,
    capping vertex degree at 2); they are kept for the classification
    contract on arbitrary inputs.
    """
    from .scalars import p_poly

    eigs = [Fraction(e) for e in eigs]
    if len(set(eigs)) != len(eigs):
        raise ParameterError("eigenvalues must be pairwise distinct")
    if len(eigs) < 2:
        raise ParameterError("at least two eigenvalues are required")
    n = len(eigs)
    adj = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if p_poly(eigs[i], eigs[j], q) == 0:
                adj[i].append(j)
                adj[j].append(i)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) < n:
        return SpectrumGraph("disconnected")
    if any(len(adj[v]) > 2 for v in range(n)):
        return SpectrumGraph("branching")
    endpoints = [v for v in range(n) if len(adj[v]) == 1]
    if not endpoints:
        return SpectrumGraph("cycle")
    start = min(endpoints)
    order = [start]
    prev = None
    while len(order) < n:
        nxt = next(w for w in adj[order[-1]] if w != prev)
        prev = order[-1]
        order.append(nxt)
    return SpectrumGraph("path", tuple(eigs[i] for i in order))


def recover_a(theta0: Fraction, theta1: Fraction, d: int, q: Fraction, spectrum=None) -> Fraction:
    """Recover the scalar a with theta_i = a q^(d-2i) + a^-1 q^(2i-d) from theta_0, theta_1.

    Solves u + v = theta_0, u q^-2 + v q^2 = theta_1 for u = a q^d and checks
    the consistency condition u v = 1; with a full spectrum supplied, every
    theta_i is re-derived and compared.
    """
    if d < 1:
        raise ParameterError(f"diameter must be >= 1, got {d}")
    q = Fraction(q)
    if q == 0 or q == 1 or q == -1:
        raise ParameterError(f"q must lie outside {{0, 1, -1}}, got {q}")
    u = (q * q * theta0 - theta1) / (q * q - 1 / (q * q))
    v = theta0 - u
    if u * v != 1:
        raise ParameterError(
            f"spectrum is not of q-Racah shape: u*v = {u * v} != 1 for theta_0={theta0}, theta_1={theta1}"
        )
    a = u / q**d
    if a == 0:
        raise ParameterError("recovered a = 0")
    if spectrum is not None:
        for i, th in enumerate(spectrum):
            expected = a * q ** (d - 2 * i) + q ** (2 * i - d) / a
            if Fraction(th) != expected:
                raise ParameterError(
                    f"theta_{i} = {th} does not match the recovered form {expected}"
                )
    return a


# c values scanned by solve_phi; c and 1/c give the same sequence, so only
# one representative of each reciprocal pair appears.
DEFAULT_C_SCAN = (
    Fraction(1),
    Fraction(2),
    Fraction(3),
    Fraction(-1),
    Fraction(-2),
    Fraction(5),
    Fraction(-3),
    Fraction(7),
    Fraction(1, 7),
    Fraction(-5),
    Fraction(2, 3),
    Fraction(-2, 3),
)


def phi_candidate(d: int, q: Fraction, a: Fraction, b: Fraction, c: Fraction) -> tuple[Fraction, ...]:
    """One-parameter family of split sequences for the q-Racah eigenvalue data.

    phi_i = h h* Q^(1-2i) (1-Q^i)(1-Q^(i-d-1))(1-r1 Q^i)(1-r2 Q^i) with
    Q = q^2, h = a q^d, h* = b q^d, r1 r2 = (a b q^(d+1))^-2; the free
    rational parameter c fixes r1 = c/(a b q^(d+1)). Candidates are never
    trusted directly; solve_phi re-validates each through check_qdg.
    """
    if c == 0:
        raise ParameterError("family parameter c must be nonzero")
    big_q = q * q
    h = a * q**d
    h_star = b * q**d
    r1 = c / (a * b * q ** (d + 1))
    r2 = 1 / (c * a * b * q ** (d + 1))
    return tuple(
        h
        * h_star
        * big_q ** (1 - 2 * i)
        * (1 - big_q**i)
        * (1 - big_q ** (i - d - 1))
        * (1 - r1 * big_q**i)
        * (1 - r2 * big_q**i)
        for i in range(1, d + 1)
    )


def solve_phi(d: int, q: Fraction, a: Fraction, b: Fraction, candidates=None, limit: int = 3):
    """Find rational phi sequences making the split-basis pair satisfy check_qdg.

    Scans the one-parameter candidate family over rational c values and keeps
    the sequences whose built model passes every construction check. Returns
    up to ``limit`` distinct validated sequences ([] when none validate, which
    signals the caller to vary parameters).
    """
    base = ParamSet(d, Fraction(q), Fraction(a), Fraction(b))  # validates the scalars
    if d == 1:
        # Any nonzero phi_1 satisfies the relations at d=1.
        build_model(base.with_phi((ONE,)))
        return [(ONE,)]
    found = []
    seen = set()
    for c in candidates if candidates is not None else DEFAULT_C_SCAN:
        phi = phi_candidate(d, base.q, base.a, base.b, Fraction(c))
        if any(p == 0 for p in phi) or phi in seen:
            continue
        seen.add(phi)
        try:
            build_model(base.with_phi(phi))
        except (ModelError, ParameterError):
            continue
        found.append(phi)
        if len(found) >= limit:
            break
    return found
