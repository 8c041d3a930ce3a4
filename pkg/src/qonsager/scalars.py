"""Exact rational scalars and the closed-form quantities of the q-Racah eigenvalue data.

The ground field is Q, realized by ``fractions.Fraction`` (arbitrary-precision,
always stored reduced with positive denominator, so equality is structural).
A rational q outside {0, 1, -1} is never a root of unity, which is all the
genericity the identity checks need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class ParameterError(ValueError):
    """Raised when scalar parameters violate the standing hypotheses."""


def parse_scalar(token: str) -> Fraction:
    """Parse a "p/q" or "p" token into an exact rational.

    >>> parse_scalar("37/6")
    Fraction(37, 6)
    >>> parse_scalar("-2")
    Fraction(-2, 1)
    """
    try:
        return Fraction(token.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"bad scalar token {token!r}: {exc}") from None


def format_scalar(x: Fraction) -> str:
    """Render a rational as "p/q", or "p" when the denominator is 1."""
    return str(x)


def _require_valid_q(q: Fraction) -> None:
    if q == 0 or q == 1 or q == -1:
        raise ParameterError(f"q must lie outside {{0, 1, -1}}, got {q}")


def q_int(n: int, q: Fraction) -> Fraction:
    """q-bracket [n]_q = (q^n - q^-n)/(q - q^-1)."""
    _require_valid_q(q)
    return (q**n - q**-n) / (q - 1 / q)


def q_poch(z: Fraction, t: Fraction, n: int) -> Fraction:
    """Shifted factorial (z;t)_n = (1-z)(1-zt)...(1-zt^(n-1)); empty product at n=0."""
    if n < 0:
        raise ParameterError(f"q_poch length must be nonnegative, got {n}")
    out = ONE
    zt = Fraction(z)
    for _ in range(n):
        out *= 1 - zt
        zt *= t
    return out


@dataclass(frozen=True)
class ParamSet:
    """Parameters (d, q, a, b, phi) of one generated module.

    The constructor enforces the standing hypotheses: d >= 1, q outside
    {0, 1, -1}, a and b nonzero with a^2 (resp. b^2) avoiding
    q^(2d-2), q^(2d-4), ..., q^(2-2d) so both eigenvalue sequences are
    pairwise distinct, and every phi_i nonzero.
    """

    d: int
    q: Fraction
    a: Fraction
    b: Fraction
    phi: tuple[Fraction, ...] = field(default=())

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or self.d < 1:
            raise ParameterError(f"diameter d must be an integer >= 1, got {self.d!r}")
        _require_valid_q(self.q)
        if self.a == 0:
            raise ParameterError("a must be nonzero")
        if self.b == 0:
            raise ParameterError("b must be nonzero")
        forbidden = {self.q ** (2 * k) for k in range(1 - self.d, self.d)}
        if self.a * self.a in forbidden:
            raise ParameterError(
                f"a^2 = {self.a * self.a} lies among q^(2d-2), ..., q^(2-2d); "
                "the eigenvalues of A would collide"
            )
        if self.b * self.b in forbidden:
            raise ParameterError(
                f"b^2 = {self.b * self.b} lies among q^(2d-2), ..., q^(2-2d); "
                "the eigenvalues of A* would collide"
            )
        object.__setattr__(self, "phi", tuple(Fraction(p) for p in self.phi))
        if self.phi:
            if len(self.phi) != self.d:
                raise ParameterError(
                    f"phi sequence must have length d={self.d}, got {len(self.phi)}"
                )
            if any(p == 0 for p in self.phi):
                raise ParameterError("every phi_i must be nonzero")

    def with_phi(self, phi) -> "ParamSet":
        return ParamSet(self.d, self.q, self.a, self.b, tuple(phi))


def theta(i: int, p: ParamSet) -> Fraction:
    """Eigenvalue theta_i = a q^(d-2i) + a^-1 q^(2i-d) of A."""
    if not 0 <= i <= p.d:
        raise ParameterError(f"index {i} out of range 0..{p.d}")
    return p.a * p.q ** (p.d - 2 * i) + p.q ** (2 * i - p.d) / p.a


def theta_star(i: int, p: ParamSet) -> Fraction:
    """Eigenvalue theta*_i = b q^(d-2i) + b^-1 q^(2i-d) of A*."""
    if not 0 <= i <= p.d:
        raise ParameterError(f"index {i} out of range 0..{p.d}")
    return p.b * p.q ** (p.d - 2 * i) + p.q ** (2 * i - p.d) / p.b


def p_poly(lam: Fraction, mu: Fraction, q: Fraction) -> Fraction:
    """Adjacency polynomial P(lam, mu) = lam^2 - (q^2+q^-2) lam mu + mu^2 + (q^2-q^-2)^2.

    Two distinct eigenvalues are adjacent exactly when this vanishes; P is
    symmetric in its first two arguments.
    """
    _require_valid_q(q)
    q2 = q * q
    return lam * lam - (q2 + 1 / q2) * lam * mu + mu * mu + (q2 - 1 / q2) ** 2


def t_coeff(i: int, j: int, p: ParamSet) -> Fraction:
    """Conjugation coefficient t_ij = 1 + (th_i - th_j)(q th_i - q^-1 th_j) / ((q-q^-1)(q^2-q^-2))."""
    ti, tj = theta(i, p), theta(j, p)
    q = p.q
    return 1 + (ti - tj) * (q * ti - tj / q) / ((q - 1 / q) * (q * q - 1 / (q * q)))


def t_seq(i: int, p: ParamSet) -> Fraction:
    """Eigenvalue t_i of H: the product t_01 t_12 ... t_(i-1,i), with t_0 = 1.

    Cross-checks the product against the closed form a^(2i) q^(2i(d-i));
    disagreement would mean a kernel bug, not bad input.
    """
    if not 0 <= i <= p.d:
        raise ParameterError(f"index {i} out of range 0..{p.d}")
    prod = ONE
    for k in range(1, i + 1):
        prod *= t_coeff(k - 1, k, p)
    closed = p.a ** (2 * i) * p.q ** (2 * i * (p.d - i))
    if prod != closed:
        raise AssertionError(
            f"t_{i} product form {prod} != closed form {closed}; kernel bug"
        )
    return prod


def _rising_theta_product(s: int, r: int, i: int, p: ParamSet, descending: bool) -> Fraction:
    """(th_s - th_r)(th_s - th_(r+1))...: the i-factor product in the summation identities."""
    out = ONE
    for k in range(i):
        if descending:
            out *= theta(r, p) - theta(s - k, p)
        else:
            out *= theta(s, p) - theta(r + k, p)
    return out


def chu_vandermonde_sums(r: int, s: int, p: ParamSet) -> dict[str, tuple[Fraction, Fraction]]:
    """Evaluate the four terminating summation identities at (r, s).

    Returns a map from identity name to (sum value, expected t-ratio); the
    identity holds when the pair is equal. Names: "ascending" and
    "ascending_inv" sum products (th_s - th_(r+k)); "descending" and
    "descending_inv" sum products (th_r - th_(s-k)).
    """
    if not 0 <= r <= s <= p.d:
        raise ParameterError(f"need 0 <= r <= s <= d, got r={r}, s={s}, d={p.d}")
    q, a, d = p.q, p.a, p.d
    q2 = q * q
    asc = ZERO
    asc_inv = ZERO
    desc = ZERO
    desc_inv = ZERO
    for i in range(s - r + 1):
        up = _rising_theta_product(s, r, i, p, descending=False)
        down = _rising_theta_product(s, r, i, p, descending=True)
        asc += a**i * q ** (i * (d - 2 * r)) * up / q_poch(q2, q2, i)
        asc_inv += a**-i * q ** (i * (2 * r - d)) * up / q_poch(1 / q2, 1 / q2, i)
        desc += a**-i * q ** (i * (2 * s - d)) * down / q_poch(q2, q2, i)
        desc_inv += a**i * q ** (i * (d - 2 * s)) * down / q_poch(1 / q2, 1 / q2, i)
    ts_tr = t_seq(s, p) / t_seq(r, p)
    return {
        "ascending": (asc, ts_tr),
        "ascending_inv": (asc_inv, 1 / ts_tr),
        "descending": (desc, 1 / ts_tr),
        "descending_inv": (desc_inv, ts_tr),
    }


def check_chu_vandermonde(p: ParamSet):
    """Verify all four summation identities for every 0 <= r <= s <= d.

    Returns (passed, failures) where failures lists (name, r, s, got, want)
    for each violated identity.
    """
    failures = []
    for r in range(p.d + 1):
        for s in range(r, p.d + 1):
            for name, (got, want) in chu_vandermonde_sums(r, s, p).items():
                if got != want:
                    failures.append((name, r, s, got, want))
    return not failures, failures
