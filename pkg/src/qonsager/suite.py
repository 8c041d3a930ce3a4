"""Batch verification: run named check suites over parameter-set or file targets.

Targets are independent and the underlying operations are pure, so the runner
may execute targets concurrently; results are always merged in declared order
and the report is deterministic apart from timing fields.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import equitable, lusztig, splitmaps
from .linalg import Matrix, ShapeError, subspace_sum
from .model import (
    ModelError,
    TDModel,
    build_model,
    check_irreducible,
    check_qdg,
    check_tridiagonal_action,
    recover_a,
    solve_phi,
    spectrum_graph,
)
from .modelio import import_model
from .report import Report
from .scalars import (
    ParameterError,
    ParamSet,
    check_chu_vandermonde,
    p_poly,
    parse_scalar,
    t_coeff,
    t_seq,
    theta,
    theta_star,
)

SUITE_NAMES = ("scalars", "model", "lusztig", "splitmaps", "equitable", "diagrams")


class ConfigError(ValueError):
    """Raised for unreadable or malformed suite configuration."""


@dataclass(frozen=True)
class Target:
    """One verification target: inline parameters or a model-file path."""

    label: str
    raw: tuple | None = None  # (d, q, a, b, phi) for parameter targets
    path: str | None = None  # model-file targets


def make_param_target(d: int, q, a, b, phi=()) -> Target:
    label = f"d={d} q={q} a={a} b={b}"
    return Target(label=label, raw=(d, q, a, b, tuple(phi)))


def make_file_target(path: str) -> Target:
    return Target(label=path, path=path)


@dataclass
class SuiteConfig:
    targets: list[Target]
    suites: tuple[str, ...] = ("all",)
    output: str | None = None
    parallel: bool = False

    def __post_init__(self) -> None:
        if not self.targets:
            raise ConfigError("config needs at least one target")
        expanded = []
        for name in self.suites:
            if name == "all":
                expanded.extend(SUITE_NAMES)
            elif name in SUITE_NAMES:
                expanded.append(name)
            else:
                raise ConfigError(
                    f"unknown suite {name!r}; valid: {', '.join(SUITE_NAMES + ('all',))}"
                )
        deduped = []
        for name in expanded:
            if name not in deduped:
                deduped.append(name)
        self.suites = tuple(deduped)


def _target_from_spec(spec: dict, index: int) -> Target:
    if not isinstance(spec, dict):
        raise ConfigError(f"target {index}: must be an object")
    if "file" in spec:
        return make_file_target(str(spec["file"]))
    try:
        d = int(spec["d"])
        q = parse_scalar(str(spec["q"]))
        a = parse_scalar(str(spec["a"]))
        b = parse_scalar(str(spec["b"]))
    except KeyError as exc:
        raise ConfigError(f"target {index}: missing key {exc}") from None
    except (ValueError, ParameterError) as exc:
        raise ConfigError(f"target {index}: {exc}") from None
    phi = tuple(parse_scalar(str(t)) for t in spec.get("phi", ()))
    # ParamSet validation is deferred to run time so a hypothesis-violating
    # target becomes a per-target failure entry, not a config error.
    return make_param_target(d, q, a, b, phi)


def load_config(path: str) -> SuiteConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict) or "targets" not in data:
        raise ConfigError(f"{path}: config must be an object with a 'targets' list")
    targets = [_target_from_spec(t, i) for i, t in enumerate(data["targets"])]
    return SuiteConfig(
        targets=targets,
        suites=tuple(data.get("suites", ["all"])),
        output=data.get("output"),
        parallel=bool(data.get("parallel", False)),
    )


def _first_witness(failures):
    if not failures:
        return None
    first = failures[0]
    if isinstance(first, tuple):
        return f"{first[:-1]}: {first[-1]}" if len(first) > 1 else first[0]
    return first


def _check(fn):
    """Adapt a (passed, failures-list) checker to the report runner protocol."""

    def run():
        ok, failures = fn()
        return ok, None if ok else _first_witness(failures)

    return run


def _resolve_model(target: Target, report: Report) -> TDModel | None:
    """Build or import the target's model, recording failures on the report."""
    if target.path is not None:
        try:
            return import_model(target.path)
        except (ParameterError, ModelError, ShapeError) as exc:
            residual = getattr(exc, "residual", None)
            report.add(
                "target.load",
                "model file semantic validation",
                False,
                residual if residual is not None else str(exc),
            )
            return None
    d, q, a, b, phi = target.raw
    try:
        params = ParamSet(d, q, a, b, phi)
    except ParameterError as exc:
        report.add(
            "paramset.validate",
            "standing hypotheses on (d, q, a, b, phi)",
            False,
            str(exc),
        )
        return None
    try:
        if not params.phi:
            sequences = solve_phi(d, params.q, params.a, params.b, limit=1)
            if not sequences:
                report.add(
                    "model.solve_phi",
                    "find a rational phi sequence passing the q-Dolan/Grady checks",
                    False,
                    "no rational solution found in the scanned family; vary parameters",
                )
                return None
            params = params.with_phi(sequences[0])
        return build_model(params)
    except (ParameterError, ModelError) as exc:
        residual = getattr(exc, "residual", None)
        report.add(
            "model.build",
            "construct split-basis model",
            False,
            residual if residual is not None else str(exc),
        )
        return None


def _run_scalars(model: TDModel, report: Report) -> None:
    p = model.params
    d = p.d
    thetas = [theta(i, p) for i in range(d + 1)]
    stars = [theta_star(i, p) for i in range(d + 1)]
    report.run(
        "scalars.distinct",
        "theta_i pairwise distinct and theta*_i pairwise distinct",
        lambda: (len(set(thetas)) == d + 1 and len(set(stars)) == d + 1, None),
    )
    report.run(
        "scalars.adjacency",
        "P(theta_(i-1), theta_i) = 0 along the path",
        lambda: (
            all(p_poly(thetas[i - 1], thetas[i], p.q) == 0 for i in range(1, d + 1)),
            None,
        ),
    )
    report.run(
        "scalars.recurrence",
        "theta_(i-1) - (q^2+q^-2) theta_i + theta_(i+1) = 0",
        lambda: (
            all(
                thetas[i - 1] - (p.q**2 + p.q**-2) * thetas[i] + thetas[i + 1] == 0
                for i in range(1, d)
            ),
            None,
        ),
    )
    report.run(
        "scalars.t_coeff",
        "t_ii = 1; t_ij t_ji = 1 for |i-j| = 1; t_(i-1,i) = a^2 q^(2(d-2i+1))",
        lambda: (
            all(t_coeff(i, i, p) == 1 for i in range(d + 1))
            and all(
                t_coeff(i - 1, i, p) * t_coeff(i, i - 1, p) == 1 for i in range(1, d + 1)
            )
            and all(
                t_coeff(i - 1, i, p) == p.a**2 * p.q ** (2 * (d - 2 * i + 1))
                for i in range(1, d + 1)
            ),
            None,
        ),
    )
    report.run(
        "scalars.t_seq",
        "product form of t_i equals a^(2i) q^(2i(d-i)) and is nonzero",
        lambda: (all(t_seq(i, p) != 0 for i in range(d + 1)), None),
    )

    def chu():
        ok, failures = check_chu_vandermonde(p)
        witness = None
        if failures:
            name, r, s, got, want = failures[0]
            witness = f"{name} at (r={r}, s={s}): {got} != {want}"
        return ok, witness

    report.run(
        "scalars.chu_vandermonde",
        "all four terminating summation identities over 0 <= r <= s <= d",
        chu,
    )


def _run_model(model: TDModel, report: Report) -> None:
    p = model.params

    def qdg():
        ok, residuals = check_qdg(model.A, model.Astar, p.q)
        return ok, None if ok else next(r for r in residuals if not r.is_zero())

    report.run("model.qdg", "both q-Dolan/Grady relations, zero residual", qdg)
    report.run(
        "model.tridiagonal",
        "E_i A* E_j = 0 and E*_i A E*_j = 0 for |i-j| > 1",
        _check(lambda: check_tridiagonal_action(model)),
    )
    report.run(
        "model.irreducible",
        "no proper nonzero subspace invariant under both generators",
        lambda: (
            check_irreducible(model.A, model.Astar, model.theta, model.theta_star),
            None,
        ),
    )

    def spectrum():
        graph = spectrum_graph(model.theta, p.q)
        ok = graph.kind == "path" and graph.order in (model.theta, model.theta[::-1])
        return ok, None if ok else f"classified as {graph.kind}"

    report.run(
        "model.spectrum_path",
        "adjacency graph of the A-spectrum is the theta path",
        spectrum,
    )

    def recover():
        got = recover_a(model.theta[0], model.theta[1], p.d, p.q, model.theta)
        return got == p.a, None if got == p.a else f"recovered {got} != {p.a}"

    report.run(
        "model.recover_a",
        "eigenvalue sequence returns the generating scalar a",
        recover,
    )

    def containment():
        decomposition = model.eigenspaces_A
        d = p.d
        for i in range(d + 1):
            lo, hi = max(i - 1, 0), min(i + 1, d)
            window = decomposition[lo]
            for j in range(lo + 1, hi + 1):
                window = subspace_sum(window, decomposition[j])
            image = decomposition[i].image_under(model.Astar)
            if not window.contains(image):
                return False, f"A* V_{i} escapes V_{i - 1}+V_{i}+V_{i + 1}"
        return True, None

    report.run(
        "model.astar_containment",
        "A* V_i inside V_(i-1) + V_i + V_(i+1)",
        containment,
    )


def _run_lusztig(model: TDModel, report: Report) -> None:
    lus = lusztig.build_H(model)
    report.run(
        "lusztig.H_invertible",
        "H H^-1 = I with H^-1 from the 1/t_i eigenvalue form",
        lambda: (lus.H * lus.H_inv == Matrix.identity(model.dim), None),
    )
    report.run(
        "lusztig.H_commutes_A",
        "H A = A H",
        lambda: ((lus.H * model.A - model.A * lus.H).is_zero(), None),
    )

    def conjugation():
        ok, residuals = lusztig.check_L_conjugation(model, lus)
        witness = None if ok else next(
            f"{name}: nonzero residual" for name, r in residuals.items() if not r.is_zero()
        )
        return ok, witness

    report.run(
        "lusztig.conjugation",
        "L(A*) = H^-1 A* H; L^-1(A*) = H A* H^-1; H^-1 A H = A",
        conjugation,
    )
    report.run(
        "lusztig.entrywise",
        "E_i L(A*) E_j = t_ij E_i A* E_j within the tridiagonal band",
        _check(lambda: lusztig.check_L_entrywise(model, lus)),
    )
    report.run(
        "lusztig.eigenstructure",
        "L^(+-1)(A*) diagonalizable with theta* spectrum on H^(-+1)-shifted eigenspaces",
        _check(lambda: lusztig.check_L_eigenstructure(model, lus)),
    )
    report.run(
        "lusztig.expansions",
        "all four polynomial expansion families match H or H^-1 on their flags",
        _check(lambda: lusztig.check_H_expansions(model, lus)),
    )


def _run_splitmaps(model: TDModel, report: Report) -> None:
    lus = lusztig.build_H(model)
    s = splitmaps.build_split_maps(model)
    report.run(
        "split.flags",
        "each split decomposition satisfies both defining flag equalities",
        _check(lambda: splitmaps.check_split_flags(model, s)),
    )

    def inversion_inverts():
        for name, dec, mat in (
            ("K", s.dec_K, s.K),
            ("B", s.dec_B, s.B),
            ("Kdown", s.dec_Kdown, s.Kdown),
            ("Bdown", s.dec_Bdown, s.Bdown),
        ):
            inverted = splitmaps.map_from_decomposition(dec.inversion(), model.params.q)
            if inverted != mat.inverse():
                return False, f"map of inverted {name} decomposition != {name}^-1"
        return True, None

    report.run(
        "split.inversion",
        "inverting a decomposition inverts its map",
        inversion_inverts,
    )
    report.run(
        "split.KA_relations",
        "the bracket relations and inverse-pair statements for K, B and the down pair",
        _check(lambda: splitmaps.check_KA_relations(model, s)),
    )
    report.run(
        "split.H_conjugation",
        "all eight H-conjugation identities for the split maps",
        _check(lambda: splitmaps.check_H_conjugation_of_splits(model, lus, s)),
    )
    report.run(
        "split.R_ladder",
        "R = A - aK - a^-1 K^-1 raises the K-decomposition, R^(d+1) = 0, RK = q^2 KR",
        _check(lambda: splitmaps.check_R_ladder(model, s)),
    )

    def mn():
        completed = splitmaps.build_MN(model, s)
        ok, failures = splitmaps.check_MN_conjugation(model, lus, completed)
        return ok, _first_witness(failures)

    report.run(
        "split.MN",
        "M, N and down analogues diagonalizable on the q-ladder; H^-1 M H = N",
        mn,
    )


def _run_equitable(model: TDModel, report: Report) -> None:
    s = splitmaps.build_MN(model, splitmaps.build_split_maps(model))
    table = equitable.build_triple_table(model, s)
    report.run(
        "equitable.table",
        "all eight rows pass the three cyclic q-Weyl relations",
        _check(lambda: equitable.verify_triple_table(model, table)),
    )

    def ladders():
        q, d = model.params.q, model.params.d
        for label, x, y, z in table.rows:
            for pair_name, left, right in (("X,Y", x, y), ("Y,Z", y, z), ("Z,X", z, x)):
                ok, failures = equitable.check_qweyl_ladder(left, right, q, d)
                if not ok:
                    return False, f"row {label} pair ({pair_name}): {failures[0][0]}"
        return True, None

    report.run(
        "equitable.ladders",
        "ladder steps and crossing flags for every q-Weyl pair in the table",
        ladders,
    )


def _run_diagrams(model: TDModel, report: Report) -> None:
    lus = lusztig.build_H(model)
    s = splitmaps.build_MN(model, splitmaps.build_split_maps(model))
    report.run(
        "diagrams.verify",
        "N/M flag equalities, twisted-pair split maps, and the 3-cycle triples",
        _check(lambda: equitable.verify_diagrams(model, lus, s)),
    )


_SUITE_RUNNERS = {
    "scalars": _run_scalars,
    "model": _run_model,
    "lusztig": _run_lusztig,
    "splitmaps": _run_splitmaps,
    "equitable": _run_equitable,
    "diagrams": _run_diagrams,
}


def run_target(target: Target, suites) -> Report:
    report = Report(target.label)
    model = _resolve_model(target, report)
    if model is None:
        return report
    for name in suites:
        _SUITE_RUNNERS[name](model, report)
    return report


def run_suite(cfg: SuiteConfig) -> list[Report]:
    """Run every configured suite on every target.

    Returns per-target reports in declared order regardless of parallelism;
    writes one JSON record per check to cfg.output when set.
    """
    if cfg.parallel and len(cfg.targets) > 1:
        with ThreadPoolExecutor() as pool:
            reports = list(pool.map(lambda t: run_target(t, cfg.suites), cfg.targets))
    else:
        reports = [run_target(t, cfg.suites) for t in cfg.targets]
    if cfg.output:
        lines = [line for rep in reports for line in rep.to_lines()]
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    return reports


def all_passed(reports: list[Report]) -> bool:
    return all(rep.all_passed for rep in reports)
