"""Batch verification harness: identity suites, quantitative checks, tables."""

from __future__ import annotations

import csv
import io
import json
import math
import platform
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.special import loggamma

from . import __version__
from . import rankin_cohen as rc
from .geometry import (
    GroupGenerator,
    act,
    in_tube,
    midpoint_resolvent,
    quasi_inverse,
)
from .jordan import (
    DomainError,
    Element,
    JordanAlgebra,
    Kind,
    algebra_from_name,
    bmap_B,
    dmap_D,
    generic_norm,
    inner,
    inverse,
    jordan_det,
    jordan_trace,
    mul,
    quad_P,
    spectral,
    spectral_fn,
    spectral_norm,
    sym2_to_spin3,
    sym_real,
    spin,
    unit,
)
from .operators import (
    BranchError,
    ScalarFunction,
    equivariance_residual,
    holo_rule,
    holo_up_scalar,
    kp_holo_1d,
    min_ktype_image,
    rc_kp_composition,
)
from .quadrature import cone_rule, integrate_weighted
from .special import (
    ParameterError,
    Signature,
    WeightParams,
    beta_constant,
    check_dual_power,
    collapse_check,
    delta_k,
    gamma_r,
)

__all__ = [
    "SUITES",
    "CHECKS",
    "ConfigError",
    "VerifyConfig",
    "Record",
    "Report",
    "run",
    "convergence_table",
    "table_csv",
]

SUITES = (
    "jordan-identities",
    "geometry-identities",
    "gamma-integral",
    "beta-minktype",
    "rank1-kp",
    "rankin-cohen",
    "equivariance",
    "cross-algebra",
)

DEFAULT_TOLERANCES = {
    "power_assoc": 1e-10,
    "det_P": 1e-9,
    "det_B": 1e-9,
    "P_inverse": 1e-9,
    "inner_trace_D": 1e-10,
    "dual_power": 1e-11,
    "quasi_inverse": 1e-10,
    "hua_det": 1e-11,
    "inversion_factorization": 1e-9,
    "cayley_roundtrip": 1e-10,
    "resolvent_equivariance": 1e-10,
    "gamma_integral": 1e-4,
    "collapse": 1e-12,
    "minktype_rank1": 1e-6,
    "minktype_eigen": 1e-5,
    "minktype_cartesian": 1e-3,
    "kp_beta": 1e-8,
    "kp_point": 1e-10,
    "kp_bridge": 1e-8,
    "rc_intertwining": 0.0,
    "rc_kp_constancy": 1e-8,
    "equivariance_factor": 10.0,
    "isomorphism": 1e-10,
}


class ConfigError(ValueError):
    pass


def _parse_complex(v) -> complex:
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return complex(v.replace(" ", "").replace("i", "j"))
    return complex(v)


def _plain(z):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


@dataclass
class VerifyConfig:
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    algebras: list[str] = field(default_factory=lambda: ["Rank1", "SymReal(2)", "Spin(3)"])
    weight_pairs: list = field(default_factory=lambda: [(3, 3), (2.5, 4), (4, 3.5)])
    signatures: list = field(default_factory=lambda: [(0, 0), (1, 1), (2, 1), (3, 1), (2, 2)])
    frame_points: list = field(default_factory=lambda: [(1, 1), (1, 2), (0.5, 3)])
    kp_weights: list = field(default_factory=lambda: [1, 1.5, 2.5, complex(3, 0.7)])
    l_range: list[int] = field(default_factory=lambda: [0, 1, 2, 3, 4])
    gamma_lambdas: list = field(default_factory=lambda: [2.5, 3, 4])
    sizes: dict = field(default_factory=lambda: {
        "GaussJacobi1D": 64, "EigenAngle": 32, "CartesianIndicator": 128, "cone": 32,
    })
    engines: list[str] = field(default_factory=lambda: ["EigenAngle", "CartesianIndicator"])
    tolerances: dict = field(default_factory=dict)
    draws: int = 100
    equivariance_configs: int = 20
    seed: int = 0
    output: str | None = None

    def __post_init__(self):
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites: {unknown}")
        try:
            self.algebra_objs = [algebra_from_name(a) for a in self.algebras]
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        self.weight_pairs = [(_parse_complex(a), _parse_complex(b)) for a, b in self.weight_pairs]
        self.kp_weights = [_parse_complex(v) for v in self.kp_weights]
        self.gamma_lambdas = [float(v) for v in self.gamma_lambdas]
        self.signatures = [tuple(int(p) for p in k) for k in self.signatures]
        self.frame_points = [tuple(float(p) for p in u) for u in self.frame_points]
        bad = [k for k in self.tolerances if k not in DEFAULT_TOLERANCES]
        if bad:
            raise ConfigError(f"unknown tolerance keys: {bad}")
        self.tol = {**DEFAULT_TOLERANCES, **{k: float(v) for k, v in self.tolerances.items()}}
        # every grid entry must satisfy the convergence condition
        for A in self.algebra_objs:
            for lam, mu in self.weight_pairs:
                for k in self.signatures_for(A):
                    try:
                        WeightParams(lam, mu, k, A)
                    except (ParameterError, ValueError) as exc:
                        raise ConfigError(f"grid entry ({lam}, {mu}, {k}) on {A.name}: {exc}") from exc
            # multi-dimensional rules have no endpoint weighting for singular densities
            if A.rank > 1 and min(lam.real for pair in self.weight_pairs for lam in pair) < A.n_over_r:
                raise ConfigError(f"weights below n/r = {A.n_over_r} are outside the {A.name} quadrature grid")

    def signatures_for(self, A: JordanAlgebra) -> list[Signature]:
        if A.rank == 1:
            return [Signature((l,)) for l in self.l_range]
        return [Signature(k) for k in self.signatures if len(k) == A.rank]

    @classmethod
    def from_json(cls, text: str) -> "VerifyConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config fields: {sorted(extra)}")
        try:
            return cls(**data)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_file(cls, path: str) -> "VerifyConfig":
        try:
            with open(path) as fh:
                return cls.from_json(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc


@dataclass
class Record:
    suite: str
    check: str
    anchor: str
    inputs: dict
    expected: object
    computed: object
    abs_error: float
    rel_error: float
    tolerance: float
    passed: bool

    def key(self):
        return (self.suite, self.check, json.dumps(self.inputs, sort_keys=True))


@dataclass
class Report:
    records: list[Record]
    environment: dict

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def summary(self) -> dict:
        n = len(self.records)
        p = sum(r.passed for r in self.records)
        return {"total": n, "passed": p, "failed": n - p}

    def to_dict(self) -> dict:
        return {
            "summary": self.summary,
            "passed": self.passed,
            "environment": self.environment,
            "records": [asdict(r) for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        return cls([Record(**r) for r in d["records"]], d["environment"])


def _num(z):
    z = complex(z)
    if not math.isfinite(z.real) or not math.isfinite(z.imag):
        return str(z)
    return _plain(z)


def _record(suite, check, anchor, inputs, expected, computed, tol, *, rel_floor=0.0, kind="rel"):
    expected_c, computed_c = complex(expected), complex(computed)
    abs_err = abs(computed_c - expected_c)
    rel = abs_err / max(abs(expected_c), rel_floor) if max(abs(expected_c), rel_floor) > 0 else abs_err
    err = rel if kind == "rel" else abs_err
    return Record(suite, check, anchor, inputs, _num(expected_c), _num(computed_c),
                  float(abs_err), float(rel), float(tol), bool(err <= tol))


def _max_record(suite, check, anchor, inputs, errors, tol):
    worst = float(max(errors)) if len(errors) else 0.0
    return Record(suite, check, anchor, {**inputs, "draws": len(errors)}, 0.0, worst,
                  worst, worst, float(tol), bool(worst <= tol))


# --------------------------------------------------------------------------
# random sampling helpers


def random_real(A: JordanAlgebra, rng, lo=0.3, hi=2.0, positive=False) -> Element:
    """Random real element with eigenvalue moduli in [lo, hi]."""
    ev = rng.uniform(lo, hi, A.rank)
    if not positive:
        ev = ev * rng.choice([-1.0, 1.0], A.rank)
    return _rotate(A, ev, rng)


def _rotate(A: JordanAlgebra, ev, rng) -> Element:
    if A.kind is Kind.RANK1:
        return Element(A, ev[:1])
    if A.kind is Kind.SYMREAL:
        Q, _ = np.linalg.qr(rng.normal(size=(A.rank, A.rank)))
        from .jordan import from_matrix

        return from_matrix(A, Q @ np.diag(ev) @ Q.T)
    v = rng.normal(size=A.dim - 1)
    v /= np.linalg.norm(v)
    return Element(A, np.concatenate([[(ev[0] + ev[1]) / 2], (ev[0] - ev[1]) / 2 * v]))


def random_disk(A: JordanAlgebra, rng, radius=0.9) -> Element:
    z = Element(A, rng.normal(size=A.dim) + 1j * rng.normal(size=A.dim))
    return z * (radius * rng.uniform(0.1, 1.0) / spectral_norm(z))


def random_tube(A: JordanAlgebra, rng) -> Element:
    re = random_real(A, rng, 0.0, 0.8)
    im = random_real(A, rng, 0.5, 1.5, positive=True)
    return Element(A, re.coords + 1j * im.coords)


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


def _rel1(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1.0))


# --------------------------------------------------------------------------
# suites


def suite_jordan(cfg: VerifyConfig, rng) -> list[Record]:
    out = []
    S = "jordan-identities"
    for A in cfg.algebra_objs:
        errs = {k: [] for k in ("power_assoc", "det_P", "det_B", "P_inverse", "inner_trace_D", "dual_power")}
        p = 2 * A.dim / A.rank
        for _ in range(cfg.draws):
            x = random_real(A, rng)
            errs["power_assoc"].append(_rel(mul(x, mul(x, x)).coords, spectral_fn(x, "pow", 3).coords))
            errs["det_P"].append(_rel(quad_P(x).det(), jordan_det(x) ** p))
            errs["P_inverse"].append(_rel1(quad_P(inverse(x)).matrix, quad_P(x).inv().matrix))
            a, b = random_disk(A, rng), random_disk(A, rng)
            errs["det_B"].append(_rel(bmap_B(a, b).det(), generic_norm(a, b) ** p))
            errs["inner_trace_D"].append(_rel1(inner(a, b), A.rank / (2 * A.dim) * dmap_D(a, b).trace()))
            c = random_real(A, rng, positive=True)
            k = Signature(tuple(sorted(rng.integers(0, 4, A.rank), reverse=True)))
            lhs, rhs = check_dual_power(c, k, int(k.parts[0]) + int(rng.integers(0, 2)))
            errs["dual_power"].append(_rel(lhs, rhs))
        anchors = {
            "power_assoc": "power associativity",
            "det_P": "Det P(x) = det(x)^(2n/r)",
            "det_B": "Det B(x,y) = h(x,y)^(2n/r)",
            "P_inverse": "P(x^-1) = P(x)^-1",
            "inner_trace_D": "(x|y) = r/(2n) Tr D(x,y)",
            "dual_power": "det(z)^k0 Delta_k(z^-1) = dual power",
        }
        for k, v in errs.items():
            out.append(_max_record(S, k, anchors[k], {"algebra": A.name}, v, cfg.tol[k]))
    return out


def suite_geometry(cfg: VerifyConfig, rng) -> list[Record]:
    out = []
    S = "geometry-identities"
    for A in cfg.algebra_objs:
        errs = {k: [] for k in ("quasi_inverse", "hua_det", "inversion_factorization",
                                "cayley_roundtrip", "resolvent_equivariance")}
        for _ in range(cfg.draws):
            x, v = random_real(A, rng), random_real(A, rng, 0.05, 0.3)
            errs["quasi_inverse"].append(_rel1(quasi_inverse(x, v).coords, inverse(inverse(x) - v).coords))
            y = random_real(A, rng)
            u = y + random_real(A, rng, 0.5, 2.0, positive=True)
            w = y + random_real(A, rng, 0.1, 0.4, positive=True)
            m = midpoint_resolvent(w, y, u)
            errs["hua_det"].append(_rel(jordan_det(m), jordan_det(w - y) * jordan_det(u - w) / jordan_det(u - y)))
            a = random_real(A, rng, positive=True)
            b = random_real(A, rng, positive=True)
            lhs = quad_P(inverse(b) - inverse(a)).matrix
            rhs = (quad_P(a).inv() @ quad_P(a - b) @ quad_P(b).inv()).matrix
            errs["inversion_factorization"].append(_rel1(lhs, rhs))
            z = random_disk(A, rng)
            back = act(GroupGenerator.inverse_cayley(), act(GroupGenerator.cayley(), z))
            errs["cayley_roundtrip"].append(_rel1(back.coords, z.coords))
            g = GroupGenerator.dilate(random_real(A, rng, 0.5, 2.0, positive=True))
            lhs = midpoint_resolvent(act(g, w), act(g, y), act(g, u)).coords
            errs["resolvent_equivariance"].append(_rel1(lhs, quad_P(g.a)(m).coords))
        anchors = {
            "quasi_inverse": "B(x,v)^-1(x - P(x)v) = (x^-1 - v)^-1",
            "hua_det": "det((w-y)^-1 + (x-w)^-1)^-1 = det(w-y) det(x-y)^-1 det(x-w)",
            "inversion_factorization": "P(-x^-1 + y^-1) = P(x)^-1 P(x-y) P(y)^-1",
            "cayley_roundtrip": "Cayley transform round trip",
            "resolvent_equivariance": "resolvent equivariance under dilations",
        }
        for k, v in errs.items():
            out.append(_max_record(S, k, anchors[k], {"algebra": A.name}, v, cfg.tol[k]))
    return out


_GAMMA_PROBES = {"1": (0,), "delta(1,0)": (1, 0), "delta(2,1)": (2, 1)}


def suite_gamma(cfg: VerifyConfig, rng) -> list[Record]:
    out = []
    size = cfg.sizes.get("cone", 32)
    for A in cfg.algebra_objs:
        schemes = ["GaussJacobi1D"] if A.rank == 1 else ["EigenAngle", "CartesianIterated"]
        probes = {"1": (0,)} if A.rank == 1 else _GAMMA_PROBES
        for lam in cfg.gamma_lambdas:
            for name, k in probes.items():
                k = k if len(k) == A.rank else (0,) * A.rank
                for sch in schemes:
                    rule = cone_rule(A, size, lam - A.n_over_r, sch)
                    val = integrate_weighted(rule, lambda z, k=k: delta_k(z, k)).value
                    out.append(_record("gamma-integral", f"gamma-{sch}", "Gamma integral over the cone",
                                       {"algebra": A.name, "lambda": lam, "f": name},
                                       gamma_r(A, lam, k), val, cfg.tol["gamma_integral"]))
    return out


def _frame_point(A: JordanAlgebra, coeffs) -> Element:
    coeffs = coeffs[: A.rank]
    return Element(A, sum(c * e.coords for c, e in zip(coeffs, A.frame)))


def _engines(cfg, A):
    if A.rank == 1:
        return [("GaussJacobi1D", cfg.sizes.get("GaussJacobi1D", 64), "minktype_rank1")]
    tolkey = {"EigenAngle": "minktype_eigen", "CartesianIndicator": "minktype_cartesian",
              "MonteCarlo": "minktype_cartesian"}
    return [(e, cfg.sizes.get(e, 32), tolkey[e]) for e in cfg.engines]


def suite_beta(cfg: VerifyConfig, rng) -> list[Record]:
    out = []
    S = "beta-minktype"
    for A in cfg.algebra_objs:
        for sch, size, tolkey in _engines(cfg, A):
            for lam, mu in cfg.weight_pairs:
                for k in cfg.signatures_for(A):
                    p = WeightParams(lam, mu, k, A)
                    rule = holo_rule(p, sch, size)
                    for uc in cfg.frame_points:
                        u = _frame_point(A, uc)
                        res = min_ktype_image(p, u, rule)
                        out.append(_record(S, f"minktype-{sch}", "min-K-type image B_r(lam,mu,k) Delta_k(u)",
                                           {"algebra": A.name, "lambda": _plain(lam), "mu": _plain(mu),
                                            "k": list(k.parts), "u": list(uc[: A.rank])},
                                           res.rhs, res.lhs, cfg.tol[tolkey]))
        # collapse identity on a 50-point grid
        grid_rng = np.random.default_rng(cfg.seed + 17)
        for i in range(50):
            lam = A.n_over_r - 1 + grid_rng.uniform(0.2, 4.0) + 1j * grid_rng.uniform(-1, 1) * (i % 2)
            mu = A.n_over_r - 1 + grid_rng.uniform(0.2, 4.0)
            l = int(grid_rng.integers(0, 5))
            a, b = collapse_check(A, lam, mu, l)
            out.append(_record(S, "collapse", "B_r(lam,mu,(l..l)) = B_r(lam+l,mu+l,0)",
                               {"algebra": A.name, "i": i, "lambda": _plain(lam), "mu": _plain(mu), "l": l},
                               b, a, cfg.tol["collapse"]))
    return out


def _euler_beta(lam, mu, l):
    return complex(np.exp(loggamma(lam + l) + loggamma(mu + l) - loggamma(lam + mu + 2 * l)))


def suite_kp(cfg: VerifyConfig, rng) -> list[Record]:
    out = []
    S = "rank1-kp"
    n = cfg.sizes.get("GaussJacobi1D", 64)
    v = kp_holo_1d(2, 2, 0, lambda w: np.ones_like(w), 1j, 2 + 1j, n)
    out.append(_record(S, "kp-point", "rank-one beta value 1/6", {"lambda": 2, "mu": 2, "l": 0},
                       1 / 6, v, cfg.tol["kp_point"]))
    x, y = 2.0 + 1.0j, 0.5 + 0.3j
    from .jordan import rank1

    R = rank1()
    for lam in cfg.kp_weights:
        for mu in cfg.kp_weights:
            for l in cfg.l_range:
                val = kp_holo_1d(lam, mu, l, lambda w: np.ones_like(w), x, y, n)
                ref = _euler_beta(lam, mu, l) * (x - y) ** l / math.factorial(l)
                out.append(_record(S, "kp-beta", "rank-one holographic operator on constants",
                                   {"lambda": _plain(lam), "mu": _plain(mu), "l": l}, ref, val, cfg.tol["kp_beta"]))
    for l in cfg.l_range:
        p = WeightParams(2.5, 1.5, l, R)
        h = holo_up_scalar(p, ScalarFunction.constant(1.0), Element(R, [x]), Element(R, [y]))
        kp = kp_holo_1d(2.5, 1.5, l, lambda w: np.ones_like(w), x, y, n)
        out.append(_record(S, "kp-bridge", "normalization ratio 1/l!", {"l": l},
                           1 / math.factorial(l), kp / h.value, cfg.tol["kp_bridge"]))
    return out


def suite_rankin_cohen(cfg: VerifyConfig, rng) -> list[Record]:
    out = []
    S = "rankin-cohen"
    for lam, mu in ((Fraction(3, 2), Fraction(5, 3)), (Fraction(2), Fraction(-1, 2))):
        for l in range(4):
            mismatches = 0
            for a in range(6):
                for b in range(6):
                    f = {(a, b): Fraction(1)}
                    for X in rc.GENERATORS:
                        lhs = rc.rankin_cohen(lam, mu, l, rc.act_bivariate(X, lam, mu, f))
                        rhs = rc.act_univariate(X, lam + mu + 2 * l, rc.rankin_cohen(lam, mu, l, f))
                        mismatches += lhs != rhs
            out.append(Record(S, "rc-intertwining", "infinitesimal sl(2) intertwining",
                              {"lambda": str(lam), "mu": str(mu), "l": l}, 0, mismatches,
                              float(mismatches), float(mismatches), cfg.tol["rc_intertwining"], mismatches == 0))
    for lam, mu, l in ((1, 1, 0), (2.5, 1.5, 1), (2, 3, 2), (complex(3, 0.7), 2, 3)):
        ratios = rc_kp_composition(lam, mu, l, 6)
        spread = max(abs(r - ratios[0]) for r in ratios) / abs(ratios[0])
        out.append(Record(S, "rc-kp-constancy", "Rankin-Cohen after holographic is scalar",
                          {"lambda": _plain(lam), "mu": _plain(mu), "l": l}, _num(ratios[0]), _num(ratios[-1]),
                          float(spread * abs(ratios[0])), float(spread), cfg.tol["rc_kp_constancy"],
                          spread <= cfg.tol["rc_kp_constancy"]))
    return out


def _exp_probe(A: JordanAlgebra) -> ScalarFunction:
    b = 0.5 * unit(A).coords
    b[-1] += 0.1

    def fn(w):
        return np.exp(1j * np.einsum("...i,ij,j->...", w.coords, A.gram, b))

    return ScalarFunction.callback(fn, "exp(i(b|w))")


def equivariance_cases(A: JordanAlgebra, cfg: VerifyConfig, rng, kind: str, count: int):
    """Rejection-sample branch-safe configurations for one generator class."""
    lam, mu = cfg.weight_pairs[0]
    k = Signature.constant(A.rank, 1) if A.rank > 1 else Signature((1,))
    if kind != "Invert" and A.rank > 1:
        k = Signature((2,) + (1,) * (A.rank - 1))
    p = WeightParams(lam, mu, k, A)
    size = 48 if A.rank == 1 else 16
    rule = holo_rule(p, None, size)
    f = _exp_probe(A)
    found, tries = [], 0
    while len(found) < count and tries < 200 * count:
        tries += 1
        if kind == "Translate":
            g = GroupGenerator.translate(random_real(A, rng, 0.1, 1.0))
        elif kind == "Dilate":
            g = GroupGenerator.dilate(_frame_point(A, rng.uniform(0.5, 2.0, A.rank)))
        else:
            g = GroupGenerator.invert()
        x, y = random_tube(A, rng), random_tube(A, rng)
        try:
            res = equivariance_residual(p, f, g, x, y, rule)
        except (BranchError, DomainError):
            continue
        found.append(res)
    return p, found


def suite_equivariance(cfg: VerifyConfig, rng) -> list[Record]:
    out = []
    for A in cfg.algebra_objs:
        for kind in ("Translate", "Dilate", "Invert"):
            p, cases = equivariance_cases(A, cfg, rng, kind, cfg.equivariance_configs)
            fac = cfg.tol["equivariance_factor"]
            for i, res in enumerate(cases):
                out.append(Record("equivariance", f"equivariance-{kind}", "intertwining relation",
                                  {"algebra": A.name, "case": i, "k": list(p.k.parts)}, _num(res.rhs), _num(res.lhs),
                                  res.residual, res.residual / max(abs(res.rhs), 1e-300),
                                  fac * res.quad_error, res.residual <= fac * res.quad_error))
            if len(cases) < cfg.equivariance_configs:
                out.append(Record("equivariance", f"equivariance-{kind}-sampling", "intertwining relation",
                                  {"algebra": A.name}, cfg.equivariance_configs, len(cases), 0.0, 0.0, 0.0, False))
    return out


def suite_cross(cfg: VerifyConfig, rng) -> list[Record]:
    out = []
    S = "cross-algebra"
    Sym, Sp = sym_real(2), spin(3)
    errs = []
    for _ in range(cfg.draws):
        x, y = random_real(Sym, rng), random_real(Sym, rng)
        tx, ty = sym2_to_spin3(x), sym2_to_spin3(y)
        errs.append(max(
            _rel1(sym2_to_spin3(mul(x, y)).coords, mul(tx, ty).coords),
            _rel1(jordan_det(x), jordan_det(tx)),
            _rel1(jordan_trace(x), jordan_trace(tx)),
            _rel1(spectral(x).eigenvalues, spectral(tx).eigenvalues),
        ))
    out.append(_max_record(S, "isomorphism", "Sym(2,R) to Spin(3) isomorphism", {}, errs, cfg.tol["isomorphism"]))
    for lam, mu in cfg.weight_pairs:
        for k in cfg.signatures_for(Sym):
            a = beta_constant(WeightParams(lam, mu, k, Sym))
            b = beta_constant(WeightParams(lam, mu, k, Sp))
            out.append(Record(S, "beta-closed-form", "B_2 closed form agrees across models",
                              {"lambda": _plain(lam), "mu": _plain(mu), "k": list(k.parts)}, _num(a), _num(b),
                              abs(a - b), abs(a - b) / abs(a), 0.0, a == b))
            size = cfg.sizes.get("EigenAngle", 32)
            for uc in cfg.frame_points:
                u = _frame_point(Sym, uc)
                r1 = min_ktype_image(WeightParams(lam, mu, k, Sym), u, holo_rule(WeightParams(lam, mu, k, Sym), "EigenAngle", size))
                r2 = min_ktype_image(WeightParams(lam, mu, k, Sp), sym2_to_spin3(u),
                                     holo_rule(WeightParams(lam, mu, k, Sp), "EigenAngle", size))
                tol = r1.lhs_error + r2.lhs_error
                d = abs(r1.lhs - r2.lhs)
                out.append(Record(S, "minktype-quadrature", "min-K-type value agrees across models",
                                  {"lambda": _plain(lam), "mu": _plain(mu), "k": list(k.parts), "u": list(uc[:2])},
                                  _num(r1.lhs), _num(r2.lhs), d, d / abs(r1.lhs), tol, d <= tol))
    return out


_SUITE_FNS: dict[str, Callable] = {
    "jordan-identities": suite_jordan,
    "geometry-identities": suite_geometry,
    "gamma-integral": suite_gamma,
    "beta-minktype": suite_beta,
    "rank1-kp": suite_kp,
    "rankin-cohen": suite_rankin_cohen,
    "equivariance": suite_equivariance,
    "cross-algebra": suite_cross,
}


def run(config: VerifyConfig, max_workers: int | None = None) -> Report:
    """Run the configured suites concurrently and collect a sorted report."""
    ss = np.random.SeedSequence(config.seed)
    children = dict(zip(SUITES, ss.spawn(len(SUITES))))
    jobs = [(s, np.random.default_rng(children[s])) for s in config.suites]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        parts = list(pool.map(lambda job: _SUITE_FNS[job[0]](config, job[1]), jobs))
    records = sorted((r for part in parts for r in part), key=Record.key)
    env = {
        "version": __version__,
        "seed": config.seed,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "suites": list(config.suites),
    }
    return Report(records, env)


# --------------------------------------------------------------------------
# convergence tables


def _table_rank1_beta(size):
    lam, mu, l = complex(3, 0.7), 2.5, 1
    x, y = 2 + 1j, 0.5 + 0.3j
    ref = _euler_beta(lam, mu, l) * (x - y) ** l
    f = lambda w: np.ones_like(w)  # noqa: E731
    val = kp_holo_1d(lam, mu, l, f, x, y, size)
    coarse = kp_holo_1d(lam, mu, l, f, x, y, max(1, size // 2))
    return val, abs(val - coarse), abs(val - ref)


def _table_minktype(algebra, scheme):
    def fn(size):
        A = algebra
        p = WeightParams(2.5, 4, (2, 1), A)
        u = _frame_point(A, (1, 2))
        res = min_ktype_image(p, u, holo_rule(p, scheme, size))
        return res.lhs, res.lhs_error, abs(res.lhs - res.rhs)

    return fn


def _table_gamma(size):
    A = sym_real(2)
    lam = 2.75
    rule = cone_rule(A, size, lam - A.n_over_r, "EigenAngle")
    # a non-polynomial probe so the error is visible
    res = integrate_weighted(rule, lambda z: np.exp(-0.5 * jordan_trace(z)) * delta_k(z, (1, 0)))
    ref = gamma_r(A, lam, (1, 0)) * 1.5 ** (-(2 * lam + 1))
    return res.value, res.error, abs(res.value - ref)


CHECKS: dict[str, Callable] = {
    "rank1-beta": _table_rank1_beta,
    "sym2-minktype-eigen": _table_minktype(sym_real(2), "EigenAngle"),
    "sym2-minktype-cartesian": _table_minktype(sym_real(2), "CartesianIndicator"),
    "spin3-minktype-eigen": _table_minktype(spin(3), "EigenAngle"),
    "sym2-gamma": _table_gamma,
}


def convergence_table(check_id: str, sizes: list[int]) -> list[tuple]:
    """Rows (size, value, err_est, err_true) for a check with a closed form."""
    try:
        fn = CHECKS[check_id]
    except KeyError:
        raise KeyError(f"unknown check id {check_id!r}; known: {sorted(CHECKS)}") from None
    rows = []
    for s in sizes:
        val, est, true = fn(int(s))
        rows.append((int(s), complex(val), float(est), float(true)))
    return rows


def table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["size", "value", "err_est", "err_true"])
    for size, val, est, true in rows:
        v = repr(val.real) if val.imag == 0 else f"{val.real!r}{val.imag:+.17g}j"
        w.writerow([size, v, f"{est:.6e}", f"{true:.6e}"])
    return buf.getvalue()
