"""Per-n report assembly and the verification suites behind ``verify``."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import arithmetic as ar
from . import variety as va
from .errors import BundleError, NoExtraLine
from .fibonacci import family, gcd_classification, hats, identity_suite
from .relation import build_F, closed_form_F, generator_identities, phi_generators, spin_fixed_identity

DEFAULT_K_RANGE = range(-3, 4)


@dataclass(frozen=True)
class ReportConfig:
    tol: float = va.MEMBERSHIP_TOL
    samples: int = 20
    k_range: range = DEFAULT_K_RANGE
    alexander_samples: int = 5


def _section(fn: Callable[[], object]) -> dict:
    try:
        return {"status": "ok", "data": fn()}
    except BundleError as exc:
        return {"status": "skipped", "reason": f"{type(exc).__name__}: {exc}"}
    except ArithmeticError as exc:
        return {"status": "error", "reason": f"{type(exc).__name__}: {exc}"}


def _skip(reason: str) -> dict:
    return {"status": "skipped", "reason": reason}


def _points(pts, n: int, check) -> dict:
    return {"points": [p.to_json() for p in pts], "max_residual": max((check(p) for p in pts), default=0.0)}


@dataclass
class BundleReport:
    n: int
    config: ReportConfig
    sections: dict = field(default_factory=dict)

    @property
    def hyperbolic(self) -> bool:
        return abs(self.n) > 2

    @property
    def errors(self) -> list[str]:
        return [k for k, v in self.sections.items() if v["status"] == "error"]

    def to_json(self) -> dict:
        return {"n": self.n, "hyperbolic": self.hyperbolic, "tol": self.config.tol, "sections": self.sections}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def point_cloud(self) -> list[va.VarietyPoint]:
        out = []
        for name in ("multiplicity_points", "intersection_lattice", "extra_line", "discrete_faithful", "psl_quotient"):
            sec = self.sections.get(name, {})
            for p in sec.get("data", {}).get("points", []) if sec.get("status") == "ok" else []:
                out.append(p)
        for fam in self.sections.get("fillings", {}).get("data", []) or []:
            out.extend(fam["points"])
        return out


CSV_HEADER = ["tag", "x_re", "x_im", "y_re", "y_im", "z_re", "z_im"]


def point_cloud_csv(points: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for p in points:
        w.writerow([p["tag"], *p["x"], *p["y"], *p["z"]])
    return buf.getvalue()


def _family_section(n: int) -> dict:
    fam = family(n)
    out = {k: getattr(fam, k).to_json() for k in ("h", "j", "k", "l")}
    try:
        hh = hats(n)
        out["h_hat"], out["l_hat"] = hh.h_hat.to_json(), hh.l_hat.to_json()
    except BundleError:
        pass
    return out


def _df_section(n: int, tol: float) -> dict:
    cands = ar.discrete_faithful(n, tol)
    return {
        "points": [c.point.to_json() for c in cands],
        "candidates": [c.to_json() for c in cands],
        "count": len(cands),
        "tol": tol,
    }


def _alexander_section(n: int, cfg: ReportConfig) -> dict:
    zs = ar.z_values(n)
    worst = 0.0
    for p in va.canonical_descriptor(n).sample(cfg.alexander_samples):
        ta = ar.twisted_alexander(p)
        for T in (2.0, -1.5, 0.5 + 1j):
            worst = max(worst, abs(ar.fox_calculus_oracle(p, n, T) - ta(T)))
    return {"Z": zs, "oracle_max_deviation": worst, "tol": 1e-8}


def _psl_section(n: int) -> dict:
    q = va.psl_quotient(n)
    data = {"parity": q.parity, "description": q.description, "model": q.model.to_json()}
    if q.parity == "even":
        pts = q.lifted_points()
        data["points"] = [p.to_json() for p in pts]
        data["ybar"] = q.ybar_values()
        data["stated_zero_point_angles"] = [str(a) for a in q.stated_zero_point_angles]
        data["line"] = {"q1": q.line.q1.to_json(), "q2": q.line.q2.to_json(), "q3": q.line.q3.to_json()}
        data["has_z_line"] = q.has_z_line
        data["max_residual"] = max((va.psl_max(n, *p.coords()) for p in pts), default=0.0)
    return data


def _fillings_section(n: int, k_range) -> list:
    out = []
    for fam in ar.filling_characters(n, k_range):
        d = fam.to_json()
        d["max_residual"] = ar.filling_reducible_residual(fam)
        out.append(d)
    return out


def report(n: int, config: ReportConfig = ReportConfig()) -> BundleReport:
    """Assemble every section for n; failures are recorded per section."""
    rep = BundleReport(n, config)
    S = rep.sections
    tol = config.tol
    S["family"] = _section(lambda: _family_section(n))
    S["identities"] = _section(lambda: identity_suite(n).results)
    S["fillings"] = _section(lambda: _fillings_section(n, config.k_range))
    S["lens_fillings"] = _section(lambda: [vars(f) for f in ar.filling_table(-(n + 2))])
    if n == -2:
        S["reducible"] = _section(lambda: [c.to_json() for c in va.reducible_components(n)])
        for name in ("genus", "trace_field", "dilatation", "canonical"):
            S[name] = _skip("n = -2: the reducible locus is a surface; reduced report")
        return rep
    S["reducible"] = _section(lambda: [c.to_json() for c in va.reducible_components(n)])
    if not rep.hyperbolic:
        def table():
            return [
                dict(c.to_json(), max_residual=c.verify(config.samples)) for c in va.nonhyperbolic_table(n)
            ]

        S["nonhyperbolic_table"] = _section(table)
        for name in ("genus", "trace_field", "dilatation", "canonical"):
            S[name] = _skip(f"n = {n} is not hyperbolic")
        return rep
    S["genus"] = _section(lambda: {"genus": va.genus(n), "model": va.hyperelliptic_model(n).to_json()})
    S["canonical"] = _section(
        lambda: {"max_residual": va.canonical_descriptor(n).verify(config.samples), "samples": config.samples, "tol": tol}
    )

    def extra():
        x = va.extra_line(n)
        p, q = va.extra_line_meets_canonical(n)
        z0 = va.extra_line_z0(n)
        return {
            "z0": z0,
            "z0_squared": z0 * z0,
            "points": [p.to_json(), q.to_json()],
            "max_residual": x.verify(config.samples),
            "tol": tol,
        }

    S["extra_line"] = _section(extra)
    S["multiplicity_points"] = _section(
        lambda: _points(va.multiplicity_points(n), n, lambda p: va.phi_max(n, *p.coords()))
    )
    S["intersection_lattice"] = _section(
        lambda: _points(
            va.intersection_lattice(n), n,
            lambda p: max(va.phi_max(n, *p.coords()), va.reducible_residual(p)),
        )
    )
    S["trace_field"] = _section(lambda: ar.trace_field(n).to_json())
    S["discrete_faithful"] = _section(lambda: _df_section(n, tol))
    S["alexander"] = _section(lambda: _alexander_section(n, config))
    S["dilatation"] = _section(lambda: ar.genus_relation(n).to_json())
    S["psl_quotient"] = _section(lambda: _psl_section(n))
    return rep


# --- verification suites -----------------------------------------------------


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    n: int
    status: str  # "pass", "fail" or "skip"
    detail: str = ""

    def to_json(self) -> dict:
        return {"suite": self.suite, "n": self.n, "status": self.status, "detail": self.detail}


def _s_identities(n, tol):
    if n == 0:
        return "skip", "n = 0"
    rep = identity_suite(n)
    return ("pass" if rep.ok else "fail"), ",".join(rep.failures)


def _s_gcd(n, tol):
    cls = gcd_classification(n)
    return ("pass" if cls.ok else "fail"), ",".join(cls.mismatches)


def _s_separability(n, tol):
    if abs(n) <= 2:
        return "skip", "non-hyperbolic"
    return ("pass" if va.hyperelliptic_model(n).is_squarefree() else "fail"), ""


def _s_F(n, tol):
    a, b = build_F(n), closed_form_F(n)
    bad = [i for i, (p, q) in enumerate(zip(a.entries(), b.entries())) if p != q]
    ok = not bad and all(generator_identities(n).values())
    return ("pass" if ok else "fail"), ",".join(map(str, bad))


def _s_phi(n, tol):
    # phi_generators raises DerivationMismatch on any disagreement
    phi_generators(n)
    return ("pass" if spin_fixed_identity(n) else "fail"), ""


def _s_membership(n, tol, samples=20):
    if n == -2:
        worst = max(c.verify(samples) for c in va.nonhyperbolic_table(n))
        return ("pass" if worst <= tol else "fail"), f"max={worst:.3g}"
    if abs(n) <= 2:
        worst = max(c.verify(samples) for c in va.nonhyperbolic_table(n))
        return ("pass" if worst <= tol else "fail"), f"max={worst:.3g}"
    worst = va.canonical_descriptor(n).verify(samples)
    for p in va.multiplicity_points(n):
        worst = max(worst, va.phi_max(n, *p.coords()))
    for p in va.intersection_lattice(n):
        worst = max(worst, va.phi_max(n, *p.coords()), va.reducible_residual(p))
    try:
        worst = max(worst, va.extra_line(n).verify(samples))
        for p in va.extra_line_meets_canonical(n):
            worst = max(worst, va.phi_max(n, *p.coords()))
    except NoExtraLine:
        pass
    return ("pass" if worst <= tol else "fail"), f"max={worst:.3g}"


def _s_oracle(n, tol):
    if abs(n) <= 2:
        return "skip", "non-hyperbolic"
    worst = _alexander_section(n, ReportConfig(alexander_samples=20))["oracle_max_deviation"]
    return ("pass" if worst <= 1e-8 else "fail"), f"max={worst:.3g}"


def _s_psl(n, tol):
    if abs(n) <= 2 or n % 2:
        return "skip", "odd or non-hyperbolic"
    q = va.psl_quotient(n)
    worst = max((va.psl_max(n, *p.coords()) for p in q.lifted_points()), default=0.0)
    for u in va.line_parameters(50):
        try:
            worst = max(worst, va.psl_max(n, *q.line.lift(u)))
        except BundleError:
            continue
    return ("pass" if worst <= tol else "fail"), f"max={worst:.3g}"


def _s_relation(n, tol):
    if abs(n) <= 2:
        return "skip", "non-hyperbolic"
    g = ar.genus_relation(n)
    ok = g.holds and g.d == abs(n) - 1
    return ("pass" if ok else "fail"), f"d={g.d} g={g.g} alpha={g.alpha}"


SUITES: dict[str, Callable] = {
    "identities": _s_identities,
    "gcd-table": _s_gcd,
    "separability": _s_separability,
    "F-entries": _s_F,
    "phi-derivation": _s_phi,
    "membership": _s_membership,
    "oracle": _s_oracle,
    "psl": _s_psl,
    "relation": _s_relation,
}

DEFAULT_RANGES = {
    "identities": range(-50, 51),
    "gcd-table": range(-30, 31),
    "separability": range(-50, 51),
    "F-entries": range(-8, 9),
    "phi-derivation": range(-30, 31),
    "membership": range(-20, 21),
    "oracle": range(-7, 8),
    "psl": range(-20, 21),
    "relation": range(-50, 51),
}


@dataclass
class VerifyOutcome:
    results: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        return {"ok": self.ok, "results": [r.to_json() for r in self.results]}


def verify(n_range=None, suites: Iterable[str] = tuple(SUITES), tol: float = va.MEMBERSHIP_TOL) -> VerifyOutcome:
    """Run suites over n_range (or each suite's default range)."""
    t0 = time.perf_counter()
    out = VerifyOutcome()
    for name in suites:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        for n in n_range if n_range is not None else DEFAULT_RANGES[name]:
            try:
                status, detail = SUITES[name](n, tol)
            except (BundleError, ArithmeticError) as exc:
                status, detail = "fail", f"{type(exc).__name__}: {exc}"
            out.results.append(SuiteResult(name, n, status, detail))
    out.seconds = time.perf_counter() - t0
    return out
