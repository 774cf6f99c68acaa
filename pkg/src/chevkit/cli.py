"""Command-line front end: root data queries and verification suites with JSON reports."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

from . import __version__
from .report import INCONCLUSIVE, REFUTED, SKIPPED, VERIFIED, CheckReport
from .rings import Ideal, PolyQuotient, PolyRing, Ring, RingError, ZMod, parse_ideal, parse_ring
from .roots import (
    RootSystem,
    RootSystemError,
    enumerate_subsystems,
    enumerate_subsystems_by_orbits,
    parse_system,
    phi_prime,
    weyl_orbits_on_subsystems,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_REFUTED, EXIT_CONFIG, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suite: str
    system: str | None = None
    rings: list[str] = field(default_factory=list)
    ideal: str | None = None
    seed: int = 0
    samples: int | None = None
    jobs: int = 1
    budget: int | None = None
    out: str | None = None

    def rng(self, salt: str) -> random.Random:
        """Independent stream per check so reordering checks leaves each one unchanged."""
        return random.Random(f"{self.seed}:{salt}")


@dataclass(frozen=True)
class Suite:
    id: str
    refs: str
    summary: str
    default_system: str | None
    default_rings: tuple[str, ...]
    run: Callable[[SuiteConfig], list[CheckReport]]


# --- helpers -----------------------------------------------------------------------------

def _system(cfg: SuiteConfig) -> RootSystem:
    try:
        return parse_system(cfg.system or "")
    except (RootSystemError, ValueError) as exc:
        raise ConfigError(f"bad --system {cfg.system!r}: {exc}") from exc


def _ring(desc: str) -> Ring:
    try:
        return parse_ring(desc)
    except (RingError, ValueError) as exc:
        raise ConfigError(f"bad --ring {desc!r}: {exc}") from exc


def default_ideal_token(ring: Ring) -> str:
    """``(p)`` for the smallest prime ``p | n`` over ``Z/n``; ``(x)`` over polynomial rings."""
    if isinstance(ring, ZMod):
        p = next((p for p in range(2, ring.n + 1) if ring.n % p == 0), None)
        if p is None or p == ring.n:
            raise ConfigError(f"{ring.descriptor} has no proper nonzero ideal of the form (p); pass --ideal")
        return str(p)
    if isinstance(ring, (PolyRing, PolyQuotient)):
        return ring.var
    raise ConfigError(f"no default ideal for {ring.descriptor}; pass --ideal")


def _ideal(cfg: SuiteConfig, ring: Ring) -> Ideal:
    token = cfg.ideal or default_ideal_token(ring)
    try:
        return parse_ideal(ring, token)
    except (RingError, ValueError) as exc:
        raise ConfigError(f"bad --ideal {token!r} over {ring.descriptor}: {exc}") from exc


def _samples(cfg: SuiteConfig, default: int) -> int:
    return default if cfg.samples is None else cfg.samples


def _tag(report: CheckReport, **info: Any) -> CheckReport:
    report.details = {**info, **report.details}
    return report


# --- suite runners ---------------------------------------------------------------------------

def run_lemmas(cfg: SuiteConfig) -> list[CheckReport]:
    from .lemmas import verify_d_orbit_remark, verify_lemmas

    phi = _system(cfg)
    reports = verify_lemmas(phi, budget=cfg.budget)
    if phi.type_label == "D" and phi.rank >= 5:
        reports.append(verify_d_orbit_remark(ranks=(phi.rank,)))
    return reports


def run_structure(cfg: SuiteConfig) -> list[CheckReport]:
    from .chevalley import verify_structure

    return [verify_structure(_system(cfg))]


def run_steinberg(cfg: SuiteConfig) -> list[CheckReport]:
    from .chevalley import algebra_for, verify_steinberg_relations, verify_structure

    phi = _system(cfg)
    reports = [verify_structure(phi)]
    alg = algebra_for(phi)
    for desc in cfg.rings:
        ring = _ring(desc)
        reports.append(verify_steinberg_relations(phi, ring, sample_size=cfg.samples, rng=cfg.rng(f"st:{desc}"),
                                                  jobs=cfg.jobs, alg=alg))
    return reports


def run_eta(cfg: SuiteConfig) -> list[CheckReport]:
    from .chevalley import verify_eta

    return [verify_eta(_system(cfg))]


def run_radical(cfg: SuiteConfig) -> list[CheckReport]:
    from .chevalley import radical_cases, verify_radical_action

    phi = _system(cfg)
    cases = radical_cases(phi)
    reports = []
    for desc in cfg.rings:
        ring = _ring(desc)
        ideal = _ideal(cfg, ring)
        for env in sorted(cases):
            psi, alpha = cases[env]
            reports.append(verify_radical_action(phi, psi, alpha, ring, ideal, samples=_samples(cfg, 40),
                                                 rng=cfg.rng(f"rad:{desc}:{env}")))
    if not cases:
        reports.append(CheckReport("radical-action", "reprRels", status=SKIPPED, system=phi.name,
                                   reason="no A3 subsystem with a non-orthogonal outside root"))
    return reports


def _relative(check: Callable[..., CheckReport], key: str, default_samples: int) -> Callable[[SuiteConfig], list[CheckReport]]:
    def run(cfg: SuiteConfig) -> list[CheckReport]:
        phi = _system(cfg)
        out = []
        for desc in cfg.rings:
            ring = _ring(desc)
            ideal = _ideal(cfg, ring)
            out.append(_tag(check(phi, ring, ideal, samples=_samples(cfg, default_samples),
                                  rng=cfg.rng(f"{key}:{desc}")), ideal=ideal.name))
        return out
    return run


def _zrels(phi, ring, ideal, samples, rng):
    from .words import verify_zrels

    return verify_zrels(phi, ring, ideal, samples=samples, rng=rng)


def _swan(phi, ring, ideal, samples, rng):
    from .words import verify_swan_relations

    return verify_swan_relations(phi, ring, ideal, samples=samples, rng=rng)


def _tits2(phi, ring, ideal, samples, rng):
    from .words import verify_titslemma2

    return verify_titslemma2(phi, ring, ideal, samples=samples, rng=rng)


def run_glue_t(cfg: SuiteConfig) -> list[CheckReport]:
    from .words import verify_glue_t_identity

    phi = _system(cfg)
    return [verify_glue_t_identity(phi, _ring(desc), samples=_samples(cfg, 200), rng=cfg.rng(f"glue:{desc}"))
            for desc in cfg.rings]


BETA_PARAMS = {"a": 2, "b": 3, "n": 1, "r": 2, "s": 7}


def run_beta(cfg: SuiteConfig) -> list[CheckReport]:
    from .words import verify_beta_chain, verify_beta_specializations

    phi = _system(cfg)
    p = BETA_PARAMS
    out = []
    for desc in cfg.rings:
        ring = _ring(desc)
        args = (phi, ring, p["a"], p["b"], p["n"], p["r"], p["s"])
        out.append(_tag(verify_beta_chain(*args, words=_samples(cfg, 20), rng=cfg.rng(f"beta:{desc}")), params=p))
        out.append(_tag(verify_beta_specializations(*args, rng=cfg.rng(f"beta-phi:{desc}")), params=p))
    return out


def run_u_pm(cfg: SuiteConfig) -> list[CheckReport]:
    from .words import verify_u_pm_decomposition

    phi = _system(cfg)
    return [verify_u_pm_decomposition(phi, 1, _ring(desc), samples=_samples(cfg, 50), rng=cfg.rng(f"upm:{desc}"))
            for desc in cfg.rings]


def run_ap(cfg: SuiteConfig) -> list[CheckReport]:
    from .transvections import verify_ap_relations

    out = []
    for desc in cfg.rings:
        ring = _ring(desc)
        out.append(verify_ap_relations(ring, n=5, samples=_samples(cfg, 100), rng=cfg.rng(f"ap:{desc}")))
        try:
            ideal = _ideal(cfg, ring)
        except ConfigError as exc:
            if cfg.ideal:
                raise
            out.append(CheckReport("ap-relations", "AP1-AP3", status=SKIPPED, reason=f"relative version: {exc}",
                                   details={"ring": ring.descriptor}))
            continue
        out.append(_tag(verify_ap_relations(ring, n=5, samples=_samples(cfg, 100), rng=cfg.rng(f"ap-rel:{desc}"),
                                            ideal=ideal), ideal=ideal.name))
    return out


def run_vdk(cfg: SuiteConfig) -> list[CheckReport]:
    from .transvections import vdk_generator_map_check

    return [vdk_generator_map_check(_ring(desc), n=5, samples=_samples(cfg, 64), rng=cfg.rng(f"vdk:{desc}"))
            for desc in cfg.rings]


def run_ring_axioms(cfg: SuiteConfig) -> list[CheckReport]:
    from .ring_checks import default_ring_suite, verify_double, verify_ring_axioms

    if not cfg.rings:
        return default_ring_suite(cfg.rng("rings"))
    out = []
    for desc in cfg.rings:
        ring = _ring(desc)
        out.append(verify_ring_axioms(ring, cfg.rng(f"axioms:{desc}"), count=_samples(cfg, 1000)))
        if cfg.ideal:
            out.append(verify_double(ring, _ideal(cfg, ring), cfg.rng(f"double:{desc}")))
    return out


def run_colimit(cfg: SuiteConfig) -> list[CheckReport]:
    from .ring_checks import verify_colimit

    out = []
    for desc in cfg.rings:
        ring = _ring(desc)
        a = ring.from_int(int(cfg.ideal or 2))
        out.append(verify_colimit(ring, a, cfg.rng(f"colim:{desc}"), samples=_samples(cfg, 60)))
    return out


SUITES: dict[str, Suite] = {s.id: s for s in (
    Suite("lemmas", "Lemma rpLemma, Lemma a2pc, Lemma ext34, Remark after Lemma ext34",
          "root-system lemmas on A3 and A2 subsystems", "E6", (), run_lemmas),
    Suite("structure", "Eq. Rcf22, structure constants",
          "structure-table invariants and the Jacobi audit", "E6", (), run_structure),
    Suite("steinberg", "Eqs. Radd, Rcf21, Rcf22",
          "Steinberg relations for t_a(xi) in the adjoint representation", "E6", ("zmod:4",), run_steinberg),
    Suite("eta", "Eq. RW", "eta signs for w_a(1) t_b(z) w_a(1)^-1", "A3", (), run_eta),
    Suite("radical", "Eq. reprRels", "rho on the unipotent radical U(Sigma, I)", "E6", ("zmod:4",), run_radical),
    Suite("zrels", "Lemma Zrels", "Z1-Z4 for the relative generators", "A3", ("zmod:4",),
          _relative(_zrels, "zrels", 200)),
    Suite("swan", "Prop. SwanP, Remark on R6", "R1-R6 for the relative generators", "A3", ("zmod:4",),
          _relative(_swan, "swan", 200)),
    Suite("tits2", "Lemma titsLemma2", "relative factorization over a split ideal", "A3",
          ("quot:poly:zmod:2:x:x^2",), _relative(_tits2, "tits2", 200)),
    Suite("glue-t", "Lemma glue_t", "eight-factor identity", "A3", ("zmod:8",), run_glue_t),
    Suite("beta", "Lemma T23", "beta-calculus chain and its specializations", "A3", ("zmod:8",), run_beta),
    Suite("u-pm", "Theorem centrality (U+- decomposition)", "parabolic decomposition of t_a(xi)", "E6",
          ("zmod:5",), run_u_pm),
    Suite("ap-relations", "Eqs. AP1-AP3", "transvection relations in GL_n", None, ("zmod:3", "zmod:4"), run_ap),
    Suite("vdk-map", "Theorem vdkTheorem", "Steinberg relations under x_ij -> X_{e_i, xi e_j}", None,
          ("zmod:3", "zmod:4"), run_vdk),
    Suite("ring-axioms", "doubleRing, semidirectProd, Tmap", "ring axioms, doubles, semidirect products, theta", None,
          (), run_ring_axioms),
    Suite("colimit", "Theorem QSlemma proof (colimit)", "stabilization of R|x tR_a[t]", None, ("int", "zmod:12"),
          run_colimit),
)}


def list_suites() -> dict[str, str]:
    return {s.id: s.refs for s in SUITES.values()}


# --- report assembly ------------------------------------------------------------------------

def summarize(checks: list[CheckReport]) -> dict[str, Any]:
    counts = {k: sum(1 for c in checks if c.status == k) for k in (VERIFIED, REFUTED, SKIPPED, INCONCLUSIVE)}
    if counts[REFUTED]:
        status = REFUTED
    elif counts[INCONCLUSIVE]:
        status = INCONCLUSIVE
    else:
        status = VERIFIED
    return {"total": len(checks), **counts, "status": status}


def exit_code(summary: dict[str, Any]) -> int:
    return {REFUTED: EXIT_REFUTED, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(summary["status"], EXIT_OK)


def run_suite(cfg: SuiteConfig) -> tuple[int, dict[str, Any]]:
    if cfg.suite not in SUITES:
        raise ConfigError(f"unknown suite {cfg.suite!r}; choose from {sorted(SUITES)}")
    suite = SUITES[cfg.suite]
    if cfg.system is None:
        cfg.system = suite.default_system
    if not cfg.rings:
        cfg.rings = list(suite.default_rings)
    if cfg.jobs < 1:
        raise ConfigError("--jobs must be positive")
    checks = [c.finish() for c in suite.run(cfg)]
    summary = summarize(checks)
    report = {
        "schema_version": SCHEMA_VERSION,
        "library_version": __version__,
        "suite": suite.id,
        "paper_refs": suite.refs,
        "config": {k: v for k, v in asdict(cfg).items() if k != "out"},
        "checks": [c.to_json() for c in checks],
        "summary": summary,
    }
    return exit_code(summary), report


def _emit(payload: Any, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=False, default=str) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- query commands ---------------------------------------------------------------------------

def roots_info(phi: RootSystem) -> dict[str, Any]:
    return {
        "system": phi.name,
        "rank": phi.rank,
        "roots": len(phi.roots),
        "positive_roots": phi.npos,
        "max_root": [int(c) for c in phi.roots[phi.max_root]],
        "phi_prime": phi_prime(phi).type_string,
        "cartan": phi.cartan.tolist(),
    }


def subsystems_info(phi: RootSystem, n: int) -> dict[str, Any]:
    chain = sorted(enumerate_subsystems(phi, n))
    orbit = sorted(enumerate_subsystems_by_orbits(phi, n))
    return {"system": phi.name, "type": f"A{n}", "chain_count": len(chain), "orbit_count": len(orbit),
            "agree": chain == orbit}


def orbits_info(phi: RootSystem, n: int) -> dict[str, Any]:
    sizes = weyl_orbits_on_subsystems(phi, n)
    return {"system": phi.name, "type": f"A{n}", "orbits": len(sizes), "orbit_sizes": sizes}


# --- argument parsing ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chevkit", description=__doc__)
    p.add_argument("--version", action="version", version=f"chevkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("roots", help="root counts, maximal root and the type of the orthogonal complement")
    r.add_argument("--system", required=True)
    r.add_argument("--out")

    for name, text in (("subsystems", "count A_n subsystems with both enumeration strategies"),
                       ("orbits", "Weyl-group orbits on A_n subsystems")):
        q = sub.add_parser(name, help=text)
        q.add_argument("--system", required=True)
        q.add_argument("--n", type=int, default=3)
        q.add_argument("--out")

    sub.add_parser("list", help="catalog of verification suites")

    v = sub.add_parser("verify", help="run a verification suite and emit a JSON report")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--system")
    v.add_argument("--ring", action="append", dest="rings", default=[], help="ring descriptor, repeatable")
    v.add_argument("--ideal", help="ideal token over the ring (for colimit: the element a)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--budget", type=int, help="cap on lemma cases; partial coverage reports inconclusive")
    v.add_argument("--out")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        if args.command == "list":
            _emit({"schema_version": SCHEMA_VERSION, "suites": list_suites()}, None)
            return EXIT_OK
        if args.command == "verify":
            seed = args.seed
            env = os.environ.get("CHEVKIT_SEED")
            if env is not None:
                try:
                    seed = int(env)
                except ValueError as exc:
                    raise ConfigError(f"CHEVKIT_SEED={env!r} is not an integer") from exc
            cfg = SuiteConfig(args.suite, args.system, list(args.rings), args.ideal, seed, args.samples,
                              args.jobs, args.budget, args.out)
            code, report = run_suite(cfg)
            _emit(report, args.out)
            return code
        phi = parse_system(args.system)
        if args.command == "roots":
            _emit(roots_info(phi), args.out)
        elif args.command == "subsystems":
            _emit(subsystems_info(phi, args.n), args.out)
        else:
            _emit(orbits_info(phi, args.n), args.out)
        return EXIT_OK
    except (ConfigError, RootSystemError, RingError) as exc:
        print(f"chevkit: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
