"""Verification suites for the ring constructions: axioms, doubles, localization, theta."""

from __future__ import annotations

import random
from typing import Any

from .report import CheckReport, timed
from .rings import (
    DoubleRing,
    Ideal,
    IntegerRing,
    PolyRing,
    Ring,
    RingHom,
    ZMod,
    check_hom,
    colimit_stabilization_check,
    double_to_semidirect,
    eval_map,
    ideal_algebra,
    identity,
    localize,
    maximal_localizations,
    poly_lambda,
    sample_pairs,
    semidirect,
    split_double_iso,
    split_thetas,
    substitution,
    theta_map,
)


def verify_ring_axioms(ring: Ring, rng: random.Random, count: int = 1000) -> CheckReport:
    """Commutative ring axioms and the equality congruence on sampled triples."""
    report = CheckReport("ring-axioms", "arbitrary commutative ring R", system=None)
    report.details = {"ring": ring.descriptor}
    R = ring
    with timed(report):
        if R.eq(R.one, R.zero):
            report.details["zero_ring"] = True
        xs, ys, zs = R.sample(rng, count), R.sample(rng, count), R.sample(rng, count)
        rng.shuffle(ys)
        rng.shuffle(zs)
        for x, y, z in zip(xs, ys, zs):
            report.cases += 1
            checks = {
                "add-comm": R.eq(R.add(x, y), R.add(y, x)),
                "mul-comm": R.eq(R.mul(x, y), R.mul(y, x)),
                "add-assoc": R.eq(R.add(R.add(x, y), z), R.add(x, R.add(y, z))),
                "mul-assoc": R.eq(R.mul(R.mul(x, y), z), R.mul(x, R.mul(y, z))),
                "distrib": R.eq(R.mul(x, R.add(y, z)), R.add(R.mul(x, y), R.mul(x, z))),
                "neg": R.is_zero(R.add(x, R.neg(x))),
                "units": R.eq(R.mul(x, R.one), x) and R.eq(R.add(x, R.zero), x),
                "eq-reflexive": R.eq(x, x),
                "eq-congruence": (not R.eq(x, y)) or R.eq(R.mul(x, z), R.mul(y, z)),
            }
            bad = [k for k, ok in checks.items() if not ok]
            if bad:
                report.refute({"axioms": bad, "x": R.fmt(x), "y": R.fmt(y), "z": R.fmt(z)})
    return report


def _hom_report(report: CheckReport, name: str, f: RingHom, pairs: list[tuple[Any, Any]]) -> None:
    n, bad = check_hom(f, pairs)
    report.cases += n
    report.details.setdefault("homs", {})[name] = n
    if bad:
        report.refute({"hom": name, **bad[0]})


def _map_eq(f: RingHom, g: RingHom, xs) -> bool:
    t = f.target
    return all(t.eq(f(x), g(x)) for x in xs)


def verify_double(ring: Ring, ideal: Ideal, rng: random.Random, count: int = 1000) -> CheckReport:
    """``D(R, I)``: projections and diagonal, the pullback square, and both isomorphisms."""
    d = DoubleRing(ring, ideal)
    report = CheckReport("double-ring", "doubleRing", system=None)
    report.details = {"ring": ring.descriptor, "ideal": ideal.name, "double": d.descriptor}
    R, pi = ring, ideal.quotient
    with timed(report):
        pairs_d = sample_pairs(d, count, rng)
        pairs_r = sample_pairs(R, count, rng)
        for name, f in (("p1", d.p1), ("p2", d.p2)):
            _hom_report(report, name, f, pairs_d)
        _hom_report(report, "diag", d.diag, pairs_r)
        xs = [x for x, _ in pairs_r]
        if not (_map_eq(d.p1 @ d.diag, identity(R), xs) and _map_eq(d.p2 @ d.diag, identity(R), xs)):
            report.refute({"reason": "p_i . diag != id"})
        if not _map_eq(pi @ d.p1, pi @ d.p2, [x for x, _ in pairs_d]):
            report.refute({"reason": "pi p1 != pi p2"})
        for x, _ in pairs_d:
            a, s = d.to_semi(x)
            if not ideal.contains(s) or not d.eq(d.from_semi(a, s), x):
                report.refute({"reason": "(a; s) round trip", "x": d.fmt(x)})
        semi, fwd, back = double_to_semidirect(d)
        _hom_report(report, "D->R|xI", fwd, pairs_d)
        _hom_report(report, "R|xI->D", back, sample_pairs(semi, count, rng))
        if d.size is not None:
            report.details["size"] = d.size
            els = list(d.elements())
            if len(els) != R.size * len(ideal.elements()):
                report.refute({"reason": "size of D(R, I)"})
            if len({fwd(x) for x in els}) != len(els) and semi.canonical:
                report.refute({"reason": "D -> R|xI is not injective"})
        if ideal.section is not None:
            target, iso, inv = split_double_iso(d)
            report.details["split_target"] = target.descriptor
            _hom_report(report, "D->R/I|x(IxI)", iso, pairs_d)
            _hom_report(report, "R/I|x(IxI)->D", inv, sample_pairs(target, count, rng))
            if not _map_eq(inv @ iso, identity(d), [x for x, _ in pairs_d]):
                report.refute({"reason": "split iso round trip"})
            if d.size is not None and target.canonical:
                els = list(d.elements())
                if len({iso(x) for x in els}) != len(els) or target.size != len(els):
                    report.refute({"reason": "split iso is not bijective"})
            t1, t2 = split_thetas(d)
            _hom_report(report, "theta1", t1, pairs_r)
            _hom_report(report, "theta2", t2, pairs_r)
    return report


def verify_semidirect_ideal(ring: Ring, ideal: Ideal, rng: random.Random, count: int = 200) -> CheckReport:
    semi = semidirect(ring, ideal_algebra(ideal))
    report = CheckReport("semidirect", "semidirectProd", system=None)
    report.details = {"ring": semi.descriptor}
    with timed(report):
        for x, y in sample_pairs(semi, count, rng):
            report.cases += 1
            s, t = x[1], y[1]
            zero_s = (ring.zero, s)
            if not semi.eq(semi.mul(semi.one, x), x):
                report.refute({"reason": "(1; 0) is not the identity", "x": semi.fmt(x)})
            if not semi.eq(semi.mul(zero_s, (ring.zero, t)), (ring.zero, ring.mul(s, t))):
                report.refute({"reason": "(0; s)(0; t) != (0; st)"})
            if not ring.is_zero(semi.mul(x, (ring.zero, t))[0]):
                report.refute({"reason": "0 x A does not absorb"})
    return report


def verify_localization(base: Ring, a, rng: random.Random, count: int = 1000) -> CheckReport:
    """``lambda_a`` is a hom, inverts ``a``, and ``Z/n -> Z/p^e`` factors through it when ``a`` is a unit there."""
    loc, lam = localize(base, a)
    report = CheckReport("localization", "principal localization", system=None)
    report.details = {"ring": loc.descriptor}
    with timed(report):
        _hom_report(report, "lambda", lam, sample_pairs(base, count, rng))
        la = lam(a)
        inv = loc.inverse(la)
        report.cases += 1
        if not loc.eq(loc.mul(la, inv), loc.one):
            report.refute({"reason": "lambda(a) is not invertible"})
        if isinstance(base, ZMod):
            for p, g in maximal_localizations(base):
                q = g.target
                if not q.is_unit(g(a)):
                    continue
                ga_inv = q.inverse(g(a))
                h = RingHom(loc, q, lambda x, g=g, q=q, ga_inv=ga_inv: q.mul(g(x[0]), q.pow(ga_inv, x[1])), "factor")
                xs = [loc.random(rng) for _ in range(count // 10)]
                for x in xs:
                    report.cases += 1
                    y = (base.mul(x[0], a), x[1] + 1)  # same fraction, different representative
                    if not q.eq(h(x), h(y)) or not q.eq(h(lam(x[0])), g(x[0])):
                        report.refute({"reason": "factorization through lambda_a", "p": p, "x": loc.fmt(x)})
                _hom_report(report, f"factor-p{p}", h, sample_pairs(loc, count // 10, rng))
    return report


def verify_theta(base: Ring, a, rng: random.Random, count: int = 200, hom_pairs: int = 1000) -> CheckReport:
    """``theta`` is a hom and ``iota . theta = lambda_a`` coefficientwise."""
    theta, iota = theta_map(base, a)
    lam = poly_lambda(base, a)
    src = theta.source
    report = CheckReport("theta", "Tmap (theta)", system=None)
    report.details = {"ring": base.descriptor, "a": base.fmt(a)}
    with timed(report):
        _hom_report(report, "theta", theta, sample_pairs(src, hom_pairs, rng))
        polys = src.sample(rng, count)
        agree = sum(1 for p in polys if lam.target.eq(iota(theta(p)), lam(p)))
        report.cases += len(polys)
        report.details["iota_theta_samples"] = len(polys)
        if agree != len(polys):
            report.refute({"reason": "iota . theta != lambda_a", "agree": agree})
        t = src.gen()
        semi = theta.target
        sq = semi.mul(theta(t), theta(t))
        expected = (base.zero, iota.target.monomial(iota.target.base.one, 2))
        if not semi.eq(sq, expected):
            report.refute({"reason": "theta(t)^2 != (0; t^2)"})
    return report


def verify_eval_chain(base: Ring, a, rng: random.Random, count: int = 100) -> CheckReport:
    """``f_jk . f_ij = f_ik`` for ``f_ij = Ev at a^(j-i) t``, plus ``Ev`` at ``0`` and at ``t``."""
    src = PolyRing(base, "t")
    report = CheckReport("eval-chain", "QScor (directed system)", system=None)
    report.details = {"ring": base.descriptor, "a": base.fmt(a)}
    with timed(report):
        f = {(i, j): substitution(src, base.pow(a, j - i)) for i in range(4) for j in range(i, 4)}
        ev0 = eval_map(src, base, base.zero)
        evt = eval_map(src, src, src.gen(), RingHom(base, src, src.const, "const"))
        for p in src.sample(rng, count):
            for i in range(4):
                for j in range(i, 4):
                    for k in range(j, 4):
                        report.cases += 1
                        if not src.eq(f[(j, k)](f[(i, j)](p)), f[(i, k)](p)):
                            report.refute({"p": src.fmt(p), "ijk": [i, j, k]})
            tp = src.mul(src.gen(), p)
            if not base.is_zero(ev0(tp)) or not src.eq(evt(p), p):
                report.refute({"p": src.fmt(p), "reason": "Ev at 0 or at t"})
    return report


def verify_colimit(base: Ring, a, rng: random.Random, samples: int = 60, depth: int = 8) -> CheckReport:
    report = CheckReport("colimit", "QScor proof (colimit)", system=None)
    report.details = {"ring": base.descriptor, "a": base.fmt(a), "depth": depth}
    with timed(report):
        res = colimit_stabilization_check(base, a, samples, depth, rng)
        report.cases = len(res.preimages) + len(res.identifications)
        report.expected_cases = 2 * samples
        report.details["preimages"] = len(res.preimages)
        report.details["identified_pairs"] = len(res.identifications)
        report.witnesses = {f"pre{k}": w for k, w in enumerate(res.preimages[:10])}
        if res.failures:
            report.status = "inconclusive"
            report.reason = f"{len(res.failures)} samples exceeded depth {depth}"
            report.details["failures"] = res.failures[:5]
    return report


def default_ring_suite(rng: random.Random) -> list[CheckReport]:
    from .rings import parse_ring, quotient_ideal

    reports: list[CheckReport] = []
    for desc in ("int", "zmod:12", "poly:zmod:4:t", "loc:int:2", "loc:zmod:12:2", "quot:poly:zmod:2:x:x^2",
                 "double:zmod:4:2", "semi:int:tloc2", "double:quot:poly:zmod:2:x:x^2:x"):
        reports.append(verify_ring_axioms(parse_ring(desc), rng))
    for desc, tok in (("zmod:4", "2"), ("zmod:12", "4"), ("quot:poly:zmod:2:x:x^2", "x"),
                      ("quot:poly:zmod:4:x:x^2", "x"), ("poly:int:x", "x")):
        r = parse_ring(desc)
        reports.append(verify_double(r, quotient_ideal(r, tok), rng))
        reports.append(verify_semidirect_ideal(r, quotient_ideal(r, tok), rng))
    z, z12 = IntegerRing(), ZMod(12)
    for base in (z, z12):
        a = base.from_int(2)
        reports.append(verify_localization(base, a, rng))
        reports.append(verify_theta(base, a, rng))
        reports.append(verify_eval_chain(base, a, rng))
    return reports
