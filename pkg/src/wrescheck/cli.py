"""Geometry file ingestion, seeded random geometries, verification runs
and report emission.

Exit codes: 0 pass; 1 internal-suite failure (or any closed-form mismatch
under --strict-paper); 2 invalid input; 3 truncation/integrity error.

Reports are deterministic: rationals are serialized as "p/q" strings,
JSON keys are sorted, and campaigns iterate cases in index order, so a
fixed (input, seed, flags) triple always produces byte-identical output.
Cases are independent and could run concurrently; the report is keyed by
case index either way.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .clifford import generate_gammas, normalized_trace, trace, wick_trace_oracle
from .closedforms import (
    cf_h,
    cf_lemma11,
    cf_part1,
    cf_part2_total,
    cf_theorem12,
    trace_identity_claims,
)
from .conventions import conventions_hash
from .errors import (
    ContractError,
    DimensionError,
    EngineError,
    GeometryError,
    GeometryParseError,
    IntegrityError,
    SymmetryConflictError,
    TruncationError,
)
from .geometry import (
    PointGeometry,
    RiemannTensor,
    VectorJet,
    add_riemann,
    kulkarni_nomizu_square,
    validate,
)
from .jets import (
    SymbolJet,
    compose,
    d_xi,
    eval_x0,
    jet_product,
    jets_equal_mod_radial,
)
from .clifford import clifford_of
from .residue import (
    DensityReport,
    DensityValue,
    composed_ab_symbols,
    h_terms,
    integrate_density,
    oracle_part2,
    part1_subintegrals,
    sphere_moment,
    sphere_moment_oracle,
    transcribed_ab_symbols,
)
from .scalars import GaussianRational, TPoly, as_fraction

H_LABELS = ("3.23", "3.28", "3.39", "3.46", "3.48", "3.50")


# --- geometry files -------------------------------------------------------


def _parse_rational(x, where: str) -> Fraction:
    try:
        return as_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise GeometryParseError(f"bad rational {x!r} in {where}: {exc}") from None


def riemann_from_sparse(n: int, entries) -> RiemannTensor:
    """Symmetry-complete a sparse list of {indices, value} records.

    Each given component is propagated through the eight-element symmetry
    orbit (two pair antisymmetries and the pair exchange); inconsistent
    assignments raise a symmetry-conflict error naming the indices.
    """
    comp = {}

    def put(idx, val, origin):
        if idx in comp:
            if comp[idx][0] != val:
                a, b, c, d = (i + 1 for i in idx)
                raise SymmetryConflictError(
                    f"R[{a}][{b}][{c}][{d}] forced to both {comp[idx][0]} "
                    f"(from entry {comp[idx][1]}) and {val} (from entry {origin})"
                )
        else:
            comp[idx] = (val, origin)

    for rec_no, rec in enumerate(entries):
        try:
            a, b, c, d = (int(i) - 1 for i in rec["indices"])
        except (KeyError, TypeError, ValueError):
            raise GeometryParseError(
                f"riemann entry {rec_no} needs 'indices': [a, b, c, d]"
            ) from None
        if not all(0 <= i < n for i in (a, b, c, d)):
            raise DimensionError(
                f"riemann entry {rec_no} has indices outside 1..{n}"
            )
        v = _parse_rational(rec.get("value", 0), f"riemann entry {rec_no}")
        origin = tuple(i + 1 for i in (a, b, c, d))
        for idx, val in (
            ((a, b, c, d), v),
            ((b, a, c, d), -v),
            ((a, b, d, c), -v),
            ((b, a, d, c), v),
            ((c, d, a, b), v),
            ((d, c, a, b), -v),
            ((c, d, b, a), -v),
            ((d, c, b, a), v),
        ):
            put(idx, val, origin)

    dense = [[[[Fraction(0)] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for (a, b, c, d), (v, _) in comp.items():
        dense[a][b][c][d] = v
    return RiemannTensor(n, dense)


def _parse_jet(obj, n: int, name: str) -> VectorJet:
    if obj is None:
        return VectorJet.zero(n)
    try:
        value = [_parse_rational(x, f"{name}.value") for x in obj.get("value", [0] * n)]
        jac_rows = obj.get("jacobian", [[0] * n for _ in range(n)])
        jac = [[_parse_rational(x, f"{name}.jacobian") for x in row] for row in jac_rows]
    except AttributeError:
        raise GeometryParseError(f"{name} must be an object with value/jacobian") from None
    if len(value) != n or len(jac) != n or any(len(r) != n for r in jac):
        raise DimensionError(f"{name} must have {n} components and an {n}x{n} jacobian")
    return VectorJet(value, jac)


def parse_geometry(doc) -> tuple:
    """Build (PointGeometry, t_eval or None) from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise GeometryParseError("geometry document must be a JSON object")
    try:
        m = int(doc["m"])
    except (KeyError, TypeError, ValueError):
        raise GeometryParseError("geometry needs an integer field 'm'") from None
    n = 2 * m
    riemann = riemann_from_sparse(n, doc.get("riemann", []))
    bad = validate(riemann)
    if bad:
        from .errors import CurvatureIdentityError

        msgs = "; ".join(v[2] for v in bad[:3])
        raise CurvatureIdentityError(
            f"{len(bad)} curvature identity violations after completion: {msgs}"
        )
    g = PointGeometry(
        m=m,
        riemann=riemann,
        v=_parse_jet(doc.get("v"), n, "v"),
        w=_parse_jet(doc.get("w"), n, "w"),
        y=_parse_jet(doc.get("y"), n, "y"),
    )
    t_eval = None
    if "tEval" in doc and doc["tEval"] is not None:
        te = doc["tEval"]
        if not isinstance(te, (list, tuple)) or len(te) != 2:
            raise GeometryParseError("tEval must be a [re, im] rational pair")
        t_eval = GaussianRational(
            _parse_rational(te[0], "tEval"), _parse_rational(te[1], "tEval")
        )
    return g, t_eval


def load_geometry(path: str):
    """Load a geometry JSON file; returns (PointGeometry, tEval or None)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise GeometryParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise GeometryParseError(f"{path} is not valid JSON: {exc}") from None
    return parse_geometry(doc)


def random_geometry(m: int, seed: int, magnitude=2) -> PointGeometry:
    """Seed-deterministic admissible geometry.

    The curvature tensor is a sum of three Kulkarni-Nomizu squares of
    random symmetric rational matrices, so the pair symmetries and first
    Bianchi identity hold by construction; the jets are random bounded
    rationals.
    """
    n = 2 * m
    rng = random.Random(seed)
    mag = int(magnitude)

    def rnd():
        return Fraction(rng.randint(-mag, mag), rng.randint(1, 2))

    riemann = RiemannTensor.zero(n)
    for _ in range(3):
        p = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                p[i][j] = p[j][i] = rnd()
        riemann = add_riemann(riemann, kulkarni_nomizu_square(p))

    def rjet():
        return VectorJet(
            [rnd() for _ in range(n)],
            [[rnd() for _ in range(n)] for _ in range(n)],
        )

    return PointGeometry(m=m, riemann=riemann, v=rjet(), w=rjet(), y=rjet())


def random_geometry_constant_fields(m: int, seed: int, magnitude=2) -> PointGeometry:
    """Like random_geometry but with x-independent vector fields."""
    g = random_geometry(m, seed, magnitude)
    return PointGeometry(
        m=m,
        riemann=g.riemann,
        v=VectorJet.constant(g.v.value),
        w=VectorJet.constant(g.w.value),
        y=VectorJet.constant(g.y.value),
    )


# --- verification ---------------------------------------------------------


@dataclass
class VerifyOptions:
    per_term: bool = True
    strict_paper: bool = False
    bilinearity_spot: bool = True
    t_eval: GaussianRational | None = None


def run_verify(g: PointGeometry, options: VerifyOptions | None = None) -> DensityReport:
    """Full engine-versus-closed-forms comparison for one geometry.

    The internal suite (oracle equivalence of the two symbol routes,
    value-level route agreement, vanishing of the fifth piece, reality,
    t-degree, additivity, optional bilinearity spot check) drives the exit
    status; closed-form mismatches are findings unless strict_paper.
    """
    options = options or VerifyOptions()
    if g.m not in (2, 3, 4):
        raise DimensionError(f"verification supports m in {{2, 3}} (4 slow), got {g.m}")
    if g.m == 4:
        print("warning: m=4 is supported but slow", file=sys.stderr)
    gammas = generate_gammas(g.m)

    part1_parts = part1_subintegrals(g, gammas)
    part1 = DensityValue.zero()
    for v in part1_parts.values():
        part1 = part1 + v
    hs = h_terms(g, gammas)
    part2 = DensityValue.zero()
    for v in hs:
        part2 = part2 + v
    total = part1 + part2
    oracle = oracle_part2(g, gammas)

    tab = transcribed_ab_symbols(g, gammas)
    cab = composed_ab_symbols(g, gammas)
    ab_match = all(tab[d] == eval_x0(cab[d]) for d in (2, 1, 0))

    closed = {
        "3.12": cf_part1(g),
        "3.23": cf_h(1, g),
        "3.28": cf_h(2, g),
        "3.39": cf_h(3, g),
        "3.46": cf_h(4, g),
        "3.48": cf_h(5, g),
        "3.50": cf_h(6, g),
        "3.51": cf_part2_total(g),
        "1.4": cf_theorem12(g),
        "1.3": cf_lemma11(g),
    }
    diffs = {
        "part1_vs_3.12": part1 - closed["3.12"],
        "part2_vs_3.51": part2 - closed["3.51"],
        "total_vs_1.4": total - closed["1.4"],
    }
    for i in range(6):
        diffs[f"h{i+1}_vs_{H_LABELS[i]}"] = hs[i] - closed[H_LABELS[i]]
    # the audited derivation's own summation residue: its pieces vs its total
    printed_sum = closed["3.12"]
    for lab in H_LABELS:
        printed_sum = printed_sum + closed[lab]
    diffs["printed_pieces_vs_1.4"] = printed_sum - closed["1.4"]

    checks = []
    checks.append(
        (
            "ab_symbols_transcribed_equal_composed",
            ab_match,
            "product symbols at x0 agree between transcription and composition",
        )
    )
    checks.append(
        ("part2_equals_oracle_part2", part2 == oracle, f"{part2!r} vs {oracle!r}")
    )
    checks.append(("h5_is_zero", hs[4].is_zero, repr(hs[4])))
    checks.append(
        (
            "total_equals_part1_plus_h_sum",
            total == part1 + hs[0] + hs[1] + hs[2] + hs[3] + hs[4] + hs[5],
            "assembly identity",
        )
    )
    checks.append(
        (
            "t_degree_le_2",
            all(v.degree <= 2 for v in [part1, part2, total] + hs),
            "engine values are polynomials of degree <= 2 in t",
        )
    )
    checks.append(("reality", True, "enforced during integration"))
    if options.bilinearity_spot:
        g2 = PointGeometry(
            m=g.m, riemann=g.riemann, v=g.v.scale(3), w=g.w, y=g.y
        )
        gam = gammas
        scaled = DensityValue.zero()
        for v in part1_subintegrals(g2, gam).values():
            scaled = scaled + v
        for v in h_terms(g2, gam):
            scaled = scaled + v
        checks.append(
            (
                "bilinearity_spot",
                scaled == total.scale(3),
                "density is homogeneous under v -> 3v",
            )
        )

    report = DensityReport(
        m=g.m,
        part1=part1,
        part1_breakdown=part1_parts,
        h=hs,
        part2=part2,
        total=total,
        oracle_part2_value=oracle,
        closed_forms=closed,
        diffs=diffs,
        trace_claims=trace_identity_claims(g, gammas),
        internal_checks=checks,
    )
    return report


def report_to_dict(report: DensityReport, seed=None, t_eval=None) -> dict:
    def dv(v: DensityValue):
        return v.as_strings(3)

    out = {
        "engine_version": __version__,
        "conventions_hash": conventions_hash(),
        "m": report.m,
        "engine": {
            "part1": dv(report.part1),
            "part1_breakdown": {k: dv(v) for k, v in sorted(report.part1_breakdown.items())},
            "h": [dv(v) for v in report.h],
            "part2": dv(report.part2),
            "total": dv(report.total),
            "oracle_part2": dv(report.oracle_part2_value),
        },
        "closed_forms": {k: dv(v) for k, v in sorted(report.closed_forms.items())},
        "diffs": {k: dv(v) for k, v in sorted(report.diffs.items())},
        "trace_claims": [
            {
                "label": label,
                "engine": str(engine),
                "printed": str(printed),
                "diff": str(diff),
            }
            for label, engine, printed, diff in report.trace_claims
        ],
        "internal_checks": [
            {"name": name, "pass": ok, "detail": detail}
            for name, ok, detail in report.internal_checks
        ],
        "internal_pass": report.internal_pass,
        "paper_match": report.paper_match,
    }
    if seed is not None:
        out["seed"] = seed
    if t_eval is not None:
        val = report.total.eval(t_eval)
        out["display_at_t"] = {
            "t": [str(t_eval.re), str(t_eval.im)],
            "total": {"re": str(val.re), "im": str(val.im)},
            "total_approx": f"{float(val.re):.12g}"
            + (f" + {float(val.im):.12g}i" if val.im else ""),
        }
    return out


def _dv_line(name: str, v: DensityValue) -> str:
    c = v.as_strings(3)
    return f"| {name} | {c[0]} | {c[1]} | {c[2]} |"


def report_to_markdown(report: DensityReport, per_term: bool = True) -> str:
    lines = [
        f"# Residue density report (m={report.m})",
        "",
        "Units: 2^m * Vol(S^(n-1)).  Columns are the t^0, t^1, t^2 coefficients.",
        "",
        "| quantity | t^0 | t^1 | t^2 |",
        "|---|---|---|---|",
        _dv_line("part1 (engine)", report.part1),
    ]
    for i, h in enumerate(report.h, 1):
        lines.append(_dv_line(f"H{i} (engine)", h))
    lines += [
        _dv_line("part2 (engine)", report.part2),
        _dv_line("total (engine)", report.total),
        _dv_line("part2 (oracle route)", report.oracle_part2_value),
        "",
        "## Closed forms",
        "",
        "| label | t^0 | t^1 | t^2 |",
        "|---|---|---|---|",
    ]
    for k in sorted(report.closed_forms):
        lines.append(_dv_line(k, report.closed_forms[k]))
    lines += ["", "## Diffs (engine - closed form)", "", "| comparison | t^0 | t^1 | t^2 |", "|---|---|---|---|"]
    for k in sorted(report.diffs):
        lines.append(_dv_line(k, report.diffs[k]))
    if per_term:
        lines += ["", "## part1 sub-integrals", "", "| piece | t^0 | t^1 | t^2 |", "|---|---|---|---|"]
        for k in sorted(report.part1_breakdown):
            lines.append(_dv_line(k, report.part1_breakdown[k]))
    lines += ["", "## Printed trace-identity claims", "", "| label | engine | printed | diff |", "|---|---|---|---|"]
    for label, engine, printed, diff in report.trace_claims:
        lines.append(f"| {label} | {engine} | {printed} | {diff} |")
    lines += ["", "## Internal checks", ""]
    for name, ok, detail in report.internal_checks:
        lines.append(f"- {'PASS' if ok else 'FAIL'} {name}: {detail}")
    lines.append("")
    return "\n".join(lines)


def report_to_csv(report: DensityReport) -> str:
    rows = ["section,name,power,value"]

    def emit(section, name, v: DensityValue):
        for k in range(3):
            rows.append(f"{section},{name},{k},{v.coeff(k)}")

    emit("engine", "part1", report.part1)
    for i, h in enumerate(report.h, 1):
        emit("engine", f"h{i}", h)
    emit("engine", "part2", report.part2)
    emit("engine", "total", report.total)
    emit("engine", "oracle_part2", report.oracle_part2_value)
    for k in sorted(report.closed_forms):
        emit("closed_form", k, report.closed_forms[k])
    for k in sorted(report.diffs):
        emit("diff", k, report.diffs[k])
    for k in sorted(report.part1_breakdown):
        emit("part1_breakdown", k, report.part1_breakdown[k])
    rows.append("")
    return "\n".join(rows)


# --- self-test suites -----------------------------------------------------


def _random_vector(rng, n, mag=2):
    return [Fraction(rng.randint(-mag, mag), rng.randint(1, 2)) for _ in range(n)]


def selftest(suite: str, seed: int = 0, cases: int = 200) -> dict:
    """Run one named invariant suite deterministically; returns a report."""
    rng = random.Random(seed)
    results = []

    def record(name, failures, total):
        results.append({"name": name, "cases": total, "failures": failures})

    if suite == "traces":
        for m in (2, 3):
            gam = generate_gammas(m)
            n = 2 * m
            fail = 0
            ident = gam[0] @ gam[0]
            minus2 = TPoly.constant(-2)
            for i in range(n):
                for j in range(n):
                    anti = (gam[i] @ gam[j]) + (gam[j] @ gam[i])
                    want = minus2 if i == j else TPoly(())
                    if anti.scalar_part() != want:
                        fail += 1
            record(f"anticommutation_m{m}", fail, n * n)
            fail = 0
            for _ in range(cases):
                a = clifford_of(_random_vector(rng, n), gam) @ clifford_of(
                    _random_vector(rng, n), gam
                )
                b = clifford_of(_random_vector(rng, n), gam) @ clifford_of(
                    _random_vector(rng, n), gam
                )
                if trace(a @ b) != trace(b @ a):
                    fail += 1
            record(f"cyclicity_m{m}", fail, cases)
            fail = 0
            for _ in range(cases):
                p = rng.choice((1, 3, 5))
                prod = clifford_of(_random_vector(rng, n), gam)
                for _ in range(p - 1):
                    prod = prod @ clifford_of(_random_vector(rng, n), gam)
                if trace(prod) != TPoly(()):
                    fail += 1
            record(f"odd_trace_m{m}", fail, cases)
            fail = 0
            for _ in range(cases):
                p = rng.choice((2, 4, 6))
                vecs = [_random_vector(rng, n) for _ in range(p)]
                prod = clifford_of(vecs[0], gam)
                for v in vecs[1:]:
                    prod = prod @ clifford_of(v, gam)
                if normalized_trace(prod) != wick_trace_oracle(vecs):
                    fail += 1
            record(f"wick_vs_matrix_m{m}", fail, cases)
    elif suite == "moments":
        for n in (4, 6):
            fail = total = 0
            for beta in _moment_multi_indices(n, 8):
                total += 1
                if sphere_moment(beta, n) != sphere_moment_oracle(beta, n):
                    fail += 1
            record(f"moments_vs_gaussian_oracle_n{n}", fail, total)
    elif suite == "jets":
        m = 2
        gam = generate_gammas(m)
        fail = 0
        for _ in range(cases):
            jet = _random_jet(rng, m, gam)
            lhs = SymbolJet(m, jet.degree, jet.max_x_order)
            for j in range(jet.n):
                term = jet_product(_xi_coord_jet(m, j), d_xi(jet, j))
                lhs = lhs + term
            if not jets_equal_mod_radial(lhs, jet.scale(Fraction(jet.degree))):
                fail += 1
        record("euler_identity", fail, cases)
        fail = 0
        for _ in range(max(cases // 10, 5)):
            fams = [_random_scalar_family(rng, m) for _ in range(3)]
            if not _assoc_check(fams[0], fams[1], fams[2], m):
                fail += 1
        record("compose_associativity", fail, max(cases // 10, 5))
    elif suite == "oracle":
        m = 2
        gam = generate_gammas(m)
        fail = 0
        for i in range(max(cases // 10, 5)):
            g = random_geometry(m, seed * 1_000_003 + i)
            tab = transcribed_ab_symbols(g, gam)
            cab = composed_ab_symbols(g, gam)
            ok = all(tab[d] == eval_x0(cab[d]) for d in (2, 1, 0))
            part2 = DensityValue.zero()
            for v in h_terms(g, gam):
                part2 = part2 + v
            ok = ok and part2 == oracle_part2(g, gam)
            if not ok:
                fail += 1
        record("symbol_and_value_oracle", fail, max(cases // 10, 5))
    else:
        raise GeometryParseError(
            f"unknown suite {suite!r}; pick traces|moments|jets|oracle"
        )

    return {
        "engine_version": __version__,
        "conventions_hash": conventions_hash(),
        "suite": suite,
        "seed": seed,
        "cases": cases,
        "results": results,
        "pass": all(r["failures"] == 0 for r in results),
    }


def _moment_multi_indices(n, max_order):
    """Even multi-indices with |beta| <= max_order plus a sample of odd ones."""
    out = []
    import itertools

    for total in range(0, max_order + 1):
        for beta in itertools.combinations_with_replacement(range(n), total):
            exp = [0] * n
            for b in beta:
                exp[b] += 1
            out.append(tuple(exp))
    # dedupe preserving order
    seen = set()
    uniq = []
    for b in out:
        if b not in seen:
            seen.add(b)
            uniq.append(b)
    return uniq


def _xi_coord_jet(m, j):
    from .clifford import CliffordElement
    from .jets import SymbolTerm

    n = 2 * m
    xi = [0] * n
    xi[j] = 1
    return SymbolJet(
        m, 1, 2, [SymbolTerm(CliffordElement.identity(m), (0,) * n, xi, 0)]
    )


def _random_jet(rng, m, gam, degree=None):
    from .jets import SymbolTerm

    n = 2 * m
    if degree is None:
        degree = rng.randint(-3, 2)
    terms = []
    for _ in range(rng.randint(1, 4)):
        norm = rng.choice((0, 2, 4))
        exp_total = degree + norm
        if exp_total < 0:
            norm += 2 * ((-exp_total + 1) // 2)
            exp_total = degree + norm
        xi = [0] * n
        for _ in range(exp_total):
            xi[rng.randrange(n)] += 1
        x = [0] * n
        for _ in range(rng.randint(0, 2)):
            x[rng.randrange(n)] += 1
        coeff = gam[rng.randrange(n)].scale(
            Fraction(rng.randint(1, 3), rng.randint(1, 2))
        )
        terms.append(SymbolTerm(coeff, x, xi, norm))
    return SymbolJet(m, degree, 2, terms)


def _random_scalar_family(rng, m):
    """x-independent scalar-coefficient family at degrees {0, 1}."""
    from .clifford import CliffordElement
    from .jets import SymbolTerm

    n = 2 * m
    fam = {}
    for d in (0, 1):
        terms = []
        for _ in range(rng.randint(1, 3)):
            xi = [0] * n
            for _ in range(d):
                xi[rng.randrange(n)] += 1
            coeff = CliffordElement.scalar_matrix(
                m, Fraction(rng.randint(-2, 2), rng.randint(1, 2))
            )
            terms.append(SymbolTerm(coeff, (0,) * n, xi, 0))
        fam[d] = SymbolJet(m, d, 2, terms)
    return fam


def _assoc_check(fa, fb, fc, m) -> bool:
    degrees = (0, 1, 2)
    ab = {d: compose(fa, fb, d, 2) for d in degrees}
    bc = {d: compose(fb, fc, d, 2) for d in degrees}
    for d in (0, 1, 2, 3):
        left = compose(ab, fc, d, 2)
        right = compose(fa, bc, d, 2)
        if not jets_equal_mod_radial(left, right):
            return False
    return True


# --- campaigns ------------------------------------------------------------


def run_campaign(m: int, seed: int, cases: int, options: VerifyOptions) -> dict:
    reports = []
    all_internal = True
    all_paper = True
    for i in range(cases):
        case_seed = seed * 1_000_003 + i
        g = random_geometry(m, case_seed)
        rep = run_verify(g, options)
        all_internal = all_internal and rep.internal_pass
        all_paper = all_paper and rep.paper_match
        reports.append(report_to_dict(rep, seed=case_seed))
    return {
        "engine_version": __version__,
        "conventions_hash": conventions_hash(),
        "campaign": {"m": m, "seed": seed, "cases": cases},
        "cases": reports,
        "internal_pass": all_internal,
        "paper_match": all_paper,
    }


# --- entry point ----------------------------------------------------------


LEMMA_REGISTRY = {
    "3.12": cf_part1,
    "3.23": lambda g: cf_h(1, g),
    "3.28": lambda g: cf_h(2, g),
    "3.39": lambda g: cf_h(3, g),
    "3.46": lambda g: cf_h(4, g),
    "3.48": lambda g: cf_h(5, g),
    "3.50": lambda g: cf_h(6, g),
    "3.51": cf_part2_total,
    "1.4": cf_theorem12,
    "1.3": cf_lemma11,
}


def _emit(doc, fmt: str, report=None, per_term=True):
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True, indent=1))
    elif fmt == "markdown":
        if report is not None:
            print(report_to_markdown(report, per_term))
        else:
            print("```json\n" + json.dumps(doc, sort_keys=True, indent=1) + "\n```")
    elif fmt == "csv":
        if report is not None:
            print(report_to_csv(report))
        else:
            print(json.dumps(doc, sort_keys=True))
    else:
        raise GeometryParseError(f"unknown format {fmt!r}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="wrescheck",
        description="Exact verification of the spectral Einstein functional density",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="verify one geometry file")
    p_verify.add_argument("file")
    p_verify.add_argument("--per-term", action="store_true")
    p_verify.add_argument("--strict-paper", action="store_true")
    p_verify.add_argument("--format", default="json", choices=("json", "markdown", "csv"))

    p_campaign = sub.add_parser("campaign", help="random-geometry campaign")
    p_campaign.add_argument("--m", type=int, required=True)
    p_campaign.add_argument("--seed", type=int, default=0)
    p_campaign.add_argument("--cases", type=int, default=10)
    p_campaign.add_argument("--per-term", action="store_true")
    p_campaign.add_argument("--strict-paper", action="store_true")
    p_campaign.add_argument("--format", default="json", choices=("json", "markdown", "csv"))

    p_self = sub.add_parser("selftest", help="run one invariant suite")
    p_self.add_argument("suite", choices=("traces", "moments", "jets", "oracle"))
    p_self.add_argument("--seed", type=int, default=0)
    p_self.add_argument("--cases", type=int, default=200)

    p_lemma = sub.add_parser("lemma", help="evaluate one printed closed form")
    p_lemma.add_argument("eq_id", choices=sorted(LEMMA_REGISTRY))
    p_lemma.add_argument("file")

    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            g, t_eval = load_geometry(args.file)
            options = VerifyOptions(
                per_term=args.per_term, strict_paper=args.strict_paper, t_eval=t_eval
            )
            rep = run_verify(g, options)
            _emit(report_to_dict(rep, t_eval=t_eval), args.format, rep, args.per_term)
            if not rep.internal_pass:
                return 1
            if args.strict_paper and not rep.paper_match:
                return 1
            return 0
        if args.command == "campaign":
            options = VerifyOptions(
                per_term=args.per_term,
                strict_paper=args.strict_paper,
                bilinearity_spot=False,
            )
            doc = run_campaign(args.m, args.seed, args.cases, options)
            _emit(doc, args.format)
            if not doc["internal_pass"]:
                return 1
            if args.strict_paper and not doc["paper_match"]:
                return 1
            return 0
        if args.command == "selftest":
            doc = selftest(args.suite, args.seed, args.cases)
            print(json.dumps(doc, sort_keys=True, indent=1))
            return 0 if doc["pass"] else 1
        if args.command == "lemma":
            g, t_eval = load_geometry(args.file)
            value = LEMMA_REGISTRY[args.eq_id](g)
            doc = {
                "engine_version": __version__,
                "label": args.eq_id,
                "value": value.as_strings(3),
            }
            if t_eval is not None:
                ev = value.eval(t_eval)
                doc["value_at_t"] = {"re": str(ev.re), "im": str(ev.im)}
            print(json.dumps(doc, sort_keys=True, indent=1))
            return 0
    except (TruncationError, IntegrityError, ContractError) as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return 3
    except (GeometryError, DimensionError) as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return 2
    except EngineError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
