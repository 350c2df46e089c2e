"""Verification pipeline: predictions, exact runs, grids, caching, reports.

A prediction pairs the degree side (growth rate, linear coefficient and
per-residue constants of the quadratic model) with the surface side
(edgepath boundary slope and Euler ratio) and records whether the two
identities

    growth rate  == boundary slope
    half the linear coefficient == Euler characteristic / sheet count

hold exactly.  A verification run additionally computes the invariant
itself for N = 1..N_max, checks the degrees against the closed form and
the exhaustive maximization, and fits a quadratic quasi-polynomial when
enough samples exist per residue class.

All rationals are serialized as "p/q" strings and every JSON document is
dumped with sorted keys, so identical runs produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import degopt, edgepath
from .degopt import NoQuadraticFit, classify, fit_quasi
from .jones import KnotParams, colored_jones

log = logging.getLogger(__name__)

DEFAULT_N_MAX = 6
HARD_N_CEILING = 9


@dataclass(frozen=True)
class Prediction:
    """Degree-model coefficients next to the edgepath invariants."""

    params: KnotParams
    case_tag: str
    period: int
    growth: Fraction
    two_b: int
    constants: dict
    residues: tuple
    edgepath_slope: Fraction
    euler: Fraction
    slope_match: bool
    euler_match: bool

    def to_json(self):
        return {
            "case": self.case_tag,
            "period": self.period,
            "a": str(self.growth),
            "two_b": str(Fraction(self.two_b)),
            "b": str(Fraction(self.two_b, 2)),
            "constants": {str(j): str(c) for j, c in sorted(self.constants.items())},
            "residues": [r.to_json() for r in self.residues],
            "edgepath_slope": str(self.edgepath_slope),
            "euler_ratio": str(self.euler),
            "slope_match": self.slope_match,
            "euler_match": self.euler_match,
        }


def predict(params):
    """Combine classification, closed-form coefficients and edgepath data."""
    cls = classify(params)
    growth = degopt.quadratic_coefficient(params)
    two_b = degopt.linear_coefficient(params)
    p = degopt.period(params)
    constants = {j: degopt.constant_term(params, j) for j in range(p)}
    residues = tuple(degopt.residue_table(params))
    slope = edgepath.boundary_slope(params)
    if cls.degree_model == "quadratic":
        euler = edgepath.euler_ratio(edgepath.gamma_system(params))
    else:
        euler = edgepath.euler_ratio(edgepath.seifert_system(params))
    return Prediction(
        params=params,
        case_tag=cls.tag,
        period=p,
        growth=growth,
        two_b=two_b,
        constants=constants,
        residues=residues,
        edgepath_slope=slope,
        euler=euler,
        slope_match=growth == slope,
        euler_match=Fraction(two_b, 2) == euler,
    )


def least_period(params):
    """Least divisor of the model period with identical residue constants.

    The model period is a period of the degree sequence but may not be the
    least one; this reports the least one visible in the closed form.
    """
    p = degopt.period(params)
    constants = [degopt.constant_term(params, j) for j in range(p)]
    for q in range(1, p + 1):
        if p % q:
            continue
        if all(constants[j] == constants[j % q] for j in range(p)):
            return q
    return p


@dataclass
class Report:
    """Everything one verification run produced.

    The elapsed time is kept out of the serialized form so that repeated
    runs emit byte-identical documents.
    """

    params: KnotParams
    n_max: int
    prediction: Prediction
    classification: object
    degrees: list
    n0: int | None
    fitted: object | None
    flags: dict
    elapsed: float = 0.0

    def all_flags_true(self):
        """True when no computed flag is False (unfitted entries are None)."""
        return not any(v is False for v in self.flags.values())

    def to_json(self):
        fitted = None
        if self.fitted is not None:
            fitted = {
                "period": self.fitted.period,
                "n0": self.fitted.n0,
                "coeffs": {
                    str(j): [str(a), str(tb), str(c)]
                    for j, (a, tb, c) in sorted(self.fitted.coeffs.items())
                },
            }
        return {
            "params": {"r": self.params.r, "s": self.params.s,
                       "t": self.params.t, "u": self.params.u},
            "n_max": self.n_max,
            "classification": degopt.report_fragment(self.params, self.n0),
            "prediction": self.prediction.to_json(),
            "edgepath": edgepath.slope_report(self.params),
            "degrees": [
                {"N": N, "dplus": d, "leading": str(lead), "brute": bm,
                 "closed_form": cf}
                for N, d, lead, bm, cf in self.degrees
            ],
            "N0": self.n0,
            "least_period": least_period(self.params),
            "fit": fitted,
            "flags": dict(sorted(self.flags.items())),
        }


def run_verification(params, n_max, cache_dir=None):
    """Exact degrees against every prediction for N = 1..n_max."""
    if n_max < 4:
        raise ValueError(f"need n_max >= 4, got {n_max}")
    started = time.monotonic()
    prediction = predict(params)
    cls = classify(params)

    degrees = []
    for N in range(1, n_max + 1):
        poly = jones_cached(params, N, cache_dir)
        d, lead = poly.max_deg, poly.leading_coeff
        brute, _ = degopt.brute_max_objective(params, N - 1)
        closed = degopt.closed_form_dplus(params, N)
        degrees.append((N, d, lead, brute, closed))

    n0 = degopt.stabilization_threshold(params, [(N, d) for N, d, *_ in degrees])

    fitted = None
    fit_matches = None
    p = prediction.period
    samples = [(N, d) for N, d, *_ in degrees]
    class_sizes = {}
    for N, _ in samples:
        class_sizes[N % p] = class_sizes.get(N % p, 0) + 1
    if len(class_sizes) == p and min(class_sizes.values()) >= 3:
        try:
            fitted = fit_quasi(samples, p)
        except NoQuadraticFit:
            fitted = None
        if fitted is not None:
            fit_matches = all(
                fitted.coeffs[j][0] == prediction.growth
                and fitted.coeffs[j][1] == prediction.two_b
                and fitted.coeffs[j][2] == prediction.constants[j]
                for j in range(p)
            )

    flags = {
        "slope_match": prediction.slope_match,
        "euler_match": prediction.euler_match,
        "degrees_match_closed_form": n0 is not None,
        "no_cancellation": all(d == bm for _, d, _, bm, _ in degrees),
        "leading_positive": all(lead > 0 for _, _, lead, _, _ in degrees),
        "j1_is_one": degrees[0][1] == 0 and degrees[0][2] == 1,
        "fit_matches_prediction": fit_matches,
    }
    return Report(
        params=params,
        n_max=n_max,
        prediction=prediction,
        classification=cls,
        degrees=degrees,
        n0=n0,
        fitted=fitted,
        flags=flags,
        elapsed=time.monotonic() - started,
    )


# -- polynomial cache -----------------------------------------------------


def cache_store(cache_dir, params, N, poly):
    """Write one polynomial record; the key is '<r>_<s>_<t>_<u>/<N>'."""
    record = {
        "params": {"r": params.r, "s": params.s, "t": params.t, "u": params.u},
        "N": N,
        "polynomial": poly.to_json(),
        "max_deg": poly.max_deg,
        "leading_coeff": str(poly.leading_coeff),
    }
    path = Path(cache_dir) / params.key() / f"{N}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(record, sort_keys=True) + "\n")
    return path


def cache_load(cache_dir, params, N):
    """Load a cached polynomial, discarding corrupt records with a warning."""
    from .qlaurent import LaurentPoly

    path = Path(cache_dir) / params.key() / f"{N}.json"
    if not path.exists():
        return None
    try:
        record = json.loads(path.read_text())
        if record["params"] != {"r": params.r, "s": params.s,
                                "t": params.t, "u": params.u}:
            raise ValueError("parameter mismatch")
        if record["N"] != N:
            raise ValueError("color mismatch")
        poly = LaurentPoly.from_json(record["polynomial"])
        if poly.max_deg != record["max_deg"]:
            raise ValueError("degree mismatch")
        if str(poly.leading_coeff) != record["leading_coeff"]:
            raise ValueError("leading coefficient mismatch")
        return poly
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        log.warning("discarding corrupt cache record %s: %s", path, exc)
        return None


def jones_cached(params, N, cache_dir):
    if cache_dir is not None:
        cached = cache_load(cache_dir, params, N)
        if cached is not None:
            return cached
    poly = colored_jones(params, N)
    if cache_dir is not None:
        cache_store(cache_dir, params, N, poly)
    return poly


# -- parameter grids ------------------------------------------------------


def parse_grid(spec):
    """Expand a grid spec like 'r=-9..-3;s=2..6;t=3..7;u=-5..-1'.

    Values may also be comma lists.  Returns (valid KnotParams list,
    skipped count); tuples violating the family constraints are skipped
    silently but counted.
    """
    ranges = {}
    for clause in spec.split(";"):
        clause = clause.strip()
        if not clause:
            continue
        name, _, body = clause.partition("=")
        name = name.strip()
        if name not in ("r", "s", "t", "u"):
            raise ValueError(f"unknown grid variable {name!r}")
        body = body.strip()
        if ".." in body:
            lo, _, hi = body.partition("..")
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(x) for x in body.split(",")]
        ranges[name] = values
    missing = {"r", "s", "t", "u"} - set(ranges)
    if missing:
        raise ValueError(f"grid spec missing {sorted(missing)}")
    valid, skipped = [], 0
    for r in ranges["r"]:
        for s in ranges["s"]:
            for t in ranges["t"]:
                for u in ranges["u"]:
                    try:
                        valid.append(KnotParams(r, s, t, u))
                    except ValueError:
                        skipped += 1
    return valid, skipped


def _run_one(args):
    r, s, t, u, n_max, cache_dir = args
    report = run_verification(KnotParams(r, s, t, u), n_max, cache_dir)
    return report.to_json(), report.all_flags_true(), report.elapsed


CSV_COLUMNS = [
    "r", "s", "t", "u", "case", "period", "slope", "two_b", "N0",
    "slope_match", "euler_match", "degrees_match_closed_form",
    "no_cancellation", "leading_positive", "j1_is_one",
    "fit_matches_prediction",
]


def _fmt_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


def _csv_row(doc):
    flags = doc["flags"]
    return [
        doc["params"]["r"], doc["params"]["s"], doc["params"]["t"],
        doc["params"]["u"], doc["classification"]["case"],
        doc["prediction"]["period"], doc["prediction"]["a"],
        doc["prediction"]["two_b"], _fmt_cell(doc["N0"]),
        _fmt_cell(flags["slope_match"]), _fmt_cell(flags["euler_match"]),
        _fmt_cell(flags["degrees_match_closed_form"]),
        _fmt_cell(flags["no_cancellation"]),
        _fmt_cell(flags["leading_positive"]), _fmt_cell(flags["j1_is_one"]),
        _fmt_cell(flags["fit_matches_prediction"]),
    ]


def grid_run(spec, n_max, out_json=None, out_csv=None, jobs=1, cache_dir=None):
    """Run the verification over a parameter grid and write the reports.

    Returns a summary dict with verified/mismatched/skipped counts.  The
    JSON array and CSV are written deterministically; partial results are
    flushed if writing fails midway.
    """
    tuples, skipped = parse_grid(spec)
    worker_args = [(p.r, p.s, p.t, p.u, n_max, cache_dir) for p in tuples]
    started = time.monotonic()
    if jobs > 1 and len(worker_args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, worker_args))
    else:
        results = [_run_one(a) for a in worker_args]
    elapsed = time.monotonic() - started

    docs = [doc for doc, _, _ in results]
    mismatched = sum(1 for _, ok, _ in results if not ok)

    # Write both outputs even if one of them fails, then re-raise.
    write_error = None
    if out_json is not None:
        try:
            Path(out_json).write_text(
                json.dumps(docs, sort_keys=True, indent=2) + "\n"
            )
        except OSError as exc:
            write_error = exc
    if out_csv is not None:
        try:
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for doc in docs:
                writer.writerow(_csv_row(doc))
            Path(out_csv).write_text(buf.getvalue())
        except OSError as exc:
            write_error = write_error or exc
    if write_error is not None:
        raise write_error

    return {
        "tuples": len(tuples),
        "verified": len(tuples) - mismatched,
        "mismatched": mismatched,
        "skipped": skipped,
        "elapsed": elapsed,
    }
