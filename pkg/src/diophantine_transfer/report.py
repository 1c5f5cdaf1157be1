"""Campaign artifacts: witness CSV, summary JSON, scatter data, plot files.

The scatter is written as plain CSV plus a gnuplot script that reads it, so
any plotting tool can pick it up.  A PNG rendering of the same data is
produced with matplotlib's Agg canvas; nothing opens a display.
"""

import csv
import json
import math
from fractions import Fraction
from pathlib import Path

from .intervals import decimal_str
from .transfer import INF, corollary_floor

WITNESS_COLUMNS = ("d", "height_sq", "distance_sq", "exponent", "certified")
SCATTER_COLUMNS = ("d", "height_sq", "distance_sq", "log_height_sq", "neg_log_distance_sq",
                   "exponent", "certified")
PROFILE_COLUMNS = ("end", "X", "vector", "error", "halo", "exponent")


def _log(q):
    q = Fraction(q)
    return math.log(q.numerator) - math.log(q.denominator)


def _num(x):
    return decimal_str(Fraction(x), 15, "nearest") if x is not None else ""


def write_witness_csv(path, estimates):
    with open(path, "w", newline="") as fh:
        out = csv.DictWriter(fh, fieldnames=WITNESS_COLUMNS, lineterminator="\n")
        out.writeheader()
        for est in estimates:
            for w in est.scatter:
                out.writerow(w.as_row(est.d))


def scatter_rows(estimates):
    rows = []
    for est in estimates:
        for w in est.scatter:
            if w.height_sq <= 1 or w.distance_sq == 0:
                continue
            row = w.as_row(est.d)
            row["log_height_sq"] = _num(_log(w.height_sq))
            row["neg_log_distance_sq"] = _num(-_log(w.distance_sq))
            rows.append(row)
    return rows


def write_scatter_csv(path, estimates):
    with open(path, "w", newline="") as fh:
        out = csv.DictWriter(fh, fieldnames=SCATTER_COLUMNS, lineterminator="\n")
        out.writeheader()
        out.writerows(scatter_rows(estimates))


def write_profile_csv(path, uniform):
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(PROFILE_COLUMNS)
        for end, est in uniform.items():
            for r in est.extra["profile"]:
                out.writerow([end, r["X"], " ".join(map(str, r["vector"])), r["error"],
                              r["halo"], r["exponent"]])


def gnuplot_script(n, ds, scatter_name="scatter.csv", png_name="scatter_gnuplot.png"):
    """Script plotting -log d^2 against log H^2, one series per d, with floor lines."""
    lines = [
        "set datafile separator ','",
        "set key top left",
        "set xlabel 'log H(L)^2'",
        "set ylabel '-log d(Theta, L)^2'",
        "set terminal pngcairo size 900,600",
        f"set output '{png_name}'",
    ]
    series = []
    for d in ds:
        floor = corollary_floor(n, d)
        series.append(f"'{scatter_name}' using ($1=={d} ? $4 : 1/0):5 skip 1 "
                      f"with points title 'd={d}'")
        series.append(f"(1 + {float(floor):.6f}) * x with lines dashtype 2 "
                      f"title 'floor d={d}'")
    lines.append("plot " + ", \\\n     ".join(series))
    return "\n".join(lines) + "\n"


def render_png(path, n, estimates, uniform=None):
    """Scatter of witnesses with the floor lines, plus the uniform profiles when present."""
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.figure import Figure

    panels = 1 + (1 if uniform else 0)
    fig = Figure(figsize=(6.4 * panels, 4.8))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(1, panels, 1)
    for est in estimates:
        pts = [(_log(w.height_sq), -_log(w.distance_sq)) for w in est.scatter
               if w.height_sq > 1 and w.distance_sq > 0]
        if not pts:
            continue
        xs, ys = zip(*pts)
        (dots,) = ax.plot(xs, ys, ".", ms=3, label=f"d={est.d}")
        top = max(xs)
        slope = 1 + float(corollary_floor(n, est.d))
        ax.plot([0, top], [0, slope * top], "--", lw=0.8, color=dots.get_color())
    ax.set_xlabel(r"$\log H(L)^2$")
    ax.set_ylabel(r"$-\log d(\Theta, L)^2$")
    ax.legend(loc="upper left", fontsize=8)
    if uniform:
        ux = fig.add_subplot(1, panels, 2)
        for end, est in uniform.items():
            prof = [r for r in est.extra["profile"] if Fraction(r["error"]) > 0]
            if not prof:
                continue
            xs = [math.log(r["X"]) for r in prof]
            ys = [-_log(Fraction(r["error"])) for r in prof]
            (line,) = ux.plot(xs, ys, "o-", ms=3, label=f"{end}-side m(X)")
            floor = Fraction(1, n) if end == "point" else Fraction(n)
            ux.plot(xs, [float(floor) * x for x in xs], "--", lw=0.8, color=line.get_color())
        ux.set_xlabel(r"$\log X$")
        ux.set_ylabel(r"$-\log m(X)$")
        ux.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)


def campaign_summary(result):
    P = result.proxy
    return {
        "point": str(result.spec),
        "name": result.spec.name,
        "n": P.ambient_n,
        "independence": P.independence,
        "precision_bits": result.precision_bits,
        "proxy_radius": str(P.radius),
        "rounds": result.rounds,
        "notes": result.notes,
        "estimates": [e.summary() for e in result.estimates],
        "uniform": {end: e.summary() for end, e in result.uniform.items()},
    }


def write_campaign(outdir, result, png=True):
    """Write every campaign artifact into ``outdir``; returns the written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    n = result.proxy.ambient_n
    paths = {
        "witnesses": outdir / "witnesses.csv",
        "summary": outdir / "summary.json",
        "scatter": outdir / "scatter.csv",
        "gnuplot": outdir / "scatter.gp",
    }
    write_witness_csv(paths["witnesses"], result.estimates)
    write_scatter_csv(paths["scatter"], result.estimates)
    paths["gnuplot"].write_text(gnuplot_script(n, [e.d for e in result.estimates]))
    if result.uniform:
        paths["profile"] = outdir / "uniform_profile.csv"
        write_profile_csv(paths["profile"], result.uniform)
    for est in result.estimates:
        p = outdir / f"estimate_d{est.d}.json"
        p.write_text(json.dumps(est.summary(), indent=2))
        paths[f"estimate_d{est.d}"] = p
    paths["summary"].write_text(json.dumps(campaign_summary(result), indent=2))
    if png:
        paths["png"] = outdir / "scatter.png"
        render_png(paths["png"], n, result.estimates, result.uniform)
    return paths


def estimate_line(est):
    """One tab-separated line per estimate for terminal output."""
    w = est.witnesses[0] if est.witnesses else None
    return "\t".join([
        str(est.d), est.value_str, est.direction, str(est.height_max),
        w.subspace.serialize() if w else "-",
        "inf" if est.value is INF else str(est.value),
    ])
