import csv
import json
import pickle
from fractions import Fraction

import pytest

from diophantine_transfer.campaign import run_campaign
from diophantine_transfer.exponents import CERTIFIED, HEURISTIC
from diophantine_transfer.grassmann import Multivector
from diophantine_transfer.points import catalog_entry, decimal
from diophantine_transfer.report import (
    PROFILE_COLUMNS,
    SCATTER_COLUMNS,
    WITNESS_COLUMNS,
    campaign_summary,
    estimate_line,
    gnuplot_script,
    write_campaign,
)
from diophantine_transfer.transfer import INF, SearchBudget

BUDGET = SearchBudget(H_sq_max=10 ** 6, exhaustive_H_sq=20, ladder_size=40)
GRID = [2 ** k for k in range(4, 9)]


@pytest.fixture(scope="module")
def plastic_run():
    return run_campaign(catalog_entry("plastic"), [0, 1], BUDGET, 128, GRID)


def test_campaign_certifies_plastic(plastic_run):
    r = plastic_run
    assert r.proxy.independence == "certified"
    assert [e.d for e in r.estimates] == [0, 1]
    assert all(e.direction == CERTIFIED for e in r.estimates)
    assert set(r.uniform) == {"point", "form"}
    assert r.rounds[-1]["halo_ok"]
    assert r.notes == []


def test_campaign_refines_liouville():
    budget = SearchBudget(H_sq_max=10 ** 10, exhaustive_H_sq=20, ladder_size=40)
    r = run_campaign(catalog_entry("liouville"), [0], budget, 64, max_bits=1024)
    # the first rounds cannot resolve the huge partial quotient
    assert len(r.rounds) > 1 and r.rounds[-1]["halo_ok"]
    assert r.precision_bits > 64
    (est,) = r.estimates
    assert est.direction == CERTIFIED
    assert est.value > 10


def test_campaign_refuses_violated_point():
    r = run_campaign(catalog_entry("golden-trap"), [0, 1], BUDGET, 128, GRID)
    assert len(r.rounds) == 1
    assert any("independence violated" in n for n in r.notes)
    for est in [*r.estimates, *r.uniform.values()]:
        assert est.direction == HEURISTIC


def test_parallel_matches_serial():
    spec = catalog_entry("sqrt2-sqrt3")
    a = run_campaign(spec, [0], BUDGET, 128, GRID[:3])
    b = run_campaign(spec, [0], BUDGET, 128, GRID[:3], workers=2)
    assert [e.value for e in a.estimates] == [e.value for e in b.estimates]
    assert {k: v.value for k, v in a.uniform.items()} == {k: v.value for k, v in b.uniform.items()}


def test_multivector_pickles():
    X = Multivector(4, 2, {(0, 1): 3, (2, 3): -1})
    assert pickle.loads(pickle.dumps(X)) == X


# --- report files -----------------------------------------------------------------------


def test_write_campaign_artifacts(tmp_path, plastic_run):
    paths = write_campaign(tmp_path, plastic_run)
    names = {p.name for p in paths.values()}
    assert names == {"witnesses.csv", "summary.json", "scatter.csv", "scatter.gp",
                     "uniform_profile.csv", "estimate_d0.json", "estimate_d1.json", "scatter.png"}
    with open(paths["witnesses"]) as fh:
        rows = list(csv.DictReader(fh))
    assert tuple(rows[0]) == WITNESS_COLUMNS
    for row in rows:
        int(row["height_sq"])
        Fraction(row["distance_sq"])
        assert row["certified"] in ("0", "1")
    with open(paths["scatter"]) as fh:
        assert tuple(next(csv.reader(fh))) == SCATTER_COLUMNS
    with open(paths["profile"]) as fh:
        prof = list(csv.reader(fh))
    assert tuple(prof[0]) == PROFILE_COLUMNS and len(prof) == 1 + 2 * len(GRID)
    summary = json.loads(paths["summary"].read_text())
    assert summary["name"] == "plastic" and summary["n"] == 2
    assert summary["independence"] == "certified"
    assert summary["uniform"]["point"]["direction"] == CERTIFIED
    assert paths["png"].read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_write_campaign_without_png(tmp_path, plastic_run):
    paths = write_campaign(tmp_path, plastic_run, png=False)
    assert "png" not in paths and not (tmp_path / "scatter.png").exists()


def test_gnuplot_script_mentions_floors():
    text = gnuplot_script(2, [0, 1])
    assert "scatter.csv" in text
    assert "(1 + 0.500000) * x" in text and "(1 + 2.000000) * x" in text


def test_summary_is_json_clean(plastic_run):
    json.dumps(campaign_summary(plastic_run))


def test_estimate_line(plastic_run):
    fields = estimate_line(plastic_run.estimates[0]).split("\t")
    assert fields[0] == "0" and fields[2] == CERTIFIED
    assert Fraction(fields[5]) == plastic_run.estimates[0].value


def test_estimate_line_infinite():
    r = run_campaign(decimal(["0.5"]), [0], BUDGET, 64)
    assert r.estimates[0].value is INF
    assert estimate_line(r.estimates[0]).split("\t")[1] == "inf"
