"""Measurement campaigns over a point spec.

A campaign refines the proxy until no witness or grid minimum is dominated
by its halo (halo at most a quarter of the measured value), doubling the
precision each round.  Points that fail the independence check are never
refined for soundness and never certified.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .exponents import (
    HEURISTIC,
    best_form_error,
    best_point_error,
    approximation_halo,
    estimate_many,
    estimate_uniform,
)
from .points import refine
from .transfer import SearchBudget


@dataclass
class CampaignResult:
    spec: object
    proxy: object
    precision_bits: int
    estimates: list
    uniform: dict = field(default_factory=dict)
    rounds: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def _profile_row(args):
    P, end, X = args
    fn = best_point_error if end == "point" else best_form_error
    x, err = fn(P, X)
    return X, x, err, approximation_halo(P, x, end)


def _omega_task(args):
    P, ds, budget = args
    return estimate_many(P, ds, budget)


def _halo_ok(estimates, profiles):
    for est in estimates:
        if not all(w.halo_sound for w in est.scatter):
            return False
    for rows in profiles.values():
        if not all(halo == 0 or 4 * halo <= err for _, _, err, halo in rows):
            return False
    return True


def _run_once(P, ds, budget, grid, ends, workers):
    profile_jobs = [(P, end, X) for end in ends for X in grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            omega = ex.submit(_omega_task, (P, ds, budget)) if ds else None
            rows = list(ex.map(_profile_row, profile_jobs))
            estimates = omega.result() if omega else []
    else:
        estimates = _omega_task((P, ds, budget)) if ds else []
        rows = [_profile_row(job) for job in profile_jobs]
    profiles = {end: [r for r, job in zip(rows, profile_jobs) if job[1] == end] for end in ends}
    return estimates, profiles


def run_campaign(spec, ds=(), budget=None, precision_bits=128, uniform_grid=None,
                 ends=("point", "form"), workers=1, max_bits=4096):
    """Estimate exponents for ``spec`` with the precision policy applied."""
    budget = budget or SearchBudget()
    grid = sorted(set(uniform_grid or ()))
    ends = tuple(ends) if grid else ()
    bits = precision_bits
    rounds = []
    while True:
        P = refine(spec, bits)
        estimates, profiles = _run_once(P, list(ds), budget, grid, ends, workers)
        ok = _halo_ok(estimates, profiles)
        rounds.append({"precision_bits": bits, "halo_ok": ok})
        if ok or P.independence == "violated" or 2 * bits > max_bits:
            break
        bits *= 2
    notes = []
    if P.independence == "violated":
        notes.append("independence violated: nothing certified")
    elif not ok:
        notes.append(f"halo still dominates at {bits} bits; estimates left heuristic")
    uniform = {end: estimate_uniform(P, end, grid, profile=profiles[end]) for end in ends}
    for est in [*estimates, *uniform.values()]:
        if P.independence == "violated":
            est.direction = HEURISTIC
    return CampaignResult(spec, P, bits, estimates, uniform, rounds, notes)
