"""CSV/JSON serialization for pole sets, survival series, trajectories.

Floats are written with repr(), the shortest representation that round-trips
a double exactly, so serialize -> parse is bit-exact.
"""
from __future__ import annotations

import json

from .basis import ResonantBasis
from .expansion import SurvivalSeries
from .model import DeltaShellPotential
from .poles import Pole, PoleSet
from .singularity import PoleTrajectory

SCHEMA_VERSION = 1


def _fmt(x) -> str:
    return repr(float(x))


def _config_header(config: dict) -> str:
    lines = [f"# {key} = {config[key]}" for key in sorted(config)]
    return "\n".join(lines)


# ---------------------------------------------------------------- pole sets

POLE_COLUMNS = ["index", "re_k", "im_k", "resonance_position", "width"]


def pole_set_to_csv(ps: PoleSet, basis: ResonantBasis | None = None) -> str:
    """CSV table of all poles, improper family first (most negative index last).

    Passing the matching basis appends re_A, im_A columns of the state
    amplitudes.
    """
    cols = list(POLE_COLUMNS) + (["re_A", "im_A"] if basis is not None else [])
    lines = [f"# schema_version = {SCHEMA_VERSION}",
             f"# b = {_fmt(ps.potential.b)}",
             f"# a = {_fmt(ps.potential.a)}",
             ",".join(cols)]
    ordered = list(ps.improper) + list(ps.proper)
    for pole in ordered:
        row = [str(pole.index), _fmt(pole.k.real), _fmt(pole.k.imag),
               _fmt(pole.resonance_position), _fmt(pole.width)]
        if basis is not None:
            A = basis.state(pole.index).A
            row += [_fmt(A.real), _fmt(A.imag)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def pole_set_from_csv(text: str) -> PoleSet:
    b = a = None
    proper, improper = [], []
    header_seen = False
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            key = key.strip()
            if key == "b":
                b = float(value)
            elif key == "a":
                a = float(value)
            continue
        if not header_seen:
            header_seen = True  # column header
            continue
        parts = line.split(",")
        pole = Pole(index=int(parts[0]), k=complex(float(parts[1]), float(parts[2])))
        (proper if pole.index > 0 else improper).append(pole)
    if b is None or a is None:
        raise ValueError("pole CSV is missing the potential header")
    proper.sort(key=lambda p: p.index)
    improper.sort(key=lambda p: -p.index)
    return PoleSet(potential=DeltaShellPotential(b=b, a=a),
                   proper=tuple(proper), improper=tuple(improper))


def pole_set_to_json(ps: PoleSet, basis: ResonantBasis | None = None) -> str:
    poles = []
    for pole in list(ps.improper) + list(ps.proper):
        entry = {"index": pole.index, "re_k": pole.k.real, "im_k": pole.k.imag,
                 "resonance_position": pole.resonance_position, "width": pole.width}
        if basis is not None:
            A = basis.state(pole.index).A
            entry["re_A"] = A.real
            entry["im_A"] = A.imag
        poles.append(entry)
    doc = {"schema_version": SCHEMA_VERSION,
           "potential": {"b": ps.potential.b, "a": ps.potential.a},
           "poles": poles}
    return json.dumps(doc, indent=2) + "\n"


def pole_set_from_json(text: str) -> PoleSet:
    doc = json.loads(text)
    pot = DeltaShellPotential(b=doc["potential"]["b"], a=doc["potential"]["a"])
    proper = [Pole(index=e["index"], k=complex(e["re_k"], e["im_k"]))
              for e in doc["poles"] if e["index"] > 0]
    improper = [Pole(index=e["index"], k=complex(e["re_k"], e["im_k"]))
                for e in doc["poles"] if e["index"] < 0]
    proper.sort(key=lambda p: p.index)
    improper.sort(key=lambda p: -p.index)
    return PoleSet(potential=pot, proper=tuple(proper), improper=tuple(improper))


# ----------------------------------------------------------- survival series

SURVIVAL_COLUMNS = ["t", "t_over_tau", "re_A", "im_A", "S", "S_exp_only", "S_tail_only"]


def survival_to_csv(series: SurvivalSeries, config: dict, oracle_S=None) -> str:
    """Fixed-order survival table; oracle values, when given, append one column."""
    cols = list(SURVIVAL_COLUMNS) + (["S_oracle"] if oracle_S is not None else [])
    lines = [_config_header({"schema_version": SCHEMA_VERSION, **config}), ",".join(cols)]
    for i in range(len(series.t)):
        row = [_fmt(series.t[i]), _fmt(series.t_over_tau[i]),
               _fmt(series.A[i].real), _fmt(series.A[i].imag),
               _fmt(series.S[i]), _fmt(series.S_exp_only[i]), _fmt(series.S_tail_only[i])]
        if oracle_S is not None:
            row.append(_fmt(oracle_S[i]))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def survival_to_json(series: SurvivalSeries, config: dict, oracle_S=None) -> str:
    data = {
        "t": [float(x) for x in series.t],
        "t_over_tau": [float(x) for x in series.t_over_tau],
        "re_A": [float(x.real) for x in series.A],
        "im_A": [float(x.imag) for x in series.A],
        "S": [float(x) for x in series.S],
        "S_exp_only": [float(x) for x in series.S_exp_only],
        "S_tail_only": [float(x) for x in series.S_tail_only],
    }
    if oracle_S is not None:
        data["S_oracle"] = [float(x) for x in oracle_S]
    doc = {"schema_version": SCHEMA_VERSION, "config": config,
           "source": series.source, "lifetime": series.lifetime, "data": data}
    return json.dumps(doc, indent=2) + "\n"


# ------------------------------------------------------------- singularities

def trajectory_to_csv(traj: PoleTrajectory) -> str:
    lines = [f"# schema_version = {SCHEMA_VERSION}",
             f"# family = {traj.family}",
             f"# a = {_fmt(traj.a)}",
             "b,re_k,im_k,family"]
    for b, k in traj.samples:
        lines.append(f"{_fmt(b)},{_fmt(k.real)},{_fmt(k.imag)},{traj.family}")
    return "\n".join(lines) + "\n"


def singularity_report_json(family: int, a: float, b_star: float, k_star: float,
                            residuals: dict) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "family": family, "a": a,
           "b_star": b_star, "k_star": k_star, "residuals": residuals}
    return json.dumps(doc, indent=2) + "\n"
