"""Stable JSON file formats shared by the library and the CLI.

Rationals serialize as strings "p/q" in lowest terms with q >= 1, never
floats.  Emission is canonical: sorted keys, compact separators, trailing
newline, so every artifact round-trips byte-for-byte.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import words as W
from .actions import FiniteAction, Permutation
from .cosets import CosetTable, Presentation, todd_coxeter
from .hyperfinite import Decomposition
from .irs import AtomicIRS
from .lab import Challenge
from .metrics import TraceProfile
from .rationals import format_fraction, parse_fraction
from .words import Word


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def action_to_obj(X: FiniteAction) -> dict:
    return {"n": X.n, "m": X.m, "gens": [list(g.images) for g in X.gens]}


def action_from_obj(obj: dict) -> FiniteAction:
    gens = tuple(Permutation(tuple(images)) for images in obj["gens"])
    X = FiniteAction(int(obj["n"]), gens)
    if X.m != int(obj["m"]):
        raise ValueError("declared m does not match the generator list")
    return X


def presentation_to_obj(P: Presentation) -> dict:
    return {"m": P.m, "relators": [str(w) for w in P.relators]}


def presentation_from_obj(obj: dict) -> Presentation:
    relators = tuple(W.from_str(s) for s in obj["relators"])
    return Presentation(int(obj["m"]), relators)


def profile_to_obj(p: TraceProfile) -> dict:
    levels = {}
    for r in range(1, p.radius + 1):
        levels[str(r)] = {
            ",".join(map(str, trace)): format_fraction(prob)
            for trace, prob in sorted(p.level(r).items())
        }
    return {"radius": p.radius, "levels": levels}


def decomposition_to_obj(d: Decomposition) -> dict:
    return {
        "removed": sorted(d.removed),
        "K": d.K,
        "epsilon_used": format_fraction(d.epsilon_used),
    }


def decomposition_from_obj(obj: dict) -> Decomposition:
    return Decomposition(
        frozenset(int(x) for x in obj["removed"]),
        int(obj["K"]),
        parse_fraction(obj["epsilon_used"]),
    )


def challenge_to_obj(c: Challenge) -> dict:
    out = {
        "action": action_to_obj(c.action),
        "relators": sorted(str(w) for w in c.relator_set),
        "log": [list(entry) for entry in c.perturbation_log],
    }
    if c.planted is not None:
        out["planted"] = action_to_obj(c.planted)
    return out


def challenge_from_obj(obj: dict) -> Challenge:
    planted = obj.get("planted")
    return Challenge(
        action_from_obj(obj["action"]),
        frozenset(W.from_str(s) for s in obj["relators"]),
        action_from_obj(planted) if planted is not None else None,
        tuple(tuple(int(v) for v in entry) for entry in obj.get("log", [])),
    )


def irs_from_obj(obj: dict, base_dir: Path | None = None) -> AtomicIRS:
    """Load an atomic IRS description.

    Each class names its presentation (inline under "presentation" or as
    a file path under "presentation_ref"), its subgroup generator words,
    and its weight; coset tables are enumerated on load.
    """
    classes = []
    for entry in obj["classes"]:
        if "presentation" in entry:
            pres = presentation_from_obj(entry["presentation"])
        else:
            ref = Path(entry["presentation_ref"])
            if base_dir is not None and not ref.is_absolute():
                ref = base_dir / ref
            pres = presentation_from_obj(json.loads(ref.read_text()))
        gens = tuple(W.from_str(s) for s in entry["subgroup"])
        table = todd_coxeter(pres, gens, int(entry.get("max_cosets", 10**6)))
        classes.append((table, parse_fraction(entry["weight"])))
    return AtomicIRS(tuple(classes))


def table_to_obj(T: CosetTable) -> dict:
    return {
        "presentation": presentation_to_obj(T.presentation),
        "action": action_to_obj(T.action),
        "subgroup": [str(w) for w in T.subgroup_gens],
        "base": T.base,
    }
