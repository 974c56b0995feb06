"""Text and JSON renderings of an :class:`~hyperincl.hyperpower.EnclosureRun`."""

from __future__ import annotations

import json

from .hyperpower import EnclosureRun
from .scalar import ScalarMode

WIDTH_DIGITS = 3


def run_to_dict(run: EnclosureRun, mode: ScalarMode, digits: int = 20) -> dict:
    """JSON-ready record; scalars are decimal strings to keep their precision."""
    fmt = lambda x: mode.format(x, digits)  # noqa: E731
    v = run.verification
    return {
        "method": run.method.label,
        "mode": repr(mode),
        "scale": fmt(run.scale),
        "verified": None if v is None else v.verified,
        "rho_bound": None if v is None else fmt(v.rho_bound),
        "verified_at": None if v is None or not v.verified else v.step,
        "iterations": run.iterations,
        "termination": run.termination.value,
        "steps": [
            {
                "k": s.k,
                "midpoint": [[fmt(x) for x in row] for row in s.X.midpoint().tolist()],
                "width": [[fmt(x) for x in row] for row in s.X.width().tolist()],
                "max_width": fmt(s.max_width),
            }
            for s in run.steps
        ],
    }


def to_json(run: EnclosureRun, mode: ScalarMode, digits: int = 20) -> str:
    return json.dumps(run_to_dict(run, mode, digits), indent=2)


def _short(s: str) -> str:
    mant, exp = f"{float(s):.{WIDTH_DIGITS - 1}e}".split("e")
    return f"{mant}e{int(exp):+d}"


def to_text(run: EnclosureRun, mode: ScalarMode, digits: int = 20) -> str:
    d = run_to_dict(run, mode, digits)
    out = []
    for s in d["steps"]:
        out.append(f"k = {s['k']}")
        out.append("  m(X):")
        out.extend("    " + "  ".join(row) for row in s["midpoint"])
        out.append("  d(X):")
        out.extend("    " + "  ".join(_short(x) for x in row) for row in s["width"])
        out.append(f"  max width: {_short(s['max_width'])}")
    out.append(f"method: {d['method']}")
    out.append(f"mode: {d['mode']}")
    out.append(f"iterations: {d['iterations']}")
    out.append(f"termination: {d['termination']}")
    out.append(f"scale: {d['scale']}")
    if d["verified"] is None:
        out.append("verification: skipped")
    elif d["verified"]:
        out.append(f"verification: verified at k = {d['verified_at']} (rho bound {_short(d['rho_bound'])})")
    else:
        out.append(f"verification: not verified (rho bound {_short(d['rho_bound'])})")
    return "\n".join(out) + "\n"
