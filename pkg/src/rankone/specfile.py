"""JSON spec files.

::

    {"family": "the_ts", "gamma": 2, "L": [2, 3], "tail": "repeat_last"}
    {"family": "explicit", "stages": [{"s": [0, 1, 0]}], "tail": "repeat_cycle", "spacer_bound": 1}
    {"family": "chacon"}
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .construction import TAILS, RankOneSpec, make_explicit, make_named, make_the_ts

SPEC_FAMILIES = ("the_ts", "ferenczi", "chacon", "explicit")


class SpecFormatError(ValueError):
    pass


def spec_from_dict(doc: dict) -> RankOneSpec:
    if not isinstance(doc, dict):
        raise SpecFormatError("a spec file holds a JSON object")
    family = doc.get("family")
    if family not in SPEC_FAMILIES:
        raise SpecFormatError(f"family must be one of {', '.join(SPEC_FAMILIES)}")
    tail = doc.get("tail", "repeat_last")
    if tail not in TAILS:
        raise SpecFormatError(f"tail must be one of {', '.join(TAILS)}")
    try:
        if family == "the_ts":
            if "gamma" not in doc or "L" not in doc:
                raise SpecFormatError("the_ts needs gamma and L")
            return make_the_ts(doc["gamma"], doc["L"], tail)
        if family == "explicit":
            stages = doc.get("stages")
            if not isinstance(stages, list) or not stages:
                raise SpecFormatError("explicit needs a nonempty stages list")
            return make_explicit(stages, tail, doc.get("spacer_bound"))
        return make_named(family)
    except (KeyError, TypeError) as exc:
        raise SpecFormatError(f"malformed spec: {exc}") from None


def load_spec(path: Union[str, Path]) -> RankOneSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path}: not valid JSON ({exc})") from None
    return spec_from_dict(doc)


def spec_to_dict(spec: RankOneSpec, horizon: Optional[int] = None) -> dict:
    """The spec's own source if it has one, else its first ``horizon`` rows.

    A window dump repeats its last row past the horizon, so it is exact only
    for stages within the window or when the real tail is constant.
    """
    if spec.source is not None and horizon is None and None not in spec.source.values():
        return dict(spec.source)
    if horizon is None:
        raise ValueError("a derived spec needs a horizon to be written out")
    return {"family": "explicit", "stages": [{"s": list(r.s)} for r in spec.rows(1, horizon + 1)],
            "tail": "repeat_last"}


def dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
