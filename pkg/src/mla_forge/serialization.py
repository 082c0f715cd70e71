"""Canonical JSON file formats.

Documents serialize with keys in a fixed order and no insignificant
whitespace, so write -> read -> write is byte-identical.

  group         {"name": str, "order": n, "cayley": [[int]], "generators": [int]?}
  bracket       {"group": <group doc | path string>, "star": [[int]]}
  construction  {"H": <group doc>, "K": <group doc>, "sigma": [[int]],
                 "starK": [[int]], "gamma": [[int]], "beta": [[int]]}
  report        {"C1": {"pass": bool, "witness": [int] | null}, ..., "C6": ...}
  enumeration   {"raw_count": n, "class_count": m, "exhausted": bool, "items": [...]}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, Union

from .brackets import LieBracket
from .construction import Action, ConditionReport, ConstructionData, GammaMap, PairingMap
from .errors import ValidationError
from .groups import FiniteGroup
from .search import EnumerationResult


def canonical_dumps(doc: Any) -> str:
    return json.dumps(doc, separators=(",", ":"))


def _load_json(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}")


def _expect_table(doc: Any, key: str) -> list[list[int]]:
    value = doc.get(key) if isinstance(doc, dict) else None
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ValidationError(f"field {key!r} must be a table (list of lists)")
    return value


# -- groups -----------------------------------------------------------------


def group_to_doc(group: FiniteGroup) -> dict:
    doc: dict[str, Any] = {"name": group.name, "order": group.order}
    doc["cayley"] = [list(row) for row in group.cayley]
    if group.generators is not None:
        doc["generators"] = list(group.generators)
    return doc


def group_from_doc(doc: Any) -> FiniteGroup:
    if not isinstance(doc, dict):
        raise ValidationError("group document must be a JSON object")
    name = doc.get("name")
    if not isinstance(name, str):
        raise ValidationError("group document needs a string 'name'")
    cayley = _expect_table(doc, "cayley")
    order = doc.get("order")
    if order != len(cayley):
        raise ValidationError(f"declared order {order} does not match table size {len(cayley)}")
    generators = doc.get("generators")
    return FiniteGroup.from_table(name, cayley, generators=generators)


def load_group(path: Union[str, Path]) -> FiniteGroup:
    return group_from_doc(_load_json(path))


def save_group(group: FiniteGroup, path: Union[str, Path]) -> None:
    Path(path).write_text(canonical_dumps(group_to_doc(group)), encoding="utf-8")


# -- brackets ---------------------------------------------------------------


def bracket_to_doc(bracket: LieBracket, group_ref: Optional[str] = None) -> dict:
    group: Any = group_ref if group_ref is not None else group_to_doc(bracket.group)
    return {"group": group, "star": [list(row) for row in bracket.star]}


def bracket_from_doc(
    doc: Any, base_dir: Optional[Path] = None, group: Optional[FiniteGroup] = None
) -> LieBracket:
    if not isinstance(doc, dict):
        raise ValidationError("bracket document must be a JSON object")
    ref = doc.get("group")
    if group is None:
        if isinstance(ref, str):
            path = Path(ref)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            group = load_group(path)
        else:
            group = group_from_doc(ref)
    return LieBracket.make(group, _expect_table(doc, "star"))


def load_bracket(path: Union[str, Path], group: Optional[FiniteGroup] = None) -> LieBracket:
    p = Path(path)
    return bracket_from_doc(_load_json(p), base_dir=p.parent, group=group)


def save_bracket(bracket: LieBracket, path: Union[str, Path], group_ref: Optional[str] = None) -> None:
    Path(path).write_text(canonical_dumps(bracket_to_doc(bracket, group_ref)), encoding="utf-8")


# -- construction data ------------------------------------------------------


def construction_to_doc(data: ConstructionData) -> dict:
    return {
        "H": group_to_doc(data.H),
        "K": group_to_doc(data.K),
        "sigma": [list(row) for row in data.action.sigma],
        "starK": [list(row) for row in data.star_k.star],
        "gamma": [list(row) for row in data.gamma.gamma],
        "beta": [list(row) for row in data.beta.beta],
    }


def construction_from_doc(doc: Any) -> ConstructionData:
    if not isinstance(doc, dict):
        raise ValidationError("construction document must be a JSON object")
    H = group_from_doc(doc.get("H"))
    K = group_from_doc(doc.get("K"))
    action = Action.make(H, K, _expect_table(doc, "sigma"))
    star_k = LieBracket.make(K, _expect_table(doc, "starK"))
    gamma = GammaMap.make(H, K, _expect_table(doc, "gamma"))
    beta = PairingMap.make(H, K, _expect_table(doc, "beta"))
    return ConstructionData.make(action, star_k, gamma, beta)


def load_construction(path: Union[str, Path]) -> ConstructionData:
    return construction_from_doc(_load_json(path))


def save_construction(data: ConstructionData, path: Union[str, Path]) -> None:
    Path(path).write_text(canonical_dumps(construction_to_doc(data)), encoding="utf-8")


# -- reports and enumeration results ----------------------------------------


def condition_report_to_doc(report: ConditionReport) -> dict:
    if not report.fully_evaluated:
        raise ValidationError("cannot serialize a short-circuited condition report")
    doc = {}
    for name, status in report.statuses:
        doc[name] = {
            "pass": status.passed,
            "witness": list(status.witness) if status.witness is not None else None,
        }
    return doc


def enumeration_to_doc(result: EnumerationResult, include_items: bool = True) -> dict:
    doc: dict[str, Any] = {
        "raw_count": result.raw_count,
        "class_count": result.class_count,
        "exhausted": result.exhausted,
    }
    if include_items:
        doc["items"] = [bracket_to_doc(b) for b in result.items]
    else:
        doc["items"] = []
    return doc
