"""Scene documents: JSON text with optional whole-line ``#`` comments.

    # qualitative reconstruction
    {
      "norm": {"p": "inf"},
      "domain": {"min": [-5, -5], "max": [5, 5]},
      "sites": [
        {"type": "points", "payload": [[0, 0], [1, 2]]},
        {"type": "segments", "payload": [[[0, 0], [1, 0]]]},
        {"type": "sequence_example", "payload": "P"},
        {"type": "union", "payload": [{"type": "points", "payload": [[3, 3]]}]}
      ]
    }
"""

from __future__ import annotations

import hashlib
import json
import re

import numpy as np

from .errors import SceneParseError, VorocellError
from .norms import NormSpec
from .sites import Points, Scene, Segments, SequenceSite, Site

_TOP_KEYS = {"norm", "domain", "sites"}


def _strip_comments(text: str) -> str:
    # blank out comment lines so JSON line numbers still match the file
    return "\n".join("" if line.lstrip().startswith("#") else line
                     for line in text.split("\n"))


def _expect_keys(obj, allowed, required, path):
    if not isinstance(obj, dict):
        raise SceneParseError("expected an object", path=path)
    extra = sorted(set(obj) - allowed)
    if extra:
        raise SceneParseError(f"unknown key {extra[0]!r}", path=path)
    missing = sorted(required - set(obj))
    if missing:
        raise SceneParseError(f"missing key {missing[0]!r}", path=path)


def _numbers(value, path, depth):
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise SceneParseError("expected numeric coordinates", path=path) from None
    if arr.ndim != depth or not np.all(np.isfinite(arr)):
        raise SceneParseError(f"expected a finite numeric array of depth {depth}", path=path)
    return arr


def _primitives(entry, path):
    _expect_keys(entry, {"type", "payload"}, {"type", "payload"}, path)
    kind, payload = entry["type"], entry["payload"]
    where = f"{path}.payload"
    try:
        if kind == "points":
            return [Points(_numbers(payload, where, 2))]
        if kind == "segments":
            return [Segments(_numbers(payload, where, 3))]
        if kind == "sequence_example":
            if payload not in ("P", "A"):
                raise SceneParseError('sequence_example payload must be "P" or "A"', path=where)
            return [SequenceSite(payload)]
        if kind == "union":
            if not isinstance(payload, list) or not payload:
                raise SceneParseError("union payload must be a non-empty list", path=where)
            return [q for i, e in enumerate(payload) for q in _primitives(e, f"{where}[{i}]")]
    except SceneParseError:
        raise
    except VorocellError as exc:
        raise SceneParseError(str(exc), path=where) from None
    raise SceneParseError(f"unknown site type {kind!r}", path=f"{path}.type")


def scene_from_dict(doc) -> Scene:
    _expect_keys(doc, _TOP_KEYS, _TOP_KEYS, "$")
    _expect_keys(doc["norm"], {"p"}, {"p"}, "$.norm")
    try:
        norm = NormSpec.parse(doc["norm"]["p"])
    except (VorocellError, TypeError) as exc:
        raise SceneParseError(str(exc), path="$.norm.p") from None
    _expect_keys(doc["domain"], {"min", "max"}, {"min", "max"}, "$.domain")
    lo = _numbers(doc["domain"]["min"], "$.domain.min", 1)
    hi = _numbers(doc["domain"]["max"], "$.domain.max", 1)
    sites_doc = doc["sites"]
    if not isinstance(sites_doc, list) or not sites_doc:
        raise SceneParseError("sites must be a non-empty list", path="$.sites")
    sites = []
    for k, entry in enumerate(sites_doc):
        try:
            sites.append(Site(_primitives(entry, f"$.sites[{k}]")))
        except SceneParseError:
            raise
        except VorocellError as exc:
            raise SceneParseError(str(exc), path=f"$.sites[{k}]") from None
    try:
        return Scene(lo, hi, sites, norm)
    except VorocellError as exc:
        raise SceneParseError(str(exc), path="$") from None


def loads_scene(text: str) -> Scene:
    try:
        doc = json.loads(_strip_comments(text))
    except json.JSONDecodeError as exc:
        raise SceneParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return scene_from_dict(doc)


def load_scene(path) -> Scene:
    with open(path, encoding="utf-8") as fh:
        return loads_scene(fh.read())


def _primitive_dict(q):
    if isinstance(q, Points):
        return {"type": "points", "payload": q.coords.tolist()}
    if isinstance(q, Segments):
        return {"type": "segments", "payload": q.pairs.tolist()}
    return {"type": "sequence_example", "payload": q.kind}


def scene_to_dict(scene: Scene) -> dict:
    sites = []
    for s in scene.sites:
        if len(s.primitives) == 1:
            sites.append(_primitive_dict(s.primitives[0]))
        else:
            sites.append({"type": "union", "payload": [_primitive_dict(q) for q in s.primitives]})
    return {
        "norm": {"p": scene.norm.to_json()},
        "domain": {"min": scene.lo.tolist(), "max": scene.hi.tolist()},
        "sites": sites,
    }


_LEAF_LIST = re.compile(r"\[\s+([^\[\]{}\"]+?)\s+\]")


def dumps_scene(scene: Scene, header: str | None = None) -> str:
    body = json.dumps(scene_to_dict(scene), indent=2)
    # keep coordinate tuples on one line
    body = _LEAF_LIST.sub(lambda m: "[" + ", ".join(t.strip() for t in m.group(1).split(",")) + "]",
                          body)
    if header:
        lines = "".join(f"# {line}\n".replace("# \n", "#\n") for line in header.splitlines())
        return lines + body + "\n"
    return body + "\n"


def dump_scene(scene: Scene, path, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_scene(scene, header))


def scene_digest(scene: Scene) -> str:
    """Short content hash of the canonical scene document."""
    canon = json.dumps(scene_to_dict(scene), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]
