"""JSON encoding of instances, traces and reports.

Ordinals are ints when finite and otherwise lists of ``[exponent, coeff]``
pairs (exponents encoded the same way); strings such as ``"w*2+1"`` are
accepted on input.  Stages additionally allow the string ``"never"``.
Every document carries a ``kind`` field.
"""

from __future__ import annotations

import json

from .diff_core import UNDEFINED, HybridSpec, IndexValues
from .learners import OmegaBlock, Plateau, Trace
from .matrices import CoproductEntry, OmegaChangeMatrix
from .ordinals import Ordinal, ParseError, from_json, to_json
from .staged_sets import (
    NEVER,
    Constant,
    CoStagedSet,
    DecSegment,
    Floor,
    IncSegment,
    Joined,
    Listed,
    Member,
    NON_WO,
    NonWO,
    Ramp,
    SeqSpec,
    Shift,
    StagedSet,
    Steps,
    WellOrder,
)
from .tree_system import CellDecomposition

__all__ = ["SchemaError", "dump", "load", "dumps", "loads", "canonical"]


class SchemaError(ValueError):
    pass


def canonical(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def _stage(t):
    return "never" if t is NEVER else to_json(t)


def _load_stage(d):
    return NEVER if d == "never" else from_json(d)


def _value(v):
    if v is UNDEFINED:
        return "undefined"
    if isinstance(v, Ordinal):
        return {"ord": to_json(v)}
    return v


def _load_value(d):
    if d == "undefined":
        return UNDEFINED
    if isinstance(d, dict) and set(d) == {"ord"}:
        return from_json(d["ord"])
    return d


def _schedule(s):
    if isinstance(s, Constant):
        return {"constant": to_json(s.t)}
    if isinstance(s, Ramp):
        return {"ramp": [to_json(s.base), to_json(s.step)]}
    if isinstance(s, Steps):
        return {"steps": [[to_json(i), to_json(t)] for i, t in s.points]}
    if isinstance(s, Listed):
        return {"listed": [to_json(t) for t in s.stages]}
    if isinstance(s, Floor):
        return {"floor": [_schedule(s.inner), to_json(s.floor)]}
    if isinstance(s, Shift):
        return {"shift": [[to_json(t) for t in s.prefix], _schedule(s.inner)]}
    if isinstance(s, Joined):
        return {"joined": [_schedule(s.left), _schedule(s.right)]}
    raise SchemaError(f"unknown schedule {s!r}")


def _load_schedule(d):
    if not isinstance(d, dict) or len(d) != 1:
        raise SchemaError(f"schedule must be a one-key object, got {d!r}")
    (key, arg), = d.items()
    if key == "constant":
        return Constant(from_json(arg))
    if key == "ramp":
        return Ramp(from_json(arg[0]), from_json(arg[1]))
    if key == "steps":
        return Steps(tuple((from_json(i), from_json(t)) for i, t in arg))
    if key == "listed":
        return Listed(tuple(from_json(t) for t in arg))
    if key == "floor":
        return Floor(_load_schedule(arg[0]), from_json(arg[1]))
    if key == "shift":
        return Shift(tuple(from_json(t) for t in arg[0]), _load_schedule(arg[1]))
    if key == "joined":
        return Joined(_load_schedule(arg[0]), _load_schedule(arg[1]))
    raise SchemaError(f"unknown schedule kind {key!r}")


def _member(m: Member):
    seg = m.segment
    if isinstance(seg, DecSegment):
        sd = {"bound": to_json(seg.bound), "attained": seg.attained}
    else:
        sd = {"start": to_json(seg.start)}
    return {"segment": sd, "schedule": _schedule(m.schedule)}


def _load_member(d):
    seg = d["segment"]
    if "bound" in seg:
        segment = DecSegment(from_json(seg["bound"]), bool(seg.get("attained", False)))
    else:
        segment = IncSegment(from_json(seg["start"]))
    return Member(segment, _load_schedule(d["schedule"]))


def _code(y):
    if isinstance(y, NonWO):
        return "nonwo"
    return {"rank": [to_json(r) for r in y.rank], "revealed_at": to_json(y.revealed_at)}


def _load_code(d):
    if d == "nonwo":
        return NON_WO
    return WellOrder(tuple(from_json(r) for r in d["rank"]), from_json(d.get("revealed_at", 0)))


def _values(v: IndexValues):
    return {
        "size": v.size,
        "explicit": [[to_json(i), [_value(a) for a in t]] for i, t in v.explicit],
        "even": None if v.even is None else [_value(a) for a in v.even],
        "odd": None if v.odd is None else [_value(a) for a in v.odd],
        "by_index": v.by_index,
    }


def _load_values(d):
    return IndexValues(
        d["size"],
        tuple((from_json(i), tuple(_load_value(a) for a in t)) for i, t in d.get("explicit", [])),
        None if d.get("even") is None else tuple(_load_value(a) for a in d["even"]),
        None if d.get("odd") is None else tuple(_load_value(a) for a in d["odd"]),
        bool(d.get("by_index", False)),
    )


def _segment_json(seg):
    if isinstance(seg, Plateau):
        return {"plateau": [to_json(seg.start), _value(seg.value)]}
    return {"block": [to_json(seg.start), to_json(seg.limit), _value(seg.first), _value(seg.second)]}


def dump(obj):
    """Encode a library object as JSON-ready data."""
    if isinstance(obj, StagedSet):
        return {"kind": "staged", "entry": [_stage(t) for t in obj.entry]}
    if isinstance(obj, CoStagedSet):
        return {"kind": "costaged", "removal": [_stage(t) for t in obj.removal]}
    if isinstance(obj, (WellOrder, NonWO)):
        return {"kind": "code", "code": _code(obj)}
    if isinstance(obj, SeqSpec):
        return {
            "kind": "seq",
            "length": to_json(obj.length),
            "direction": obj.direction,
            "members": [_member(m) for m in obj.members],
        }
    if isinstance(obj, HybridSpec):
        return {"kind": "hybrid", "c": _value(obj.c), "seq": dump(obj.seq), "values": _values(obj.values)}
    if isinstance(obj, OmegaChangeMatrix):
        return {
            "kind": "matrix",
            "height": obj.height,
            "rows": [dump(r) for r in obj.rows],
            "tables": [[[n, v] for n, v in t] for t in obj.tables],
            "c": obj.c,
        }
    if isinstance(obj, CellDecomposition):
        return {"kind": "cells", "levels": obj.levels, "theta": [list(r) for r in obj.theta]}
    if isinstance(obj, Trace):
        return {"kind": "trace", "segments": [_segment_json(s) for s in obj.segments]}
    if isinstance(obj, CoproductEntry):
        return {"kind": "coproduct_entry", "code": _code(obj.code), "seq": dump(obj.seq), "dual": dump(obj.dual)}
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[1], (WellOrder, NonWO)):
        return {"kind": "coded", "set": dump(obj[0]), "code": _code(obj[1])}
    if isinstance(obj, (list, tuple)):
        return {"kind": "list", "items": [dump(o) for o in obj]}
    if isinstance(obj, Ordinal):
        return {"kind": "ordinal", "value": to_json(obj)}
    raise SchemaError(f"cannot encode {type(obj).__name__}")


def load(data):
    """Decode data produced by :func:`dump` (or written by hand)."""
    if not isinstance(data, dict) or "kind" not in data:
        raise SchemaError("expected an object with a 'kind' field")
    kind = data["kind"]
    try:
        if kind == "staged":
            return StagedSet(tuple(_load_stage(t) for t in data["entry"]))
        if kind == "costaged":
            return CoStagedSet(tuple(_load_stage(t) for t in data["removal"]))
        if kind == "code":
            return _load_code(data["code"])
        if kind == "seq":
            return SeqSpec(
                from_json(data["length"]),
                data["direction"],
                tuple(_load_member(m) for m in data["members"]),
            )
        if kind == "hybrid":
            seq = load(data["seq"])
            values = _load_values(data["values"]) if data.get("values") else None
            return HybridSpec(_load_value(data.get("c", 0)), seq, values)
        if kind == "matrix":
            rows = tuple(load(r) for r in data["rows"])
            if "height" in data and data["height"] != len(rows):
                raise SchemaError("height does not match the number of rows")
            tables = tuple(dict((int(n), int(v)) for n, v in t) for t in data.get("tables", []))
            return OmegaChangeMatrix(rows, tables, data.get("c", 0))
        if kind == "cells":
            return CellDecomposition(data["levels"], tuple(tuple(r) for r in data["theta"]))
        if kind == "trace":
            segs = []
            for s in data["segments"]:
                if "plateau" in s:
                    st, v = s["plateau"]
                    segs.append(Plateau(from_json(st), _load_value(v)))
                else:
                    st, lim, a, b = s["block"]
                    segs.append(OmegaBlock(from_json(st), from_json(lim), _load_value(a), _load_value(b)))
            return Trace(tuple(segs))
        if kind == "coproduct_entry":
            return CoproductEntry(_load_code(data["code"]), load(data["seq"]), load(data["dual"]))
        if kind == "coded":
            return load(data["set"]), _load_code(data["code"])
        if kind == "list":
            return [load(d) for d in data["items"]]
        if kind == "ordinal":
            return from_json(data["value"])
    except ParseError:
        raise
    except (KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"malformed {kind!r} document: {exc}") from exc
    raise SchemaError(f"unknown kind {kind!r}")


def dumps(obj) -> str:
    return canonical(dump(obj))


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return load(data)
