"""JSON persistence for generated patterns.

A PatternDocument is a plain-data snapshot of a pattern bundle: metadata,
vertex values per field, circles per field, and an optional verification
report.  Serialization is deterministic (sorted keys, sorted entry lists,
shortest round-trip float encoding), so identical inputs produce
byte-identical files and all finite values survive save/load bit-exactly.
"""
import json
from dataclasses import dataclass, field as dataclass_field

from .errors import ParseError, SchemaVersionMismatch
from .fgh import VertexField
from .geometry import INFINITY, Circle, is_infinite
from .lattice import LatticePoint
from .patterns import FieldReport, VerificationReport

SCHEMA_VERSION = "hexpatterns/1"


@dataclass
class PatternDocument:
    """Plain-data snapshot of a pattern bundle."""
    kind: str
    alpha: float
    beta: float
    gamma: float
    theta: float
    n: int
    vertices: list = dataclass_field(default_factory=list)
    circles: list = dataclass_field(default_factory=list)
    report: dict = None
    schema: str = SCHEMA_VERSION


def _vertex_entry(tag, p, val):
    inf = is_infinite(val)
    z = 0j if inf else complex(val)
    return {"k": int(p[0]), "l": int(p[1]), "m": int(p[2]),
            "field": tag, "re": z.real, "im": z.imag, "infinite": inf}


def _circle_entry(tag, center, circ: Circle):
    return {"field": tag,
            "center": {"k": int(center[0]), "l": int(center[1]),
                       "m": int(center[2])},
            "re": circ.center.real, "im": circ.center.imag,
            "radius": circ.radius,
            "sublattice": int(sum(center) % 3)}


def report_to_dict(report: VerificationReport) -> dict:
    """Verification report as JSON-ready data (tuples become lists)."""
    out = {}
    for tag, rep in sorted(report.fields.items()):
        out[tag] = {
            "mr_max": rep.mr_max,
            "mr_per_sublattice": {str(j): rep.mr_per_sublattice[j]
                                  for j in sorted(rep.mr_per_sublattice)},
            "mr_worst_cell": list(rep.mr_worst_cell)
                             if rep.mr_worst_cell else None,
            "mr_excluded": sorted(list(c) for c in rep.mr_excluded),
            "circularity_max": rep.circularity_max,
            "circularity_worst_cell": list(rep.circularity_worst_cell)
                                      if rep.circularity_worst_cell else None,
            "circle_count": rep.circle_count,
            "circles_excluded": sorted(list(c) for c in rep.circles_excluded),
            "immersed": rep.immersed,
            "immersion_bad_pairs": rep.immersion_bad_pairs,
            "immersion_inconclusive": rep.immersion_inconclusive,
            "embedded": rep.embedded,
            "overlap_pairs": rep.overlap_pairs,
            "overlap_inconclusive": rep.overlap_inconclusive,
        }
    return out


def report_from_dict(data: dict) -> VerificationReport:
    """Rebuild a VerificationReport from its JSON form."""
    fields = {}
    for tag, rep in data.items():
        fields[tag] = FieldReport(
            tag=tag,
            mr_max=rep["mr_max"],
            mr_per_sublattice={int(j): v
                               for j, v in rep["mr_per_sublattice"].items()},
            mr_worst_cell=tuple(rep["mr_worst_cell"])
                          if rep["mr_worst_cell"] else None,
            mr_excluded=[tuple(c) for c in rep["mr_excluded"]],
            circularity_max=rep["circularity_max"],
            circularity_worst_cell=tuple(rep["circularity_worst_cell"])
                                   if rep["circularity_worst_cell"] else None,
            circle_count=rep["circle_count"],
            circles_excluded=[tuple(c) for c in rep["circles_excluded"]],
            immersed=rep["immersed"],
            immersion_bad_pairs=rep["immersion_bad_pairs"],
            immersion_inconclusive=rep["immersion_inconclusive"],
            embedded=rep["embedded"],
            overlap_pairs=rep["overlap_pairs"],
            overlap_inconclusive=rep["overlap_inconclusive"],
        )
    return VerificationReport(fields=fields)


def from_bundle(bundle) -> PatternDocument:
    """Snapshot a PatternBundle (fields, circles, optional report)."""
    vertices = []
    for tag in sorted(bundle.fields):
        for p, val in bundle.fields[tag].items():
            vertices.append(_vertex_entry(tag, p, val))
    vertices.sort(key=lambda e: (e["field"], e["k"], e["l"], e["m"]))
    circles = []
    for tag in sorted(bundle.patterns):
        pattern = bundle.patterns[tag]
        for center, circ in pattern.circles.items():
            circles.append(_circle_entry(tag, center, circ))
    circles.sort(key=lambda e: (e["field"], e["center"]["k"],
                                e["center"]["l"], e["center"]["m"]))
    report = report_to_dict(bundle.report) if bundle.report else None
    return PatternDocument(kind=bundle.kind, alpha=bundle.alpha,
                           beta=bundle.beta, gamma=bundle.gamma,
                           theta=bundle.theta, n=bundle.n,
                           vertices=vertices, circles=circles, report=report)


def from_assembled(assembled, bundle) -> PatternDocument:
    """Snapshot an AssembledPattern; entries carry a copy index.

    Lattice coordinates repeat across rotated copies, so consumers that
    key vertices by point (document_fields) are not meaningful here; the
    renderer consumes the entry lists directly.
    """
    vertices = []
    circles = []
    for c, copy in enumerate(assembled.copies):
        for p, val in copy.values.items():
            entry = _vertex_entry(assembled.tag, p, val)
            entry["copy"] = c
            vertices.append(entry)
        for center, circ in copy.circles.items():
            entry = _circle_entry(assembled.tag, center, circ)
            entry["copy"] = c
            circles.append(entry)
    vertices.sort(key=lambda e: (e["field"], e["copy"], e["k"], e["l"],
                                 e["m"]))
    circles.sort(key=lambda e: (e["field"], e["copy"], e["center"]["k"],
                                e["center"]["l"], e["center"]["m"]))
    return PatternDocument(kind=bundle.kind + "-assembled",
                           alpha=bundle.alpha, beta=bundle.beta,
                           gamma=bundle.gamma, theta=bundle.theta,
                           n=bundle.n, vertices=vertices, circles=circles)


def document_fields(doc: PatternDocument) -> dict:
    """Vertex fields keyed by tag, with infinite values restored."""
    fields = {}
    for entry in doc.vertices:
        tag = entry["field"]
        if tag not in fields:
            fields[tag] = VertexField(tag=tag)
        p = LatticePoint(entry["k"], entry["l"], entry["m"])
        val = INFINITY if entry["infinite"] else complex(entry["re"],
                                                         entry["im"])
        fields[tag][p] = val
    return fields


def document_circles(doc: PatternDocument) -> dict:
    """Circles keyed by tag, each a map center point -> Circle."""
    circles = {}
    for entry in doc.circles:
        tag = entry["field"]
        center = LatticePoint(entry["center"]["k"], entry["center"]["l"],
                              entry["center"]["m"])
        circles.setdefault(tag, {})[center] = Circle(
            center=complex(entry["re"], entry["im"]),
            radius=entry["radius"])
    return circles


def save_json(doc: PatternDocument) -> bytes:
    """Deterministic UTF-8 JSON bytes for a document."""
    payload = {
        "schema": doc.schema,
        "metadata": {"kind": doc.kind, "alpha": doc.alpha, "beta": doc.beta,
                     "gamma": doc.gamma, "theta": doc.theta, "n": doc.n},
        "vertices": doc.vertices,
        "circles": doc.circles,
        "report": doc.report,
    }
    text = json.dumps(payload, sort_keys=True, indent=2, allow_nan=False)
    return (text + "\n").encode("utf-8")


_VERTEX_KEYS = {"k": int, "l": int, "m": int, "field": str,
                "re": (int, float), "im": (int, float), "infinite": bool}
_CIRCLE_KEYS = {"field": str, "center": dict, "re": (int, float),
                "im": (int, float), "radius": (int, float),
                "sublattice": int}
_METADATA_KEYS = {"kind": str, "alpha": (int, float), "beta": (int, float),
                  "gamma": (int, float), "theta": (int, float), "n": int}


def _check_entry(entry, keys, where):
    if not isinstance(entry, dict):
        raise ParseError(f"{where}: expected an object")
    for key, typ in keys.items():
        if key not in entry:
            raise ParseError(f"{where}: missing key '{key}'")
        value = entry[key]
        # bool is an int subclass; reject it where a number is expected
        if isinstance(value, bool) and typ is not bool:
            raise ParseError(f"{where}: key '{key}' has the wrong type")
        if not isinstance(value, typ):
            raise ParseError(f"{where}: key '{key}' has the wrong type")


def load_json(data: bytes) -> PatternDocument:
    """Parse and validate document bytes.

    Raises SchemaVersionMismatch for unknown schema strings and ParseError
    (naming the offending key or index) for malformed content.
    """
    try:
        payload = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ParseError(f"not valid UTF-8: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} "
                         f"column {exc.colno}") from exc
    if not isinstance(payload, dict):
        raise ParseError("top level: expected an object")
    if "schema" not in payload:
        raise ParseError("top level: missing key 'schema'")
    if payload["schema"] != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"unsupported schema {payload['schema']!r}; "
            f"expected {SCHEMA_VERSION!r}")
    for key in ("metadata", "vertices", "circles"):
        if key not in payload:
            raise ParseError(f"top level: missing key '{key}'")
    _check_entry(payload["metadata"], _METADATA_KEYS, "metadata")
    if not isinstance(payload["vertices"], list):
        raise ParseError("vertices: expected an array")
    if not isinstance(payload["circles"], list):
        raise ParseError("circles: expected an array")
    for i, entry in enumerate(payload["vertices"]):
        _check_entry(entry, _VERTEX_KEYS, f"vertices[{i}]")
    for i, entry in enumerate(payload["circles"]):
        _check_entry(entry, _CIRCLE_KEYS, f"circles[{i}]")
        _check_entry(entry["center"], {"k": int, "l": int, "m": int},
                     f"circles[{i}].center")
    report = payload.get("report")
    if report is not None and not isinstance(report, dict):
        raise ParseError("report: expected an object or null")
    meta = payload["metadata"]
    return PatternDocument(kind=meta["kind"], alpha=meta["alpha"],
                           beta=meta["beta"], gamma=meta["gamma"],
                           theta=meta["theta"], n=meta["n"],
                           vertices=payload["vertices"],
                           circles=payload["circles"],
                           report=report,
                           schema=payload["schema"])
