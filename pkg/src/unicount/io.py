"""JSON interchange: polytope files, witnesses and certificates."""
import json

from .errors import InputError
from .geometry import PolytopeN, convex_hull_2d
from .equidecomp import EquidecompCert, Motion
from .universal import DecompWitness


def _int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def validate_polytope_doc(doc):
    if not isinstance(doc, dict):
        raise InputError("polytope file must be a JSON object")
    dim, verts = doc.get("dim"), doc.get("vertices")
    if not _int(dim) or dim < 1:
        raise InputError("'dim' must be a positive integer")
    if not isinstance(verts, list) or not verts:
        raise InputError("'vertices' must be a nonempty list")
    for v in verts:
        if not isinstance(v, list) or len(v) != dim or not all(map(_int, v)):
            raise InputError(f"vertex {v!r} is not a list of {dim} integers")
    if dim < 2:
        raise InputError("only dimension >= 2 is supported")
    return dim, [tuple(v) for v in verts]


def body_from_doc(doc):
    dim, verts = validate_polytope_doc(doc)
    if dim == 2:
        return convex_hull_2d(verts)
    return PolytopeN.from_points(verts)


def body_to_doc(p):
    return {"dim": p.ambient_dim, "vertices": [list(v) for v in p.vertices]}


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None


def load_body(path):
    return body_from_doc(read_json(path))


def _polygon(verts):
    if not isinstance(verts, list) or not verts:
        raise InputError("piece vertices must be a nonempty list")
    for v in verts:
        if not isinstance(v, list) or len(v) != 2 or not all(map(_int, v)):
            raise InputError(f"piece vertex {v!r} is not an integer pair")
    return convex_hull_2d([tuple(v) for v in verts])


def witness_to_doc(w):
    return {"x": [list(v) for v in w.x.vertices], "y": [list(v) for v in w.y.vertices],
            "shift_p": list(w.shift_p), "shift_q": list(w.shift_q)}


def witness_from_doc(doc):
    try:
        return DecompWitness(_polygon(doc["x"]), _polygon(doc["y"]),
                             tuple(doc["shift_p"]), tuple(doc["shift_q"]))
    except (KeyError, TypeError):
        raise InputError("malformed witness") from None


def motion_from_doc(doc):
    if not isinstance(doc, dict) or set(doc) - {"translate", "reflected"}:
        raise InputError("invalid motion")
    t = doc.get("translate", [0, 0])
    if not isinstance(t, list) or len(t) != 2 or not all(map(_int, t)):
        raise InputError("motion.translate must be an integer pair")
    return Motion(tuple(t), doc.get("reflected", False))


def cert_from_doc(doc):
    """{"pieces_p": [{"vertices": ..., "motion": {...}}], "pieces_q": [{"vertices": ...}]}"""
    if not isinstance(doc, dict):
        raise InputError("certificate must be a JSON object")
    ps, qs = doc.get("pieces_p"), doc.get("pieces_q")
    if not isinstance(ps, list) or not isinstance(qs, list):
        raise InputError("certificate needs 'pieces_p' and 'pieces_q' lists")
    try:
        pieces_p = tuple((_polygon(e["vertices"]), motion_from_doc(e.get("motion", {})))
                         for e in ps)
        pieces_q = tuple(_polygon(e["vertices"]) for e in qs)
    except (KeyError, TypeError, AttributeError):
        raise InputError("malformed certificate piece") from None
    return EquidecompCert(pieces_p, pieces_q)


def cert_to_doc(cert):
    return {"pieces_p": [{"vertices": [list(v) for v in pc.vertices], "motion": m.to_json()}
                         for pc, m in cert.pieces_p],
            "pieces_q": [{"vertices": [list(v) for v in pc.vertices]} for pc in cert.pieces_q]}


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))

