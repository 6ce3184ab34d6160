"""Text and JSON formats for hypergraphs and partition certificates.

Text format::

    # comment
    n r m
    v1 v2 ... vr w      (m lines, 1-based vertices)

JSON mirror: ``{"n": .., "r": .., "edges": [[[v1, .., vr], w], ...]}``.
Certificates: ``{"k": .., "part_of": [..]}`` with 1-based parts.
"""
import json
from pathlib import Path

from .core import PartitionCertificate, WeightedHypergraph, validate
from .errors import BadEdgeError, EmptyOrZeroWeightError, HypergraphError


def parse_text(text: str) -> WeightedHypergraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise EmptyOrZeroWeightError("empty hypergraph file: no header and no edges")
    try:
        n, r, m = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise HypergraphError(f"bad header {lines[0]!r}; expected 'n r m'") from exc
    body = lines[1:]
    if len(body) != m:
        raise HypergraphError(f"header declares {m} edges, found {len(body)}")
    edges = []
    for ln in body:
        toks = ln.split()
        if len(toks) != r + 1:
            raise BadEdgeError(f"edge line {ln!r} must have {r} vertices and a weight")
        edges.append((tuple(int(t) for t in toks[:-1]), float(toks[-1])))
    return WeightedHypergraph(n, r, tuple(edges))


def format_text(h: WeightedHypergraph) -> str:
    out = [f"{h.n} {h.r} {h.m}"]
    for verts, wt in h.edges:
        out.append(" ".join(str(v) for v in verts) + f" {wt!r}")
    return "\n".join(out) + "\n"


def to_json_dict(h: WeightedHypergraph) -> dict:
    return {"n": h.n, "r": h.r,
            "edges": [[list(verts), wt] for verts, wt in h.edges]}


def from_json_dict(data: dict) -> WeightedHypergraph:
    try:
        edges = tuple((tuple(e[0]), float(e[1])) for e in data["edges"])
        return WeightedHypergraph(int(data["n"]), int(data["r"]), edges)
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise HypergraphError(f"malformed hypergraph JSON: {exc}") from exc


def _load_json(text, path):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise HypergraphError(f"{path}: invalid JSON ({exc})") from exc


def read_hypergraph(path, check=True) -> WeightedHypergraph:
    """Read either format (JSON if the first non-blank character is ``{``)."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        h = from_json_dict(_load_json(text, path))
    else:
        h = parse_text(text)
    if check:
        validate(h)
    return h


def write_hypergraph(h: WeightedHypergraph, path, fmt=None, extra=None):
    """Write text, or JSON when ``fmt == 'json'`` or the suffix is ``.json``."""
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix == ".json" else "text"
    if fmt == "json":
        data = to_json_dict(h)
        if extra:
            data.update(extra)
        path.write_text(json.dumps(data, indent=1) + "\n")
    else:
        path.write_text(format_text(h))


def certificate_to_dict(cert: PartitionCertificate) -> dict:
    return {"k": cert.k, "part_of": list(cert.part_of)}


def read_certificate(path) -> PartitionCertificate:
    data = _load_json(Path(path).read_text(), path)
    try:
        return PartitionCertificate(int(data["k"]), tuple(data["part_of"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise HypergraphError(f"malformed certificate JSON: {exc}") from exc


def write_certificate(cert: PartitionCertificate, path):
    Path(path).write_text(json.dumps(certificate_to_dict(cert)) + "\n")
