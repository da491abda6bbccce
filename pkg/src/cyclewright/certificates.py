"""Trusted certificate checking and the JSON wire format.

The two verifiers here are the artifact's ground truth: every certifying
operation passes its output through them before returning, and the CLI
refuses to write anything they reject.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .coloring import Coloring
from .cycles import OrientedCycleSpec, SubdivisionWitness
from .digraph import Digraph
from .errors import DomainMismatchError


def verify_coloring(d: Digraph, col: Coloring) -> bool:
    """True iff no arc (in either direction) joins equal colors."""
    if col.n != d.n:
        raise DomainMismatchError(
            f"coloring covers {col.n} vertices, digraph has {d.n}"
        )
    return all(col.color[u] != col.color[v] for u, v in d.arcs)


def verify_subdivision(d: Digraph, w: SubdivisionWitness) -> bool:
    """Check every witness invariant against the host digraph.

    Branch vertices distinct; path i runs between consecutive branch
    vertices in its block's direction; every consecutive pair is an arc of
    d; path length >= block length; paths internally disjoint from each
    other and from all branch vertices.
    """
    spec = w.spec
    p = spec.num_blocks
    if len(w.paths) != p:
        return False

    if spec.is_directed():
        if len(w.branch) != 1:
            return False
        (path,) = w.paths
        k = spec.blocks[0][0]
        if len(path) < k + 1 or path[0] != w.branch[0] or path[-1] != w.branch[0]:
            return False
        interior = path[1:-1]
        if len(set(interior)) != len(interior) or w.branch[0] in interior:
            return False
        return _is_dipath(d, path)

    if len(w.branch) != p or len(set(w.branch)) != p:
        return False
    seen_internal: set[int] = set()
    seen_arcs: set[tuple[int, int]] = set()
    branch_set = set(w.branch)
    for i, (length, forward) in enumerate(spec.blocks):
        a = w.branch[i]
        b = w.branch[(i + 1) % p]
        path = w.paths[i]
        want_start, want_end = (a, b) if forward else (b, a)
        if path[0] != want_start or path[-1] != want_end:
            return False
        if len(path) - 1 < length:
            return False
        if not _is_dipath(d, path):
            return False
        interior = path[1:-1]
        if len(set(interior)) != len(interior):
            return False
        for v in interior:
            if v in branch_set or v in seen_internal:
                return False
        seen_internal.update(interior)
        # a subdivision is a subgraph: blocks may not share arcs
        for arc in zip(path, path[1:]):
            if arc in seen_arcs:
                return False
            seen_arcs.add(arc)
    return True


def _is_dipath(d: Digraph, path) -> bool:
    if any(not (0 <= v < d.n) for v in path):
        raise DomainMismatchError("witness vertex outside the digraph")
    return all(d.has_arc(path[i], path[i + 1]) for i in range(len(path) - 1))


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    theorem: str
    params: dict[str, int] = field(default_factory=dict)
    kind: str = "coloring"  # coloring | witness | diagnostic
    bound: int | None = None
    coloring: Coloring | None = None
    witness: SubdivisionWitness | None = None
    diagnostic: dict[str, Any] | None = None

    def __post_init__(self):
        if self.kind not in ("coloring", "witness", "diagnostic"):
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        if self.kind == "coloring" and self.coloring is None:
            raise ValueError("coloring certificate without a coloring")
        if self.kind == "witness" and self.witness is None:
            raise ValueError("witness certificate without a witness")
        if self.kind == "diagnostic" and self.diagnostic is None:
            raise ValueError("diagnostic certificate without a report")
        if self.kind == "coloring" and self.bound is not None:
            if self.coloring.palette_size > self.bound:
                raise ValueError("palette exceeds the claimed bound")


def coloring_certificate(
    theorem: str, params: dict[str, int], col: Coloring, bound: int
) -> Certificate:
    return Certificate(theorem, params, "coloring", bound, coloring=col)


def witness_certificate(
    theorem: str, params: dict[str, int], w: SubdivisionWitness
) -> Certificate:
    return Certificate(theorem, params, "witness", witness=w)


def diagnostic_certificate(
    theorem: str, params: dict[str, int], tag: str, detail: str, instance_text: str | None = None
) -> Certificate:
    report = {"violated": tag, "detail": detail}
    if instance_text is not None:
        report["instance"] = instance_text
    return Certificate(theorem, params, "diagnostic", diagnostic=report)


def verify_certificate(d: Digraph, cert: Certificate) -> bool:
    """Self-check a certificate against its digraph. Diagnostics never verify."""
    if cert.kind == "coloring":
        if cert.bound is not None and cert.coloring.palette_size > cert.bound:
            return False
        return verify_coloring(d, cert.coloring)
    if cert.kind == "witness":
        return verify_subdivision(d, cert.witness)
    return False


# -- JSON wire format ---------------------------------------------------------
# Fixed key order: theorem, params, kind, bound, coloring | witness | diagnostic.


def _spec_to_json(spec: OrientedCycleSpec) -> dict:
    return {"blocks": [{"len": l, "dir": "+" if f else "-"} for l, f in spec.blocks]}


def _spec_from_json(obj: dict) -> OrientedCycleSpec:
    return OrientedCycleSpec(
        tuple((int(b["len"]), b["dir"] == "+") for b in obj["blocks"])
    )


def certificate_to_json(cert: Certificate) -> str:
    out: dict[str, Any] = {
        "theorem": cert.theorem,
        "params": dict(sorted(cert.params.items())),
        "kind": cert.kind,
        "bound": cert.bound,
    }
    if cert.kind == "coloring":
        out["coloring"] = {
            "palette": cert.coloring.palette_size,
            "colors": list(cert.coloring.color),
        }
    elif cert.kind == "witness":
        out["witness"] = {
            "spec": _spec_to_json(cert.witness.spec),
            "branch": list(cert.witness.branch),
            "paths": [list(p) for p in cert.witness.paths],
        }
    else:
        out["diagnostic"] = cert.diagnostic
    return json.dumps(out, indent=2) + "\n"


def certificate_from_json(text: str) -> Certificate:
    obj = json.loads(text)
    kind = obj["kind"]
    coloring = witness = diagnostic = None
    if kind == "coloring":
        c = obj["coloring"]
        coloring = Coloring(tuple(int(x) for x in c["colors"]), int(c["palette"]))
    elif kind == "witness":
        wrec = obj["witness"]
        witness = SubdivisionWitness(
            _spec_from_json(wrec["spec"]),
            tuple(int(v) for v in wrec["branch"]),
            tuple(tuple(int(v) for v in p) for p in wrec["paths"]),
        )
    else:
        diagnostic = obj["diagnostic"]
    bound = obj.get("bound")
    return Certificate(
        obj["theorem"],
        {k: int(v) for k, v in obj.get("params", {}).items()},
        kind,
        int(bound) if bound is not None else None,
        coloring,
        witness,
        diagnostic,
    )
