"""Stable text formats for codes and designs.

Code file: a header line `code graph=<spec> size=<count> [label=<label>]`
followed by one serialized vertex per line, sorted.  Subspace lines join
the basis rows as lowercase hex of the packed base-q row integers with
':'; subset lines are comma-separated members.

Design file: header `design n=<n> k=<k> q=<q>`, then one block per line
in the same vertex syntax.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .constructions import Design
from .graphs import parse_graph_spec, vertex_index
from .subspaces import Subset, Subspace
from .verify import Code


def _parse_header(line: str, expected: str) -> dict:
    parts = line.strip().split()
    if not parts or parts[0] != expected:
        raise ValueError(f"expected a {expected!r} header, got {line.strip()!r}")
    fields = {}
    for tok in parts[1:]:
        if "=" not in tok:
            raise ValueError(f"bad header field {tok!r}")
        key, val = tok.split("=", 1)
        fields[key] = val
    return fields


def code_to_text(code: Code) -> str:
    idx = vertex_index(code.spec)
    head = f"code graph={code.spec} size={len(code)}"
    if code.label:
        head += f" label={code.label}"
    lines = [head]
    lines.extend(idx[int(i)].serialize() for i in code.ids)
    return "\n".join(lines) + "\n"


def write_code(path: Union[str, Path], code: Code) -> None:
    Path(path).write_text(code_to_text(code), encoding="utf-8")


def code_from_text(text: str) -> Code:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty code file")
    fields = _parse_header(lines[0], "code")
    spec = parse_graph_spec(fields["graph"], allow_unbalanced=True)
    size = int(fields["size"])
    body = lines[1:]
    if len(body) != size:
        raise ValueError(f"header says {size} vertices, file has {len(body)}")
    idx = vertex_index(spec)
    ids = []
    for ln in body:
        if spec.q == 1:
            v = Subset.deserialize(ln.strip(), spec.n)
        else:
            v = Subspace.deserialize(ln.strip(), spec.n, spec.q)
        if v.k != spec.k:
            raise ValueError(f"vertex {ln.strip()!r} has the wrong dimension")
        ids.append(idx.id_of(v))
    return Code(spec, ids, label=fields.get("label"))


def read_code(path: Union[str, Path]) -> Code:
    return code_from_text(Path(path).read_text(encoding="utf-8"))


def design_to_text(design: Design) -> str:
    lines = [f"design n={design.n} k={design.k} q={design.q}"]
    lines.extend(b.serialize() for b in design.blocks)
    return "\n".join(lines) + "\n"


def write_design(path: Union[str, Path], design: Design) -> None:
    Path(path).write_text(design_to_text(design), encoding="utf-8")


def design_from_text(text: str) -> Design:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty design file")
    fields = _parse_header(lines[0], "design")
    n, k, q = int(fields["n"]), int(fields["k"]), int(fields["q"])
    blocks = []
    for ln in lines[1:]:
        if q == 1:
            blocks.append(Subset.deserialize(ln.strip(), n))
        else:
            blocks.append(Subspace.deserialize(ln.strip(), n, q))
    return Design(n, k, q, blocks)


def read_design(path: Union[str, Path]) -> Design:
    return design_from_text(Path(path).read_text(encoding="utf-8"))
