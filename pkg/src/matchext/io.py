"""Text formats for graphs, precolourings and colourings, plus DOT export.

Graph files::

    g <n> <m>
    e <u> <v>        (m lines; edge ids are implicit, 0..m-1 in order)

Precolouring files hold ``p <edge-id> <colour>`` lines and colouring files
``c <edge-id> <colour>`` lines.  ``#`` starts a comment anywhere on a line.
Hunt reports are line-oriented ``key value`` records that embed witness
graphs and precolourings in the same formats.
Serialization is canonical: LF endings, single spaces, ascending edge ids.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import asdict

from .errors import LoopRejected, ParseError, VertexOutOfRange
from .graph import Multigraph, is_matching, palette_size


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


def _ints(no: int, tokens: list[str], expected: str) -> list[int]:
    try:
        out = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(no, f"expected {expected}, got {' '.join(tokens)!r}") from None
    if any(x < 0 for x in out):
        raise ParseError(no, f"expected non-negative {expected}")
    return out


def parse_graph(text: str) -> Multigraph:
    header = None
    pairs: list[tuple[int, int]] = []
    for no, tok in _lines(text):
        if header is None:
            if tok[0] != "g" or len(tok) != 3:
                raise ParseError(no, "expected header 'g <n> <m>'")
            header = (no, *_ints(no, tok[1:], "'g <n> <m>'"))
            continue
        if tok[0] != "e" or len(tok) != 3:
            raise ParseError(no, "expected edge line 'e <u> <v>'")
        u, v = _ints(no, tok[1:], "'e <u> <v>'")
        if u == v:
            raise ParseError(no, f"LoopRejected: loop at vertex {u}")
        if u >= header[1] or v >= header[1]:
            raise ParseError(no, f"VertexOutOfRange: vertex outside 0..{header[1] - 1}")
        pairs.append((u, v))
    if header is None:
        raise ParseError(1, "missing header 'g <n> <m>'")
    hno, n, m = header
    if len(pairs) != m:
        raise ParseError(hno, f"header declares {m} edges, found {len(pairs)}")
    try:
        return Multigraph(n, pairs)
    except (LoopRejected, VertexOutOfRange) as exc:  # pragma: no cover - caught per line above
        raise ParseError(hno, str(exc)) from exc


def serialize_graph(g: Multigraph) -> str:
    out = [f"g {g.n} {g.m}"]
    out.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def _parse_assignment(text: str, tag: str) -> dict[int, int]:
    out: dict[int, int] = {}
    for no, tok in _lines(text):
        if tok[0] != tag or len(tok) != 3:
            raise ParseError(no, f"expected '{tag} <edge-id> <colour>'")
        e, c = _ints(no, tok[1:], f"'{tag} <edge-id> <colour>'")
        if e in out:
            raise ParseError(no, f"edge {e} listed twice")
        if c < 1:
            raise ParseError(no, "colours start at 1")
        out[e] = c
    return out


def _line_of(text: str, tag: str, edge: int) -> int:
    for no, tok in _lines(text):
        if tok[0] == tag and len(tok) > 1 and tok[1] == str(edge):
            return no
    return 1


def parse_precolouring(text: str, g: Multigraph | None = None) -> dict[int, int]:
    """Parse ``p`` lines; with ``g`` given, also check the edges and palette."""
    phi = _parse_assignment(text, "p")
    if g is not None:
        k = palette_size(g)
        for e, c in phi.items():
            if e >= g.m:
                raise ParseError(_line_of(text, "p", e), f"edge {e} does not exist")
            if c > k:
                raise ParseError(_line_of(text, "p", e), f"colour {c} outside palette 1..{k}")
        if not is_matching(g, phi):
            seen: set[int] = set()
            for e in sorted(phi):
                if seen & set(g.edges[e]):
                    raise ParseError(_line_of(text, "p", e), f"NotAMatching: edge {e} shares a vertex")
                seen.update(g.edges[e])
    return phi


def serialize_precolouring(phi: Mapping[int, int]) -> str:
    return "".join(f"p {e} {phi[e]}\n" for e in sorted(phi))


def parse_colouring(text: str, g: Multigraph | None = None) -> list[int]:
    col = _parse_assignment(text, "c")
    m = g.m if g is not None else (max(col) + 1 if col else 0)
    missing = [e for e in range(m) if e not in col]
    if missing:
        raise ParseError(1, f"colouring is not total; missing edge {missing[0]}")
    extra = [e for e in col if e >= m]
    if extra:
        raise ParseError(_line_of(text, "c", extra[0]), f"edge {extra[0]} does not exist")
    return [col[e] for e in range(m)]


def serialize_colouring(colouring) -> str:
    if isinstance(colouring, Mapping):
        colouring = [colouring[e] for e in sorted(colouring)]
    return "".join(f"c {e} {c}\n" for e, c in enumerate(colouring))


def dot_export(g: Multigraph, colouring=None, phi: Mapping[int, int] | None = None, name: str = "G") -> str:
    """Graphviz text; coloured edges labelled, precoloured edges drawn bold."""
    phi = phi or {}
    out = [f"graph {name} {{"]
    out.extend(f"  {v};" for v in range(g.n))
    for e, (u, v) in enumerate(g.edges):
        attrs = [f'id="e{e}"']
        c = None
        if colouring is not None:
            c = colouring[e] if not isinstance(colouring, Mapping) else colouring.get(e)
        if c is None and e in phi:
            c = phi[e]
        if c:
            attrs.append(f'label="{c}"')
        if e in phi:
            attrs.append("style=bold")
        out.append(f"  {u} -- {v} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"


# --- hunt reports ----------------------------------------------------------


def serialize_hunt_report(report) -> str:
    """Line-oriented ``key value`` report; witnesses embed their graph and precolouring files."""
    out = ["hunt-report 1"]
    for key, value in asdict(report.params).items():
        out.append(f"param {key} {value}")
    for key in ("graphs", "tested", "extendable", "non_extendable", "unknown"):
        out.append(f"count {key} {getattr(report, key)}")
    out.append(f"count witnesses_kept {len(report.witnesses)}")
    for i, w in enumerate(report.witnesses):
        meta = w.meta
        out.append(f"witness {i}")
        out.append(f"meta delta {meta['delta']} mu {meta['mu']} palette {meta['palette']} min_distance {meta['min_distance']}")
        out.append("begin graph")
        out.append(serialize_graph(w.graph).rstrip("\n"))
        out.append("end graph")
        out.append("begin precolouring")
        body = serialize_precolouring(w.phi).rstrip("\n")
        if body:
            out.append(body)
        out.append("end precolouring")
    return "\n".join(out) + "\n"


def _param_value(text: str):
    if text == "None":
        return None
    if text in ("True", "False"):
        return text == "True"
    if text.lstrip("-").isdigit():
        return int(text)
    return text


def parse_hunt_report(text: str):
    """Rebuild a :class:`~matchext.hunt.HuntReport` from its serialized form."""
    from .hunt import HuntParams, HuntReport
    from .oracle import Instance

    params: dict = {}
    counts: dict[str, int] = {}
    witnesses = []
    lines = text.splitlines()
    if not lines or lines[0].strip() != "hunt-report 1":
        raise ParseError(1, "expected 'hunt-report 1' header")
    i = 1
    while i < len(lines):
        tok = lines[i].split()
        if not tok:
            i += 1
            continue
        if tok[0] == "param" and len(tok) == 3:
            params[tok[1]] = _param_value(tok[2])
        elif tok[0] == "count" and len(tok) == 3 and tok[2].isdigit():
            counts[tok[1]] = int(tok[2])
        elif tok[0] in ("witness", "meta"):
            pass
        elif tok == ["begin", "graph"]:
            try:
                j = lines.index("end graph", i)
                k = lines.index("begin precolouring", j)
                stop = lines.index("end precolouring", k)
            except ValueError:
                raise ParseError(i + 1, "unterminated witness block") from None
            g = parse_graph("\n".join(lines[i + 1:j]))
            phi = parse_precolouring("\n".join(lines[k + 1:stop]), g)
            witnesses.append(Instance(g, phi))
            i = stop
        else:
            raise ParseError(i + 1, f"unexpected report line {lines[i]!r}")
        i += 1
    try:
        report = HuntReport(HuntParams(**params))
    except (TypeError, ValueError) as exc:
        raise ParseError(1, f"bad report parameters: {exc}") from None
    for key in ("graphs", "tested", "extendable", "non_extendable", "unknown"):
        setattr(report, key, counts.get(key, 0))
    report.witnesses = witnesses
    if counts.get("witnesses_kept", len(witnesses)) != len(witnesses):
        raise ParseError(1, "witness count does not match the witness blocks")
    return report
