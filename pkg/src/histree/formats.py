"""Graph serialization: graph6 and plain edgelist text.

graph6 follows the standard encoding (short form up to 62 vertices, the
126-prefixed long form up to 258047). Edgelist is one "u v" pair per line,
0-based, with '#' comments; duplicate and reversed pairs collapse.
"""

from __future__ import annotations

from .errors import ParseError
from .graphs import Graph

_G6_HEADER = ">>graph6<<"


def _g6_encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise ParseError(f"graph6 supports at most 258047 vertices, got {n}")


def _g6_decode_n(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise ParseError("empty graph6 input", line=1)
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) < 4 or data[1] == 126:
        raise ParseError("unsupported or truncated graph6 size prefix", line=1)
    n = (data[1] - 63 << 12) | (data[2] - 63 << 6) | (data[3] - 63)
    return n, data[4:]


def encode_graph6(g: Graph) -> str:
    chunks = [_g6_encode_n(g.n)]
    acc = 0
    nbits = 0
    body = bytearray()
    for v in range(1, g.n):
        col = g.nbr[v]
        for u in range(v):
            acc = acc << 1 | (col >> u & 1)
            nbits += 1
            if nbits == 6:
                body.append(acc + 63)
                acc = nbits = 0
    if nbits:
        body.append((acc << (6 - nbits)) + 63)
    return (chunks[0] + bytes(body)).decode("ascii")


def decode_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    line = text.strip()
    if line.startswith(_G6_HEADER):
        line = line[len(_G6_HEADER):]
    if "\n" in line:
        line = line.splitlines()[0].strip()
    data = line.encode("ascii", errors="replace")
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise ParseError(f"invalid graph6 byte {b!r} at offset {i}", line=1)
    n, rest = _g6_decode_n(data)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(rest) != need:
        raise ParseError(
            f"graph6 body has {len(rest)} sextets, expected {need} for n={n}", line=1
        )
    edges = []
    bit = 0
    for v in range(1, n):
        for u in range(v):
            byte = rest[bit // 6] - 63
            if byte >> (5 - bit % 6) & 1:
                edges.append((u, v))
            bit += 1
    return Graph.from_edges(n, edges)


def encode_edgelist(g: Graph) -> str:
    lines = [f"# n={g.n}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def decode_edgelist(text: str | bytes, n: int | None = None) -> Graph:
    """Parse "u v" lines; n defaults to one past the largest vertex seen.

    A "# n=K" comment pins the vertex count, which permits isolated trailing
    vertices and makes range errors detectable.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    edges = []
    max_seen = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)
        if len(line) == 2 and n is None:
            comment = line[1].strip().replace(" ", "")
            if comment.startswith("n="):
                try:
                    n = int(comment[2:])
                except ValueError:
                    raise ParseError("malformed n= header", line=lineno)
        stripped = line[0].strip()
        if not stripped:
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {stripped!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex id in {stripped!r}", line=lineno)
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex id in {stripped!r}", line=lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line=lineno)
        if n is not None and (u >= n or v >= n):
            raise ParseError(f"vertex id {max(u, v)} out of range 0..{n - 1}", line=lineno)
        edges.append((u, v))
        max_seen = max(max_seen, u, v)
    if n is None:
        n = max_seen + 1
    return Graph.from_edges(n, edges)


def parse_graph(text: str | bytes, fmt: str) -> Graph:
    if fmt == "graph6":
        return decode_graph6(text)
    if fmt == "edgelist":
        return decode_edgelist(text)
    raise ParseError(f"unknown format {fmt!r}")


def encode_graph(g: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return encode_graph6(g)
    if fmt == "edgelist":
        return encode_edgelist(g)
    raise ParseError(f"unknown format {fmt!r}")


def sniff_format(path: str, override: str | None = None) -> str:
    """Format from an explicit override or the file extension (.g6 / .el)."""
    if override:
        return override
    if path.endswith(".g6"):
        return "graph6"
    if path.endswith(".el"):
        return "edgelist"
    raise ParseError(f"cannot infer format from {path!r}; pass --format")
