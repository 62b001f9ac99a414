"""graph6 encoder/decoder.

Format: one printable ASCII line per graph.  The order is one byte
chr(n + 63) for n <= 62, or chr(126) followed by three sextet bytes for
63 <= n <= 258047.  The upper triangle of the adjacency matrix follows in
column order (pairs (0,1), (0,2), (1,2), (0,3), ...), packed six bits per
byte, most significant bit first, zero padded, each byte offset by 63.

The decoder is strict: it rejects out-of-range bytes, wrong body length,
nonzero padding bits, and the 8-byte order form (orders beyond the cap of
this library).  Strictness keeps encoded strings byte-stable, which the
store relies on for canonical keys.
"""

from __future__ import annotations

from .graph import MAX_ORDER, Graph

HEADER = b">>graph6<<"


class ParseError(ValueError):
    """Malformed graph6 input."""


def encode_graph6(g: Graph) -> bytes:
    n = g.n
    if n <= 62:
        head = bytes([n + 63])
    elif n <= 258047:
        head = bytes([126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    else:
        raise ParseError(f"order {n} exceeds the graph6 long form")
    rows = [0] * n
    for u in range(n):
        acc = 0
        for v in g.adj[u]:
            acc |= 1 << v
        rows[u] = acc
    out = bytearray(head)
    buf = 0
    fill = 0
    for v in range(1, n):
        rv = rows[v]
        for u in range(v):
            buf = (buf << 1) | ((rv >> u) & 1)
            fill += 1
            if fill == 6:
                out.append(buf + 63)
                buf = 0
                fill = 0
    if fill:
        out.append((buf << (6 - fill)) + 63)
    return bytes(out)


def decode_graph6(data) -> Graph:
    """Parse one graph6 line into a Graph.  Raises ParseError on bad input."""
    if isinstance(data, str):
        try:
            data = data.encode("ascii")
        except UnicodeEncodeError as exc:
            raise ParseError("graph6 data must be ASCII") from exc
    if not isinstance(data, (bytes, bytearray)):
        raise ParseError(f"expected bytes or str, got {type(data).__name__}")
    data = bytes(data).strip()
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    if not data:
        raise ParseError("empty graph6 input")
    if data[0] == 58:
        raise ParseError("sparse6 input is not supported")
    pos = 0
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise ParseError("8-byte order form (n >= 258048) is not supported")
        if len(data) < 4:
            raise ParseError("truncated long-form order")
        n = 0
        for b in data[1:4]:
            if not 63 <= b <= 126:
                raise ParseError(f"order byte {b} out of range 63..126")
            n = (n << 6) | (b - 63)
        pos = 4
    else:
        b = data[0]
        if not 63 <= b <= 125:
            raise ParseError(f"order byte {b} out of range 63..125")
        n = b - 63
        pos = 1
    if n == 0:
        raise ParseError("order 0 graphs are not supported")
    if n > MAX_ORDER:
        raise ParseError(f"order {n} exceeds the cap {MAX_ORDER}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != nbytes:
        raise ParseError(
            f"body length {len(body)} does not match order {n} "
            f"(expected {nbytes} bytes)"
        )
    edges = []
    bit = 0
    u = 0
    v = 1
    for raw in body:
        if not 63 <= raw <= 126:
            raise ParseError(f"body byte {raw} out of range 63..126")
        group = raw - 63
        for shift in (5, 4, 3, 2, 1, 0):
            if bit == nbits:
                if (group >> shift) & 1:
                    raise ParseError("nonzero padding bits")
                continue
            if (group >> shift) & 1:
                edges.append((u, v))
            bit += 1
            u += 1
            if u == v:
                u = 0
                v += 1
    return Graph(n, edges)
