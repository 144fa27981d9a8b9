"""graph6 encoder/decoder, bit-exact with the nauty tools.

Layout: N(n) followed by the upper triangle of the adjacency matrix read
column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed six bits per
byte, each byte offset by 63.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import MalformedGraph6

HEADER = b">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("order too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, number of bytes consumed)."""
    if not data:
        raise MalformedGraph6("empty graph6 record")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedGraph6("truncated order field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise MalformedGraph6("truncated order field")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def encode_graph6(n: int, edges: Iterable[tuple[int, int]]) -> bytes:
    nbits = n * (n - 1) // 2
    bits = bytearray(nbits + (-nbits) % 6)
    for u, v in edges:
        if u > v:
            u, v = v, u
        bits[v * (v - 1) // 2 + u] = 1
    out = bytearray(_encode_n(n))
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out)


def decode_graph6(text: bytes | str) -> tuple[int, list[tuple[int, int]]]:
    """Decode one record into ``(n, edges)`` without any graph validation."""
    if isinstance(text, str):
        text = text.encode("ascii")
    data = text.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    if not data:
        raise MalformedGraph6("empty graph6 record")
    if any(b < 63 or b > 126 for b in data):
        raise MalformedGraph6("byte outside the graph6 range 63..126")
    n, k = _decode_n(data)
    body = data[k:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise MalformedGraph6(f"expected {need} data bytes for n={n}, got {len(body)}")
    edges = []
    i = 0
    for v in range(1, n):
        for u in range(v):
            byte = body[i // 6] - 63
            if (byte >> (5 - i % 6)) & 1:
                edges.append((u, v))
            i += 1
    pad = need * 6 - nbits
    if pad and (body[-1] - 63) & ((1 << pad) - 1):
        raise MalformedGraph6("non-zero padding bits")
    return n, edges


def parse_graph6(text: bytes | str):
    """Decode a graph6 record into a validated BipartiteGraph."""
    from .graph import from_edges

    n, edges = decode_graph6(text)
    if n == 0:
        raise MalformedGraph6("graph6 record with zero vertices")
    return from_edges(n, edges)


def write_graph6(g) -> bytes:
    return encode_graph6(g.n, g.edges)


def iter_graph6_lines(data: bytes) -> Iterator[tuple[int, bytes]]:
    """Yield ``(line number, record)`` for non-blank, non-comment lines."""
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(b"#"):
            continue
        yield lineno, line


def read_graph6_file(path) -> list:
    with open(path, "rb") as fh:
        return [parse_any(rec) for _, rec in iter_graph6_lines(fh.read())]


def write_graph6_file(path, graphs) -> None:
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(write_graph6(g) + b"\n")


SPARSE6_HEADER = b">>sparse6<<"


def _sparse6_k(n: int) -> int:
    k = 1
    while (1 << k) < n:
        k += 1
    return k


def encode_sparse6(n: int, edges: Iterable[tuple[int, int]]) -> bytes:
    """sparse6 record (leading ':' included, no header, no newline)."""
    k = _sparse6_k(n)

    def enc(x: int) -> list[int]:
        return [(x >> (k - 1 - i)) & 1 for i in range(k)]

    bits: list[int] = []
    cur = 0
    for v, u in sorted((max(a, b), min(a, b)) for a, b in edges):
        if v == cur:
            bits.append(0)
        elif v == cur + 1:
            cur += 1
            bits.append(1)
        else:
            cur = v
            bits.append(1)
            bits.extend(enc(v))
            bits.append(0)
        bits.extend(enc(u))
    pad = (-len(bits)) % 6
    if k < 6 and n == (1 << k) and pad >= k and cur < n - 1:
        # padding with ones would read back as an edge to n-1
        bits.append(0)
        pad = (-len(bits)) % 6
    bits.extend([1] * pad)
    out = bytearray(b":" + _encode_n(n))
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out)


def decode_sparse6(text: bytes | str) -> tuple[int, list[tuple[int, int]]]:
    if isinstance(text, str):
        text = text.encode("ascii")
    data = text.strip()
    if data.startswith(SPARSE6_HEADER):
        data = data[len(SPARSE6_HEADER):]
    if not data.startswith(b":"):
        raise MalformedGraph6("sparse6 record must start with ':'")
    data = data[1:]
    if any(b < 63 or b > 126 for b in data):
        raise MalformedGraph6("byte outside the sparse6 range 63..126")
    n, used = _decode_n(data)
    k = _sparse6_k(n)
    bits = []
    for byte in data[used:]:
        val = byte - 63
        bits.extend((val >> s) & 1 for s in range(5, -1, -1))
    edges: list[tuple[int, int]] = []
    seen = set()
    v = 0
    i = 0
    while i + 1 + k <= len(bits):
        b = bits[i]
        x = 0
        for bit in bits[i + 1:i + 1 + k]:
            x = (x << 1) | bit
        i += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
        else:
            e = (x, v)
            if e in seen:
                raise MalformedGraph6(f"repeated edge {e} in sparse6 record")
            seen.add(e)
            edges.append(e)
    return n, edges


def parse_any(text: bytes | str):
    """Decode a graph6 or sparse6 record into a validated BipartiteGraph."""
    from .graph import from_edges

    if isinstance(text, str):
        text = text.encode("ascii")
    stripped = text.strip()
    if stripped.startswith(b":") or stripped.startswith(SPARSE6_HEADER):
        n, edges = decode_sparse6(stripped)
        if n == 0:
            raise MalformedGraph6("sparse6 record with zero vertices")
        return from_edges(n, edges)
    return parse_graph6(stripped)
