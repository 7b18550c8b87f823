"""Packed integer encodings for vertex pairs and triples.

Vertex ids are limited to 21 bits (2_097_152 vertices), so a sorted
triple fits in a single 63-bit integer and set membership tests stay
allocation-free.
"""

MAX_VERTICES = 1 << 21

_SHIFT = 21
_MASK = (1 << _SHIFT) - 1


def pack2(u: int, v: int) -> int:
    """Pack an unordered pair; order of arguments does not matter."""
    if u > v:
        u, v = v, u
    return (u << _SHIFT) | v


def unpack2(code: int) -> tuple[int, int]:
    return code >> _SHIFT, code & _MASK


def pack3(a: int, b: int, c: int) -> int:
    """Pack an unordered triple; order of arguments does not matter."""
    if a > b:
        a, b = b, a
    if b > c:
        b, c = c, b
        if a > b:
            a, b = b, a
    return (a << (2 * _SHIFT)) | (b << _SHIFT) | c


def unpack3(code: int) -> tuple[int, int, int]:
    return code >> (2 * _SHIFT), (code >> _SHIFT) & _MASK, code & _MASK


def pack_pair_witness(u: int, v: int, w: int) -> int:
    """Pack a pair-plus-witness edge; the pair is unordered, w is kept last."""
    if u > v:
        u, v = v, u
    return (u << (2 * _SHIFT)) | (v << _SHIFT) | w
