"""LZW with variable-width codes.

Codes start at 9 bits and widen up to 16 bits. Once all 2**16 codes are
assigned the dictionary is frozen; there is no clear code and no reset.
Codes are packed most-significant bit first and the final byte is padded
with zeros.
"""

MIN_WIDTH = 9
MAX_WIDTH = 16


def _codes(data):
    table = {bytes([i]): i for i in range(256)}
    next_code = 256
    limit = 1 << MAX_WIDTH
    w = data[:1]
    out = []
    for i in range(1, len(data)):
        wc = data[i - len(w):i + 1]
        if wc in table:
            w = wc
            continue
        out.append(table[w])
        if next_code < limit:
            table[wc] = next_code
            next_code += 1
        w = data[i:i + 1]
    out.append(table[w])
    return out


def _widths(n_codes):
    # The encoder has assigned 255 + k entries after emitting k codes (until
    # the table is full); a code is written with enough bits to cover every
    # entry the decoder may already know.
    width = MIN_WIDTH
    for k in range(n_codes):
        known = min(256 + k, 1 << MAX_WIDTH)
        while width < MAX_WIDTH and known > (1 << width):
            width += 1
        yield width


def compress(data):
    data = bytes(data)
    if not data:
        return b""
    codes = _codes(data)
    acc = 0
    nbits = 0
    for code, width in zip(codes, _widths(len(codes))):
        acc = (acc << width) | code
        nbits += width
    pad = -nbits % 8
    return (acc << pad).to_bytes((nbits + pad) // 8, "big")


def compressed_size(data):
    data = bytes(data)
    if not data:
        return 0
    codes = _codes(data)
    return (sum(_widths(len(codes))) + 7) // 8


def decompress(payload):
    acc = int.from_bytes(payload, "big")
    remaining = len(payload) * 8
    table = {i: bytes([i]) for i in range(256)}
    next_code = 256
    limit = 1 << MAX_WIDTH
    out = bytearray()
    prev = None
    k = 0
    width = MIN_WIDTH
    while True:
        known = min(256 + k, limit)
        while width < MAX_WIDTH and known > (1 << width):
            width += 1
        if remaining < width:
            break
        remaining -= width
        code = (acc >> remaining) & ((1 << width) - 1)
        if prev is None:
            entry = table[code]
        elif code in table:
            entry = table[code]
        elif code == next_code:
            entry = prev + prev[:1]
        else:
            # Only zero padding can decode to an unknown code.
            break
        if prev is not None and next_code < limit:
            table[next_code] = prev + entry[:1]
            next_code += 1
        out += entry
        prev = entry
        k += 1
    return bytes(out)
