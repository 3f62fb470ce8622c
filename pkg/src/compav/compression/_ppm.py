"""Order-bounded PPM text compressor with a binary arithmetic coder.

The model is PPM with escape method D (symbol frequency ``2c - 1``, escape
frequency equal to the number of distinct symbols), full exclusion while
escaping and update exclusion when learning. Contexts that were never seen
are skipped silently since the decoder can tell they do not exist. When the
estimated model size exceeds the memory budget the model restarts from
scratch, the same policy PPMd uses.

The output stream carries no length header or end-of-stream symbol; the
container is expected to store the original size. Because of that the
coder can be flushed at any prefix boundary, which ``prefix_lengths``
exploits to get ``C(x)`` and ``C(xy)`` from a single pass over ``xy``.
"""

DEFAULT_ORDER = 6
DEFAULT_MEMORY = 16 << 20

# Approximate cost of one context node or one symbol entry, mirroring the
# 12-byte allocation units of PPMd.
_UNIT_BYTES = 12
# Per-symbol count cap. Even a full 256-symbol context then stays far below
# the coder's minimum range of 2**30.
_MAX_COUNT = 1 << 15

_STATE_BITS = 32
_FULL = (1 << _STATE_BITS) - 1
_TOP = 1 << (_STATE_BITS - 1)
_SECOND = _TOP >> 1


class _Model:
    __slots__ = ("order", "budget", "tables", "used")

    def __init__(self, order, memory):
        self.order = order
        self.budget = memory // _UNIT_BYTES
        self.tables = [{} for _ in range(order + 1)]
        self.used = 0

    def update(self, data, i, sym, found_order):
        """Learn ``sym`` at position ``i`` for every order from ``found_order`` up."""
        tables = self.tables
        top = min(self.order, i)
        for k in range(max(found_order, 0), top + 1):
            ctx = data[i - k:i]
            stats = tables[k].get(ctx)
            if stats is None:
                tables[k][ctx] = {sym: 1}
                self.used += 2
                continue
            c = stats.get(sym)
            if c is None:
                stats[sym] = 1
                self.used += 1
            else:
                stats[sym] = c + 1
                if c + 1 > _MAX_COUNT:
                    for s in stats:
                        stats[s] = (stats[s] + 1) >> 1
        if self.used > self.budget:
            self.tables = [{} for _ in range(self.order + 1)]
            self.used = 0


def _run(data, order, memory, boundaries=()):
    """Encode ``data``; return the emitted bits and the flushed bit count at each boundary.

    The model and coder are inlined here because this loop dominates the
    cost of every PPM score.
    """
    model = _Model(order, memory)
    bits = []
    emit = bits.append
    pending = 0
    low = 0
    high = _FULL
    marks = {}
    wanted = set(boundaries)

    def narrow(lo, hi, total):
        nonlocal low, high, pending
        span = high - low + 1
        high = low + hi * span // total - 1
        low = low + lo * span // total
        while True:
            if high < _TOP:
                emit(0)
                if pending:
                    bits.extend([1] * pending)
                    pending = 0
            elif low >= _TOP:
                emit(1)
                if pending:
                    bits.extend([0] * pending)
                    pending = 0
                low -= _TOP
                high -= _TOP
            elif low >= _SECOND and high < _TOP + _SECOND:
                pending += 1
                low -= _SECOND
                high -= _SECOND
            else:
                return
            low <<= 1
            high = (high << 1) | 1

    tables = model.tables
    used = 0
    budget = model.budget
    for i in range(len(data)):
        if i in wanted:
            marks[i] = len(bits) + 1
        sym = data[i]
        excluded = None
        visited = []
        for k in range(order if i > order else i, -1, -1):
            ctx = data[i - k:i]
            stats = tables[k].get(ctx)
            visited.append((k, ctx, stats))
            if stats is None:
                continue
            total = 0
            distinct = 0
            sym_low = -1
            sym_freq = 0
            if excluded is None:
                for s, c in stats.items():
                    if s == sym:
                        sym_low = total
                        sym_freq = 2 * c - 1
                    total += 2 * c - 1
                distinct = len(stats)
            else:
                for s, c in stats.items():
                    if s in excluded:
                        continue
                    if s == sym:
                        sym_low = total
                        sym_freq = 2 * c - 1
                    total += 2 * c - 1
                    distinct += 1
                if distinct == 0:
                    continue
            if sym_low >= 0:
                narrow(sym_low, sym_low + sym_freq, total + distinct)
                break
            narrow(total, total + distinct, total + distinct)
            if excluded is None:
                excluded = set(stats)
            else:
                excluded.update(stats)
        else:
            if excluded is None:
                narrow(sym, sym + 1, 256)
            else:
                below = sum(1 for s in excluded if s < sym)
                narrow(sym - below, sym - below + 1, 256 - len(excluded))

        # Update exclusion: learn at the order that coded the symbol and above,
        # which are exactly the contexts visited on the way down.
        for k, ctx, stats in visited:
            if stats is None:
                tables[k][ctx] = {sym: 1}
                used += 2
                continue
            c = stats.get(sym)
            if c is None:
                stats[sym] = 1
                used += 1
            elif c < _MAX_COUNT:
                stats[sym] = c + 1
            else:
                stats[sym] = c + 1
                for s in stats:
                    stats[s] = (stats[s] + 1) >> 1
        if used > budget:
            tables = model.tables = [{} for _ in range(order + 1)]
            used = 0
    return bits, marks


def _stream(bits):
    # Terminating with a single 1 bit selects the midpoint of the final
    # interval, which the invariant low < 1/2 <= high keeps inside it;
    # pending underflow bits would be zeros and are implied by the padding.
    bits = bits + [1]
    bits.extend([0] * (-len(bits) % 8))
    return int("".join(map(str, bits)), 2).to_bytes(len(bits) // 8, "big")


def compress(data, order=DEFAULT_ORDER, memory=DEFAULT_MEMORY):
    """Return the raw arithmetic-coded stream for ``data``."""
    bits, _ = _run(bytes(data), order, memory)
    return _stream(bits)


def compressed_size(data, order=DEFAULT_ORDER, memory=DEFAULT_MEMORY):
    bits, _ = _run(bytes(data), order, memory)
    return (len(bits) + 1 + 7) // 8


def prefix_lengths(data, cut, order=DEFAULT_ORDER, memory=DEFAULT_MEMORY):
    """Compressed sizes of ``data[:cut]`` and of ``data`` from one pass.

    The model is causal and the stream has no header, so flushing the coder
    at ``cut`` yields exactly the stream a standalone run on the prefix
    would produce.
    """
    data = bytes(data)
    bits, marks = _run(data, order, memory, boundaries=(cut,))
    total = (len(bits) + 1 + 7) // 8
    if cut >= len(data):
        return total, total
    return (marks[cut] + 7) // 8, total


def decompress(payload, size, order=DEFAULT_ORDER, memory=DEFAULT_MEMORY):
    """Invert ``compress`` given the original ``size``. Used for self-checks."""
    bits = []
    for byte in payload:
        for shift in range(7, -1, -1):
            bits.append((byte >> shift) & 1)
    pos = 0

    def next_bit():
        nonlocal pos
        b = bits[pos] if pos < len(bits) else 0
        pos += 1
        return b

    low, high, code = 0, _FULL, 0
    for _ in range(_STATE_BITS):
        code = (code << 1) | next_bit()

    def narrow(lo, hi, total):
        nonlocal low, high, code
        span = high - low + 1
        high = low + hi * span // total - 1
        low = low + lo * span // total
        while True:
            if high < _TOP:
                pass
            elif low >= _TOP:
                low -= _TOP
                high -= _TOP
                code -= _TOP
            elif low >= _SECOND and high < _TOP + _SECOND:
                low -= _SECOND
                high -= _SECOND
                code -= _SECOND
            else:
                break
            low <<= 1
            high = (high << 1) | 1
            code = (code << 1) | next_bit()

    def target(total):
        span = high - low + 1
        return ((code - low + 1) * total - 1) // span

    model = _Model(order, memory)
    out = bytearray()
    for i in range(size):
        excluded = set()
        sym = None
        found = -1
        for k in range(min(order, i), -1, -1):
            stats = model.tables[k].get(bytes(out[i - k:i]))
            if stats is None:
                continue
            entries = [(s, 2 * c - 1) for s, c in stats.items() if s not in excluded]
            if not entries:
                continue
            total = sum(f for _, f in entries)
            grand = total + len(entries)
            t = target(grand)
            if t >= total:
                narrow(total, grand, grand)
                excluded.update(stats)
                continue
            acc = 0
            for s, f in entries:
                if t < acc + f:
                    narrow(acc, acc + f, grand)
                    sym = s
                    break
                acc += f
            found = k
            break
        if sym is None:
            alphabet = [s for s in range(256) if s not in excluded]
            t = target(len(alphabet))
            narrow(t, t + 1, len(alphabet))
            sym = alphabet[t]
        out.append(sym)
        model.update(bytes(out), i, sym, found)
    return bytes(out)
