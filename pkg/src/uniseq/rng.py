"""Deterministic counter-based random streams.

Every draw is a pure function of a 64-bit stream seed and a draw index:
``unit(i)`` pushes ``seed + (i+1)*DRAW_GAMMA`` through the splitmix64
finalizer and maps the result to (0, 1].  Substreams ("children") derive
fresh seeds the same way with a second increment.  Because nothing is
consumed, a sampler may skip draws (e.g. abort a rejected trial early)
without desynchronising later trials, and loop-based and vectorised
backends can generate bit-identical streams.

Draw-index layout used by the samplers:

* index 0                       -- peak selection
* index k                       -- left multiplicity of part k
* index RIGHT_DRAW_OFFSET + k   -- right multiplicity of part k

Worker/chunk seeds are derived from the master seed by the same splitmix
step (``RngStream(seed).child(c)``), so parallel chunks merge to a
deterministic stream ordered by chunk index.
"""

MASK64 = (1 << 64) - 1

DRAW_GAMMA = 0x9E3779B97F4A7C15
STREAM_GAMMA = 0xD1B54A32D192ED03

# Must exceed any peak-weight table length (those are capped at 10**6).
RIGHT_DRAW_OFFSET = 1 << 20


def mix64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64


def bits_to_unit(bits: int) -> float:
    """Map 64 random bits to a double in (0, 1]."""
    return ((bits >> 11) + 1) * 2.0**-53


class RngStream:
    """A seeded stream with indexed access and a sequential cursor.

    Identical seed implies an identical stream of values, regardless of
    how the values are accessed.
    """

    __slots__ = ("seed", "_cursor")

    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64
        self._cursor = 0

    def u64(self, index: int) -> int:
        return mix64(self.seed + (index + 1) * DRAW_GAMMA)

    def unit(self, index: int) -> float:
        """The index-th uniform draw in (0, 1]."""
        return bits_to_unit(self.u64(index))

    def next_unit(self) -> float:
        u = self.unit(self._cursor)
        self._cursor += 1
        return u

    def child(self, index: int) -> "RngStream":
        """Derive an independent substream (trial, chunk or worker)."""
        return RngStream(mix64(self.seed + (index + 1) * STREAM_GAMMA))

    def __repr__(self):
        return f"RngStream(seed=0x{self.seed:016x})"
