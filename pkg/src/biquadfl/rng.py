"""Deterministic PRNG for seeded config suites.

splitmix64, verbatim from the reference implementation (Vigna).  We do not
use random.Random because its stream is not pinned across Python versions,
and byte-identical reports for identical (config, seed) is a hard contract.

Stream derivation contract (documented so reports are reproducible):

* ``next_u64()`` advances the 64-bit state by the splitmix64 increment and
  returns the mixed output.
* ``below(n)``   = next_u64() % n  (n small here, modulo bias is irrelevant
  for test-config generation and keeping the stream simple beats it).
* ``randint(a, b)`` = a + below(b - a + 1), inclusive ends.
* ``choice(seq)`` = seq[below(len(seq))].
* ``fork(k)``    = child generator seeded with next_u64() XOR k, so config
  k's stream does not depend on how much randomness config k-1 consumed.
"""

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n

    def randint(self, a: int, b: int) -> int:
        return a + self.below(b - a + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def fork(self, k: int) -> "SplitMix64":
        return SplitMix64(self.next_u64() ^ (k & _MASK))
