"""Arithmetic over the source alphabet.

Supports integers mod q for prime q, plus GF(4) with addition defined as
bitwise XOR on {0,1,2,3}.  Only addition and negation are provided: the
transform matrices are 0/1-valued, so multiplication is never needed.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_PRIME_KIND = "prime"
_GF4_KIND = "gf4"


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Alphabet descriptor: kind ('prime' or 'gf4') and size q."""

    kind: str
    q: int

    @staticmethod
    def prime(q: int) -> "FieldSpec":
        if not _is_prime(q):
            raise DomainError(f"q={q} is not prime")
        return FieldSpec(_PRIME_KIND, q)

    @staticmethod
    def gf4() -> "FieldSpec":
        return FieldSpec(_GF4_KIND, 4)

    @staticmethod
    def binary() -> "FieldSpec":
        return FieldSpec(_PRIME_KIND, 2)

    @staticmethod
    def for_alphabet(q: int) -> "FieldSpec":
        """Field for a size-q alphabet: prime mod-q, or GF(4) when q=4."""
        if q == 4:
            return FieldSpec.gf4()
        return FieldSpec.prime(q)

    @property
    def is_binary(self) -> bool:
        return self.q == 2

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise DomainError(f"symbol {a} out of range for q={self.q}")

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.kind == _GF4_KIND:
            return a ^ b
        return (a + b) % self.q

    def neg(self, a: int) -> int:
        self._check(a)
        if self.kind == _GF4_KIND:
            return a
        return (-a) % self.q

    # Array forms used by the transforms; inputs assumed validated.

    def add_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.kind == _GF4_KIND:
            return np.bitwise_xor(a, b)
        if self.q == 2:
            return np.bitwise_xor(a, b)
        return (a.astype(np.int64) + b) % self.q

    def sub_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.kind == _GF4_KIND or self.q == 2:
            return np.bitwise_xor(a, b)
        return (a.astype(np.int64) - b) % self.q
