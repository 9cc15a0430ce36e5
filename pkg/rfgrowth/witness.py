from dataclasses import dataclass
from typing import Tuple

KINDS = ('symmetric-image', 'congruence-mod-m', 'tree-level', 'residue-field')


class WitnessError(ValueError):
    ...


@dataclass(frozen=True)
class QuotientWitness:
    """
    A finite quotient that detects an element.

    Parameters
    ==========
    order : :obj:`int`
        The order of the quotient.
    kind : :obj:`str`
        One of ``symmetric-image``, ``congruence-mod-m``, ``tree-level`` or
        ``residue-field``.
    data : :obj:`tuple`
        Kind-specific description. ``symmetric-image``: the generator images as
        0-based permutation tuples. The other kinds: a tag followed by integers,
        for example ``('Z', 4)`` for ℤ/4, ``('SL', 2, 11)`` for SL₂(ℤ/11),
        ``('UT', 3, 2)`` for U₃(ℤ/2), ``('grig', 3)`` for the level-3 quotient
        and ``('quad', D, p, e, r)`` for O/𝔭ᵉ with 𝔭 above ``p`` (``r`` the
        residue of ω, or -1 when 𝔭 is inert).
    """
    order: int
    kind: str
    data: Tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise WitnessError(f"Unknown witness kind '{self.kind}'.")
        if self.order < 2:
            raise WitnessError(f'A detecting quotient has order at least 2, got {self.order}.')

    def __repr__(self) -> str:
        if self.kind == 'symmetric-image':
            images = ', '.join(str(tuple(i + 1 for i in p)) for p in self.data)
            return f'QuotientWitness(order={self.order}, symmetric-image on {len(self.data[0])} points: {images})'
        return f'QuotientWitness(order={self.order}, {self.kind}: {self.data})'

    def encode(self) -> str:
        """
        Canonical single-line encoding, ``kind;order;payload``. Symmetric images
        are written as ``/``-separated permutations with ``,``-separated
        0-based points; the other payloads as ``,``-separated fields.
        """
        if self.kind == 'symmetric-image':
            payload = '/'.join(','.join(str(i) for i in p) for p in self.data)
        else:
            payload = ','.join(str(x) for x in self.data)
        return f'{self.kind};{self.order};{payload}'

    @classmethod
    def decode(cls, text: str) -> 'QuotientWitness':
        try:
            kind, order, payload = text.strip().split(';')
            if kind == 'symmetric-image':
                data = tuple(tuple(int(i) for i in p.split(',')) for p in payload.split('/'))
            else:
                fields = payload.split(',')
                data = (fields[0],) + tuple(int(x) for x in fields[1:])
            return cls(order=int(order), kind=kind, data=data)
        except (ValueError, IndexError) as e:
            raise WitnessError(f"Could not decode the witness '{text}'.") from e
