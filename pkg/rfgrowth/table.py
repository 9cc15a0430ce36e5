import json
from typing import Callable, Dict, List, NamedTuple, Optional

from pandas import DataFrame

from rfgrowth.constants import CSV_COLUMNS, TOOL_VERSION
from rfgrowth.witness import QuotientWitness
import rfgrowth.growth_accessors


class TableError(Exception):
    ...


class GrowthRow(NamedTuple):
    """
    One row of a growth table. ``F`` is the reported value of F(n); when the
    per-element values are only bracketed, ``F_lower ≤ F(n) ≤ F`` and the
    ``method`` says so.
    """
    n: int
    F: int
    F_lower: int
    argmax: str
    word_length: int
    witness: Optional[QuotientWitness]
    method: str

    @property
    def exact(self) -> bool:
        return self.F == self.F_lower and not self.method.endswith('-lower')


class GrowthTable:
    """
    The residual finiteness growth function of a group over word-metric balls:
    ``n ↦ (F(n), argmax, witness)``.

    Parameters
    ==========
    group_id : :obj:`str`
        The group the rows belong to.
    generating_set : :obj:`str`
        The generating set defining the word metric.
    method : :obj:`str`
        The method the rows were computed with.
    rows : :obj:`list` of :class:`.GrowthRow` = None
        Rows sorted by ``n`` with nondecreasing ``F``.
    """
    def __init__(self, group_id: str, generating_set: str, method: str, rows: List[GrowthRow] = None) -> None:
        self.group_id = group_id
        self.generating_set = generating_set
        self.method = method
        self.rows: List[GrowthRow] = []
        for row in rows or []:
            self.append(row)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i) -> GrowthRow:
        return self.rows[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrowthTable):
            return NotImplemented
        return self.to_json() == other.to_json()

    def __repr__(self) -> str:
        table_str = f'GrowthTable for {self.group_id} over {self.generating_set} ({self.method}), {len(self)} rows:\n'
        rows = self.rows if len(self) <= 6 else self.rows[:2] + self.rows[-2:]
        for i, row in enumerate(rows):
            if len(self) > 6 and i == 2:
                table_str += '  ...\n'
            table_str += f'  n={row.n}: F={row.F} at {row.argmax} ({row.method})\n'
        return table_str

    def append(self, row: GrowthRow):
        if row.F_lower > row.F:
            raise TableError(f'F_lower({row.n})={row.F_lower} exceeds F({row.n})={row.F}.')
        if self.rows:
            last = self.rows[-1]
            if row.n <= last.n:
                raise TableError(f'Rows must be sorted by n; got n={row.n} after n={last.n}.')
            if row.F_lower < last.F_lower or (row.exact and last.exact and row.F < last.F):
                raise TableError(f'F must be nondecreasing; got F({row.n})={row.F} after F({last.n})={last.F}.')
        self.rows.append(row)

    def to_list(self) -> List[GrowthRow]:
        return list(self.rows)

    def _records(self) -> List[dict]:
        return [
            {
                'n': row.n,
                'F': row.F,
                'argmax': row.argmax,
                'word_length': row.word_length,
                'witness_kind': row.witness.kind if row.witness else '',
                'witness_order': row.witness.order if row.witness else '',
                'method': row.method
            }
            for row in self.rows
        ]

    def to_df(self) -> DataFrame:
        """
        Converts the :class:`.GrowthTable` into a :class:`pandas.DataFrame` with
        the CSV columns. The group id, generating set and witnesses are available
        through ``df.growth``.
        """
        df = DataFrame(self._records(), columns=CSV_COLUMNS)
        df.growth.group_id = self.group_id
        df.growth.generating_set = self.generating_set
        df.growth.witnesses = [row.witness for row in self.rows]
        return df

    def to_csv(self, path: str = None) -> str:
        """
        Writes the table as CSV with the header
        ``n,F,argmax,word_length,witness_kind,witness_order,method``. Returns the
        CSV text and also writes it to ``path`` when given.
        """
        text = self.to_df().to_csv(index=False, lineterminator='\n')
        if path is not None:
            with open(path, 'w', newline='') as f:
                f.write(text)
        return text

    def to_dict(self) -> dict:
        return {
            'group_id': self.group_id,
            'generating_set': self.generating_set,
            'method': self.method,
            'tool_version': TOOL_VERSION,
            'rows': [
                {
                    'n': row.n,
                    'F': str(row.F),
                    'F_lower': str(row.F_lower),
                    'argmax': row.argmax,
                    'word_length': row.word_length,
                    'witness': row.witness.encode() if row.witness else None,
                    'method': row.method
                }
                for row in self.rows
            ]
        }

    def to_json(self, path: str = None) -> str:
        text = json.dumps(self.to_dict(), indent=2)
        if path is not None:
            with open(path, 'w') as f:
                f.write(text + '\n')
        return text


class KValue(NamedTuple):
    """
    ``k`` of one element, bracketed as ``lower ≤ k ≤ upper``. ``upper`` is
    ``None`` when no detecting quotient is known, ``witness`` is the quotient
    realizing ``upper``.
    """
    upper: Optional[int]
    lower: int
    witness: Optional[QuotientWitness]

    @property
    def exact(self) -> bool:
        return self.upper == self.lower


def assemble_growth(group_id: str, generating_set: str, method: str, spheres: Dict[int, list],
                    k_of: Callable[[object], KValue], encode: Callable[[object], str],
                    length_of: Callable[[object], int]) -> GrowthTable:
    """
    Builds a :class:`.GrowthTable` from word-metric spheres. The row for ``n``
    maximizes over every nontrivial element of length at most ``n``, the first
    maximizer in sphere order winning ties.

    Parameters
    ==========
    spheres : :obj:`dict`
        Radius to elements of that length, in breadth-first order. Radius 0
        holds the identity and is skipped.
    k_of : :obj:`Callable`
        Returns the :class:`.KValue` of an element.
    encode : :obj:`Callable`
        Returns the canonical encoding of an element for the ``argmax`` column.
    length_of : :obj:`Callable`
        Returns the word length of an element.
    """
    table = GrowthTable(group_id, generating_set, method)
    by_upper = by_lower = None
    unknown = False
    for n in range(1, max(spheres, default=0) + 1):
        for element in spheres.get(n, []):
            value = k_of(element)
            if by_lower is None or value.lower > by_lower[0].lower:
                by_lower = (value, element)
            if value.upper is None:
                unknown = True
            elif by_upper is None or value.upper > by_upper[0].upper:
                by_upper = (value, element)
        if by_lower is None:
            continue
        lower = by_lower[0].lower
        if unknown:
            (value, element), F, suffix = by_lower, lower, '-lower'
        else:
            (value, element), F = by_upper, by_upper[0].upper
            suffix = '-bracket' if lower < F else ''
        table.append(GrowthRow(n=n, F=F, F_lower=lower, argmax=encode(element), word_length=length_of(element),
                               witness=value.witness if value.upper is not None else None, method=method + suffix))
    return table
