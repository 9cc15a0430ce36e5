import logging
import os
import re
from pathlib import Path
from threading import Lock
from typing import Dict, Optional, Tuple

from pandas import read_csv
from pandas.errors import EmptyDataError

from rfgrowth.constants import CACHE_ENV, DEFAULT_CACHE_DIR, TOOL_VERSION
from rfgrowth.table import KValue
from rfgrowth.witness import QuotientWitness, WitnessError

logger = logging.getLogger(__name__)

COLUMNS = ['key', 'k', 'witness', 'version']


class CacheError(Exception):
    def __init__(self, directory: Path, reason: str) -> None:
        super().__init__(f'The cache directory {directory} is unusable: {reason}')
        self.directory = directory


def _encode_k(value: KValue) -> str:
    return str(value.upper) if value.exact else f'{value.lower}:{value.upper}'


def _decode_k(text: str) -> Tuple[int, int]:
    if ':' in text:
        lower, upper = text.split(':')
        return int(lower), int(upper)
    return int(text), int(text)


def _record_key(key: str, q_max: Optional[int]) -> str:
    return key if q_max is None else f'{key}@q{q_max}'


class ResultCache:
    """
    Per-element ``k`` values on disk, one tab-separated file per group and
    variant with records ``key, k, witness, version``. ``k`` is written as
    ``lower:upper`` for bracketed values. Values found by quotient search carry
    the largest degree searched in the key, as ``key@q8``, and are only served
    to requests with the same ``q_max``, so cached and uncached runs agree.

    Every hit is re-verified against its witness before it is returned;
    records written by another tool version are ignored. Reads may run
    concurrently, writes are serialized.

    Parameters
    ==========
    directory : :obj:`str` = None
        Defaults to ``$RFG_CACHE``, then to ``~/.cache/rfgrowth``.
    """
    def __init__(self, directory: str = None) -> None:
        self.directory = Path(directory or os.environ.get(CACHE_ENV) or DEFAULT_CACHE_DIR)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise CacheError(self.directory, str(e)) from e
        self._tables: Dict[str, Dict[str, Tuple[str, str]]] = {}
        self._lock = Lock()

    def __repr__(self) -> str:
        return f'ResultCache at {self.directory}'

    def path(self, group_id: str, variant: str) -> Path:
        name = re.sub(r'[^A-Za-z0-9]+', '_', group_id).strip('_')
        return self.directory / f'{name}.{variant}.tsv'

    def _load(self, group_id: str, variant: str) -> Dict[str, Tuple[str, str]]:
        path = self.path(group_id, variant)
        with self._lock:
            if str(path) in self._tables:
                return self._tables[str(path)]
            records = {}
            if path.exists():
                try:
                    df = read_csv(path, sep='\t', header=None, names=COLUMNS, dtype=str, keep_default_na=False)
                except EmptyDataError:
                    df = None
                except OSError as e:
                    raise CacheError(self.directory, str(e)) from e
                if df is not None:
                    stale = df[df['version'] != TOOL_VERSION]
                    if len(stale):
                        logger.warning(f'{path.name}: ignoring {len(stale)} records from other tool versions')
                    for row in df[df['version'] == TOOL_VERSION].itertuples(index=False):
                        records[row.key] = (row.k, row.witness)
            self._tables[str(path)] = records
            return records

    def get(self, family, element, variant: str, q_max: Optional[int] = None) -> Optional[KValue]:
        """
        The cached value of ``element`` searched to ``q_max``, or ``None`` on a
        miss or when the stored witness no longer detects the element.
        """
        records = self._load(family.group_id, variant)
        key = _record_key(family.key(element), q_max)
        record = records.get(key)
        if record is None:
            return None
        k_text, witness_text = record
        try:
            lower, upper = _decode_k(k_text)
            witness = QuotientWitness.decode(witness_text)
        except (ValueError, WitnessError):
            logger.warning(f'{family.group_id}: unreadable cache record for {key}')
            with self._lock:
                records.pop(key, None)
            return None
        if witness.order != upper or not family.check_witness(element, witness, variant):
            logger.warning(f'{family.group_id}: cached witness for {key} failed re-verification')
            with self._lock:
                records.pop(key, None)
            return None
        return KValue(upper, lower, witness)

    def put(self, family, element, variant: str, value: KValue, q_max: Optional[int] = None):
        """
        Appends a record. Values without a witness are not stored.
        """
        if value.upper is None or value.witness is None:
            return
        records = self._load(family.group_id, variant)
        key = _record_key(family.key(element), q_max)
        k_text, witness_text = _encode_k(value), value.witness.encode()
        with self._lock:
            if key in records:
                return
            records[key] = (k_text, witness_text)
            with open(self.path(family.group_id, variant), 'a', encoding='utf-8') as f:
                f.write('\t'.join([key, k_text, witness_text, TOOL_VERSION]) + '\n')

    def clear(self):
        """
        Deletes every cache file in the directory.
        """
        with self._lock:
            for path in self.directory.glob('*.tsv'):
                path.unlink()
            self._tables.clear()
