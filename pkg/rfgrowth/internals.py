from importlib_resources import files
from pandas import DataFrame, read_csv

import rfgrowth._data


def golden_path():
    return files(rfgrowth._data).joinpath('golden.csv')


def golden_values() -> DataFrame:
    return read_csv(golden_path(), dtype=str)


def golden(quantity: str, args: str) -> int:
    values = golden_values()
    match = values[(values['quantity'] == quantity) & (values['args'] == args)]
    if len(match) == 0:
        raise KeyError(f"No golden value for {quantity}({args}).")
    return int(match['value'].iloc[0])
