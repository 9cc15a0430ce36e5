from typing import List

from pandas.api.extensions import register_dataframe_accessor

from rfgrowth.witness import QuotientWitness


@register_dataframe_accessor('growth')
class DataFrameGrowthAccessor:
    """
    Custom :class:`pandas.DataFrame` accessors. Allows users to access the group,
    generating set and witnesses behind a :class:`pandas.DataFrame` that was
    generated by ``rfgrowth``. Properties can be accessed by calling
    ``table.growth.<property>``.
    """
    def __init__(self, pandas_obj) -> None:
        self._obj = pandas_obj
        self._group_id : str = None
        self._generating_set : str = None
        self._witnesses : List[QuotientWitness] = None

    @property
    def group_id(self) -> str:
        """
        Returns the group id the rows were computed for.
        """
        return self._group_id

    @group_id.setter
    def group_id(self, group_id: str):
        self._group_id = group_id

    @property
    def generating_set(self) -> str:
        """
        Returns a description of the generating set defining the word metric.
        """
        return self._generating_set

    @generating_set.setter
    def generating_set(self, generating_set: str):
        self._generating_set = generating_set

    @property
    def witnesses(self) -> List[QuotientWitness]:
        """
        Returns the argmax witness of every row, aligned with the rows.
        """
        return self._witnesses

    @witnesses.setter
    def witnesses(self, witnesses: List[QuotientWitness]):
        self._witnesses = witnesses
