from rfgrowth.growth import compute_growth, get_family, k_value, witness_summary
from rfgrowth.table import GrowthRow, GrowthTable, KValue
from rfgrowth.witness import QuotientWitness
from rfgrowth.cache import ResultCache
from rfgrowth.verify import verify_suite
