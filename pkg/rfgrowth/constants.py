from os import path

TOOL_VERSION = '0.1.0'

# quotient search
DEFAULT_Q_MAX = 8
DEFAULT_ORDER_CAP = 40320

# ball enumeration
DEFAULT_STATE_CAP = 2_000_000
RADIUS_CAPS = {
    'sl(2)': 11,
    'sl(3)': 6,
    'heis-exact': 8,
    'grig': 12,
}

# quadratic rings
MIN_NORM_BOUND = 100

# grigorchuk group
GRIG_DEPTH_CAP = 16
GRIG_FINGERPRINT_LEVEL = 8
GRIG_BFS_MAX_LEVEL = 5

# harness
GROUP_IDS = ['z', 'zd(d)', 'quad(D)', 'free(2)', 'heis', 'unitri(d)', 'sl(2)', 'sl(3)', 'grig']
VARIANTS = ['any', 'nilpotent', 'congruence']
CSV_COLUMNS = ['n', 'F', 'argmax', 'word_length', 'witness_kind', 'witness_order', 'method']

CACHE_ENV = 'RFG_CACHE'
DEFAULT_CACHE_DIR = path.join(path.expanduser('~'), '.cache', 'rfgrowth')
