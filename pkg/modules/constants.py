__version__ = '1.0.1'

# Refuse jobs with more blocks than this unless --force is given
MAX_BLOCKS: int = 10**6
