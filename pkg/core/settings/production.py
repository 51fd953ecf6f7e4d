"""
Production settings for Prabhakar Numerics.
"""

from .base import *

DEBUG = False

# Tables live for a day unless configured otherwise
PRABHAKAR.setdefault('TABLE_CACHE_TIMEOUT', 86400.0)

LOGGING['loggers']['prabhakar_engine']['level'] = os.getenv('PRABHAKAR_LOG_LEVEL', 'INFO')
