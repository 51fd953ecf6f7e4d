"""
Development settings for Prabhakar Numerics.
"""

from .base import *

DEBUG = True

# Verbose engine logging in development
LOGGING['loggers']['prabhakar_engine']['level'] = os.getenv('PRABHAKAR_LOG_LEVEL', 'DEBUG')
