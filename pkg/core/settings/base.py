"""
Base settings for Prabhakar Numerics.
"""

from pathlib import Path
import os

from dotenv import load_dotenv

# Build paths inside the project
BASE_DIR = Path(__file__).resolve().parent.parent.parent

load_dotenv(BASE_DIR / '.env')

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-change-this-in-production')

DEBUG = os.getenv('DEBUG', 'True') == 'True'

# Application definition
INSTALLED_APPS = [
    'prabhakar_engine.apps.PrabhakarEngineConfig',
]

# The engine keeps no persistent state
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False

# Cache (holds the asymptotic coefficient tables)
CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
        'LOCATION': 'prabhakar-tables',
        'OPTIONS': {
            'MAX_ENTRIES': int(os.getenv('PRABHAKAR_CACHE_MAX_ENTRIES', '5000')),
        },
    }
}

ENGINE_ENV_PREFIX = 'PRABHAKAR_'
NON_ENGINE_KEYS = {'LOG_LEVEL', 'LOG_FILE', 'CACHE_MAX_ENTRIES'}

# Numerical engine: overrides only, defaults live in prabhakar_engine.conf.
# Values read from the environment stay strings and are parsed on access.
PRABHAKAR = {
    key[len(ENGINE_ENV_PREFIX):]: value
    for key, value in os.environ.items()
    if key.startswith(ENGINE_ENV_PREFIX) and key[len(ENGINE_ENV_PREFIX):] not in NON_ENGINE_KEYS
}

# Logging
LOG_LEVEL = os.getenv('PRABHAKAR_LOG_LEVEL', 'INFO')
LOG_FILE = os.getenv('PRABHAKAR_LOG_FILE')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
        'prabhakar_engine': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}

if LOG_FILE:
    LOGGING['handlers']['file'] = {
        'class': 'logging.FileHandler',
        'filename': LOG_FILE,
        'formatter': 'verbose',
    }
    LOGGING['loggers']['prabhakar_engine']['handlers'].append('file')
