"""
Configuration for GrapeQI - quasi-isometry toolkit for graph braid groups
"""
import os
from dotenv import load_dotenv

load_dotenv()


def _env_int(name, default):
    return int(os.getenv(name, default))


class Config:
    """Production-ready configuration"""

    DEBUG = os.getenv('GRAPEQI_DEBUG', 'False').lower() == 'true'

    # Logging
    LOG_LEVEL = os.getenv('GRAPEQI_LOG_LEVEL', 'WARNING').upper()
    LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

    # Size guards for brute-force constructions
    UD2_MAX_VERTICES = _env_int('GRAPEQI_UD2_MAX_VERTICES', 40)
    UDN_MAX_VERTICES = _env_int('GRAPEQI_UDN_MAX_VERTICES', 14)
    PRODUCTS_MAX_EDGES = _env_int('GRAPEQI_PRODUCTS_MAX_EDGES', 16)
    RI_MAX_PATH_LENGTH = _env_int('GRAPEQI_RI_MAX_PATH_LENGTH', 24)
    DYNKIN_MAX_STEM_VERTICES = _env_int('GRAPEQI_DYNKIN_MAX_STEM_VERTICES', 64)
    MAX_CELLS = _env_int('GRAPEQI_MAX_CELLS', 200000)

    # Multiplier applied to every guard when --guard-override is given
    GUARD_OVERRIDE_FACTOR = _env_int('GRAPEQI_GUARD_OVERRIDE_FACTOR', 4)

    # Random pools (property checks, verification sweep)
    SEED = _env_int('GRAPEQI_SEED', 20240611)


class ProductionConfig(Config):
    """Production-specific configuration"""
    DEBUG = False


class DevelopmentConfig(Config):
    """Development-specific configuration"""
    DEBUG = True
    LOG_LEVEL = os.getenv('GRAPEQI_LOG_LEVEL', 'DEBUG').upper()


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    DEBUG = True
    SEED = 12345


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': ProductionConfig
}
