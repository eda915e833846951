"""
Application factory for GrapeQI
"""
import logging
import os
import sys

from config import config
from grapeqi.guards import SizeGuards
from grapeqi.services import (
    ConfigurationSpaceService, GrapeFormatService, IntersectionComplexService,
    ProductSubcomplexService, QiDecisionService, ReductionService,
)


class GrapeQI:
    """Configured services sharing one set of size guards"""

    def __init__(self, config_class, guards):
        self.config = config_class
        self.guards = guards
        self.reductions = ReductionService()
        self.qi = QiDecisionService(self.reductions, guards)
        self.ri = IntersectionComplexService(guards)
        self.spaces = ConfigurationSpaceService(guards)
        self.products = ProductSubcomplexService(guards, self.spaces)
        self.formats = GrapeFormatService()

    def __repr__(self):
        return f'<GrapeQI {self.config.__name__} {self.guards!r}>'


def configure_logging(config_class):
    """Attach one stderr handler to the grapeqi logger"""
    logger = logging.getLogger('grapeqi')
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(config_class.LOG_FORMAT))
        logger.addHandler(handler)
    logger.setLevel(config_class.LOG_LEVEL)
    return logger


def create_app(config_name=None, guard_override=False):
    """
    Application factory pattern

    Args:
        config_name: Configuration environment ('development', 'production', 'testing')
        guard_override: Multiply every size guard by GUARD_OVERRIDE_FACTOR

    Returns:
        GrapeQI instance
    """
    if config_name is None:
        config_name = os.getenv('GRAPEQI_ENV', 'production')

    config_class = config[config_name]
    configure_logging(config_class)
    return GrapeQI(config_class, SizeGuards.from_config(config_class, override=guard_override))
