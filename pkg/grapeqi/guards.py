"""
Size guards for the brute-force cube-complex constructions
"""
import logging

from grapeqi.errors import GuardExceededError

logger = logging.getLogger(__name__)


class SizeGuards:
    """
    Upper bounds on inputs to exponential constructions.
    Exceeding a bound raises GuardExceededError, never truncates.
    """

    NAMES = (
        'ud2_max_vertices',
        'udn_max_vertices',
        'products_max_edges',
        'ri_max_path_length',
        'dynkin_max_stem_vertices',
        'max_cells',
    )

    def __init__(self, ud2_max_vertices=40, udn_max_vertices=14, products_max_edges=16,
                 ri_max_path_length=24, dynkin_max_stem_vertices=64, max_cells=200000):
        self.ud2_max_vertices = ud2_max_vertices
        self.udn_max_vertices = udn_max_vertices
        self.products_max_edges = products_max_edges
        self.ri_max_path_length = ri_max_path_length
        self.dynkin_max_stem_vertices = dynkin_max_stem_vertices
        self.max_cells = max_cells

    @classmethod
    def from_config(cls, cfg, override=False):
        """
        Build guards from a config class

        Args:
            cfg: Config class (see config.py)
            override: Multiply every limit by GUARD_OVERRIDE_FACTOR

        Returns:
            SizeGuards instance
        """
        factor = cfg.GUARD_OVERRIDE_FACTOR if override else 1
        if override:
            logger.warning("size guards raised by factor %d; constructions may be very slow", factor)
        return cls(
            ud2_max_vertices=cfg.UD2_MAX_VERTICES * factor,
            udn_max_vertices=cfg.UDN_MAX_VERTICES * factor,
            products_max_edges=cfg.PRODUCTS_MAX_EDGES * factor,
            ri_max_path_length=cfg.RI_MAX_PATH_LENGTH * factor,
            dynkin_max_stem_vertices=cfg.DYNKIN_MAX_STEM_VERTICES * factor,
            max_cells=cfg.MAX_CELLS * factor,
        )

    def check(self, name, actual):
        limit = getattr(self, name)
        if actual > limit:
            logger.warning("refusing construction: %s=%d exceeds %d", name, actual, limit)
            raise GuardExceededError(name, limit, actual)

    def to_dict(self):
        return {name: getattr(self, name) for name in self.NAMES}

    def __repr__(self):
        return f'<SizeGuards {self.to_dict()}>'
